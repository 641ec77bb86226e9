//! Numerical invariants: generic rank over a domain quotient, Bass numbers
//! against a declared prime, and depth at the ideal of variables.

use crate::error::{Error, Result};
use crate::fpmod::FpModule;
use crate::homology::ext_module;
use crate::ideal::normal_form_poly;
use crate::poly::Poly;
use crate::ring::Prime;

const ELIMINATION_TERM_BUDGET: usize = 200_000;

/// Rank of the module over R/p: the dimension over the fraction field of
/// R/p of the extension of scalars. The relation matrix is reduced modulo
/// the prime and brought to echelon form by fraction-free row operations
/// (rows are cross-multiplied by pivots, which are nonzero in the domain),
/// so the pivot count is the row rank and the rank is the generator count
/// minus it.
pub fn rank_over_domain(n: &FpModule, p: &Prime) -> Result<usize> {
    if !std::sync::Arc::ptr_eq(&n.ring, &p.ring) {
        return Err(Error::input("rank requested against a prime of a different ring"));
    }
    let g = n.ngens();
    if g == 0 {
        return Ok(0);
    }
    let ord = &n.ring.order;
    let pgb = p.ideal.gb();
    let reduce = |f: &Poly| normal_form_poly(f, pgb, ord);
    let mut rows: Vec<Vec<Poly>> = n
        .rel_gb()
        .iter()
        .map(|v| v.coords.iter().map(&reduce).collect::<Vec<_>>())
        .filter(|r: &Vec<Poly>| r.iter().any(|p| !p.is_zero()))
        .collect();
    let mut rank = 0usize;
    for col in 0..g {
        // Choose the structurally smallest nonzero pivot to limit growth.
        let mut best: Option<(usize, usize, u32)> = None;
        for (i, row) in rows.iter().enumerate().skip(rank) {
            let e = &row[col];
            if e.is_zero() {
                continue;
            }
            let size = (i, e.terms.len(), e.total_degree().unwrap_or(0));
            let candidate = (size.1, size.2);
            if best
                .map(|(_, t, d)| candidate < (t, d))
                .unwrap_or(true)
            {
                best = Some((size.0, size.1, size.2));
            }
        }
        let Some((pi, _, _)) = best else { continue };
        rows.swap(rank, pi);
        let piv = rows[rank][col].clone();
        for i in (rank + 1)..rows.len() {
            let a = rows[i][col].clone();
            if a.is_zero() {
                continue;
            }
            let mut terms = 0usize;
            for j in 0..g {
                let t = rows[rank][j].mul(&a, ord);
                let s = rows[i][j].mul(&piv, ord);
                rows[i][j] = reduce(&s.sub(&t, ord));
                terms += rows[i][j].terms.len();
            }
            if terms > ELIMINATION_TERM_BUDGET {
                return Err(Error::budget("rank elimination entries grew past the budget"));
            }
            debug_assert!(rows[i][col].is_zero());
        }
        rank += 1;
    }
    Ok(g - rank)
}

/// The i-th Bass number of M against the declared prime p: the rank over
/// R/p of Ext^i(R/p, M), which equals the dimension over the residue field
/// at p of the local Ext of the localized modules.
pub fn bass_invariant(i: usize, p: &Prime, m: &FpModule, cap: usize) -> Result<usize> {
    let rp = FpModule::cyclic(&p.ring, p.ideal.gb())?;
    let e = ext_module(i, &rp, m, cap)?;
    rank_over_domain(&e, p)
}

/// Depth at the ideal generated by the variables, detected as the first
/// nonvanishing Ext from the residue ring at that ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Depth {
    Finite(usize),
    /// The module localizes to zero at the ideal of variables, so every
    /// Ext in the scanned range vanishes.
    LocallyZero,
}

impl std::fmt::Display for Depth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Depth::Finite(n) => write!(f, "{n}"),
            Depth::LocallyZero => write!(f, "+infinity (module vanishes at the base point)"),
        }
    }
}

pub fn depth_at_variables(m: &FpModule, cap: usize) -> Result<Depth> {
    if m.is_zero_module() {
        return Err(Error::input("depth of the zero module is undefined"));
    }
    let ring = &m.ring;
    let k = FpModule::cyclic(ring, &ring.variable_ideal_gens())?;
    let limit = ring.dim.max(0) as usize;
    for i in 0..=limit {
        if !ext_module(i, &k, m, cap)?.is_zero_module() {
            return Ok(Depth::Finite(i));
        }
    }
    Ok(Depth::LocallyZero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldKind;
    use crate::monomial::MonomialOrder;
    use crate::ring::{PrimeData, Ring, RingData};

    fn qq_xy() -> Ring {
        RingData::new(
            FieldKind::Rational,
            vec!["x".into(), "y".into()],
            MonomialOrder::degrevlex(2),
            vec![],
            false,
        )
        .unwrap()
    }

    const CAP: usize = 8;

    #[test]
    fn bass_table_of_regular_ring() {
        // Over R = Q[x, y] the Bass numbers of R are 1 exactly at the
        // height of the prime.
        let r = qq_xy();
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let primes = vec![
            PrimeData::declare(&r, vec![], false, None).unwrap(),
            PrimeData::declare(&r, vec![x.clone()], false, None).unwrap(),
            PrimeData::declare(&r, vec![y.clone()], false, None).unwrap(),
            PrimeData::declare(&r, vec![x, y], false, None).unwrap(),
        ];
        let m = FpModule::ring_module(&r);
        for p in &primes {
            for i in 0..=3usize {
                let mu = bass_invariant(i, p, &m, CAP).unwrap();
                let want = if i as i64 == p.height { 1 } else { 0 };
                assert_eq!(mu, want, "mu_{i} at {}", p.describe());
            }
        }
    }

    #[test]
    fn ranks_over_the_base_domain() {
        let r = qq_xy();
        let zero = PrimeData::declare(&r, vec![], false, None).unwrap();
        assert_eq!(rank_over_domain(&FpModule::ring_module(&r), &zero).unwrap(), 1);
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let k = FpModule::cyclic(&r, &[x.clone(), y.clone()]).unwrap();
        assert_eq!(rank_over_domain(&k, &zero).unwrap(), 0);
        // The maximal ideal as a module: two generators, one relation.
        let maxid = FpModule::new(
            &r,
            vec![1, 1],
            vec![crate::gb::ModVec { coords: vec![y.clone(), x.neg()] }],
        )
        .unwrap();
        assert_eq!(rank_over_domain(&maxid, &zero).unwrap(), 1);
        // Rank of k over R/(x) is still 0; rank of R/(x) over itself is 1.
        let px = PrimeData::declare(&r, vec![x.clone()], false, None).unwrap();
        let mx = FpModule::cyclic(&r, &[x]).unwrap();
        assert_eq!(rank_over_domain(&k, &px).unwrap(), 0);
        assert_eq!(rank_over_domain(&mx, &px).unwrap(), 1);
    }

    #[test]
    fn depth_of_standard_examples() {
        let r = qq_xy();
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let m = FpModule::ring_module(&r);
        assert_eq!(depth_at_variables(&m, CAP).unwrap(), Depth::Finite(2));
        let k = FpModule::cyclic(&r, &[x.clone(), y.clone()]).unwrap();
        assert_eq!(depth_at_variables(&k, CAP).unwrap(), Depth::Finite(0));
        let mx = FpModule::cyclic(&r, &[x]).unwrap();
        assert_eq!(depth_at_variables(&mx, CAP).unwrap(), Depth::Finite(1));
    }

    #[test]
    fn depth_zero_from_a_socle_element() {
        // R = Q[x, y]/(x^2, x*y) has the socle element x, so depth 0.
        let ord = MonomialOrder::degrevlex(2);
        let kq = FieldKind::Rational;
        let x = Poly::var(2, 0, kq);
        let y = Poly::var(2, 1, kq);
        let x2 = x.mul(&x, &ord);
        let xy = x.mul(&y, &ord);
        let r =
            RingData::new(kq, vec!["x".into(), "y".into()], ord, vec![x2, xy], false).unwrap();
        let m = FpModule::ring_module(&r);
        assert_eq!(depth_at_variables(&m, CAP).unwrap(), Depth::Finite(0));
    }

    #[test]
    fn bass_numbers_detect_associated_primes() {
        // R = Q[x, y]/(x^2, x*y): every prime contains x, and the ring as a
        // module over itself has both (x) and (x, y) associated -- the
        // annihilator of x is the whole maximal ideal while the y-line is a
        // torsion-free tail.
        let ord = MonomialOrder::degrevlex(2);
        let kq = FieldKind::Rational;
        let x = Poly::var(2, 0, kq);
        let y = Poly::var(2, 1, kq);
        let x2 = x.mul(&x, &ord);
        let xy = x.mul(&y, &ord);
        let r = RingData::new(
            kq,
            vec!["x".into(), "y".into()],
            ord,
            vec![x2, xy],
            false,
        )
        .unwrap();
        let m = FpModule::ring_module(&r);
        let px = PrimeData::declare(&r, vec![r.var_poly(0)], false, None).unwrap();
        let pm =
            PrimeData::declare(&r, vec![r.var_poly(0), r.var_poly(1)], false, None).unwrap();
        assert_eq!(px.height, 0);
        assert_eq!(pm.height, 1);
        assert_eq!(bass_invariant(0, &px, &m, CAP).unwrap(), 1);
        assert_eq!(bass_invariant(0, &pm, &m, CAP).unwrap(), 1);
        // The residue field has only the maximal ideal associated.
        let k = FpModule::cyclic(&r, &[r.var_poly(0), r.var_poly(1)]).unwrap();
        assert_eq!(bass_invariant(0, &px, &k, CAP).unwrap(), 0);
        assert_eq!(bass_invariant(0, &pm, &k, CAP).unwrap(), 1);
    }
}
