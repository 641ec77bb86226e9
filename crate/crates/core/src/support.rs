//! Support-theoretic operations: support and associated primes restricted
//! to a declared window, torsion submodules over domain quotients, and
//! divisibility tests.

use crate::error::{Error, Result};
use crate::fpmod::{preimage_gens, present_subquotient, FpModule};
use crate::gb::{buchberger, ModVec};
use crate::ideal::{normal_form_poly, SATURATION_CAP};
use crate::invariants::{bass_invariant, rank_over_domain};
use crate::poly::Poly;
use crate::ring::{Prime, PrimeData, Ring, Window};

/// Indices of window primes containing the annihilator, i.e. whose
/// localization of M is nonzero.
pub fn support_in_window(m: &FpModule, window: &Window) -> Result<Vec<usize>> {
    if !std::sync::Arc::ptr_eq(&m.ring, &window.ring) {
        return Err(Error::input("support requested in a window over a different ring"));
    }
    let ann = m.annihilator()?;
    let mut out = Vec::new();
    for (idx, p) in window.primes.iter().enumerate() {
        let pgb = p.ideal.gb();
        if ann.iter().all(|f| normal_form_poly(f, pgb, &m.ring.order).is_zero()) {
            out.push(idx);
        }
    }
    Ok(out)
}

/// Indices of window primes associated to M, detected by a nonzero zeroth
/// Bass number.
pub fn associated_in_window(m: &FpModule, window: &Window, cap: usize) -> Result<Vec<usize>> {
    if !std::sync::Arc::ptr_eq(&m.ring, &window.ring) {
        return Err(Error::input(
            "associated primes requested in a window over a different ring",
        ));
    }
    let mut out = Vec::new();
    for (idx, p) in window.primes.iter().enumerate() {
        if bass_invariant(0, p, m, cap)? > 0 {
            out.push(idx);
        }
    }
    Ok(out)
}

/// The zero ideal of the quotient ring as a certified prime; errors unless
/// the quotient is certifiably a domain.
pub fn domain_point(ring: &Ring) -> Result<Prime> {
    PrimeData::declare(ring, Vec::new(), false, None).map_err(|e| match e {
        Error::Input(msg) => Error::input(format!(
            "this operation needs the ring to be a certified domain: {msg}"
        )),
        other => other,
    })
}

/// Generic rank of M over a domain quotient ring.
pub fn module_rank(m: &FpModule) -> Result<usize> {
    let p0 = domain_point(&m.ring)?;
    rank_over_domain(m, &p0)
}

const MINOR_SIZE_BUDGET: usize = 7;

/// Torsion submodule of M over a domain quotient, with a flag for torsion
/// freeness. The elements killed by some nonzero ring element form exactly
/// the saturation of the relation module at a single well-chosen f: any
/// nonzero maximal minor of the relation matrix works, because the torsion
/// support avoids the generic point and lies inside the locus where that
/// minor vanishes.
pub fn torsion_submodule(m: &FpModule) -> Result<(FpModule, bool)> {
    let p0 = domain_point(&m.ring)?;
    let ring = &m.ring;
    let ord = &ring.order;
    let g = m.ngens();
    if g == 0 {
        return Ok((FpModule::zero_module(ring), true));
    }
    let rank = rank_over_domain(m, &p0)?;
    let corank = g - rank;
    if corank == 0 {
        // No relations survive generically: the module is free already.
        return Ok((FpModule::zero_module(ring), true));
    }
    let f = nonzero_maximal_minor(m, &p0, corank)?;
    // Saturate the relation module at f.
    let mut current: Vec<ModVec> = m.rel_gb().to_vec();
    let mut rounds = 0u32;
    loop {
        rounds += 1;
        if rounds > SATURATION_CAP {
            return Err(Error::budget("torsion saturation exceeded the iteration cap"));
        }
        let cols: Vec<ModVec> = (0..g)
            .map(|t| ModVec::from_poly_at(g, t, f.clone()))
            .collect();
        let colon = preimage_gens(&cols, &current, ring)?;
        let next = buchberger(&colon, ord)?;
        if next == current {
            break;
        }
        current = next;
    }
    let torsion = present_subquotient(ring, &m.gen_degs, &current, &[], m.rel_gb())?;
    let free = torsion.is_zero_module();
    Ok((torsion, free))
}

pub fn is_torsion_free(m: &FpModule) -> Result<bool> {
    Ok(torsion_submodule(m)?.1)
}

/// A maximal-size nonzero minor of the relation matrix modulo the defining
/// ideal: elimination locates independent rows and columns, then the exact
/// determinant of that submatrix is expanded.
fn nonzero_maximal_minor(m: &FpModule, p0: &Prime, corank: usize) -> Result<Poly> {
    if corank > MINOR_SIZE_BUDGET {
        return Err(Error::budget("maximal minor size exceeds the expansion budget"));
    }
    let ring = &m.ring;
    let ord = &ring.order;
    let g = m.ngens();
    let pgb = p0.ideal.gb();
    let reduce = |f: &Poly| normal_form_poly(f, pgb, ord);
    let original: Vec<Vec<Poly>> = m
        .rel_gb()
        .iter()
        .map(|v| v.coords.iter().map(&reduce).collect::<Vec<_>>())
        .filter(|r: &Vec<Poly>| r.iter().any(|p| !p.is_zero()))
        .collect();
    let mut rows = original.clone();
    let mut orig_idx: Vec<usize> = (0..rows.len()).collect();
    let mut pivot_rows = Vec::new();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..g {
        let mut pick = None;
        for i in rank..rows.len() {
            if !rows[i][col].is_zero() {
                let sz = (rows[i][col].terms.len(), rows[i][col].total_degree().unwrap_or(0));
                if pick.map(|(_, s)| sz < s).unwrap_or(true) {
                    pick = Some((i, sz));
                }
            }
        }
        let Some((pi, _)) = pick else { continue };
        rows.swap(rank, pi);
        orig_idx.swap(rank, pi);
        pivot_rows.push(orig_idx[rank]);
        pivot_cols.push(col);
        let piv = rows[rank][col].clone();
        for i in (rank + 1)..rows.len() {
            let a = rows[i][col].clone();
            if a.is_zero() {
                continue;
            }
            for j in 0..g {
                let t = rows[rank][j].mul(&a, ord);
                let s = rows[i][j].mul(&piv, ord);
                rows[i][j] = reduce(&s.sub(&t, ord));
            }
        }
        rank += 1;
    }
    if rank != corank {
        return Err(Error::internal("pivot count disagrees with the computed corank"));
    }
    let sub: Vec<Vec<Poly>> = pivot_rows
        .iter()
        .map(|&r| pivot_cols.iter().map(|&c| original[r][c].clone()).collect())
        .collect();
    let det = reduce(&determinant(&sub, ring));
    if det.is_zero() {
        return Err(Error::internal("selected maximal minor vanished after reduction"));
    }
    Ok(det)
}

fn determinant(mat: &[Vec<Poly>], ring: &Ring) -> Poly {
    let n = mat.len();
    let ord = &ring.order;
    if n == 0 {
        return ring.one();
    }
    if n == 1 {
        return mat[0][0].clone();
    }
    let mut acc = ring.zero();
    for (j, entry) in mat[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cof = entry.mul(&determinant(&minor, ring), ord);
        acc = if j % 2 == 0 { acc.add(&cof, ord) } else { acc.sub(&cof, ord) };
    }
    acc
}

/// Generators of { v : f v ∈ span(current) for every f in jgens }, the
/// colon of a submodule of R^g by an ideal, computed as one preimage in a
/// block-diagonal embedding.
fn colon_by_ideal(current: &[ModVec], jgens: &[Poly], g: usize, ring: &Ring) -> Result<Vec<ModVec>> {
    let r = jgens.len();
    let big = r * g;
    let mut cols = Vec::with_capacity(g);
    for t in 0..g {
        let mut coords = vec![ring.zero(); big];
        for (i, f) in jgens.iter().enumerate() {
            coords[i * g + t] = f.clone();
        }
        cols.push(ModVec { coords });
    }
    let mut target = Vec::with_capacity(r * current.len());
    for i in 0..r {
        for v in current {
            let mut coords = vec![ring.zero(); big];
            coords[i * g..(i + 1) * g].clone_from_slice(&v.coords);
            target.push(ModVec { coords });
        }
    }
    preimage_gens(&cols, &target, ring)
}

/// The elements of M supported inside an upward-closed window subset Y,
/// together with the complementary quotient: T is the saturation of zero at
/// the intersection of the minimal primes of Y, and F = M/T. T's support
/// stays inside Y and F has no associated primes in Y.
pub fn torsion_part(
    m: &FpModule,
    window: &Window,
    y: &std::collections::BTreeSet<usize>,
) -> Result<(FpModule, FpModule)> {
    if !std::sync::Arc::ptr_eq(&m.ring, &window.ring) {
        return Err(Error::input("torsion part requested in a window over a different ring"));
    }
    if !window.is_up_closed(y) {
        return Err(Error::input(
            "the torsion class of a window subset needs it closed under passing to larger primes",
        ));
    }
    let ring = &m.ring;
    let g = m.ngens();
    if y.is_empty() || g == 0 {
        return Ok((FpModule::zero_module(ring), m.clone()));
    }
    let mut jgens: Option<Vec<Poly>> = None;
    for pi in window.minimal_elements(y) {
        if window.primes[pi].ideal.is_zero() {
            // The generic point: its torsion class is everything.
            return Ok((m.clone(), FpModule::zero_module(ring)));
        }
        let pg: Vec<Poly> = window.primes[pi].ideal.gb().to_vec();
        jgens = Some(match jgens {
            None => pg,
            Some(prev) => crate::ideal::ideal_intersect(&prev, &pg, &ring.order, ring.field)?,
        });
    }
    let jgens = jgens.unwrap();
    let mut current: Vec<ModVec> = m.rel_gb().to_vec();
    let mut rounds = 0u32;
    loop {
        rounds += 1;
        if rounds > SATURATION_CAP {
            return Err(Error::budget("torsion saturation exceeded the iteration cap"));
        }
        let colon = colon_by_ideal(&current, &jgens, g, ring)?;
        let next = buchberger(&colon, &ring.order)?;
        if next == current {
            break;
        }
        current = next;
    }
    let torsion = present_subquotient(ring, &m.gen_degs, &current, &[], m.rel_gb())?;
    let free_part = FpModule::new(ring, m.gen_degs.clone(), current)?;
    Ok((torsion, free_part))
}

/// Whether f M = M, i.e. the cokernel of multiplication by f vanishes.
pub fn is_divisible_by(m: &FpModule, f: &Poly) -> Result<bool> {
    let g = m.ngens();
    let mut rels = m.rels.clone();
    for j in 0..g {
        rels.push(ModVec::from_poly_at(g, j, f.clone()));
    }
    Ok(FpModule::new(&m.ring, m.gen_degs.clone(), rels)?.is_zero_module())
}

/// Whether J M = M for the ideal generated by `jgens`.
pub fn is_divisible_by_ideal(m: &FpModule, jgens: &[Poly]) -> Result<bool> {
    let g = m.ngens();
    let mut rels = m.rels.clone();
    for f in jgens {
        for j in 0..g {
            rels.push(ModVec::from_poly_at(g, j, f.clone()));
        }
    }
    Ok(FpModule::new(&m.ring, m.gen_degs.clone(), rels)?.is_zero_module())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldKind;
    use crate::monomial::MonomialOrder;
    use crate::ring::{RingData, WindowData};

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

    fn standard_window(r: &Ring) -> Window {
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        WindowData::new(
            r,
            vec![
                PrimeData::declare(r, vec![], false, None).unwrap(),
                PrimeData::declare(r, vec![x.clone()], false, None).unwrap(),
                PrimeData::declare(r, vec![y.clone()], false, None).unwrap(),
                PrimeData::declare(r, vec![x, y], false, None).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn support_and_associated_primes() {
        let r = qq_xy();
        let w = standard_window(&r);
        let mx = FpModule::cyclic(&r, &[r.var_poly(0)]).unwrap();
        assert_eq!(support_in_window(&mx, &w).unwrap(), vec![1, 3]);
        assert_eq!(associated_in_window(&mx, &w, CAP).unwrap(), vec![1]);
        let k = FpModule::cyclic(&r, &[r.var_poly(0), r.var_poly(1)]).unwrap();
        assert_eq!(support_in_window(&k, &w).unwrap(), vec![3]);
        assert_eq!(associated_in_window(&k, &w, CAP).unwrap(), vec![3]);
        let free = FpModule::ring_module(&r);
        assert_eq!(support_in_window(&free, &w).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(associated_in_window(&free, &w, CAP).unwrap(), vec![0]);
    }

    #[test]
    fn torsion_of_mixed_module() {
        let r = qq_xy();
        let mx = FpModule::cyclic(&r, &[r.var_poly(0)]).unwrap();
        let free = FpModule::ring_module(&r);
        let mixed = mx.direct_sum(&free).unwrap();
        let (t, tf) = torsion_submodule(&mixed).unwrap();
        assert!(!tf);
        // The torsion part is R/(x): one dimension in every degree.
        assert_eq!(t.hilbert_function(0).unwrap(), 1);
        assert_eq!(t.hilbert_function(4).unwrap(), 1);
        assert_eq!(t.dimension().unwrap(), 1);
    }

    #[test]
    fn torsion_free_modules() {
        let r = qq_xy();
        assert!(is_torsion_free(&FpModule::ring_module(&r)).unwrap());
        // The maximal ideal is torsion free but not free.
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let maxid = FpModule::new(
            &r,
            vec![1, 1],
            vec![ModVec { coords: vec![y, x.neg()] }],
        )
        .unwrap();
        assert!(is_torsion_free(&maxid).unwrap());
        // A torsion module is its own torsion submodule.
        let k = FpModule::cyclic(&r, &[r.var_poly(0), r.var_poly(1)]).unwrap();
        let (t, tf) = torsion_submodule(&k).unwrap();
        assert!(!tf);
        assert_eq!(t.length().unwrap(), 1);
    }

    #[test]
    fn torsion_part_of_window_subsets() {
        let r = qq_xy();
        let w = standard_window(&r);
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let up_x: std::collections::BTreeSet<usize> = [1usize, 3].into_iter().collect();

        // R/(x^2 y): the part supported on V(x) is (y)/(x^2 y) and the
        // complement is R/(y) — frozen from the saturation (x^2 y) : x^∞ = (y).
        let xxy = x.mul(&x, &r.order).mul(&y, &r.order);
        let m = FpModule::cyclic(&r, &[xxy]).unwrap();
        let (t, f) = torsion_part(&m, &w, &up_x).unwrap();
        assert_eq!(t.hilbert_function(1).unwrap(), 1);
        assert_eq!(t.hilbert_function(2).unwrap(), 2);
        assert_eq!(f.hilbert_function(0).unwrap(), 1);
        assert_eq!(f.hilbert_function(3).unwrap(), 1);
        // Contract: T is supported inside Y, M/T has no associated primes in Y.
        let supp_t = support_in_window(&t, &w).unwrap();
        assert!(supp_t.iter().all(|i| up_x.contains(i)), "{supp_t:?}");
        let ass_f = associated_in_window(&f, &w, CAP).unwrap();
        assert!(ass_f.iter().all(|i| !up_x.contains(i)), "{ass_f:?}");

        // A module entirely inside the class, and one entirely outside.
        let xx = x.mul(&x, &r.order);
        let rx2 = FpModule::cyclic(&r, &[xx]).unwrap();
        let (t, f) = torsion_part(&rx2, &w, &up_x).unwrap();
        assert!(f.is_zero_module());
        assert_eq!(t.length().is_err(), true, "R/(x^2) has infinite length");
        let (t, f) = torsion_part(&FpModule::ring_module(&r), &w, &up_x).unwrap();
        assert!(t.is_zero_module());
        assert_eq!(f.hilbert_function(0).unwrap(), 1);

        // Non-up-closed subsets are refused.
        let bad: std::collections::BTreeSet<usize> = [1usize].into_iter().collect();
        assert!(torsion_part(&FpModule::ring_module(&r), &w, &bad).is_err());

        // A window subset containing the generic point absorbs everything.
        let all: std::collections::BTreeSet<usize> = (0..4).collect();
        let (t, f) = torsion_part(&FpModule::ring_module(&r), &w, &all).unwrap();
        assert!(f.is_zero_module());
        assert_eq!(t.hilbert_function(0).unwrap(), 1);
    }

    #[test]
    fn divisibility_checks() {
        let r = qq_xy();
        let x = r.var_poly(0);
        let one = r.one();
        let free = FpModule::ring_module(&r);
        assert!(!is_divisible_by(&free, &x).unwrap());
        // R/(x - 1): multiplication by x is the identity.
        let f = x.sub(&one, &r.order);
        let m = FpModule::cyclic(&r, &[f]).unwrap();
        assert!(is_divisible_by(&m, &x).unwrap());
        assert!(is_divisible_by_ideal(&m, &[x.clone(), r.var_poly(1)]).unwrap());
        assert!(!is_divisible_by_ideal(&free, &[x]).unwrap());
    }
}
