//! Rings presented as quotients of multivariate polynomial rings, prime
//! ideals with primality certificates, finite windows into the prime
//! spectrum, and descending sequences of upward-closed subsets of a window.

use crate::arith::FieldKind;
use crate::error::{Error, Result};
use crate::factor::certify_irreducible;
use crate::ideal::{krull_dim, normal_form_poly, Ideal};
use crate::monomial::MonomialOrder;
use crate::poly::Poly;
use std::collections::BTreeSet;
use std::sync::Arc;

/// A quotient of a polynomial ring over an exact field. The defining ideal
/// may be zero, in which case the ring is the polynomial ring itself.
#[derive(Debug)]
pub struct RingData {
    pub field: FieldKind,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
    /// Defining ideal of the quotient, as an ideal of the ambient
    /// polynomial ring.
    pub quotient: Ideal,
    /// True when every defining relation is homogeneous for the standard
    /// grading; graded-only operations check this flag.
    pub graded: bool,
    /// Set by the caller to enable operations that require the ring to be
    /// Gorenstein; never verified internally.
    pub gorenstein_asserted: bool,
    /// Krull dimension of the quotient ring.
    pub dim: i64,
}

pub type Ring = Arc<RingData>;

impl RingData {
    pub fn new(
        field: FieldKind,
        vars: Vec<String>,
        order: MonomialOrder,
        quotient_gens: Vec<Poly>,
        gorenstein_asserted: bool,
    ) -> Result<Ring> {
        if vars.is_empty() {
            return Err(Error::input("a ring needs at least one variable"));
        }
        let mut seen = BTreeSet::new();
        for v in &vars {
            if v.is_empty() {
                return Err(Error::input("empty variable name"));
            }
            if !seen.insert(v.clone()) {
                return Err(Error::input(format!("duplicate variable name `{v}`")));
            }
        }
        if order.perm.len() != vars.len() {
            return Err(Error::internal("order permutation length mismatch"));
        }
        for g in &quotient_gens {
            if g.nvars != vars.len() {
                return Err(Error::internal("relation has wrong variable count"));
            }
            if let Some((_, c)) = g.leading() {
                if c.kind() != field {
                    return Err(Error::internal("relation coefficient field mismatch"));
                }
            }
        }
        let quotient = Ideal::new(quotient_gens, order.clone());
        if quotient.is_unit() {
            return Err(Error::input("the defining ideal is the unit ideal"));
        }
        let graded = quotient.gens.iter().all(|g| g.homogeneous_degree().is_some());
        let dim = krull_dim(quotient.gb(), vars.len(), &order)?;
        Ok(Arc::new(RingData {
            field,
            vars,
            order,
            quotient,
            graded,
            gorenstein_asserted,
            dim,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Normal form modulo the defining ideal: the canonical representative
    /// of a residue class.
    pub fn reduce(&self, f: &Poly) -> Poly {
        if self.quotient.gens.is_empty() {
            return f.clone();
        }
        normal_form_poly(f, self.quotient.gb(), &self.order)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.nvars())
    }

    pub fn one(&self) -> Poly {
        Poly::constant(self.nvars(), self.field.one())
    }

    pub fn var_poly(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), i, self.field)
    }

    /// Generators of the irrelevant maximal ideal (all variables), used as
    /// the base point for depth computations in the graded setting.
    pub fn variable_ideal_gens(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.var_poly(i)).collect()
    }

    pub fn require_graded(&self, what: &str) -> Result<()> {
        if !self.graded {
            return Err(Error::input(format!(
                "{what} requires a graded ring (all defining relations homogeneous)"
            )));
        }
        Ok(())
    }
}

/// Evidence that a declared prime ideal really is prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The zero ideal of the ambient polynomial ring, which is a domain.
    ZeroIdeal,
    /// Generated by a subset of the variables.
    GeneratedByVariables,
    /// Generated by a subset of the variables together with one polynomial,
    /// free of those variables, certified irreducible. The empty-variable
    /// case is a principal ideal with an irreducible generator.
    VariablesPlusIrreducible,
    /// Declared prime by the caller without verification.
    Asserted,
}

impl Certificate {
    pub fn label(&self) -> &'static str {
        match self {
            Certificate::ZeroIdeal => "zero-ideal-of-domain",
            Certificate::GeneratedByVariables => "generated-by-variables",
            Certificate::VariablesPlusIrreducible => "variables-plus-irreducible",
            Certificate::Asserted => "asserted",
        }
    }
}

/// A prime of the quotient ring, stored as the corresponding ambient prime
/// containing the defining ideal.
#[derive(Debug)]
pub struct PrimeData {
    pub ring: Ring,
    pub ideal: Ideal,
    /// Height of the prime in the quotient ring.
    pub height: i64,
    /// Krull dimension of the quotient by this prime.
    pub dim_quotient: i64,
    pub cert: Certificate,
}

pub type Prime = Arc<PrimeData>;

impl PrimeData {
    /// Declare a prime of `ring`. With `assert_prime` the primality check is
    /// skipped and recorded as such; otherwise a certificate is required.
    /// `height_override` replaces the default height, which is
    /// dim(ring) - dim(ring/p).
    pub fn declare(
        ring: &Ring,
        gens: Vec<Poly>,
        assert_prime: bool,
        height_override: Option<i64>,
    ) -> Result<Prime> {
        for g in &gens {
            if g.nvars != ring.nvars() {
                return Err(Error::internal("prime generator has wrong variable count"));
            }
        }
        let mut all = gens;
        // Work with the ambient ideal containing the defining ideal.
        all.extend(ring.quotient.gens.iter().cloned());
        let ideal = Ideal::new(all, ring.order.clone());
        if ideal.is_unit() {
            return Err(Error::input("a prime ideal must be proper"));
        }
        let cert = if assert_prime {
            Certificate::Asserted
        } else {
            certify_prime(&ideal, &ring.order)?
        };
        let dim_quotient = krull_dim(ideal.gb(), ring.nvars(), &ring.order)?;
        let height = match height_override {
            Some(h) => {
                if h < 0 {
                    return Err(Error::input("a height override must be nonnegative"));
                }
                h
            }
            None => ring.dim - dim_quotient,
        };
        Ok(Arc::new(PrimeData { ring: ring.clone(), ideal, height, dim_quotient, cert }))
    }

    pub fn same_prime(&self, other: &PrimeData) -> bool {
        self.ideal.same_ideal(&other.ideal)
    }

    /// True when this prime contains `other` as a set (other lies below it
    /// in the spectrum order).
    pub fn contains_prime(&self, other: &PrimeData) -> bool {
        self.ideal.contains_ideal(&other.ideal)
    }

    /// True when this is the irrelevant maximal ideal generated by all
    /// variables.
    pub fn is_variable_maximal(&self) -> bool {
        let gb = self.ideal.gb();
        gb.len() == self.ring.nvars()
            && gb.iter().all(|g| {
                g.terms.len() == 1 && g.terms[0].0.deg == 1
            })
    }

    /// Generators rendered with the ring's variable names.
    pub fn describe(&self) -> String {
        if self.ideal.gb().is_empty() {
            return "(0)".to_string();
        }
        let parts: Vec<String> =
            self.ideal.gb().iter().map(|g| g.display(&self.ring.vars).to_string()).collect();
        format!("({})", parts.join(", "))
    }
}

/// Try to prove primality of an ambient ideal from its reduced basis.
fn certify_prime(ideal: &Ideal, ord: &MonomialOrder) -> Result<Certificate> {
    let gb = ideal.gb();
    if gb.is_empty() {
        return Ok(Certificate::ZeroIdeal);
    }
    let mut var_set: Vec<usize> = Vec::new();
    let mut others: Vec<&Poly> = Vec::new();
    for g in gb {
        if g.terms.len() == 1 && g.terms[0].0.deg == 1 {
            var_set.push(g.terms[0].0.support()[0]);
        } else {
            others.push(g);
        }
    }
    match others.len() {
        0 => Ok(Certificate::GeneratedByVariables),
        1 => {
            let f = others[0];
            for (m, _) in &f.terms {
                if m.support().iter().any(|v| var_set.contains(v)) {
                    return Err(Error::internal(
                        "reduced basis element meets an eliminated variable",
                    ));
                }
            }
            match certify_irreducible(f, ord)? {
                true => Ok(Certificate::VariablesPlusIrreducible),
                false => Err(Error::input(
                    "the declared ideal is not prime: its non-variable generator factors",
                )),
            }
        }
        _ => Err(Error::input(
            "no applicable primality certificate for this ideal; declare it in assert mode",
        )),
    }
}

/// A finite set of declared primes of one ring, with the inclusion order
/// precomputed. Heights are required to increase strictly along inclusions.
#[derive(Debug)]
pub struct WindowData {
    pub ring: Ring,
    pub primes: Vec<Prime>,
    leq: Vec<Vec<bool>>,
}

pub type Window = Arc<WindowData>;

impl WindowData {
    pub fn new(ring: &Ring, primes: Vec<Prime>) -> Result<Window> {
        for p in &primes {
            if !Arc::ptr_eq(&p.ring, ring) {
                return Err(Error::input("window prime declared over a different ring"));
            }
        }
        for i in 0..primes.len() {
            for j in (i + 1)..primes.len() {
                if primes[i].same_prime(&primes[j]) {
                    return Err(Error::input(format!(
                        "duplicate prime {} in window",
                        primes[i].describe()
                    )));
                }
            }
        }
        let n = primes.len();
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                leq[i][j] = primes[j].contains_prime(&primes[i]);
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && primes[i].height >= primes[j].height {
                    return Err(Error::input(format!(
                        "height must increase along inclusions: {} (height {}) is contained in {} (height {})",
                        primes[i].describe(),
                        primes[i].height,
                        primes[j].describe(),
                        primes[j].height,
                    )));
                }
            }
        }
        Ok(Arc::new(WindowData { ring: ring.clone(), primes, leq }))
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// primes[i] is contained in primes[j].
    pub fn below(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Smallest superset of `set` closed under passing to larger primes of
    /// the window.
    pub fn up_closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &i in set {
            for j in 0..self.len() {
                if self.leq[i][j] {
                    out.insert(j);
                }
            }
        }
        out
    }

    pub fn is_up_closed(&self, set: &BTreeSet<usize>) -> bool {
        set.iter().all(|&i| (0..self.len()).all(|j| !self.leq[i][j] || set.contains(&j)))
    }

    /// Elements of `set` minimal with respect to inclusion.
    pub fn minimal_elements(&self, set: &BTreeSet<usize>) -> Vec<usize> {
        set.iter()
            .copied()
            .filter(|&i| set.iter().all(|&j| j == i || !self.leq[j][i]))
            .collect()
    }

    pub fn find(&self, p: &PrimeData) -> Option<usize> {
        self.primes.iter().position(|q| q.same_prime(p))
    }
}

/// A finite descending sequence of upward-closed subsets of a window,
/// stored as index sets into the window's prime list.
#[derive(Clone, Debug)]
pub struct SpecSeq {
    pub window: Window,
    pub levels: Vec<BTreeSet<usize>>,
}

impl SpecSeq {
    pub fn new(window: &Window, levels: Vec<BTreeSet<usize>>) -> Result<SpecSeq> {
        if levels.is_empty() {
            return Err(Error::input("a subset sequence needs at least one level"));
        }
        for (k, level) in levels.iter().enumerate() {
            for &i in level {
                if i >= window.len() {
                    return Err(Error::internal("subset index out of window range"));
                }
            }
            if !window.is_up_closed(level) {
                return Err(Error::input(format!(
                    "level {} is not closed under passing to larger primes",
                    k + 1
                )));
            }
        }
        for k in 1..levels.len() {
            if !levels[k].is_subset(&levels[k - 1]) {
                return Err(Error::input(format!(
                    "level {} is not contained in level {}",
                    k + 1,
                    k
                )));
            }
        }
        Ok(SpecSeq { window: window.clone(), levels })
    }

    pub fn n(&self) -> usize {
        self.levels.len()
    }

    /// The subsequence starting at zero-based level `from`; descending
    /// chains of upward-closed sets stay valid under truncation.
    pub fn suffix(&self, from: usize) -> SpecSeq {
        SpecSeq { window: self.window.clone(), levels: self.levels[from..].to_vec() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq_xy() -> Ring {
        let ord = MonomialOrder::degrevlex(2);
        RingData::new(
            FieldKind::Rational,
            vec!["x".into(), "y".into()],
            ord,
            vec![],
            false,
        )
        .unwrap()
    }

    fn var(r: &Ring, i: usize) -> Poly {
        r.var_poly(i)
    }

    #[test]
    fn ring_basics() {
        let r = qq_xy();
        assert_eq!(r.dim, 2);
        assert!(r.graded);
        let ord = MonomialOrder::degrevlex(2);
        let x = var(&r, 0);
        assert_eq!(r.reduce(&x), x);

        // Quotient by x^2: dimension drops to 1 and reduction kicks in.
        let x2 = x.mul(&x, &ord);
        let r2 = RingData::new(
            FieldKind::Rational,
            vec!["x".into(), "y".into()],
            ord.clone(),
            vec![x2.clone()],
            false,
        )
        .unwrap();
        assert_eq!(r2.dim, 1);
        assert!(r2.reduce(&x2).is_zero());
    }

    #[test]
    fn unit_quotient_rejected() {
        let ord = MonomialOrder::degrevlex(1);
        let one = Poly::constant(1, FieldKind::Rational.one());
        let err = RingData::new(FieldKind::Rational, vec!["x".into()], ord, vec![one], false);
        assert!(err.is_err());
    }

    #[test]
    fn prime_certificates() {
        let r = qq_xy();
        let ord = r.order.clone();
        let x = var(&r, 0);
        let y = var(&r, 1);

        let zero = PrimeData::declare(&r, vec![], false, None).unwrap();
        assert_eq!(zero.cert, Certificate::ZeroIdeal);
        assert_eq!(zero.height, 0);
        assert_eq!(zero.dim_quotient, 2);

        let px = PrimeData::declare(&r, vec![x.clone()], false, None).unwrap();
        assert_eq!(px.cert, Certificate::GeneratedByVariables);
        assert_eq!(px.height, 1);

        let m = PrimeData::declare(&r, vec![x.clone(), y.clone()], false, None).unwrap();
        assert_eq!(m.cert, Certificate::GeneratedByVariables);
        assert_eq!(m.height, 2);
        assert!(m.is_variable_maximal());
        assert!(!px.is_variable_maximal());

        // y - x^2 is irreducible; x*y is not.
        let f = y.sub(&x.mul(&x, &ord), &ord);
        let pf = PrimeData::declare(&r, vec![f], false, None).unwrap();
        assert_eq!(pf.cert, Certificate::VariablesPlusIrreducible);
        assert_eq!(pf.height, 1);

        let xy = x.mul(&y, &ord);
        assert!(PrimeData::declare(&r, vec![xy], false, None).is_err());

        // Assert mode accepts anything proper.
        let pa = PrimeData::declare(&r, vec![x.mul(&y, &ord)], true, None).unwrap();
        assert_eq!(pa.cert, Certificate::Asserted);
    }

    #[test]
    fn window_order_and_closure() {
        let r = qq_xy();
        let x = var(&r, 0);
        let y = var(&r, 1);
        let p0 = PrimeData::declare(&r, vec![], false, None).unwrap();
        let px = PrimeData::declare(&r, vec![x.clone()], false, None).unwrap();
        let py = PrimeData::declare(&r, vec![y.clone()], false, None).unwrap();
        let m = PrimeData::declare(&r, vec![x, y], false, None).unwrap();
        let w = WindowData::new(&r, vec![p0, px, py, m]).unwrap();

        assert!(w.below(0, 1));
        assert!(w.below(0, 3));
        assert!(!w.below(1, 2));
        assert!(w.below(1, 3));

        let up: BTreeSet<usize> = w.up_closure(&[1].into_iter().collect());
        assert_eq!(up, [1, 3].into_iter().collect());
        assert!(w.is_up_closed(&up));
        assert!(!w.is_up_closed(&[1].into_iter().collect()));
        assert_eq!(w.minimal_elements(&[1, 2, 3].into_iter().collect()), vec![1, 2]);
    }

    #[test]
    fn window_rejects_duplicates_and_bad_heights() {
        let r = qq_xy();
        let x = var(&r, 0);
        let p1 = PrimeData::declare(&r, vec![x.clone()], false, None).unwrap();
        let p2 = PrimeData::declare(&r, vec![x.clone()], false, None).unwrap();
        assert!(WindowData::new(&r, vec![p1.clone(), p2]).is_err());

        // Force equal heights along a strict inclusion via an override.
        let y = var(&r, 1);
        let m = PrimeData::declare(&r, vec![x, y], false, Some(1)).unwrap();
        assert!(WindowData::new(&r, vec![p1, m]).is_err());
    }

    #[test]
    fn seq_validation() {
        let r = qq_xy();
        let x = var(&r, 0);
        let y = var(&r, 1);
        let p0 = PrimeData::declare(&r, vec![], false, None).unwrap();
        let px = PrimeData::declare(&r, vec![x.clone()], false, None).unwrap();
        let m = PrimeData::declare(&r, vec![x, y], false, None).unwrap();
        let w = WindowData::new(&r, vec![p0, px, m]).unwrap();

        let full: BTreeSet<usize> = [0, 1, 2].into_iter().collect();
        let top: BTreeSet<usize> = [2].into_iter().collect();
        let s = SpecSeq::new(&w, vec![full.clone(), top.clone()]).unwrap();
        assert_eq!(s.n(), 2);
        assert_eq!(s.suffix(1).levels, vec![top.clone()]);

        // Not up-closed: {p0} alone.
        let bad: BTreeSet<usize> = [0].into_iter().collect();
        assert!(SpecSeq::new(&w, vec![bad]).is_err());
        // Not descending.
        assert!(SpecSeq::new(&w, vec![top, full]).is_err());
    }
}
