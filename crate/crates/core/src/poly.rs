use crate::arith::{FieldElem, FieldKind};
use crate::monomial::{Monomial, MonomialOrder};
use std::collections::BTreeMap;
use std::fmt;

/// A multivariate polynomial. Terms are kept sorted strictly descending in
/// the order that produced them, with no zero coefficients; the zero
/// polynomial has an empty term list. `nvars` is carried explicitly so the
/// zero polynomial still knows its ambient variable count.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly {
    pub nvars: usize,
    pub terms: Vec<(Monomial, FieldElem)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(nvars);
        }
        Poly { nvars, terms: vec![(Monomial::one(nvars), c)] }
    }

    pub fn var(nvars: usize, i: usize, kind: FieldKind) -> Poly {
        Poly { nvars, terms: vec![(Monomial::var(nvars, i), kind.one())] }
    }

    pub fn term(nvars: usize, m: Monomial, c: FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(nvars);
        }
        Poly { nvars, terms: vec![(m, c)] }
    }

    /// Canonicalize an arbitrary term list under `ord`: merge duplicates,
    /// drop zeros, sort descending.
    pub fn from_terms(nvars: usize, terms: Vec<(Monomial, FieldElem)>, ord: &MonomialOrder) -> Poly {
        let mut acc: BTreeMap<Monomial, FieldElem> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match acc.get_mut(&m) {
                Some(e) => *e = e.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut out: Vec<(Monomial, FieldElem)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Poly { nvars, terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading(&self) -> Option<(&Monomial, &FieldElem)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// Maximum total degree among terms; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.deg).max()
    }

    /// Some(d) when every term has total degree d; None otherwise or for zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.deg;
        if self.terms.iter().all(|(m, _)| m.deg == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn add(&self, rhs: &Poly, ord: &MonomialOrder) -> Poly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            match ord.cmp(&self.terms[i].0, &rhs.terms[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(rhs.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = self.terms[i].1.add(&rhs.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn sub(&self, rhs: &Poly, ord: &MonomialOrder) -> Poly {
        self.add(&rhs.neg(), ord)
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k.mul(c))).collect(),
        }
    }

    /// Multiply by a single term c * m. Order of terms is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc.mul(c))).collect(),
        }
    }

    pub fn mul(&self, rhs: &Poly, ord: &MonomialOrder) -> Poly {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                terms.push((m.mul(n), c.mul(d)));
            }
        }
        Poly::from_terms(self.nvars, terms, ord)
    }

    /// Divide leading coefficient out; no-op on zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Exact division: self / divisor when the remainder vanishes.
    pub fn div_exact(&self, divisor: &Poly, ord: &MonomialOrder) -> Option<Poly> {
        let (dm, dc) = divisor.leading()?;
        let dc_inv = dc.inv().ok()?;
        let mut rem = self.clone();
        let mut quo = Poly::zero(self.nvars);
        while let Some((lm, lc)) = rem.leading() {
            let q = dm.quotient_into(lm)?;
            let coef = lc.mul(&dc_inv);
            let t = Poly::term(self.nvars, q.clone(), coef.clone());
            quo = quo.add(&t, ord);
            rem = rem.sub(&divisor.mul_term(&q, &coef), ord);
        }
        Some(quo)
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, vars }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    vars: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", m.display(self.vars))?;
            } else {
                write!(f, "{}*{}", a, m.display(self.vars))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars2() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn q(n: i64) -> FieldElem {
        FieldKind::Rational.from_i64(n)
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let ord = MonomialOrder::degrevlex(2);
        let x = Poly::var(2, 0, FieldKind::Rational);
        let y = Poly::var(2, 1, FieldKind::Rational);
        let f = x.mul(&x, &ord).add(&y.scale(&q(3)), &ord); // x^2 + 3y
        let g = f.sub(&f, &ord);
        assert!(g.is_zero());
        let h = f.mul(&f, &ord); // x^4 + 6x^2 y + 9y^2
        assert_eq!(h.terms.len(), 3);
        assert_eq!(h.display(&vars2()).to_string(), "x^4 + 6*x^2*y + 9*y^2");
    }

    #[test]
    fn exact_division() {
        let ord = MonomialOrder::degrevlex(2);
        let x = Poly::var(2, 0, FieldKind::Rational);
        let y = Poly::var(2, 1, FieldKind::Rational);
        // (x^2 - y^2) / (x - y) = x + y
        let f = x.mul(&x, &ord).sub(&y.mul(&y, &ord), &ord);
        let d = x.sub(&y, &ord);
        let quo = f.div_exact(&d, &ord).unwrap();
        assert_eq!(quo, x.add(&y, &ord));
        assert!(f.div_exact(&x.mul(&x, &ord), &ord).is_none());
    }

    #[test]
    fn homogeneity_detection() {
        let ord = MonomialOrder::degrevlex(2);
        let x = Poly::var(2, 0, FieldKind::Rational);
        let y = Poly::var(2, 1, FieldKind::Rational);
        let h = x.mul(&y, &ord).add(&x.mul(&x, &ord), &ord);
        assert_eq!(h.homogeneous_degree(), Some(2));
        let g = h.add(&y, &ord);
        assert_eq!(g.homogeneous_degree(), None);
    }
}
