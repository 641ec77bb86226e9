use std::cmp::Ordering;
use std::fmt;

/// A power product in a fixed number of variables. `deg` caches the total
/// degree; exponent vectors always have the ring's full length.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub exps: Vec<u32>,
    pub deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: vec![0; nvars], deg: 0 }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps, deg: 1 }
    }

    pub fn from_exps(exps: Vec<u32>) -> Monomial {
        let deg = exps.iter().sum();
        Monomial { exps, deg }
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let exps: Vec<u32> = self.exps.iter().zip(&rhs.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, deg: self.deg + rhs.deg }
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        self.deg <= rhs.deg && self.exps.iter().zip(&rhs.exps).all(|(a, b)| a <= b)
    }

    /// rhs / self when self divides rhs.
    pub fn quotient_into(&self, rhs: &Monomial) -> Option<Monomial> {
        if !self.divides(rhs) {
            return None;
        }
        let exps: Vec<u32> = rhs.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Some(Monomial { exps, deg: rhs.deg - self.deg })
    }

    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        let exps: Vec<u32> = self.exps.iter().zip(&rhs.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial::from_exps(exps)
    }

    pub fn coprime_with(&self, rhs: &Monomial) -> bool {
        self.exps.iter().zip(&rhs.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variable indices with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect()
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, vars }
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    vars: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.mono.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.vars[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum OrderKind {
    Lex,
    DegRevLex,
}

/// A global monomial order: an order kind plus a variable permutation.
/// `perm[slot]` is the variable index occupying comparison slot `slot`;
/// slot 0 is the most significant variable.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub perm: Vec<usize>,
}

impl MonomialOrder {
    pub fn degrevlex(nvars: usize) -> MonomialOrder {
        MonomialOrder { kind: OrderKind::DegRevLex, perm: (0..nvars).collect() }
    }

    pub fn lex(nvars: usize) -> MonomialOrder {
        MonomialOrder { kind: OrderKind::Lex, perm: (0..nvars).collect() }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.perm {
                    match a.exps[v].cmp(&b.exps[v]) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => {
                match a.deg.cmp(&b.deg) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // Ties break at the least significant slot: the monomial with
                // the smaller exponent there is the larger one.
                for &v in self.perm.iter().rev() {
                    match a.exps[v].cmp(&b.exps[v]) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e.to_vec())
    }

    #[test]
    fn degrevlex_classic_comparisons() {
        let o = MonomialOrder::degrevlex(3);
        // x^2 > xy > y^2 > xz > yz > z^2 in degrevlex with x > y > z.
        let seq = [
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 2, 0]),
            m(&[1, 0, 1]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        for w in seq.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater);
        }
        // Degree dominates.
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[2, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_comparisons() {
        let o = MonomialOrder::lex(2);
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 2]), &m(&[1, 1])), Ordering::Greater);
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 1]);
        let b = m(&[1, 3]);
        assert!(!a.divides(&b));
        assert_eq!(a.lcm(&b), m(&[2, 3]));
        assert_eq!(m(&[1, 1]).quotient_into(&a), Some(m(&[1, 0])));
        assert!(a.coprime_with(&m(&[0, 0])));
        assert!(!a.coprime_with(&m(&[0, 2])));
    }
}
