use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Coefficient field descriptor: the rationals or a prime field F_p.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Rational,
    Prime(u64),
}

/// Largest admitted prime modulus; keeps u128 intermediates safe with margin.
const MAX_PRIME: u64 = 1 << 31;

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldKind {
    /// Prime-field constructor; the modulus is checked for primality.
    pub fn prime(p: u64) -> Result<FieldKind> {
        if p >= MAX_PRIME {
            return Err(Error::budget(format!("prime modulus {p} exceeds supported bound")));
        }
        if !is_prime_u64(p) {
            return Err(Error::input(format!("{p} is not prime")));
        }
        Ok(FieldKind::Prime(p))
    }

    pub fn zero(self) -> FieldElem {
        match self {
            FieldKind::Rational => FieldElem::Q(BigRational::zero()),
            FieldKind::Prime(p) => FieldElem::Fp { v: 0, p },
        }
    }

    pub fn one(self) -> FieldElem {
        match self {
            FieldKind::Rational => FieldElem::Q(BigRational::one()),
            FieldKind::Prime(p) => FieldElem::Fp { v: 1, p },
        }
    }

    pub fn from_i64(self, n: i64) -> FieldElem {
        match self {
            FieldKind::Rational => FieldElem::Q(BigRational::from_integer(BigInt::from(n))),
            FieldKind::Prime(p) => {
                let v = n.rem_euclid(p as i64) as u64;
                FieldElem::Fp { v, p }
            }
        }
    }

    /// num/den as a field element; errors when den vanishes in the field.
    pub fn from_ratio(self, num: i64, den: i64) -> Result<FieldElem> {
        if den == 0 {
            return Err(Error::input("zero denominator"));
        }
        match self {
            FieldKind::Rational => Ok(FieldElem::Q(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldKind::Prime(_) => {
                let d = self.from_i64(den);
                if d.is_zero() {
                    return Err(Error::input(format!(
                        "denominator {den} is divisible by the field characteristic"
                    )));
                }
                Ok(self.from_i64(num).mul(&d.inv()?))
            }
        }
    }
}

/// An element of the coefficient field. Rationals are kept in lowest terms
/// with positive denominator (maintained by the backing representation);
/// prime-field values are canonical residues in [0, p).
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum FieldElem {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

fn fp_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Inverse mod p via the extended Euclidean algorithm; a must be nonzero mod p.
fn fp_inv(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "inverse of non-unit");
    t.rem_euclid(p as i128) as u64
}

impl FieldElem {
    pub fn kind(&self) -> FieldKind {
        match self {
            FieldElem::Q(_) => FieldKind::Rational,
            FieldElem::Fp { p, .. } => FieldKind::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Q(q) => q.is_zero(),
            FieldElem::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Q(q) => q.is_one(),
            FieldElem::Fp { v, .. } => *v == 1,
        }
    }

    pub fn add(&self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a + b),
            (FieldElem::Fp { v: a, p }, FieldElem::Fp { v: b, p: q }) => {
                debug_assert_eq!(p, q);
                FieldElem::Fp { v: (a + b) % p, p: *p }
            }
            _ => unreachable!("mixed coefficient fields"),
        }
    }

    pub fn sub(&self, rhs: &FieldElem) -> FieldElem {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Q(a) => FieldElem::Q(-a),
            FieldElem::Fp { v, p } => FieldElem::Fp { v: if *v == 0 { 0 } else { p - v }, p: *p },
        }
    }

    pub fn mul(&self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a * b),
            (FieldElem::Fp { v: a, p }, FieldElem::Fp { v: b, p: q }) => {
                debug_assert_eq!(p, q);
                FieldElem::Fp { v: fp_mul(*a, *b, *p), p: *p }
            }
            _ => unreachable!("mixed coefficient fields"),
        }
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::input("division by zero"));
        }
        Ok(match self {
            FieldElem::Q(a) => FieldElem::Q(a.recip()),
            FieldElem::Fp { v, p } => FieldElem::Fp { v: fp_inv(*v, *p), p: *p },
        })
    }

    pub fn div(&self, rhs: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// True when the element is a nonzero rational integer (used by displays).
    pub fn is_integer(&self) -> bool {
        match self {
            FieldElem::Q(q) => q.is_integer(),
            FieldElem::Fp { .. } => true,
        }
    }

    /// Sign for printing: rationals report their true sign, F_p is always "+".
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElem::Q(q) => q.is_negative(),
            FieldElem::Fp { .. } => false,
        }
    }

    pub fn abs(&self) -> FieldElem {
        match self {
            FieldElem::Q(q) => FieldElem::Q(q.abs()),
            f @ FieldElem::Fp { .. } => (*f).clone(),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElem::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}
