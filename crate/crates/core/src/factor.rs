//! Irreducibility certificates for principal-ideal primality. Univariate
//! polynomials are decided exactly: a Rabin test over F_p, rational-root
//! screening plus Kronecker trial factorization over Q. Multivariate
//! polynomials are decided for total degree 1 and for generators linear in
//! some variable (via a content gcd); anything else reports that no
//! certificate applies.

use crate::arith::{FieldElem, FieldKind};
use crate::error::{Error, Result};
use crate::ideal::ideal_intersect;
use crate::monomial::MonomialOrder;
use crate::poly::Poly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Ok(true): certified irreducible. Ok(false): certified reducible (or a
/// unit/zero, which is never prime). Err: no applicable certificate or a
/// trial budget was exhausted.
pub fn certify_irreducible(f: &Poly, ord: &MonomialOrder) -> Result<bool> {
    if f.is_zero() || f.is_constant() {
        return Ok(false);
    }
    if f.total_degree() == Some(1) {
        return Ok(true);
    }
    let support: Vec<usize> = {
        let mut vars = vec![false; f.nvars];
        for (m, _) in &f.terms {
            for v in m.support() {
                vars[v] = true;
            }
        }
        (0..f.nvars).filter(|&i| vars[i]).collect()
    };
    if support.len() == 1 {
        let var = support[0];
        return match f.terms[0].1.kind() {
            FieldKind::Prime(p) => univariate_fp_irreducible(f, var, p),
            FieldKind::Rational => univariate_q_irreducible(f, var),
        };
    }
    multivariate_linear_in_some_var(f, &support, ord)
}

// ---------------------------------------------------------------- F_p case

/// Dense univariate coefficient vector, low degree first.
fn to_dense_fp(f: &Poly, var: usize, p: u64) -> Vec<u64> {
    let deg = f.terms.iter().map(|(m, _)| m.exps[var]).max().unwrap_or(0) as usize;
    let mut out = vec![0u64; deg + 1];
    for (m, c) in &f.terms {
        if let FieldElem::Fp { v, .. } = c {
            out[m.exps[var] as usize] = *v % p;
        }
    }
    out
}

fn fp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    fp_trim(&mut r);
    let mut bb = b.to_vec();
    fp_trim(&mut bb);
    let db = bb.len() - 1;
    let lead_inv = mod_inv(bb[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = (r[dr] as u128 * lead_inv as u128 % p as u128) as u64;
        if c != 0 {
            for i in 0..=db {
                let idx = dr - db + i;
                let sub = (c as u128 * bb[i] as u128 % p as u128) as u64;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        fp_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn fp_poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    fp_trim(&mut prod);
    if prod.is_empty() {
        return prod;
    }
    fp_poly_rem(&prod, m, p)
}

fn fp_poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    fp_trim(&mut x);
    fp_trim(&mut y);
    while !y.is_empty() {
        let r = fp_poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let inv = mod_inv(lead, p);
        for c in &mut x {
            *c = (*c as u128 * inv as u128 % p as u128) as u64;
        }
    }
    x
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i128) as u64
}

/// x^(p^k) mod f by iterating the Frobenius power k times.
fn frobenius_power(k: usize, f: &[u64], p: u64) -> Vec<u64> {
    let x = vec![0u64, 1u64];
    let mut h = fp_poly_rem(&x, f, p);
    for _ in 0..k {
        h = fp_pow(&h, p, f, p);
    }
    h
}

fn fp_pow(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = fp_poly_mulmod(&result, &b, m, p);
        }
        b = fp_poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

/// Rabin's exact irreducibility test over F_p.
fn univariate_fp_irreducible(f: &Poly, var: usize, p: u64) -> Result<bool> {
    let dense = to_dense_fp(f, var, p);
    let n = dense.len() - 1;
    // x^(p^n) == x mod f is necessary.
    let xpn = frobenius_power(n, &dense, p);
    let x_red = fp_poly_rem(&[0, 1], &dense, p);
    if xpn != x_red {
        return Ok(false);
    }
    // gcd(x^(p^(n/q)) - x, f) must be trivial for every prime q | n.
    let mut m = n;
    let mut qs = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            qs.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        qs.push(m);
    }
    for q in qs {
        let mut h = frobenius_power(n / q, &dense, p);
        // h - x
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = (h[1] + p - 1) % p;
        fp_trim(&mut h);
        let g = fp_poly_gcd(&h, &dense, p);
        if g.len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

// ----------------------------------------------------------------- Q case

fn to_dense_z(f: &Poly, var: usize) -> Vec<BigInt> {
    let deg = f.terms.iter().map(|(m, _)| m.exps[var]).max().unwrap_or(0) as usize;
    let mut den = BigInt::one();
    for (_, c) in &f.terms {
        if let FieldElem::Q(q) = c {
            den = den.lcm(q.denom());
        }
    }
    let mut out = vec![BigInt::zero(); deg + 1];
    for (m, c) in &f.terms {
        if let FieldElem::Q(q) = c {
            out[m.exps[var] as usize] = q.numer() * (&den / q.denom());
        }
    }
    // Primitive part.
    let mut content = BigInt::zero();
    for c in &out {
        content = content.gcd(c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in &mut out {
            *c = &*c / &content;
        }
    }
    out
}

fn z_poly_eval(f: &[BigInt], a: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = acc * BigInt::from(a) + c;
    }
    acc
}

fn has_rational_root(f: &[BigInt]) -> Result<bool> {
    // Candidate roots r/s with r | f[0], s | lead(f).
    let a0 = &f[0];
    let lead = f.last().unwrap();
    if a0.is_zero() {
        return Ok(true); // x divides
    }
    let rs = divisors_of(a0)?;
    let ss = divisors_of(lead)?;
    for r in &rs {
        for s in &ss {
            // Evaluate f(r/s) * s^deg exactly.
            let mut acc = BigInt::zero();
            let mut spow = BigInt::one();
            for c in f.iter().rev() {
                acc = acc * r + c * &spow;
                spow *= s;
            }
            // acc accumulated one extra s factor; scale is harmless for a
            // zero test.
            if acc.is_zero() {
                return Ok(true);
            }
            let neg = -r;
            let mut acc2 = BigInt::zero();
            let mut spow2 = BigInt::one();
            for c in f.iter().rev() {
                acc2 = acc2 * &neg + c * &spow2;
                spow2 *= s;
            }
            if acc2.is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

const DIVISOR_BUDGET: usize = 20_000;
const COMBO_BUDGET: u128 = 400_000;

/// All positive divisors of |n| from its prime factorization; budget-capped.
fn divisors_of(n: &BigInt) -> Result<Vec<BigInt>> {
    let mag = n.abs().to_biguint().unwrap();
    let m64 = mag
        .to_u64()
        .ok_or_else(|| Error::budget("factorization target exceeds 64 bits"))?;
    if m64 == 0 {
        return Err(Error::internal("divisors of zero requested"));
    }
    let mut m = m64;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        factors.push((m, 1));
    }
    let mut divs: Vec<u64> = vec![1];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for &base in &divs {
            let mut pk = 1u64;
            for _ in 0..=e {
                match base.checked_mul(pk) {
                    Some(v) => next.push(v),
                    None => return Err(Error::budget("divisor magnitude overflow")),
                }
                pk = match pk.checked_mul(p) {
                    Some(v) => v,
                    None => break,
                };
            }
        }
        next.sort_unstable();
        next.dedup();
        divs = next;
        if divs.len() > DIVISOR_BUDGET {
            return Err(Error::budget("divisor enumeration budget exhausted"));
        }
    }
    Ok(divs.into_iter().map(BigInt::from).collect())
}

/// Lagrange interpolation through integer points (i, v_i), i = 0..n.
fn interpolate(values: &[BigInt]) -> Option<Vec<num_rational::BigRational>> {
    use num_rational::BigRational;
    let n = values.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for (i, v) in values.iter().enumerate() {
        // Basis polynomial prod_{j != i} (x - j)/(i - j), times v.
        let mut basis = vec![BigRational::zero(); n];
        basis[0] = BigRational::one();
        let mut deg = 0;
        let mut denom = BigInt::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            // Multiply by (x - j), in place from the top coefficient down.
            let root = BigRational::from_integer(BigInt::from(j as i64));
            for k in (0..=deg).rev() {
                let c = basis[k].clone();
                basis[k + 1] += c.clone();
                basis[k] = -c * root.clone();
            }
            deg += 1;
            denom *= BigInt::from(i as i64 - j as i64);
        }
        let scale = BigRational::new(v.clone(), denom);
        for k in 0..n {
            coeffs[k] += basis[k].clone() * scale.clone();
        }
    }
    Some(coeffs)
}

/// Exact divisibility g | f in Q[x] for dense integer f and rational g.
fn divides_q(f: &[BigInt], g: &[num_rational::BigRational]) -> bool {
    use num_rational::BigRational;
    let mut rem: Vec<BigRational> =
        f.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let mut gg: Vec<BigRational> = g.to_vec();
    while gg.last().map(|c| c.is_zero()).unwrap_or(false) {
        gg.pop();
    }
    if gg.len() <= 1 {
        return false;
    }
    let dg = gg.len() - 1;
    let lead = gg[dg].clone();
    if lead.is_zero() {
        return false;
    }
    while rem.len() > dg {
        let dr = rem.len() - 1;
        let c = rem[dr].clone() / lead.clone();
        for i in 0..=dg {
            let idx = dr - dg + i;
            let sub = c.clone() * gg[i].clone();
            rem[idx] -= sub;
        }
        while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
            rem.pop();
        }
        if rem.is_empty() {
            return true;
        }
    }
    rem.is_empty()
}

/// Kronecker trial factorization: exact but budget-capped.
fn univariate_q_irreducible(f: &Poly, var: usize) -> Result<bool> {
    let dense = to_dense_z(f, var);
    let n = dense.len() - 1;
    if n == 1 {
        return Ok(true);
    }
    if has_rational_root(&dense)? {
        return Ok(false);
    }
    if n <= 3 {
        // Degree 2 or 3 with no rational root is irreducible.
        return Ok(true);
    }
    // Search for a factor of degree d in 2..=n/2 through divisor combinations
    // at integer points.
    for d in 2..=(n / 2) {
        let points: Vec<i64> = (0..=(d as i64)).collect();
        let mut value_divs: Vec<Vec<BigInt>> = Vec::new();
        let mut combos: u128 = 1;
        for &a in &points {
            let v = z_poly_eval(&dense, a);
            if v.is_zero() {
                return Ok(false); // integer root
            }
            let divs = divisors_of(&v)?;
            combos = combos.saturating_mul(divs.len() as u128 * 2);
            value_divs.push(divs);
        }
        if combos > COMBO_BUDGET {
            return Err(Error::budget(
                "trial factorization budget exhausted; no certificate produced",
            ));
        }
        let mut idx = vec![0usize; points.len()];
        let mut signs = vec![0u8; points.len()];
        loop {
            let values: Vec<BigInt> = (0..points.len())
                .map(|i| {
                    let v = value_divs[i][idx[i]].clone();
                    if signs[i] == 1 {
                        -v
                    } else {
                        v
                    }
                })
                .collect();
            if let Some(cand) = interpolate(&values) {
                let nonconst = cand.iter().skip(1).any(|c| !c.is_zero());
                if nonconst && divides_q(&dense, &cand) {
                    let mut deg_c = 0;
                    for (k, c) in cand.iter().enumerate() {
                        if !c.is_zero() {
                            deg_c = k;
                        }
                    }
                    if deg_c >= 1 && deg_c < n {
                        return Ok(false);
                    }
                }
            }
            // Advance the odometer over divisor choices and signs.
            let mut pos = 0;
            loop {
                if pos == points.len() {
                    break;
                }
                if signs[pos] == 0 {
                    signs[pos] = 1;
                    break;
                }
                signs[pos] = 0;
                idx[pos] += 1;
                if idx[pos] < value_divs[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == points.len() {
                break;
            }
        }
    }
    Ok(true)
}

// ------------------------------------------------------- multivariate case

/// For f linear in some variable: f = a*x_i + b with a, b free of x_i;
/// f is irreducible iff gcd(a, b) is a unit.
fn multivariate_linear_in_some_var(
    f: &Poly,
    support: &[usize],
    ord: &MonomialOrder,
) -> Result<bool> {
    for &v in support {
        let degv = f.terms.iter().map(|(m, _)| m.exps[v]).max().unwrap_or(0);
        if degv != 1 {
            continue;
        }
        let nvars = f.nvars;
        let mut a_terms = Vec::new();
        let mut b_terms = Vec::new();
        for (m, c) in &f.terms {
            if m.exps[v] == 1 {
                let mut e = m.exps.clone();
                e[v] = 0;
                a_terms.push((crate::monomial::Monomial::from_exps(e), c.clone()));
            } else {
                b_terms.push((m.clone(), c.clone()));
            }
        }
        let a = Poly::from_terms(nvars, a_terms, ord);
        let b = Poly::from_terms(nvars, b_terms, ord);
        if b.is_zero() {
            // f = a * x_i: reducible unless a is constant (then f is a
            // variable, already handled by the degree-1 fast path).
            return Ok(a.is_constant());
        }
        let kind = f.terms[0].1.kind();
        let inter = ideal_intersect(&[a.clone()], &[b.clone()], ord, kind)?;
        if inter.len() != 1 {
            return Err(Error::internal(
                "intersection of principal ideals is not principal",
            ));
        }
        let lcm = &inter[0];
        let prod = a.mul(&b, ord);
        let g = prod
            .div_exact(lcm, ord)
            .ok_or_else(|| Error::internal("lcm does not divide the product"))?;
        return Ok(g.is_constant());
    }
    Err(Error::input(
        "no applicable irreducibility certificate for a generator nonlinear in every variable; declare the prime in assert mode",
    ))
}
