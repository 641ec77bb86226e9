//! Buchberger engine over free modules A^r for an ambient polynomial ring A.
//! Ideals are the rank-1 case. The module order is position-over-term with
//! position 0 most significant, which makes leading position blocks behave
//! as elimination blocks; syzygies are read off from an augmented basis.

use crate::arith::FieldElem;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use std::cmp::Ordering;

/// An element of a free module A^rank, stored as one polynomial per position.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModVec {
    pub coords: Vec<Poly>,
}

impl ModVec {
    pub fn zero(rank: usize, nvars: usize) -> ModVec {
        ModVec { coords: (0..rank).map(|_| Poly::zero(nvars)).collect() }
    }

    pub fn unit(rank: usize, nvars: usize, pos: usize, kind: crate::arith::FieldKind) -> ModVec {
        let mut v = ModVec::zero(rank, nvars);
        v.coords[pos] = Poly::constant(nvars, kind.one());
        v
    }

    pub fn from_poly_at(rank: usize, pos: usize, p: Poly) -> ModVec {
        let nvars = p.nvars;
        let mut v = ModVec::zero(rank, nvars);
        v.coords[pos] = p;
        v
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|p| p.is_zero())
    }

    /// Leading term under position-over-term: the first nonzero position,
    /// then that coordinate's leading term.
    pub fn lead(&self) -> Option<(usize, &Monomial, &FieldElem)> {
        for (pos, p) in self.coords.iter().enumerate() {
            if let Some((m, c)) = p.leading() {
                return Some((pos, m, c));
            }
        }
        None
    }

    pub fn add(&self, rhs: &ModVec, ord: &MonomialOrder) -> ModVec {
        ModVec {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a.add(b, ord))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &ModVec, ord: &MonomialOrder) -> ModVec {
        ModVec {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a.sub(b, ord))
                .collect(),
        }
    }

    pub fn scale(&self, c: &FieldElem) -> ModVec {
        ModVec { coords: self.coords.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> ModVec {
        ModVec { coords: self.coords.iter().map(|p| p.mul_term(m, c)).collect() }
    }

    pub fn mul_poly(&self, f: &Poly, ord: &MonomialOrder) -> ModVec {
        ModVec { coords: self.coords.iter().map(|p| p.mul(f, ord)).collect() }
    }

    pub fn monic(&self) -> ModVec {
        match self.lead() {
            None => self.clone(),
            Some((_, _, c)) => {
                let inv = c.inv().expect("nonzero lead coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Total-degree homogeneity with respect to position shifts: Some(d) when
    /// every term at position p has total degree d - shifts[p].
    pub fn homogeneous_degree(&self, shifts: &[i64]) -> Option<i64> {
        let mut deg: Option<i64> = None;
        for (pos, p) in self.coords.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let hd = p.homogeneous_degree()? as i64 + shifts[pos];
            match deg {
                None => deg = Some(hd),
                Some(d) if d == hd => {}
                _ => return None,
            }
        }
        deg
    }
}

/// Compare two module terms under position-over-term.
fn cmp_modterm(
    ord: &MonomialOrder,
    a: (usize, &Monomial),
    b: (usize, &Monomial),
) -> Ordering {
    match a.0.cmp(&b.0) {
        Ordering::Less => Ordering::Greater,
        Ordering::Greater => Ordering::Less,
        Ordering::Equal => ord.cmp(a.1, b.1),
    }
}

/// A basis element with its cached leading data.
#[derive(Clone, Debug)]
struct BasisElem {
    vec: ModVec,
    pos: usize,
    mono: Monomial,
}

/// Fully reduce `v` against `basis`: every term of the result is divisible by
/// no basis leading term. Basis elements are assumed monic.
pub fn normal_form(v: &ModVec, basis: &[ModVec], ord: &MonomialOrder) -> ModVec {
    let elems: Vec<BasisElem> = basis
        .iter()
        .filter_map(|b| {
            b.lead().map(|(p, m, _)| BasisElem { vec: b.clone(), pos: p, mono: m.clone() })
        })
        .collect();
    nf_inner(v, &elems, ord)
}

fn nf_inner(v: &ModVec, basis: &[BasisElem], ord: &MonomialOrder) -> ModVec {
    let rank = v.rank();
    let nvars = v.coords.first().map(|p| p.nvars).unwrap_or(0);
    let mut work = v.clone();
    let mut rem = ModVec::zero(rank, nvars);
    'outer: while let Some((pos, m, c)) = work.lead() {
        let (m, c) = (m.clone(), c.clone());
        for b in basis {
            if b.pos == pos {
                if let Some(q) = b.mono.quotient_into(&m) {
                    work = work.sub(&b.vec.mul_term(&q, &c), ord);
                    continue 'outer;
                }
            }
        }
        // Irreducible leading term: move it to the remainder.
        let t = ModVec::from_poly_at(rank, pos, Poly::term(nvars, m.clone(), c.clone()));
        rem = rem.add(&t, ord);
        work = work.sub(&t, ord);
    }
    rem
}

/// Reduced Groebner basis of the submodule of A^rank generated by `gens`:
/// monic, minimal leading terms, tails fully interreduced, sorted with the
/// largest leading term first. The result is the unique reduced basis for
/// the given order, hence deterministic.
pub fn buchberger(gens: &[ModVec], ord: &MonomialOrder) -> Result<Vec<ModVec>> {
    let mut basis: Vec<BasisElem> = Vec::new();
    let insert = |basis: &mut Vec<BasisElem>, v: ModVec| -> Option<usize> {
        let v = v.monic();
        let (p, m, _) = v.lead()?;
        let (p, m) = (p, m.clone());
        basis.push(BasisElem { vec: v, pos: p, mono: m });
        Some(basis.len() - 1)
    };

    // Seed with the (pre-reduced) generators.
    let mut pending: Vec<(usize, usize)> = Vec::new();
    for g in gens {
        let r = nf_inner(g, &basis, ord);
        if let Some(idx) = insert(&mut basis, r) {
            for j in 0..idx {
                pending.push((j, idx));
            }
        }
    }

    // Pair queue ordered by lcm degree, then indices, for a sugar-like
    // selection strategy. Entries are recomputed lazily on pop.
    let mut queue: Vec<(u32, usize, usize)> = Vec::new();
    let push_pairs = |queue: &mut Vec<(u32, usize, usize)>, basis: &[BasisElem], pairs: Vec<(usize, usize)>| {
        for (i, j) in pairs {
            if basis[i].pos == basis[j].pos {
                let l = basis[i].mono.lcm(&basis[j].mono);
                queue.push((l.deg, i, j));
            }
        }
        queue.sort_unstable();
        queue.reverse(); // pop smallest from the back
    };
    push_pairs(&mut queue, &basis, std::mem::take(&mut pending));

    let rank1 = gens.first().map(|g| g.rank() == 1).unwrap_or(true);
    let mut steps: u64 = 0;
    while let Some((_, i, j)) = queue.pop() {
        steps += 1;
        if steps > 2_000_000 {
            return Err(Error::budget("Buchberger pair budget exhausted"));
        }
        let (bi, bj) = (&basis[i], &basis[j]);
        if bi.pos != bj.pos {
            continue;
        }
        // Product criterion is only sound in the ideal (rank 1) case.
        if rank1 && bi.mono.coprime_with(&bj.mono) {
            continue;
        }
        let l = bi.mono.lcm(&bj.mono);
        let qi = bi.mono.quotient_into(&l).expect("lcm divisibility");
        let qj = bj.mono.quotient_into(&l).expect("lcm divisibility");
        let one = match bi.vec.lead() {
            Some((_, _, c)) => c.kind().one(),
            None => continue,
        };
        let s = bi
            .vec
            .mul_term(&qi, &one)
            .sub(&bj.vec.mul_term(&qj, &one), ord);
        let h = nf_inner(&s, &basis, ord);
        if let Some(idx) = insert(&mut basis, h) {
            let pairs: Vec<(usize, usize)> = (0..idx).map(|k| (k, idx)).collect();
            push_pairs(&mut queue, &basis, pairs);
        }
    }

    // Minimalize: keep only elements whose leading term is divisible by no
    // other kept leading term. Processing by ascending leading term keeps
    // exactly one representative per minimal leading term.
    let mut order_idx: Vec<usize> = (0..basis.len()).collect();
    order_idx.sort_by(|&a, &b| {
        cmp_modterm(ord, (basis[a].pos, &basis[a].mono), (basis[b].pos, &basis[b].mono))
    });
    let mut kept: Vec<BasisElem> = Vec::new();
    for idx in order_idx {
        let cand = &basis[idx];
        let dominated = kept
            .iter()
            .any(|k| k.pos == cand.pos && k.mono.divides(&cand.mono));
        if !dominated {
            kept.push(cand.clone());
        }
    }

    // Interreduce tails to a fixpoint.
    let mut passes = 0;
    loop {
        passes += 1;
        if passes > 200 {
            return Err(Error::internal("interreduction failed to stabilize"));
        }
        let mut changed = false;
        for i in 0..kept.len() {
            let others: Vec<BasisElem> =
                kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, b)| b.clone()).collect();
            let r = nf_inner(&kept[i].vec, &others, ord).monic();
            if r != kept[i].vec {
                changed = true;
                match r.lead() {
                    Some((p, m, _)) => {
                        let m = m.clone();
                        kept[i].vec = r;
                        kept[i].pos = p;
                        kept[i].mono = m;
                    }
                    None => {
                        kept.remove(i);
                        break;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    kept.sort_by(|a, b| cmp_modterm(ord, (b.pos, &b.mono), (a.pos, &a.mono)));
    Ok(kept.into_iter().map(|b| b.vec).collect())
}

/// Generators of the syzygy module of `gens` inside A^rank: all c in A^n with
/// sum c_i gens_i = 0. Computed by a Groebner basis of the augmented module
/// A^rank (+) A^n with the target block dominant; basis elements with zero
/// target block are exactly the syzygies.
pub fn syzygies(
    gens: &[ModVec],
    rank: usize,
    ord: &MonomialOrder,
    kind: crate::arith::FieldKind,
) -> Result<Vec<ModVec>> {
    let n = gens.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let nvars = gens[0].coords.first().map(|p| p.nvars).unwrap_or(0);
    let mut aug: Vec<ModVec> = Vec::with_capacity(n);
    for (j, g) in gens.iter().enumerate() {
        debug_assert_eq!(g.rank(), rank);
        let mut coords = g.coords.clone();
        coords.extend((0..n).map(|_| Poly::zero(nvars)));
        coords[rank + j] = Poly::constant(nvars, kind.one());
        aug.push(ModVec { coords });
    }
    let gb = buchberger(&aug, ord)?;
    let mut out = Vec::new();
    for v in gb {
        if v.coords[..rank].iter().all(|p| p.is_zero()) {
            out.push(ModVec { coords: v.coords[rank..].to_vec() });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldKind;

    fn xy_ring() -> (MonomialOrder, Poly, Poly) {
        let ord = MonomialOrder::degrevlex(2);
        let x = Poly::var(2, 0, FieldKind::Rational);
        let y = Poly::var(2, 1, FieldKind::Rational);
        (ord, x, y)
    }

    fn as_vec(p: &Poly) -> ModVec {
        ModVec::from_poly_at(1, 0, p.clone())
    }

    #[test]
    fn principal_collapse() {
        // <x^2 - 1, x^3 - x> = <x^2 - 1> since x^3 - x = x * (x^2 - 1).
        let ord = MonomialOrder::degrevlex(1);
        let x = Poly::var(1, 0, FieldKind::Rational);
        let one = Poly::constant(1, FieldKind::Rational.one());
        let f = x.mul(&x, &ord).sub(&one, &ord);
        let g = x.mul(&x, &ord).mul(&x, &ord).sub(&x, &ord);
        let gb = buchberger(&[as_vec(&f), as_vec(&g)], &ord).unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0].coords[0], f);
    }

    #[test]
    fn normal_form_against_reduced_basis() {
        // GB of <x^2 - y, y^2 - x> is itself; NF(x^2 * y) = x.
        let (ord, x, y) = xy_ring();
        let f1 = x.mul(&x, &ord).sub(&y, &ord);
        let f2 = y.mul(&y, &ord).sub(&x, &ord);
        let gb = buchberger(&[as_vec(&f1), as_vec(&f2)], &ord).unwrap();
        assert_eq!(gb.len(), 2);
        let target = x.mul(&x, &ord).mul(&y, &ord);
        let nf = normal_form(&as_vec(&target), &gb, &ord);
        assert_eq!(nf.coords[0], x);
    }

    #[test]
    fn koszul_syzygy() {
        // Syzygies of (x, y) in A^1 are generated by (y, -x).
        let (ord, x, y) = xy_ring();
        let syz = syzygies(&[as_vec(&x), as_vec(&y)], 1, &ord, FieldKind::Rational).unwrap();
        assert_eq!(syz.len(), 1);
        let s = &syz[0];
        // s = c * (y, -x) for a scalar c; normalize by the lead.
        let m = s.monic();
        assert_eq!(m.coords[0], y);
        assert_eq!(m.coords[1], x.neg());
    }

    #[test]
    fn module_reduced_basis_is_canonical() {
        let (ord, x, y) = xy_ring();
        // Same submodule from two generator orders gives identical output.
        let v1 = ModVec { coords: vec![x.clone(), y.clone()] };
        let v2 = ModVec { coords: vec![y.clone(), x.clone()] };
        let v3 = v1.add(&v2, &ord);
        let a = buchberger(&[v1.clone(), v2.clone(), v3.clone()], &ord).unwrap();
        let b = buchberger(&[v3, v2, v1], &ord).unwrap();
        assert_eq!(a, b);
    }
}
