use crate::arith::FieldKind;
use crate::error::{Error, Result};
use crate::gb::{buchberger, normal_form, syzygies, ModVec};
use crate::monomial::MonomialOrder;
use crate::poly::Poly;
use std::sync::OnceLock;

/// An ideal of the ambient polynomial ring, with a lazily computed reduced
/// Groebner basis cached for the ideal's order.
#[derive(Debug)]
pub struct Ideal {
    pub gens: Vec<Poly>,
    pub order: MonomialOrder,
    gb: OnceLock<Vec<Poly>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let fresh = Ideal { gens: self.gens.clone(), order: self.order.clone(), gb: OnceLock::new() };
        if let Some(g) = self.gb.get() {
            let _ = fresh.gb.set(g.clone());
        }
        fresh
    }
}

impl Ideal {
    pub fn new(gens: Vec<Poly>, order: MonomialOrder) -> Ideal {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { gens, order, gb: OnceLock::new() }
    }

    pub fn gb(&self) -> &[Poly] {
        self.gb.get_or_init(|| {
            groebner_basis(&self.gens, &self.order).expect("ideal basis computation")
        })
    }

    pub fn contains(&self, f: &Poly) -> bool {
        normal_form_poly(f, self.gb(), &self.order).is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.gb().is_empty()
    }

    /// The ideal is the unit ideal exactly when its reduced basis is {1}.
    pub fn is_unit(&self) -> bool {
        self.gb().iter().any(|g| g.is_constant())
    }

    /// Reduced bases are unique per order, so basis equality decides ideal
    /// equality.
    pub fn same_ideal(&self, other: &Ideal) -> bool {
        self.gb() == other.gb()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }
}

pub fn polys_to_vecs(polys: &[Poly]) -> Vec<ModVec> {
    polys.iter().map(|p| ModVec::from_poly_at(1, 0, p.clone())).collect()
}

pub fn vecs_to_polys(vecs: Vec<ModVec>) -> Vec<Poly> {
    vecs.into_iter().map(|mut v| v.coords.swap_remove(0)).collect()
}

/// Reduced Groebner basis of an ideal: monic, minimal, interreduced.
pub fn groebner_basis(gens: &[Poly], ord: &MonomialOrder) -> Result<Vec<Poly>> {
    Ok(vecs_to_polys(buchberger(&polys_to_vecs(gens), ord)?))
}

/// Remainder of f on division by the (Groebner) basis `gb`.
pub fn normal_form_poly(f: &Poly, gb: &[Poly], ord: &MonomialOrder) -> Poly {
    let v = ModVec::from_poly_at(1, 0, f.clone());
    let mut r = normal_form(&v, &polys_to_vecs(gb), ord);
    r.coords.swap_remove(0)
}

pub fn ideal_membership(f: &Poly, gens: &[Poly], ord: &MonomialOrder) -> Result<bool> {
    let gb = groebner_basis(gens, ord)?;
    Ok(normal_form_poly(f, &gb, ord).is_zero())
}

/// Colon ideal (I : f) = {a : a*f in I}, read off the f-coordinate of the
/// syzygies of [f, g_1, ..., g_r].
pub fn ideal_quotient_elem(
    igens: &[Poly],
    f: &Poly,
    ord: &MonomialOrder,
    kind: FieldKind,
) -> Result<Vec<Poly>> {
    let nvars = f.nvars;
    if f.is_zero() {
        return Ok(vec![Poly::constant(nvars, kind.one())]);
    }
    let mut cols: Vec<ModVec> = vec![ModVec::from_poly_at(1, 0, f.clone())];
    cols.extend(polys_to_vecs(igens));
    let syz = syzygies(&cols, 1, ord, kind)?;
    let firsts: Vec<Poly> = syz
        .into_iter()
        .map(|v| v.coords[0].clone())
        .filter(|p| !p.is_zero())
        .collect();
    groebner_basis(&firsts, ord)
}

/// Intersection of two ideals via syzygies of the stacked two-row system:
/// a syzygy (c, a, b) of columns (1,1), (g_i, 0), (0, h_j) forces
/// c in I and c in J simultaneously.
pub fn ideal_intersect(
    igens: &[Poly],
    jgens: &[Poly],
    ord: &MonomialOrder,
    kind: FieldKind,
) -> Result<Vec<Poly>> {
    if igens.is_empty() || jgens.is_empty() {
        return Ok(Vec::new());
    }
    let nvars = igens[0].nvars;
    let one = Poly::constant(nvars, kind.one());
    let mut cols: Vec<ModVec> = Vec::new();
    cols.push(ModVec { coords: vec![one.clone(), one] });
    for g in igens {
        cols.push(ModVec { coords: vec![g.clone(), Poly::zero(nvars)] });
    }
    for h in jgens {
        cols.push(ModVec { coords: vec![Poly::zero(nvars), h.clone()] });
    }
    let syz = syzygies(&cols, 2, ord, kind)?;
    let firsts: Vec<Poly> = syz
        .into_iter()
        .map(|v| v.coords[0].clone())
        .filter(|p| !p.is_zero())
        .collect();
    groebner_basis(&firsts, ord)
}

/// Colon ideal (I : J) for an ideal J, as the intersection of the
/// element-wise quotients over the generators of J.
pub fn ideal_quotient(
    igens: &[Poly],
    jgens: &[Poly],
    ord: &MonomialOrder,
    kind: FieldKind,
) -> Result<Vec<Poly>> {
    let jgens: Vec<&Poly> = jgens.iter().filter(|g| !g.is_zero()).collect();
    if jgens.is_empty() {
        return Err(Error::input("colon by the zero ideal"));
    }
    let mut acc: Option<Vec<Poly>> = None;
    for f in jgens {
        let q = ideal_quotient_elem(igens, f, ord, kind)?;
        acc = Some(match acc {
            None => q,
            Some(prev) => ideal_intersect(&prev, &q, ord, kind)?,
        });
    }
    Ok(acc.unwrap_or_default())
}

pub const SATURATION_CAP: u32 = 64;

/// Saturation (I : J^infinity) by iterating single colon steps until the
/// chain stabilizes; the iteration cap is a hard budget.
pub fn saturation(
    igens: &[Poly],
    jgens: &[Poly],
    ord: &MonomialOrder,
    kind: FieldKind,
) -> Result<(Vec<Poly>, u32)> {
    let mut cur = groebner_basis(igens, ord)?;
    for step in 1..=SATURATION_CAP {
        let next = ideal_quotient(&cur, jgens, ord, kind)?;
        let next = groebner_basis(&next, ord)?;
        if next == cur {
            return Ok((cur, step - 1));
        }
        cur = next;
    }
    Err(Error::budget(format!(
        "saturation did not stabilize within {SATURATION_CAP} colon steps"
    )))
}

/// Krull dimension of A/I computed combinatorially from the leading-term
/// ideal: the maximum size of a variable subset S such that no minimal
/// generator of LT(I) has support inside S. The unit ideal reports -1.
pub fn krull_dim(gens: &[Poly], nvars: usize, ord: &MonomialOrder) -> Result<i64> {
    if nvars > 24 {
        return Err(Error::budget("dimension search over more than 24 variables"));
    }
    let gb = groebner_basis(gens, ord)?;
    if gb.iter().any(|g| g.is_constant()) {
        return Ok(-1);
    }
    let supports: Vec<Vec<usize>> = gb
        .iter()
        .map(|g| g.leading().expect("nonzero basis element").0.support())
        .collect();
    let mut best: i64 = 0;
    for mask in 0u32..(1u32 << nvars) {
        let size = mask.count_ones() as i64;
        if size <= best {
            continue;
        }
        let independent = supports
            .iter()
            .all(|sup| sup.iter().any(|&v| mask & (1 << v) == 0));
        if independent {
            best = size;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldKind;

    fn setup2() -> (MonomialOrder, Poly, Poly) {
        let ord = MonomialOrder::degrevlex(2);
        let x = Poly::var(2, 0, FieldKind::Rational);
        let y = Poly::var(2, 1, FieldKind::Rational);
        (ord, x, y)
    }

    #[test]
    fn quotient_of_monomial_ideal() {
        // ((x^2, xy) : x) = (x, y).
        let (ord, x, y) = setup2();
        let x2 = x.mul(&x, &ord);
        let xy = x.mul(&y, &ord);
        let q = ideal_quotient_elem(&[x2, xy], &x, &ord, FieldKind::Rational).unwrap();
        assert_eq!(q, vec![x.clone(), y.clone()]);
    }

    #[test]
    fn saturation_strips_embedded_component() {
        // ((x^2, xy) : (x, y)^infinity) = (x); one colon step stabilizes at (x).
        let (ord, x, y) = setup2();
        let x2 = x.mul(&x, &ord);
        let xy = x.mul(&y, &ord);
        let (sat, _steps) =
            saturation(&[x2, xy], &[x.clone(), y.clone()], &ord, FieldKind::Rational).unwrap();
        assert_eq!(sat, vec![x.clone()]);
    }

    #[test]
    fn intersection_of_principal_ideals() {
        // (x) meet (y) = (xy).
        let (ord, x, y) = setup2();
        let inter =
            ideal_intersect(&[x.clone()], &[y.clone()], &ord, FieldKind::Rational).unwrap();
        assert_eq!(inter, vec![x.mul(&y, &ord)]);
    }

    #[test]
    fn dimension_from_leading_terms() {
        let ord3 = MonomialOrder::degrevlex(3);
        let x = Poly::var(3, 0, FieldKind::Rational);
        let y = Poly::var(3, 1, FieldKind::Rational);
        // dim k[x,y,z]/(xy) = 2.
        assert_eq!(krull_dim(&[x.mul(&y, &ord3)], 3, &ord3).unwrap(), 2);
        // dim of the full ring is the variable count; the unit ideal is -1.
        assert_eq!(krull_dim(&[], 3, &ord3).unwrap(), 3);
        let one = Poly::constant(3, FieldKind::Rational.one());
        assert_eq!(krull_dim(&[one], 3, &ord3).unwrap(), -1);
        // dim k[x,y]/(x^2, xy) = 1: the y-axis survives.
        let (ord, x2v, y2v) = setup2();
        let x2 = x2v.mul(&x2v, &ord);
        let xy = x2v.mul(&y2v, &ord);
        assert_eq!(krull_dim(&[x2, xy], 2, &ord).unwrap(), 1);
    }

    #[test]
    fn membership_and_ideal_equality() {
        let (ord, x, y) = setup2();
        let f = x.mul(&x, &ord).sub(&y.mul(&y, &ord), &ord);
        let g = x.sub(&y, &ord);
        assert!(ideal_membership(&f, &[g.clone()], &ord).unwrap());
        assert!(!ideal_membership(&g, &[f.clone()], &ord).unwrap());
        let i1 = Ideal::new(vec![f], ord.clone());
        let i2 = Ideal::new(vec![g.mul(&x.add(&y, &ord), &ord)], ord.clone());
        assert!(i1.same_ideal(&i2));
    }
}
