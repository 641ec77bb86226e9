//! Finitely presented modules over a quotient ring R = A/I, stored as a
//! generator count with degrees and a list of relation rows in the ambient
//! free module. All structural computations reduce to Groebner bases of the
//! relation module together with the block of defining-ideal multiples of
//! the generators, so every answer is exact.

use crate::error::{Error, Result};
use crate::gb::{buchberger, normal_form, syzygies, ModVec};
use crate::ideal::{ideal_intersect, krull_dim};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::Ring;
use std::sync::OnceLock;

/// A module R^g / <rows>, with one degree per generator. The presentation is
/// graded when the ring is graded and every relation is homogeneous for the
/// generator degrees.
#[derive(Debug)]
pub struct FpModule {
    pub ring: Ring,
    pub gen_degs: Vec<i64>,
    pub rels: Vec<ModVec>,
    pub graded: bool,
    rel_gb: OnceLock<Vec<ModVec>>,
}

impl Clone for FpModule {
    fn clone(&self) -> Self {
        let fresh = FpModule {
            ring: self.ring.clone(),
            gen_degs: self.gen_degs.clone(),
            rels: self.rels.clone(),
            graded: self.graded,
            rel_gb: OnceLock::new(),
        };
        if let Some(g) = self.rel_gb.get() {
            let _ = fresh.rel_gb.set(g.clone());
        }
        fresh
    }
}

impl FpModule {
    pub fn new(ring: &Ring, gen_degs: Vec<i64>, rels: Vec<ModVec>) -> Result<FpModule> {
        let g = gen_degs.len();
        let mut reduced = Vec::new();
        for r in rels {
            if r.rank() != g {
                return Err(Error::internal("relation row has wrong width"));
            }
            let rr = ModVec { coords: r.coords.iter().map(|p| ring.reduce(p)).collect() };
            if !rr.is_zero() {
                reduced.push(rr);
            }
        }
        let graded = ring.graded
            && reduced.iter().all(|r| r.homogeneous_degree(&gen_degs).is_some());
        Ok(FpModule {
            ring: ring.clone(),
            gen_degs,
            rels: reduced,
            graded,
            rel_gb: OnceLock::new(),
        })
    }

    /// Free module with the given generator degrees.
    pub fn free(ring: &Ring, degs: Vec<i64>) -> FpModule {
        FpModule {
            ring: ring.clone(),
            gen_degs: degs,
            rels: Vec::new(),
            graded: ring.graded,
            rel_gb: OnceLock::new(),
        }
    }

    /// The ring as a module over itself.
    pub fn ring_module(ring: &Ring) -> FpModule {
        FpModule::free(ring, vec![0])
    }

    /// Cyclic module R/(J + defining ideal) for ambient generators of J.
    pub fn cyclic(ring: &Ring, jgens: &[Poly]) -> Result<FpModule> {
        let rels = jgens
            .iter()
            .map(|f| ModVec { coords: vec![f.clone()] })
            .collect();
        FpModule::new(ring, vec![0], rels)
    }

    pub fn zero_module(ring: &Ring) -> FpModule {
        FpModule::free(ring, Vec::new())
    }

    pub fn ngens(&self) -> usize {
        self.gen_degs.len()
    }

    pub fn require_graded(&self, what: &str) -> Result<()> {
        if !self.graded {
            return Err(Error::input(format!(
                "{what} requires a graded module presentation over a graded ring"
            )));
        }
        Ok(())
    }

    /// The relation rows together with defining-ideal multiples of every
    /// generator: a generating set, over the ambient polynomial ring, of the
    /// full submodule the presentation quotients by.
    pub fn ambient_rels(&self) -> Vec<ModVec> {
        let mut out = self.rels.clone();
        out.extend(ideal_block(&self.ring, self.ngens()));
        out
    }

    /// Reduced Groebner basis of the ambient relation module.
    pub fn rel_gb(&self) -> &[ModVec] {
        self.rel_gb.get_or_init(|| {
            buchberger(&self.ambient_rels(), &self.ring.order)
                .expect("relation module basis computation")
        })
    }

    /// Canonical representative of an element of the module.
    pub fn reduce_elem(&self, v: &ModVec) -> ModVec {
        normal_form(v, self.rel_gb(), &self.ring.order)
    }

    pub fn elem_is_zero(&self, v: &ModVec) -> bool {
        self.reduce_elem(v).is_zero()
    }

    pub fn is_zero_module(&self) -> bool {
        let kind = self.ring.field;
        let nvars = self.ring.nvars();
        (0..self.ngens()).all(|j| {
            self.elem_is_zero(&ModVec::unit(self.ngens(), nvars, j, kind))
        })
    }

    /// Deterministic identity string: generator degrees plus the reduced
    /// relation basis. Equal presentations of equal modules over the same
    /// ring agree on it only when generators match, so this is a memo key,
    /// not an isomorphism test.
    pub fn canonical_key(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        write!(s, "degs{:?};", self.gen_degs).unwrap();
        for v in self.rel_gb() {
            s.push('[');
            for p in &v.coords {
                write!(s, "{};", p.display(&self.ring.vars)).unwrap();
            }
            s.push(']');
        }
        s
    }

    pub fn direct_sum(&self, other: &FpModule) -> Result<FpModule> {
        if !std::sync::Arc::ptr_eq(&self.ring, &other.ring) {
            return Err(Error::input("direct sum of modules over different rings"));
        }
        let g1 = self.ngens();
        let g2 = other.ngens();
        let nvars = self.ring.nvars();
        let mut degs = self.gen_degs.clone();
        degs.extend(other.gen_degs.iter().copied());
        let mut rels = Vec::new();
        for r in &self.rels {
            let mut coords = r.coords.clone();
            coords.extend((0..g2).map(|_| Poly::zero(nvars)));
            rels.push(ModVec { coords });
        }
        for r in &other.rels {
            let mut coords: Vec<Poly> = (0..g1).map(|_| Poly::zero(nvars)).collect();
            coords.extend(r.coords.iter().cloned());
            rels.push(ModVec { coords });
        }
        FpModule::new(&self.ring, degs, rels)
    }

    /// Degree shift M(a): the twisted module agrees with M with all degrees
    /// lowered by a, so a generator of degree d sits in degree d - a.
    pub fn twist(&self, a: i64) -> FpModule {
        let mut m = self.clone();
        m.gen_degs = self.gen_degs.iter().map(|d| d - a).collect();
        m
    }

    /// Generators of the annihilator ideal, as an ideal of the ambient
    /// polynomial ring (it always contains the defining ideal).
    pub fn annihilator(&self) -> Result<Vec<Poly>> {
        let nvars = self.ring.nvars();
        let kind = self.ring.field;
        if self.ngens() == 0 {
            return Ok(vec![self.ring.one()]);
        }
        let mut acc: Option<Vec<Poly>> = None;
        for j in 0..self.ngens() {
            let ej = ModVec::unit(self.ngens(), nvars, j, kind);
            let colon = preimage_gens(&[ej], self.rel_gb(), &self.ring)?;
            let colon_polys: Vec<Poly> = colon
                .into_iter()
                .map(|v| v.coords.into_iter().next().unwrap())
                .filter(|p| !p.is_zero())
                .collect();
            acc = Some(match acc {
                None => colon_polys,
                Some(prev) => {
                    ideal_intersect(&prev, &colon_polys, &self.ring.order, kind)?
                }
            });
        }
        Ok(acc.unwrap())
    }

    /// Krull dimension of the support; -1 for the zero module.
    pub fn dimension(&self) -> Result<i64> {
        let ann = self.annihilator()?;
        krull_dim(&ann, self.ring.nvars(), &self.ring.order)
    }

    /// Dimension over the coefficient field of the degree-t graded piece.
    pub fn hilbert_function(&self, t: i64) -> Result<usize> {
        self.require_graded("the Hilbert function")?;
        let leads = self.lead_monomials_by_position();
        let mut total = 0usize;
        for (j, lj) in leads.iter().enumerate() {
            let d = t - self.gen_degs[j];
            if d < 0 {
                continue;
            }
            total += count_standard_monomials_of_degree(self.ring.nvars(), lj, d as u32)?;
        }
        Ok(total)
    }

    /// Total dimension over the coefficient field; an error when any graded
    /// piece pattern continues forever.
    pub fn length(&self) -> Result<usize> {
        self.require_graded("length")?;
        let leads = self.lead_monomials_by_position();
        let mut total = 0usize;
        for lj in &leads {
            total += count_all_standard_monomials(self.ring.nvars(), lj)?;
        }
        Ok(total)
    }

    /// Leading monomials of the relation basis, grouped by generator
    /// position. Standard monomials (those not divisible by any entry at
    /// their position) form a field basis of the module.
    fn lead_monomials_by_position(&self) -> Vec<Vec<Monomial>> {
        let mut leads: Vec<Vec<Monomial>> = vec![Vec::new(); self.ngens()];
        for v in self.rel_gb() {
            if let Some((pos, m, _)) = v.lead() {
                leads[pos].push(m.clone());
            }
        }
        leads
    }

    /// Remove redundant generators (graded case): as long as some element of
    /// the relation basis takes a constant value on a generator coordinate,
    /// that generator is expressed by the others and is eliminated. Then
    /// replace the relation rows by a minimal generating set of the relation
    /// module.
    pub fn minimize(&self) -> Result<FpModule> {
        self.require_graded("presentation minimization")?;
        let mut cur = self.clone();
        'outer: loop {
            let gb = cur.rel_gb().to_vec();
            for (ri, r) in gb.iter().enumerate() {
                for j in 0..cur.ngens() {
                    let e = &r.coords[j];
                    if !e.is_zero() && e.is_constant() {
                        cur = eliminate_generator(&cur, &gb, ri, j)?;
                        continue 'outer;
                    }
                }
            }
            break;
        }
        if cur.ngens() == 0 {
            return Ok(cur);
        }
        // Candidate relations: the reduced basis with each row reduced
        // modulo the defining ideal; rows that vanish in R^g drop out.
        let candidates: Vec<ModVec> = cur
            .rel_gb()
            .iter()
            .map(|v| ModVec { coords: v.coords.iter().map(|p| cur.ring.reduce(p)).collect() })
            .filter(|v| !v.is_zero())
            .collect();
        let minimal = minimal_generators(&cur.ring, &candidates, &cur.gen_degs)?;
        FpModule::new(&cur.ring, cur.gen_degs.clone(), minimal)
    }
}

/// The block f * e_j for every defining-ideal basis element f and
/// generator position j.
pub fn ideal_block(ring: &Ring, rank: usize) -> Vec<ModVec> {
    let mut out = Vec::new();
    for f in ring.quotient.gb() {
        for j in 0..rank {
            out.push(ModVec::from_poly_at(rank, j, f.clone()));
        }
    }
    out
}

/// Generators of { c : sum c_i cols_i lies in the span of target_rels },
/// the preimage of a submodule under the map sending e_i to cols_i. Both
/// cols and target_rels live in one ambient free module.
pub fn preimage_gens(
    cols: &[ModVec],
    target_rels: &[ModVec],
    ring: &Ring,
) -> Result<Vec<ModVec>> {
    let n = cols.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let rank = cols[0].rank();
    let mut all: Vec<ModVec> = cols.to_vec();
    all.extend(target_rels.iter().cloned());
    let syz = syzygies(&all, rank, &ring.order, ring.field)?;
    let mut out = Vec::new();
    for s in syz {
        let head = ModVec { coords: s.coords[..n].to_vec() };
        if !head.is_zero() {
            out.push(head);
        }
    }
    Ok(out)
}

/// Relations, over R, among the residue classes of `cols` in the module
/// presented with `target_rels` as its full ambient relation set.
pub fn kernel_gens(
    cols: &[ModVec],
    target_rels: &[ModVec],
    ring: &Ring,
) -> Result<Vec<ModVec>> {
    preimage_gens(cols, target_rels, ring)
}

/// Present the subquotient (span(gens) + span(mods)) / (span(dens) +
/// span(mods)) of an ambient free module with the given degree shifts:
/// generators are the given vectors, relations are all coefficient vectors
/// carrying a combination of them into span(dens) + span(mods). `mods` must
/// already include the defining-ideal block.
pub fn present_subquotient(
    ring: &Ring,
    ambient_shifts: &[i64],
    gens: &[ModVec],
    dens: &[ModVec],
    mods: &[ModVec],
) -> Result<FpModule> {
    let gens: Vec<ModVec> = gens.iter().filter(|v| !v.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Ok(FpModule::zero_module(ring));
    }
    let mut target = dens.to_vec();
    target.extend(mods.iter().cloned());
    let rels = preimage_gens(&gens, &target, ring)?;
    let degs: Vec<i64> = if ring.graded {
        let maybe: Vec<Option<i64>> =
            gens.iter().map(|v| v.homogeneous_degree(ambient_shifts)).collect();
        if maybe.iter().all(|d| d.is_some()) {
            maybe.into_iter().map(|d| d.unwrap()).collect()
        } else {
            vec![0; gens.len()]
        }
    } else {
        vec![0; gens.len()]
    };
    FpModule::new(ring, degs, rels)
}

/// A minimal generating set extracted from `vectors` (graded): walk the
/// candidates in ascending degree and keep one exactly when it is not a
/// combination of the kept ones plus (variables) * (all of them) plus the
/// defining-ideal block.
pub fn minimal_generators(
    ring: &Ring,
    vectors: &[ModVec],
    shifts: &[i64],
) -> Result<Vec<ModVec>> {
    let rank = shifts.len();
    let nonzero: Vec<ModVec> = vectors.iter().filter(|v| !v.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Ok(Vec::new());
    }
    let mut order: Vec<usize> = (0..nonzero.len()).collect();
    let key = |v: &ModVec| v.homogeneous_degree(shifts).unwrap_or(i64::MAX);
    order.sort_by_key(|&i| key(&nonzero[i]));

    // The fixed bulk: m * (every candidate) + defining-ideal block.
    let mut bulk: Vec<ModVec> = Vec::new();
    for v in &nonzero {
        for i in 0..ring.nvars() {
            bulk.push(v.mul_poly(&ring.var_poly(i), &ring.order));
        }
    }
    bulk.extend(ideal_block(ring, rank));

    let mut kept: Vec<ModVec> = Vec::new();
    for &i in &order {
        let cand = &nonzero[i];
        let mut test = kept.clone();
        test.extend(bulk.iter().cloned());
        let gb = buchberger(&test, &ring.order)?;
        if !normal_form(cand, &gb, &ring.order).is_zero() {
            kept.push(cand.clone());
        }
    }
    Ok(kept)
}

/// Replace the presentation by one with generator j eliminated, using basis
/// element `gb[ri]` whose j-th coordinate is the nonzero constant c: every
/// other basis element s maps to s - (s_j / c) * r, which vanishes at j, and
/// the j-th coordinate is dropped everywhere.
fn eliminate_generator(
    m: &FpModule,
    gb: &[ModVec],
    ri: usize,
    j: usize,
) -> Result<FpModule> {
    let r = &gb[ri];
    let c = r.coords[j].leading().map(|(_, c)| c.clone()).unwrap();
    let cinv = c.inv()?;
    let ord = &m.ring.order;
    let mut new_rels = Vec::new();
    for (si, s) in gb.iter().enumerate() {
        if si == ri {
            continue;
        }
        let factor = s.coords[j].scale(&cinv);
        let image = s.sub(&r.mul_poly(&factor, ord), ord);
        debug_assert!(image.coords[j].is_zero());
        let mut coords = image.coords;
        coords.remove(j);
        let v = ModVec { coords };
        if !v.is_zero() {
            new_rels.push(v);
        }
    }
    let mut degs = m.gen_degs.clone();
    degs.remove(j);
    FpModule::new(&m.ring, degs, new_rels)
}

const MONOMIAL_ENUM_BUDGET: usize = 5_000_000;

/// Number of degree-d monomials in `nvars` variables divisible by none of
/// `blockers`.
fn count_standard_monomials_of_degree(
    nvars: usize,
    blockers: &[Monomial],
    d: u32,
) -> Result<usize> {
    if blockers.iter().any(|m| m.is_one()) {
        return Ok(0);
    }
    let mut count = 0usize;
    let mut visited = 0usize;
    let mut exps = vec![0u32; nvars];
    enumerate_of_degree(&mut exps, 0, d, blockers, &mut count, &mut visited)?;
    Ok(count)
}

fn enumerate_of_degree(
    exps: &mut Vec<u32>,
    pos: usize,
    remaining: u32,
    blockers: &[Monomial],
    count: &mut usize,
    visited: &mut usize,
) -> Result<()> {
    *visited += 1;
    if *visited > MONOMIAL_ENUM_BUDGET {
        return Err(Error::budget("graded piece enumeration budget exhausted"));
    }
    if pos == exps.len() - 1 {
        exps[pos] = remaining;
        let m = Monomial::from_exps(exps.clone());
        if !blockers.iter().any(|b| b.divides(&m)) {
            *count += 1;
        }
        exps[pos] = 0;
        return Ok(());
    }
    for e in 0..=remaining {
        exps[pos] = e;
        enumerate_of_degree(exps, pos + 1, remaining - e, blockers, count, visited)?;
    }
    exps[pos] = 0;
    Ok(())
}

/// Total number of standard monomials, requiring a finite answer: every
/// variable must have a pure power among the blockers.
fn count_all_standard_monomials(nvars: usize, blockers: &[Monomial]) -> Result<usize> {
    if blockers.iter().any(|m| m.is_one()) {
        return Ok(0);
    }
    let mut bounds = vec![None::<u32>; nvars];
    for b in blockers {
        let supp = b.support();
        if supp.len() == 1 {
            let v = supp[0];
            let e = b.exps[v];
            bounds[v] = Some(bounds[v].map_or(e, |old: u32| old.min(e)));
        }
    }
    let mut box_size = 1usize;
    for (v, b) in bounds.iter().enumerate() {
        match b {
            None => {
                return Err(Error::input(format!(
                    "length is infinite: no pure power of variable #{v} annihilates this position"
                )))
            }
            Some(e) => {
                box_size = box_size.saturating_mul(*e as usize);
            }
        }
    }
    if box_size > MONOMIAL_ENUM_BUDGET {
        return Err(Error::budget("length enumeration budget exhausted"));
    }
    let bounds: Vec<u32> = bounds.into_iter().map(|b| b.unwrap()).collect();
    let mut exps = vec![0u32; nvars];
    let mut count = 0usize;
    enumerate_in_box(&mut exps, 0, &bounds, blockers, &mut count);
    Ok(count)
}

fn enumerate_in_box(
    exps: &mut Vec<u32>,
    pos: usize,
    bounds: &[u32],
    blockers: &[Monomial],
    count: &mut usize,
) {
    if pos == exps.len() {
        let m = Monomial::from_exps(exps.clone());
        if !blockers.iter().any(|b| b.divides(&m)) {
            *count += 1;
        }
        return;
    }
    for e in 0..bounds[pos] {
        exps[pos] = e;
        enumerate_in_box(exps, pos + 1, bounds, blockers, count);
    }
    exps[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldKind;
    use crate::monomial::MonomialOrder;
    use crate::ring::RingData;

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

    #[test]
    fn residue_field_basics() {
        let r = qq_xy();
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let k = FpModule::cyclic(&r, &[x, y]).unwrap();
        assert!(!k.is_zero_module());
        assert!(k.graded);
        assert_eq!(k.hilbert_function(0).unwrap(), 1);
        assert_eq!(k.hilbert_function(1).unwrap(), 0);
        assert_eq!(k.length().unwrap(), 1);
        assert_eq!(k.dimension().unwrap(), 0);
    }

    #[test]
    fn free_module_basics() {
        let r = qq_xy();
        let f = FpModule::ring_module(&r);
        assert_eq!(f.hilbert_function(0).unwrap(), 1);
        assert_eq!(f.hilbert_function(3).unwrap(), 4);
        assert!(f.length().is_err());
        assert_eq!(f.dimension().unwrap(), 2);
        assert!(!f.is_zero_module());
        assert!(FpModule::zero_module(&r).is_zero_module());
    }

    #[test]
    fn unit_ideal_gives_zero_module() {
        let r = qq_xy();
        let one = r.one();
        let m = FpModule::cyclic(&r, &[one]).unwrap();
        assert!(m.is_zero_module());
        assert_eq!(m.length().unwrap(), 0);
        assert_eq!(m.dimension().unwrap(), -1);
    }

    #[test]
    fn minimization_collapses_redundant_generator() {
        let r = qq_xy();
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let one = r.one();
        // R^2 / < e0 - e1, x e0, y e0 >  is isomorphic to R/(x, y).
        let rels = vec![
            ModVec { coords: vec![one.clone(), one.neg()] },
            ModVec { coords: vec![x.clone(), Poly::zero(2)] },
            ModVec { coords: vec![y.clone(), Poly::zero(2)] },
        ];
        let m = FpModule::new(&r, vec![0, 0], rels).unwrap();
        assert_eq!(m.length().unwrap(), 1);
        let min = m.minimize().unwrap();
        assert_eq!(min.ngens(), 1);
        assert_eq!(min.rels.len(), 2);
        assert_eq!(min.length().unwrap(), 1);
    }

    #[test]
    fn minimal_relations_are_pruned() {
        let r = qq_xy();
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let xy = x.mul(&y, &r.order);
        // x*y is a consequence of x; the minimal presentation of R/(x, y)
        // keeps exactly two relations.
        let m = FpModule::cyclic(&r, &[x, xy, y]).unwrap();
        let min = m.minimize().unwrap();
        assert_eq!(min.ngens(), 1);
        assert_eq!(min.rels.len(), 2);
    }

    #[test]
    fn annihilator_of_direct_sum() {
        let r = qq_xy();
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let mx = FpModule::cyclic(&r, &[x.clone()]).unwrap();
        let my = FpModule::cyclic(&r, &[y.clone()]).unwrap();
        let s = mx.direct_sum(&my).unwrap();
        let ann = s.annihilator().unwrap();
        let gb = crate::ideal::groebner_basis(&ann, &r.order).unwrap();
        let xy = x.mul(&y, &r.order);
        assert_eq!(gb, vec![xy]);
        assert_eq!(s.dimension().unwrap(), 1);
    }

    #[test]
    fn subquotient_presentation() {
        // (x)/(x^2) inside R = Q[x, y]: isomorphic to R/(x) generated in
        // degree 1, so one dimension in every degree >= 1.
        let r = qq_xy();
        let x = r.var_poly(0);
        let x2 = x.mul(&x, &r.order);
        let gens = vec![ModVec { coords: vec![x.clone()] }];
        let dens = vec![ModVec { coords: vec![x2] }];
        let mods = ideal_block(&r, 1);
        let m = present_subquotient(&r, &[0], &gens, &dens, &mods).unwrap();
        assert_eq!(m.ngens(), 1);
        assert_eq!(m.gen_degs, vec![1]);
        assert!(m.length().is_err());
        assert_eq!(m.dimension().unwrap(), 1);
        assert_eq!(m.hilbert_function(0).unwrap(), 0);
        assert_eq!(m.hilbert_function(1).unwrap(), 1);
        assert_eq!(m.hilbert_function(5).unwrap(), 1);

        // Same construction inside Q[x, y]/(x^2): now (x)/(0) has length 1
        // once the defining relations annihilate y * x.
        // (Covered in quotient_ring_modules below.)
    }

    #[test]
    fn twist_shifts_hilbert_function() {
        let r = qq_xy();
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let k = FpModule::cyclic(&r, &[x, y]).unwrap();
        let t = k.twist(2); // concentrated in degree -2 now
        assert_eq!(t.hilbert_function(-2).unwrap(), 1);
        assert_eq!(t.hilbert_function(0).unwrap(), 0);
    }

    #[test]
    fn quotient_ring_modules() {
        // R = Q[x, y]/(x^2, x*y): the ring as a module has length infinite
        // but dimension 1, and x generates a length-one socle element.
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
        assert_eq!(m.dimension().unwrap(), 1);
        assert!(m.length().is_err());
        assert_eq!(m.hilbert_function(0).unwrap(), 1);
        // Degree 1 piece: x and y survive; degree 2: only y^2.
        assert_eq!(m.hilbert_function(1).unwrap(), 2);
        assert_eq!(m.hilbert_function(2).unwrap(), 1);
        // The annihilator of x-bar is (x, y).
        let xbar = ModVec { coords: vec![r.var_poly(0)] };
        let sub = present_subquotient(&r, &[0], &[xbar], &[], &m.ambient_rels()).unwrap();
        assert_eq!(sub.length().unwrap(), 1);
    }
}
