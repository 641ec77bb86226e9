//! Ext and Tor of finitely presented modules, computed from a free
//! resolution of the first argument: apply Hom(-, N) or (-) tensor N
//! degreewise, then present each (co)homology as a subquotient.

use crate::error::{Error, Result};
use crate::fpmod::{ideal_block, present_subquotient, FpModule};
use crate::gb::ModVec;
use crate::poly::Poly;
use crate::resolution::{free_resolution, Resolution};
use crate::ring::Ring;

/// Relations of N placed in every one of `slots` parallel copies, plus the
/// defining-ideal block for the whole ambient free module. Generator (t, s)
/// of N^slots flattens to index t * ngens(N) + s.
fn slotwise_rels(n: &FpModule, slots: usize) -> Vec<ModVec> {
    let gn = n.ngens();
    let nvars = n.ring.nvars();
    let rank = gn * slots;
    let mut out = Vec::new();
    for t in 0..slots {
        for r in &n.rels {
            let mut coords: Vec<Poly> = (0..rank).map(|_| Poly::zero(nvars)).collect();
            for s in 0..gn {
                coords[t * gn + s] = r.coords[s].clone();
            }
            out.push(ModVec { coords });
        }
    }
    out.extend(ideal_block(&n.ring, rank));
    out
}

/// Columns of the map Hom(F_i, N) -> Hom(F_{i+1}, N) induced by D_{i+1}
/// (whose columns in F_i are `diff`). Source generator (t, s) maps to the
/// vector with entry diff[u][t] at position (u, s).
fn hom_induced_cols(diff: &[ModVec], b_i: usize, gn: usize, nvars: usize) -> Vec<ModVec> {
    let b_next = diff.len();
    let rank = b_next * gn;
    let mut cols = Vec::with_capacity(b_i * gn);
    for t in 0..b_i {
        for s in 0..gn {
            let mut coords: Vec<Poly> = (0..rank).map(|_| Poly::zero(nvars)).collect();
            for (u, col) in diff.iter().enumerate() {
                coords[u * gn + s] = col.coords[t].clone();
            }
            cols.push(ModVec { coords });
        }
    }
    cols
}

/// Columns of the map F_{i+1} (x) N -> F_i (x) N induced by D_{i+1}.
/// Source generator (u, s) maps to the vector with entry diff[u][t] at
/// position (t, s).
fn tensor_induced_cols(diff: &[ModVec], b_i: usize, gn: usize, nvars: usize) -> Vec<ModVec> {
    let rank = b_i * gn;
    let mut cols = Vec::with_capacity(diff.len() * gn);
    for col in diff {
        for s in 0..gn {
            let mut coords: Vec<Poly> = (0..rank).map(|_| Poly::zero(nvars)).collect();
            for t in 0..b_i {
                coords[t * gn + s] = col.coords[t].clone();
            }
            cols.push(ModVec { coords });
        }
    }
    cols
}

fn unit_cols(ring: &Ring, rank: usize) -> Vec<ModVec> {
    (0..rank).map(|j| ModVec::unit(rank, ring.nvars(), j, ring.field)).collect()
}

/// Resolve far enough that differential number i+1 is available whenever it
/// is nonzero.
fn resolve_for(m: &FpModule, i: usize, cap: usize) -> Result<Resolution> {
    free_resolution(m, cap.max(i + 1))
}

/// Ext^i(M, N) presented as a module; exact in every degree.
pub fn ext_module(i: usize, m: &FpModule, n: &FpModule, cap: usize) -> Result<FpModule> {
    if !std::sync::Arc::ptr_eq(&m.ring, &n.ring) {
        return Err(Error::input("Ext of modules over different rings"));
    }
    let ring = &m.ring;
    if n.ngens() == 0 || m.ngens() == 0 {
        return Ok(FpModule::zero_module(ring));
    }
    let res = resolve_for(m, i, cap)?;
    if i > res.len() {
        if res.complete {
            return Ok(FpModule::zero_module(ring));
        }
        return Err(Error::budget("resolution cap too small for the requested Ext index"));
    }
    let b_i = res.rank(i);
    if b_i == 0 {
        return Ok(FpModule::zero_module(ring));
    }
    let gn = n.ngens();
    let nvars = ring.nvars();
    let rank = b_i * gn;
    let mods = slotwise_rels(n, b_i);

    let z: Vec<ModVec> = if i < res.diffs.len() {
        let map_cols = hom_induced_cols(&res.diffs[i], b_i, gn, nvars);
        let target_rels = slotwise_rels(n, res.rank(i + 1));
        crate::fpmod::preimage_gens(&map_cols, &target_rels, ring)?
    } else {
        unit_cols(ring, rank)
    };
    let b: Vec<ModVec> = if i == 0 {
        Vec::new()
    } else {
        hom_induced_cols(&res.diffs[i - 1], res.rank(i - 1), gn, nvars)
    };

    let mut shifts = Vec::with_capacity(rank);
    for t in 0..b_i {
        for s in 0..gn {
            shifts.push(n.gen_degs[s] - res.degs[i][t]);
        }
    }
    present_subquotient(ring, &shifts, &z, &b, &mods)
}

/// Tor_i(M, N) presented as a module; exact in every degree.
pub fn tor_module(i: usize, m: &FpModule, n: &FpModule, cap: usize) -> Result<FpModule> {
    if !std::sync::Arc::ptr_eq(&m.ring, &n.ring) {
        return Err(Error::input("Tor of modules over different rings"));
    }
    let ring = &m.ring;
    if n.ngens() == 0 || m.ngens() == 0 {
        return Ok(FpModule::zero_module(ring));
    }
    let res = resolve_for(m, i, cap)?;
    if i > res.len() {
        if res.complete {
            return Ok(FpModule::zero_module(ring));
        }
        return Err(Error::budget("resolution cap too small for the requested Tor index"));
    }
    let b_i = res.rank(i);
    if b_i == 0 {
        return Ok(FpModule::zero_module(ring));
    }
    let gn = n.ngens();
    let nvars = ring.nvars();
    let rank = b_i * gn;
    let mods = slotwise_rels(n, b_i);

    let z: Vec<ModVec> = if i == 0 {
        unit_cols(ring, rank)
    } else {
        let map_cols = tensor_induced_cols(&res.diffs[i - 1], res.rank(i - 1), gn, nvars);
        let target_rels = slotwise_rels(n, res.rank(i - 1));
        crate::fpmod::preimage_gens(&map_cols, &target_rels, ring)?
    };
    let b: Vec<ModVec> = if i < res.diffs.len() {
        tensor_induced_cols(&res.diffs[i], b_i, gn, nvars)
    } else {
        Vec::new()
    };

    let mut shifts = Vec::with_capacity(rank);
    for t in 0..b_i {
        for s in 0..gn {
            shifts.push(res.degs[i][t] + n.gen_degs[s]);
        }
    }
    present_subquotient(ring, &shifts, &z, &b, &mods)
}

/// M (x) N presented directly on pairwise products of generators.
pub fn tensor_product(m: &FpModule, n: &FpModule) -> Result<FpModule> {
    if !std::sync::Arc::ptr_eq(&m.ring, &n.ring) {
        return Err(Error::input("tensor product of modules over different rings"));
    }
    let ring = &m.ring;
    let gm = m.ngens();
    let gn = n.ngens();
    let nvars = ring.nvars();
    let rank = gm * gn;
    let mut degs = Vec::with_capacity(rank);
    for j in 0..gm {
        for s in 0..gn {
            degs.push(m.gen_degs[j] + n.gen_degs[s]);
        }
    }
    let mut rels = Vec::new();
    for r in &m.rels {
        for s in 0..gn {
            let mut coords: Vec<Poly> = (0..rank).map(|_| Poly::zero(nvars)).collect();
            for j in 0..gm {
                coords[j * gn + s] = r.coords[j].clone();
            }
            rels.push(ModVec { coords });
        }
    }
    for q in &n.rels {
        for j in 0..gm {
            let mut coords: Vec<Poly> = (0..rank).map(|_| Poly::zero(nvars)).collect();
            for s in 0..gn {
                coords[j * gn + s] = q.coords[s].clone();
            }
            rels.push(ModVec { coords });
        }
    }
    FpModule::new(ring, degs, rels)
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

    const CAP: usize = 8;

    #[test]
    fn ext_of_residue_field_with_itself() {
        // Over Q[x, y] the Koszul complex gives dim Ext^i(k, k) = C(2, i).
        let r = qq_xy();
        let k = FpModule::cyclic(&r, &[r.var_poly(0), r.var_poly(1)]).unwrap();
        let expected = [1usize, 2, 1, 0];
        for (i, want) in expected.iter().enumerate() {
            let e = ext_module(i, &k, &k, CAP).unwrap();
            assert_eq!(e.length().unwrap(), *want, "Ext^{i}");
        }
        // Internal degrees: Ext^1(k, k) lives in degree -1.
        let e1 = ext_module(1, &k, &k, CAP).unwrap();
        assert_eq!(e1.hilbert_function(-1).unwrap(), 2);
        assert_eq!(e1.hilbert_function(0).unwrap(), 0);
    }

    #[test]
    fn tor_of_residue_field_with_itself() {
        let r = qq_xy();
        let k = FpModule::cyclic(&r, &[r.var_poly(0), r.var_poly(1)]).unwrap();
        let expected = [1usize, 2, 1, 0];
        for (i, want) in expected.iter().enumerate() {
            let t = tor_module(i, &k, &k, CAP).unwrap();
            assert_eq!(t.length().unwrap(), *want, "Tor_{i}");
        }
        let t1 = tor_module(1, &k, &k, CAP).unwrap();
        assert_eq!(t1.hilbert_function(1).unwrap(), 2);
    }

    #[test]
    fn hom_into_the_ring_module() {
        // Ext^0(R, M) is M itself.
        let r = qq_xy();
        let rm = FpModule::ring_module(&r);
        let k = FpModule::cyclic(&r, &[r.var_poly(0), r.var_poly(1)]).unwrap();
        let h = ext_module(0, &rm, &k, CAP).unwrap();
        assert_eq!(h.length().unwrap(), 1);
        assert_eq!(h.hilbert_function(0).unwrap(), 1);
    }

    #[test]
    fn ext_against_hypersurface_quotients() {
        // Ext^0(R/x, R/x) = R/x; Ext^1(R/x, R/x) = (R/x)(1).
        let r = qq_xy();
        let x = r.var_poly(0);
        let mx = FpModule::cyclic(&r, &[x]).unwrap();
        let e0 = ext_module(0, &mx, &mx, CAP).unwrap();
        assert_eq!(e0.hilbert_function(0).unwrap(), 1);
        assert_eq!(e0.hilbert_function(3).unwrap(), 1);
        let e1 = ext_module(1, &mx, &mx, CAP).unwrap();
        assert_eq!(e1.hilbert_function(-1).unwrap(), 1);
        assert_eq!(e1.hilbert_function(0).unwrap(), 1);
        assert!(e1.length().is_err());
        assert!(ext_module(2, &mx, &mx, CAP).unwrap().is_zero_module());
    }

    #[test]
    fn tor_vanishes_for_transverse_hypersurfaces() {
        // x, y is a regular sequence: Tor_1(R/x, R/y) = 0 while
        // Tor_1(R/x, R/x) = (R/x)(-1).
        let r = qq_xy();
        let mx = FpModule::cyclic(&r, &[r.var_poly(0)]).unwrap();
        let my = FpModule::cyclic(&r, &[r.var_poly(1)]).unwrap();
        assert!(tor_module(1, &mx, &my, CAP).unwrap().is_zero_module());
        let t = tor_module(1, &mx, &mx, CAP).unwrap();
        assert!(!t.is_zero_module());
        assert_eq!(t.hilbert_function(1).unwrap(), 1);
        assert_eq!(t.hilbert_function(0).unwrap(), 0);
    }

    #[test]
    fn tor_is_balanced_in_low_degrees() {
        // Compare Tor_i(M, N) with Tor_i(N, M) through Hilbert functions.
        let r = qq_xy();
        let k = FpModule::cyclic(&r, &[r.var_poly(0), r.var_poly(1)]).unwrap();
        let mx = FpModule::cyclic(&r, &[r.var_poly(0)]).unwrap();
        for i in 0..3 {
            let a = tor_module(i, &k, &mx, CAP).unwrap();
            let b = tor_module(i, &mx, &k, CAP).unwrap();
            for t in -3..6 {
                assert_eq!(
                    a.hilbert_function(t).unwrap(),
                    b.hilbert_function(t).unwrap(),
                    "Tor_{i} degree {t}"
                );
            }
        }
    }

    #[test]
    fn tensor_product_matches_tor_zero() {
        let r = qq_xy();
        let k = FpModule::cyclic(&r, &[r.var_poly(0), r.var_poly(1)]).unwrap();
        let mx = FpModule::cyclic(&r, &[r.var_poly(0)]).unwrap();
        let direct = tensor_product(&mx, &k).unwrap();
        let derived = tor_module(0, &mx, &k, CAP).unwrap();
        for t in -2..5 {
            assert_eq!(
                direct.hilbert_function(t).unwrap(),
                derived.hilbert_function(t).unwrap()
            );
        }
    }

    #[test]
    fn ext_over_a_quotient_ring() {
        // R = Q[x]/(x^2), k = R/(x): Ext^i(k, k) is one-dimensional for
        // every i (the resolution is periodic).
        let ord = MonomialOrder::degrevlex(1);
        let kq = FieldKind::Rational;
        let x = crate::poly::Poly::var(1, 0, kq);
        let x2 = x.mul(&x, &ord);
        let r = RingData::new(kq, vec!["x".into()], ord, vec![x2], false).unwrap();
        let k = FpModule::cyclic(&r, &[r.var_poly(0)]).unwrap();
        for i in 0..4 {
            let e = ext_module(i, &k, &k, 10).unwrap();
            assert_eq!(e.length().unwrap(), 1, "Ext^{i}");
        }
    }
}
