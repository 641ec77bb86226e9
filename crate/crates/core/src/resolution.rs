//! Free resolutions by iterated syzygy computation. In the graded case each
//! step is minimized, so the resolution is minimal and its ranks are the
//! Betti numbers; in the ungraded case the canonical reduced basis of each
//! syzygy module is used, which still resolves but may overcount ranks.

use crate::error::{Error, Result};
use crate::fpmod::{ideal_block, minimal_generators, preimage_gens, FpModule};
use crate::gb::ModVec;
use crate::ring::Ring;

/// Projective dimension as read off a resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pd {
    /// The zero module.
    ZeroModule,
    Finite(usize),
    /// The resolution was cut at the cap while syzygies kept coming.
    AtLeast(usize),
}

impl std::fmt::Display for Pd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Pd::ZeroModule => write!(f, "-infinity"),
            Pd::Finite(n) => write!(f, "{n}"),
            Pd::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

/// F_0 <- F_1 <- ... <- F_L covering the module, with `degs[i]` the basis
/// degrees of F_i and `diffs[i]` the columns of the map F_{i+1} -> F_i.
/// `complete` records that the last computed syzygy module vanished, so the
/// displayed differentials form the whole resolution.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub ring: Ring,
    pub degs: Vec<Vec<i64>>,
    pub diffs: Vec<Vec<ModVec>>,
    pub complete: bool,
    pub graded: bool,
}

impl Resolution {
    pub fn len(&self) -> usize {
        self.degs.len() - 1
    }

    pub fn rank(&self, i: usize) -> usize {
        self.degs.get(i).map(|d| d.len()).unwrap_or(0)
    }

    pub fn pd(&self) -> Pd {
        if self.degs == vec![Vec::<i64>::new()] {
            return Pd::ZeroModule;
        }
        if self.complete {
            Pd::Finite(self.len())
        } else {
            Pd::AtLeast(self.len())
        }
    }

    /// The i-th syzygy module: the cokernel of the map F_{i+1} -> F_i, which
    /// equals the image of F_i -> F_{i-1} by exactness. Index 0 returns the
    /// resolved module itself (minimized in the graded case).
    pub fn syzygy_module(&self, i: usize) -> Result<FpModule> {
        // The relations of the i-th syzygy are the columns of the (i+1)-st
        // differential; without it the syzygy is known free only when the
        // resolution terminated.
        if i < self.degs.len() && (i < self.diffs.len() || self.complete) {
            let rels = self.diffs.get(i).cloned().unwrap_or_default();
            return FpModule::new(&self.ring, self.degs[i].clone(), rels);
        }
        if self.complete {
            return Ok(FpModule::zero_module(&self.ring));
        }
        Err(Error::budget(format!(
            "syzygy index {i} exceeds the computed resolution (length {}, incomplete); raise the resolution cap",
            self.len()
        )))
    }

    /// Graded Betti numbers: for each homological degree, the sorted list of
    /// (internal degree, multiplicity) pairs.
    pub fn betti(&self) -> Result<Vec<Vec<(i64, usize)>>> {
        if !self.graded {
            return Err(Error::input(
                "Betti numbers require a graded module presentation over a graded ring",
            ));
        }
        let mut out = Vec::new();
        for ds in &self.degs {
            let mut sorted = ds.clone();
            sorted.sort_unstable();
            let mut row: Vec<(i64, usize)> = Vec::new();
            for d in sorted {
                match row.last_mut() {
                    Some((dd, c)) if *dd == d => *c += 1,
                    _ => row.push((d, 1)),
                }
            }
            out.push(row);
        }
        Ok(out)
    }
}

pub fn default_resolution_cap(ring: &Ring) -> usize {
    2 * ring.nvars() + 2
}

/// Resolve `m` by free modules, computing at most `cap` differentials.
pub fn free_resolution(m: &FpModule, cap: usize) -> Result<Resolution> {
    let ring = m.ring.clone();
    if m.is_zero_module() {
        return Ok(Resolution {
            ring,
            degs: vec![Vec::new()],
            diffs: Vec::new(),
            complete: true,
            graded: m.graded,
        });
    }
    let base = if m.graded {
        m.minimize()?
    } else {
        // Canonical ungraded start: reduced relation basis modulo the
        // defining ideal.
        let rels: Vec<ModVec> = m
            .rel_gb()
            .iter()
            .map(|v| ModVec { coords: v.coords.iter().map(|p| m.ring.reduce(p)).collect() })
            .filter(|v| !v.is_zero())
            .collect();
        FpModule::new(&m.ring, m.gen_degs.clone(), rels)?
    };
    let graded = base.graded;
    let mut degs: Vec<Vec<i64>> = vec![base.gen_degs.clone()];
    let mut diffs: Vec<Vec<ModVec>> = Vec::new();
    let mut complete = false;
    let mut cur: Vec<ModVec> = base.rels.clone();
    loop {
        if cur.is_empty() {
            complete = true;
            break;
        }
        let prev_shifts = degs.last().unwrap().clone();
        let col_degs: Vec<i64> = if graded {
            cur.iter().map(|c| c.homogeneous_degree(&prev_shifts).unwrap()).collect()
        } else {
            vec![0; cur.len()]
        };
        diffs.push(cur.clone());
        degs.push(col_degs.clone());
        if degs.len() - 1 >= cap {
            break;
        }
        let rank = prev_shifts.len();
        let syz = preimage_gens(&cur, &ideal_block(&ring, rank), &ring)?;
        let syz: Vec<ModVec> = syz
            .into_iter()
            .map(|v| ModVec { coords: v.coords.iter().map(|p| ring.reduce(p)).collect() })
            .filter(|v| !v.is_zero())
            .collect();
        let next = if graded {
            minimal_generators(&ring, &syz, &col_degs)?
        } else {
            syz
        };
        cur = next;
    }
    Ok(Resolution { ring, degs, diffs, complete, graded })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldKind;
    use crate::monomial::MonomialOrder;
    use crate::poly::Poly;
    use crate::ring::{Ring, RingData};

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
    fn koszul_resolution_of_residue_field() {
        // Q[x, y]: the residue field resolves as 0 -> R(-2) -> R(-1)^2 -> R.
        let r = qq_xy();
        let k = FpModule::cyclic(&r, &[r.var_poly(0), r.var_poly(1)]).unwrap();
        let res = free_resolution(&k, 10).unwrap();
        assert!(res.complete);
        assert_eq!(res.pd(), Pd::Finite(2));
        assert_eq!(res.degs, vec![vec![0], vec![1, 1], vec![2]]);
        let b = res.betti().unwrap();
        assert_eq!(b[0], vec![(0, 1)]);
        assert_eq!(b[1], vec![(1, 2)]);
        assert_eq!(b[2], vec![(2, 1)]);
        // The first syzygy module of k is the maximal ideal.
        let omega1 = res.syzygy_module(1).unwrap();
        assert_eq!(omega1.ngens(), 2);
        assert!(res.syzygy_module(3).unwrap().is_zero_module());
    }

    #[test]
    fn free_module_resolves_instantly() {
        let r = qq_xy();
        let f = FpModule::free(&r, vec![0, -1]);
        let res = free_resolution(&f, 10).unwrap();
        assert_eq!(res.pd(), Pd::Finite(0));
        assert!(res.complete);
    }

    #[test]
    fn zero_module_pd() {
        let r = qq_xy();
        let z = FpModule::zero_module(&r);
        let res = free_resolution(&z, 10).unwrap();
        assert_eq!(res.pd(), Pd::ZeroModule);
        assert_eq!(format!("{}", res.pd()), "-infinity");
    }

    #[test]
    fn infinite_resolution_hits_cap() {
        // R = Q[x]/(x^2): the residue field has x, x, x, ... forever.
        let ord = MonomialOrder::degrevlex(1);
        let kq = FieldKind::Rational;
        let x = Poly::var(1, 0, kq);
        let x2 = x.mul(&x, &ord);
        let r = RingData::new(kq, vec!["x".into()], ord, vec![x2], false).unwrap();
        let k = FpModule::cyclic(&r, &[r.var_poly(0)]).unwrap();
        let res = free_resolution(&k, 4).unwrap();
        assert!(!res.complete);
        assert_eq!(res.pd(), Pd::AtLeast(4));
        for i in 0..4 {
            assert_eq!(res.rank(i), 1);
        }
        assert_eq!(res.degs[3], vec![3]);
    }

    #[test]
    fn principal_nonhomogeneous_relation() {
        // M = R/(y - x^2) over Q[x, y]: ungraded, pd 1.
        let r = qq_xy();
        let ord = r.order.clone();
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let f = y.sub(&x.mul(&x, &ord), &ord);
        let m = FpModule::cyclic(&r, &[f]).unwrap();
        assert!(!m.graded);
        let res = free_resolution(&m, 10).unwrap();
        assert!(res.complete);
        assert_eq!(res.pd(), Pd::Finite(1));
        assert!(!res.graded);
        assert!(res.betti().is_err());
    }
}
