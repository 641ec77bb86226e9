//! Cohen–Macaulay predicates for graded modules, the translation between
//! Cohen–Macaulayness of R/p and the equality of projective dimension with
//! height over regular ambient rings, intersection multiplicities with
//! their dimension/vanishing/positivity checks, and probe reports for
//! user-supplied maximal Cohen–Macaulay candidates attached to a prime.

use std::sync::Arc;

use crate::classify::{same_class_check, ClassifyCtx, SameClassReport};
use crate::error::{Error, Result};
use crate::fpmod::FpModule;
use crate::homology::{tensor_product, tor_module};
use crate::ideal::Ideal;
use crate::invariants::{depth_at_variables, Depth};
use crate::resolution::{free_resolution, Pd};
use crate::ring::Prime;
use crate::support::associated_in_window;

/// Depth and dimension of a nonzero graded module, evaluated graded-locally
/// (depth against the ideal of all variables).
#[derive(Clone, Debug)]
pub struct CmReport {
    pub depth: usize,
    pub dimension: usize,
    pub cohen_macaulay: bool,
}

pub fn cm_report(m: &FpModule, cap: usize) -> Result<CmReport> {
    if m.is_zero_module() {
        return Err(Error::input(
            "the Cohen-Macaulay predicate is undefined for the zero module",
        ));
    }
    m.ring.require_graded("the Cohen-Macaulay predicate")?;
    m.require_graded("the Cohen-Macaulay predicate")?;
    let depth = match depth_at_variables(m, cap)? {
        Depth::Finite(d) => d,
        Depth::LocallyZero => {
            return Err(Error::internal(
                "a nonzero graded module vanished at the ideal of variables",
            ))
        }
    };
    let dim = m.dimension()?;
    if dim < 0 {
        return Err(Error::internal("nonzero module reported empty support"));
    }
    Ok(CmReport {
        depth,
        dimension: dim as usize,
        cohen_macaulay: depth == dim as usize,
    })
}

pub fn is_cohen_macaulay(m: &FpModule, cap: usize) -> Result<bool> {
    Ok(cm_report(m, cap)?.cohen_macaulay)
}

/// Comparison of pd(R/p) with the height of p over a regular ambient ring:
/// the inequality pd >= ht always holds, with equality exactly when R/p is
/// Cohen-Macaulay.
#[derive(Clone, Debug)]
pub struct CmTranslation {
    pub pd: usize,
    pub height: i64,
    pub residue: CmReport,
    /// pd(R/p) >= ht p.
    pub inequality_holds: bool,
    /// pd(R/p) = ht p if and only if R/p is Cohen-Macaulay.
    pub equality_iff_cm: bool,
}

pub fn cm_translate_check(p: &Prime, cap: usize) -> Result<CmTranslation> {
    if !p.ring.quotient.is_zero() {
        return Err(Error::input(
            "the projective-dimension/height translation needs a regular ambient ring (no quotient relations)",
        ));
    }
    let rp = FpModule::cyclic(&p.ring, p.ideal.gb())?;
    if rp.is_zero_module() {
        return Err(Error::input("the residue ring of the prime is zero"));
    }
    let pd = match free_resolution(&rp, cap.max(p.ring.nvars() + 1))?.pd() {
        Pd::Finite(d) => d,
        Pd::ZeroModule => unreachable!("nonzero module"),
        Pd::AtLeast(d) => {
            return Err(Error::internal(format!(
                "resolution over a regular ambient ring did not terminate within {d} steps"
            )))
        }
    };
    let residue = cm_report(&rp, cap)?;
    let inequality_holds = pd as i64 >= p.height;
    let equality_iff_cm = (pd as i64 == p.height) == residue.cohen_macaulay;
    if !inequality_holds {
        return Err(Error::internal(format!(
            "pd(R/p) = {pd} fell below the height {} of p = {}",
            p.height,
            p.describe()
        )));
    }
    Ok(CmTranslation {
        pd,
        height: p.height,
        residue,
        inequality_holds,
        equality_iff_cm,
    })
}

/// An intersection multiplicity: the alternating sum of the lengths of the
/// Tor modules of a pair with finite-length tensor product over a regular
/// ambient ring.
#[derive(Clone, Debug)]
pub struct ChiReport {
    /// lengths[i] = length of Tor_i(M, N), for i = 0 ..= dim R.
    pub lengths: Vec<usize>,
    pub value: i64,
}

pub fn chi(m: &FpModule, n: &FpModule, cap: usize) -> Result<ChiReport> {
    if !Arc::ptr_eq(&m.ring, &n.ring) {
        return Err(Error::input("both modules must live over the same ring"));
    }
    let ring = &m.ring;
    if !ring.quotient.is_zero() {
        return Err(Error::input(
            "the intersection multiplicity is defined over a regular ambient ring (no quotient relations)",
        ));
    }
    ring.require_graded("the intersection multiplicity")?;
    m.require_graded("the intersection multiplicity")?;
    n.require_graded("the intersection multiplicity")?;
    let t = tensor_product(m, n)?;
    if t.dimension()? > 0 {
        return Err(Error::input(
            "χ undefined: the tensor product of the modules does not have finite length",
        ));
    }
    let top = ring.dim.max(0) as usize;
    let mut lengths = Vec::with_capacity(top + 1);
    let mut value = 0i64;
    for i in 0..=top {
        let len = tor_module(i, m, n, cap.max(top + 1))?.length()?;
        lengths.push(len);
        let signed = len as i64;
        value += if i % 2 == 0 { signed } else { -signed };
    }
    Ok(ChiReport { lengths, value })
}

/// Dimension, vanishing, and positivity checks for an intersection
/// multiplicity: dim M + dim N <= dim R must hold; strict inequality must
/// force χ = 0; equality must come with χ > 0.
#[derive(Clone, Debug)]
pub struct SerreReport {
    pub dim_m: i64,
    pub dim_n: i64,
    pub dim_ring: i64,
    pub chi: ChiReport,
    pub dimension_inequality: bool,
    pub vanishing_ok: bool,
    pub positivity_ok: bool,
}

impl SerreReport {
    pub fn passed(&self) -> bool {
        self.dimension_inequality && self.vanishing_ok && self.positivity_ok
    }

    /// Which of the two regimes the pair falls into.
    pub fn case_label(&self) -> &'static str {
        if self.dim_m + self.dim_n < self.dim_ring {
            "vanishing"
        } else {
            "positivity"
        }
    }
}

pub fn serre_check(m: &FpModule, n: &FpModule, cap: usize) -> Result<SerreReport> {
    let chi = chi(m, n, cap)?;
    let dim_m = m.dimension()?;
    let dim_n = n.dimension()?;
    let dim_ring = m.ring.dim;
    let dimension_inequality = dim_m + dim_n <= dim_ring;
    let vanishing_ok = dim_m + dim_n >= dim_ring || chi.value == 0;
    let positivity_ok = dim_m + dim_n != dim_ring || chi.value > 0;
    Ok(SerreReport {
        dim_m,
        dim_n,
        dim_ring,
        chi,
        dimension_inequality,
        vanishing_ok,
        positivity_ok,
    })
}

/// Verification report for a user-supplied candidate K for the
/// Cohen-Macaulay module attached to a window prime p: K must be killed by
/// p, have projective dimension equal to the height of p, have p as its
/// only associated prime in the window, and be Cohen-Macaulay. When all of
/// that holds, the Ext-orthogonality class of {K} is compared with that of
/// the canonically constructed generator module of p over a module suite.
#[derive(Clone, Debug)]
pub struct HochsterReport {
    pub prime: usize,
    pub height: i64,
    pub pd: usize,
    pub pd_matches_height: bool,
    /// Window indexes of the associated primes of K.
    pub ass_indices: Vec<usize>,
    pub ass_is_exactly_p: bool,
    pub candidate: CmReport,
    /// Present when the three structural checks pass.
    pub class_comparison: Option<SameClassReport>,
}

impl HochsterReport {
    pub fn structural_pass(&self) -> bool {
        self.pd_matches_height && self.ass_is_exactly_p && self.candidate.cohen_macaulay
    }
}

pub fn hochster_probe(
    ctx: &ClassifyCtx,
    pi: usize,
    k: &FpModule,
    suite: &[FpModule],
) -> Result<HochsterReport> {
    let p = ctx.prime(pi).clone();
    if !Arc::ptr_eq(&k.ring, &ctx.window.ring) {
        return Err(Error::input("candidate module and window live over different rings"));
    }
    if k.is_zero_module() {
        return Err(Error::input("the candidate module is zero"));
    }
    let ann = Ideal::new(k.annihilator()?, k.ring.order.clone());
    if !ann.contains_ideal(&p.ideal) {
        return Err(Error::input(format!(
            "the hypothesis p·K = 0 fails: the annihilator of the candidate does not contain p = {}",
            p.describe()
        )));
    }
    let pd = match free_resolution(k, ctx.cap)?.pd() {
        Pd::Finite(d) => d,
        Pd::ZeroModule => unreachable!("nonzero module"),
        Pd::AtLeast(d) => {
            return Err(Error::budget(format!(
                "projective dimension of the candidate not resolved within {d} steps; raise the resolution cap"
            )))
        }
    };
    let ass_indices = associated_in_window(k, &ctx.window, ctx.cap)?;
    let candidate = cm_report(k, ctx.cap)?;
    let pd_matches_height = pd as i64 == p.height;
    let ass_is_exactly_p = ass_indices == vec![pi];
    let report_base = |class_comparison| HochsterReport {
        prime: pi,
        height: p.height,
        pd,
        pd_matches_height,
        ass_indices: ass_indices.clone(),
        ass_is_exactly_p,
        candidate: candidate.clone(),
        class_comparison,
    };
    if !(pd_matches_height && ass_is_exactly_p && candidate.cohen_macaulay) {
        return Ok(report_base(None));
    }
    let l = ctx.generator_module(pi)?;
    let comparison = same_class_check(ctx, &[l], &[k.clone()], suite)?;
    Ok(report_base(Some(comparison)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldKind;
    use crate::monomial::MonomialOrder;
    use crate::poly::Poly;
    use crate::resolution::default_resolution_cap;
    use crate::ring::{PrimeData, Ring, RingData, WindowData};

    fn qxy() -> Ring {
        RingData::new(
            FieldKind::Rational,
            vec!["x".into(), "y".into()],
            MonomialOrder::degrevlex(2),
            Vec::new(),
            true,
        )
        .unwrap()
    }

    fn qxyz() -> Ring {
        RingData::new(
            FieldKind::Rational,
            vec!["x".into(), "y".into(), "z".into()],
            MonomialOrder::degrevlex(3),
            Vec::new(),
            true,
        )
        .unwrap()
    }

    #[test]
    fn cohen_macaulay_predicate_on_standard_examples() {
        let r = qxy();
        let cap = default_resolution_cap(&r);
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let rx = FpModule::cyclic(&r, &[x.clone()]).unwrap();
        assert!(is_cohen_macaulay(&rx, cap).unwrap());
        let k = FpModule::cyclic(&r, &[x.clone(), y.clone()]).unwrap();
        assert!(is_cohen_macaulay(&k, cap).unwrap());
        assert!(is_cohen_macaulay(&FpModule::ring_module(&r), cap).unwrap());
        // Depth 0 (x is killed by the maximal ideal) but dimension 1.
        let bad = FpModule::cyclic(&r, &[x.mul(&x, &r.order), x.mul(&y, &r.order)]).unwrap();
        let rep = cm_report(&bad, cap).unwrap();
        assert_eq!((rep.depth, rep.dimension), (0, 1));
        assert!(!rep.cohen_macaulay);
        assert!(cm_report(&FpModule::zero_module(&r), cap).is_err());
    }

    #[test]
    fn translation_between_pd_and_height_for_monomial_primes() {
        for (r, nv) in [(qxy(), 2usize), (qxyz(), 3usize)] {
            let cap = default_resolution_cap(&r);
            for mask in 1u32..(1 << nv) {
                let gens: Vec<Poly> =
                    (0..nv).filter(|&i| mask >> i & 1 == 1).map(|i| r.var_poly(i)).collect();
                let expected_ht = gens.len() as i64;
                let p = PrimeData::declare(&r, gens, false, None).unwrap();
                assert_eq!(p.height, expected_ht);
                let t = cm_translate_check(&p, cap).unwrap();
                assert_eq!(t.pd as i64, t.height, "variables {mask:b}");
                assert!(t.residue.cohen_macaulay);
                assert!(t.inequality_holds && t.equality_iff_cm);
            }
        }
    }

    #[test]
    fn translation_requires_a_regular_ambient_ring() {
        let x = Poly::var(2, 0, FieldKind::Rational);
        let ord = MonomialOrder::degrevlex(2);
        let xx = x.mul(&x, &ord);
        let r = RingData::new(
            FieldKind::Rational,
            vec!["x".into(), "y".into()],
            ord,
            vec![xx],
            false,
        )
        .unwrap();
        let p = PrimeData::declare(&r, vec![r.var_poly(0)], false, None).unwrap();
        let err = cm_translate_check(&p, default_resolution_cap(&r)).unwrap_err();
        assert!(err.to_string().contains("regular ambient"), "{err}");
    }

    #[test]
    fn intersection_multiplicity_desk_values() {
        let r = qxy();
        let cap = default_resolution_cap(&r);
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let rx = FpModule::cyclic(&r, &[x.clone()]).unwrap();
        let ry = FpModule::cyclic(&r, &[y.clone()]).unwrap();
        let k = FpModule::cyclic(&r, &[x.clone(), y.clone()]).unwrap();

        // Transverse lines meet once: Tor_0 = k, higher Tor vanish.
        let a = chi(&rx, &ry, cap).unwrap();
        assert_eq!(a.value, 1);
        assert_eq!(a.lengths, vec![1, 0, 0]);

        // Tor of k against R/(x) from the length-1 resolution by x.
        let b = chi(&k, &rx, cap).unwrap();
        assert_eq!(b.value, 0);
        assert_eq!(b.lengths, vec![1, 1, 0]);

        // Koszul self-intersection of the origin: lengths 1, 2, 1.
        let c = chi(&k, &k, cap).unwrap();
        assert_eq!(c.lengths, vec![1, 2, 1]);
        assert_eq!(c.value, 0);

        // Self-intersection of a line is not finite length.
        let err = chi(&rx, &rx, cap).unwrap_err();
        assert!(err.to_string().contains("χ undefined"), "{err}");
    }

    #[test]
    fn intersection_multiplicity_is_additive_on_direct_sums() {
        let r = qxy();
        let cap = default_resolution_cap(&r);
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let rx = FpModule::cyclic(&r, &[x.clone()]).unwrap();
        let ry = FpModule::cyclic(&r, &[y.clone()]).unwrap();
        let k = FpModule::cyclic(&r, &[x.clone(), y.clone()]).unwrap();
        let kx2 = FpModule::cyclic(&r, &[x.mul(&x, &r.order), y.clone()]).unwrap();
        let pairs: Vec<(FpModule, FpModule, FpModule)> = vec![
            (rx.clone(), k.clone(), ry.clone()),
            (k.clone(), kx2.clone(), ry.clone()),
            (kx2.clone(), kx2.clone(), rx.clone()),
        ];
        for (a, b, n) in pairs {
            let sum = a.direct_sum(&b).unwrap();
            let lhs = chi(&sum, &n, cap).unwrap().value;
            let rhs = chi(&a, &n, cap).unwrap().value + chi(&b, &n, cap).unwrap().value;
            assert_eq!(lhs, rhs);
            // Symmetric in the other variable.
            let lhs2 = chi(&n, &sum, cap).unwrap().value;
            assert_eq!(lhs2, rhs);
        }
    }

    #[test]
    fn dimension_vanishing_and_positivity_flags() {
        let r = qxy();
        let cap = default_resolution_cap(&r);
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let rx = FpModule::cyclic(&r, &[x.clone()]).unwrap();
        let ry = FpModule::cyclic(&r, &[y.clone()]).unwrap();
        let k = FpModule::cyclic(&r, &[x, y]).unwrap();

        let pos = serre_check(&rx, &ry, cap).unwrap();
        assert!(pos.passed());
        assert_eq!(pos.case_label(), "positivity");
        assert_eq!(pos.chi.value, 1);

        let van = serre_check(&k, &rx, cap).unwrap();
        assert!(van.passed());
        assert_eq!(van.case_label(), "vanishing");
        assert_eq!(van.chi.value, 0);

        let van2 = serre_check(&k, &k, cap).unwrap();
        assert!(van2.passed());
        assert_eq!(van2.case_label(), "vanishing");
        assert_eq!(van2.chi.value, 0);
    }

    #[test]
    fn positivity_on_transverse_monomial_primes_in_three_variables() {
        let r = qxyz();
        let cap = default_resolution_cap(&r);
        // Complementary variable subsets meet transversally in dimension 0.
        for mask in 1u32..(1 << 3) - 1 {
            let a: Vec<Poly> = (0..3).filter(|&i| mask >> i & 1 == 1).map(|i| r.var_poly(i)).collect();
            let b: Vec<Poly> = (0..3).filter(|&i| mask >> i & 1 == 0).map(|i| r.var_poly(i)).collect();
            let ma = FpModule::cyclic(&r, &a).unwrap();
            let mb = FpModule::cyclic(&r, &b).unwrap();
            let rep = serre_check(&ma, &mb, cap).unwrap();
            assert!(rep.passed(), "mask {mask:b}");
            assert_eq!(rep.case_label(), "positivity");
            assert_eq!(rep.chi.value, 1, "transverse planes/lines meet simply");
            assert!(rep.chi.value >= 0);
        }
    }

    #[test]
    fn probe_accepts_the_residue_ring_of_its_prime() {
        let r = qxy();
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let w = WindowData::new(
            &r,
            vec![
                PrimeData::declare(&r, vec![x.clone()], false, None).unwrap(),
                PrimeData::declare(&r, vec![x.clone(), y.clone()], false, None).unwrap(),
            ],
        )
        .unwrap();
        let ctx = ClassifyCtx::new(&w, default_resolution_cap(&r));
        let suite = vec![
            FpModule::ring_module(&r),
            FpModule::cyclic(&r, &[x.clone()]).unwrap(),
            FpModule::cyclic(&r, &[y.clone()]).unwrap(),
            FpModule::cyclic(&r, &[x.clone(), y.clone()]).unwrap(),
        ];
        let rx = FpModule::cyclic(&r, &[x.clone()]).unwrap();
        let rep = hochster_probe(&ctx, 0, &rx, &suite).unwrap();
        assert!(rep.structural_pass());
        assert_eq!(rep.pd, 1);
        let cmp = rep.class_comparison.expect("comparison runs after the checks");
        assert!(cmp.agree(), "{:?}", cmp.mismatches);

        let k = FpModule::cyclic(&r, &[x.clone(), y.clone()]).unwrap();
        let rep = hochster_probe(&ctx, 1, &k, &suite).unwrap();
        assert!(rep.structural_pass());
        assert_eq!(rep.pd, 2);
        assert!(rep.class_comparison.unwrap().agree());

        // R/(x^2) is not killed by (x): hypothesis failure is an error.
        let xx = x.mul(&x, &r.order);
        let bad = FpModule::cyclic(&r, &[xx]).unwrap();
        let err = hochster_probe(&ctx, 0, &bad, &suite).unwrap_err();
        assert!(err.to_string().contains("p·K = 0"), "{err}");
    }

    #[test]
    fn probe_reports_structural_failures_without_class_comparison() {
        let r = qxy();
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        let w = WindowData::new(
            &r,
            vec![
                PrimeData::declare(&r, vec![x.clone()], false, None).unwrap(),
                PrimeData::declare(&r, vec![x.clone(), y.clone()], false, None).unwrap(),
            ],
        )
        .unwrap();
        let ctx = ClassifyCtx::new(&w, default_resolution_cap(&r));
        // R/(x) ⊕ k has annihilator (x) ∩ (x,y) = (x), so p = (x) kills
        // it, but both window primes are associated to it.
        let rx = FpModule::cyclic(&r, &[x.clone()]).unwrap();
        let k = FpModule::cyclic(&r, &[x.clone(), y.clone()]).unwrap();
        let sum = rx.direct_sum(&k).unwrap();
        let rep = hochster_probe(&ctx, 0, &sum, &[]).unwrap();
        assert!(!rep.structural_pass());
        assert!(!rep.ass_is_exactly_p);
        assert_eq!(rep.ass_indices, vec![0, 1]);
        assert!(rep.class_comparison.is_none());
    }
}
