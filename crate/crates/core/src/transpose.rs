//! Syzygy modules, the dual-presentation transpose of a finitely presented
//! module, the prime-attached generator modules built by transposing a
//! syzygy of R/p, and functor-level cross-checks comparing Ext against Tor
//! through that transpose.

use crate::error::{Error, Result};
use crate::fpmod::FpModule;
use crate::gb::ModVec;
use crate::homology::{ext_module, tor_module};
use crate::poly::Poly;
use crate::resolution::free_resolution;
use crate::ring::PrimeData;

/// How the presentation feeding a transpose was chosen. A transpose is only
/// well defined up to free direct summands; fixing the minimal graded
/// presentation removes that ambiguity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Minimality {
    /// Built from the minimal graded presentation: a canonical
    /// representative with no stray free summands.
    Canonical,
    /// Built from the reduced relation basis of a non-graded presentation:
    /// correct up to free direct summands.
    UpToProjectives,
}

impl Minimality {
    pub fn label(self) -> &'static str {
        match self {
            Minimality::Canonical => "canonical",
            Minimality::UpToProjectives => "up-to-projectives",
        }
    }
}

/// A transpose together with the presentation it was computed from.
#[derive(Clone, Debug)]
pub struct TransposeResult {
    pub module: FpModule,
    pub minimality: Minimality,
    /// Generator degrees of the free cover in the source presentation.
    pub source_gen_degs: Vec<i64>,
    /// Relation columns of the source presentation.
    pub source_rels: Vec<ModVec>,
}

/// The i-th syzygy of `m` in its computed free resolution (minimal in the
/// graded case). `cap` bounds the number of differentials but is raised
/// internally so that the syzygy's own relations are available.
pub fn syzygy_module(m: &FpModule, i: usize, cap: usize) -> Result<FpModule> {
    let res = free_resolution(m, cap.max(i + 1))?;
    res.syzygy_module(i)
}

/// The cokernel of the dualized presentation map: from F_1 -> F_0 -> M -> 0
/// build coker(F_0^* -> F_1^*). Generators correspond to the relations of
/// `m`; relation columns correspond to the generators of `m`. In the graded
/// case the minimal presentation is used and a generator of degree b in F_1
/// dualizes to a generator of degree -b.
pub fn transpose(m: &FpModule) -> Result<TransposeResult> {
    let ring = m.ring.clone();
    if m.is_zero_module() {
        return Ok(TransposeResult {
            module: FpModule::zero_module(&ring),
            minimality: if m.graded { Minimality::Canonical } else { Minimality::UpToProjectives },
            source_gen_degs: Vec::new(),
            source_rels: Vec::new(),
        });
    }
    let (base, minimality) = if m.graded {
        (m.minimize()?, Minimality::Canonical)
    } else {
        let rels: Vec<ModVec> = m
            .rel_gb()
            .iter()
            .map(|v| ModVec { coords: v.coords.iter().map(|p| ring.reduce(p)).collect() })
            .filter(|v| !v.is_zero())
            .collect();
        (FpModule::new(&ring, m.gen_degs.clone(), rels)?, Minimality::UpToProjectives)
    };
    let g = base.ngens();
    let rels = base.rels.clone();
    let mcount = rels.len();
    let tr_degs: Vec<i64> = if base.graded {
        rels.iter()
            .map(|r| {
                r.homogeneous_degree(&base.gen_degs).map(|d| -d).ok_or_else(|| {
                    Error::internal("a graded presentation produced an inhomogeneous relation")
                })
            })
            .collect::<Result<Vec<i64>>>()?
    } else {
        vec![0; mcount]
    };
    let mut tr_rels = Vec::with_capacity(g);
    for t in 0..g {
        let coords: Vec<Poly> = rels.iter().map(|r| r.coords[t].clone()).collect();
        tr_rels.push(ModVec { coords });
    }
    let module = FpModule::new(&ring, tr_degs, tr_rels)?;
    Ok(TransposeResult {
        module,
        minimality,
        source_gen_degs: base.gen_degs.clone(),
        source_rels: rels,
    })
}

/// Transpose of the n-th syzygy of `u`: the projective-dimension-(n+1)
/// companion module that converts Ext^n(u, -) into Tor_1(-, -) and
/// Tor_n(-, u) into Ext^1(-, -) whenever Ext^i(u, R) = 0 for i = 0..=n.
pub fn transpose_of_syzygy(u: &FpModule, n: usize, cap: usize) -> Result<FpModule> {
    let omega = syzygy_module(u, n, cap)?;
    Ok(transpose(&omega)?.module)
}

/// Check the vanishing hypothesis Ext^i_R(u, R) = 0 for all i = 0, 1, ..., n.
/// Returns the first index where it fails.
pub fn ext_vanishing_defect(u: &FpModule, n: usize, cap: usize) -> Result<Option<usize>> {
    let free = FpModule::ring_module(&u.ring);
    for i in 0..=n {
        let e = ext_module(i, u, &free, cap)?;
        if !e.is_zero_module() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// The generator module attached to a prime p of height k >= 1: the
/// transpose of the (k-1)-st syzygy of R/p. Requires the vanishing
/// hypothesis Ext^i_R(R/p, R) = 0 for all i = 0, 1, ..., k-1 (automatic over
/// Gorenstein rings); the projective dimension of the result is verified to
/// equal the height in the graded case.
pub fn lp_module(p: &PrimeData, cap: usize) -> Result<FpModule> {
    let ring = p.ring.clone();
    let ht = p.height;
    if ht < 1 {
        return Err(Error::input(format!(
            "the generator module L(p) is defined only for primes of height at least 1; {} has height {ht}",
            p.describe()
        )));
    }
    let n = (ht - 1) as usize;
    let u = FpModule::cyclic(&ring, p.ideal.gb())?;
    if let Some(i) = ext_vanishing_defect(&u, n, cap)? {
        return Err(Error::input(format!(
            "the vanishing hypothesis Ext^i_R(U, R) = 0 for all i = 0, 1, ..., {n} fails for U = R/p at i = {i} (p = {}); L(p) is not defined here",
            p.describe()
        )));
    }
    let l = transpose_of_syzygy(&u, n, cap)?;
    if ring.graded {
        let pd = free_resolution(&l, cap.max(n + 2))?.pd();
        if pd != crate::resolution::Pd::Finite(ht as usize) {
            return Err(Error::internal(format!(
                "the transpose of the syzygy violates its projective-dimension formula: expected {}, computed {pd}",
                ht
            )));
        }
    }
    Ok(l)
}

/// One degreewise disagreement between two graded Hilbert functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertMismatch {
    pub degree: i64,
    pub left: usize,
    pub right: usize,
}

/// Degreewise comparison of the Hilbert functions of two graded modules over
/// the window [lowest generator degree, highest presentation degree + pad].
/// An empty result certifies agreement on that window only.
pub fn hilbert_mismatches(a: &FpModule, b: &FpModule, pad: i64) -> Result<Vec<HilbertMismatch>> {
    let am = if a.graded { a.minimize()? } else { a.clone() };
    let bm = if b.graded { b.minimize()? } else { b.clone() };
    if am.is_zero_module() && bm.is_zero_module() {
        return Ok(Vec::new());
    }
    am.require_graded("Hilbert-function comparison")?;
    bm.require_graded("Hilbert-function comparison")?;
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for m in [&am, &bm] {
        for &d in &m.gen_degs {
            lo = lo.min(d);
            hi = hi.max(d);
        }
        for r in &m.rels {
            if let Some(d) = r.homogeneous_degree(&m.gen_degs) {
                hi = hi.max(d);
            }
        }
    }
    let mut out = Vec::new();
    for t in lo..=hi + pad {
        let left = am.hilbert_function(t)?;
        let right = bm.hilbert_function(t)?;
        if left != right {
            out.push(HilbertMismatch { degree: t, left, right });
        }
    }
    Ok(out)
}

/// Proxy isomorphism check for graded finitely presented modules: equality
/// of graded Betti tables together with degreewise Hilbert agreement up to a
/// pad beyond the largest presentation degree. Sound for distinguishing
/// modules; agreement is reported as "Betti/Hilbert-equal", not as a general
/// isomorphism certificate.
#[derive(Clone, Debug)]
pub struct IsoProxyReport {
    pub betti_equal: bool,
    pub betti_left: Vec<Vec<(i64, usize)>>,
    pub betti_right: Vec<Vec<(i64, usize)>>,
    pub hilbert_mismatches: Vec<HilbertMismatch>,
}

impl IsoProxyReport {
    pub fn equal(&self) -> bool {
        self.betti_equal && self.hilbert_mismatches.is_empty()
    }
}

pub fn betti_hilbert_check(a: &FpModule, b: &FpModule, pad: i64, cap: usize) -> Result<IsoProxyReport> {
    let ra = free_resolution(a, cap)?;
    let rb = free_resolution(b, cap)?;
    let betti_left = ra.betti()?;
    let betti_right = rb.betti()?;
    let betti_equal = betti_left == betti_right;
    let hilbert_mismatches = hilbert_mismatches(a, b, pad)?;
    Ok(IsoProxyReport { betti_equal, betti_left, betti_right, hilbert_mismatches })
}

/// Hilbert-function comparison of the two functor pairs attached to the
/// transpose of the n-th syzygy of `u`, evaluated on one test module.
#[derive(Clone, Debug)]
pub struct FunctorIsoEntry {
    pub suite_index: usize,
    /// Ext^n(u, M) versus Tor_1(transpose of the n-th syzygy of u, M).
    pub ext_side: Vec<HilbertMismatch>,
    /// Ext^1(transpose of the n-th syzygy of u, M) versus Tor_n(M, u).
    pub tor_side: Vec<HilbertMismatch>,
}

impl FunctorIsoEntry {
    pub fn equal(&self) -> bool {
        self.ext_side.is_empty() && self.tor_side.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct FunctorIsoReport {
    pub n: usize,
    pub entries: Vec<FunctorIsoEntry>,
}

impl FunctorIsoReport {
    pub fn all_equal(&self) -> bool {
        self.entries.iter().all(|e| e.equal())
    }
}

/// Verify on a suite of graded modules that Ext^n(u, -) matches
/// Tor_1(T, -) and that Ext^1(T, -) matches Tor_n(-, u) degreewise, where T
/// is the transpose of the n-th syzygy of `u`. Requires the vanishing
/// hypothesis Ext^i_R(u, R) = 0 for all i = 0, 1, ..., n.
pub fn functor_iso_check(
    u: &FpModule,
    n: usize,
    suite: &[FpModule],
    pad: i64,
    cap: usize,
) -> Result<FunctorIsoReport> {
    u.ring.require_graded("the functor comparison (it compares Hilbert functions)")?;
    if u.is_zero_module() {
        return Err(Error::input(
            "the functor comparison needs a nonzero module in its first argument",
        ));
    }
    if let Some(i) = ext_vanishing_defect(u, n, cap)? {
        return Err(Error::input(format!(
            "the vanishing hypothesis Ext^i_R(U, R) = 0 for all i = 0, 1, ..., {n} fails at i = {i}; the functor comparison does not apply",
        )));
    }
    let t = transpose_of_syzygy(u, n, cap)?;
    let mut entries = Vec::new();
    for (k, m) in suite.iter().enumerate() {
        let ext_n = ext_module(n, u, m, cap)?;
        let tor_1 = tor_module(1, &t, m, cap)?;
        let ext_side = hilbert_mismatches(&ext_n, &tor_1, pad)?;
        let ext_1 = ext_module(1, &t, m, cap)?;
        // Tor is symmetric in its arguments; resolving u (or t) once is the
        // economical direction.
        let tor_n = tor_module(n, u, m, cap)?;
        let tor_side = hilbert_mismatches(&ext_1, &tor_n, pad)?;
        entries.push(FunctorIsoEntry { suite_index: k, ext_side, tor_side });
    }
    Ok(FunctorIsoReport { n, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldKind;
    use crate::fpmod::FpModule;
    use crate::monomial::MonomialOrder;
    use crate::poly::Poly;
    use crate::resolution::{default_resolution_cap, Pd};
    use crate::ring::{PrimeData, RingData};

    fn qxy() -> crate::ring::Ring {
        RingData::new(
            FieldKind::Rational,
            vec!["x".into(), "y".into()],
            MonomialOrder::degrevlex(2),
            Vec::new(),
            false,
        )
        .unwrap()
    }

    fn var(ring: &crate::ring::Ring, i: usize) -> Poly {
        ring.var_poly(i)
    }

    #[test]
    fn transpose_of_hypersurface_quotient_is_itself() {
        let r = qxy();
        let m = FpModule::cyclic(&r, &[var(&r, 0)]).unwrap();
        let tr = transpose(&m).unwrap();
        assert_eq!(tr.minimality, Minimality::Canonical);
        // R/(x) is presented by the 1x1 matrix [x]; its dual is [x] again,
        // so the transpose has one generator in degree -1 and relation x.
        assert_eq!(tr.module.ngens(), 1);
        assert_eq!(tr.module.gen_degs, vec![-1]);
        let chk = betti_hilbert_check(&m, &tr.module.twist(-1), 6, 6).unwrap();
        assert!(chk.equal(), "transpose should match the module itself after shift");
    }

    #[test]
    fn transpose_of_free_and_zero_modules_vanishes() {
        let r = qxy();
        let free = FpModule::free(&r, vec![0, -2]);
        assert!(transpose(&free).unwrap().module.is_zero_module());
        let zero = FpModule::zero_module(&r);
        assert!(transpose(&zero).unwrap().module.is_zero_module());
    }

    #[test]
    fn transpose_of_koszul_syzygy_is_residue_field() {
        let r = qxy();
        let k = FpModule::cyclic(&r, &[var(&r, 0), var(&r, 1)]).unwrap();
        let omega1 = syzygy_module(&k, 1, 6).unwrap();
        let tr = transpose(&omega1).unwrap().module;
        // Dualizing the single Koszul column [y, -x]^t gives the row
        // [y  -x], whose cokernel is R/(x,y) up to degree shift.
        assert_eq!(tr.ngens(), 1);
        let expect = k.twist(-tr.gen_degs[0]);
        let chk = betti_hilbert_check(&tr, &expect, 6, 6).unwrap();
        assert!(chk.equal(), "transpose of the first syzygy of k should be k shifted");
    }

    #[test]
    fn double_transpose_recovers_modules_without_free_summands() {
        let r = qxy();
        let cases = vec![
            FpModule::cyclic(&r, &[var(&r, 0)]).unwrap(),
            FpModule::cyclic(&r, &[var(&r, 0), var(&r, 1)]).unwrap(),
            FpModule::cyclic(&r, &[var(&r, 0).mul(&var(&r, 0), &r.order), var(&r, 1)]).unwrap(),
        ];
        for m in cases {
            let tt = transpose(&transpose(&m).unwrap().module).unwrap().module;
            let chk = betti_hilbert_check(&m, &tt, 6, 8).unwrap();
            assert!(chk.equal(), "double transpose changed the module");
        }
    }

    #[test]
    fn lp_of_variable_primes_over_polynomial_ring() {
        let r = qxy();
        let cap = default_resolution_cap(&r);
        let px = PrimeData::declare(&r, vec![var(&r, 0)], false, None).unwrap();
        let l = lp_module(&px, cap).unwrap();
        let rx = FpModule::cyclic(&r, &[var(&r, 0)]).unwrap();
        let chk = betti_hilbert_check(&l.twist(l.gen_degs[0]), &rx, 6, cap).unwrap();
        assert!(chk.equal(), "L((x)) should agree with R/(x) up to shift");
        assert_eq!(free_resolution(&l, cap).unwrap().pd(), Pd::Finite(1));

        let pm = PrimeData::declare(&r, vec![var(&r, 0), var(&r, 1)], false, None).unwrap();
        let l2 = lp_module(&pm, cap).unwrap();
        let k = FpModule::cyclic(&r, &[var(&r, 0), var(&r, 1)]).unwrap();
        let chk2 = betti_hilbert_check(&l2.twist(l2.gen_degs[0]), &k, 6, cap).unwrap();
        assert!(chk2.equal(), "L((x,y)) should agree with the residue field up to shift");
        assert_eq!(free_resolution(&l2, cap).unwrap().pd(), Pd::Finite(2));
    }

    #[test]
    fn lp_requires_positive_height_and_the_vanishing_hypothesis() {
        let r = qxy();
        let cap = default_resolution_cap(&r);
        let zero = PrimeData::declare(&r, Vec::new(), false, None).unwrap();
        let err = lp_module(&zero, cap).unwrap_err();
        assert!(err.to_string().contains("height at least 1"), "{err}");

        // R = Q[x,y]/(x^2, xy): the maximal ideal consists of zerodivisors,
        // so Hom(R/p, R) is already nonzero for the height-1 prime (x, y).
        let x = Poly::var(2, 0, FieldKind::Rational);
        let y = Poly::var(2, 1, FieldKind::Rational);
        let bad = RingData::new(
            FieldKind::Rational,
            vec!["x".into(), "y".into()],
            MonomialOrder::degrevlex(2),
            vec![x.mul(&x, &MonomialOrder::degrevlex(2)), x.mul(&y, &MonomialOrder::degrevlex(2))],
            false,
        )
        .unwrap();
        let m = PrimeData::declare(&bad, vec![Poly::var(2, 0, FieldKind::Rational), Poly::var(2, 1, FieldKind::Rational)], false, None).unwrap();
        assert_eq!(m.height, 1);
        let err = lp_module(&m, default_resolution_cap(&bad)).unwrap_err();
        assert!(err.to_string().contains("vanishing hypothesis"), "{err}");
    }

    #[test]
    fn functor_comparison_on_residue_field_and_friends() {
        let r = qxy();
        let cap = default_resolution_cap(&r);
        let k = FpModule::cyclic(&r, &[var(&r, 0), var(&r, 1)]).unwrap();
        let rx = FpModule::cyclic(&r, &[var(&r, 0)]).unwrap();
        let thick = FpModule::cyclic(&r, &[var(&r, 0).mul(&var(&r, 0), &r.order), var(&r, 1)]).unwrap();
        let suite = vec![FpModule::ring_module(&r), rx.clone(), thick, k.clone()];
        let report = functor_iso_check(&k, 1, &suite, 6, cap).unwrap();
        assert!(report.all_equal(), "{:?}", report);

        // n = 0 with a torsion-free-dual module: U = R/(x) has
        // Hom(U, R) = 0, and Ext^0(U, -) must match Tor_1(transpose, -).
        let report0 = functor_iso_check(&rx, 0, &suite, 6, cap).unwrap();
        assert!(report0.all_equal(), "{:?}", report0);
    }

    #[test]
    fn functor_comparison_rejects_modules_with_nonvanishing_dual() {
        let r = qxy();
        let cap = default_resolution_cap(&r);
        let free = FpModule::ring_module(&r);
        let err = functor_iso_check(&free, 0, &[free.clone()], 6, cap).unwrap_err();
        assert!(err.to_string().contains("vanishing hypothesis"), "{err}");
    }

    #[test]
    fn transpose_pd_formula_holds() {
        let r = qxy();
        let cap = default_resolution_cap(&r);
        let k = FpModule::cyclic(&r, &[var(&r, 0), var(&r, 1)]).unwrap();
        // Ext^i(k, R) = 0 for i = 0, 1 over Q[x,y], so the transposes of the
        // 0th and 1st syzygies have projective dimension exactly 1 and 2.
        for n in 0..=1usize {
            assert!(ext_vanishing_defect(&k, n, cap).unwrap().is_none());
            let t = transpose_of_syzygy(&k, n, cap).unwrap();
            assert_eq!(free_resolution(&t, cap).unwrap().pd(), Pd::Finite(n + 1));
        }
    }
}
