//! Validation and enumeration of descending sequences of upward-closed
//! prime subsets over a declared window, and membership of finitely
//! presented modules in the module classes those sequences cut out — by
//! each of the equivalent characterizations: Bass invariants, Ext against
//! residue rings, Tor through transposed syzygies, and (over rings asserted
//! Gorenstein) the prime-attached generator modules. Also: separating-module
//! search between sequences and resolving-class generator sets.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::fpmod::FpModule;
use crate::homology::{ext_module, tor_module};
use crate::invariants::bass_invariant;
use crate::resolution::{free_resolution, Pd};
use crate::ring::{Certificate, Prime, Ring, SpecSeq, Window};
use crate::support::is_divisible_by_ideal;
use crate::transpose::{ext_vanishing_defect, lp_module, syzygy_module, transpose_of_syzygy};

/// Windows larger than this are refused by subset enumeration.
pub const WINDOW_ENUM_LIMIT: usize = 16;

/// Shared computation context for one window: memoizes residue modules,
/// transposed syzygies, generator modules, Bass invariants, and Ext/Tor
/// vanishing checks, so that verdicts across sequences and suites reuse
/// work. All methods take `&self`; the caches are internally locked.
pub struct ClassifyCtx {
    pub window: Window,
    pub cap: usize,
    residues: Mutex<BTreeMap<usize, FpModule>>,
    tr_syz: Mutex<BTreeMap<(usize, usize), FpModule>>,
    lp: Mutex<BTreeMap<usize, FpModule>>,
    bass: Mutex<BTreeMap<(String, usize, usize), usize>>,
    zero_checks: Mutex<BTreeMap<(String, String), bool>>,
}

impl ClassifyCtx {
    pub fn new(window: &Window, cap: usize) -> ClassifyCtx {
        ClassifyCtx {
            window: window.clone(),
            cap,
            residues: Mutex::new(BTreeMap::new()),
            tr_syz: Mutex::new(BTreeMap::new()),
            lp: Mutex::new(BTreeMap::new()),
            bass: Mutex::new(BTreeMap::new()),
            zero_checks: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.window.ring
    }

    pub fn prime(&self, i: usize) -> &Prime {
        &self.window.primes[i]
    }

    /// R/p for the window prime of the given index.
    pub fn residue_module(&self, pi: usize) -> Result<FpModule> {
        if let Some(m) = self.residues.lock().unwrap().get(&pi) {
            return Ok(m.clone());
        }
        let m = FpModule::cyclic(self.ring(), self.prime(pi).ideal.gb())?;
        self.residues.lock().unwrap().insert(pi, m.clone());
        Ok(m)
    }

    /// The transpose of the (level-1)-st syzygy of R/p, after verifying the
    /// vanishing hypothesis Ext^j(R/p, R) = 0 for j = 0, ..., level-1 that
    /// makes it the correct companion module.
    pub fn transposed_syzygy(&self, pi: usize, level: usize) -> Result<FpModule> {
        if level < 1 {
            return Err(Error::internal("transposed syzygy level must be at least 1"));
        }
        if let Some(m) = self.tr_syz.lock().unwrap().get(&(pi, level)) {
            return Ok(m.clone());
        }
        let u = self.residue_module(pi)?;
        if let Some(j) = ext_vanishing_defect(&u, level - 1, self.cap)? {
            return Err(Error::input(format!(
                "the vanishing hypothesis Ext^i_R(U, R) = 0 for all i = 0, 1, ..., {} fails for U = R/p at i = {j} (p = {}); the transposed-syzygy characterization does not apply",
                level - 1,
                self.prime(pi).describe(),
            )));
        }
        let t = transpose_of_syzygy(&u, level - 1, self.cap)?;
        self.tr_syz.lock().unwrap().insert((pi, level), t.clone());
        Ok(t)
    }

    /// The generator module attached to a window prime of height >= 1.
    pub fn generator_module(&self, pi: usize) -> Result<FpModule> {
        if let Some(m) = self.lp.lock().unwrap().get(&pi) {
            return Ok(m.clone());
        }
        let l = lp_module(self.prime(pi), self.cap)?;
        self.lp.lock().unwrap().insert(pi, l.clone());
        Ok(l)
    }

    /// The i-th Bass invariant of `m` at a window prime, memoized by the
    /// presentation key of `m`.
    pub fn bass_number(&self, m: &FpModule, mkey: &str, pi: usize, i: usize) -> Result<usize> {
        let key = (mkey.to_string(), pi, i);
        if let Some(&v) = self.bass.lock().unwrap().get(&key) {
            return Ok(v);
        }
        let v = bass_invariant(i, self.prime(pi), m, self.cap)?;
        self.bass.lock().unwrap().insert(key, v);
        Ok(v)
    }

    /// Memoized test for vanishing of Ext^i(a, m) or Tor_i(a, m), keyed by
    /// the presentation keys.
    fn vanishes(&self, kind: &str, i: usize, a: &FpModule, akey: &str, m: &FpModule, mkey: &str) -> Result<bool> {
        let key = (format!("{kind}:{i}:{akey}"), mkey.to_string());
        if let Some(&v) = self.zero_checks.lock().unwrap().get(&key) {
            return Ok(v);
        }
        let module = match kind {
            "ext" => ext_module(i, a, m, self.cap)?,
            "tor" => tor_module(i, a, m, self.cap)?,
            _ => return Err(Error::internal("unknown vanishing-check kind")),
        };
        let v = module.is_zero_module();
        self.zero_checks.lock().unwrap().insert(key, v);
        Ok(v)
    }
}

/// A (level, window-prime) coordinate in a sequence report; levels are
/// 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelPair {
    pub level: usize,
    pub prime: usize,
}

/// Validation report for a sequence of prime subsets: closure under passing
/// to larger primes, descending containment, vanishing of the level-indexed
/// Bass invariants of R, plus the height-based variant of that last
/// condition as a diagnostic (the two agree pointwise exactly in the
/// Gorenstein regime).
#[derive(Clone, Debug)]
pub struct SequenceReport {
    pub n: usize,
    /// (level, prime that should belong to the level but does not).
    pub not_up_closed: Vec<LevelPair>,
    /// (level k, prime in level k missing from level k-1).
    pub not_descending: Vec<LevelPair>,
    /// (coordinate, nonzero value of mu_{level-1}(p, R)).
    pub bass_failures: Vec<(LevelPair, usize)>,
    /// Coordinates with height(p) = level - 1 (the height-variant check).
    pub height_failures: Vec<LevelPair>,
    /// Whether the Bass condition and the height condition agreed at every
    /// coordinate.
    pub variant_agrees: bool,
}

impl SequenceReport {
    pub fn valid(&self) -> bool {
        self.not_up_closed.is_empty() && self.not_descending.is_empty() && self.bass_failures.is_empty()
    }
}

/// Validate raw level sets over the context's window, reporting every
/// failure instead of refusing construction.
pub fn validate_levels(ctx: &ClassifyCtx, levels: &[BTreeSet<usize>]) -> Result<SequenceReport> {
    if levels.is_empty() {
        return Err(Error::input("a subset sequence needs at least one level"));
    }
    let w = &ctx.window;
    for level in levels {
        for &i in level {
            if i >= w.len() {
                return Err(Error::input(format!(
                    "prime index {i} is outside the window (size {})",
                    w.len()
                )));
            }
        }
    }
    let mut not_up_closed = Vec::new();
    let mut not_descending = Vec::new();
    let mut bass_failures = Vec::new();
    let mut height_failures = Vec::new();
    let mut variant_agrees = true;
    let r_mod = FpModule::ring_module(ctx.ring());
    let rkey = r_mod.canonical_key();
    for (k, level) in levels.iter().enumerate() {
        let lvl = k + 1;
        for &i in level {
            for j in 0..w.len() {
                if w.below(i, j) && !level.contains(&j) {
                    let pair = LevelPair { level: lvl, prime: j };
                    if !not_up_closed.contains(&pair) {
                        not_up_closed.push(pair);
                    }
                }
            }
        }
        if k > 0 {
            for &i in level.difference(&levels[k - 1]) {
                not_descending.push(LevelPair { level: lvl, prime: i });
            }
        }
        for &i in level {
            let mu = ctx.bass_number(&r_mod, &rkey, i, k)?;
            let bass_ok = mu == 0;
            let height_ok = ctx.prime(i).height != k as i64;
            if !bass_ok {
                bass_failures.push((LevelPair { level: lvl, prime: i }, mu));
            }
            if !height_ok {
                height_failures.push(LevelPair { level: lvl, prime: i });
            }
            if bass_ok != height_ok {
                variant_agrees = false;
            }
        }
    }
    Ok(SequenceReport {
        n: levels.len(),
        not_up_closed,
        not_descending,
        bass_failures,
        height_failures,
        variant_agrees,
    })
}

/// Error unless the sequence passes validation.
pub fn require_valid(ctx: &ClassifyCtx, seq: &SpecSeq) -> Result<()> {
    if !Arc::ptr_eq(&seq.window, &ctx.window) {
        return Err(Error::input("the sequence was declared over a different window"));
    }
    let report = validate_levels(ctx, &seq.levels)?;
    if report.valid() {
        return Ok(());
    }
    let mut parts = Vec::new();
    for p in &report.not_up_closed {
        parts.push(format!(
            "level {} is missing {} (closure under larger primes)",
            p.level,
            ctx.prime(p.prime).describe()
        ));
    }
    for p in &report.not_descending {
        parts.push(format!(
            "level {} contains {} but level {} does not",
            p.level,
            ctx.prime(p.prime).describe(),
            p.level - 1
        ));
    }
    for (p, mu) in &report.bass_failures {
        parts.push(format!(
            "mu_{}({}, R) = {} must vanish for level {}",
            p.level - 1,
            ctx.prime(p.prime).describe(),
            mu,
            p.level
        ));
    }
    Err(Error::input(format!("invalid sequence: {}", parts.join("; "))))
}

/// All valid sequences of a given length over the window, with counts
/// grouped by the last level.
#[derive(Clone, Debug)]
pub struct ClassEnumeration {
    pub n: usize,
    pub sequences: Vec<Vec<BTreeSet<usize>>>,
    pub counts_by_last: Vec<(BTreeSet<usize>, usize)>,
}

/// Enumerate every valid sequence of length `n`: upward-closed subsets are
/// listed once, filtered per level by the Bass condition on R, and chained
/// by descending containment. Output order: by the tuple of level sizes,
/// then by the level index sets.
pub fn enumerate_sequences(ctx: &ClassifyCtx, n: usize) -> Result<ClassEnumeration> {
    if n == 0 {
        return Err(Error::input("sequence length must be at least 1"));
    }
    let w = ctx.window.len();
    if w > WINDOW_ENUM_LIMIT {
        return Err(Error::budget(format!(
            "subset enumeration is limited to windows of at most {WINDOW_ENUM_LIMIT} primes (got {w})"
        )));
    }
    let mut upsets: Vec<BTreeSet<usize>> = Vec::new();
    for mask in 0..(1u64 << w) {
        let set: BTreeSet<usize> = (0..w).filter(|&j| mask >> j & 1 == 1).collect();
        if ctx.window.is_up_closed(&set) {
            upsets.push(set);
        }
    }
    let r_mod = FpModule::ring_module(ctx.ring());
    let rkey = r_mod.canonical_key();
    // admissible[k][u]: upset u satisfies the Bass condition of level k+1.
    let mut admissible: Vec<Vec<bool>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut prime_ok = vec![false; w];
        for j in 0..w {
            prime_ok[j] = ctx.bass_number(&r_mod, &rkey, j, k)? == 0;
        }
        admissible.push(upsets.iter().map(|s| s.iter().all(|&j| prime_ok[j])).collect());
    }
    let mut sequences: Vec<Vec<BTreeSet<usize>>> = Vec::new();
    let mut chain: Vec<usize> = Vec::new();
    chain_search(&upsets, &admissible, n, &mut chain, &mut sequences);
    sequences.sort_by(|a, b| {
        let sa: Vec<usize> = a.iter().map(|s| s.len()).collect();
        let sb: Vec<usize> = b.iter().map(|s| s.len()).collect();
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
    let mut counts: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    for s in &sequences {
        *counts.entry(s[n - 1].clone()).or_insert(0) += 1;
    }
    Ok(ClassEnumeration {
        n,
        sequences,
        counts_by_last: counts.into_iter().collect(),
    })
}

fn chain_search(
    upsets: &[BTreeSet<usize>],
    admissible: &[Vec<bool>],
    n: usize,
    chain: &mut Vec<usize>,
    out: &mut Vec<Vec<BTreeSet<usize>>>,
) {
    let k = chain.len();
    if k == n {
        out.push(chain.iter().map(|&u| upsets[u].clone()).collect());
        return;
    }
    for u in 0..upsets.len() {
        if !admissible[k][u] {
            continue;
        }
        if let Some(&prev) = chain.last() {
            if !upsets[u].is_subset(&upsets[prev]) {
                continue;
            }
        }
        chain.push(u);
        chain_search(upsets, admissible, n, chain, out);
        chain.pop();
    }
}

/// Which of the two orthogonality classes of a sequence is being tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// The class cut out by vanishing of Ext^{i-1}(R/p, -) (equivalently of
    /// the level-indexed Bass invariants).
    Cotilting,
    /// The class cut out by vanishing of Tor_{i-1}(R/p, -).
    Tilting,
}

impl Side {
    pub fn label(self) -> &'static str {
        match self {
            Side::Cotilting => "cotilting",
            Side::Tilting => "tilting",
        }
    }

    pub fn parse(s: &str) -> Option<Side> {
        match s {
            "cotilting" => Some(Side::Cotilting),
            "tilting" => Some(Side::Tilting),
            _ => None,
        }
    }
}

/// The characterization used to decide membership.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Method {
    /// mu_{i-1}(p, M) = 0 for p in level i (cotilting side).
    Bass,
    /// Ext^{i-1}(R/p, M) = 0 for p in level i (cotilting side).
    Ext,
    /// Tor_1(transposed (i-1)-syzygy of R/p, M) = 0 for minimal p in level
    /// i (cotilting side).
    TorTranspose,
    /// Vanishing against the prime-attached generator modules of an
    /// asserted-Gorenstein ring, for minimal p in level i: Tor on the
    /// cotilting side, Ext on the tilting side, in degree height(p) - i + 1.
    GorensteinL,
    /// Tor_{i-1}(R/p, M) = 0 for p in level i (tilting side).
    Tor,
    /// Ext^1(transposed (i-1)-syzygy of R/p, M) = 0 for minimal p in level
    /// i (tilting side).
    ExtTranspose,
    /// p-divisibility pM = M for p in level 1 (tilting side, length 1 only;
    /// restates Tor_0(R/p, M) = 0).
    Divisibility,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Bass => "bass",
            Method::Ext => "ext",
            Method::TorTranspose => "tor-transpose",
            Method::GorensteinL => "gorenstein-L",
            Method::Tor => "tor",
            Method::ExtTranspose => "ext-transpose",
            Method::Divisibility => "divisibility",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        match s {
            "bass" => Some(Method::Bass),
            "ext" => Some(Method::Ext),
            "tor-transpose" => Some(Method::TorTranspose),
            "gorenstein-L" => Some(Method::GorensteinL),
            "tor" => Some(Method::Tor),
            "ext-transpose" => Some(Method::ExtTranspose),
            "divisibility" => Some(Method::Divisibility),
            _ => None,
        }
    }

    pub fn for_side(side: Side) -> Vec<Method> {
        match side {
            Side::Cotilting => vec![Method::Bass, Method::Ext, Method::TorTranspose, Method::GorensteinL],
            Side::Tilting => vec![Method::Tor, Method::ExtTranspose, Method::Divisibility, Method::GorensteinL],
        }
    }

    fn allowed_on(self, side: Side) -> bool {
        Method::for_side(side).contains(&self)
    }

    /// Whether the method's defining formula quantifies over the minimal
    /// elements of each level rather than the full level.
    pub fn restricts_to_minimal(self) -> bool {
        matches!(self, Method::TorTranspose | Method::ExtTranspose | Method::GorensteinL)
    }
}

/// One failed vanishing condition.
#[derive(Clone, Debug)]
pub struct WitnessEntry {
    pub level: usize,
    pub prime: usize,
    pub invariant: String,
    pub value: String,
}

/// The result of a membership test. `member` holds exactly when no witness
/// was found.
#[derive(Clone, Debug)]
pub struct MembershipVerdict {
    pub side: Side,
    pub method: Method,
    pub member: bool,
    pub witnesses: Vec<WitnessEntry>,
    pub caveats: Vec<String>,
}

/// Decide membership of `m` in the class of `seq` on the given side by the
/// given method, quantifying each level by the method's own convention.
pub fn membership(
    ctx: &ClassifyCtx,
    m: &FpModule,
    seq: &SpecSeq,
    side: Side,
    method: Method,
) -> Result<MembershipVerdict> {
    membership_opts(ctx, m, seq, side, method, method.restricts_to_minimal())
}

/// Membership with an explicit choice of level quantification: over the
/// minimal elements of each level, or over every window member of it. The
/// two choices give the same verdict for every method except the
/// Bass-invariant one: Ext and Tor conditions against R/p detect every
/// prime containing p, while a Bass invariant is local to its prime, so
/// restricting the Bass test to minimal elements would weaken it — that
/// combination is refused.
pub fn membership_opts(
    ctx: &ClassifyCtx,
    m: &FpModule,
    seq: &SpecSeq,
    side: Side,
    method: Method,
    minimal_only: bool,
) -> Result<MembershipVerdict> {
    if !Arc::ptr_eq(&m.ring, &ctx.window.ring) {
        return Err(Error::input("module and window live over different rings"));
    }
    if minimal_only && method == Method::Bass {
        return Err(Error::input(
            "the Bass-invariant test quantifies over entire levels: Bass numbers are local to their prime, so the minimal-element reduction does not apply to them",
        ));
    }
    require_valid(ctx, seq)?;
    if !method.allowed_on(side) {
        return Err(Error::input(format!(
            "method {} does not apply to the {} side",
            method.label(),
            side.label()
        )));
    }
    if method == Method::Divisibility && seq.n() != 1 {
        return Err(Error::input(
            "the divisibility method applies to sequences of length 1 only",
        ));
    }
    if method == Method::GorensteinL && !ctx.ring().gorenstein_asserted {
        return Err(Error::input(
            "the generator-module method needs the ring to be asserted Gorenstein",
        ));
    }
    let mkey = m.canonical_key();
    let mut witnesses: Vec<WitnessEntry> = Vec::new();
    let mut caveats: Vec<String> = vec![
        "window-relative: conditions are tested at declared window primes only, for finitely presented modules".to_string(),
    ];
    let mut seen_asserted: BTreeSet<usize> = BTreeSet::new();
    let mut seen_open: BTreeSet<usize> = BTreeSet::new();
    for i in 1..=seq.n() {
        let level_set = &seq.levels[i - 1];
        let tested: Vec<usize> = if minimal_only {
            ctx.window.minimal_elements(level_set)
        } else {
            level_set.iter().copied().collect()
        };
        for pi in tested {
            let p = ctx.prime(pi).clone();
            if p.cert == Certificate::Asserted && seen_asserted.insert(pi) {
                caveats.push(format!(
                    "primality of {} was asserted, not certified",
                    p.describe()
                ));
            }
            if method == Method::Ext && !p.is_variable_maximal() && seen_open.insert(pi) {
                caveats.push(format!(
                    "the condition at {} concerns every prime containing it; primes outside the window are not examined",
                    p.describe()
                ));
            }
            let failed: Option<(String, String)> = match (side, method) {
                (Side::Cotilting, Method::Bass) => {
                    let v = ctx.bass_number(m, &mkey, pi, i - 1)?;
                    (v != 0).then(|| (format!("mu_{}({}, M)", i - 1, p.describe()), v.to_string()))
                }
                (Side::Cotilting, Method::Ext) => {
                    let u = ctx.residue_module(pi)?;
                    let ukey = u.canonical_key();
                    let z = ctx.vanishes("ext", i - 1, &u, &ukey, m, &mkey)?;
                    (!z).then(|| (format!("Ext^{}(R/{}, M)", i - 1, p.describe()), "nonzero".to_string()))
                }
                (Side::Cotilting, Method::TorTranspose) => {
                    let t = ctx.transposed_syzygy(pi, i)?;
                    let tkey = t.canonical_key();
                    let z = ctx.vanishes("tor", 1, &t, &tkey, m, &mkey)?;
                    (!z).then(|| {
                        (format!("Tor_1(Tr Omega^{}(R/{}), M)", i - 1, p.describe()), "nonzero".to_string())
                    })
                }
                (Side::Tilting, Method::Tor) => {
                    let u = ctx.residue_module(pi)?;
                    let ukey = u.canonical_key();
                    let z = ctx.vanishes("tor", i - 1, &u, &ukey, m, &mkey)?;
                    (!z).then(|| (format!("Tor_{}(R/{}, M)", i - 1, p.describe()), "nonzero".to_string()))
                }
                (Side::Tilting, Method::ExtTranspose) => {
                    let t = ctx.transposed_syzygy(pi, i)?;
                    let tkey = t.canonical_key();
                    let z = ctx.vanishes("ext", 1, &t, &tkey, m, &mkey)?;
                    (!z).then(|| {
                        (format!("Ext^1(Tr Omega^{}(R/{}), M)", i - 1, p.describe()), "nonzero".to_string())
                    })
                }
                (Side::Tilting, Method::Divisibility) => {
                    let divisible = is_divisible_by_ideal(m, p.ideal.gb())?;
                    (!divisible).then(|| (format!("{} * M = M", p.describe()), "fails".to_string()))
                }
                (_, Method::GorensteinL) => {
                    let ht = p.height;
                    if ht < i as i64 {
                        return Err(Error::input(format!(
                            "{} has height {ht} < level {i}; the generator-module formula needs height at least the level (is the Gorenstein assertion sound?)",
                            p.describe()
                        )));
                    }
                    let idx = (ht - i as i64 + 1) as usize;
                    let l = ctx.generator_module(pi)?;
                    let lkey = l.canonical_key();
                    let (kind, name) = match side {
                        Side::Cotilting => ("tor", format!("Tor_{}(L({}), M)", idx, p.describe())),
                        Side::Tilting => ("ext", format!("Ext^{}(L({}), M)", idx, p.describe())),
                    };
                    let z = ctx.vanishes(kind, idx, &l, &lkey, m, &mkey)?;
                    (!z).then(|| (name, "nonzero".to_string()))
                }
                _ => {
                    return Err(Error::internal("method/side dispatch fell through"));
                }
            };
            if let Some((invariant, value)) = failed {
                witnesses.push(WitnessEntry { level: i, prime: pi, invariant, value });
            }
        }
    }
    Ok(MembershipVerdict {
        side,
        method,
        member: witnesses.is_empty(),
        witnesses,
        caveats,
    })
}

/// Consistency of truncation against syzygies: membership of the (j-1)-st
/// syzygy of `m` for the full sequence must agree with membership of `m`
/// for the sequence starting at level j.
#[derive(Clone, Debug)]
pub struct ShiftReport {
    pub j: usize,
    pub shifted: MembershipVerdict,
    pub truncated: MembershipVerdict,
    pub agree: bool,
}

pub fn shift_check(ctx: &ClassifyCtx, m: &FpModule, seq: &SpecSeq, j: usize) -> Result<ShiftReport> {
    if j < 1 || j > seq.n() {
        return Err(Error::input(format!(
            "shift index {j} is outside 1..={}",
            seq.n()
        )));
    }
    let omega = syzygy_module(m, j - 1, ctx.cap)?;
    let shifted = membership(ctx, &omega, seq, Side::Cotilting, Method::Bass)?;
    let tail = seq.suffix(j - 1);
    let truncated = membership(ctx, m, &tail, Side::Cotilting, Method::Bass)?;
    let agree = shifted.member == truncated.member;
    Ok(ShiftReport { j, shifted, truncated, agree })
}

/// The finite generator set of the resolving class attached to a valid
/// sequence: R together with the transposed (i-1)-syzygies of R/p for the
/// minimal primes p of each level. Projective dimensions are verified to
/// stay within the sequence length.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub labels: Vec<String>,
    pub modules: Vec<FpModule>,
    pub pds: Vec<usize>,
}

pub fn resolving_generators(ctx: &ClassifyCtx, seq: &SpecSeq) -> Result<GeneratorSet> {
    require_valid(ctx, seq)?;
    let mut labels = vec!["R".to_string()];
    let mut modules = vec![FpModule::ring_module(ctx.ring())];
    let mut pds = vec![0usize];
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for i in 1..=seq.n() {
        for pi in ctx.window.minimal_elements(&seq.levels[i - 1]) {
            let t = ctx.transposed_syzygy(pi, i)?;
            if t.is_zero_module() {
                continue;
            }
            let key = t.canonical_key();
            if !seen.insert(key) {
                continue;
            }
            let pd = match free_resolution(&t, self_cap(ctx, seq.n()))?.pd() {
                Pd::Finite(d) => d,
                Pd::ZeroModule => continue,
                Pd::AtLeast(d) => {
                    return Err(Error::budget(format!(
                        "projective dimension of a generator not resolved within {d} steps; raise the resolution cap"
                    )))
                }
            };
            if pd > seq.n() {
                return Err(Error::internal(format!(
                    "generator for level {i} at {} has projective dimension {pd} > sequence length {}",
                    ctx.prime(pi).describe(),
                    seq.n()
                )));
            }
            labels.push(format!("Tr(Omega^{}(R/{}))", i - 1, ctx.prime(pi).describe()));
            modules.push(t);
            pds.push(pd);
        }
    }
    Ok(GeneratorSet { labels, modules, pds })
}

fn self_cap(ctx: &ClassifyCtx, n: usize) -> usize {
    ctx.cap.max(n + 2)
}

/// Whether every positive-degree Ext group from each generator vanishes on
/// `m`; generators must have finite projective dimension.
fn orthogonal_to_all(ctx: &ClassifyCtx, gens: &[FpModule], m: &FpModule, mkey: &str) -> Result<bool> {
    for g in gens {
        let pd = match free_resolution(g, ctx.cap)?.pd() {
            Pd::ZeroModule => continue,
            Pd::Finite(d) => d,
            Pd::AtLeast(_) => {
                return Err(Error::input(
                    "orthogonality comparison needs generators of finite projective dimension",
                ))
            }
        };
        let gkey = g.canonical_key();
        for j in 1..=pd {
            if !ctx.vanishes("ext", j, g, &gkey, m, mkey)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Suite comparison of the Ext-orthogonality classes of two generator
/// lists.
#[derive(Clone, Debug)]
pub struct SameClassReport {
    pub checked: usize,
    /// (suite index, orthogonal to first list, orthogonal to second list).
    pub mismatches: Vec<(usize, bool, bool)>,
}

impl SameClassReport {
    pub fn agree(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn same_class_check(
    ctx: &ClassifyCtx,
    gens1: &[FpModule],
    gens2: &[FpModule],
    suite: &[FpModule],
) -> Result<SameClassReport> {
    let mut mismatches = Vec::new();
    for (k, m) in suite.iter().enumerate() {
        let mkey = m.canonical_key();
        let a = orthogonal_to_all(ctx, gens1, m, &mkey)?;
        let b = orthogonal_to_all(ctx, gens2, m, &mkey)?;
        if a != b {
            mismatches.push((k, a, b));
        }
    }
    Ok(SameClassReport { checked: suite.len(), mismatches })
}

/// Candidate separating modules for distinguishing sequence classes: the
/// syzygies of the window's residue rings, deduplicated by presentation.
pub fn syzygy_separator_pool(ctx: &ClassifyCtx, n: usize) -> Result<Vec<(String, FpModule)>> {
    let mut out: Vec<(String, FpModule)> = vec![("R".to_string(), FpModule::ring_module(ctx.ring()))];
    let mut seen: BTreeSet<String> = out.iter().map(|(_, m)| m.canonical_key()).collect();
    for pi in 0..ctx.window.len() {
        let u = ctx.residue_module(pi)?;
        for i in 1..=n {
            let omega = syzygy_module(&u, i - 1, self_cap(ctx, n))?;
            if omega.is_zero_module() {
                continue;
            }
            if !seen.insert(omega.canonical_key()) {
                continue;
            }
            out.push((format!("Omega^{}(R/{})", i - 1, ctx.prime(pi).describe()), omega));
        }
    }
    Ok(out)
}

/// Search outcome for one pair of sequences.
#[derive(Clone, Debug)]
pub struct SeparationResult {
    /// (pool label, member of first class, member of second class).
    pub separator: Option<(String, bool, bool)>,
    /// When no pool module separates: a depth-theoretic certificate that no
    /// finitely generated module can, if one applies.
    pub obstruction: Option<String>,
}

/// Try to produce a finitely presented module lying in exactly one of the
/// two classes, testing by Bass invariants over the pool; on failure,
/// attempt the depth obstruction certificate.
pub fn separate_sequences(
    ctx: &ClassifyCtx,
    s1: &SpecSeq,
    s2: &SpecSeq,
    pool: &[(String, FpModule)],
) -> Result<SeparationResult> {
    for (label, m) in pool {
        let v1 = membership(ctx, m, s1, Side::Cotilting, Method::Bass)?;
        let v2 = membership(ctx, m, s2, Side::Cotilting, Method::Bass)?;
        if v1.member != v2.member {
            return Ok(SeparationResult {
                separator: Some((label.clone(), v1.member, v2.member)),
                obstruction: None,
            });
        }
    }
    Ok(SeparationResult { separator: None, obstruction: fg_separator_obstruction(ctx, s1, s2)? })
}

/// Certify, when possible, that two distinct valid sequences cannot be
/// distinguished by any finitely generated module. A difference at (level
/// i, prime p) forces a distinguishing module M to satisfy
/// mu_{i-1}(p, M) != 0, hence to have depth at most (i-1) + dim(R/p) at
/// every prime containing p. If some prime q containing p belongs to both
/// sequences at every level 1..=L with L >= i + dim(R/p), then membership
/// of M in either class forces depth at least L at q — a contradiction.
/// The certificate applies when every differing coordinate is blocked this
/// way. (The classes still differ: they are told apart by modules that are
/// not finitely generated, built from the residue field at p.)
pub fn fg_separator_obstruction(
    ctx: &ClassifyCtx,
    s1: &SpecSeq,
    s2: &SpecSeq,
) -> Result<Option<String>> {
    if s1.n() != s2.n() {
        return Ok(None);
    }
    let n = s1.n();
    let mut notes: Vec<String> = Vec::new();
    let mut any_diff = false;
    for i in 1..=n {
        for &pi in s1.levels[i - 1].symmetric_difference(&s2.levels[i - 1]) {
            any_diff = true;
            let p = ctx.prime(pi);
            let coheight = p.dim_quotient;
            let mut blocked = None;
            for qi in 0..ctx.window.len() {
                if !ctx.window.below(pi, qi) {
                    continue;
                }
                let mut common_through = 0usize;
                for lvl in 1..=n {
                    if s1.levels[lvl - 1].contains(&qi) && s2.levels[lvl - 1].contains(&qi) {
                        common_through = lvl;
                    } else {
                        break;
                    }
                }
                if common_through as i64 >= i as i64 + coheight {
                    blocked = Some((qi, common_through));
                    break;
                }
            }
            match blocked {
                Some((qi, l)) => notes.push(format!(
                    "difference at level {i}, p = {}: q = {} lies in both sequences through level {l} >= {i} + dim(R/p) = {}, forcing depth >= {l} at q on any member while a distinguishing module needs an associated prime inside q of coheight {coheight}",
                    p.describe(),
                    ctx.prime(qi).describe(),
                    i as i64 + coheight,
                )),
                None => return Ok(None),
            }
        }
    }
    if !any_diff {
        return Ok(None);
    }
    Ok(Some(format!(
        "no finitely generated module distinguishes these classes: {}",
        notes.join("; ")
    )))
}
