//! Session evaluation: binds declarations into an environment and runs
//! commands against the core library, producing one report per command.
//! Evaluation is sequential; the `jobs` option parallelizes independent
//! per-prime and per-method computations inside a single command, with
//! results reassembled in a fixed order so output never depends on the
//! thread count.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use spectilt_core::classify::{
    enumerate_sequences, membership, membership_opts, resolving_generators, validate_levels,
    ClassifyCtx, Method, Side,
};
use spectilt_core::cmserre::{chi, cm_report, hochster_probe, serre_check};
use spectilt_core::error::{Error, Result};
use spectilt_core::fpmod::FpModule;
use spectilt_core::gb::ModVec;
use spectilt_core::homology::{ext_module, tor_module};
use spectilt_core::invariants::bass_invariant;
use spectilt_core::monomial::{Monomial, MonomialOrder};
use spectilt_core::poly::Poly;
use spectilt_core::resolution::{default_resolution_cap, free_resolution};
use spectilt_core::ring::{Prime, PrimeData, Ring, RingData, SpecSeq, Window, WindowData};
use spectilt_core::support::{associated_in_window, support_in_window};
use spectilt_core::text::{parse_poly, poly_text};
use spectilt_core::transpose::{functor_iso_check, lp_module, transpose};

use crate::parse::{err_at, Arg, Atom, Command, FieldSpec, RawPoly, Stmt, StmtKind};
use crate::report::{
    levels_payload, levels_text, module_payload, module_text_lines, prime_payload, table,
    verdict_payload, window_payload, witness_payload, Report,
};

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub json: bool,
    pub jobs: usize,
    pub pd_cap: Option<usize>,
    pub degree_bound: i64,
    pub seed: u64,
    /// Print one `# <command>: <ms> ms` line per command to stderr.  Timing
    /// stays out of stdout so report bytes are reproducible.
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { json: false, jobs: 1, pd_cap: None, degree_bound: 6, seed: 0, timing: false }
    }
}

#[derive(Clone)]
struct SeqBinding {
    window_name: String,
    window: Window,
    levels: Vec<BTreeSet<usize>>,
}

#[derive(Clone)]
enum Binding {
    Ring(Ring),
    Prime(Prime),
    Window(Window),
    Module(Arc<FpModule>),
    Seq(SeqBinding),
}

impl Binding {
    fn kind(&self) -> &'static str {
        match self {
            Binding::Ring(_) => "ring",
            Binding::Prime(_) => "prime",
            Binding::Window(_) => "window",
            Binding::Module(_) => "module",
            Binding::Seq(_) => "seq",
        }
    }
}

/// Map chunks of `items` across up to `jobs` scoped threads, preserving
/// input order in the result.
fn par_map<T, R, F>(jobs: usize, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    if jobs <= 1 || items.len() <= 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| s.spawn(|| part.iter().map(&f).collect::<Vec<R>>()))
            .collect();
        let mut out = Vec::with_capacity(items.len());
        for h in handles {
            out.extend(h.join().expect("worker thread panicked"));
        }
        out
    })
}

pub struct Evaluator<'a> {
    src: &'a str,
    opts: &'a RunOptions,
    env: BTreeMap<String, Binding>,
    current_ring: Option<Ring>,
    ctxs: BTreeMap<String, Arc<ClassifyCtx>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(src: &'a str, opts: &'a RunOptions) -> Evaluator<'a> {
        Evaluator { src, opts, env: BTreeMap::new(), current_ring: None, ctxs: BTreeMap::new() }
    }

    pub fn run(&mut self, stmts: &[Stmt]) -> Result<Vec<Report>> {
        let mut reports = Vec::new();
        for stmt in stmts {
            match &stmt.kind {
                StmtKind::Ring { .. }
                | StmtKind::Prime { .. }
                | StmtKind::Window { .. }
                | StmtKind::Module { .. }
                | StmtKind::Seq { .. } => self.declare(stmt)?,
                StmtKind::Command(cmd) => {
                    let start = std::time::Instant::now();
                    let report = self.command(cmd)?;
                    if self.opts.timing {
                        eprintln!("# {}: {} ms", report.echo, start.elapsed().as_millis());
                    }
                    reports.push(report);
                }
            }
        }
        Ok(reports)
    }

    fn bind(&mut self, name: &str, offset: usize, b: Binding) -> Result<()> {
        if let Some(old) = self.env.get(name) {
            return Err(err_at(
                self.src,
                offset,
                &format!("the name \"{name}\" is already bound to a {}", old.kind()),
            ));
        }
        self.env.insert(name.to_string(), b);
        Ok(())
    }

    fn lookup(&self, name: &str, offset: usize) -> Result<&Binding> {
        self.env.get(name).ok_or_else(|| {
            let declared: Vec<&str> = self.env.keys().map(|s| s.as_str()).collect();
            err_at(
                self.src,
                offset,
                &format!(
                    "unknown name \"{name}\" (declared names: {})",
                    if declared.is_empty() { "none".to_string() } else { declared.join(", ") }
                ),
            )
        })
    }

    fn lookup_module(&self, name: &str, offset: usize) -> Result<Arc<FpModule>> {
        match self.lookup(name, offset)? {
            Binding::Module(m) => Ok(m.clone()),
            other => Err(err_at(
                self.src,
                offset,
                &format!("\"{name}\" is a {}, but a module is needed here", other.kind()),
            )),
        }
    }

    fn lookup_prime(&self, name: &str, offset: usize) -> Result<Prime> {
        match self.lookup(name, offset)? {
            Binding::Prime(p) => Ok(p.clone()),
            other => Err(err_at(
                self.src,
                offset,
                &format!("\"{name}\" is a {}, but a prime is needed here", other.kind()),
            )),
        }
    }

    fn lookup_window(&self, name: &str, offset: usize) -> Result<Window> {
        match self.lookup(name, offset)? {
            Binding::Window(w) => Ok(w.clone()),
            other => Err(err_at(
                self.src,
                offset,
                &format!("\"{name}\" is a {}, but a window is needed here", other.kind()),
            )),
        }
    }

    fn current_ring(&self, offset: usize) -> Result<Ring> {
        self.current_ring.clone().ok_or_else(|| {
            err_at(self.src, offset, "no ring has been declared yet (declare one with: ring R = QQ[x, y];)")
        })
    }

    fn parse_ring_poly(&self, raw: &RawPoly, ring: &Ring) -> Result<Poly> {
        let p = parse_poly(&raw.text, &ring.vars, ring.field, &ring.order)
            .map_err(|e| err_at(self.src, raw.offset, &e.to_string()))?;
        Ok(ring.reduce(&p))
    }

    fn ctx_for(&mut self, window_name: &str, window: &Window) -> Arc<ClassifyCtx> {
        let cap = self.opts.pd_cap.unwrap_or_else(|| default_resolution_cap(&window.ring));
        self.ctxs
            .entry(window_name.to_string())
            .or_insert_with(|| Arc::new(ClassifyCtx::new(window, cap)))
            .clone()
    }

    fn cap_for(&self, ring: &Ring) -> usize {
        self.opts.pd_cap.unwrap_or_else(|| default_resolution_cap(ring))
    }

    fn declare(&mut self, stmt: &Stmt) -> Result<()> {
        match &stmt.kind {
            StmtKind::Ring { name, field, vars, quotient, gorenstein } => {
                let kind = match field {
                    FieldSpec::Rational => spectilt_core::arith::FieldKind::Rational,
                    FieldSpec::Prime(p) => spectilt_core::arith::FieldKind::prime(*p)
                        .map_err(|e| err_at(self.src, stmt.offset, &e.to_string()))?,
                };
                let ord = MonomialOrder::degrevlex(vars.len());
                let mut qgens = Vec::new();
                for raw in quotient {
                    qgens.push(
                        parse_poly(&raw.text, vars, kind, &ord)
                            .map_err(|e| err_at(self.src, raw.offset, &e.to_string()))?,
                    );
                }
                let ring = RingData::new(kind, vars.clone(), ord, qgens, *gorenstein)
                    .map_err(|e| err_at(self.src, stmt.offset, &e.to_string()))?;
                self.current_ring = Some(ring.clone());
                self.bind(name, stmt.offset, Binding::Ring(ring))
            }
            StmtKind::Prime { name, gens, assert_prime, height } => {
                let ring = self.current_ring(stmt.offset)?;
                let mut pgens = Vec::new();
                for raw in gens {
                    pgens.push(self.parse_ring_poly(raw, &ring)?);
                }
                let p = PrimeData::declare(&ring, pgens, *assert_prime, *height)
                    .map_err(|e| err_at(self.src, stmt.offset, &e.to_string()))?;
                self.bind(name, stmt.offset, Binding::Prime(p))
            }
            StmtKind::Window { name, primes } => {
                let mut ps = Vec::new();
                for arg in primes {
                    let pname = match &arg.atom {
                        Atom::Ident(s) => s,
                        _ => unreachable!("the parser admits only identifiers here"),
                    };
                    ps.push(self.lookup_prime(pname, arg.offset)?);
                }
                let ring = match ps.first() {
                    Some(p) => p.ring.clone(),
                    None => self.current_ring(stmt.offset)?,
                };
                let w = WindowData::new(&ring, ps)
                    .map_err(|e| err_at(self.src, stmt.offset, &e.to_string()))?;
                self.bind(name, stmt.offset, Binding::Window(w))
            }
            StmtKind::Module { name, rows, degrees, degrees_offset } => {
                let ring = self.current_ring(stmt.offset)?;
                let g = degrees.len();
                let mut rels = Vec::new();
                for (ri, row) in rows.iter().enumerate() {
                    if row.len() != g {
                        return Err(err_at(
                            self.src,
                            row.first().map(|r| r.offset).unwrap_or(*degrees_offset),
                            &format!(
                                "matrix row {} has {} entr{}, but the degree list declares {} generator{}",
                                ri + 1,
                                row.len(),
                                if row.len() == 1 { "y" } else { "ies" },
                                g,
                                if g == 1 { "" } else { "s" },
                            ),
                        ));
                    }
                    let mut coords = Vec::new();
                    for raw in row {
                        coords.push(self.parse_ring_poly(raw, &ring)?);
                    }
                    rels.push(ModVec { coords });
                }
                let m = FpModule::new(&ring, degrees.clone(), rels)
                    .map_err(|e| err_at(self.src, stmt.offset, &e.to_string()))?;
                self.bind(name, stmt.offset, Binding::Module(Arc::new(m)))
            }
            StmtKind::Seq { name, text, text_offset, window, window_offset } => {
                let w = self.lookup_window(window, *window_offset)?;
                let levels = self.parse_seq_text(text, *text_offset, &w)?;
                self.bind(
                    name,
                    stmt.offset,
                    Binding::Seq(SeqBinding { window_name: window.clone(), window: w, levels }),
                )
            }
            StmtKind::Command(_) => unreachable!("commands are dispatched separately"),
        }
    }

    /// Parse a level description like "Y1=p0,p1; Y2=p1" against a window.
    /// Labels are optional but checked for position when present; a labeled
    /// empty body declares an empty level, while a trailing unlabeled empty
    /// segment (from a trailing semicolon) is ignored.
    fn parse_seq_text(
        &self,
        text: &str,
        offset: usize,
        window: &Window,
    ) -> Result<Vec<BTreeSet<usize>>> {
        let mut levels = Vec::new();
        let segments: Vec<&str> = text.split(';').collect();
        for (k, segment) in segments.iter().enumerate() {
            let part = segment.trim();
            let body = match part.find('=') {
                Some(eq) => {
                    let label = part[..eq].trim();
                    let num: Option<usize> = label
                        .strip_prefix('Y')
                        .and_then(|rest| rest.parse().ok());
                    match num {
                        Some(n) if n == k + 1 => {}
                        Some(n) => {
                            return Err(err_at(
                                self.src,
                                offset,
                                &format!("level label Y{n} appears at position {}", k + 1),
                            ))
                        }
                        None => {
                            return Err(err_at(
                                self.src,
                                offset,
                                &format!("bad level label \"{label}\" (expected Y{} = ...)", k + 1),
                            ))
                        }
                    }
                    part[eq + 1..].trim()
                }
                None => {
                    if part.is_empty() {
                        if k + 1 == segments.len() {
                            continue;
                        }
                        return Err(err_at(
                            self.src,
                            offset,
                            &format!(
                                "empty level at position {}: declare an empty level explicitly as Y{}=",
                                k + 1,
                                k + 1
                            ),
                        ));
                    }
                    part
                }
            };
            let mut set = BTreeSet::new();
            for name in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let p = self.lookup_prime(name, offset)?;
                let idx = window.find(&p).ok_or_else(|| {
                    err_at(
                        self.src,
                        offset,
                        &format!("prime \"{name}\" = {} is not in the window", p.describe()),
                    )
                })?;
                set.insert(idx);
            }
            levels.push(set);
        }
        if levels.is_empty() {
            return Err(err_at(self.src, offset, "a sequence needs at least one level"));
        }
        Ok(levels)
    }

    fn check_flags(&self, cmd: &Command, allowed: &[&str]) -> Result<()> {
        for (name, _, offset) in &cmd.flags {
            if !allowed.contains(&name.as_str()) {
                return Err(err_at(
                    self.src,
                    *offset,
                    &format!(
                        "unknown flag --{name} for '{}' (flags: {})",
                        cmd.name,
                        if allowed.is_empty() {
                            "none".to_string()
                        } else {
                            allowed.iter().map(|f| format!("--{f}")).collect::<Vec<_>>().join(", ")
                        }
                    ),
                ));
            }
        }
        Ok(())
    }

    fn check_arity(&self, cmd: &Command, n: usize, usage: &str) -> Result<()> {
        if cmd.pos.len() != n {
            return Err(err_at(
                self.src,
                cmd.offset,
                &format!(
                    "'{}' takes {} positional argument{} (usage: {usage}), found {}",
                    cmd.name,
                    n,
                    if n == 1 { "" } else { "s" },
                    cmd.pos.len()
                ),
            ));
        }
        Ok(())
    }

    fn pos_ident(&self, cmd: &Command, k: usize, what: &str) -> Result<(String, usize)> {
        let arg = &cmd.pos[k];
        match &arg.atom {
            Atom::Ident(s) => Ok((s.clone(), arg.offset)),
            other => Err(err_at(
                self.src,
                arg.offset,
                &format!("expected {what}, found {}", other.display()),
            )),
        }
    }

    fn pos_int(&self, cmd: &Command, k: usize, what: &str) -> Result<i64> {
        let arg = &cmd.pos[k];
        match &arg.atom {
            Atom::Int(v) => Ok(*v),
            other => Err(err_at(
                self.src,
                arg.offset,
                &format!("expected {what}, found {}", other.display()),
            )),
        }
    }

    fn flag_value<'c>(&self, cmd: &'c Command, name: &str) -> Result<Option<&'c Arg>> {
        match cmd.flag(name) {
            None => Ok(None),
            Some((_, vals, offset)) => {
                if vals.len() != 1 {
                    return Err(err_at(
                        self.src,
                        *offset,
                        &format!("--{name} takes exactly one value"),
                    ));
                }
                Ok(Some(&vals[0]))
            }
        }
    }

    fn flag_int(&self, cmd: &Command, name: &str) -> Result<Option<i64>> {
        match self.flag_value(cmd, name)? {
            None => Ok(None),
            Some(arg) => match &arg.atom {
                Atom::Int(v) => Ok(Some(*v)),
                other => Err(err_at(
                    self.src,
                    arg.offset,
                    &format!("--{name} expects an integer, found {}", other.display()),
                )),
            },
        }
    }

    fn flag_ident(&self, cmd: &Command, name: &str) -> Result<Option<(String, usize)>> {
        match self.flag_value(cmd, name)? {
            None => Ok(None),
            Some(arg) => match &arg.atom {
                Atom::Ident(s) => Ok(Some((s.clone(), arg.offset))),
                other => Err(err_at(
                    self.src,
                    arg.offset,
                    &format!("--{name} expects a name, found {}", other.display()),
                )),
            },
        }
    }

    /// Resolve `--seq`: either a declared sequence name, or an inline quoted
    /// description together with `--window`.
    fn resolve_seq(&mut self, cmd: &Command) -> Result<SeqBinding> {
        let arg = self.flag_value(cmd, "seq")?.ok_or_else(|| {
            err_at(self.src, cmd.offset, &format!("'{}' needs --seq", cmd.name))
        })?;
        match &arg.atom {
            Atom::Ident(name) => {
                if cmd.flag("window").is_some() {
                    return Err(err_at(
                        self.src,
                        arg.offset,
                        "--window applies only to inline sequence literals; a declared sequence carries its window",
                    ));
                }
                match self.lookup(name, arg.offset)? {
                    Binding::Seq(s) => Ok(s.clone()),
                    other => Err(err_at(
                        self.src,
                        arg.offset,
                        &format!("\"{name}\" is a {}, but a sequence is needed here", other.kind()),
                    )),
                }
            }
            Atom::Str(text) => {
                let (wname, woff) = self.flag_ident(cmd, "window")?.ok_or_else(|| {
                    err_at(
                        self.src,
                        arg.offset,
                        "an inline sequence literal needs --window naming its window",
                    )
                })?;
                let window = self.lookup_window(&wname, woff)?;
                let levels = self.parse_seq_text(text, arg.offset, &window)?;
                Ok(SeqBinding { window_name: wname, window, levels })
            }
            other => Err(err_at(
                self.src,
                arg.offset,
                &format!(
                    "--seq expects a sequence name or a quoted level description, found {}",
                    other.display()
                ),
            )),
        }
    }

    fn command(&mut self, cmd: &Command) -> Result<Report> {
        match cmd.name.as_str() {
            "show" => self.cmd_show(cmd),
            "resolve" => self.cmd_resolve(cmd),
            "ext" => self.cmd_ext_tor(cmd, true),
            "tor" => self.cmd_ext_tor(cmd, false),
            "bass" => self.cmd_bass(cmd),
            "ass" => self.cmd_ass(cmd),
            "transpose" => self.cmd_transpose(cmd),
            "lp" => self.cmd_lp(cmd),
            "functor-check" => self.cmd_functor_check(cmd),
            "validate-sequence" => self.cmd_validate(cmd),
            "enumerate" => self.cmd_enumerate(cmd),
            "membership" => self.cmd_membership(cmd),
            "generators" => self.cmd_generators(cmd),
            "cm" => self.cmd_cm(cmd),
            "chi" => self.cmd_chi(cmd),
            "serre" => self.cmd_serre(cmd),
            "hochster" => self.cmd_hochster(cmd),
            "gen-suite" => self.cmd_gen_suite(cmd),
            other => Err(err_at(
                self.src,
                cmd.offset,
                &format!(
                    "unknown command '{other}' (commands: show, resolve, ext, tor, bass, ass, transpose, lp, functor-check, validate-sequence, enumerate, membership, generators, cm, chi, serre, hochster, gen-suite)"
                ),
            )),
        }
    }

    fn cmd_show(&mut self, cmd: &Command) -> Result<Report> {
        self.check_flags(cmd, &[])?;
        self.check_arity(cmd, 1, "show NAME")?;
        let (name, offset) = self.pos_ident(cmd, 0, "a declared name")?;
        let binding = self.lookup(&name, offset)?.clone();
        let (payload, text) = match &binding {
            Binding::Ring(r) => {
                let field = match r.field {
                    spectilt_core::arith::FieldKind::Rational => "QQ".to_string(),
                    spectilt_core::arith::FieldKind::Prime(p) => format!("FF({p})"),
                };
                let quotient: Vec<String> =
                    r.quotient.gens.iter().map(|g| poly_text(g, &r.vars)).collect();
                let text = format!(
                    "ring {name}: {field}[{}]{}, dimension {}, graded: {}, gorenstein asserted: {}",
                    r.vars.join(", "),
                    if quotient.is_empty() {
                        String::new()
                    } else {
                        format!(" / ({})", quotient.join(", "))
                    },
                    r.dim,
                    r.graded,
                    r.gorenstein_asserted
                );
                (
                    json!({
                        "object": {
                            "field": field,
                            "vars": r.vars,
                            "quotient": quotient,
                            "dim": r.dim,
                            "graded": r.graded,
                            "gorenstein_asserted": r.gorenstein_asserted,
                        },
                        "name": name,
                    }),
                    text,
                )
            }
            Binding::Prime(p) => {
                let text = format!(
                    "prime {name} = {}, height {}, certificate: {}",
                    p.describe(),
                    p.height,
                    p.cert.label()
                );
                (json!({ "object": prime_payload(p), "name": name }), text)
            }
            Binding::Window(w) => {
                let mut lines = vec![format!("window {name}: {} prime(s)", w.len())];
                for (i, p) in w.primes.iter().enumerate() {
                    lines.push(format!(
                        "  [{i}] {} height {} certificate {}",
                        p.describe(),
                        p.height,
                        p.cert.label()
                    ));
                }
                (json!({ "object": window_payload(w), "name": name }), lines.join("\n"))
            }
            Binding::Module(m) => {
                let lines = module_text_lines(&format!("module {name}"), m, self.opts.degree_bound)?;
                (
                    json!({ "object": module_payload(m, self.opts.degree_bound)?, "name": name }),
                    lines.join("\n"),
                )
            }
            Binding::Seq(s) => {
                let text = format!(
                    "seq {name} over {}: {}",
                    s.window_name,
                    levels_text(&s.window, &s.levels)
                );
                (
                    json!({
                        "object": {
                            "window": s.window_name,
                            "levels": levels_payload(&s.window, &s.levels),
                        },
                        "name": name,
                    }),
                    text,
                )
            }
        };
        Ok(Report::new(&cmd.echo(), "show", payload, text))
    }

    fn cmd_resolve(&mut self, cmd: &Command) -> Result<Report> {
        self.check_flags(cmd, &["length"])?;
        self.check_arity(cmd, 1, "resolve M [--length K]")?;
        let (name, offset) = self.pos_ident(cmd, 0, "a module name")?;
        let m = self.lookup_module(&name, offset)?;
        let cap = match self.flag_int(cmd, "length")? {
            Some(v) if v >= 0 => v as usize,
            Some(v) => {
                return Err(err_at(self.src, cmd.offset, &format!("--length must be nonnegative, found {v}")))
            }
            None => self.cap_for(&m.ring),
        };
        let res = free_resolution(&m, cap)?;
        let ranks: Vec<usize> = (0..=res.len()).map(|i| res.rank(i)).collect();
        let betti = if res.graded {
            let rows: Vec<Value> = res
                .betti()?
                .into_iter()
                .map(|row| {
                    Value::Array(row.into_iter().map(|(d, c)| json!([d, c])).collect())
                })
                .collect();
            Value::Array(rows)
        } else {
            Value::Null
        };
        let mut lines = vec![format!(
            "resolution of {name}: pd = {}, {}",
            res.pd(),
            if res.complete { "complete" } else { "cut at the cap" }
        )];
        for (i, degs) in res.degs.iter().enumerate() {
            lines.push(format!("  F_{i}: rank {}, degrees {:?}", degs.len(), degs));
        }
        let payload = json!({
            "module": name,
            "pd": res.pd().to_string(),
            "complete": res.complete,
            "ranks": ranks,
            "betti": betti,
        });
        Ok(Report::new(&cmd.echo(), "resolve", payload, lines.join("\n")))
    }

    fn cmd_ext_tor(&mut self, cmd: &Command, is_ext: bool) -> Result<Report> {
        let label = if is_ext { "ext" } else { "tor" };
        self.check_flags(cmd, &[])?;
        self.check_arity(cmd, 3, &format!("{label} I M N"))?;
        let i = self.pos_int(cmd, 0, "a homological degree")?;
        if i < 0 {
            return Err(err_at(self.src, cmd.offset, "the homological degree must be nonnegative"));
        }
        let (mname, moff) = self.pos_ident(cmd, 1, "a module name")?;
        let (nname, noff) = self.pos_ident(cmd, 2, "a module name")?;
        let m = self.lookup_module(&mname, moff)?;
        let n = self.lookup_module(&nname, noff)?;
        let cap = self.cap_for(&m.ring);
        let result = if is_ext {
            ext_module(i as usize, &m, &n, cap)?
        } else {
            tor_module(i as usize, &m, &n, cap)?
        };
        let head = if is_ext {
            format!("Ext^{i}({mname}, {nname})")
        } else {
            format!("Tor_{i}({mname}, {nname})")
        };
        let lines = module_text_lines(&head, &result, self.opts.degree_bound)?;
        let payload = json!({
            "i": i,
            "left": mname,
            "right": nname,
            "module": module_payload(&result, self.opts.degree_bound)?,
        });
        Ok(Report::new(&cmd.echo(), label, payload, lines.join("\n")))
    }

    fn cmd_bass(&mut self, cmd: &Command) -> Result<Report> {
        self.check_flags(cmd, &["max"])?;
        self.check_arity(cmd, 2, "bass P M --max K (P a prime or a window)")?;
        let (pname, poff) = self.pos_ident(cmd, 0, "a prime or window name")?;
        let (mname, moff) = self.pos_ident(cmd, 1, "a module name")?;
        let m = self.lookup_module(&mname, moff)?;
        let primes: Vec<Prime> = match self.lookup(&pname, poff)? {
            Binding::Prime(p) => vec![p.clone()],
            Binding::Window(w) => w.primes.to_vec(),
            other => {
                return Err(err_at(
                    self.src,
                    poff,
                    &format!(
                        "\"{pname}\" is a {}, but a prime or window is needed here",
                        other.kind()
                    ),
                ))
            }
        };
        let max = match self.flag_int(cmd, "max")? {
            Some(v) if v >= 0 => v as usize,
            Some(v) => {
                return Err(err_at(self.src, cmd.offset, &format!("--max must be nonnegative, found {v}")))
            }
            None => m.ring.dim.max(0) as usize,
        };
        let cap = self.cap_for(&m.ring);
        let rows: Vec<Result<Vec<usize>>> = par_map(self.opts.jobs, &primes, |p| {
            (0..=max).map(|i| bass_invariant(i, p, &m, cap)).collect()
        });
        let mut json_rows = Vec::new();
        let mut text_rows = Vec::new();
        for (p, row) in primes.iter().zip(rows) {
            let row = row?;
            json_rows.push(json!({ "prime": p.describe(), "values": row }));
            let mut cells = vec![p.describe()];
            cells.extend(row.iter().map(|v| v.to_string()));
            text_rows.push(cells);
        }
        let mut headers = vec!["prime".to_string()];
        headers.extend((0..=max).map(|i| format!("i={i}")));
        let mut lines = vec![format!("bass invariants mu_i(p, {mname}) (window-relative)")];
        lines.extend(table(&headers, &text_rows));
        let payload = json!({ "module": mname, "max": max, "rows": json_rows });
        Ok(Report::new(&cmd.echo(), "bass", payload, lines.join("\n")))
    }

    fn cmd_ass(&mut self, cmd: &Command) -> Result<Report> {
        self.check_flags(cmd, &["window"])?;
        self.check_arity(cmd, 1, "ass M --window W")?;
        let (mname, moff) = self.pos_ident(cmd, 0, "a module name")?;
        let m = self.lookup_module(&mname, moff)?;
        let (wname, woff) = self.flag_ident(cmd, "window")?.ok_or_else(|| {
            err_at(self.src, cmd.offset, "'ass' needs --window naming the window to test in")
        })?;
        let w = self.lookup_window(&wname, woff)?;
        let cap = self.cap_for(&m.ring);
        let ass = associated_in_window(&m, &w, cap)?;
        let supp = support_in_window(&m, &w)?;
        let names = |idx: &[usize]| -> Vec<String> {
            idx.iter().map(|&i| w.primes[i].describe()).collect()
        };
        let ass_names = names(&ass);
        let supp_names = names(&supp);
        let text = format!(
            "associated primes of {mname} in {wname}: {{{}}}\nsupport of {mname} in {wname}: {{{}}}",
            ass_names.join(", "),
            supp_names.join(", ")
        );
        let payload = json!({
            "module": mname,
            "window": wname,
            "associated": ass_names,
            "support": supp_names,
        });
        Ok(Report::new(&cmd.echo(), "ass", payload, text))
    }

    fn cmd_transpose(&mut self, cmd: &Command) -> Result<Report> {
        self.check_flags(cmd, &[])?;
        self.check_arity(cmd, 1, "transpose M")?;
        let (mname, moff) = self.pos_ident(cmd, 0, "a module name")?;
        let m = self.lookup_module(&mname, moff)?;
        let t = transpose(&m)?;
        let mut lines = vec![format!(
            "transpose of {mname} ({})",
            t.minimality.label()
        )];
        lines.extend(module_text_lines("Tr", &t.module, self.opts.degree_bound)?);
        let payload = json!({
            "module": mname,
            "minimality": t.minimality.label(),
            "result": module_payload(&t.module, self.opts.degree_bound)?,
        });
        Ok(Report::new(&cmd.echo(), "transpose", payload, lines.join("\n")))
    }

    fn cmd_lp(&mut self, cmd: &Command) -> Result<Report> {
        self.check_flags(cmd, &[])?;
        self.check_arity(cmd, 1, "lp P")?;
        let (pname, poff) = self.pos_ident(cmd, 0, "a prime name")?;
        let p = self.lookup_prime(&pname, poff)?;
        let cap = self.cap_for(&p.ring);
        let l = lp_module(&p, cap)?;
        let pd = free_resolution(&l, cap)?.pd();
        let mut lines = vec![format!(
            "generator module L({}) for height {}: pd = {pd}",
            p.describe(),
            p.height
        )];
        lines.extend(module_text_lines("L", &l, self.opts.degree_bound)?);
        let payload = json!({
            "prime": p.describe(),
            "height": p.height,
            "pd": pd.to_string(),
            "module": module_payload(&l, self.opts.degree_bound)?,
        });
        Ok(Report::new(&cmd.echo(), "lp", payload, lines.join("\n")))
    }

    fn cmd_functor_check(&mut self, cmd: &Command) -> Result<Report> {
        self.check_flags(cmd, &["n", "suite"])?;
        self.check_arity(cmd, 1, "functor-check U --n K --suite M1,M2")?;
        let (uname, uoff) = self.pos_ident(cmd, 0, "a module name")?;
        let u = self.lookup_module(&uname, uoff)?;
        let n = match self.flag_int(cmd, "n")? {
            Some(v) if v >= 0 => v as usize,
            Some(v) => {
                return Err(err_at(self.src, cmd.offset, &format!("--n must be nonnegative, found {v}")))
            }
            None => return Err(err_at(self.src, cmd.offset, "'functor-check' needs --n")),
        };
        let (_, suite_args, soff) = cmd
            .flag("suite")
            .ok_or_else(|| err_at(self.src, cmd.offset, "'functor-check' needs --suite M1,M2,..."))?;
        if suite_args.is_empty() {
            return Err(err_at(self.src, *soff, "--suite needs at least one module name"));
        }
        let mut suite_names = Vec::new();
        let mut suite = Vec::new();
        for arg in suite_args {
            match &arg.atom {
                Atom::Ident(s) => {
                    suite.push((*self.lookup_module(s, arg.offset)?).clone());
                    suite_names.push(s.clone());
                }
                other => {
                    return Err(err_at(
                        self.src,
                        arg.offset,
                        &format!("--suite expects module names, found {}", other.display()),
                    ))
                }
            }
        }
        let cap = self.cap_for(&u.ring);
        let report = functor_iso_check(&u, n, &suite, self.opts.degree_bound, cap)?;
        let mut entries = Vec::new();
        let mut lines = vec![format!(
            "functor comparison for {uname} at n = {n}: {}",
            if report.all_equal() { "isomorphic on the suite" } else { "MISMATCH" }
        )];
        for e in &report.entries {
            let sname = &suite_names[e.suite_index];
            let fmt_mm = |mm: &[spectilt_core::transpose::HilbertMismatch]| -> Vec<Value> {
                mm.iter().map(|x| json!({ "degree": x.degree, "left": x.left, "right": x.right })).collect()
            };
            entries.push(json!({
                "suite": sname,
                "ext_side_mismatches": fmt_mm(&e.ext_side),
                "tor_side_mismatches": fmt_mm(&e.tor_side),
                "agree": e.equal(),
            }));
            lines.push(format!(
                "  on {sname}: Ext^{n}(U, -) vs Tor_1(Tr, -): {}; Ext^1(Tr, -) vs Tor_{n}(-, U): {}",
                if e.ext_side.is_empty() { "equal" } else { "MISMATCH" },
                if e.tor_side.is_empty() { "equal" } else { "MISMATCH" },
            ));
        }
        let payload = json!({
            "module": uname,
            "n": n,
            "suite": suite_names,
            "entries": entries,
            "verdict": if report.all_equal() { "isomorphic-on-suite" } else { "mismatch" },
        });
        Ok(Report::new(&cmd.echo(), "functor-check", payload, lines.join("\n")))
    }

    fn cmd_validate(&mut self, cmd: &Command) -> Result<Report> {
        self.check_flags(cmd, &["seq", "window"])?;
        self.check_arity(cmd, 0, "validate-sequence --seq S")?;
        let s = self.resolve_seq(cmd)?;
        let ctx = self.ctx_for(&s.window_name, &s.window);
        let report = validate_levels(&ctx, &s.levels)?;
        let coord = |lp: &spectilt_core::classify::LevelPair| {
            json!({ "level": lp.level, "prime": s.window.primes[lp.prime].describe() })
        };
        let mut lines = vec![
            format!("sequence over {}: {}", s.window_name, levels_text(&s.window, &s.levels)),
            format!("valid: {}", if report.valid() { "yes" } else { "no" }),
        ];
        for lp in &report.not_up_closed {
            lines.push(format!(
                "  level {} is not closed upward: missing {}",
                lp.level,
                s.window.primes[lp.prime].describe()
            ));
        }
        for lp in &report.not_descending {
            lines.push(format!(
                "  level {} is not contained in level {}: {}",
                lp.level,
                lp.level - 1,
                s.window.primes[lp.prime].describe()
            ));
        }
        for (lp, v) in &report.bass_failures {
            lines.push(format!(
                "  mu_{}({}, R) = {v} != 0 at level {}",
                lp.level - 1,
                s.window.primes[lp.prime].describe(),
                lp.level
            ));
        }
        let payload = json!({
            "window": s.window_name,
            "levels": levels_payload(&s.window, &s.levels),
            "n": report.n,
            "valid": report.valid(),
            "not_up_closed": report.not_up_closed.iter().map(&coord).collect::<Vec<_>>(),
            "not_descending": report.not_descending.iter().map(&coord).collect::<Vec<_>>(),
            "bass_failures": report
                .bass_failures
                .iter()
                .map(|(lp, v)| {
                    json!({
                        "level": lp.level,
                        "prime": s.window.primes[lp.prime].describe(),
                        "value": v,
                    })
                })
                .collect::<Vec<_>>(),
            "height_failures": report.height_failures.iter().map(&coord).collect::<Vec<_>>(),
            "variant_agrees": report.variant_agrees,
        });
        Ok(Report::new(&cmd.echo(), "validate-sequence", payload, lines.join("\n")))
    }

    fn cmd_enumerate(&mut self, cmd: &Command) -> Result<Report> {
        self.check_flags(cmd, &["n", "window"])?;
        self.check_arity(cmd, 0, "enumerate --n K --window W")?;
        let n = match self.flag_int(cmd, "n")? {
            Some(v) if v >= 1 => v as usize,
            Some(v) => {
                return Err(err_at(self.src, cmd.offset, &format!("--n must be at least 1, found {v}")))
            }
            None => return Err(err_at(self.src, cmd.offset, "'enumerate' needs --n")),
        };
        let (wname, woff) = self.flag_ident(cmd, "window")?.ok_or_else(|| {
            err_at(self.src, cmd.offset, "'enumerate' needs --window")
        })?;
        let window = self.lookup_window(&wname, woff)?;
        let ctx = self.ctx_for(&wname, &window);
        let en = enumerate_sequences(&ctx, n)?;
        let mut lines = vec![format!(
            "valid sequences of length {n} over {wname}: {}",
            en.sequences.len()
        )];
        let sequences: Vec<Value> = en
            .sequences
            .iter()
            .map(|levels| {
                lines.push(format!("  {}", levels_text(&window, levels)));
                levels_payload(&window, levels)
            })
            .collect();
        let counts: Vec<Value> = en
            .counts_by_last
            .iter()
            .map(|(last, c)| {
                let names: Vec<String> =
                    last.iter().map(|&i| window.primes[i].describe()).collect();
                json!({ "last": names, "count": c })
            })
            .collect();
        let payload = json!({
            "window": wname,
            "n": n,
            "count": en.sequences.len(),
            "sequences": sequences,
            "counts_by_last": counts,
        });
        Ok(Report::new(&cmd.echo(), "enumerate", payload, lines.join("\n")))
    }

    fn cmd_membership(&mut self, cmd: &Command) -> Result<Report> {
        self.check_flags(cmd, &["seq", "window", "side", "method", "minimal-only"])?;
        self.check_arity(cmd, 1, "membership M --seq S --side cotilting --method all")?;
        let (mname, moff) = self.pos_ident(cmd, 0, "a module name")?;
        let m = self.lookup_module(&mname, moff)?;
        let s = self.resolve_seq(cmd)?;
        let (side_name, side_off) = self.flag_ident(cmd, "side")?.ok_or_else(|| {
            err_at(self.src, cmd.offset, "'membership' needs --side cotilting or --side tilting")
        })?;
        let side = Side::parse(&side_name)
            .ok_or_else(|| err_at(self.src, side_off, &format!("unknown side \"{side_name}\" (sides: cotilting, tilting)")))?;
        let (method_name, method_off) = self.flag_ident(cmd, "method")?.ok_or_else(|| {
            err_at(self.src, cmd.offset, "'membership' needs --method (a method name or 'all')")
        })?;
        let minimal_only = match cmd.flag("minimal-only") {
            Some((_, vals, off)) => {
                if !vals.is_empty() {
                    return Err(err_at(self.src, *off, "--minimal-only takes no value"));
                }
                true
            }
            None => false,
        };
        let ctx = self.ctx_for(&s.window_name, &s.window);
        let seq = SpecSeq::new(&s.window, s.levels.clone())?;
        let methods: Vec<Method> = if method_name == "all" {
            Method::for_side(side)
                .into_iter()
                .filter(|m| match m {
                    Method::GorensteinL => ctx.ring().gorenstein_asserted,
                    Method::Divisibility => seq.n() == 1,
                    _ => true,
                })
                .collect()
        } else {
            vec![Method::parse(&method_name).ok_or_else(|| {
                err_at(
                    self.src,
                    method_off,
                    &format!(
                        "unknown method \"{method_name}\" (methods: bass, ext, tor-transpose, gorenstein-L, tor, ext-transpose, divisibility, all)"
                    ),
                )
            })?]
        };
        let verdicts: Vec<Result<(spectilt_core::classify::MembershipVerdict, bool)>> =
            par_map(self.opts.jobs, &methods, |method| {
                if minimal_only {
                    membership_opts(&ctx, &m, &seq, side, *method, true).map(|v| (v, true))
                } else {
                    membership(&ctx, &m, &seq, side, *method)
                        .map(|v| (v, method.restricts_to_minimal()))
                }
            });
        let mut method_results = Vec::new();
        let mut text_methods = Vec::new();
        let mut first: Option<spectilt_core::classify::MembershipVerdict> = None;
        let mut caveats: BTreeSet<String> = BTreeSet::new();
        for res in verdicts {
            let (v, used_minimal) = res?;
            caveats.extend(v.caveats.iter().cloned());
            method_results.push(verdict_payload(&s.window, &v, used_minimal));
            let mut line = format!(
                "  {}: {}",
                v.method.label(),
                if v.member { "member" } else { "not a member" }
            );
            if let Some(w) = v.witnesses.first() {
                line.push_str(&format!(
                    " (witness at level {}, p = {}: {}: {})",
                    w.level,
                    s.window.primes[w.prime].describe(),
                    w.invariant,
                    w.value
                ));
            }
            text_methods.push(line);
            if let Some(f) = &first {
                if f.member != v.member {
                    return Err(Error::internal(format!(
                        "membership methods disagree on {mname}: {} says {}, {} says {}",
                        f.method.label(),
                        f.member,
                        v.method.label(),
                        v.member
                    )));
                }
            } else {
                first = Some(v);
            }
        }
        let first = first.expect("at least one method ran");
        let verdict = if first.member { "member" } else { "not-member" };
        let witnesses: Vec<Value> =
            first.witnesses.iter().map(|w| witness_payload(&s.window, w)).collect();
        let mut lines = vec![
            format!(
                "membership of {mname} ({} side) for {}",
                side.label(),
                levels_text(&s.window, &s.levels)
            ),
            format!("verdict: {verdict}"),
        ];
        lines.extend(text_methods);
        lines.push("caveats:".to_string());
        for c in &caveats {
            lines.push(format!("  - {c}"));
        }
        let payload = json!({
            "module": mname,
            "side": side.label(),
            "window": s.window_name,
            "levels": levels_payload(&s.window, &s.levels),
            "verdict": verdict,
            "method_results": method_results,
            "witnesses": witnesses,
            "caveats": caveats.iter().collect::<Vec<_>>(),
        });
        Ok(Report::new(&cmd.echo(), "membership", payload, lines.join("\n")))
    }

    fn cmd_generators(&mut self, cmd: &Command) -> Result<Report> {
        self.check_flags(cmd, &["seq", "window"])?;
        self.check_arity(cmd, 0, "generators --seq S")?;
        let s = self.resolve_seq(cmd)?;
        let ctx = self.ctx_for(&s.window_name, &s.window);
        let seq = SpecSeq::new(&s.window, s.levels.clone())?;
        let gens = resolving_generators(&ctx, &seq)?;
        let mut lines = vec![format!(
            "resolving generators for {}: {} module(s)",
            levels_text(&s.window, &s.levels),
            gens.labels.len()
        )];
        let mut items = Vec::new();
        for ((label, module), pd) in gens.labels.iter().zip(&gens.modules).zip(&gens.pds) {
            lines.push(format!("  {label} (pd {pd}, {} generator(s))", module.gen_degs.len()));
            items.push(json!({
                "label": label,
                "pd": pd,
                "gen_degs": module.gen_degs,
            }));
        }
        let payload = json!({
            "window": s.window_name,
            "levels": levels_payload(&s.window, &s.levels),
            "generators": items,
        });
        Ok(Report::new(&cmd.echo(), "generators", payload, lines.join("\n")))
    }

    fn cmd_cm(&mut self, cmd: &Command) -> Result<Report> {
        self.check_flags(cmd, &[])?;
        self.check_arity(cmd, 1, "cm M")?;
        let (mname, moff) = self.pos_ident(cmd, 0, "a module name")?;
        let m = self.lookup_module(&mname, moff)?;
        let r = cm_report(&m, self.cap_for(&m.ring))?;
        let text = format!(
            "cm {mname}: depth {}, dimension {}, Cohen-Macaulay: {}",
            r.depth,
            r.dimension,
            if r.cohen_macaulay { "yes" } else { "no" }
        );
        let payload = json!({
            "module": mname,
            "depth": r.depth,
            "dimension": r.dimension,
            "cohen_macaulay": r.cohen_macaulay,
        });
        Ok(Report::new(&cmd.echo(), "cm", payload, text))
    }

    fn cmd_chi(&mut self, cmd: &Command) -> Result<Report> {
        self.check_flags(cmd, &[])?;
        self.check_arity(cmd, 2, "chi M N")?;
        let (mname, moff) = self.pos_ident(cmd, 0, "a module name")?;
        let (nname, noff) = self.pos_ident(cmd, 1, "a module name")?;
        let m = self.lookup_module(&mname, moff)?;
        let n = self.lookup_module(&nname, noff)?;
        let r = chi(&m, &n, self.cap_for(&m.ring))?;
        let text = format!(
            "chi({mname}, {nname}) = {} (lengths of Tor_i: {})",
            r.value,
            r.lengths.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
        );
        let payload = json!({
            "left": mname,
            "right": nname,
            "lengths": r.lengths,
            "value": r.value,
        });
        Ok(Report::new(&cmd.echo(), "chi", payload, text))
    }

    fn cmd_serre(&mut self, cmd: &Command) -> Result<Report> {
        self.check_flags(cmd, &[])?;
        self.check_arity(cmd, 2, "serre M N")?;
        let (mname, moff) = self.pos_ident(cmd, 0, "a module name")?;
        let (nname, noff) = self.pos_ident(cmd, 1, "a module name")?;
        let m = self.lookup_module(&mname, moff)?;
        let n = self.lookup_module(&nname, noff)?;
        let r = serre_check(&m, &n, self.cap_for(&m.ring))?;
        let text = format!(
            "serre({mname}, {nname}): case {}, chi = {}, dim {} + dim {} {} dim {}, {}",
            r.case_label(),
            r.chi.value,
            r.dim_m,
            r.dim_n,
            if r.dimension_inequality { "<=" } else { "EXCEEDS" },
            r.dim_ring,
            if r.passed() { "ok" } else { "FAILED" }
        );
        let payload = json!({
            "left": mname,
            "right": nname,
            "dim_left": r.dim_m,
            "dim_right": r.dim_n,
            "dim_ring": r.dim_ring,
            "chi": r.chi.value,
            "tor_lengths": r.chi.lengths,
            "case": r.case_label(),
            "dimension_inequality": r.dimension_inequality,
            "ok": r.passed(),
        });
        Ok(Report::new(&cmd.echo(), "serre", payload, text))
    }

    fn cmd_hochster(&mut self, cmd: &Command) -> Result<Report> {
        self.check_flags(cmd, &["window", "suite"])?;
        self.check_arity(cmd, 2, "hochster P K --window W")?;
        let (pname, poff) = self.pos_ident(cmd, 0, "a prime name")?;
        let (kname, koff) = self.pos_ident(cmd, 1, "a module name")?;
        let p = self.lookup_prime(&pname, poff)?;
        let k = self.lookup_module(&kname, koff)?;
        let (wname, woff) = self.flag_ident(cmd, "window")?.ok_or_else(|| {
            err_at(self.src, cmd.offset, "'hochster' needs --window")
        })?;
        let window = self.lookup_window(&wname, woff)?;
        let pi = window.find(&p).ok_or_else(|| {
            err_at(self.src, poff, &format!("prime \"{pname}\" = {} is not in the window", p.describe()))
        })?;
        let ctx = self.ctx_for(&wname, &window);
        let suite: Vec<FpModule> = match cmd.flag("suite") {
            Some((_, vals, soff)) => {
                if vals.is_empty() {
                    return Err(err_at(self.src, *soff, "--suite needs at least one module name"));
                }
                let mut out = Vec::new();
                for arg in vals {
                    match &arg.atom {
                        Atom::Ident(s) => out.push((*self.lookup_module(s, arg.offset)?).clone()),
                        other => {
                            return Err(err_at(
                                self.src,
                                arg.offset,
                                &format!("--suite expects module names, found {}", other.display()),
                            ))
                        }
                    }
                }
                out
            }
            None => {
                let mut out = vec![FpModule::ring_module(ctx.ring())];
                for i in 0..window.len() {
                    out.push(ctx.residue_module(i)?);
                }
                out
            }
        };
        let r = hochster_probe(&ctx, pi, &k, &suite)?;
        let class_line = match &r.class_comparison {
            Some(c) if c.agree() => format!("class comparison against L(p): agree on {} module(s)", c.checked),
            Some(c) => format!("class comparison against L(p): {} mismatch(es)", c.mismatches.len()),
            None => "class comparison skipped (a structural check failed)".to_string(),
        };
        let text = format!(
            "hochster probe at p = {} with candidate {kname}:\n  pd = {} (height {}): {}\n  Ass(K) = exactly {{p}}: {}\n  candidate Cohen-Macaulay: {}\n  {}",
            p.describe(),
            r.pd,
            r.height,
            if r.pd_matches_height { "ok" } else { "MISMATCH" },
            if r.ass_is_exactly_p { "ok" } else { "NO" },
            if r.candidate.cohen_macaulay { "yes" } else { "no" },
            class_line
        );
        let payload = json!({
            "prime": p.describe(),
            "candidate": kname,
            "height": r.height,
            "pd": r.pd,
            "pd_matches_height": r.pd_matches_height,
            "ass_of_candidate": r.ass_indices.iter().map(|&i| window.primes[i].describe()).collect::<Vec<_>>(),
            "ass_is_exactly_p": r.ass_is_exactly_p,
            "candidate_cm": r.candidate.cohen_macaulay,
            "structural_pass": r.structural_pass(),
            "class_comparison": match &r.class_comparison {
                Some(c) => json!({ "checked": c.checked, "agree": c.agree() }),
                None => Value::Null,
            },
        });
        Ok(Report::new(&cmd.echo(), "hochster", payload, text))
    }

    fn cmd_gen_suite(&mut self, cmd: &Command) -> Result<Report> {
        self.check_flags(cmd, &["max-degree"])?;
        self.check_arity(cmd, 2, "gen-suite COUNT PREFIX [--max-degree D]")?;
        let count = self.pos_int(cmd, 0, "a module count")?;
        if count < 1 {
            return Err(err_at(self.src, cmd.offset, "the module count must be at least 1"));
        }
        let (prefix, poff) = self.pos_ident(cmd, 1, "a name prefix")?;
        let maxd = match self.flag_int(cmd, "max-degree")? {
            Some(v) if v >= 1 => v as u32,
            Some(v) => {
                return Err(err_at(self.src, cmd.offset, &format!("--max-degree must be at least 1, found {v}")))
            }
            None => 2,
        };
        let ring = self.current_ring(cmd.offset)?;
        let nv = ring.nvars();
        let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed);
        let mut lines = vec![format!(
            "generated {count} cyclic module(s) over monomial ideals (seed {})",
            self.opts.seed
        )];
        let mut items = Vec::new();
        for k in 0..count {
            let ngens = rng.gen_range(1..=3usize);
            let mut exps: BTreeSet<Vec<u32>> = BTreeSet::new();
            for _ in 0..ngens {
                let d = rng.gen_range(1..=maxd);
                let mut e = vec![0u32; nv];
                for _ in 0..d {
                    e[rng.gen_range(0..nv)] += 1;
                }
                exps.insert(e);
            }
            let gens: Vec<Poly> = exps
                .iter()
                .map(|e| Poly::term(nv, Monomial::from_exps(e.clone()), ring.field.one()))
                .collect();
            let m = FpModule::cyclic(&ring, &gens)?;
            let name = format!("{prefix}{k}");
            let gen_strs: Vec<String> = gens.iter().map(|g| poly_text(g, &ring.vars)).collect();
            lines.push(format!("  {name} = R/({})", gen_strs.join(", ")));
            items.push(json!({ "name": name, "ideal": gen_strs }));
            self.bind(&name, poff, Binding::Module(Arc::new(m)))?;
        }
        let payload = json!({
            "count": count,
            "prefix": prefix,
            "seed": self.opts.seed,
            "modules": items,
        });
        Ok(Report::new(&cmd.echo(), "gen-suite", payload, lines.join("\n")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_session;

    fn run(src: &str) -> Result<Vec<Report>> {
        let opts = RunOptions::default();
        let stmts = parse_session(src)?;
        Evaluator::new(src, &opts).run(&stmts)
    }

    const PREAMBLE: &str = r#"
        ring R = QQ[x, y] gorenstein;
        prime p0 = () certify;
        prime px = (x) certify;
        prime py = (y) certify;
        prime m = (x, y) certify;
        window W = {p0, px, py, m};
        module RM = coker [] degrees [0];
        module K = coker [[x], [y]] degrees [0];
    "#;

    #[test]
    fn evaluates_a_bass_table_session() {
        let src = format!("{PREAMBLE} bass W RM --max 2;");
        let reports = run(&src).unwrap();
        assert_eq!(reports.len(), 1);
        let rows = reports[0].json["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0]["values"], json!([1, 0, 0]));
        assert_eq!(rows[1]["values"], json!([0, 1, 0]));
        assert_eq!(rows[3]["values"], json!([0, 0, 1]));
        assert!(reports[0].text.contains("i=2"));
    }

    #[test]
    fn evaluates_membership_and_enumeration() {
        let src = format!(
            r#"{PREAMBLE}
            seq S = "Y1=px,py,m; Y2=m" window W;
            membership RM --seq S --side cotilting --method all;
            membership K --seq S --side cotilting --method bass;
            enumerate --n 2 --window W;
            "#
        );
        let reports = run(&src).unwrap();
        assert_eq!(reports[0].json["verdict"], json!("member"));
        assert!(reports[0].json["method_results"].as_array().unwrap().len() >= 3);
        assert_eq!(reports[1].json["verdict"], json!("not-member"));
        let w = &reports[1].json["witnesses"][0];
        assert_eq!(w["prime"], json!("(x, y)"));
        assert_eq!(w["i"], json!(1));
        assert_eq!(reports[2].json["count"], json!(9));
    }

    #[test]
    fn membership_with_minimal_only_refuses_bass() {
        let src = format!(
            r#"{PREAMBLE}
            membership K --seq "Y1=px,py,m" --window W --side cotilting --method bass --minimal-only;
            "#
        );
        let err = run(&src).unwrap_err();
        assert!(err.to_string().contains("local"), "{err}");
    }

    #[test]
    fn reports_semantic_errors_with_positions() {
        let err = run("module M = coker [[x, y]] degrees [0];").unwrap_err();
        assert!(err.to_string().contains("no ring has been declared"), "{err}");

        let src = "ring R = QQ[x, y];\nmodule M = coker [[x, y]] degrees [0];";
        let err = run(src).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        assert!(msg.contains("row 1 has 2 entries, but the degree list declares 1 generator"), "{msg}");

        let src = "ring R = QQ[x, y];\nprime p = (z) certify;";
        let err = run(src).unwrap_err();
        assert!(err.to_string().contains("unknown variable \"z\""), "{err}");

        let src = format!("{PREAMBLE} bass Q RM;");
        let err = run(&src).unwrap_err();
        assert!(err.to_string().contains("unknown name \"Q\""), "{err}");
    }

    #[test]
    fn show_serializes_windows_with_poset() {
        let src = format!("{PREAMBLE} show W;");
        let reports = run(&src).unwrap();
        let obj = &reports[0].json["object"];
        assert_eq!(obj["primes"].as_array().unwrap().len(), 4);
        assert_eq!(obj["primes"][1]["gens"], json!(["x"]));
        assert_eq!(obj["primes"][1]["certificate"], json!("generated-by-variables"));
        let poset = obj["poset"].as_array().unwrap();
        assert_eq!(poset[0][3], json!(true));
        assert_eq!(poset[3][0], json!(false));
    }

    #[test]
    fn gen_suite_is_deterministic_for_a_fixed_seed() {
        let src = format!("{PREAMBLE} gen-suite 3 S; cm S0;");
        let a = run(&src).unwrap();
        let b = run(&src).unwrap();
        assert_eq!(
            serde_json::to_string(&a[0].json).unwrap(),
            serde_json::to_string(&b[0].json).unwrap()
        );
        assert!(a[1].json["depth"].is_number());
    }

    #[test]
    fn jobs_do_not_change_results() {
        let src = format!(
            r#"{PREAMBLE}
            bass W K --max 2;
            membership RM --seq "Y1=m; Y2=m" --window W --side cotilting --method all;
            "#
        );
        let stmts = parse_session(&src).unwrap();
        let seq_opts = RunOptions::default();
        let par_opts = RunOptions { jobs: 4, ..RunOptions::default() };
        let a = Evaluator::new(&src, &seq_opts).run(&stmts).unwrap();
        let b = Evaluator::new(&src, &par_opts).run(&stmts).unwrap();
        let render = |rs: &[Report]| {
            rs.iter().map(|r| serde_json::to_string(&r.json).unwrap()).collect::<Vec<_>>().join("\n")
        };
        assert_eq!(render(&a), render(&b));
    }
}
