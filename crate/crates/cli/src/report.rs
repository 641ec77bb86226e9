//! Report assembly: every command produces one `Report` holding the
//! command echo, a JSON value with deterministically ordered keys, and a
//! plain-text rendering. Helpers here serialize the shared shapes
//! (modules, primes, witness lists) identically across commands.

use serde_json::{json, Value};
use spectilt_core::classify::{MembershipVerdict, WitnessEntry};
use spectilt_core::error::Result;
use spectilt_core::fpmod::FpModule;
use spectilt_core::gb::ModVec;
use spectilt_core::ring::{PrimeData, Window};
use spectilt_core::text::poly_text;

#[derive(Clone, Debug)]
pub struct Report {
    pub echo: String,
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn new(echo: &str, kind: &str, mut payload: Value, text: String) -> Report {
        let obj = payload.as_object_mut().expect("report payloads are objects");
        obj.insert("command".to_string(), json!(echo));
        obj.insert("kind".to_string(), json!(kind));
        Report { echo: echo.to_string(), json: payload, text }
    }
}

pub fn row_strings(row: &ModVec, m: &FpModule) -> Vec<String> {
    row.coords.iter().map(|p| poly_text(p, &m.ring.vars)).collect()
}

/// Presentation + Hilbert sample of a module. Hilbert values run from the
/// smallest generator degree through `degree_bound` more; they are omitted
/// for non-graded presentations.
pub fn module_payload(m: &FpModule, degree_bound: i64) -> Result<Value> {
    let rows: Vec<Vec<String>> = m.rels.iter().map(|r| row_strings(r, m)).collect();
    let hilbert = if m.graded && !m.is_zero_module() {
        let lo = m.gen_degs.iter().copied().min().unwrap_or(0);
        let mut vals = Vec::new();
        for t in lo..=lo + degree_bound {
            vals.push(json!([t, m.hilbert_function(t)?]));
        }
        Value::Array(vals)
    } else {
        Value::Null
    };
    Ok(json!({
        "gen_degs": m.gen_degs,
        "relations": rows,
        "graded": m.graded,
        "is_zero": m.is_zero_module(),
        "dimension": m.dimension()?,
        "hilbert": hilbert,
    }))
}

pub fn module_text_lines(label: &str, m: &FpModule, degree_bound: i64) -> Result<Vec<String>> {
    let mut out = Vec::new();
    if m.is_zero_module() {
        out.push(format!("{label}: the zero module"));
        return Ok(out);
    }
    out.push(format!(
        "{label}: {} generator(s) in degree(s) {:?}, {} relation(s)",
        m.gen_degs.len(),
        m.gen_degs,
        m.rels.len()
    ));
    for r in &m.rels {
        out.push(format!("  relation [{}]", row_strings(r, m).join(", ")));
    }
    if m.graded {
        let lo = m.gen_degs.iter().copied().min().unwrap_or(0);
        let vals: Vec<String> = (lo..=lo + degree_bound)
            .map(|t| m.hilbert_function(t).map(|v| format!("{v}")))
            .collect::<Result<_>>()?;
        out.push(format!(
            "  hilbert function on degrees {}..{}: {}",
            lo,
            lo + degree_bound,
            vals.join(" ")
        ));
    }
    Ok(out)
}

pub fn prime_payload(p: &PrimeData) -> Value {
    let gens: Vec<String> = p.ideal.gens.iter().map(|g| poly_text(g, &p.ring.vars)).collect();
    json!({
        "gens": gens,
        "height": p.height,
        "certificate": p.cert.label(),
    })
}

pub fn window_payload(w: &Window) -> Value {
    let primes: Vec<Value> = w.primes.iter().map(|p| prime_payload(p)).collect();
    let poset: Vec<Vec<bool>> = (0..w.len())
        .map(|i| (0..w.len()).map(|j| w.below(i, j)).collect())
        .collect();
    json!({ "primes": primes, "poset": poset })
}

pub fn levels_payload(window: &Window, levels: &[std::collections::BTreeSet<usize>]) -> Value {
    let arr: Vec<Value> = levels
        .iter()
        .map(|l| Value::Array(l.iter().map(|&i| json!(window.primes[i].describe())).collect()))
        .collect();
    Value::Array(arr)
}

pub fn levels_text(window: &Window, levels: &[std::collections::BTreeSet<usize>]) -> String {
    levels
        .iter()
        .enumerate()
        .map(|(k, l)| {
            let names: Vec<String> = l.iter().map(|&i| window.primes[i].describe()).collect();
            format!("Y{} = {{{}}}", k + 1, names.join(", "))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn witness_payload(window: &Window, w: &WitnessEntry) -> Value {
    json!({
        "prime": window.primes[w.prime].describe(),
        "i": w.level,
        "invariant": w.invariant,
        "value": w.value,
    })
}

pub fn verdict_payload(window: &Window, v: &MembershipVerdict, minimal_only: bool) -> Value {
    let witnesses: Vec<Value> = v.witnesses.iter().map(|w| witness_payload(window, w)).collect();
    json!({
        "method": v.method.label(),
        "minimal_only": minimal_only,
        "member": v.member,
        "witnesses": witnesses,
        "caveats": v.caveats,
    })
}

/// Fixed-width table: a header row and aligned columns, for the text mode.
pub fn table(headers: &[String], rows: &[Vec<String>]) -> Vec<String> {
    let ncols = headers.len();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (k, cell) in row.iter().enumerate().take(ncols) {
            widths[k] = widths[k].max(cell.len());
        }
    }
    let fmt_row = |cells: &[String]| -> String {
        cells
            .iter()
            .enumerate()
            .map(|(k, c)| format!("{:<width$}", c, width = widths[k]))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![fmt_row(headers)];
    out.push(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    for row in rows {
        out.push(fmt_row(row));
    }
    out
}
