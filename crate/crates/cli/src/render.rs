use serde_json::{json, Value};

use lasker_core::decompose::Decomposition;
use lasker_core::doc::{self, MinimalityDoc};
use lasker_core::lab::{Corpus, Status, SuiteReport};

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn status(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Vacuous => "VACUOUS",
    }
}

fn payload(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn decomposition(d: &Decomposition) -> String {
    let ring = d.target.ring();
    let qs: Vec<String> = d.components.iter().map(|c| c.q.describe()).collect();
    let mut out = format!("{} = {}\n", d.target.describe(), qs.join(" ∩ "));
    for c in &d.components {
        let s = ring.payload(&c.s).map(|v| payload(&v)).unwrap_or_default();
        out.push_str(&format!("  Q = {}  P = {}  s = {s}\n", c.q.describe(), c.p.describe()));
    }
    out.push_str(&format!("minimal: {}\n", yes(d.minimal.is_minimal())));
    out
}

pub fn minimality(m: &MinimalityDoc) -> String {
    let list = |v: &[usize]| v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ");
    let mut out = format!("distinct saturated radicals: {}\n", yes(m.distinct_radicals));
    out.push_str(&format!("irredundant: {}", yes(m.irredundant)));
    if !m.redundant.is_empty() {
        out.push_str(&format!(" (redundant components: {})", list(&m.redundant)));
    }
    out.push('\n');
    out.push_str(&format!("irredundant, unsaturated form: {}\n", yes(m.irredundant_unsaturated)));
    out.push_str(&format!("forms agree: {}\n", yes(m.forms_agree)));
    out.push_str(&format!("minimal: {}\n", yes(m.minimal)));
    out
}

/// Like [`SuiteReport::text`] without the wall time, so output is stable.
pub fn suite_report(r: &SuiteReport) -> String {
    let mut out = format!(
        "{}: {} ({} instances, {} not applicable)\n",
        r.suite.name(),
        status(r.status),
        r.instances,
        r.not_applicable
    );
    for (p, n) in &r.clauses {
        out.push_str(&format!("  {}: {n}\n", p.name()));
    }
    out.push_str(&format!("  {} counterexamples\n", r.failures));
    for c in &r.counterexamples {
        out.push_str(&format!("  - {} on {}: {}\n", c.property.name(), c.ring.describe(), c.detail));
    }
    out
}

pub fn corpus(c: &Corpus) -> String {
    let mut out = format!("{} rings, {} pairs\n", c.entries.len(), c.pair_count());
    for e in &c.entries {
        out.push_str(&format!(
            "{} ({} elements): {} multiplicative sets\n",
            e.ring.describe(),
            e.ring.size().unwrap_or(0),
            e.msets.len()
        ));
    }
    if !c.skipped.is_empty() {
        out.push_str(&format!("{} rings above the size cap left out\n", c.skipped.len()));
    }
    out
}

pub fn corpus_json(c: &Corpus) -> Value {
    json!({
        "spec": c.spec,
        "rings": c.entries.iter().map(|e| json!({
            "ring": e.spec,
            "description": e.ring.describe(),
            "size": e.ring.size(),
            "msets": e.msets.iter().map(doc::mset_to_doc).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "skipped": c.skipped,
        "pair_count": c.pair_count(),
    })
}
