//! Text, JSON and DOT renderings. All output is ordered by element id or by
//! report order, so repeated runs are byte-identical.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use demazure_core::{CheckReport, ElementId, HighestWeightCrystal, ReducedWord, WeightPolynomial};
use serde::Serialize;
use serde_json::json;

pub const SCHEMA: &str = "demazure/1";

fn per_color(
    c: &HighestWeightCrystal,
    x: ElementId,
    stat: impl Fn(usize, ElementId) -> i64,
) -> Vec<i64> {
    (0..c.rank()).map(|i| stat(i, x)).collect()
}

fn fmt_vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn edges(
    c: &HighestWeightCrystal,
    members: Option<&BTreeSet<ElementId>>,
) -> Vec<(ElementId, ElementId, usize)> {
    let keep = |x: ElementId| members.is_none_or(|m| m.contains(&x));
    let mut out = Vec::new();
    for x in c.ids().filter(|&x| keep(x)) {
        for i in 0..c.rank() {
            if let Some(y) = c.f(i, x).filter(|&y| keep(y)) {
                out.push((x, y, i + 1));
            }
        }
    }
    out
}

pub fn crystal_text(c: &HighestWeightCrystal) -> String {
    let mut s = String::new();
    for x in c.ids() {
        let _ = writeln!(
            s,
            "{}\twt={}\teps={}\tphi={}",
            c.name(x),
            c.weight(x),
            fmt_vec(&per_color(c, x, |i, x| c.eps(i, x))),
            fmt_vec(&per_color(c, x, |i, x| c.phi(i, x)))
        );
    }
    s
}

fn element_json(c: &HighestWeightCrystal, x: ElementId) -> serde_json::Value {
    json!({
        "id": x,
        "word": c.name(x),
        "weight": c.weight(x).0,
        "eps": per_color(c, x, |i, x| c.eps(i, x)),
        "phi": per_color(c, x, |i, x| c.phi(i, x)),
    })
}

pub fn crystal_json(c: &HighestWeightCrystal) -> String {
    let value = json!({
        "schema": SCHEMA,
        "type": c.cartan().type_label.as_str(),
        "lambda": c.lambda().0,
        "elements": c.ids().map(|x| element_json(c, x)).collect::<Vec<_>>(),
        "edges": edges(c, None).into_iter().map(|(a, b, i)| json!({"from": a, "to": b, "color": i})).collect::<Vec<_>>(),
    });
    pretty(&value)
}

/// DOT graph of `c`, or of the subgraph induced on `members`.
pub fn crystal_dot(c: &HighestWeightCrystal, members: Option<&BTreeSet<ElementId>>) -> String {
    let mut s = String::from("digraph crystal {\n  rankdir=TB;\n");
    for x in c.ids().filter(|x| members.is_none_or(|m| m.contains(x))) {
        let _ = writeln!(s, "  n{x} [label=\"{}\\n{}\"];", c.name(x), c.weight(x));
    }
    for (a, b, i) in edges(c, members) {
        let _ = writeln!(s, "  n{a} -> n{b} [label=\"{i}\"];");
    }
    s.push_str("}\n");
    s
}

pub struct DemazureOutcome<'a> {
    pub crystal: &'a HighestWeightCrystal,
    pub word: &'a ReducedWord,
    pub members: &'a BTreeSet<ElementId>,
    pub character: &'a WeightPolynomial,
    pub formula_holds: bool,
}

pub fn demazure_text(d: &DemazureOutcome) -> String {
    let c = d.crystal;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "type {}  lambda {}  word {}",
        c.cartan().type_label,
        c.lambda(),
        d.word
    );
    let _ = writeln!(s, "size {}", d.members.len());
    let _ = writeln!(s, "members:");
    for &x in d.members {
        let _ = writeln!(s, "  {}\twt={}", c.name(x), c.weight(x));
    }
    let _ = writeln!(s, "character {}", d.character);
    let _ = writeln!(
        s,
        "refined formula {}",
        if d.formula_holds { "holds" } else { "FAILS" }
    );
    s
}

pub fn demazure_json(d: &DemazureOutcome) -> String {
    let c = d.crystal;
    let character: Vec<_> = d
        .character
        .iter()
        .map(|(w, k)| json!({"weight": w.0, "coeff": k}))
        .collect();
    let value = json!({
        "schema": SCHEMA,
        "type": c.cartan().type_label.as_str(),
        "lambda": c.lambda().0,
        "word": d.word.letters().iter().map(|i| i + 1).collect::<Vec<_>>(),
        "size": d.members.len(),
        "members": d.members.iter().map(|&x| element_json(c, x)).collect::<Vec<_>>(),
        "character": character,
        "formula_holds": d.formula_holds,
    });
    pretty(&value)
}

#[derive(Serialize)]
struct VerifyDocument<'a> {
    schema: &'static str,
    passed: bool,
    reports: &'a [CheckReport],
}

pub fn verify_json(reports: &[CheckReport], passed: bool) -> String {
    let doc = VerifyDocument {
        schema: SCHEMA,
        passed,
        reports,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
    s.push('\n');
    s
}

/// One summary line per (suite, type); failing and report-only checks are printed in full.
pub fn verify_text(groups: &[(String, Vec<CheckReport>)], passed: bool) -> String {
    let mut s = String::new();
    for (label, reports) in groups {
        let gating = reports.iter().all(|r| r.gating);
        let ok = reports.iter().all(CheckReport::passed);
        let tag = match (ok, gating) {
            (true, true) => "PASS",
            (false, true) => "FAIL",
            (_, false) => "REPORT",
        };
        let _ = writeln!(s, "{tag} {label} ({} checks)", reports.len());
        for r in reports.iter().filter(|r| !r.passed() || !r.gating) {
            for line in r.to_string().lines() {
                let _ = writeln!(s, "  {line}");
            }
        }
    }
    let _ = writeln!(
        s,
        "{}",
        if passed {
            "all gating checks passed"
        } else {
            "some gating checks failed"
        }
    );
    s
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}
