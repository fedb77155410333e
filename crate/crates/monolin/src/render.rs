//! Text and JSON renderings of reports. Rationals are written canonically
//! as `p/q` (or `p`), extended values as `inf`.

use std::fmt::Write as _;

use monolin_core::linsub::FitzValue;
use monolin_core::pairing::Point;
use monolin_core::report::{ClassificationReport, Tier, Verdict, Witness};
use monolin_core::scalar::Scalar;
use serde_json::{json, Value};

pub fn scalar_json(v: &Scalar) -> Value {
    Value::String(v.to_string())
}

pub fn value_json(v: &FitzValue) -> Value {
    Value::String(v.to_string())
}

pub fn point_json(p: &Point) -> Value {
    json!({
        "x": p.x().iter().map(scalar_json).collect::<Vec<_>>(),
        "y": p.y().iter().map(scalar_json).collect::<Vec<_>>(),
    })
}

pub fn points_json(ps: &[Point]) -> Value {
    Value::Array(ps.iter().map(point_json).collect())
}

fn witness_json(w: &Option<Witness>) -> Value {
    match w {
        None => Value::Null,
        Some(Witness::Point(p)) => json!({ "point": point_json(p) }),
        Some(Witness::Pair(a, b)) => json!({ "pair": [point_json(a), point_json(b)] }),
    }
}

fn tier_str(t: Tier) -> String {
    match t {
        Tier::Exact => "exact".into(),
        Tier::Probed { samples } => format!("probed({samples})"),
    }
}

pub fn verdict_json(name: &str, v: &Verdict) -> Value {
    let mut obj = json!({
        "name": name,
        "holds": v.holds,
        "tier": match v.tier { Tier::Exact => "exact", Tier::Probed { .. } => "probed" },
        "criterion": v.criterion,
        "witness": witness_json(&v.witness),
    });
    if let Tier::Probed { samples } = v.tier {
        obj["samples"] = json!(samples);
    }
    obj
}

pub fn report_json(kind: &str, r: &ClassificationReport) -> Value {
    let flags: Vec<Value> = r.flags().iter().map(|(name, v)| verdict_json(name, v)).collect();
    let mut obj = json!({
        "kind": kind,
        "n": r.n,
        "flags": flags,
        "notes": r.notes,
    });
    if let Some(h) = &r.hull_monotone {
        obj["hull_monotone"] = verdict_json("hull_monotone", h);
    }
    obj
}

fn witness_text(w: &Option<Witness>) -> Option<String> {
    match w {
        None => None,
        Some(Witness::Point(p)) => Some(format!("{p}")),
        Some(Witness::Pair(a, b)) => Some(format!("{a} and {b}")),
    }
}

fn verdict_line(out: &mut String, name: &str, v: &Verdict) {
    writeln!(out, "{name:<20}{:<7}{:<16}{}", v.holds, tier_str(v.tier), v.criterion).unwrap();
    if let Some(w) = witness_text(&v.witness) {
        writeln!(out, "{:<20}witness {w}", "").unwrap();
    }
}

pub fn report_text(kind: &str, r: &ClassificationReport) -> String {
    let mut out = format!("{kind}, n = {}\n", r.n);
    for (name, v) in r.flags() {
        verdict_line(&mut out, name, v);
    }
    if let Some(h) = &r.hull_monotone {
        verdict_line(&mut out, "hull_monotone", h);
    }
    for note in &r.notes {
        writeln!(out, "note: {note}").unwrap();
    }
    out
}

pub fn points_text(ps: &[Point]) -> String {
    ps.iter().map(|p| format!("{}\n", crate::problem::write_point(p))).collect()
}
