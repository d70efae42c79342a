//! One function per subcommand. Each turns library results into a JSON
//! payload and a CSV table and does nothing else.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use obstructor::arith::units;
use obstructor::floer::ConeCache;
use obstructor::knots::{KnotModel, KnotRegistry};
use obstructor::lens::{neg_continued_fraction, spin_indices, SurgerySlope};
use obstructor::relations::{franz_verify, theorem31_bruteforce, theorem31_predicted};
use obstructor::torsion::{casson_walker, cosmetic_verdict, enumerate, torsion_equivalent, Verdict};
use serde_json::{json, Value};

use crate::output::{rational, Outcome, Table};
use crate::CliError;

fn model(name: &str) -> Result<Arc<dyn KnotModel>, CliError> {
    Ok(KnotRegistry::default().get(name)?)
}

fn ok(results: Value, table: Table) -> Result<Outcome, CliError> {
    Ok(Outcome { results, table, violation: None })
}

/// `d` at the self-conjugate classes, or at every class.
pub fn d_inv(p: i64, q: i64, knot: &str, all_spinc: bool) -> Result<Outcome, CliError> {
    let m = model(knot)?;
    let slope = SurgerySlope::new(p, q)?;
    let classes: Vec<u64> = if all_spinc { (0..slope.order()).collect() } else { spin_indices(p, q)? };
    let cones = ConeCache::new();
    let mut rows = Vec::new();
    let mut table = Table::new(&["p", "q", "i", "d"]);
    for i in classes {
        let d = rational(&cones.d_invariant(&*m, p, q, i)?);
        table.push(vec![p.to_string(), q.to_string(), i.to_string(), d.clone()]);
        rows.push(json!({"i": i, "d": d}));
    }
    ok(Value::Array(rows), table)
}

pub fn torsion_pair(p: i64, q: i64, q2: i64, knot: &str) -> Result<Outcome, CliError> {
    let m = model(knot)?;
    let witnesses = torsion_equivalent(p, q, q2, &m.alexander())?;
    let equivalent = !witnesses.is_empty();
    let verdict = if equivalent { "TorsionEquivalent" } else { "TorsionObstructed" };
    let mut table = Table::new(&["p", "q", "q2", "verdict", "witnesses"]);
    let joined: Vec<String> = witnesses.iter().map(u64::to_string).collect();
    table.push(vec![p.to_string(), q.to_string(), q2.to_string(), verdict.into(), joined.join(";")]);
    ok(json!({"equivalent": equivalent, "witnesses": witnesses}), table)
}

fn verdict_row(knot: &str, p: i64, q: i64, q2: i64, v: &Verdict) -> (Value, Vec<String>) {
    (
        json!({"knot": knot, "p": p, "q": q, "q2": q2, "verdict": v.to_string()}),
        vec![knot.into(), p.to_string(), q.to_string(), q2.to_string(), v.to_string()],
    )
}

const VERDICT_HEADER: [&str; 5] = ["knot", "p", "q", "q2", "verdict"];

pub fn verdict(p: i64, q: i64, q2: i64, knot: &str) -> Result<Outcome, CliError> {
    let m = model(knot)?;
    let v = cosmetic_verdict(p, q, q2, &*m)?;
    let (row, csv) = verdict_row(m.name(), p, q, q2, &v);
    let mut table = Table::new(&VERDICT_HEADER);
    table.push(csv);
    ok(row, table)
}

fn verdict_kind(v: &Verdict) -> &'static str {
    match v {
        Verdict::SameSlope => "SameSlope",
        Verdict::TorsionObstructed => "TorsionObstructed",
        Verdict::LSpaceObstructed => "LSpaceObstructed",
        Verdict::DObstructed => "DObstructed",
        Verdict::CWObstructed => "CWObstructed",
        Verdict::SurvivesAsReflective { .. } => "SurvivesAsReflective",
        Verdict::Survives { .. } => "Survives",
    }
}

/// Survivors of the obstruction chain over all genus-one models (or the
/// named ones), with counts per verdict.
pub fn enumerate_cmd(pmax: u64, knots: &[String]) -> Result<Outcome, CliError> {
    let registry = KnotRegistry::default();
    let models = if knots.is_empty() {
        registry.genus_one()
    } else {
        knots.iter().map(|k| registry.get(k)).collect::<Result<Vec<_>, _>>()?
    };
    let records = enumerate(pmax, &models)?;
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    let mut survivors = Vec::new();
    let mut table = Table::new(&VERDICT_HEADER);
    let mut truly = 0u64;
    for r in &records {
        *counts.entry(verdict_kind(&r.verdict)).or_default() += 1;
        truly += r.verdict.is_truly_cosmetic_survivor() as u64;
        if r.verdict.is_survivor() {
            let (row, csv) = verdict_row(&r.knot, r.p, r.q, r.q2, &r.verdict);
            survivors.push(row);
            table.push(csv);
        }
    }
    let violation = (truly > 0).then(|| format!("{truly} truly cosmetic candidates survive every obstruction"));
    Ok(Outcome {
        results: json!({
            "pairs": records.len(),
            "counts": counts,
            "survivors": survivors,
            "truly_cosmetic_survivors": truly,
        }),
        table,
        violation,
    })
}

/// Brute-force solutions of the torsion equation for each modulus, compared
/// against the three-case classification.
pub fn verify_thm31(mmax: u64) -> Result<Outcome, CliError> {
    let mut rows = Vec::new();
    let mut table = Table::new(&["m", "solutions", "exceptional", "matches"]);
    let mut bad = Vec::new();
    for m in 3..=mmax {
        let sols = theorem31_bruteforce(m)?;
        let found: BTreeSet<(u64, u64)> = sols.iter().map(|&(r, rp, _)| (r, rp)).collect();
        let us = units(m);
        let predicted: BTreeSet<(u64, u64)> = us
            .iter()
            .flat_map(|&r| us.iter().map(move |&rp| (r, rp)))
            .filter(|&(r, rp)| theorem31_predicted(m, r, rp))
            .collect();
        let matches = found == predicted;
        if !matches {
            bad.push(m);
        }
        let exceptional: Vec<(u64, u64)> =
            found.iter().copied().filter(|&(r, rp)| r < rp && r + rp != m).collect();
        let listed: Vec<String> = exceptional.iter().map(|(r, rp)| format!("{r}:{rp}")).collect();
        table.push(vec![m.to_string(), sols.len().to_string(), listed.join(";"), matches.to_string()]);
        rows.push(json!({"m": m, "solutions": sols.len(), "exceptional": exceptional, "matches": matches}));
    }
    let violation = (!bad.is_empty()).then(|| format!("classification fails for m in {bad:?}"));
    Ok(Outcome { results: Value::Array(rows), table, violation })
}

pub fn franz(m: u64, bound: u32) -> Result<Outcome, CliError> {
    let holds = franz_verify(m, bound)?;
    let mut table = Table::new(&["m", "box", "holds"]);
    table.push(vec![m.to_string(), bound.to_string(), holds.to_string()]);
    let violation = (!holds).then(|| format!("a nontrivial relation with coefficients in [-{bound}, {bound}] mod {m}"));
    Ok(Outcome { results: json!({"holds": holds}), table, violation })
}

pub fn cw(p: i64, q: i64, knot: &str) -> Result<Outcome, CliError> {
    let m = model(knot)?;
    let lambda = rational(&casson_walker(&*m, SurgerySlope::new(p, q)?));
    let mut table = Table::new(&["p", "q", "lambda"]);
    table.push(vec![p.to_string(), q.to_string(), lambda.clone()]);
    ok(json!({"lambda": lambda}), table)
}

pub fn cf(p: i64, q: i64) -> Result<Outcome, CliError> {
    let graph = neg_continued_fraction(p, q)?;
    let weights = graph.weights().to_vec();
    let shown: Vec<String> = weights.iter().map(i64::to_string).collect();
    let tuple = format!("({})", shown.join(","));
    let mut table = Table::new(&["p", "q", "weights"]);
    table.push(vec![p.to_string(), q.to_string(), tuple.clone()]);
    ok(json!({"weights": weights, "expansion": tuple}), table)
}
