//! One function per subcommand; each fills a [`RunReport`].

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use modmethod_core::curves::{g2_rm_split, load_curve, check_congruence, CurveModel, EulerFactorG2, PrimeVerdict};
use modmethod_core::elimination::{eliminate, load_family, RefinedRequest, RefinedVerdict, SurvivingSet};
use modmethod_core::newformdata::load_packets;
use modmethod_core::numberfield::NumberFieldOrder;
use modmethod_core::unitsieve::{load_constraints, sieve_case, DescentCase};
use modmethod_core::{Error, FieldElement, Result};
use serde_json::json;

use crate::report::{CheckResult, RunReport, Verdict};

pub fn field_element_string(x: &FieldElement) -> String {
    let coords: Vec<String> = x.coords().iter().map(|c| c.to_string()).collect();
    format!("[{}]", coords.join(", "))
}

fn euler_g2_string(e: &EulerFactorG2) -> String {
    format!("1 - ({})T + ({})T^2 - ({})T^3 + ({})T^4", e.a1, e.a2, e.n as i128 * e.a1 as i128, (e.n as i128).pow(2))
}

/// Traces or Euler factors at every prime above each `q`.
pub fn trace(report: &mut RunReport, curve: &Path, qs: &[u64], full_factor: bool) -> Result<()> {
    report.hash_input(curve);
    let (file, model) = load_curve(curve)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for &q in qs {
        for p in model.order().split_prime(q)?.iter() {
            let n = p.norm_u64();
            let row = match &model {
                CurveModel::Elliptic(e) => match e.trace(p) {
                    Ok(a) => {
                        let weil = (a * a) as u64 <= 4 * n;
                        if full_factor {
                            writeln!(text, "{} (N = {n}): 1 - ({a})T + {n}T^2", p.key()).unwrap();
                        } else {
                            writeln!(text, "{} (N = {n}): a = {a}, |a| <= 2 sqrt N: {weil}", p.key()).unwrap();
                        }
                        json!({"prime": p.key(), "norm": n, "trace": a, "weil": weil})
                    }
                    Err(Error::BadReduction(_)) => {
                        writeln!(text, "{} (N = {n}): bad reduction, not computed", p.key()).unwrap();
                        json!({"prime": p.key(), "norm": n, "bad_reduction": true})
                    }
                    Err(e) => return Err(e),
                },
                CurveModel::Hyperelliptic(c) => {
                    if !c.has_good_model_at(p) {
                        writeln!(text, "{} (N = {n}): bad reduction of the model, not computed", p.key()).unwrap();
                        rows.push(json!({"prime": p.key(), "norm": n, "bad_reduction": true}));
                        continue;
                    }
                    let e = c.euler_factor(p)?;
                    let split = g2_rm_split(&e).ok().map(|s| s.describe());
                    let line = if full_factor {
                        euler_g2_string(&e)
                    } else {
                        format!("a1 = {}, a2 = {}", e.a1, e.a2)
                    };
                    let rm = split.as_ref().map_or("no RM split".to_string(), |[x, y]| format!("RM pair {{{x}, {y}}}"));
                    writeln!(text, "{} (N = {n}): {line}; {rm}; Weil: {}", p.key(), e.satisfies_weil()).unwrap();
                    json!({"prime": p.key(), "norm": n, "a1": e.a1, "a2": e.a2, "weil": e.satisfies_weil(), "rm_pair": split})
                }
            };
            rows.push(row);
        }
    }
    report.body = json!({"curve": file.name, "order": file.order, "primes": rows, "text": text});
    Ok(())
}

pub fn igusa(report: &mut RunReport, curve: &Path) -> Result<()> {
    report.hash_input(curve);
    let (file, model) = load_curve(curve)?;
    let CurveModel::Hyperelliptic(c) = model else {
        return Err(Error::Schema(format!("{}: Igusa-Clebsch invariants need a genus-2 curve", curve.display())));
    };
    let ic = c.igusa_clebsch()?;
    let names = ["I2", "I4", "I6", "I10"];
    let values: Vec<String> = ic.as_array().iter().map(field_element_string).collect();
    let mut text = format!("{} over {} (power-basis coordinates)\n", file.name, file.order);
    for (n, v) in names.iter().zip(&values) {
        writeln!(text, "{n} = {v}").unwrap();
    }
    report.body = json!({"curve": file.name, "order": file.order, "invariants": names.iter().zip(&values).map(|(n, v)| (n.to_string(), v.clone())).collect::<std::collections::BTreeMap<_, _>>(), "text": text});
    Ok(())
}

pub fn split(report: &mut RunReport, order: &str, qs: &[u64]) -> Result<()> {
    let o = NumberFieldOrder::builtin(order)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for &q in qs {
        for p in o.split_prime(q)?.iter() {
            writeln!(text, "{}: f = {}, e = {}, N = {}, factor {}", p.key(), p.fdeg, p.e, p.norm(), p.factor).unwrap();
            rows.push(json!({"prime": p.key(), "f": p.fdeg, "e": p.e, "norm": p.norm().to_string(), "factor": p.factor.to_string()}));
        }
    }
    report.body = json!({"order": order, "primes": rows, "text": text});
    Ok(())
}

pub struct EliminateArgs {
    pub family: PathBuf,
    pub packets: PathBuf,
    pub q: Vec<u64>,
    pub refined: Option<u64>,
    pub skip_ramified: bool,
    pub skip: Vec<String>,
}

pub fn eliminate_cmd(report: &mut RunReport, args: &EliminateArgs) -> Result<()> {
    report.hash_input(&args.family);
    report.hash_input(&args.packets);
    let family = load_family(&args.family)?;
    let packets = load_packets(&args.packets)?;
    let request = args.refined.map(|p| RefinedRequest { p, skip: args.skip.clone(), skip_ramified: args.skip_ramified });
    let result = match eliminate(&packets, &family, &args.q, request.as_ref()) {
        Err(e @ Error::ExternalData(_)) => {
            let detail = e.to_string();
            report.checks.push(CheckResult { id: "eliminate".into(), verdict: Verdict::SkippedExternal, detail });
            return Ok(());
        }
        other => other?,
    };
    let mut text = String::new();
    for p in &result.packets {
        let surviving = match &p.surviving {
            SurvivingSet::All => "all primes (some A_q is zero)".to_string(),
            SurvivingSet::Primes(v) => format!("{v:?}"),
        };
        writeln!(text, "{}: gcd = {}, surviving p = {surviving}", p.packet, p.gcd).unwrap();
    }
    for r in &result.refined {
        for v in &r.verdicts {
            let verdict = match &v.verdict {
                RefinedVerdict::Eliminated { witness_q } => format!("eliminated by q = {witness_q}"),
                RefinedVerdict::Survives => "survives".into(),
                RefinedVerdict::SkippedReducible => "skipped (reducible)".into(),
                RefinedVerdict::SkippedRamified => "skipped (ramified)".into(),
            };
            writeln!(text, "{} at {}: {verdict}", r.packet, v.residue_prime).unwrap();
        }
    }
    let mut body = serde_json::to_value(&result).expect("report serializes");
    body["text"] = json!(text);
    report.body = body;
    Ok(())
}

pub fn parse_case(s: &str) -> std::result::Result<DescentCase, String> {
    match s {
        "div13" => Ok(DescentCase::Divisible13),
        "coprime13" => Ok(DescentCase::Coprime13),
        _ => Err(format!("unknown case {s:?}; use div13 or coprime13")),
    }
}

pub fn sieve(report: &mut RunReport, case: DescentCase, constraints: &Path, out: Option<&Path>) -> Result<()> {
    report.hash_input(constraints);
    let list = load_constraints(constraints)?;
    let outcome = match sieve_case(case, &list) {
        Err(e @ Error::ExternalData(_)) => {
            let detail = e.to_string();
            report.checks.push(CheckResult { id: "sieve".into(), verdict: Verdict::SkippedExternal, detail });
            return Ok(());
        }
        other => other?,
    };
    let summary = outcome.survivors.summary(10);
    if let Some(path) = out {
        std::fs::write(path, outcome.survivors.to_bytes())?;
        std::fs::write(path.with_extension("txt"), format!("{summary}\n"))?;
    }
    let mut text = String::new();
    for l in &outcome.locals {
        writeln!(
            text,
            "q = {} ({}): {} pairs, characters at {:?}, {} local survivors",
            l.q, l.mode, l.admissible_pairs, l.character_primes, l.survivors
        )
        .unwrap();
    }
    text.push_str(&summary);
    report.body = json!({
        "case": case,
        "locals": outcome.locals,
        "survivors": outcome.survivors.count(),
        "first": outcome.survivors.indices().take(10).collect::<Vec<_>>(),
        "text": text,
    });
    Ok(())
}

pub fn congruence(report: &mut RunReport, curve_e: &Path, curve_c: &Path, bound: u64) -> Result<()> {
    report.hash_input(curve_e);
    report.hash_input(curve_c);
    let (_, e) = load_curve(curve_e)?;
    let (_, c) = load_curve(curve_c)?;
    let (CurveModel::Elliptic(e), CurveModel::Hyperelliptic(c)) = (e, c) else {
        return Err(Error::Schema("check-congruence takes an elliptic curve and then a genus-2 curve".into()));
    };
    let r = check_congruence(&e, &c, bound, &[2, 7, 13])?;
    let mut text = String::new();
    for f in r.failures() {
        let what = match &f.verdict {
            PrimeVerdict::Mismatch { a_e, residues } => format!("a = {a_e}, residues {residues:?}"),
            PrimeVerdict::Error { message } => message.clone(),
            PrimeVerdict::Match { .. } => unreachable!(),
        };
        writeln!(text, "failure at {} (N = {}): {what}", f.key, f.norm).unwrap();
    }
    let failures = r.failures().len();
    let detail = format!("{} primes of norm <= {bound} checked, {failures} failures", r.checks.len());
    report.checks.push(CheckResult {
        id: "congruence".into(),
        verdict: if failures == 0 { Verdict::Pass } else { Verdict::Fail },
        detail,
    });
    let mut body = serde_json::to_value(&r).expect("report serializes");
    body["text"] = json!(text);
    report.body = body;
    Ok(())
}
