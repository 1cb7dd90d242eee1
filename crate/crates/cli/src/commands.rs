use rayon::prelude::*;
use serde_json::{json, Value};

use defcalc::algebra::verify_algebra as check_axioms;
use defcalc::bounds::{cusp_feasibility, lambda_bound as lambda_report, semisplit_pipeline, theorem1_bound, PipelineOptions};
use defcalc::deformation::def_space;
use defcalc::json::{cochain_to_json, coordinates_to_json};
use defcalc::quantum::{extension_solve, pmn_line_psi, verify_extension, ExtensionOutcome};
use defcalc::structure::{classify_monogenic, classify_pmn, is_semisplit, is_split, verify_semisplit_witness};
use defcalc::Field;

use crate::input::{AlgebraSpec, DeformationArgs};
use crate::{CliError, Outcome};

fn ok(value: Value) -> Result<Outcome, CliError> {
    Ok(Outcome { value, ok: true })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

pub fn defspace(spec: &AlgebraSpec, d: i32, field: Field) -> Result<Outcome, CliError> {
    let algebra = spec.build(field)?;
    let report = check_axioms(&algebra);
    if !report.passed() {
        return Ok(Outcome {
            value: json!({"algebra": spec.to_string(), "valid": false, "checks": to_value(&report.checks)}),
            ok: false,
        });
    }
    let space = def_space(&algebra, d);
    let reps: Vec<Value> = space.representatives().iter().map(|z| cochain_to_json(&algebra, z)).collect();
    ok(json!({
        "algebra": spec.to_string(),
        "field": algebra.field().to_string(),
        "d": d,
        "dimension": space.dimension(),
        "cocycle_dim": space.cocycle_dim(),
        "coboundary_dim": space.coboundary_dim(),
        "representatives": reps,
    }))
}

pub fn classify(args: &DeformationArgs, field: Field) -> Result<Outcome, CliError> {
    let triple = args.build(field)?;
    match args.algebra {
        AlgebraSpec::Cpn(n) => ok(json!({
            "algebra": format!("cpn:{n}"),
            "d": args.d,
            "alpha": classify_monogenic(&triple)?.to_string(),
        })),
        _ => {
            args.algebra.pmn_shape()?;
            let c = classify_pmn(&triple)?;
            let mut value = coordinates_to_json(&c);
            value["trivial"] = json!(c.is_zero());
            ok(value)
        }
    }
}

pub fn split(args: &DeformationArgs, field: Field) -> Result<Outcome, CliError> {
    args.algebra.pmn_shape()?;
    let decision = is_split(&args.build(field)?)?;
    ok(json!({"split": decision.split, "coordinates": coordinates_to_json(&decision.coordinates)}))
}

pub fn semisplit(args: &DeformationArgs, factor: Option<u8>, field: Field) -> Result<Outcome, CliError> {
    args.algebra.pmn_shape()?;
    let triple = args.build(field)?;
    let factors = match factor {
        Some(f @ (1 | 2)) => vec![f],
        Some(f) => return Err(CliError::Usage(format!("--factor must be 1 or 2, got {f}"))),
        None => vec![1, 2],
    };
    let mut consistent = true;
    let mut rows = Vec::new();
    for f in factors {
        let decision = is_semisplit(&triple, f)?;
        let verified = match &decision.witness {
            Some(w) => Some(verify_semisplit_witness(&triple, w)?),
            None => None,
        };
        consistent &= decision.semisplit == decision.coordinate_criterion && verified != Some(false);
        rows.push(json!({
            "factor": f,
            "semisplit": decision.semisplit,
            "coordinate_criterion": decision.coordinate_criterion,
            "witness_verified": verified,
        }));
    }
    let semisplit = rows.iter().any(|r| r["semisplit"] == json!(true));
    Ok(Outcome { value: json!({"semisplit": semisplit, "factors": rows}), ok: consistent })
}

pub fn qext(args: &DeformationArgs, factor: u8, field: Field) -> Result<Outcome, CliError> {
    let (m, n) = args.algebra.pmn_shape()?;
    if !matches!(factor, 1 | 2) {
        return Err(CliError::Usage(format!("--factor must be 1 or 2, got {factor}")));
    }
    let triple = args.build(field)?;
    let q = pmn_line_psi(m, n, factor, field)?;
    match extension_solve(&triple, &q)? {
        ExtensionOutcome::Feasible(w) => {
            let report = verify_extension(&triple, &q, &w.psi_tilde)?;
            Ok(Outcome {
                value: json!({
                    "feasible": true,
                    "factor": factor,
                    "verified": report.passed(),
                    "witness": cochain_to_json(triple.big(), &w.psi_tilde),
                }),
                ok: report.passed(),
            })
        }
        ExtensionOutcome::Infeasible(cert) => ok(json!({
            "feasible": false,
            "factor": factor,
            "certificate": to_value(&cert),
        })),
    }
}

pub fn bound(m: u32, n: u32, k: u32) -> Result<Outcome, CliError> {
    ok(to_value(&theorem1_bound(m, n, k)?))
}

pub fn lambda_bound(m: u32, n: u32, k: u32) -> Result<Outcome, CliError> {
    ok(to_value(&lambda_report(m, n, k)?))
}

pub fn cusp(lambda: &str) -> Result<Outcome, CliError> {
    let x = Field::Rational.parse(lambda)?;
    let r = x.as_rational().expect("rational field");
    ok(to_value(&cusp_feasibility(r)?))
}

pub fn pipeline(m: u32, n: u32, ds: &[i32], spot_checks: usize, field: Field) -> Result<Outcome, CliError> {
    let ds: Vec<i32> = if ds.is_empty() { (1..=m.max(n) as i32 + 1).map(|h| 2 * h).collect() } else { ds.to_vec() };
    let options = PipelineOptions { field, spot_check_pairs: spot_checks };
    let rows = ds
        .par_iter()
        .map(|&d| semisplit_pipeline(m, n, d, options))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = rows.iter().all(|r| r.passed());
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            let mut v = to_value(r);
            v["passed"] = json!(r.passed());
            v
        })
        .collect();
    Ok(Outcome {
        value: json!({"m": m, "n": n, "field": field.to_string(), "passed": passed, "rows": rows}),
        ok: passed,
    })
}

pub fn verify_algebra(spec: &AlgebraSpec, field: Field) -> Result<Outcome, CliError> {
    let algebra = spec.build(field)?;
    let report = check_axioms(&algebra);
    Ok(Outcome {
        value: json!({
            "algebra": spec.to_string(),
            "field": algebra.field().to_string(),
            "dimension": algebra.dim(),
            "valid": report.passed(),
            "checks": to_value(&report.checks),
        }),
        ok: report.passed(),
    })
}
