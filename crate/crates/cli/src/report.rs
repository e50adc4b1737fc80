//! JSON and CSV renderings of command results. JSON numbers carry 12
//! significant digits, CSV numbers 9.

use std::path::Path;

use serde_json::{json, Value};
use su2limits::orbits::variance_polygon;
use su2limits::stokes::{
    check_bounds, covariance, degeneracy_tolerance, principal_variances, stokes_vector,
};
use su2limits::textfmt::{round_significant, significant};
use su2limits::{
    BoundsReport, EulerAngles, MajoranaConstellation, OrbitRelation, Result, TwoModeState,
    UncertaintyBounds, VariancePointCloud,
};

use crate::{Format, Unit};

const JSON_DIGITS: usize = 12;
const CSV_DIGITS: usize = 9;

fn rounded(value: Value) -> Value {
    match value {
        Value::Number(n) if n.is_f64() => {
            json!(round_significant(
                n.as_f64().expect("f64 number"),
                JSON_DIGITS
            ))
        }
        Value::Array(items) => Value::Array(items.into_iter().map(rounded).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, rounded(v))).collect())
        }
        other => other,
    }
}

fn to_json(value: Value) -> String {
    let mut text = serde_json::to_string(&rounded(value)).expect("serializable");
    text.push('\n');
    text
}

fn csv_row(label: &str, values: &[f64]) -> String {
    let mut row = label.to_string();
    for v in values {
        row.push(',');
        row.push_str(&significant(*v, CSV_DIGITS));
    }
    row.push('\n');
    row
}

pub fn analyze(state: &TwoModeState, format: Format) -> Result<String> {
    let n = state.n_photons();
    let s = stokes_vector(state)?;
    let gamma = covariance(state)?;
    let pv = principal_variances(&gamma);
    let bounds = check_bounds(&pv.lambdas, n);
    let polygon = variance_polygon(state, degeneracy_tolerance(n))?;

    Ok(match format {
        Format::Json => to_json(json!({
            "n_photons": n,
            "amplitudes": state.amplitudes().iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
            "stokes_vector": s,
            "gamma": gamma.row_major(),
            "trace": gamma.trace(),
            "lambdas": pv.lambdas,
            "axes": pv.axes,
            "polygon": polygon.kind,
            "bounds": bounds_json(&bounds),
        })),
        Format::Csv => {
            let mut out = String::from("quantity,c1,c2,c3\n");
            out += &csv_row("stokes_vector", &s);
            for (i, row) in gamma.gamma.iter().enumerate() {
                out += &csv_row(&format!("gamma_row{}", i + 1), row);
            }
            out += &csv_row("lambdas", &pv.lambdas);
            for (i, axis) in pv.axes.iter().enumerate() {
                out += &csv_row(&format!("axis{}", i + 1), axis);
            }
            out += &csv_bounds(&bounds);
            out
        }
    })
}

fn bounds_json(report: &BoundsReport) -> Value {
    json!({
        "all_pass": report.all_pass(),
        "det_lower": report.det_lower,
        "det_upper": report.det_upper,
        "minor_lower": report.minor_lower,
        "minor_upper": report.minor_upper,
        "trace_lower": report.trace_lower,
        "trace_upper": report.trace_upper,
    })
}

/// Rows `name,value,limit,margin` for each inequality.
fn csv_bounds(report: &BoundsReport) -> String {
    let names = [
        "det_lower",
        "det_upper",
        "minor_lower",
        "minor_upper",
        "trace_lower",
        "trace_upper",
    ];
    names
        .iter()
        .zip(report.checks())
        .map(|(name, c)| csv_row(name, &[c.value, c.limit, c.margin]))
        .collect()
}

fn points_json(c: &MajoranaConstellation, unit: Unit) -> Value {
    c.sorted()
        .points
        .iter()
        .map(|p| json!({ "theta": unit.from_rad(p.theta), "phi": unit.from_rad(p.phi) }))
        .collect()
}

fn euler_json(e: &EulerAngles, unit: Unit) -> Value {
    json!({
        "alpha": unit.from_rad(e.alpha),
        "beta": unit.from_rad(e.beta),
        "gamma": unit.from_rad(e.gamma),
    })
}

pub fn majorana(
    raw: Option<&MajoranaConstellation>,
    canonical: Option<(&MajoranaConstellation, &EulerAngles)>,
    unit: Unit,
    format: Format,
) -> String {
    match format {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("unit".into(), json!(unit.suffix()));
            if let Some(c) = raw {
                obj.insert("raw".into(), points_json(c, unit));
            }
            if let Some((c, e)) = canonical {
                obj.insert("canonical".into(), points_json(c, unit));
                obj.insert("euler".into(), euler_json(e, unit));
            }
            to_json(Value::Object(obj))
        }
        Format::Csv => {
            let u = unit.suffix();
            let mut out = format!("set,theta_{u},phi_{u}\n");
            let sets = raw
                .map(|c| ("raw", c))
                .into_iter()
                .chain(canonical.map(|(c, _)| ("canonical", c)));
            for (label, c) in sets {
                for p in &c.sorted().points {
                    out += &csv_row(label, &[unit.from_rad(p.theta), unit.from_rad(p.phi)]);
                }
            }
            out
        }
    }
}

pub fn orbit_relation(relation: &OrbitRelation, unit: Unit, format: Format) -> String {
    let witness = match relation {
        OrbitRelation::Same(e) => Some(e),
        _ => None,
    };
    match format {
        Format::Json => to_json(json!({
            "relation": relation.label(),
            "unit": unit.suffix(),
            "euler": witness.map(|e| euler_json(e, unit)),
        })),
        Format::Csv => {
            let u = unit.suffix();
            let mut out = format!("relation,alpha_{u},beta_{u},gamma_{u}\n");
            match witness {
                Some(e) => {
                    out += &csv_row(
                        relation.label(),
                        &[e.alpha, e.beta, e.gamma].map(|x| unit.from_rad(x)),
                    )
                }
                None => out += &format!("{},,,\n", relation.label()),
            }
            out
        }
    }
}

pub fn sweep_summary(
    cloud: &VariancePointCloud,
    points: &Path,
    hulls: &Path,
    format: Format,
) -> String {
    let (lo, hi) = cloud.trace_range().unwrap_or((f64::NAN, f64::NAN));
    match format {
        Format::Json => to_json(json!({
            "n_photons": cloud.n_photons,
            "samples": cloud.samples.len(),
            "trace_min": lo,
            "trace_max": hi,
            "buckets": cloud.slice_hulls.len(),
            "bucket_width": cloud.bucket_width,
            "points_csv": points.display().to_string(),
            "hulls_csv": hulls.display().to_string(),
        })),
        Format::Csv => format!(
            "n_photons,samples,trace_min,trace_max,buckets\n{},{},{},{},{}\n",
            cloud.n_photons,
            cloud.samples.len(),
            significant(lo, CSV_DIGITS),
            significant(hi, CSV_DIGITS),
            cloud.slice_hulls.len()
        ),
    }
}

pub fn bounds(
    n: usize,
    limits: &UncertaintyBounds,
    check: Option<&([f64; 3], BoundsReport)>,
    format: Format,
) -> String {
    match format {
        Format::Json => to_json(json!({
            "n_photons": n,
            "limits": limits,
            "lambdas": check.map(|(l, _)| l),
            "check": check.map(|(_, r)| bounds_json(r)),
        })),
        // with a triplet the table holds the checks, otherwise the limits
        Format::Csv => match check {
            Some((_, report)) => format!("check,value,limit,margin\n{}", csv_bounds(report)),
            None => {
                let mut out = String::from("quantity,lower,upper\n");
                out += &csv_row("det", &[limits.det_lo, limits.det_hi]);
                out += &csv_row("minor_sum", &[limits.minor_lo, limits.minor_hi]);
                out += &csv_row("trace", &[limits.trace_lo, limits.trace_hi]);
                out
            }
        },
    }
}
