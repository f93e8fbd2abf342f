//! Canonical JSON reports: exact values as strings, algebraic values as
//! (defining polynomial, root index, high-precision approximation) bundles.

use crate::algebraic::{algebraic_eq, isolate_roots, value_cmp, AlgebraicNumber};
use crate::bipoly::{BetaSpec, MapKind, PlaneMap};
use crate::error::{Error, Result};
use crate::reduce::DegenerateFamily;
use crate::scalars::{gr_str, rat_str, ComplexScalar, GaussRat, Rat};
use crate::similarity::{RealValue, SimilarityReport, SimilarityStatus};
use crate::symmetry::{axis_angle_approx, SymmetryOutcome, SymmetryReport};
use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Map, Value};

const APPROX_DIGITS: usize = 30;

fn gauss_json(g: &GaussRat) -> Value {
    json!({ "re": rat_str(&g.re), "im": rat_str(&g.im) })
}

/// Index of `a` among the canonically ordered roots of its defining poly.
fn root_index(a: &AlgebraicNumber) -> Result<usize> {
    let eps = Rat::new(BigInt::one(), BigInt::from(1u64 << 16));
    let mut roots: Vec<AlgebraicNumber> = isolate_roots(a.defining(), &eps)?
        .into_iter()
        .map(|(r, _)| r)
        .collect();
    roots.sort_by(|x, y| {
        value_cmp(
            &ComplexScalar::Algebraic(x.clone()),
            &ComplexScalar::Algebraic(y.clone()),
        )
    });
    roots
        .iter()
        .position(|r| algebraic_eq(r, a))
        .ok_or_else(|| Error::internal("algebraic number missing among its own roots"))
}

fn algebraic_json(a: &AlgebraicNumber) -> Result<Value> {
    let coeffs: Vec<String> = a.defining().0.iter().map(gr_str).collect();
    let (re, im) = a.approx_decimal(APPROX_DIGITS);
    Ok(json!({
        "minpoly": coeffs,
        "root_index": root_index(a)?,
        "approx": [re, im],
    }))
}

pub fn scalar_json(s: &ComplexScalar) -> Result<Value> {
    match s {
        ComplexScalar::Exact(g) => Ok(gauss_json(g)),
        ComplexScalar::Algebraic(a) => algebraic_json(a),
    }
}

fn real_value_json(v: &RealValue) -> Value {
    match v {
        RealValue::Exact(r) => Value::String(rat_str(r)),
        RealValue::Interval(lo, hi) => json!({
            "approx_interval": [
                crate::scalars::rat_decimal_str(lo, APPROX_DIGITS),
                crate::scalars::rat_decimal_str(hi, APPROX_DIGITS),
            ]
        }),
    }
}

/// The value of a plane map's β, materialized as an exact scalar.
pub fn beta_scalar(m: &PlaneMap) -> Result<ComplexScalar> {
    match (&m.beta, &m.alpha) {
        (BetaSpec::Exact(b), _) => Ok(ComplexScalar::Exact(b.clone())),
        (BetaSpec::OfAlpha(p), ComplexScalar::Exact(a)) => Ok(ComplexScalar::Exact(p.eval(a))),
        (BetaSpec::OfAlpha(p), ComplexScalar::Algebraic(a)) => {
            crate::algebraic::algebraic_value_of(a, p)
        }
    }
}

pub fn emit_symmetry_report(outcome: &SymmetryOutcome) -> Result<Value> {
    match outcome {
        SymmetryOutcome::Infinite(fam) => {
            let family = match fam {
                DegenerateFamily::ParallelLines { direction } => json!({
                    "type": "parallel_lines",
                    "direction": [rat_str(&direction.0), rat_str(&direction.1)],
                }),
                DegenerateFamily::ConcentricCircles { center } => json!({
                    "type": "concentric_circles",
                    "center": gauss_json(center),
                }),
            };
            Ok(json!({
                "status": "infinite_family",
                "family": family,
            }))
        }
        SymmetryOutcome::Finite(rep) => symmetry_report_json(rep),
    }
}

fn symmetry_report_json(rep: &SymmetryReport) -> Result<Value> {
    let center = match &rep.center {
        None => Value::Null,
        Some(c) => json!([rat_str(&c.re), rat_str(&c.im)]),
    };
    let rotations: Vec<Value> = rep
        .rotations
        .iter()
        .map(|&(d, l)| json!({ "order": d, "lambda": l }))
        .collect();
    let mut reflections = Vec::new();
    for (w, l) in &rep.reflections {
        let mut obj = Map::new();
        obj.insert("unit_w".into(), scalar_json(w)?);
        obj.insert("lambda".into(), json!(l));
        obj.insert(
            "axis_angle_approx".into(),
            Value::String(axis_angle_approx(w, APPROX_DIGITS)),
        );
        reflections.push(Value::Object(obj));
    }
    Ok(json!({
        "status": "finite",
        "center": center,
        "rotations": rotations,
        "reflections": reflections,
        "group_order": rep.group_order,
        "squarefree_normalized": rep.squarefree_normalized,
    }))
}

pub fn emit_similarity_report(rep: &SimilarityReport) -> Result<Value> {
    match &rep.status {
        SimilarityStatus::NotSimilar => Ok(json!({
            "status": "not_similar",
            "similarities": [],
        })),
        SimilarityStatus::InfiniteFamily(desc) => Ok(json!({
            "status": "infinite_family",
            "similarities": [],
            "family": desc,
        })),
        SimilarityStatus::Similar => {
            let mut sims = Vec::new();
            for e in &rep.similarities {
                let kind = match e.map.kind {
                    MapKind::Direct => "direct",
                    MapKind::Opposite => "opposite",
                };
                let beta = beta_scalar(&e.map)?;
                let mut obj = Map::new();
                obj.insert("kind".into(), json!(kind));
                obj.insert("alpha".into(), scalar_json(&e.map.alpha)?);
                obj.insert("beta".into(), scalar_json(&beta)?);
                obj.insert("lambda".into(), real_value_json(&e.lambda));
                obj.insert("mu2".into(), real_value_json(&e.mu_sq));
                sims.push(Value::Object(obj));
            }
            Ok(json!({
                "status": "similar",
                "similarities": sims,
            }))
        }
    }
}

/// Deterministic serialization of a report value.
pub fn to_json_string(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("report serialization")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn bp(terms: &[(u32, u32, i64, i64)]) -> BiPoly {
        BiPoly::from_terms(
            &terms
                .iter()
                .map(|&(i, j, n, d)| (i, j, rat(n, d)))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn not_similar_shape_is_pinned() {
        let f1 = bp(&[(3, 0, 1, 1), (0, 1, 1, 1)]);
        let f2 = bp(&[(2, 0, 1, 1), (0, 1, 1, 1)]);
        let rep = crate::similarity::similarities(&f1, &f2).unwrap();
        let v = emit_similarity_report(&rep).unwrap();
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"status":"not_similar","similarities":[]}"#
        );
    }

    #[test]
    fn sextic_symmetry_report_fields() {
        let sextic = bp(&[
            (6, 0, 1, 1),
            (4, 2, -15, 1),
            (3, 0, -2, 1),
            (2, 4, 15, 1),
            (1, 2, 6, 1),
            (0, 6, -1, 1),
        ]);
        let out = crate::symmetry::symmetries(&sextic).unwrap();
        let v = emit_symmetry_report(&out).unwrap();
        assert_eq!(v["center"], json!(["0/1", "0/1"]));
        assert_eq!(v["rotations"], json!([{ "order": 3, "lambda": 1 }]));
        assert_eq!(v["reflections"].as_array().unwrap().len(), 3);
        assert_eq!(v["group_order"], json!(6));
        // deterministic: identical bytes across runs
        let out2 = crate::symmetry::symmetries(&sextic).unwrap();
        let v2 = emit_symmetry_report(&out2).unwrap();
        assert_eq!(to_json_string(&v), to_json_string(&v2));
    }

    #[test]
    fn stirrup_similarity_report_mu2() {
        let f1 = bp(&[
            (5, 0, 1, 120),
            (4, 0, 1, 120),
            (3, 0, -13, 120),
            (2, 0, 10, 120),
            (0, 4, -1, 120),
            (0, 2, 2, 120),
            (0, 0, -1, 120),
        ]);
        let f2 = BiPoly {
            terms: f1.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        };
        let rep = crate::similarity::similarities(&f1, &f2).unwrap();
        let v = emit_similarity_report(&rep).unwrap();
        let sims = v["similarities"].as_array().unwrap();
        assert_eq!(sims.len(), 2);
        for s in sims {
            assert_eq!(s["mu2"], json!("1/1"));
            assert_eq!(s["lambda"], json!("1/1"));
        }
    }
}
