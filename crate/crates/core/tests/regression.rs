//! Frozen expansions and direct sums from `tests/data/regression.json`,
//! produced at 40 digits by `tests/data/regression.py`.

use qseries::expansion::expand_general;
use qseries::oracle::direct_sum;
use qseries::{SeriesSpec, ZetaFactor, C64};
use serde_json::Value;

struct Case {
    name: String,
    spec: SeriesSpec,
    order: usize,
    /// `(exponent, coefficients of log(x)^k)`.
    terms: Vec<(f64, Vec<f64>)>,
    /// `(x, direct sum, expansion minus direct sum)`.
    points: Vec<(f64, f64, f64)>,
}

fn f(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

fn cases() -> Vec<Case> {
    let doc: Value = serde_json::from_str(include_str!("data/regression.json")).unwrap();
    doc["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let factors = c["factors"]
                .as_array()
                .unwrap()
                .iter()
                .map(|p| ZetaFactor::new(p[0].as_u64().unwrap() as u32, C64::new(f(&p[1]), 0.0)))
                .collect();
            Case {
                name: c["name"].as_str().unwrap().to_string(),
                spec: SeriesSpec::new(factors, f(&c["a"]), C64::new(f(&c["b"]), 0.0)).unwrap(),
                order: c["order"].as_u64().unwrap() as usize,
                terms: c["terms"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|t| {
                        let coeffs = t["log_coeffs"]
                            .as_array()
                            .unwrap()
                            .iter()
                            .map(|z| f(&z["re"]))
                            .collect();
                        (f(&t["x_exponent"]["re"]), coeffs)
                    })
                    .collect(),
                points: c["points"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|p| (f(&p["x"]), f(&p["direct"]), f(&p["remainder"])))
                    .collect(),
            }
        })
        .collect()
}

#[test]
fn engine_reproduces_frozen_terms() {
    for case in cases() {
        let e = expand_general(&case.spec, case.order).unwrap();
        assert_eq!(e.terms.len(), case.terms.len(), "{}", case.name);
        for (t, (p, coeffs)) in e.terms.iter().zip(&case.terms) {
            assert_eq!(t.x_exponent, C64::new(*p, 0.0), "{}", case.name);
            assert!(t.logpoly.degree().unwrap_or(0) < coeffs.len().max(1));
            for (k, &want) in coeffs.iter().enumerate() {
                let got = t.logpoly.coeff(k);
                let err = (got - C64::new(want, 0.0)).norm();
                assert!(
                    err <= 1e-13 + 1e-12 * want.abs(),
                    "{} x^{p} L^{k}: {got} vs {want}",
                    case.name
                );
            }
        }
    }
}

#[test]
fn direct_sum_reproduces_frozen_values() {
    for case in cases() {
        for &(x, want, _) in &case.points {
            let r = direct_sum(&case.spec, x, 1e-15).unwrap();
            let err = (r.value - C64::new(want, 0.0)).norm();
            assert!(
                err <= r.error_bound + 4.0 * f64::EPSILON * want.abs(),
                "{} x={x}: {err:e}",
                case.name
            );
        }
    }
}

/// The gap between expansion and direct sum is the true remainder of the
/// truncated expansion, not an engine error.
#[test]
fn remainder_is_intrinsic() {
    for case in cases() {
        let e = expand_general(&case.spec, case.order).unwrap();
        for &(x, direct, remainder) in &case.points {
            let gap = e.evaluate(x).re - direct;
            assert!(
                (gap - remainder).abs() <= 1e-12,
                "{} x={x}: gap {gap:e}, frozen {remainder:e}",
                case.name
            );
        }
    }
}

#[test]
fn divisor_block_at_x_tenth() {
    let case = cases().into_iter().find(|c| c.name == "divisor_over_n").unwrap();
    let (_, _, remainder) = case.points.iter().copied().find(|p| p.0 == 0.1).unwrap();
    assert!(remainder.abs() > 1e-7 && remainder.abs() < 2e-7);
    assert_eq!(case.terms[0].1.len(), 3);
    assert_eq!(case.terms[0].1[2], 0.125);
}
