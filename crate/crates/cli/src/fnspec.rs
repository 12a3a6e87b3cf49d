//! Test-function specifications for `verify --fn`:
//!
//! - `linear:A1,...,An[:C]` for `<a, x> + c`
//! - `max` for the largest coordinate
//! - `explin:LAMBDA[:C]` for `exp(LAMBDA Σ x_i + C)`
//! - `linstat:identity`, `linstat:stieltjes_re:A:B`, `linstat:stieltjes_im:A:B`
//!   for `(1/n) Σ f(x_i)` with `f(x) = x` or `Re`/`Im` of `1/(x - (A + iB))`
//! - `poly:FILE` for a symmetric polynomial in power sums: a JSON object
//!   `{"coefficients": {"2": "1", "": "-1 - 1/2*b"}}` keyed by partitions
//!   (`""` is the constant), coefficients rational or rational in `b` = beta.

use std::path::Path;

use loggas_core::inequalities::{Profile, TestFunction};
use loggas_core::symfun::{parse_coefficient, Partition, SymPolynomial};
use loggas_core::SymPolyBeta;

use crate::error::{usage, CliError, CliResult};
use crate::output::parse_reals;

fn real(s: &str, what: &str) -> CliResult<f64> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => usage(format!("{what}: cannot parse {s:?} as a finite real")),
    }
}

pub fn parse_fn(spec: &str, n: usize, beta: f64) -> CliResult<TestFunction> {
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let f = match kind {
        "linear" => {
            let (coeffs, c) = match rest.split_once(':') {
                Some((a, c)) => (a, real(c, "linear offset")?),
                None => (rest, 0.0),
            };
            let a = parse_reals(coeffs, "linear coefficients")?;
            TestFunction::Linear { a, c }
        }
        "max" if rest.is_empty() => TestFunction::MaxCoordinate,
        "explin" => {
            let (l, c) = match rest.split_once(':') {
                Some((l, c)) => (real(l, "explin lambda")?, real(c, "explin offset")?),
                None => (real(rest, "explin lambda")?, 0.0),
            };
            TestFunction::ExpLinear { lambda: l, c }
        }
        "linstat" => {
            let parts: Vec<&str> = rest.split(':').collect();
            let profile = match parts.as_slice() {
                ["identity"] => Profile::Identity,
                ["stieltjes_re", a, b] => Profile::StieltjesRe {
                    a: real(a, "stieltjes a")?,
                    b: real(b, "stieltjes b")?,
                },
                ["stieltjes_im", a, b] => Profile::StieltjesIm {
                    a: real(a, "stieltjes a")?,
                    b: real(b, "stieltjes b")?,
                },
                _ => return usage(format!("bad linear statistic {rest:?}")),
            };
            TestFunction::LinearStatistic(profile)
        }
        "poly" if !rest.is_empty() => TestFunction::SymPoly(load_poly(Path::new(rest), n)?.to_numeric(beta)),
        _ => {
            return usage(format!(
                "unknown function spec {spec:?}; expected linear:..., max, explin:..., linstat:..., poly:FILE"
            ))
        }
    };
    f.validate(n)?;
    Ok(f)
}

/// Reads a polynomial file (see the module docs) in `n` variables.
pub fn load_poly(path: &Path, n: usize) -> CliResult<SymPolyBeta> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: invalid JSON: {e}", path.display())))?;
    let Some(coeffs) = value.get("coefficients").and_then(|c| c.as_object()) else {
        return usage(format!("{}: expected an object with a \"coefficients\" map", path.display()));
    };
    let mut poly = SymPolynomial::zero(n);
    for (key, v) in coeffs {
        let Some(lambda) = Partition::parse(key) else {
            return usage(format!("{}: bad partition key {key:?}", path.display()));
        };
        let c = match v {
            serde_json::Value::String(s) => parse_coefficient(s),
            serde_json::Value::Number(x) => parse_coefficient(&x.to_string()),
            _ => None,
        };
        let Some(c) = c else {
            return usage(format!("{}: bad coefficient for {key:?}: {v}", path.display()));
        };
        poly.add_term(lambda, c);
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_builtin_specs() {
        assert_eq!(
            parse_fn("linear:1,1,1,1", 4, 2.0).unwrap(),
            TestFunction::Linear { a: vec![1.0; 4], c: 0.0 }
        );
        assert_eq!(
            parse_fn("linear:1,-1:0.5", 2, 2.0).unwrap(),
            TestFunction::Linear { a: vec![1.0, -1.0], c: 0.5 }
        );
        assert_eq!(parse_fn("max", 3, 2.0).unwrap(), TestFunction::MaxCoordinate);
        assert_eq!(
            parse_fn("explin:0.3", 3, 2.0).unwrap(),
            TestFunction::ExpLinear { lambda: 0.3, c: 0.0 }
        );
        assert_eq!(
            parse_fn("linstat:stieltjes_im:0.0:1.0", 3, 2.0).unwrap(),
            TestFunction::LinearStatistic(Profile::StieltjesIm { a: 0.0, b: 1.0 })
        );
        assert!(parse_fn("linear:1,1", 3, 2.0).is_err());
        assert!(parse_fn("linstat:stieltjes_im:0:0", 3, 2.0).is_err());
        assert!(parse_fn("sin", 3, 2.0).is_err());
    }

    #[test]
    fn loads_symbolic_polynomial() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.json");
        std::fs::write(&path, r#"{"coefficients": {"2": "1", "": "-1 - 1/2*b"}}"#).unwrap();
        let f = parse_fn(&format!("poly:{}", path.display()), 2, 2.0).unwrap();
        // p2 - 1 - beta/2 at x = (1, 1), beta = 2
        assert_eq!(f.value(&[1.0, 1.0]), 0.0);
    }
}
