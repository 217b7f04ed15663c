use num_bigint::BigInt;
use wphom::error::{Error, Result};
use wphom::homology::Coefficients;
use wphom::io::parse_qpoly;
use wphom::ring::{pow, QPoly};

fn bad(spec: &str, msg: &str) -> Error {
    Error::parse(1, 1, format!("coefficients '{spec}': {msg}"))
}

fn wrong_ring(spec: &str, ring: &str) -> Error {
    Error::InvalidCoefficients(format!("'{spec}' does not apply to {ring} weights"))
}

/// `z`, `q`, `fp:<p>` or `zmod:<m>`.
pub fn integer_coefficients(spec: &str) -> Result<Coefficients<BigInt>> {
    match spec {
        "z" => return Ok(Coefficients::Integral),
        "q" => return Ok(Coefficients::Fraction),
        "poly" => return Err(wrong_ring(spec, "integer")),
        _ => {}
    }
    let (kind, arg) = spec.split_once(':').ok_or_else(|| bad(spec, "unknown coefficient system"))?;
    if kind == "polymod" {
        return Err(wrong_ring(spec, "integer"));
    }
    let n: BigInt = arg.trim().parse().map_err(|_| bad(spec, "expected an integer"))?;
    match kind {
        "fp" => Coefficients::residue(n),
        "zmod" => Coefficients::quotient(n),
        _ => Err(bad(spec, "unknown coefficient system")),
    }
}

/// `poly`, `q` or `polymod:<π>^<r>`; write `π` in parentheses when it
/// contains `^` itself, e.g. `polymod:(x^2+1)^2`.
pub fn polynomial_coefficients(spec: &str, var: &str) -> Result<Coefficients<QPoly>> {
    match spec {
        "poly" => return Ok(Coefficients::Integral),
        "q" => return Ok(Coefficients::Fraction),
        "z" => return Err(wrong_ring(spec, "polynomial")),
        _ => {}
    }
    let Some(arg) = spec.strip_prefix("polymod:") else {
        return if spec.starts_with("fp:") || spec.starts_with("zmod:") {
            Err(wrong_ring(spec, "polynomial"))
        } else {
            Err(bad(spec, "unknown coefficient system"))
        };
    };
    let (pi, r) = split_power(arg);
    let r: u32 = r.parse().map_err(|_| bad(spec, "expected an exponent after '^'"))?;
    if r == 0 {
        return Err(bad(spec, "the exponent must be positive"));
    }
    let pi = parse_qpoly(pi, var)?;
    if r == 1 {
        Coefficients::residue(pi)
    } else {
        Coefficients::residue(pi.clone())?;
        Coefficients::quotient(pow(&pi, r))
    }
}

fn split_power(arg: &str) -> (&str, &str) {
    let arg = arg.trim();
    if let Some(rest) = arg.strip_prefix('(') {
        if let Some(close) = rest.rfind(')') {
            let tail = rest[close + 1..].trim();
            return (&rest[..close], tail.strip_prefix('^').unwrap_or(if tail.is_empty() { "1" } else { tail }));
        }
    }
    match arg.rsplit_once('^') {
        Some((pi, r)) => (pi, r),
        None => (arg, "1"),
    }
}
