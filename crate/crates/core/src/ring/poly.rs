//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::EuclideanRing;

/// A polynomial in one variable with exact rational coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`; the last entry is nonzero, and the
/// zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x^k`.
    pub fn x_pow(k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        QPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Multiplies by a rational scalar.
    pub fn scaled(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Whether the polynomial is irreducible over the rationals, when that can
    /// be decided cheaply: constants are not, degree 1 always is, and degree 2
    /// or 3 is irreducible exactly when there is no rational root. Returns
    /// `None` for higher degrees.
    pub fn irreducible_hint(&self) -> Option<bool> {
        match self.degree() {
            None | Some(0) => Some(false),
            Some(1) => Some(true),
            Some(2) | Some(3) => Some(!self.has_rational_root()),
            _ => None,
        }
    }

    fn has_rational_root(&self) -> bool {
        !self.rational_roots().is_empty()
    }

    /// Distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        if self.degree().is_none_or(|d| d == 0) {
            return Vec::new();
        }
        // Clear denominators, then apply the rational root theorem.
        let denom_lcm = self
            .coeffs
            .iter()
            .fold(<BigInt as One>::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let mut roots = Vec::new();
        let shift = ints.iter().take_while(|c| Zero::is_zero(*c)).count();
        if shift > 0 {
            roots.push(BigRational::zero());
        }
        let ints = &ints[shift..];
        if ints.len() < 2 {
            return roots;
        }
        let divisors = |n: &BigInt| -> Vec<BigInt> {
            let n = n.abs();
            let mut out = Vec::new();
            let mut d = <BigInt as One>::one();
            while &d * &d <= n {
                if Zero::is_zero(&(&n % &d)) {
                    out.push(d.clone());
                    out.push(&n / &d);
                }
                d += 1;
            }
            out
        };
        let lead = ints.last().expect("nonzero polynomial");
        for p in divisors(&ints[0]) {
            for q in divisors(lead) {
                for sign in [1, -1] {
                    let r = BigRational::new(&p * sign, q.clone());
                    if self.eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }

    /// Formats with the given variable name, highest degree first.
    pub fn fmt_with(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("x"))
    }
}

impl EuclideanRing for QPoly {
    type Norm = usize;

    fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        QPoly {
            coeffs: vec![BigRational::one()],
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Self::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
    fn neg(&self) -> Self {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if sd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); sd - dd + 1];
        for k in (dd..=sd).rev() {
            let c = &rem[k] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &c * dc;
            }
            quot[k - dd] = c;
        }
        (Self::new(quot), Self::new(rem))
    }
    fn norm(&self) -> usize {
        self.coeffs.len()
    }
    fn normalizing_unit(&self) -> Self {
        match self.leading() {
            Some(lc) => Self::constant(lc.recip()),
            None => Self::one(),
        }
    }
    fn unit_inverse(&self) -> Option<Self> {
        (self.coeffs.len() == 1).then(|| Self::constant(self.coeffs[0].recip()))
    }
    fn reduce(&self, m: &Self) -> Self {
        self.div_rem(m).1
    }
    fn ring_symbol() -> &'static str {
        "Q[x]"
    }
    fn fraction_symbol() -> &'static str {
        "Q(x)"
    }
    fn smallest_prime() -> Self {
        QPoly::x_pow(1)
    }
    fn primality(&self) -> Option<bool> {
        self.irreducible_hint()
    }
    /// Splits off every rational linear factor; a cofactor of degree 2 or
    /// 3 without rational roots is irreducible, anything larger is not
    /// factored.
    fn prime_factors(&self) -> Option<Vec<Self>> {
        let mut out = Vec::new();
        let mut rest = self.normalized();
        for r in self.rational_roots() {
            let lin = QPoly::new(vec![-r, BigRational::one()]);
            while let Some(q) = crate::ring::exact_div(&rest, &lin) {
                rest = q;
            }
            out.push(lin);
        }
        match rest.degree() {
            Some(0) | None => {}
            Some(1..=3) => out.push(rest.normalized()),
            Some(_) => return None,
        }
        out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs.cmp(&b.coeffs)));
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{gcd, EuclideanRing};

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn divmod_x_squared_plus_one_by_x() {
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[0, 1]));
        assert_eq!(q, p(&[0, 1]));
        assert_eq!(r, p(&[1]));
    }

    #[test]
    fn divmod_identity_holds() {
        let a = p(&[3, -2, 0, 5, 1]);
        let b = p(&[2, 0, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    #[should_panic(expected = "division by zero")]
    fn divide_by_zero_panics() {
        p(&[1, 1]).div_rem(&QPoly::zero());
    }

    #[test]
    fn gcd_is_monic() {
        // (x-1)(x+2) and 3(x-1)(x+5)
        let a = p(&[-2, 1, 1]);
        let b = p(&[-15, 12, 3]);
        assert_eq!(gcd(&a, &b), p(&[-1, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, 1]).to_string(), "x^2 + 1");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(QPoly::zero().to_string(), "0");
        let half = QPoly::constant(BigRational::new(1.into(), 2.into())).mul(&p(&[0, 0, 3]));
        assert_eq!(half.to_string(), "3/2*x^2");
    }

    #[test]
    fn irreducibility_hints() {
        assert_eq!(p(&[0, 1]).irreducible_hint(), Some(true));
        assert_eq!(p(&[1, 0, 1]).irreducible_hint(), Some(true));
        assert_eq!(p(&[-1, 0, 1]).irreducible_hint(), Some(false));
        assert_eq!(p(&[0, 0, 1]).irreducible_hint(), Some(false));
        assert_eq!(p(&[3]).irreducible_hint(), Some(false));
        assert_eq!(p(&[1, 0, 0, 0, 1]).irreducible_hint(), None);
    }

    #[test]
    fn factoring_splits_linear_factors() {
        assert_eq!(p(&[0, 0, 1]).prime_factors(), Some(vec![p(&[0, 1])]));
        // 2(x-1)(x+2)(x^2+1)
        let f = p(&[2]).mul(&p(&[-1, 1])).mul(&p(&[2, 1])).mul(&p(&[1, 0, 1]));
        assert_eq!(
            f.prime_factors(),
            Some(vec![p(&[-1, 1]), p(&[2, 1]), p(&[1, 0, 1])])
        );
        assert_eq!(p(&[1, 0, 0, 0, 1]).prime_factors(), None);
    }
}
