//! Euclidean domains used as weight and coefficient rings.
//!
//! Two carriers implement [`EuclideanRing`]: unbounded integers
//! ([`num_bigint::BigInt`]) and univariate polynomials with rational
//! coefficients ([`QPoly`]). Multivariate polynomials ([`MultiPoly`]) only
//! appear as Stanley-Reisner weights and are not a Euclidean domain.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub mod multipoly;
pub mod poly;

pub use multipoly::{monomial_divides, monomial_ideal_contains, Monomial, MultiPoly};
pub use poly::QPoly;

/// An integral domain with a division algorithm.
///
/// Canonical representatives (used for gcds and invariant factors) are the
/// nonnegative integers and the monic polynomials.
pub trait EuclideanRing: Clone + Eq + Debug + Display + Send + Sync + 'static {
    /// Euclidean size; remainders are strictly smaller than divisors.
    type Norm: Ord + Clone + Debug;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Quotient and remainder, with `r == 0` or `norm(r) < norm(d)`.
    ///
    /// Panics when `d` is zero.
    fn div_rem(&self, d: &Self) -> (Self, Self);

    fn norm(&self) -> Self::Norm;

    /// A unit `u` such that `u * self` is the canonical associate of `self`.
    fn normalizing_unit(&self) -> Self;

    /// Multiplicative inverse, if `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;

    /// Canonical residue of `self` modulo a nonzero `m`.
    fn reduce(&self, m: &Self) -> Self;

    /// Short name of the ring used in reports, e.g. `Z` or `Q[x]`.
    fn ring_symbol() -> &'static str;

    /// Name of the fraction field, e.g. `Q` or `Q(x)`.
    fn fraction_symbol() -> &'static str;

    /// A fixed prime of the ring: `2` for the integers, `x` for polynomials.
    fn smallest_prime() -> Self;

    /// Whether `self` is prime (irreducible). `None` when this cannot be
    /// decided cheaply.
    fn primality(&self) -> Option<bool>;

    /// Distinct canonical prime factors of a nonzero element, ascending, or
    /// `None` when factoring is out of reach.
    fn prime_factors(&self) -> Option<Vec<Self>>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn is_unit(&self) -> bool {
        self.unit_inverse().is_some()
    }

    fn normalized(&self) -> Self {
        self.normalizing_unit().mul(self)
    }
}

/// `a | b`. Zero divides only zero.
pub fn divides<R: EuclideanRing>(a: &R, b: &R) -> bool {
    if a.is_zero() {
        return b.is_zero();
    }
    b.div_rem(a).1.is_zero()
}

/// `b / a` when the division is exact.
pub fn exact_div<R: EuclideanRing>(b: &R, a: &R) -> Option<R> {
    if a.is_zero() {
        return if b.is_zero() { Some(R::zero()) } else { None };
    }
    let (q, r) = b.div_rem(a);
    r.is_zero().then_some(q)
}

/// Canonical gcd.
pub fn gcd<R: EuclideanRing>(a: &R, b: &R) -> R {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.div_rem(&y).1;
        x = y;
        y = r;
    }
    x.normalized()
}

/// Returns `(g, s, t)` with `g = s*a + t*b` and `g` canonical.
pub fn ext_gcd<R: EuclideanRing>(a: &R, b: &R) -> (R, R, R) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (R::one(), R::zero());
    let (mut t0, mut t1) = (R::zero(), R::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        r0 = r1;
        r1 = r;
        let s = s0.sub(&q.mul(&s1));
        s0 = s1;
        s1 = s;
        let t = t0.sub(&q.mul(&t1));
        t0 = t1;
        t1 = t;
    }
    let u = r0.normalizing_unit();
    (u.mul(&r0), u.mul(&s0), u.mul(&t0))
}

/// Canonical lcm.
pub fn lcm<R: EuclideanRing>(a: &R, b: &R) -> R {
    if a.is_zero() || b.is_zero() {
        return R::zero();
    }
    let g = gcd(a, b);
    exact_div(&a.mul(b), &g)
        .expect("gcd divides the product")
        .normalized()
}

pub fn pow<R: EuclideanRing>(base: &R, exp: u32) -> R {
    let mut acc = R::one();
    for _ in 0..exp {
        acc = acc.mul(base);
    }
    acc
}

/// Multiplicity of the prime `p` in a nonzero `a`.
pub fn valuation<R: EuclideanRing>(a: &R, p: &R) -> u32 {
    assert!(!a.is_zero(), "valuation of zero is unbounded");
    let mut v = 0;
    let mut cur = a.clone();
    while let Some(q) = exact_div(&cur, p) {
        cur = q;
        v += 1;
    }
    v
}

impl EuclideanRing for BigInt {
    type Norm = num_bigint::BigUint;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        Integer::div_rem(self, d)
    }
    fn norm(&self) -> Self::Norm {
        self.magnitude().clone()
    }
    fn normalizing_unit(&self) -> Self {
        if self.is_negative() {
            -<BigInt as One>::one()
        } else {
            <BigInt as One>::one()
        }
    }
    fn unit_inverse(&self) -> Option<Self> {
        (self.magnitude().is_one()).then(|| self.clone())
    }
    fn reduce(&self, m: &Self) -> Self {
        self.mod_floor(&m.abs())
    }
    fn ring_symbol() -> &'static str {
        "Z"
    }
    fn fraction_symbol() -> &'static str {
        "Q"
    }
    fn smallest_prime() -> Self {
        BigInt::from(2)
    }
    fn primality(&self) -> Option<bool> {
        Some(is_prime(&self.abs()))
    }
    fn prime_factors(&self) -> Option<Vec<Self>> {
        Some(prime_factors(self))
    }
}

/// Primality of an integer: trial division by small primes, then
/// Miller-Rabin with the first twelve prime bases (deterministic below
/// 3.3e24).
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    const SMALL: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if Zero::is_zero(&(n % &p)) {
            return false;
        }
    }
    let one = <BigInt as One>::one();
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'bases: for a in SMALL {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Distinct prime divisors of a nonzero integer, ascending.
pub fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut rest = n.abs();
    if Zero::is_zero(&rest) {
        return out;
    }
    let mut p = BigInt::from(2);
    let limit = BigInt::from(100_000);
    while &p * &p <= rest && p < limit {
        if Zero::is_zero(&(&rest % &p)) {
            out.push(p.clone());
            while Zero::is_zero(&(&rest % &p)) {
                rest /= &p;
            }
        }
        p += 1;
    }
    if rest > <BigInt as One>::one() {
        split_large(&rest, &mut out);
    }
    out.sort();
    out.dedup();
    out
}

fn split_large(n: &BigInt, out: &mut Vec<BigInt>) {
    if One::is_one(n) {
        return;
    }
    if is_prime(n) {
        out.push(n.clone());
        return;
    }
    let d = pollard_rho(n);
    split_large(&d, out);
    split_large(&(n / &d), out);
}

fn pollard_rho(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let mut c = <BigInt as One>::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut x, mut y) = (BigInt::from(2), BigInt::from(2));
        let mut d = <BigInt as One>::one();
        while One::is_one(&d) {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1;
    }
}

/// Small helper for tests and generators.
pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_gcd_is_nonnegative() {
        assert_eq!(gcd(&int(-12), &int(18)), int(6));
        assert_eq!(gcd(&int(0), &int(-5)), int(5));
        assert_eq!(gcd(&int(0), &int(0)), int(0));
    }

    #[test]
    fn ext_gcd_bezout() {
        for (a, b) in [(240, 46), (-7, 3), (0, 9), (12, 0), (-4, -6)] {
            let (g, s, t) = ext_gcd(&int(a), &int(b));
            assert_eq!(&s * int(a) + &t * int(b), g);
            assert_eq!(g, gcd(&int(a), &int(b)));
        }
    }

    #[test]
    fn reduce_is_floor_mod() {
        assert_eq!(int(-3).reduce(&int(4)), int(1));
        assert_eq!(int(9).reduce(&int(-4)), int(1));
    }

    #[test]
    fn valuation_counts_prime_powers() {
        assert_eq!(valuation(&int(48), &int(2)), 4);
        assert_eq!(valuation(&int(48), &int(3)), 1);
        assert_eq!(valuation(&int(48), &int(5)), 0);
    }

    #[test]
    fn primality() {
        let primes: Vec<i64> = (0..200).filter(|n| is_prime(&int(*n))).collect();
        let brute: Vec<i64> = (0..200)
            .filter(|&n| n >= 2 && (2..n).all(|d| n % d != 0))
            .collect();
        assert_eq!(primes, brute);
        assert!(is_prime(&int(1_000_000_007)));
        assert!(!is_prime(&(int(1_000_000_007) * int(998_244_353))));
    }

    #[test]
    fn factoring() {
        assert_eq!(prime_factors(&int(360)), vec![int(2), int(3), int(5)]);
        assert_eq!(prime_factors(&int(-49)), vec![int(7)]);
        assert!(prime_factors(&int(1)).is_empty());
        let big = int(1_000_000_007) * int(998_244_353);
        assert_eq!(
            prime_factors(&big),
            vec![int(998_244_353), int(1_000_000_007)]
        );
    }
}
