//! Multivariate polynomials with rational coefficients, as needed for
//! Stanley-Reisner weights: products, single-divisor exact division and
//! monomial ideal membership.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector over a fixed, ordered variable list.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// Square-free monomial with the given variables set to exponent 1.
    pub fn square_free(nvars: usize, vars: &[usize]) -> Self {
        let mut e = vec![0; nvars];
        for &v in vars {
            e[v] = 1;
        }
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn fmt_with(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    vars[i].clone()
                } else {
                    format!("{}^{}", vars[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Lexicographic order with the first variable most significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `m1 | m2`.
pub fn monomial_divides(m1: &Monomial, m2: &Monomial) -> bool {
    m1.0.iter().zip(&m2.0).all(|(a, b)| a <= b)
}

/// A polynomial lies in a monomial ideal iff each of its terms is divisible
/// by one of the generators. The zero polynomial lies in every ideal.
pub fn monomial_ideal_contains(gens: &[Monomial], f: &MultiPoly) -> bool {
    f.terms()
        .iter()
        .all(|(_, m)| gens.iter().any(|g| monomial_divides(g, m)))
}

/// Terms sorted by descending lexicographic monomial order, no zero
/// coefficients, no repeated monomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<(BigRational, Monomial)>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(BigRational::one(), Monomial::one(nvars))
    }

    pub fn monomial(c: BigRational, m: Monomial) -> Self {
        Self::from_terms(m.nvars(), vec![(c, m)])
    }

    /// Builds a canonical polynomial, merging repeated monomials.
    pub fn from_terms(nvars: usize, terms: Vec<(BigRational, Monomial)>) -> Self {
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (c, m) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (c, m))
            .collect();
        MultiPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(BigRational, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// A nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.degree() == 0
    }

    pub fn leading(&self) -> Option<&(BigRational, Monomial)> {
        self.terms.first()
    }

    pub fn add(&self, other: &Self) -> Self {
        let terms = self.terms.iter().chain(&other.terms).cloned().collect();
        Self::from_terms(self.nvars, terms)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(&-BigRational::one()))
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        let terms = self.terms.iter().map(|(a, m)| (a * c, m.clone())).collect();
        Self::from_terms(self.nvars, terms)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, m) in &self.terms {
            for (b, n) in &other.terms {
                terms.push((a * b, m.mul(n)));
            }
        }
        Self::from_terms(self.nvars, terms)
    }

    /// Exact quotient `self / d`, if `d` divides `self`.
    ///
    /// With a single divisor the division algorithm leaves a zero remainder
    /// exactly when `d | self`, since `{d}` is a Gröbner basis of `(d)`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (dc, dm) = d.leading()?.clone();
        let mut rest = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((c, m)) = rest.leading().cloned() {
            let qm = m.div(&dm)?;
            let q = Self::monomial(c / &dc, qm);
            rest = rest.sub(&q.mul(d));
            quot = quot.add(&q);
        }
        Some(quot)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.exact_div(self).is_some()
    }

    pub fn fmt_with(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (c, m) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.degree() == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&m.fmt_with(vars));
            } else {
                out.push_str(&format!("{}*{}", mag, m.fmt_with(vars)));
            }
        }
        out
    }
}

/// Writes variables as `x1, x2, …`.
impl std::fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vars: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.fmt_with(&vars))
    }
}
