//! Finitely generated modules over a Euclidean domain in canonical form.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{divides, gcd, valuation, EuclideanRing};
use crate::snf::smith_normal_form;

/// `R^free_rank ⊕ R/(f_1) ⊕ … ⊕ R/(f_t)` with `f_1 | f_2 | … | f_t`, every
/// `f_i` canonical, nonzero and not a unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PresentationModule<R> {
    free_rank: usize,
    invariant_factors: Vec<R>,
}

impl<R: EuclideanRing> PresentationModule<R> {
    pub fn zero() -> Self {
        PresentationModule {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        PresentationModule {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// The direct sum `⊕ R/(o)` over the given orders. A zero order is a
    /// free summand and unit orders vanish.
    pub fn from_orders<I: IntoIterator<Item = R>>(orders: I) -> Self {
        let mut free = 0;
        let mut torsion = Vec::new();
        for o in orders {
            if o.is_zero() {
                free += 1;
            } else if !o.is_unit() {
                torsion.push(o.normalized());
            }
        }
        Self::new(free, torsion)
    }

    /// `R^free_rank ⊕ ⊕ R/(f)`, with the cyclic summands recombined into
    /// invariant factors.
    pub fn new(free_rank: usize, factors: Vec<R>) -> Self {
        let mut free_rank = free_rank;
        let mut torsion = Vec::new();
        for f in factors {
            if f.is_zero() {
                free_rank += 1;
            } else if !f.is_unit() {
                torsion.push(f.normalized());
            }
        }
        let is_chain = torsion.windows(2).all(|w| divides(&w[0], &w[1]));
        let invariant_factors = if is_chain {
            torsion
        } else {
            let n = torsion.len();
            smith_normal_form(&Matrix::diagonal(n, n, &torsion))
                .diagonal()
                .into_iter()
                .filter(|d| !d.is_unit())
                .collect()
        };
        PresentationModule {
            free_rank,
            invariant_factors,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[R] {
        &self.invariant_factors
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Number of cyclic summands in the canonical decomposition.
    pub fn num_generators(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut f = self.invariant_factors.clone();
        f.extend(other.invariant_factors.iter().cloned());
        Self::new(self.free_rank + other.free_rank, f)
    }

    /// Valuations at `p` of the invariant factors, zeros dropped, ascending.
    pub fn p_primary_exponents(&self, p: &R) -> Result<Vec<u32>> {
        let p = ensure_prime(p)?;
        Ok(self
            .invariant_factors
            .iter()
            .map(|f| valuation(f, &p))
            .filter(|&v| v > 0)
            .collect())
    }

    /// Dimension of `M ⊗ R/(p)` over the residue field.
    pub fn dim_mod(&self, p: &R) -> usize {
        self.free_rank
            + self
                .invariant_factors
                .iter()
                .filter(|f| divides(p, f))
                .count()
    }

    /// `M ⊗ R/(m)`.
    pub fn tensor_quotient(&self, m: &R) -> Self {
        let mut orders = vec![m.clone(); self.free_rank];
        orders.extend(self.invariant_factors.iter().map(|f| gcd(f, m)));
        Self::from_orders(orders)
    }

    /// `Tor(M, R/(m))`.
    pub fn tor_quotient(&self, m: &R) -> Self {
        Self::from_orders(self.invariant_factors.iter().map(|f| gcd(f, m)))
    }
}

/// `R^ambient_rank / (column span of m)`.
pub fn cokernel<R: EuclideanRing>(m: &Matrix<R>, ambient_rank: usize) -> Result<PresentationModule<R>> {
    if m.rows() != ambient_rank {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows but the ambient rank is {ambient_rank}",
            m.rows()
        )));
    }
    let snf = smith_normal_form(m);
    Ok(PresentationModule::new(
        ambient_rank - snf.rank,
        snf.diagonal(),
    ))
}

/// Canonical associate of `p` after checking that it is prime. Elements whose
/// primality cannot be decided are accepted as asserted by the caller.
pub fn ensure_prime<R: EuclideanRing>(p: &R) -> Result<R> {
    if p.is_zero() || p.is_unit() || p.primality() == Some(false) {
        return Err(if R::ring_symbol() == "Z" {
            Error::NotPrime(p.to_string())
        } else {
            Error::Reducible(p.to_string())
        });
    }
    Ok(p.normalized())
}

/// How a cyclic summand `R/(f)` is written, e.g. `Z/4` or `Q[x]/(x^2)`.
pub fn cyclic_label<R: EuclideanRing>(f: &R) -> String {
    let s = f.to_string();
    if s.chars().all(|c| c.is_ascii_digit()) {
        format!("{}/{}", R::ring_symbol(), s)
    } else {
        format!("{}/({})", R::ring_symbol(), s)
    }
}

impl<R: EuclideanRing> fmt::Display for PresentationModule<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(R::ring_symbol().to_string()),
            r => parts.push(format!("{}^{}", R::ring_symbol(), r)),
        }
        parts.extend(self.invariant_factors.iter().map(cyclic_label));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}
