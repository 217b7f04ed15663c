//! Weighted boundary matrices and (persistent) homology.
//!
//! Every coefficient system goes through one lattice computation over the
//! base ring `R`. For `R/(m)` coefficients, cycles are lifted to
//! `{c : ∂c ∈ m·R^k}` and boundaries to `im ∂ + m·R^n`; the homology is the
//! subquotient of the two. Fraction-field coefficients keep only the free
//! part of the integral answer.

use std::fmt;

use crate::complex::{FilteredComplex, Simplex, WeightedComplex};
use crate::error::{Error, Result};
use crate::lattice::Subquotient;
use crate::matrix::Matrix;
use crate::module::{cyclic_label, ensure_prime, PresentationModule};
use crate::ring::{exact_div, EuclideanRing};
use crate::snf::kernel_basis;

/// The coefficients homology is taken with.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients<R> {
    /// The base ring itself.
    Integral,
    /// Its field of fractions.
    Fraction,
    /// The residue field `R/(p)` for a prime `p`.
    Residue(R),
    /// `R/(m)` for a nonzero non-unit `m`.
    Quotient(R),
}

impl<R: EuclideanRing> Coefficients<R> {
    pub fn residue(p: R) -> Result<Self> {
        Ok(Coefficients::Residue(ensure_prime(&p)?))
    }

    pub fn quotient(m: R) -> Result<Self> {
        if m.is_zero() || m.is_unit() {
            return Err(Error::InvalidCoefficients(format!(
                "modulus {m} must be nonzero and not a unit"
            )));
        }
        Ok(Coefficients::Quotient(m.normalized()))
    }

    pub fn modulus(&self) -> Option<&R> {
        match self {
            Coefficients::Residue(m) | Coefficients::Quotient(m) => Some(m),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Coefficients::Fraction | Coefficients::Residue(_))
    }

    pub fn label(&self) -> String {
        match self {
            Coefficients::Integral => R::ring_symbol().to_string(),
            Coefficients::Fraction => R::fraction_symbol().to_string(),
            Coefficients::Residue(m) | Coefficients::Quotient(m) => cyclic_label(m),
        }
    }
}

/// A homology group with its coefficient system.
///
/// The module is always presented over the base ring: `Z/2`-homology of
/// dimension 3 is the `Z`-module `Z/2 ⊕ Z/2 ⊕ Z/2`. Over the fraction field
/// only the free rank is kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group<R> {
    pub coeff: Coefficients<R>,
    pub module: PresentationModule<R>,
}

impl<R: EuclideanRing> Group<R> {
    pub fn zero(coeff: Coefficients<R>) -> Self {
        Group {
            coeff,
            module: PresentationModule::zero(),
        }
    }

    /// Dimension over the coefficient field, `None` for non-field
    /// coefficients.
    pub fn dim(&self) -> Option<usize> {
        match self.coeff {
            Coefficients::Fraction => Some(self.module.free_rank()),
            Coefficients::Residue(_) => Some(self.module.num_generators()),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero()
    }
}

impl<R: EuclideanRing> fmt::Display for Group<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.coeff, self.module.free_rank()) {
            (Coefficients::Fraction, 0) => f.write_str("0"),
            (Coefficients::Fraction, 1) => f.write_str(R::fraction_symbol()),
            (Coefficients::Fraction, r) => write!(f, "{}^{}", R::fraction_symbol(), r),
            _ => write!(f, "{}", self.module),
        }
    }
}

/// Homology in one degree, with representative cycles as integral chains in
/// the chain basis `basis`.
#[derive(Clone, Debug)]
pub struct DegreeHomology<R> {
    pub degree: usize,
    pub group: Group<R>,
    pub basis: Vec<Simplex>,
    pub generators: Vec<Vec<R>>,
    pub orders: Vec<R>,
}

#[derive(Clone, Debug)]
pub struct HomologyResult<R> {
    pub coeff: Coefficients<R>,
    pub degrees: Vec<DegreeHomology<R>>,
}

impl<R: EuclideanRing> HomologyResult<R> {
    /// `H_n`, zero outside the computed range.
    pub fn group(&self, n: usize) -> Group<R> {
        self.degrees
            .get(n)
            .map_or_else(|| Group::zero(self.coeff.clone()), |d| d.group.clone())
    }

    pub fn modules(&self) -> Vec<PresentationModule<R>> {
        self.degrees.iter().map(|d| d.group.module.clone()).collect()
    }
}

impl<R: EuclideanRing> fmt::Display for HomologyResult<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degrees.is_empty() {
            return f.write_str("H0 = 0");
        }
        let parts: Vec<String> = self
            .degrees
            .iter()
            .map(|d| format!("H{} = {}", d.degree, d.group))
            .collect();
        f.write_str(&parts.join("; "))
    }
}

/// The matrix of `∂_n : C_n → C_{n-1}` in the lexicographic chain bases. The
/// entry for the face `d_i σ` is `(-1)^i · w(σ) / w(d_i σ)`.
pub fn weighted_boundary_matrix<R: EuclideanRing>(k: &WeightedComplex<R>, n: usize) -> Result<Matrix<R>> {
    let cols = k.simplices(n);
    if n == 0 {
        return Ok(Matrix::zeros(0, cols.len()));
    }
    let rows = k.simplices(n - 1);
    let index: std::collections::HashMap<&Simplex, usize> = rows.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (j, s) in cols.iter().enumerate() {
        let w = k.weight(s).expect("simplex from the complex");
        for (i, f) in s.boundary_faces().into_iter().enumerate() {
            let Some(&row) = index.get(&f) else {
                return Err(Error::MissingFace {
                    simplex: k.fmt_simplex(s),
                    face: k.fmt_simplex(&f),
                });
            };
            let fw = k.weight(&f).expect("indexed face");
            if fw.is_zero() {
                return Err(Error::ZeroWeight {
                    simplex: k.fmt_simplex(s),
                    face: k.fmt_simplex(&f),
                });
            }
            let ratio = exact_div(w, fw).ok_or_else(|| Error::InexactDivision {
                simplex: k.fmt_simplex(s),
                face: k.fmt_simplex(&f),
            })?;
            m.set(row, j, if i % 2 == 0 { ratio } else { ratio.neg() });
        }
    }
    Ok(m)
}

/// Lifted cycle and boundary lattices in `R^basis`.
#[derive(Clone, Debug)]
pub struct ChainLattices<R> {
    pub basis: Vec<Simplex>,
    pub cycles: Vec<Vec<R>>,
    pub boundaries: Vec<Vec<R>>,
}

/// Cycle and boundary lattices in degree `n` of `outer`. Cycles are taken
/// over the simplices accepted by `in_cycles`, boundaries over those
/// accepted by `in_bounds`; both predicates must describe subcomplexes.
pub fn chain_lattices<R: EuclideanRing>(
    outer: &WeightedComplex<R>,
    n: usize,
    in_cycles: &dyn Fn(&Simplex) -> bool,
    in_bounds: &dyn Fn(&Simplex) -> bool,
    modulus: Option<&R>,
) -> Result<ChainLattices<R>> {
    let basis = outer.simplices(n);
    let size = basis.len();
    let unit = |j: usize, c: R| {
        let mut e = vec![R::zero(); size];
        e[j] = c;
        e
    };
    let cyc_idx: Vec<usize> = (0..size).filter(|&j| in_cycles(&basis[j])).collect();
    let d = weighted_boundary_matrix(outer, n)?.select_cols(&cyc_idx);
    let local: Vec<Vec<R>> = if d.rows() == 0 {
        (0..cyc_idx.len())
            .map(|j| {
                let mut e = vec![R::zero(); cyc_idx.len()];
                e[j] = R::one();
                e
            })
            .collect()
    } else {
        match modulus {
            None => kernel_basis(&d),
            Some(m) => {
                let scaled = Matrix::diagonal(d.rows(), d.rows(), &vec![m.clone(); d.rows()]);
                kernel_basis(&d.hcat(&scaled))
                    .into_iter()
                    .map(|v| v[..cyc_idx.len()].to_vec())
                    .collect()
            }
        }
    };
    let cycles = local
        .into_iter()
        .map(|v| {
            let mut e = vec![R::zero(); size];
            for (x, &j) in v.into_iter().zip(&cyc_idx) {
                e[j] = x;
            }
            e
        })
        .collect();

    let up = outer.simplices(n + 1);
    let d_up = weighted_boundary_matrix(outer, n + 1)?;
    let mut boundaries: Vec<Vec<R>> = (0..up.len())
        .filter(|&j| in_bounds(&up[j]))
        .map(|j| d_up.col(j))
        .collect();
    if let Some(m) = modulus {
        boundaries.extend((0..size).filter(|&j| in_bounds(&basis[j])).map(|j| unit(j, m.clone())));
    }
    Ok(ChainLattices {
        basis,
        cycles,
        boundaries,
    })
}

/// `Z / (B ∩ Z)` for the given lattices.
pub fn cycles_mod_boundaries<R: EuclideanRing>(l: &ChainLattices<R>) -> Subquotient<R> {
    Subquotient::new(l.basis.len(), &l.cycles, &l.boundaries)
}

fn degree_result<R: EuclideanRing>(
    degree: usize,
    coeff: &Coefficients<R>,
    basis: Vec<Simplex>,
    sq: &Subquotient<R>,
) -> DegreeHomology<R> {
    let (generators, orders): (Vec<Vec<R>>, Vec<R>) = sq
        .generators()
        .iter()
        .cloned()
        .zip(sq.orders().iter().cloned())
        .filter(|(_, o)| !matches!(coeff, Coefficients::Fraction) || o.is_zero())
        .unzip();
    DegreeHomology {
        degree,
        group: group_of(coeff, sq.module()),
        basis,
        generators,
        orders,
    }
}

fn group_of<R: EuclideanRing>(coeff: &Coefficients<R>, module: &PresentationModule<R>) -> Group<R> {
    let module = match coeff {
        Coefficients::Fraction => PresentationModule::free(module.free_rank()),
        _ => module.clone(),
    };
    Group {
        coeff: coeff.clone(),
        module,
    }
}

/// `H_n(K, w; coeff)` for every `n` up to the dimension of `K`.
pub fn homology<R: EuclideanRing>(k: &WeightedComplex<R>, coeff: &Coefficients<R>) -> Result<HomologyResult<R>> {
    let top = k.dim();
    let mut degrees = Vec::new();
    for n in 0..=top.unwrap_or(0) {
        if top.is_none() {
            break;
        }
        let l = chain_lattices(k, n, &|_| true, &|_| true, coeff.modulus())?;
        let sq = cycles_mod_boundaries(&l);
        degrees.push(degree_result(n, coeff, l.basis, &sq));
    }
    Ok(HomologyResult {
        coeff: coeff.clone(),
        degrees,
    })
}

/// Homology with every weight replaced by one.
pub fn unweighted_homology<R: EuclideanRing>(
    k: &WeightedComplex<R>,
    coeff: &Coefficients<R>,
) -> Result<HomologyResult<R>> {
    homology(&k.unweighted(), coeff)
}

fn check_indices<R: EuclideanRing>(f: &FilteredComplex<R>, i: usize, q: usize) -> Result<()> {
    f.check_step(i)?;
    f.check_step(i + q)
}

/// The persistence lattices for `H_k^{i,q}`: cycles of `K^i` and boundaries
/// of `K^{i+q}`, inside the chain group of `K^{i+q}`.
pub fn persistent_lattices<R: EuclideanRing>(
    f: &FilteredComplex<R>,
    k: usize,
    i: usize,
    q: usize,
    coeff: &Coefficients<R>,
) -> Result<ChainLattices<R>> {
    check_indices(f, i, q)?;
    let outer = f.step_complex(i + q)?;
    let birth = |s: &Simplex| f.birth(s).expect("simplex of the filtration");
    chain_lattices(&outer, k, &|s| birth(s) <= i, &|_| true, coeff.modulus())
}

/// `H_k^{i,q} = Z_k^i / (B_k^{i+q} ∩ Z_k^i)`.
pub fn persistent_homology<R: EuclideanRing>(
    f: &FilteredComplex<R>,
    k: usize,
    i: usize,
    q: usize,
    coeff: &Coefficients<R>,
) -> Result<Group<R>> {
    let l = persistent_lattices(f, k, i, q, coeff)?;
    Ok(group_of(coeff, cycles_mod_boundaries(&l).module()))
}

/// Image of the inclusion-induced map `H_k^i → H_k^{i+q}`, computed as
/// `(Z_k^i + B_k^{i+q}) / B_k^{i+q}`.
pub fn eta_image<R: EuclideanRing>(
    f: &FilteredComplex<R>,
    k: usize,
    i: usize,
    q: usize,
    coeff: &Coefficients<R>,
) -> Result<Group<R>> {
    let l = persistent_lattices(f, k, i, q, coeff)?;
    let mut num = l.cycles.clone();
    num.extend(l.boundaries.iter().cloned());
    let sq = Subquotient::new(l.basis.len(), &num, &l.boundaries);
    Ok(group_of(coeff, sq.module()))
}

/// `H_n ⊗ R/(m) ⊕ Tor(H_{n-1}, R/(m))` from integral homology.
pub fn universal_coefficients<R: EuclideanRing>(
    integral: &HomologyResult<R>,
    n: usize,
    m: &R,
) -> PresentationModule<R> {
    let here = integral.group(n).module.tensor_quotient(m);
    match n.checked_sub(1) {
        Some(prev) => here.direct_sum(&integral.group(prev).module.tor_quotient(m)),
        None => here,
    }
}
