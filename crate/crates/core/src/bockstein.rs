//! Bockstein homomorphisms, the Bockstein spectral sequence of a weighted
//! complex, recovery of integral homology from its pages, and the
//! comparison maps between mod-`p` and mod-`p²` persistence.

use std::fmt;

use crate::complex::{FilteredComplex, Simplex, WeightedComplex};
use crate::error::{Error, Result};
use crate::hom::{exact_at, ModuleHom};
use crate::homology::{
    chain_lattices, cycles_mod_boundaries, eta_image, homology, persistent_homology, persistent_lattices, weighted_boundary_matrix,
    Coefficients, Group,
};
use crate::lattice::Subquotient;
use crate::matrix::Matrix;
use crate::module::{ensure_prime, PresentationModule};
use crate::ring::{exact_div, pow, valuation, EuclideanRing, QPoly};

/// Page dimensions and differential ranks of the Bockstein spectral
/// sequence at one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BocksteinTable<R> {
    pub prime: R,
    /// `dims[r - 1][n] = dim E_n^r`.
    pub dims: Vec<Vec<usize>>,
    /// `ranks[r - 1][n] = rank (d^r : E_n^r → E_{n-1}^r)`; always 0 for `n = 0`.
    pub ranks: Vec<Vec<usize>>,
    /// First page from which nothing changes.
    pub stable_page: usize,
    /// `dim E_n^∞`.
    pub infinity: Vec<usize>,
}

impl<R: EuclideanRing> BocksteinTable<R> {
    pub fn pages(&self) -> usize {
        self.dims.len()
    }

    pub fn degrees(&self) -> usize {
        self.infinity.len()
    }

    /// `dim E_n^r`; pages past the table repeat the last one.
    pub fn dim(&self, r: usize, n: usize) -> usize {
        let r = r.min(self.pages());
        self.dims[r - 1].get(n).copied().unwrap_or(0)
    }

    /// `rank d^r` out of degree `n`; zero past the table.
    pub fn rank(&self, r: usize, n: usize) -> usize {
        self.ranks.get(r - 1).and_then(|row| row.get(n)).copied().unwrap_or(0)
    }

    /// Whether every differential on every page vanishes.
    pub fn all_differentials_zero(&self) -> bool {
        self.ranks.iter().flatten().all(|&r| r == 0)
    }
}

impl<R: EuclideanRing> fmt::Display for BocksteinTable<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "prime {}", self.prime)?;
        for r in 1..=self.pages() {
            let cells: Vec<String> = (0..self.degrees())
                .map(|n| {
                    let d = self.dim(r, n);
                    match self.rank(r, n) {
                        0 => format!("E{n}={d}"),
                        k => format!("E{n}={d} (rank d{r} {n}->{}: {k})", n - 1),
                    }
                })
                .collect();
            writeln!(f, "  page {r}: {}", cells.join(", "))?;
        }
        let inf: Vec<String> = self.infinity.iter().enumerate().map(|(n, d)| format!("E{n}={d}")).collect();
        write!(f, "  page inf (from {}): {}", self.stable_page, inf.join(", "))
    }
}

fn integral_modules<R: EuclideanRing>(k: &WeightedComplex<R>) -> Result<Vec<PresentationModule<R>>> {
    Ok(homology(k, &Coefficients::Integral)?.modules())
}

fn top_page(exps: &[Vec<u32>], max_r: usize) -> usize {
    let largest = exps.iter().flatten().copied().max().unwrap_or(0) as usize;
    max_r.max(largest + 1).max(1)
}

fn coefficients_mod<R: EuclideanRing>(p: &R, r: u32) -> Result<Coefficients<R>> {
    if r == 1 {
        Coefficients::residue(p.clone())
    } else {
        Coefficients::quotient(pow(p, r))
    }
}

/// Pages from the decomposition of integral homology: a free summand
/// survives forever, and `R/(p^e)` in `H_{n-1}` contributes a class to
/// `E_n^r` and `E_{n-1}^r` for `r ≤ e` that `d^e` kills.
pub fn closed_form_pages<R: EuclideanRing>(k: &WeightedComplex<R>, p: &R, max_r: usize) -> Result<BocksteinTable<R>> {
    let p = ensure_prime(p)?;
    let modules = integral_modules(k)?;
    let exps: Vec<Vec<u32>> = modules.iter().map(|m| m.p_primary_exponents(&p)).collect::<Result<_>>()?;
    let pages = top_page(&exps, max_r);
    let count = |n: usize, pred: &dyn Fn(u32) -> bool| exps[n].iter().filter(|&&e| pred(e)).count();
    let mut dims = Vec::with_capacity(pages);
    let mut ranks = Vec::with_capacity(pages);
    for r in 1..=pages as u32 {
        let mut drow = Vec::new();
        let mut rrow = Vec::new();
        for n in 0..modules.len() {
            let below = n.checked_sub(1);
            let mut d = modules[n].free_rank() + count(n, &|e| e >= r);
            let mut x = 0;
            if let Some(m) = below {
                d += count(m, &|e| e >= r);
                x = count(m, &|e| e == r);
            }
            drow.push(d);
            rrow.push(x);
        }
        dims.push(drow);
        ranks.push(rrow);
    }
    let infinity = modules.iter().map(PresentationModule::free_rank).collect();
    Ok(BocksteinTable {
        prime: p,
        dims,
        ranks,
        stable_page: pages,
        infinity,
    })
}

/// Pages as images of multiplication by `p^{r-1}` on `H_*(K, w; R/(p^r))`.
/// The image is spanned by the summands of order exactly `p^r`; ranks of
/// the differentials follow from the drop in dimension between pages,
/// solved downward from the top degree.
pub fn image_method_pages<R: EuclideanRing>(k: &WeightedComplex<R>, p: &R, max_r: usize) -> Result<BocksteinTable<R>> {
    let p = ensure_prime(p)?;
    let integral = integral_modules(k)?;
    let exps: Vec<Vec<u32>> = integral.iter().map(|m| m.p_primary_exponents(&p)).collect::<Result<_>>()?;
    let pages = top_page(&exps, max_r);
    let degrees = integral.len();
    let mut dims: Vec<Vec<usize>> = Vec::with_capacity(pages + 1);
    for r in 1..=(pages + 1) as u32 {
        let h = homology(k, &coefficients_mod(&p, r)?)?;
        dims.push(
            (0..degrees)
                .map(|n| {
                    h.group(n)
                        .module
                        .invariant_factors()
                        .iter()
                        .filter(|f| valuation(*f, &p) == r)
                        .count()
                })
                .collect(),
        );
    }
    let mut ranks = Vec::with_capacity(pages);
    for r in 0..pages {
        let mut row = vec![0usize; degrees];
        let mut above = 0usize;
        for n in (0..degrees).rev() {
            let drop = dims[r][n]
                .checked_sub(dims[r + 1][n])
                .ok_or_else(|| Error::Invariant(format!("page {} grows in degree {n}", r + 2)))?;
            let x = drop
                .checked_sub(above)
                .ok_or_else(|| Error::Invariant(format!("negative differential rank on page {}", r + 1)))?;
            row[n] = x;
            above = x;
        }
        if row[0] != 0 {
            return Err(Error::Invariant(format!("page {} has a differential out of degree 0", r + 1)));
        }
        ranks.push(row);
    }
    let infinity = dims[pages].clone();
    dims.truncate(pages);
    Ok(BocksteinTable {
        prime: p,
        dims,
        ranks,
        stable_page: pages,
        infinity,
    })
}

/// The Bockstein table at `p`, computed both from the integral
/// decomposition and from mod-`p^r` homology; the two must agree.
/// `max_r` is raised to one past the largest `p`-exponent if needed.
pub fn bockstein_pages<R: EuclideanRing>(k: &WeightedComplex<R>, p: &R, max_r: usize) -> Result<BocksteinTable<R>> {
    let closed = closed_form_pages(k, p, max_r)?;
    let image = image_method_pages(k, p, max_r)?;
    if closed != image {
        return Err(Error::Invariant(format!(
            "Bockstein pages at {p} disagree between the integral and mod p^r computations"
        )));
    }
    Ok(closed)
}

/// [`bockstein_pages`] over `Q[x]` at an irreducible `π`.
pub fn generalized_bockstein(k: &WeightedComplex<QPoly>, pi: &QPoly, max_r: usize) -> Result<BocksteinTable<QPoly>> {
    bockstein_pages(k, pi, max_r)
}

/// The chain-level Bockstein `β : H_n(R/(p)) → H_{n-1}(R/(p))`,
/// `[c] ↦ [∂c / p]`, for `n = 1..=dim K`. Entry `n - 1` of the result is
/// the map out of degree `n`.
pub fn bockstein_beta<R: EuclideanRing>(k: &WeightedComplex<R>, p: &R) -> Result<Vec<ModuleHom<R>>> {
    let p = ensure_prime(p)?;
    let Some(top) = k.dim() else {
        return Ok(Vec::new());
    };
    let groups: Vec<Subquotient<R>> = (0..=top)
        .map(|n| chain_lattices(k, n, &|_| true, &|_| true, Some(&p)).map(|l| cycles_mod_boundaries(&l)))
        .collect::<Result<_>>()?;
    (1..=top)
        .map(|n| {
            let d = weighted_boundary_matrix(k, n)?;
            let src = &groups[n];
            let tgt = &groups[n - 1];
            let cols = src
                .generators()
                .iter()
                .map(|c| {
                    let v = d
                        .mul_vec(c)
                        .iter()
                        .map(|x| exact_div(x, &p))
                        .collect::<Option<Vec<R>>>()
                        .ok_or_else(|| Error::Invariant(format!("boundary of a mod-{p} cycle in degree {n} is not divisible by {p}")))?;
                    tgt.coords(&v)
                        .ok_or_else(|| Error::Invariant(format!("Bockstein image in degree {} is not a cycle", n - 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            ModuleHom::new(
                src.orders().to_vec(),
                tgt.orders().to_vec(),
                Matrix::from_cols(tgt.orders().len(), &cols),
            )
        })
        .collect()
}

/// Exactness of the long sequence of `0 → R --p--> R → R/(p) → 0` at every
/// term: `H_{n+1}(R/p) → H_n --p--> H_n → H_n(R/p) → H_{n-1} → …`.
pub fn coefficient_sequence_exact<R: EuclideanRing>(k: &WeightedComplex<R>, p: &R) -> Result<bool> {
    let p = ensure_prime(p)?;
    let Some(top) = k.dim() else {
        return Ok(true);
    };
    let integral: Vec<Subquotient<R>> = (0..=top + 1)
        .map(|n| chain_lattices(k, n, &|_| true, &|_| true, None).map(|l| cycles_mod_boundaries(&l)))
        .collect::<Result<_>>()?;
    let modp: Vec<Subquotient<R>> = (0..=top + 1)
        .map(|n| chain_lattices(k, n, &|_| true, &|_| true, Some(&p)).map(|l| cycles_mod_boundaries(&l)))
        .collect::<Result<_>>()?;
    let times_p = |n: usize| ModuleHom::induced(&integral[n], &integral[n], |c| c.iter().map(|x| x.mul(&p)).collect());
    let reduce = |n: usize| ModuleHom::induced(&integral[n], &modp[n], |c| c.to_vec());
    let connecting = |n: usize| -> Result<ModuleHom<R>> {
        if n == 0 {
            return Ok(ModuleHom::zero(modp[0].orders().to_vec(), Vec::new()));
        }
        let d = weighted_boundary_matrix(k, n)?;
        ModuleHom::induced(&modp[n], &integral[n - 1], |c| {
            d.mul_vec(c).iter().map(|x| exact_div(x, &p).expect("mod-p cycle")).collect()
        })
    };
    // Sequence terms in order: ..., modp[n+1] -δ-> int[n] -p-> int[n] -red-> modp[n] -δ-> int[n-1] ...
    let mut maps = Vec::new();
    for n in (0..=top).rev() {
        maps.push(connecting(n + 1)?);
        maps.push(times_p(n)?);
        maps.push(reduce(n)?);
    }
    maps.push(connecting(0)?);
    for w in maps.windows(2) {
        if !w[1].compose(&w[0])?.is_zero() || !exact_at(&w[0], &w[1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Primes `p` for which some `H_n(K, w)` has `p`-torsion, ascending.
pub fn relevant_primes<R: EuclideanRing>(k: &WeightedComplex<R>) -> Result<Vec<R>> {
    let mut out: Vec<R> = Vec::new();
    for m in integral_modules(k)? {
        for f in m.invariant_factors() {
            let ps = f
                .prime_factors()
                .ok_or_else(|| Error::Invariant(format!("cannot factor the invariant factor {f}")))?;
            for p in ps {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out.sort_by(|a, b| a.norm().cmp(&b.norm()).then_with(|| a.to_string().cmp(&b.to_string())));
    Ok(out)
}

/// Integral homology per degree from Bockstein tables: the free rank is
/// `dim E^∞`, and the number of `R/(p^r)` summands in `H_n` is the rank of
/// `d^r` out of degree `n + 1`. Free ranks that disagree between tables
/// mean the tables were not built from one complex.
pub fn recover_integral<R: EuclideanRing>(tables: &[BocksteinTable<R>]) -> Result<Vec<PresentationModule<R>>> {
    let Some(first) = tables.first() else {
        return Err(Error::MissingPrime { degree: 0 });
    };
    let degrees = first.degrees();
    for t in tables {
        if t.degrees() != degrees {
            return Err(Error::MissingPrime { degree: degrees.min(t.degrees()) });
        }
        if let Some(n) = (0..degrees).find(|&n| t.infinity[n] != first.infinity[n]) {
            return Err(Error::MissingPrime { degree: n });
        }
    }
    Ok((0..degrees)
        .map(|n| {
            let mut factors = Vec::new();
            for t in tables {
                for r in 1..=t.pages() {
                    let q = pow(&t.prime, r as u32);
                    factors.extend(std::iter::repeat_n(q, t.rank(r, n + 1)));
                }
            }
            PresentationModule::new(first.infinity[n], factors)
        })
        .collect())
}

/// Tables at every relevant prime (or at [`EuclideanRing::smallest_prime`]
/// when there is no torsion) and the homology they recover.
pub fn bockstein_recover<R: EuclideanRing>(
    k: &WeightedComplex<R>,
    max_r: usize,
) -> Result<(Vec<BocksteinTable<R>>, Vec<PresentationModule<R>>)> {
    let mut primes = relevant_primes(k)?;
    if primes.is_empty() {
        primes.push(R::smallest_prime());
    }
    let tables = primes.iter().map(|p| bockstein_pages(k, p, max_r)).collect::<Result<Vec<_>>>()?;
    let recovered = recover_integral(&tables)?;
    Ok((tables, recovered))
}

/// An inclusion-induced map with its injectivity and surjectivity.
#[derive(Clone, Debug)]
pub struct InducedMap<R> {
    pub map: ModuleHom<R>,
    pub source: PresentationModule<R>,
    pub target: PresentationModule<R>,
    pub injective: bool,
    pub surjective: bool,
}

impl<R: EuclideanRing> InducedMap<R> {
    fn new(map: ModuleHom<R>, source: &Subquotient<R>, target: &Subquotient<R>) -> Self {
        InducedMap {
            injective: map.is_injective(),
            surjective: map.is_surjective(),
            source: source.module().clone(),
            target: target.module().clone(),
            map,
        }
    }
}

fn position_map(from: &[Simplex], to: &[Simplex]) -> Vec<usize> {
    from.iter()
        .map(|s| to.binary_search(s).expect("smaller complex is contained in the larger"))
        .collect()
}

fn embed<R: EuclideanRing>(v: &[R], pos: &[usize], len: usize) -> Vec<R> {
    let mut out = vec![R::zero(); len];
    for (x, &j) in v.iter().zip(pos) {
        out[j] = x.clone();
    }
    out
}

/// `θ_k^{i,q} : H_k^i → H_k^{i+q}` with the given coefficients.
pub fn theta_map<R: EuclideanRing>(
    f: &FilteredComplex<R>,
    k: usize,
    i: usize,
    q: usize,
    coeff: &Coefficients<R>,
) -> Result<InducedMap<R>> {
    let small = persistent_lattices(f, k, i, 0, coeff)?;
    let large = persistent_lattices(f, k, i + q, 0, coeff)?;
    let src = cycles_mod_boundaries(&small);
    let tgt = cycles_mod_boundaries(&large);
    let pos = position_map(&small.basis, &large.basis);
    let n = large.basis.len();
    let map = ModuleHom::induced(&src, &tgt, |c| embed(c, &pos, n))?;
    Ok(InducedMap::new(map, &src, &tgt))
}

/// `ε_k^{i,q} : H_k^{i,q} → H_k^{i+q}` with the given coefficients.
pub fn epsilon_map<R: EuclideanRing>(
    f: &FilteredComplex<R>,
    k: usize,
    i: usize,
    q: usize,
    coeff: &Coefficients<R>,
) -> Result<InducedMap<R>> {
    let src = cycles_mod_boundaries(&persistent_lattices(f, k, i, q, coeff)?);
    let tgt = cycles_mod_boundaries(&persistent_lattices(f, k, i + q, 0, coeff)?);
    let map = ModuleHom::induced(&src, &tgt, |c| c.to_vec())?;
    Ok(InducedMap::new(map, &src, &tgt))
}

/// Inputs and verdicts of the mod-`p^r` to mod-`p^{2r}` comparison.
#[derive(Clone, Debug)]
pub struct InducedMapReport<R> {
    pub k: usize,
    pub i: usize,
    pub q: usize,
    pub prime: R,
    /// Exponent `r` of the small modulus `p^r`.
    pub r: u32,
    pub theta_k: InducedMap<R>,
    /// `None` for `k = 0`.
    pub theta_k_minus_1: Option<InducedMap<R>>,
    pub epsilon: InducedMap<R>,
    /// `H_k^{i,q}(p^r)`, `H_k^{i+q}(p^r)`.
    pub persistent_k: Group<R>,
    pub later_k: Group<R>,
    /// `H_{k-1}^{i,q}(p^r)`, `H_{k-1}^{i}(p^r)`; zero for `k = 0`.
    pub persistent_k_minus_1: Group<R>,
    pub earlier_k_minus_1: Group<R>,
    /// `H_k^{i,q}(p^{2r})`, `H_k^{i+q}(p^{2r})`.
    pub persistent_square: Group<R>,
    pub later_square: Group<R>,
    pub first_hypothesis: bool,
    pub second_hypothesis: bool,
    pub conclusion: bool,
}

impl<R: EuclideanRing> InducedMapReport<R> {
    pub fn hypotheses_hold(&self) -> bool {
        self.first_hypothesis && self.second_hypothesis
    }

    /// Both hypotheses and the conclusion hold.
    pub fn verdict(&self) -> bool {
        self.hypotheses_hold() && self.conclusion
    }

    /// The hypotheses imply the conclusion on this instance.
    pub fn consistent(&self) -> bool {
        !self.hypotheses_hold() || self.conclusion
    }
}

impl<R: EuclideanRing> fmt::Display for InducedMapReport<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, i, q) = (self.k, self.i, self.q);
        let flags = |m: &InducedMap<R>| format!("injective={} surjective={}", m.injective, m.surjective);
        writeln!(f, "k={k} i={i} q={q} prime={} r={}", self.prime, self.r)?;
        writeln!(f, "theta_{k}: {} -> {} ({})", self.theta_k.source, self.theta_k.target, flags(&self.theta_k))?;
        if let Some(t) = &self.theta_k_minus_1 {
            writeln!(f, "theta_{}: {} -> {} ({})", k - 1, t.source, t.target, flags(t))?;
        }
        writeln!(f, "epsilon_{k}: {} -> {} ({})", self.epsilon.source, self.epsilon.target, flags(&self.epsilon))?;
        let prev = if k == 0 { "-1".to_string() } else { (k - 1).to_string() };
        writeln!(
            f,
            "hypothesis 1: H{prev}^{{{i},{q}}} = {} vs H{prev}^{i} = {} -> {}",
            self.persistent_k_minus_1, self.earlier_k_minus_1, self.first_hypothesis
        )?;
        writeln!(
            f,
            "hypothesis 2: H{k}^{{{i},{q}}} = {} vs H{k}^{} = {} -> {}",
            self.persistent_k,
            i + q,
            self.later_k,
            self.second_hypothesis
        )?;
        writeln!(
            f,
            "conclusion: H{k}^{{{i},{q}}} = {} vs H{k}^{} = {} -> {}",
            self.persistent_square,
            i + q,
            self.later_square,
            self.conclusion
        )?;
        write!(f, "verdict: {}", self.verdict())
    }
}

/// Compares `H_k^{i,q}` with `H_k^{i+q}` over `R/(p^{2r})` under the
/// hypotheses that `H_{k-1}^{i,q} ≅ H_{k-1}^i` and `H_k^{i,q} ≅ H_k^{i+q}`
/// over `R/(p^r)`. Isomorphism of these finite modules is equality of
/// invariant factors.
pub fn ptop2_check<R: EuclideanRing>(
    f: &FilteredComplex<R>,
    k: usize,
    i: usize,
    q: usize,
    p: &R,
    r: u32,
) -> Result<InducedMapReport<R>> {
    if r == 0 {
        return Err(Error::InvalidCoefficients("the exponent r must be at least 1".into()));
    }
    let p = ensure_prime(p)?;
    let small = coefficients_mod(&p, r)?;
    let square = Coefficients::quotient(pow(&p, 2 * r))?;
    f.check_step(i + q)?;

    let persistent_k = persistent_homology(f, k, i, q, &small)?;
    let later_k = persistent_homology(f, k, i + q, 0, &small)?;
    let (persistent_k_minus_1, earlier_k_minus_1, theta_k_minus_1) = match k.checked_sub(1) {
        None => (Group::zero(small.clone()), Group::zero(small.clone()), None),
        Some(m) => (
            persistent_homology(f, m, i, q, &small)?,
            persistent_homology(f, m, i, 0, &small)?,
            Some(theta_map(f, m, i, q, &small)?),
        ),
    };
    let persistent_square = persistent_homology(f, k, i, q, &square)?;
    let later_square = persistent_homology(f, k, i + q, 0, &square)?;
    let epsilon = epsilon_map(f, k, i, q, &square)?;
    let theta_k = theta_map(f, k, i, q, &small)?;
    debug_assert_eq!(eta_image(f, k, i, q, &small)?.module, persistent_k.module);

    Ok(InducedMapReport {
        k,
        i,
        q,
        prime: p,
        r,
        first_hypothesis: persistent_k_minus_1.module == earlier_k_minus_1.module,
        second_hypothesis: persistent_k.module == later_k.module,
        conclusion: persistent_square.module == later_square.module,
        theta_k,
        theta_k_minus_1,
        epsilon,
        persistent_k,
        later_k,
        persistent_k_minus_1,
        earlier_k_minus_1,
        persistent_square,
        later_square,
    })
}
