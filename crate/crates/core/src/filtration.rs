//! Filtration constructions: ideal chains, weight-rank thresholding, the
//! graph-to-clique pipeline and the Stanley-Reisner filtration.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::complex::{clique_complex, FilteredComplex, Simplex, WeightedComplex};
use crate::error::{Error, Result};
use crate::ring::{divides, pow, EuclideanRing, Monomial, MultiPoly};

/// Filtration `L^t = K ∖ w⁻¹((g_t))` for the descending chain
/// `R ⊇ (g_1) ⊇ … ⊇ (g_T) ⊇ 0`.
///
/// Step 0 is empty (the ideal `R`), steps `1..=T` follow the generators and
/// step `T + 1` is `K` (the zero ideal). A trailing zero generator is
/// accepted and ignored.
pub fn ideal_chain_filtration<R: EuclideanRing>(k: &WeightedComplex<R>, chain: &[R]) -> Result<FilteredComplex<R>> {
    if let Some((s, _)) = k.iter().find(|(_, w)| w.is_zero()) {
        return Err(Error::InvalidFiltration(format!(
            "{} has weight zero, which lies in every ideal",
            k.fmt_simplex(s)
        )));
    }
    let mut gens: Vec<R> = chain.to_vec();
    if gens.last().is_some_and(R::is_zero) {
        gens.pop();
    }
    for (t, g) in gens.iter().enumerate() {
        if g.is_zero() {
            return Err(Error::NotDescending(t + 1));
        }
        if t > 0 && !divides(&gens[t - 1], g) {
            return Err(Error::NotDescending(t + 1));
        }
    }
    let last = gens.len() + 1;
    let birth = k
        .iter()
        .map(|(s, w)| {
            let b = gens.iter().position(|g| !divides(g, w)).map_or(last, |t| t + 1);
            (s.clone(), b)
        })
        .collect();
    FilteredComplex::new(k.clone(), birth, last + 1)
}

/// A weight-rank filtration with its thresholds `ε_1 < … < ε_T`.
#[derive(Clone, Debug)]
pub struct WrsFiltration {
    pub filtration: FilteredComplex<BigInt>,
    pub thresholds: Vec<BigInt>,
}

/// Thresholds are the distinct weights; step `t < T` is
/// `{σ : w(σ) < ε_{t+1}}` and step `T` is `K`. Step 0 is always empty.
pub fn wrs_filtration(k: &WeightedComplex<BigInt>) -> Result<WrsFiltration> {
    if let Some((_, w)) = k.iter().find(|(_, w)| **w <= BigInt::from(0)) {
        return Err(Error::NonPositiveWeight(w.to_string()));
    }
    let report = k.validate();
    if let Some((s, f)) = report.missing_faces.first() {
        return Err(Error::MissingFace {
            simplex: k.fmt_simplex(s),
            face: k.fmt_simplex(f),
        });
    }
    if let Some((f, s)) = report.divisibility.first() {
        return Err(Error::InexactDivision {
            simplex: k.fmt_simplex(s),
            face: k.fmt_simplex(f),
        });
    }
    let thresholds: Vec<BigInt> = k.iter().map(|(_, w)| w.clone()).collect::<BTreeSet<_>>().into_iter().collect();
    let birth = k
        .iter()
        .map(|(s, w)| {
            let j = thresholds.binary_search(w).expect("weight is a threshold");
            (s.clone(), j + 1)
        })
        .collect();
    let filtration = FilteredComplex::new(k.clone(), birth, thresholds.len() + 1)?;
    Ok(WrsFiltration { filtration, thresholds })
}

/// Builds the weight-rank filtration and the ideal-chain filtration of
/// `R ⊇ (w_1) ⊇ (w_2) ⊇ …` over the sorted distinct weights, and reports
/// whether they agree. The ideal chain carries one extra leading empty step
/// (the ideal `R`); it is dropped before comparing.
pub fn check_ideal_equivalence(k: &WeightedComplex<BigInt>) -> Result<bool> {
    let wrs = wrs_filtration(k)?;
    for w in wrs.thresholds.windows(2) {
        if !divides(&w[0], &w[1]) {
            return Err(Error::NotDivisionOrdered(w[0].to_string(), w[1].to_string()));
        }
    }
    let ideal = ideal_chain_filtration(k, &wrs.thresholds)?;
    if ideal.steps() != wrs.filtration.steps() + 1 {
        return Ok(false);
    }
    Ok(k.iter().all(|(s, _)| ideal.birth(s).map(|b| b - 1) == wrs.filtration.birth(s)))
}

/// Which graph weights rank first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RankOrder {
    Ascending,
    #[default]
    Descending,
}

/// A simple undirected graph with positive rational edge weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    labels: Vec<String>,
    edges: Vec<(u32, u32, BigRational)>,
}

impl WeightedGraph {
    pub fn new(labels: Vec<String>, edges: Vec<(u32, u32, BigRational)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (u, v, w) in &edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {}", labels[*u as usize])));
            }
            if *u as usize >= labels.len() || *v as usize >= labels.len() {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) uses an unknown vertex")));
            }
            if !seen.insert((*u.min(v), *u.max(v))) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {} {}",
                    labels[*u as usize], labels[*v as usize]
                )));
            }
            if *w <= BigRational::from_integer(0.into()) {
                return Err(Error::NonPositiveWeight(w.to_string()));
            }
        }
        Ok(WeightedGraph { labels, edges })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(u32, u32, BigRational)] {
        &self.edges
    }

    /// Rank of each edge's weight among the distinct weights, starting at 1;
    /// equal weights share a rank.
    pub fn edge_ranks(&self, order: RankOrder) -> Vec<u32> {
        let mut distinct: Vec<&BigRational> = self.edges.iter().map(|e| &e.2).collect::<BTreeSet<_>>().into_iter().collect();
        if order == RankOrder::Descending {
            distinct.reverse();
        }
        let rank: HashMap<&BigRational, u32> = distinct.into_iter().zip(1..).collect();
        self.edges.iter().map(|e| rank[&e.2]).collect()
    }
}

/// Clique complex of the graph with weights `2^e`: vertices get `e = 0`,
/// an edge gets its rank, and a higher simplex the sum over its edges.
pub fn graph_to_weighted_clique(g: &WeightedGraph, max_dim: usize, order: RankOrder) -> Result<WeightedComplex<BigInt>> {
    let plain: Vec<(u32, u32)> = g.edges.iter().map(|(u, v, _)| (*u, *v)).collect();
    let simplices = clique_complex(g.labels.len(), &plain, max_dim)?;
    let ranks = g.edge_ranks(order);
    let exponent: HashMap<(u32, u32), u32> = g
        .edges
        .iter()
        .zip(&ranks)
        .map(|((u, v, _), &r)| ((*u.min(v), *u.max(v)), r))
        .collect();
    let two = BigInt::from(2);
    let mut k = WeightedComplex::new(g.labels.clone());
    for s in simplices {
        let vs = s.vertices();
        let e: u32 = vs
            .iter()
            .enumerate()
            .flat_map(|(i, a)| vs[i + 1..].iter().map(move |b| (*a, *b)))
            .map(|pair| exponent[&pair])
            .sum();
        k.insert(s, pow(&two, e))?;
    }
    Ok(k)
}

/// The full graph pipeline: one clique complex, weighted, then thresholded.
pub fn graph_to_filtration(g: &WeightedGraph, max_dim: usize, order: RankOrder) -> Result<(WeightedComplex<BigInt>, WrsFiltration)> {
    let k = graph_to_weighted_clique(g, max_dim, order)?;
    let f = wrs_filtration(&k)?;
    Ok((k, f))
}

/// Minimal non-faces of `k` over the vertex set `0..n`, as square-free
/// monomials. Candidates of size `s` are grown from faces of size `s - 1`,
/// so supersets of known non-faces are never visited.
pub fn minimal_non_faces<W: crate::complex::Weight>(n: usize, k: &WeightedComplex<W>) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = (0..n as u32)
        .filter(|&v| !k.contains(&Simplex::vertex(v)))
        .map(|v| Monomial::square_free(n, &[v as usize]))
        .collect();
    let mut size = 1;
    loop {
        let faces = k.simplices(size - 1);
        if faces.is_empty() {
            break;
        }
        for f in &faces {
            let last = *f.vertices().last().expect("nonempty");
            for v in last + 1..n as u32 {
                let mut cand = f.vertices().to_vec();
                cand.push(v);
                let c = Simplex::new(cand.clone()).expect("increasing vertices");
                if k.contains(&c) {
                    continue;
                }
                if c.boundary_faces().iter().all(|g| k.contains(g)) {
                    let vars: Vec<usize> = cand.iter().map(|&x| x as usize).collect();
                    out.push(Monomial::square_free(n, &vars));
                }
            }
        }
        size += 1;
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    out
}

/// The Stanley-Reisner filtration, re-indexed so that step 0 is the stable
/// end of the descending chain and the last step is `Δ_1`.
#[derive(Clone, Debug)]
pub struct StanleyReisnerFiltration {
    pub filtration: FilteredComplex<MultiPoly>,
    /// Generators of `I_{Δ_1}, I_{Δ_2}, …` in descending-chain order; the
    /// last one is the ideal of the stable complex.
    pub ideals: Vec<Vec<Monomial>>,
    /// `Δ_1 ⊋ Δ_2 ⊋ … ⊋ Δ_s`.
    pub chain: Vec<WeightedComplex<MultiPoly>>,
}

/// Iterates `Δ_{i+1} = Δ_i ∖ w⁻¹(I_{Δ_i})` until it stabilizes. Vertex `i`
/// is the variable `x_{i+1}`.
pub fn stanley_reisner_filtration(delta1: &WeightedComplex<MultiPoly>) -> Result<StanleyReisnerFiltration> {
    let n = delta1.labels().len();
    if let Some((s, w)) = delta1.iter().find(|(_, w)| w.nvars() != n) {
        return Err(Error::InvalidCoefficients(format!(
            "weight of {} uses {} variables but the complex has {n} vertices",
            delta1.fmt_simplex(s),
            w.nvars()
        )));
    }
    let mut chain = vec![delta1.clone()];
    let mut ideals = Vec::new();
    loop {
        let cur = chain.last().expect("nonempty chain");
        let gens = minimal_non_faces(n, cur);
        let next = cur.subcomplex_excluding_monomial_ideal(&gens);
        ideals.push(gens);
        if &next == cur {
            break;
        }
        chain.push(next);
    }
    let s = chain.len();
    let mut birth = BTreeMap::new();
    for (j, delta) in chain.iter().enumerate() {
        for (simplex, _) in delta.iter() {
            birth.insert(simplex.clone(), s - 1 - j);
        }
    }
    let filtration = FilteredComplex::new(delta1.clone(), birth, s)?;
    Ok(StanleyReisnerFiltration {
        filtration,
        ideals,
        chain,
    })
}

/// The same filtration with every weight set to the integer 1.
pub fn with_unit_integer_weights<W: crate::complex::Weight>(f: &FilteredComplex<W>) -> FilteredComplex<BigInt> {
    let k = f.complex().map_weights(|_| BigInt::from(1));
    FilteredComplex::new(k, f.births().clone(), f.steps()).expect("births are unchanged")
}
