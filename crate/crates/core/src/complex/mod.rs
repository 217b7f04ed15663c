//! Weighted simplicial complexes.

mod clique;
mod filtered;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{Debug, Display};

use crate::error::{Error, Result};
use crate::ring::{divides, gcd, monomial_ideal_contains, EuclideanRing, Monomial, MultiPoly};

pub use clique::{clique_complex, clique_construction_count, reset_clique_construction_count};
pub use filtered::FilteredComplex;

/// Default bound on the number of simplices in a complex.
pub const DEFAULT_SIMPLEX_CAP: usize = 200_000;

/// A simplex as a strictly increasing list of vertex ids.
///
/// Simplices order by dimension first, then lexicographically, so iterating a
/// sorted collection visits each chain basis in order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    pub fn new(mut vertices: Vec<u32>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidSimplex("a simplex needs at least one vertex".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSimplex(format!("repeated vertex in {vertices:?}")));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertex(v: u32) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The face `d_i`, deleting the `i`-th vertex. `None` for vertices.
    pub fn face(&self, i: usize) -> Option<Simplex> {
        if self.0.len() < 2 {
            return None;
        }
        let mut v = self.0.clone();
        v.remove(i);
        Some(Simplex(v))
    }

    /// The codimension-one faces `d_0, …, d_dim`.
    pub fn boundary_faces(&self) -> Vec<Simplex> {
        (0..self.0.len()).filter_map(|i| self.face(i)).collect()
    }

    /// Every nonempty proper face.
    pub fn proper_faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        if n > 24 {
            panic!("simplex of dimension {} is too large to enumerate faces", n - 1);
        }
        (1u32..(1 << n) - 1)
            .map(|mask| Simplex((0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.0[i]).collect()))
            .collect()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A weight ring: anything with a divisibility relation.
pub trait Weight: Clone + Eq + Debug + Display + Send + Sync + 'static {
    fn is_zero_weight(&self) -> bool;
    /// `self | other`.
    fn divides_weight(&self, other: &Self) -> bool;
}

impl<R: EuclideanRing> Weight for R {
    fn is_zero_weight(&self) -> bool {
        self.is_zero()
    }
    fn divides_weight(&self, other: &Self) -> bool {
        divides(self, other)
    }
}

impl Weight for MultiPoly {
    fn is_zero_weight(&self) -> bool {
        self.is_zero()
    }
    fn divides_weight(&self, other: &Self) -> bool {
        self.divides(other)
    }
}

/// Findings of [`WeightedComplex::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// `(simplex, face)` pairs where the face is absent.
    pub missing_faces: Vec<(Simplex, Simplex)>,
    /// `(face, simplex)` pairs with `w(face) ∤ w(simplex)`.
    pub divisibility: Vec<(Simplex, Simplex)>,
    /// Simplices of weight zero. Legal, but homology refuses them as faces.
    pub zero_weights: Vec<Simplex>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.missing_faces.is_empty() && self.divisibility.is_empty()
    }
}

/// A finite simplicial complex with a weight on every simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedComplex<W> {
    labels: Vec<String>,
    weights: BTreeMap<Simplex, W>,
    cap: usize,
}

impl<W: Weight> WeightedComplex<W> {
    pub fn new(labels: Vec<String>) -> Self {
        Self::with_cap(labels, DEFAULT_SIMPLEX_CAP)
    }

    pub fn with_cap(labels: Vec<String>, cap: usize) -> Self {
        WeightedComplex {
            labels,
            weights: BTreeMap::new(),
            cap,
        }
    }

    /// Vertices named `0, 1, …, n-1`.
    pub fn with_numbered_vertices(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string()).collect())
    }

    /// Builds a complex from weighted simplices without checking closure or
    /// divisibility; see [`WeightedComplex::validate`].
    pub fn from_simplices(labels: Vec<String>, simplices: impl IntoIterator<Item = (Simplex, W)>) -> Result<Self> {
        let mut k = Self::new(labels);
        for (s, w) in simplices {
            k.insert(s, w)?;
        }
        Ok(k)
    }

    /// Adds or reweights a simplex.
    pub fn insert(&mut self, s: Simplex, w: W) -> Result<()> {
        if let Some(&v) = s.vertices().iter().find(|&&v| v as usize >= self.labels.len()) {
            return Err(Error::InvalidSimplex(format!("unknown vertex id {v}")));
        }
        if !self.weights.contains_key(&s) && self.weights.len() >= self.cap {
            return Err(Error::CapExceeded(self.cap));
        }
        self.weights.insert(s, w);
        Ok(())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn vertex_id(&self, label: &str) -> Option<u32> {
        self.labels.iter().position(|l| l == label).map(|i| i as u32)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.weights.keys().next_back().map(Simplex::dim)
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.weights.contains_key(s)
    }

    pub fn weight(&self, s: &Simplex) -> Option<&W> {
        self.weights.get(s)
    }

    /// All simplices with weights, by dimension then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &W)> {
        self.weights.iter()
    }

    /// The chain basis in degree `n`: `n`-simplices in lexicographic order.
    pub fn simplices(&self, n: usize) -> Vec<Simplex> {
        let lo = Simplex(vec![0; n + 1]);
        self.weights
            .range(lo..)
            .map(|(s, _)| s)
            .take_while(|s| s.dim() == n)
            .cloned()
            .collect()
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for s in self.weights.keys() {
            if f.len() <= s.dim() {
                f.resize(s.dim() + 1, 0);
            }
            f[s.dim()] += 1;
        }
        f
    }

    /// Reports face-closure failures, divisibility failures over all pairs
    /// `σ₁ ⊊ σ₂`, and zero weights.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (s, w) in &self.weights {
            if w.is_zero_weight() {
                report.zero_weights.push(s.clone());
            }
            for f in s.proper_faces() {
                match self.weights.get(&f) {
                    None => report.missing_faces.push((s.clone(), f)),
                    Some(fw) if !fw.divides_weight(w) => report.divisibility.push((f, s.clone())),
                    Some(_) => {}
                }
            }
        }
        report.missing_faces.sort();
        report.divisibility.sort();
        report
    }

    /// Adds every missing face with the given weight.
    pub fn close_faces(&mut self, fill: W) -> Result<()> {
        let missing: BTreeSet<Simplex> = self
            .weights
            .keys()
            .flat_map(Simplex::proper_faces)
            .filter(|f| !self.weights.contains_key(f))
            .collect();
        for f in missing {
            self.insert(f, fill.clone())?;
        }
        Ok(())
    }

    /// The simplices satisfying `keep`, with their weights.
    pub fn restrict(&self, keep: impl Fn(&Simplex, &W) -> bool) -> Self {
        WeightedComplex {
            labels: self.labels.clone(),
            weights: self
                .weights
                .iter()
                .filter(|(s, w)| keep(s, w))
                .map(|(s, w)| (s.clone(), w.clone()))
                .collect(),
            cap: self.cap,
        }
    }

    pub fn map_weights<V: Weight>(&self, f: impl Fn(&W) -> V) -> WeightedComplex<V> {
        WeightedComplex {
            labels: self.labels.clone(),
            weights: self.weights.iter().map(|(s, w)| (s.clone(), f(w))).collect(),
            cap: self.cap,
        }
    }

    /// `[a,b,c]` using vertex labels.
    pub fn fmt_simplex(&self, s: &Simplex) -> String {
        let names: Vec<&str> = s
            .vertices()
            .iter()
            .map(|&v| self.labels.get(v as usize).map_or("?", String::as_str))
            .collect();
        format!("[{}]", names.join(","))
    }

    /// Human-readable lines for a validation report.
    pub fn describe(&self, report: &ValidationReport) -> Vec<String> {
        let mut out = Vec::new();
        for (s, f) in &report.missing_faces {
            out.push(format!("error: face {} of {} is missing", self.fmt_simplex(f), self.fmt_simplex(s)));
        }
        for (f, s) in &report.divisibility {
            out.push(format!(
                "error: w{} = {} does not divide w{} = {}",
                self.fmt_simplex(f),
                self.weights[f],
                self.fmt_simplex(s),
                self.weights[s]
            ));
        }
        for s in &report.zero_weights {
            out.push(format!("warning: {} has weight zero", self.fmt_simplex(s)));
        }
        out
    }
}

impl<R: EuclideanRing> WeightedComplex<R> {
    /// `K ∖ w⁻¹(I)` for the principal ideal generated by the gcd of
    /// `ideal_gens`. An empty generator list is the zero ideal.
    pub fn subcomplex_excluding_ideal(&self, ideal_gens: &[R]) -> Self {
        let g = ideal_gens.iter().fold(R::zero(), |acc, x| gcd(&acc, x));
        self.restrict(|_, w| !divides(&g, w))
    }

    /// All weights replaced by one.
    pub fn unweighted(&self) -> Self {
        self.map_weights(|_| R::one())
    }
}

impl WeightedComplex<MultiPoly> {
    /// `K ∖ w⁻¹(I)` for the monomial ideal generated by `ideal_gens`.
    pub fn subcomplex_excluding_monomial_ideal(&self, ideal_gens: &[Monomial]) -> Self {
        self.restrict(|_, w| !monomial_ideal_contains(ideal_gens, w))
    }
}
