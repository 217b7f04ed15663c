//! Seeded random weighted complexes, filtrations, covers and graphs.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::complex::{FilteredComplex, Simplex, WeightedComplex};
use crate::filtration::WeightedGraph;
use crate::ring::{divides, int, lcm};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape limits for [`random_complex`].
#[derive(Clone, Copy, Debug)]
pub struct ComplexShape {
    pub max_vertices: usize,
    pub max_dim: usize,
    pub max_simplices: usize,
}

impl Default for ComplexShape {
    fn default() -> Self {
        ComplexShape {
            max_vertices: 6,
            max_dim: 2,
            max_simplices: 40,
        }
    }
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// A random valid complex whose weights are divisors of `modulus`; every
/// weight is a multiple of the weights of its faces.
pub fn random_complex(rng: &mut impl Rng, shape: ComplexShape, modulus: u64) -> WeightedComplex<BigInt> {
    let n = rng.gen_range(1..=shape.max_vertices.max(1));
    let mut set: BTreeSet<Simplex> = (0..n as u32).map(Simplex::vertex).collect();
    let tops = rng.gen_range(0..=2 * n);
    for _ in 0..tops {
        let size = rng.gen_range(2..=shape.max_dim + 1).min(n);
        if size < 2 {
            break;
        }
        let mut verts: Vec<u32> = (0..n as u32).collect();
        verts.shuffle(rng);
        let s = Simplex::new(verts[..size].to_vec()).expect("distinct vertices");
        let mut grown: BTreeSet<Simplex> = set.clone();
        grown.insert(s.clone());
        grown.extend(s.proper_faces());
        if grown.len() <= shape.max_simplices {
            set = grown;
        }
    }
    let pool = divisors(modulus);
    let mut k = WeightedComplex::new((0..n).map(|i| format!("v{i}")).collect());
    for s in set {
        let base = s
            .boundary_faces()
            .iter()
            .fold(int(1), |acc, f| lcm(&acc, k.weight(f).expect("faces come first")));
        let choices: Vec<u64> = pool.iter().copied().filter(|&d| divides(&base, &int(d as i64))).collect();
        let w = *choices.choose(rng).expect("the modulus is always a choice");
        k.insert(s, int(w as i64)).expect("vertex ids are in range");
    }
    k
}

/// Random face-compatible births over `steps` steps.
pub fn random_filtration(rng: &mut impl Rng, k: &WeightedComplex<BigInt>, steps: usize) -> FilteredComplex<BigInt> {
    let mut birth: BTreeMap<Simplex, usize> = BTreeMap::new();
    for (s, _) in k.iter() {
        let floor = s.boundary_faces().iter().map(|f| birth[f]).max().unwrap_or(0);
        let b = rng.gen_range(floor..steps);
        birth.insert(s.clone(), b);
    }
    FilteredComplex::new(k.clone(), birth, steps).expect("births respect faces")
}

/// Splits `K` into two face-closed parts covering it: maximal simplices are
/// handed out at random, each together with its faces.
pub fn random_cover(rng: &mut impl Rng, k: &WeightedComplex<BigInt>) -> (Vec<Simplex>, Vec<Simplex>) {
    let mut parts = [BTreeSet::new(), BTreeSet::new()];
    let all: Vec<Simplex> = k.iter().map(|(s, _)| s.clone()).collect();
    for s in all.iter().rev() {
        if parts.iter().any(|p| p.contains(s)) {
            continue;
        }
        let side = rng.gen_range(0..2);
        parts[side].insert(s.clone());
        parts[side].extend(s.proper_faces());
    }
    let [a, b] = parts;
    (a.into_iter().collect(), b.into_iter().collect())
}

/// A simple graph on at most `max_vertices` vertices with weights drawn from
/// a handful of small rationals, so that ties are common.
pub fn random_graph(rng: &mut impl Rng, max_vertices: usize) -> WeightedGraph {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let density: f64 = rng.gen_range(0.2..0.8);
    let values: Vec<BigRational> = (1..=6).map(|d| BigRational::new(d.into(), 4.into())).collect();
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(density) {
                edges.push((u, v, values.choose(rng).expect("nonempty").clone()));
            }
        }
    }
    WeightedGraph::new((0..n).map(|i| format!("g{i}")).collect(), edges).expect("simple graph with positive weights")
}
