use std::cell::Cell;
use std::collections::BTreeSet;

use super::Simplex;
use crate::error::{Error, Result};

thread_local! {
    static CONSTRUCTIONS: Cell<usize> = const { Cell::new(0) };
}

/// How many clique complexes the current thread has built.
pub fn clique_construction_count() -> usize {
    CONSTRUCTIONS.with(Cell::get)
}

pub fn reset_clique_construction_count() {
    CONSTRUCTIONS.with(|c| c.set(0));
}

/// All cliques with at most `max_dim + 1` vertices of a simple graph on
/// vertices `0..n`, sorted.
pub fn clique_complex(n: usize, edges: &[(u32, u32)], max_dim: usize) -> Result<Vec<Simplex>> {
    CONSTRUCTIONS.with(|c| c.set(c.get() + 1));
    let mut adj = vec![BTreeSet::new(); n];
    for &(u, v) in edges {
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
        }
        if u as usize >= n || v as usize >= n {
            return Err(Error::InvalidGraph(format!("edge ({u}, {v}) uses an unknown vertex")));
        }
        if !adj[u as usize].insert(v) {
            return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
        }
        adj[v as usize].insert(u);
    }
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u32>> = (0..n as u32).map(|v| vec![v]).collect();
    for _ in 0..=max_dim {
        if layer.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for c in &layer {
            let last = *c.last().expect("cliques are nonempty");
            for &v in adj[last as usize].range(last + 1..) {
                if c.iter().all(|u| adj[*u as usize].contains(&v)) {
                    let mut d = c.clone();
                    d.push(v);
                    next.push(d);
                }
            }
        }
        out.extend(layer.drain(..).map(Simplex));
        layer = next;
    }
    out.sort();
    Ok(out)
}
