//! Smith normal form over a Euclidean domain, and the lattice operations
//! built on it: membership/solve, kernels and column-span bases.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{exact_div, EuclideanRing};

/// `U · M · V = D` with `U`, `V` invertible over the ring.
///
/// The first `rank` diagonal entries of `D` are nonzero, canonical, and each
/// divides the next; every other entry of `D` is zero.
#[derive(Clone, Debug)]
pub struct Snf<R> {
    pub d: Matrix<R>,
    pub u: Matrix<R>,
    pub u_inv: Matrix<R>,
    pub v: Matrix<R>,
    pub v_inv: Matrix<R>,
    pub rank: usize,
}

impl<R: EuclideanRing> Snf<R> {
    /// The nonzero diagonal entries `d_1 | d_2 | … | d_rank`.
    pub fn diagonal(&self) -> Vec<R> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Work<R> {
    a: Matrix<R>,
    u: Matrix<R>,
    u_inv: Matrix<R>,
    v: Matrix<R>,
    v_inv: Matrix<R>,
}

impl<R: EuclideanRing> Work<R> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// `row[dst] += c * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: &R) {
        self.a.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &c.neg());
    }

    /// `col[dst] += c * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: &R) {
        self.a.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, &c.neg());
    }

    fn scale_row(&mut self, i: usize, unit: &R) {
        let inv = unit.unit_inverse().expect("scaling by a unit");
        self.a.scale_row(i, unit);
        self.u.scale_row(i, unit);
        self.u_inv.scale_col(i, &inv);
    }

    /// Smallest-norm nonzero entry of the trailing submatrix, first in
    /// row-major order among ties.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), R::Norm)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let e = self.a.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let n = e.norm();
                if best.as_ref().is_none_or(|(_, b)| n < *b) {
                    best = Some(((i, j), n));
                }
            }
        }
        best.map(|(pos, _)| pos)
    }

    /// Same rule restricted to row `t` and column `t`.
    fn find_cross_pivot(&self, t: usize) -> (usize, usize) {
        let mut cands: Vec<(usize, usize)> = (t..self.a.cols()).map(|j| (t, j)).collect();
        cands.extend((t + 1..self.a.rows()).map(|i| (i, t)));
        cands.sort();
        let mut best: Option<((usize, usize), R::Norm)> = None;
        for (i, j) in cands {
            let e = self.a.get(i, j);
            if e.is_zero() {
                continue;
            }
            let n = e.norm();
            if best.as_ref().is_none_or(|(_, b)| n < *b) {
                best = Some(((i, j), n));
            }
        }
        best.expect("pivot cross has a nonzero entry").0
    }

    /// Clears row `t` and column `t` outside the pivot. Returns false if a
    /// nonzero remainder was left behind.
    fn eliminate_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.a.rows() {
            if self.a.get(i, t).is_zero() {
                continue;
            }
            let q = self.a.get(i, t).div_rem(self.a.get(t, t)).0;
            self.add_row(i, t, &q.neg());
            clean &= self.a.get(i, t).is_zero();
        }
        for j in t + 1..self.a.cols() {
            if self.a.get(t, j).is_zero() {
                continue;
            }
            let q = self.a.get(t, j).div_rem(self.a.get(t, t)).0;
            self.add_col(j, t, &q.neg());
            clean &= self.a.get(t, j).is_zero();
        }
        clean
    }

    fn non_divisible_entry(&self, t: usize) -> Option<usize> {
        let p = self.a.get(t, t);
        for i in t + 1..self.a.rows() {
            for j in t + 1..self.a.cols() {
                if !self.a.get(i, j).div_rem(p).1.is_zero() {
                    return Some(i);
                }
            }
        }
        None
    }
}

/// Smith normal form with deterministic pivoting: at each stage the pivot is
/// the smallest-norm nonzero entry, ties broken by row-major position.
pub fn smith_normal_form<R: EuclideanRing>(m: &Matrix<R>) -> Snf<R> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: Matrix::identity(rows),
        u_inv: Matrix::identity(rows),
        v: Matrix::identity(cols),
        v_inv: Matrix::identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = w.find_pivot(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            if !w.eliminate_cross(t) {
                let (i, j) = w.find_cross_pivot(t);
                w.swap_rows(t, i);
                w.swap_cols(t, j);
                continue;
            }
            match w.non_divisible_entry(t) {
                Some(i) => w.add_row(t, i, &R::one()),
                None => break,
            }
        }
        let unit = w.a.get(t, t).normalizing_unit();
        if !unit.is_one() {
            w.scale_row(t, &unit);
        }
        t += 1;
    }
    Snf {
        d: w.a,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
        rank: t,
    }
}

/// Precomputed solver for `M · x = b` over the ring.
#[derive(Clone, Debug)]
pub struct LatticeSolver<R> {
    snf: Snf<R>,
}

impl<R: EuclideanRing> LatticeSolver<R> {
    pub fn new(m: &Matrix<R>) -> Self {
        LatticeSolver {
            snf: smith_normal_form(m),
        }
    }

    pub fn rows(&self) -> usize {
        self.snf.d.rows()
    }

    /// A solution of `M · x = b`, or `None` when `b` is outside the column
    /// lattice of `M`.
    pub fn solve(&self, b: &[R]) -> Option<Vec<R>> {
        assert_eq!(b.len(), self.rows(), "right-hand side length");
        let y = self.snf.u.mul_vec(b);
        let cols = self.snf.d.cols();
        let mut z = vec![R::zero(); cols];
        for (i, yi) in y.iter().enumerate() {
            if i < self.snf.rank {
                z[i] = exact_div(yi, self.snf.d.get(i, i))?;
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&z))
    }

    pub fn contains(&self, b: &[R]) -> bool {
        self.solve(b).is_some()
    }
}

/// Solves `M · x = b` exactly over the ring. `Ok(None)` signals that `b` does
/// not lie in the column lattice of `M`.
pub fn hermite_solve<R: EuclideanRing>(m: &Matrix<R>, b: &[R]) -> Result<Option<Vec<R>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, right-hand side has length {}",
            m.rows(),
            b.len()
        )));
    }
    Ok(LatticeSolver::new(m).solve(b))
}

/// A basis of the kernel sublattice `{x : M·x = 0}`, `cols - rank` vectors.
pub fn kernel_basis<R: EuclideanRing>(m: &Matrix<R>) -> Vec<Vec<R>> {
    let snf = smith_normal_form(m);
    (snf.rank..m.cols()).map(|j| snf.v.col(j)).collect()
}

/// A basis of the lattice spanned by the columns of `g`.
pub fn column_basis<R: EuclideanRing>(g: &Matrix<R>) -> Vec<Vec<R>> {
    let snf = smith_normal_form(g);
    (0..snf.rank)
        .map(|i| {
            let d = snf.d.get(i, i);
            snf.u_inv.col(i).iter().map(|e| e.mul(d)).collect()
        })
        .collect()
}

/// Number of SNF diagonal entries not divisible by `p`: the rank of `m`
/// reduced into the residue field `R/(p)`.
pub fn rank_mod<R: EuclideanRing>(m: &Matrix<R>, p: &R) -> usize {
    smith_normal_form(m)
        .diagonal()
        .iter()
        .filter(|d| !d.div_rem(p).1.is_zero())
        .count()
}
