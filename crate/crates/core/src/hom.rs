//! Homomorphisms between modules presented as `⊕ R/(o_i)`, and the lattice
//! tests for composites and exactness.

use crate::error::{Error, Result};
use crate::lattice::Subquotient;
use crate::matrix::Matrix;
use crate::ring::EuclideanRing;
use crate::snf::{kernel_basis, smith_normal_form, LatticeSolver};

/// A map `⊕ R/(a_j) → ⊕ R/(b_i)` given by the images of the source
/// generators. Column `j` of `matrix` holds the target coordinates of the
/// image of generator `j`, reduced modulo the target orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHom<R> {
    source: Vec<R>,
    target: Vec<R>,
    matrix: Matrix<R>,
}

impl<R: EuclideanRing> ModuleHom<R> {
    pub fn new(source: Vec<R>, target: Vec<R>, matrix: Matrix<R>) -> Result<Self> {
        if matrix.rows() != target.len() || matrix.cols() != source.len() {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{} for {} source and {} target generators",
                matrix.rows(),
                matrix.cols(),
                source.len(),
                target.len()
            )));
        }
        let mut matrix = matrix;
        for (i, o) in target.iter().enumerate() {
            if o.is_zero() {
                continue;
            }
            for j in 0..matrix.cols() {
                let r = matrix.get(i, j).reduce(o);
                matrix.set(i, j, r);
            }
        }
        Ok(ModuleHom {
            source,
            target,
            matrix,
        })
    }

    /// The map between two subquotients induced by a chain-level map `f`.
    pub fn induced(src: &Subquotient<R>, tgt: &Subquotient<R>, f: impl Fn(&[R]) -> Vec<R>) -> Result<Self> {
        let cols = src
            .generators()
            .iter()
            .map(|g| {
                tgt.coords(&f(g))
                    .ok_or_else(|| Error::Invariant("chain map does not land in the target cycles".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            src.orders().to_vec(),
            tgt.orders().to_vec(),
            Matrix::from_cols(tgt.orders().len(), &cols),
        )
    }

    /// Zero map between the given presentations.
    pub fn zero(source: Vec<R>, target: Vec<R>) -> Self {
        let matrix = Matrix::zeros(target.len(), source.len());
        ModuleHom {
            source,
            target,
            matrix,
        }
    }

    pub fn source_orders(&self) -> &[R] {
        &self.source
    }

    pub fn target_orders(&self) -> &[R] {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.matrix
    }

    /// Overwrites one entry. Used to build corrupted fixtures.
    pub fn set_entry(&mut self, i: usize, j: usize, v: R) {
        let v = if self.target[i].is_zero() { v } else { v.reduce(&self.target[i]) };
        self.matrix.set(i, j, v);
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.target != self.source {
            return Err(Error::DimensionMismatch("composed maps do not share a module".into()));
        }
        Self::new(other.source.clone(), self.target.clone(), self.matrix.mul(&other.matrix))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Relations of the target: `b_i · e_i` for every nonzero order.
    fn relations(orders: &[R]) -> Vec<Vec<R>> {
        orders
            .iter()
            .enumerate()
            .filter(|(_, o)| !o.is_zero())
            .map(|(i, o)| {
                let mut e = vec![R::zero(); orders.len()];
                e[i] = o.clone();
                e
            })
            .collect()
    }

    /// Generators of the image, lifted to `R^target` and including the
    /// target relations.
    pub fn image_lattice(&self) -> Vec<Vec<R>> {
        let mut out = self.matrix.columns();
        out.extend(Self::relations(&self.target));
        out
    }

    /// Generators of the kernel, lifted to `R^source` and including the
    /// source relations.
    pub fn kernel_lattice(&self) -> Vec<Vec<R>> {
        let n = self.source.len();
        let rels = Self::relations(&self.target);
        let joint = self
            .matrix
            .hcat(&Matrix::from_cols(self.target.len(), &rels));
        let mut out: Vec<Vec<R>> = kernel_basis(&joint).into_iter().map(|v| v[..n].to_vec()).collect();
        out.extend(Self::relations(&self.source));
        out
    }

    /// Rank of the matrix reduced modulo a prime `p`.
    pub fn rank_mod(&self, p: &R) -> usize {
        crate::snf::rank_mod(&self.matrix, p)
    }

    /// Rank over the fraction field.
    pub fn rank(&self) -> usize {
        smith_normal_form(&self.matrix).rank
    }

    /// The kernel is generated by the source relations.
    pub fn is_injective(&self) -> bool {
        lattice_contains(self.source.len(), &Self::relations(&self.source), &self.kernel_lattice())
    }

    /// Every target generator lies in the image.
    pub fn is_surjective(&self) -> bool {
        let n = self.target.len();
        let units: Vec<Vec<R>> = (0..n)
            .map(|i| {
                let mut e = vec![R::zero(); n];
                e[i] = R::one();
                e
            })
            .collect();
        lattice_contains(n, &self.image_lattice(), &units)
    }
}

/// Whether every vector of `a` lies in the lattice spanned by `b`, both in
/// `R^n`.
pub fn lattice_contains<R: EuclideanRing>(n: usize, b: &[Vec<R>], a: &[Vec<R>]) -> bool {
    if a.is_empty() {
        return true;
    }
    let solver = LatticeSolver::new(&Matrix::from_cols(n, b));
    a.iter().all(|v| solver.contains(v))
}

/// Exactness of `A --incoming--> B --outgoing--> C` at `B`: the image of the
/// incoming map equals the kernel of the outgoing one, decided by mutual
/// lattice containment.
pub fn exact_at<R: EuclideanRing>(incoming: &ModuleHom<R>, outgoing: &ModuleHom<R>) -> Result<bool> {
    if incoming.target != outgoing.source {
        return Err(Error::DimensionMismatch("maps do not meet at one module".into()));
    }
    let n = incoming.target.len();
    let im = incoming.image_lattice();
    let ker = outgoing.kernel_lattice();
    Ok(lattice_contains(n, &ker, &im) && lattice_contains(n, &im, &ker))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    #[test]
    fn multiplication_by_two_sequence() {
        // 0 -> Z --2--> Z --> Z/2 -> 0
        let zero_in = ModuleHom::zero(vec![], vec![int(0)]);
        let times2 = ModuleHom::new(vec![int(0)], vec![int(0)], m(&[&[2]])).unwrap();
        let red = ModuleHom::new(vec![int(0)], vec![int(2)], m(&[&[1]])).unwrap();
        let zero_out = ModuleHom::zero(vec![int(2)], vec![]);
        assert!(exact_at(&zero_in, &times2).unwrap());
        assert!(exact_at(&times2, &red).unwrap());
        assert!(exact_at(&red, &zero_out).unwrap());
        assert!(red.compose(&times2).unwrap().is_zero());
    }

    #[test]
    fn non_exact_detected() {
        // Z --4--> Z --> Z/2: the image 4Z is smaller than the kernel 2Z.
        let times4 = ModuleHom::new(vec![int(0)], vec![int(0)], m(&[&[4]])).unwrap();
        let red = ModuleHom::new(vec![int(0)], vec![int(2)], m(&[&[1]])).unwrap();
        assert!(!exact_at(&times4, &red).unwrap());
    }

    #[test]
    fn torsion_source_kernel() {
        // Z/4 --2--> Z/4 has kernel 2Z/4 and image 2Z/4.
        let f = ModuleHom::new(vec![int(4)], vec![int(4)], m(&[&[2]])).unwrap();
        assert!(exact_at(&f, &f).unwrap());
        assert!(f.compose(&f).unwrap().is_zero());
    }

    #[test]
    fn injective_and_surjective() {
        let times2 = ModuleHom::new(vec![int(0)], vec![int(0)], m(&[&[2]])).unwrap();
        assert!(times2.is_injective() && !times2.is_surjective());
        let red = ModuleHom::new(vec![int(0)], vec![int(2)], m(&[&[1]])).unwrap();
        assert!(!red.is_injective() && red.is_surjective());
        // Z/2 --2--> Z/4 is injective; Z/4 --1--> Z/2 is surjective only.
        let up = ModuleHom::new(vec![int(2)], vec![int(4)], m(&[&[2]])).unwrap();
        assert!(up.is_injective() && !up.is_surjective());
        let down = ModuleHom::new(vec![int(4)], vec![int(2)], m(&[&[1]])).unwrap();
        assert!(!down.is_injective() && down.is_surjective());
        let empty = ModuleHom::<BigInt>::zero(vec![], vec![]);
        assert!(empty.is_injective() && empty.is_surjective());
    }

    #[test]
    fn entries_reduced() {
        let f = ModuleHom::new(vec![int(0)], vec![int(3)], m(&[&[7]])).unwrap();
        assert_eq!(f.matrix(), &m(&[&[1]]));
    }
}
