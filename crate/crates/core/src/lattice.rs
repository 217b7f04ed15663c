//! Subquotients `N / (N ∩ D)` of lattices inside `R^n`, with explicit
//! generators and coordinates for classes.

use crate::matrix::Matrix;
use crate::module::PresentationModule;
use crate::ring::EuclideanRing;
use crate::snf::{column_basis, kernel_basis, smith_normal_form, LatticeSolver};

/// The module `N / (N ∩ D)` for sublattices `N`, `D` of `R^n`, decomposed into
/// cyclic summands.
///
/// Generators are listed torsion first, in invariant-factor order, then free.
/// [`Subquotient::coords`] expresses a vector of `N` in those generators,
/// reducing each torsion coordinate to its canonical residue.
#[derive(Clone, Debug)]
pub struct Subquotient<R> {
    ambient: usize,
    solver: Option<LatticeSolver<R>>,
    u: Matrix<R>,
    kept: Vec<usize>,
    orders: Vec<R>,
    generators: Vec<Vec<R>>,
    module: PresentationModule<R>,
}

impl<R: EuclideanRing> Subquotient<R> {
    pub fn new(ambient: usize, numerator: &[Vec<R>], denominator: &[Vec<R>]) -> Self {
        let basis = column_basis(&Matrix::from_cols(ambient, numerator));
        let k = basis.len();
        if k == 0 {
            return Subquotient {
                ambient,
                solver: None,
                u: Matrix::zeros(0, 0),
                kept: Vec::new(),
                orders: Vec::new(),
                generators: Vec::new(),
                module: PresentationModule::zero(),
            };
        }
        let zb = Matrix::from_cols(ambient, &basis);
        // Pairs (x, y) with Zb·x = D·y describe N ∩ D in the coordinates of
        // the numerator basis.
        let negated: Vec<Vec<R>> = denominator
            .iter()
            .map(|v| v.iter().map(R::neg).collect())
            .collect();
        let joint = zb.hcat(&Matrix::from_cols(ambient, &negated));
        let rel: Vec<Vec<R>> = kernel_basis(&joint)
            .into_iter()
            .map(|v| v[..k].to_vec())
            .collect();
        let snf = smith_normal_form(&Matrix::from_cols(k, &rel));
        let gens_all = zb.mul(&snf.u_inv);
        let mut diag: Vec<R> = (0..k)
            .map(|i| {
                if i < snf.rank {
                    snf.d.get(i, i).clone()
                } else {
                    R::zero()
                }
            })
            .collect();
        let kept: Vec<usize> = (0..k).filter(|&i| !diag[i].is_unit()).collect();
        let orders: Vec<R> = kept.iter().map(|&i| std::mem::replace(&mut diag[i], R::zero())).collect();
        let generators = kept.iter().map(|&i| gens_all.col(i)).collect();
        let module = PresentationModule::from_orders(orders.iter().cloned());
        Subquotient {
            ambient,
            solver: Some(LatticeSolver::new(&zb)),
            u: snf.u,
            kept,
            orders,
            generators,
            module,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn module(&self) -> &PresentationModule<R> {
        &self.module
    }

    /// Order of each generator; zero marks a free generator.
    pub fn orders(&self) -> &[R] {
        &self.orders
    }

    pub fn generators(&self) -> &[Vec<R>] {
        &self.generators
    }

    /// Coordinates of the class of `v`, or `None` if `v` is not in `N`.
    pub fn coords(&self, v: &[R]) -> Option<Vec<R>> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let Some(solver) = &self.solver else {
            return v.iter().all(R::is_zero).then(Vec::new);
        };
        let x = solver.solve(v)?;
        let y = self.u.mul_vec(&x);
        Some(
            self.kept
                .iter()
                .zip(&self.orders)
                .map(|(&i, o)| if o.is_zero() { y[i].clone() } else { y[i].reduce(o) })
                .collect(),
        )
    }

    /// Whether `v ∈ N` represents the zero class.
    pub fn is_trivial_class(&self, v: &[R]) -> Option<bool> {
        self.coords(v).map(|c| c.iter().all(R::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| int(a)).collect()
    }

    #[test]
    fn integers_mod_four_in_two_z() {
        // N = 2Z, D = 8Z: N / (N ∩ D) = Z/4.
        let s = Subquotient::new(1, &[v(&[2])], &[v(&[8])]);
        assert_eq!(s.module().to_string(), "Z/4");
        assert_eq!(s.coords(&v(&[6])).map(|c| c.len()), Some(1));
        assert_eq!(s.is_trivial_class(&v(&[16])), Some(true));
        assert_eq!(s.coords(&v(&[3])), None);
    }

    #[test]
    fn denominator_outside_numerator() {
        // N = Z·e1, D = Z·(e1 + e2): the intersection is zero.
        let s = Subquotient::new(2, &[v(&[1, 0])], &[v(&[1, 1])]);
        assert_eq!(s.module().to_string(), "Z");
    }

    #[test]
    fn empty_numerator() {
        let s: Subquotient<BigInt> = Subquotient::new(3, &[], &[v(&[1, 0, 0])]);
        assert!(s.module().is_zero());
        assert_eq!(s.coords(&v(&[0, 0, 0])), Some(vec![]));
    }

    proptest! {
        #[test]
        fn coordinates_reconstruct_classes(
            nums in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 0..4),
            dens in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 0..4),
            combo in proptest::collection::vec(-3i64..=3, 4),
        ) {
            let nums: Vec<Vec<BigInt>> = nums.iter().map(|x| v(x)).collect();
            let dens: Vec<Vec<BigInt>> = dens.iter().map(|x| v(x)).collect();
            let s = Subquotient::new(3, &nums, &dens);
            prop_assert_eq!(s.generators().len(), s.module().num_generators());
            // Any numerator element minus the combination of generators given
            // by its coordinates lies in the denominator lattice.
            let mut x = vec![int(0); 3];
            for (c, g) in combo.iter().zip(&nums) {
                for i in 0..3 {
                    x[i] += int(*c) * &g[i];
                }
            }
            let coords = s.coords(&x).expect("member of numerator");
            let mut rest = x.clone();
            for (c, g) in coords.iter().zip(s.generators()) {
                for i in 0..3 {
                    rest[i] -= c * &g[i];
                }
            }
            let den = Matrix::from_cols(3, &dens);
            prop_assert!(LatticeSolver::new(&den).contains(&rest));
            // Each torsion generator times its order lies in the denominator.
            for (g, o) in s.generators().iter().zip(s.orders()) {
                if !EuclideanRing::is_zero(o) {
                    let m: Vec<BigInt> = g.iter().map(|e| e * o).collect();
                    prop_assert!(LatticeSolver::new(&den).contains(&m));
                }
            }
        }
    }
}
