//! The Mayer-Vietoris sequence of a cover `K = K₀ ∪ K₁` with
//! `A = K₀ ∩ K₁`, built from chain maps and the zig-zag connecting map.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::complex::{Simplex, WeightedComplex};
use crate::error::{Error, Result};
use crate::hom::{exact_at, ModuleHom};
use crate::homology::{chain_lattices, cycles_mod_boundaries, weighted_boundary_matrix, Coefficients, Group};
use crate::lattice::Subquotient;
use crate::matrix::Matrix;
use crate::module::PresentationModule;
use crate::ring::{divides, EuclideanRing};

/// One degree `p` of the sequence
/// `H_p(A) --φ--> H_p(K₀) ⊕ H_p(K₁) --ψ--> H_p(K) --∂*--> H_{p-1}(A)`.
#[derive(Clone, Debug)]
pub struct MvDegree<R> {
    pub degree: usize,
    pub a: Group<R>,
    pub middle: Group<R>,
    pub k: Group<R>,
    /// Generators of each group as chains, in the chain bases of `A`,
    /// `K₀ ⊔ K₁` and `K`.
    pub a_generators: Vec<Vec<R>>,
    pub middle_generators: Vec<Vec<R>>,
    pub k_generators: Vec<Vec<R>>,
    pub phi: ModuleHom<R>,
    pub psi: ModuleHom<R>,
    /// `∂* : H_p(K) → H_{p-1}(A)`; the zero map to the zero module for `p = 0`.
    pub connecting: ModuleHom<R>,
}

#[derive(Clone, Debug)]
pub struct MvSequence<R> {
    pub coeff: Coefficients<R>,
    pub degrees: Vec<MvDegree<R>>,
}

/// The outcome at one spot of the sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvPosition {
    pub label: String,
    pub composite_zero: bool,
    /// Rank count over a field; `None` when the coefficients are not a field.
    pub ranks_add_up: Option<bool>,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub positions: Vec<MvPosition>,
}

impl ExactnessReport {
    pub fn all_exact(&self) -> bool {
        self.positions.iter().all(|p| p.exact)
    }

    pub fn failures(&self) -> Vec<&MvPosition> {
        self.positions.iter().filter(|p| !p.exact).collect()
    }
}

impl fmt::Display for ExactnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.positions {
            writeln!(f, "{}: {}", p.label, if p.exact { "exact" } else { "NOT exact" })?;
        }
        write!(f, "{}", if self.all_exact() { "sequence exact" } else { "sequence not exact" })
    }
}

fn face_closed(set: &BTreeSet<Simplex>) -> Option<(&Simplex, Simplex)> {
    set.iter()
        .find_map(|s| s.boundary_faces().into_iter().find(|f| !set.contains(f)).map(|f| (s, f)))
}

fn positions(from: &[Simplex], to: &[Simplex]) -> Vec<usize> {
    let idx: HashMap<&Simplex, usize> = to.iter().enumerate().map(|(i, s)| (s, i)).collect();
    from.iter().map(|s| idx[s]).collect()
}

fn scatter<R: EuclideanRing>(v: &[R], pos: &[usize], len: usize, offset: usize, negate: bool) -> Vec<R> {
    let mut out = vec![R::zero(); len];
    for (x, &j) in v.iter().zip(pos) {
        out[offset + j] = if negate { x.neg() } else { x.clone() };
    }
    out
}

struct Part<R> {
    complex: WeightedComplex<R>,
    basis: Vec<Vec<Simplex>>,
    homology: Vec<Subquotient<R>>,
    cycles: Vec<Vec<Vec<R>>>,
    boundaries: Vec<Vec<Vec<R>>>,
}

impl<R: EuclideanRing> Part<R> {
    fn new(complex: WeightedComplex<R>, top: usize, modulus: Option<&R>) -> Result<Self> {
        let mut part = Part {
            complex,
            basis: Vec::new(),
            homology: Vec::new(),
            cycles: Vec::new(),
            boundaries: Vec::new(),
        };
        for p in 0..=top {
            let l = chain_lattices(&part.complex, p, &|_| true, &|_| true, modulus)?;
            part.homology.push(cycles_mod_boundaries(&l));
            part.basis.push(l.basis);
            part.cycles.push(l.cycles);
            part.boundaries.push(l.boundaries);
        }
        Ok(part)
    }
}

/// The chain maps `φ : C_p(A) → C_p(K₀) ⊕ C_p(K₁)`, `c ↦ (c, -c)`, and
/// `ψ : C_p(K₀) ⊕ C_p(K₁) → C_p(K)`, `(d, e) ↦ d + e`, as matrices.
pub fn chain_level_maps<R: EuclideanRing>(
    k: &WeightedComplex<R>,
    k0: &[Simplex],
    k1: &[Simplex],
    p: usize,
) -> Result<(Matrix<R>, Matrix<R>)> {
    let (s0, s1) = check_cover(k, k0, k1)?;
    let basis_k = k.simplices(p);
    let b0: Vec<Simplex> = basis_k.iter().filter(|s| s0.contains(*s)).cloned().collect();
    let b1: Vec<Simplex> = basis_k.iter().filter(|s| s1.contains(*s)).cloned().collect();
    let ba: Vec<Simplex> = b0.iter().filter(|s| s1.contains(*s)).cloned().collect();
    let mid = b0.len() + b1.len();
    let (a0, a1) = (positions(&ba, &b0), positions(&ba, &b1));
    let phi_cols: Vec<Vec<R>> = (0..ba.len())
        .map(|j| {
            let mut v = vec![R::zero(); mid];
            v[a0[j]] = R::one();
            v[b0.len() + a1[j]] = R::one().neg();
            v
        })
        .collect();
    let (p0, p1) = (positions(&b0, &basis_k), positions(&b1, &basis_k));
    let psi_cols: Vec<Vec<R>> = p0
        .iter()
        .chain(&p1)
        .map(|&i| {
            let mut v = vec![R::zero(); basis_k.len()];
            v[i] = R::one();
            v
        })
        .collect();
    Ok((Matrix::from_cols(mid, &phi_cols), Matrix::from_cols(basis_k.len(), &psi_cols)))
}

fn check_cover<R: EuclideanRing>(
    k: &WeightedComplex<R>,
    k0: &[Simplex],
    k1: &[Simplex],
) -> Result<(BTreeSet<Simplex>, BTreeSet<Simplex>)> {
    let s0: BTreeSet<Simplex> = k0.iter().cloned().collect();
    let s1: BTreeSet<Simplex> = k1.iter().cloned().collect();
    if let Some(s) = s0.iter().chain(&s1).find(|s| !k.contains(s)) {
        return Err(Error::InvalidCover(format!("{} is not a simplex of K", k.fmt_simplex(s))));
    }
    if let Some((s, _)) = k.iter().find(|(s, _)| !s0.contains(*s) && !s1.contains(*s)) {
        return Err(Error::InvalidCover(format!("{} lies in neither part", k.fmt_simplex(s))));
    }
    for (name, set) in [("K0", &s0), ("K1", &s1)] {
        if let Some((s, f)) = face_closed(set) {
            return Err(Error::InvalidCover(format!(
                "{name} contains {} but not its face {}",
                k.fmt_simplex(s),
                k.fmt_simplex(&f)
            )));
        }
    }
    Ok((s0, s1))
}

fn group_for<R: EuclideanRing>(coeff: &Coefficients<R>, sq: &Subquotient<R>) -> Group<R> {
    let module = match coeff {
        Coefficients::Fraction => PresentationModule::free(sq.module().free_rank()),
        _ => sq.module().clone(),
    };
    Group {
        coeff: coeff.clone(),
        module,
    }
}

/// Keeps the free generators only, so that maps describe the groups with
/// fraction-field coefficients.
fn free_part<R: EuclideanRing>(f: ModuleHom<R>) -> Result<ModuleHom<R>> {
    let cols: Vec<usize> = (0..f.source_orders().len()).filter(|&j| f.source_orders()[j].is_zero()).collect();
    let rows: Vec<usize> = (0..f.target_orders().len()).filter(|&i| f.target_orders()[i].is_zero()).collect();
    ModuleHom::new(
        vec![R::zero(); cols.len()],
        vec![R::zero(); rows.len()],
        f.matrix().select_cols(&cols).select_rows(&rows),
    )
}

fn free_generators<R: EuclideanRing>(coeff: &Coefficients<R>, sq: &Subquotient<R>) -> Vec<Vec<R>> {
    sq.generators()
        .iter()
        .zip(sq.orders())
        .filter(|(_, o)| !matches!(coeff, Coefficients::Fraction) || o.is_zero())
        .map(|(g, _)| g.clone())
        .collect()
}

/// Builds the sequence in every degree up to `dim K`.
pub fn build_mv<R: EuclideanRing>(
    k: &WeightedComplex<R>,
    k0: &[Simplex],
    k1: &[Simplex],
    coeff: &Coefficients<R>,
) -> Result<MvSequence<R>> {
    let (s0, s1) = check_cover(k, k0, k1)?;
    let Some(top) = k.dim() else {
        return Ok(MvSequence {
            coeff: coeff.clone(),
            degrees: Vec::new(),
        });
    };
    let modulus = coeff.modulus();
    let whole = Part::new(k.clone(), top, modulus)?;
    let p0 = Part::new(k.restrict(|s, _| s0.contains(s)), top, modulus)?;
    let p1 = Part::new(k.restrict(|s, _| s1.contains(s)), top, modulus)?;
    let pa = Part::new(k.restrict(|s, _| s0.contains(s) && s1.contains(s)), top, modulus)?;

    let mut degrees = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let n0 = p0.basis[p].len();
        let mid_len = n0 + p1.basis[p].len();
        let lift = |v: &Vec<Vec<R>>, w: &Vec<Vec<R>>| -> Vec<Vec<R>> {
            v.iter()
                .map(|x| scatter(x, &(0..n0).collect::<Vec<_>>(), mid_len, 0, false))
                .chain(w.iter().map(|y| scatter(y, &(0..y.len()).collect::<Vec<_>>(), mid_len, n0, false)))
                .collect()
        };
        let middle = Subquotient::new(
            mid_len,
            &lift(&p0.cycles[p], &p1.cycles[p]),
            &lift(&p0.boundaries[p], &p1.boundaries[p]),
        );
        let ha = &pa.homology[p];
        let hk = &whole.homology[p];

        let a_in_0 = positions(&pa.basis[p], &p0.basis[p]);
        let a_in_1 = positions(&pa.basis[p], &p1.basis[p]);
        let phi = ModuleHom::induced(ha, &middle, |c| {
            let mut v = scatter(c, &a_in_0, mid_len, 0, false);
            let w = scatter(c, &a_in_1, mid_len - n0, 0, true);
            v[n0..].clone_from_slice(&w);
            v
        })?;
        let in_k0 = positions(&p0.basis[p], &whole.basis[p]);
        let in_k1 = positions(&p1.basis[p], &whole.basis[p]);
        let nk = whole.basis[p].len();
        let psi = ModuleHom::induced(&middle, hk, |c| {
            let d = scatter(&c[..n0], &in_k0, nk, 0, false);
            let e = scatter(&c[n0..], &in_k1, nk, 0, false);
            d.iter().zip(&e).map(|(x, y)| x.add(y)).collect()
        })?;
        let connecting = match p.checked_sub(1) {
            None => ModuleHom::zero(hk.orders().to_vec(), Vec::new()),
            Some(q) => {
                let d0 = weighted_boundary_matrix(&p0.complex, p)?;
                let a_rows: HashMap<&Simplex, usize> = pa.basis[q].iter().enumerate().map(|(i, s)| (s, i)).collect();
                let target = &pa.homology[q];
                let cols = hk
                    .generators()
                    .iter()
                    .map(|z| {
                        let part: Vec<R> = in_k0.iter().map(|&i| z[i].clone()).collect();
                        let bd = d0.mul_vec(&part);
                        let mut a = vec![R::zero(); pa.basis[q].len()];
                        for (s, x) in p0.basis[q].iter().zip(bd) {
                            match a_rows.get(s) {
                                Some(&i) => a[i] = x,
                                None => {
                                    let vanishes = match modulus {
                                        Some(m) => divides(m, &x),
                                        None => x.is_zero(),
                                    };
                                    if !vanishes {
                                        return Err(Error::Invariant(format!(
                                            "boundary of the K0 part leaves the intersection at {}",
                                            k.fmt_simplex(s)
                                        )));
                                    }
                                }
                            }
                        }
                        target
                            .coords(&a)
                            .ok_or_else(|| Error::Invariant("connecting map does not land in cycles of A".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                ModuleHom::new(
                    hk.orders().to_vec(),
                    target.orders().to_vec(),
                    Matrix::from_cols(target.orders().len(), &cols),
                )?
            }
        };
        let (phi, psi, connecting) = if matches!(coeff, Coefficients::Fraction) {
            (free_part(phi)?, free_part(psi)?, free_part(connecting)?)
        } else {
            (phi, psi, connecting)
        };
        degrees.push(MvDegree {
            degree: p,
            a: group_for(coeff, ha),
            middle: group_for(coeff, &middle),
            k: group_for(coeff, hk),
            a_generators: free_generators(coeff, ha),
            middle_generators: free_generators(coeff, &middle),
            k_generators: free_generators(coeff, hk),
            phi,
            psi,
            connecting,
        });
    }
    Ok(MvSequence {
        coeff: coeff.clone(),
        degrees,
    })
}

impl<R: EuclideanRing> MvSequence<R> {
    /// Every map with the label of its source, from the top degree down.
    fn chain(&self) -> Vec<(String, &ModuleHom<R>)> {
        let mut out = Vec::new();
        for d in self.degrees.iter().rev() {
            let p = d.degree;
            out.push((format!("H{p}(A)"), &d.phi));
            out.push((format!("H{p}(K0)+H{p}(K1)"), &d.psi));
            out.push((format!("H{p}(K)"), &d.connecting));
        }
        out
    }
}

fn ranks_add_up<R: EuclideanRing>(coeff: &Coefficients<R>, incoming: &ModuleHom<R>, outgoing: &ModuleHom<R>) -> Option<bool> {
    let dim = incoming.target_orders().len();
    match coeff {
        Coefficients::Fraction => Some(incoming.rank() + outgoing.rank() == dim),
        Coefficients::Residue(p) => Some(incoming.rank_mod(p) + outgoing.rank_mod(p) == dim),
        _ => None,
    }
}

/// Checks every spot of the sequence: the composite through it vanishes,
/// ranks add up over a field, and image equals kernel. Over the fraction
/// field the rank count decides exactness, since the free parts of integral
/// maps need not be exact as lattices.
pub fn verify_exactness<R: EuclideanRing>(seq: &MvSequence<R>) -> Result<ExactnessReport> {
    let maps = seq.chain();
    let mut positions = Vec::new();
    // The sequence starts from the zero group in degree dim K + 1.
    if let Some((label, first)) = maps.first() {
        let zero = ModuleHom::zero(Vec::new(), first.source_orders().to_vec());
        positions.push(position(&seq.coeff, label.clone(), &zero, first)?);
    }
    for w in maps.windows(2) {
        positions.push(position(&seq.coeff, w[1].0.clone(), w[0].1, w[1].1)?);
    }
    Ok(ExactnessReport { positions })
}

fn position<R: EuclideanRing>(
    coeff: &Coefficients<R>,
    label: String,
    incoming: &ModuleHom<R>,
    outgoing: &ModuleHom<R>,
) -> Result<MvPosition> {
    let composite_zero = outgoing.compose(incoming)?.is_zero();
    let ranks = ranks_add_up(coeff, incoming, outgoing);
    let exact = composite_zero
        && match coeff {
            Coefficients::Fraction => ranks == Some(true),
            _ => ranks != Some(false) && exact_at(incoming, outgoing)?,
        };
    Ok(MvPosition {
        label,
        composite_zero,
        ranks_add_up: ranks,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;
    use crate::snf::smith_normal_form;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    fn triangle(vertex: i64, edge: i64) -> WeightedComplex<BigInt> {
        let mut k = WeightedComplex::with_numbered_vertices(3);
        for v in 0..3 {
            k.insert(s(&[v]), int(vertex)).unwrap();
        }
        for e in [[0, 1], [1, 2], [0, 2]] {
            k.insert(s(&e), int(edge)).unwrap();
        }
        k
    }

    fn arcs() -> (Vec<Simplex>, Vec<Simplex>) {
        (
            vec![s(&[0]), s(&[1]), s(&[0, 1])],
            vec![s(&[0]), s(&[1]), s(&[2]), s(&[1, 2]), s(&[0, 2])],
        )
    }

    #[test]
    fn circle_from_two_arcs() {
        let k = triangle(1, 1);
        let (k0, k1) = arcs();
        let seq = build_mv(&k, &k0, &k1, &Coefficients::Integral).unwrap();
        assert_eq!(seq.degrees[0].a.to_string(), "Z^2");
        assert_eq!(seq.degrees[1].k.to_string(), "Z");
        assert!(seq.degrees[1].middle.is_zero());
        let d = &seq.degrees[1].connecting;
        assert_eq!(d.rank(), 1);
        assert!(d.is_injective());
        assert!(verify_exactness(&seq).unwrap().all_exact());
    }

    #[test]
    fn corrupted_connecting_map_is_caught() {
        let k = triangle(1, 1);
        let (k0, k1) = arcs();
        let mut seq = build_mv(&k, &k0, &k1, &Coefficients::Integral).unwrap();
        seq.degrees[1].connecting.set_entry(0, 0, int(0));
        seq.degrees[1].connecting.set_entry(1, 0, int(0));
        let report = verify_exactness(&seq).unwrap();
        let failed: Vec<&str> = report.failures().iter().map(|p| p.label.as_str()).collect();
        assert!(failed.contains(&"H1(K)"));
        assert!(!failed.contains(&"H1(A)"));
    }

    #[test]
    fn nested_cover_is_degenerate() {
        let k = triangle(1, 4);
        let all: Vec<Simplex> = k.iter().map(|(s, _)| s.clone()).collect();
        let (k1, _) = arcs();
        let seq = build_mv(&k, &all, &k1, &Coefficients::Integral).unwrap();
        for d in &seq.degrees {
            assert!(d.psi.is_surjective());
        }
        assert!(verify_exactness(&seq).unwrap().all_exact());
    }

    #[test]
    fn triangle4_split_over_f2() {
        let k = triangle(1, 4);
        let (k0, k1) = arcs();
        let f2 = Coefficients::residue(int(2)).unwrap();
        let seq = build_mv(&k, &k0, &k1, &f2).unwrap();
        let dims: Vec<usize> = seq
            .degrees
            .iter()
            .rev()
            .flat_map(|d| [d.a.dim().unwrap(), d.middle.dim().unwrap(), d.k.dim().unwrap()])
            .collect();
        let alternating: i64 = dims.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        assert_eq!(alternating, 0);
        let report = verify_exactness(&seq).unwrap();
        assert!(report.all_exact());
        assert!(report.positions.iter().all(|p| p.ranks_add_up == Some(true)));
    }

    #[test]
    fn empty_cover() {
        let k: WeightedComplex<BigInt> = WeightedComplex::new(vec![]);
        let seq = build_mv(&k, &[], &[], &Coefficients::Integral).unwrap();
        assert!(verify_exactness(&seq).unwrap().all_exact());
    }

    #[test]
    fn bad_covers() {
        let k = triangle(1, 1);
        let (k0, _) = arcs();
        assert!(matches!(build_mv(&k, &k0, &k0, &Coefficients::Integral), Err(Error::InvalidCover(_))));
        let open = vec![s(&[0, 1]), s(&[0])];
        let (_, k1) = arcs();
        assert!(matches!(build_mv(&k, &open, &k1, &Coefficients::Integral), Err(Error::InvalidCover(_))));
    }

    fn arb_cover() -> impl Strategy<Value = (WeightedComplex<BigInt>, Vec<Simplex>, Vec<Simplex>)> {
        // Random subcomplex of the full simplex on 4 vertices with weights
        // built up from vertex weights, split by a random vertex partition
        // plus random extra simplices in the first part.
        (
            proptest::collection::vec(any::<bool>(), 10),
            proptest::collection::vec(prop::sample::select(vec![1i64, 2, 3]), 14),
            proptest::collection::vec(any::<bool>(), 14),
        )
            .prop_map(|(keep, mults, side)| {
                let mut cand: Vec<Vec<u32>> = Vec::new();
                for m in 1u32..16 {
                    let v: Vec<u32> = (0..4).filter(|i| m & (1 << i) != 0).collect();
                    if v.len() >= 2 {
                        cand.push(v);
                    }
                }
                cand.sort_by_key(|v| v.len());
                let mut k = WeightedComplex::with_numbered_vertices(4);
                for (v, m) in (0..4).zip(&mults) {
                    k.insert(s(&[v]), int(*m)).unwrap();
                }
                for (j, v) in cand.iter().enumerate() {
                    let x = s(v);
                    let faces_ok = x.boundary_faces().iter().all(|f| k.contains(f));
                    if faces_ok && keep[j % keep.len()] {
                        let l = x.boundary_faces().iter().fold(int(1), |a, f| crate::ring::lcm(&a, k.weight(f).unwrap()));
                        k.insert(x, l * int(mults[(4 + j) % mults.len()])).unwrap();
                    }
                }
                let all: Vec<Simplex> = k.iter().map(|(x, _)| x.clone()).collect();
                let mut k0: BTreeSet<Simplex> = BTreeSet::new();
                let mut k1: BTreeSet<Simplex> = BTreeSet::new();
                for (j, x) in all.iter().enumerate().rev() {
                    if !k0.contains(x) && !k1.contains(x) {
                        let target = if side[j % side.len()] { &mut k0 } else { &mut k1 };
                        target.insert(x.clone());
                        target.extend(x.proper_faces());
                    }
                }
                (k, k0.into_iter().collect(), k1.into_iter().collect())
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn chain_maps_short_exact((k, k0, k1) in arb_cover()) {
            for p in 0..=k.dim().unwrap_or(0) {
                let (phi, psi) = chain_level_maps(&k, &k0, &k1, p).unwrap();
                prop_assert!(psi.mul(&phi).is_zero());
                prop_assert_eq!(smith_normal_form(&phi).rank, phi.cols());
                prop_assert_eq!(smith_normal_form(&psi).rank, psi.rows());
            }
        }

        #[test]
        fn random_covers_exact((k, k0, k1) in arb_cover(), c in 0usize..4) {
            let coeff = match c {
                0 => Coefficients::Fraction,
                1 => Coefficients::residue(int(2)).unwrap(),
                2 => Coefficients::residue(int(3)).unwrap(),
                _ => Coefficients::Integral,
            };
            let seq = build_mv(&k, &k0, &k1, &coeff).unwrap();
            let report = verify_exactness(&seq).unwrap();
            prop_assert!(report.all_exact(), "{}", report);
        }
    }
}
