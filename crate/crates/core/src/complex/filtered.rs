use std::collections::BTreeMap;

use super::{Simplex, Weight, WeightedComplex};
use crate::error::{Error, Result};

/// A nested sequence `K^0 ⊆ K^1 ⊆ … ⊆ K^{steps-1}` given by a birth index
/// on every simplex of the final complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex<W> {
    complex: WeightedComplex<W>,
    birth: BTreeMap<Simplex, usize>,
    steps: usize,
}

impl<W: Weight> FilteredComplex<W> {
    /// Checks that every simplex has a birth below `steps` and that faces are
    /// born no later than their cofaces.
    pub fn new(complex: WeightedComplex<W>, birth: BTreeMap<Simplex, usize>, steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(Error::InvalidFiltration("a filtration needs at least one step".into()));
        }
        for (s, _) in complex.iter() {
            let b = *birth
                .get(s)
                .ok_or_else(|| Error::InvalidFiltration(format!("{} has no birth index", complex.fmt_simplex(s))))?;
            if b >= steps {
                return Err(Error::InvalidFiltration(format!(
                    "{} is born at step {b} but there are only {steps} steps",
                    complex.fmt_simplex(s)
                )));
            }
            for f in s.boundary_faces() {
                match birth.get(&f) {
                    Some(&fb) if fb <= b => {}
                    Some(_) => {
                        return Err(Error::InvalidFiltration(format!(
                            "face {} is born after {}",
                            complex.fmt_simplex(&f),
                            complex.fmt_simplex(s)
                        )))
                    }
                    None => {
                        return Err(Error::MissingFace {
                            simplex: complex.fmt_simplex(s),
                            face: complex.fmt_simplex(&f),
                        })
                    }
                }
            }
        }
        if let Some(extra) = birth.keys().find(|s| !complex.contains(s)) {
            return Err(Error::InvalidFiltration(format!(
                "birth given for {} which is not in the complex",
                complex.fmt_simplex(extra)
            )));
        }
        Ok(FilteredComplex { complex, birth, steps })
    }

    /// Every simplex born at step 0.
    pub fn trivial(complex: WeightedComplex<W>) -> Self {
        let birth = complex.iter().map(|(s, _)| (s.clone(), 0)).collect();
        FilteredComplex { complex, birth, steps: 1 }
    }

    pub fn complex(&self) -> &WeightedComplex<W> {
        &self.complex
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn birth(&self, s: &Simplex) -> Option<usize> {
        self.birth.get(s).copied()
    }

    pub fn births(&self) -> &BTreeMap<Simplex, usize> {
        &self.birth
    }

    /// `K^i`.
    pub fn step_complex(&self, i: usize) -> Result<WeightedComplex<W>> {
        self.check_step(i)?;
        Ok(self.complex.restrict(|s, _| self.birth[s] <= i))
    }

    pub fn check_step(&self, i: usize) -> Result<()> {
        if i >= self.steps {
            return Err(Error::StepOutOfRange {
                step: i,
                steps: self.steps,
            });
        }
        Ok(())
    }
}
