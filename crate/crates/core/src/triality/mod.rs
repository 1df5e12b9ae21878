// SPDX-License-Identifier: Apache-2.0
//! Split trialitarian triples `End(C)` for compositions of dimension 8.
//!
//! The triple is carried by `C(α)` and its even part `C₀(α) = (C₊, C₋)`.
//! Triality acts on Lie algebras through the maps `θ±`, on isometries
//! through the Clifford group, and on similitudes through Skolem–Noether
//! intertwiners.

mod extend;
mod lift;
mod psi;
mod theta;

pub use extend::{extend_similitude, isomorphism_witness};
pub use lift::{
    lift_uniqueness_test, local_triality_holds, local_triality_solve, triality_lift_isometry, LiftedIsometry,
    LocalTriality,
};
pub use psi::{psi_a_inverse, psi_a_structure, psi_center_formulas, PsiA};
pub use theta::{differential_consistency, theta_maps, verify_theta_relations, PgoMap, ThetaMaps};

use std::sync::Arc;

use crate::clifford::{CliffordAlgebra, CliffordElem};
use crate::composition::{CliffordAlpha, Composition};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Matrix, Scalar};

/// `End(C)` for a composition `C` of dimension 8, with `C(α)` and the
/// polarization `z±` of `(V₁, q₁)` cached.
#[derive(Clone, Debug)]
pub struct TrialitarianTripleSplit {
    alpha: CliffordAlpha,
}

impl PartialEq for TrialitarianTripleSplit {
    fn eq(&self, other: &Self) -> bool {
        self.composition() == other.composition()
    }
}

impl Eq for TrialitarianTripleSplit {}

pub fn make_triple(c: &Composition) -> Result<TrialitarianTripleSplit> {
    if c.dim() != 8 {
        return Err(Error::DimensionMismatch(format!(
            "trialitarian triples need dimension 8, got {}",
            c.dim()
        )));
    }
    c.require_composition()?;
    let alpha = CliffordAlpha::new(c)?;
    alpha.polarization()?;
    if !alpha.is_bijective() {
        return Err(Error::Inconsistent("C(α) is not bijective".into()));
    }
    Ok(TrialitarianTripleSplit { alpha })
}

/// `∂T = End(∂C)`.
pub fn derived_triple(t: &TrialitarianTripleSplit) -> Result<TrialitarianTripleSplit> {
    make_triple(&t.composition().derive_unchecked())
}

impl TrialitarianTripleSplit {
    pub fn composition(&self) -> &Composition {
        self.alpha.composition()
    }

    pub fn alpha(&self) -> &CliffordAlpha {
        &self.alpha
    }

    /// `C(V₁, q₁)`.
    pub fn algebra(&self) -> &Arc<CliffordAlgebra> {
        self.alpha.algebra()
    }

    pub fn field(&self) -> FieldSpec {
        self.composition().field()
    }

    /// `(z₊, z₋)` with `C₀(α)(z₊) = (1, 0)`.
    pub fn polarization(&self) -> &(CliffordElem, CliffordElem) {
        self.alpha.polarization().expect("checked in make_triple")
    }

    pub fn c_plus(&self, x: &CliffordElem) -> Result<Matrix> {
        self.alpha.c_plus(x)
    }

    pub fn c_minus(&self, x: &CliffordElem) -> Result<Matrix> {
        self.alpha.c_minus(x)
    }

    /// Moves an element of another `C(V₁, q₁)` with the same form into this one.
    pub(crate) fn adopt(&self, x: &CliffordElem) -> Result<CliffordElem> {
        if x.algebra().form() != self.algebra().form() {
            return Err(Error::FormMismatch);
        }
        self.algebra().from_coeffs(x.coeffs().to_vec())
    }
}

/// Entries of `g` in row-major order, as a vector.
pub(crate) fn flat(g: &Matrix) -> Vec<Scalar> {
    g.data().to_vec()
}

/// The `n × n` matrix with row-major entries `v`.
pub(crate) fn square(field: FieldSpec, n: usize, v: &[Scalar]) -> Matrix {
    Matrix::from_vec(field, n, n, v.to_vec()).expect("n*n entries")
}

#[cfg(test)]
mod tests;
