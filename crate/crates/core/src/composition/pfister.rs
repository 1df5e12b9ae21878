// SPDX-License-Identifier: Apache-2.0
//! The Pfister form `n_C` with `q_i ≅ ⟨λ_i⟩ n_C`, and the similarity and
//! isomorphism criteria for compositions.

use super::{Composition, SimilitudeTriple};
use crate::error::{Error, Result};
use crate::exactfield::Scalar;
use crate::quadform::{find_anisotropic, is_hyperbolic, is_isometric, QuadForm, SearchConfig};

/// The first anisotropic vector among `e_i` and `e_i ± e_j`.
///
/// A nonzero form always has one there: if every `q(e_i)` and every
/// `b(e_i, e_j) = q(e_i + e_j) − q(e_i) − q(e_j)` vanished, `q` would be 0.
pub fn anisotropic_vector(q: &QuadForm) -> Result<Vec<Scalar>> {
    find_anisotropic(q).ok_or_else(|| Error::SearchExhausted("anisotropic vector".into()))
}

/// `λ₁ = q₁(v₁)`, `λ₂ = q₂(v₂)` for the first anisotropic `v₁`, `v₂`,
/// `λ₃ = (λ₁λ₂)⁻¹` and `n_C = ⟨λ₁⁻¹⟩ q₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfisterData {
    pub lambda: [Scalar; 3],
    pub n_c: QuadForm,
    /// The vectors `v₁`, `v₂` that fixed `λ₁`, `λ₂`.
    pub vectors: [Vec<Scalar>; 2],
    /// Whether `q_i ≅ ⟨λ_i⟩ n_C`, decided exactly over `F_p` and by local
    /// invariants over Q.
    pub isometric: [bool; 3],
    pub n_c_hyperbolic: bool,
}

impl PfisterData {
    /// Whether `λ_i` is represented by `n_C`, i.e. `⟨λ_i⟩ n_C ≅ n_C`.
    pub fn lambda_represented(&self, i: usize) -> Result<bool> {
        Ok(is_isometric(&self.n_c.scaled(&self.lambda[i - 1])?, &self.n_c)?.isometric)
    }

    pub fn pass(&self) -> bool {
        self.isometric.iter().all(|&b| b)
    }
}

pub fn pfister_data(c: &Composition) -> Result<PfisterData> {
    c.require_composition()?;
    let v1 = anisotropic_vector(c.q(1))?;
    let v2 = anisotropic_vector(c.q(2))?;
    let l1 = c.q(1).eval(&v1);
    let l2 = c.q(2).eval(&v2);
    let l3 = (&l1 * &l2).inv()?;
    let n_c = c.q(1).scaled(&l1.inv()?)?;
    let lambda = [l1, l2, l3];
    let mut isometric = [false; 3];
    for i in 0..3 {
        isometric[i] = is_isometric(c.q(i + 1), &n_c.scaled(&lambda[i])?)?.isometric;
    }
    let n_c_hyperbolic = is_hyperbolic(&n_c)?;
    Ok(PfisterData {
        lambda,
        n_c,
        vectors: [v1, v2],
        isometric,
        n_c_hyperbolic,
    })
}

/// Similarity and isomorphism verdicts for two compositions.
#[derive(Clone, Debug)]
pub struct IsoDecision {
    /// `C` and `C̃` are similar iff `n_C ≅ n_C̃`.
    pub similar: bool,
    /// `C` and `C̃` are isomorphic iff `q_i ≅ q̃_i` for `i = 1, 2, 3`.
    pub isomorphic: bool,
    /// An explicit isomorphism, built over `F_p` in dimension 8.
    pub witness: Option<SimilitudeTriple>,
}

pub fn iso_decision(c: &Composition, ct: &Composition, cfg: &SearchConfig) -> Result<IsoDecision> {
    if c.field() != ct.field() {
        return Err(Error::FieldMismatch);
    }
    if c.dim() != ct.dim() {
        return Ok(IsoDecision {
            similar: false,
            isomorphic: false,
            witness: None,
        });
    }
    let p = pfister_data(c)?;
    let pt = pfister_data(ct)?;
    let similar = is_isometric(&p.n_c, &pt.n_c)?.isometric;
    let mut isomorphic = true;
    for i in 1..=3 {
        isomorphic &= is_isometric(c.q(i), ct.q(i))?.isometric;
    }
    let witness = if isomorphic && c.dim() == 8 && c.field().is_finite() {
        Some(crate::triality::isomorphism_witness(c, ct, cfg)?)
    } else if isomorphic && c == ct {
        Some(SimilitudeTriple::identity(c))
    } else {
        None
    };
    Ok(IsoDecision {
        similar,
        isomorphic,
        witness,
    })
}
