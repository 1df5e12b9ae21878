// SPDX-License-Identifier: Apache-2.0
//! `ψ_T` on the center of `C₀`, and the isomorphism `ψ_A` from `Ω(q)` onto
//! the autotopies of a composition algebra.

use super::{derived_triple, flat, make_triple, TrialitarianTripleSplit};
use crate::clifford::{omega_membership, CliffordElem};
use crate::compalg::{isotopy_dictionary, CompositionAlgebra};
use crate::composition::similitude_multiplier;
use crate::error::{Error, Result};
use crate::exactfield::{Matrix, Scalar};
use crate::report::{Checker, Report};

/// `(χ₀(z), C₊(α)(z), C₋(α)(z))` when each is a scalar, else `None`.
fn psi_scalars(t: &TrialitarianTripleSplit, z: &CliffordElem) -> Result<Option<[Scalar; 3]>> {
    let Some(om) = omega_membership(z)? else {
        return Ok(None);
    };
    let (p, m) = t.alpha().even_image(z)?;
    Ok(match (om.chi0.scalar_value(), p.scalar_value(), m.scalar_value()) {
        (Some(a), Some(b), Some(c)) => Some([a, b, c]),
        _ => None,
    })
}

/// For `z = a₊z₊ + a₋z₋` with `a± ∈ {±1}` checks
/// `ψ_T(z) = (a₊a₋, a₊, a₋)` and that the element `z′` of the center of
/// `C₀(V₂, q₂)` with `ψ_{∂T}(z′) = ∂ψ_T(z)` is `a₋z₂₊ + a₊a₋z₂₋`.
pub fn psi_center_formulas(t: &TrialitarianTripleSplit) -> Result<Report> {
    let f = t.field();
    let signs = if f.is_char2() {
        vec![f.one()]
    } else {
        vec![f.one(), -f.one()]
    };
    let dt = derived_triple(t)?;
    let (zp, zm) = t.polarization();
    let (zp2, zm2) = dt.polarization();
    let mut psi = Checker::new("ψ_T(a₊z₊ + a₋z₋) = (a₊a₋, a₊, a₋)");
    let mut sigma = Checker::new("Σ_T(a₊z₁₊ + a₋z₁₋) = a₋z₂₊ + a₊a₋z₂₋");
    for ap in &signs {
        for am in &signs {
            let lbl = || vec![format!("a₊={ap}"), format!("a₋={am}")];
            let z = zp.scale(ap).add(&zm.scale(am));
            let got = psi_scalars(t, &z)?.map(Vec::from).unwrap_or_default();
            psi.case(lbl, got, vec![ap * am, ap.clone(), am.clone()]);
            let target = [ap.clone(), am.clone(), ap * am];
            let mut hits = Vec::new();
            for bp in &signs {
                for bm in &signs {
                    let z2 = zp2.scale(bp).add(&zm2.scale(bm));
                    if psi_scalars(&dt, &z2)?.as_ref() == Some(&target) {
                        hits.push(vec![bp.clone(), bm.clone()]);
                    }
                }
            }
            sigma.case(lbl, hits.concat(), vec![am.clone(), ap * am]);
        }
    }
    let mut rep = Report::new();
    rep.push(psi.finish());
    rep.push(sigma.finish());
    Ok(rep)
}

/// `ψ_A(ξ) = (C₊(α″)(ξ), C₋(α″)(ξ), χ₀(ξ))` for `α″` of `∂²C(A)`, with
/// the inverse `C₀(α″)⁻¹` precomputed on even monomials.
#[derive(Clone, Debug)]
pub struct PsiA {
    algebra: CompositionAlgebra,
    triple: TrialitarianTripleSplit,
    inverse: Matrix,
}

impl PsiA {
    pub fn new(a: &CompositionAlgebra) -> Result<Self> {
        let c2 = a.composition().derive_unchecked().derive_unchecked();
        let triple = make_triple(&c2)?;
        let alg = triple.algebra();
        let cols: Vec<Vec<Scalar>> = alg
            .even_masks()
            .into_iter()
            .map(|m| {
                let (p, q) = triple.alpha().even_image(&alg.monomial(m))?;
                Ok(flat(&p).into_iter().chain(flat(&q)).collect())
            })
            .collect::<Result<_>>()?;
        let d = cols.len();
        let inverse = Matrix::from_cols(a.field(), d, &cols)?
            .inverse()
            .map_err(|_| Error::RankDeficient("C₀(α″) is not bijective".into()))?;
        Ok(PsiA {
            algebra: a.clone(),
            triple,
            inverse,
        })
    }

    /// `C(V, q)` carrying `α″`.
    pub fn triple(&self) -> &TrialitarianTripleSplit {
        &self.triple
    }

    pub fn apply(&self, xi: &CliffordElem) -> Result<[Matrix; 3]> {
        let xi = self.triple.adopt(xi)?;
        let om = omega_membership(&xi)?.ok_or(Error::NotInOmega)?;
        let (p, m) = self.triple.alpha().even_image(&xi)?;
        let f = [p, m, om.chi0];
        if !isotopy_dictionary(&self.algebra, &self.algebra, &f)?.isotopy {
            return Err(Error::Inconsistent("ψ_A(ξ) is not an autotopy".into()));
        }
        Ok(f)
    }

    /// The `ξ ∈ Ω(q)` with `ψ_A(ξ) = f`.
    pub fn invert(&self, f: &[Matrix; 3]) -> Result<CliffordElem> {
        if !isotopy_dictionary(&self.algebra, &self.algebra, f)?.isotopy {
            return Err(Error::NotAutotopy);
        }
        let v: Vec<Scalar> = flat(&f[0]).into_iter().chain(flat(&f[1])).collect();
        let xi = self.triple.algebra().from_even_coords(&self.inverse.mul_vec(&v));
        let om = omega_membership(&xi)?.ok_or(Error::NotAutotopy)?;
        if om.chi0 != f[2] {
            return Err(Error::NotAutotopy);
        }
        Ok(xi)
    }

    /// The multiplier of `ψ_A(ξ)` as a similitude of `C(A)`.
    pub fn multiplier(&self, f: &[Matrix; 3]) -> Option<[Scalar; 3]> {
        let c = self.algebra.composition();
        similitude_multiplier(c, c, f)
    }
}

pub fn psi_a_structure(a: &CompositionAlgebra, xi: &CliffordElem) -> Result<[Matrix; 3]> {
    PsiA::new(a)?.apply(xi)
}

pub fn psi_a_inverse(a: &CompositionAlgebra, f: &[Matrix; 3]) -> Result<CliffordElem> {
    PsiA::new(a)?.invert(f)
}
