// SPDX-License-Identifier: Apache-2.0
//! Extension of a polarization-preserving similitude `g₁: q₁ → q̃₁` to a
//! similitude of compositions, and explicit isomorphisms over `F_p`.

use super::{make_triple, square, TrialitarianTripleSplit};
use crate::clifford::{bivectors, EvenMap};
use crate::composition::{anisotropic_vector, multiplier_witness, similitude_multiplier, Composition, SimilitudeTriple};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Matrix, Scalar};
use crate::quadform::{is_isometric, similitude_check, SearchConfig};

/// The unique-up-to-scalar `g` with `g·P = P̃·g` for every pair, scaled so
/// that its first nonzero entry (row-major) is 1.
fn intertwiner(field: FieldSpec, n: usize, pairs: &[(Matrix, Matrix)]) -> Result<Matrix> {
    let mut rows = Vec::with_capacity(pairs.len() * n * n);
    for (p, pt) in pairs {
        for r in 0..n {
            for c in 0..n {
                let mut row = field.vec_zero(n * n);
                for k in 0..n {
                    row[r * n + k] = &row[r * n + k] + p.get(k, c);
                    row[k * n + c] = &row[k * n + c] - pt.get(r, k);
                }
                if row.iter().any(|s| !s.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = Matrix::from_rows(field, n * n, &rows)?.kernel();
    if kernel.len() != 1 {
        return Err(Error::IntertwinerNotFound(format!(
            "intertwiner space has dimension {}",
            kernel.len()
        )));
    }
    let v = &kernel[0];
    let lead = v.iter().find(|s| !s.is_zero()).expect("kernel vector is nonzero").inv()?;
    let g = square(field, n, v).scale(&lead);
    if !g.is_invertible() {
        return Err(Error::IntertwinerNotFound("intertwiner is singular".into()));
    }
    Ok(g)
}

/// Extends `g₁` to `(g₁, g₂, g₃): C → C̃` with `g₂ C₊(α)(x) g₂⁻¹ =
/// C₊(α̃)(C₀(g₁)(x))` and likewise for `g₃`. `g₂` has leading entry 1 and
/// `g₃` is scaled so that `λ₃ = 1`.
pub fn extend_similitude(
    t: &TrialitarianTripleSplit,
    tt: &TrialitarianTripleSplit,
    g1: &Matrix,
) -> Result<SimilitudeTriple> {
    let (c, ct) = (t.composition(), tt.composition());
    if c.field() != ct.field() {
        return Err(Error::FieldMismatch);
    }
    similitude_check(c.q(1), ct.q(1), g1).ok_or_else(|| Error::InvalidForm("g1 is not a similitude q1 → q̃1".into()))?;
    let c0 = EvenMap::new(t.algebra(), tt.algebra(), g1)?;
    let image = c0.apply(&t.polarization().0)?;
    let (zpt, zmt) = tt.polarization();
    if &image == zmt {
        return Err(Error::PolarizationMismatch);
    }
    if &image != zpt {
        return Err(Error::Inconsistent("C₀(g1)(z₊) is not a central idempotent".into()));
    }
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for b in bivectors(t.algebra()) {
        let (p, m) = t.alpha().even_image(&b)?;
        let (pt, mt) = tt.alpha().even_image(&c0.apply(&b)?)?;
        plus.push((p, pt));
        minus.push((m, mt));
    }
    let field = c.field();
    let n = c.dim();
    let g2 = intertwiner(field, n, &plus)?;
    let g3 = intertwiner(field, n, &minus)?;
    let mut g = [g1.clone(), g2, g3];
    let lambda = similitude_multiplier(c, ct, &g)
        .ok_or_else(|| Error::IntertwinerNotFound("(g1, g2, g3) is not a similitude".into()))?;
    g[2] = g[2].scale(&lambda[2]);
    let lambda = similitude_multiplier(c, ct, &g)
        .filter(|l| l[2].is_one())
        .ok_or_else(|| Error::Inconsistent("rescaling g3 did not give λ3 = 1".into()))?;
    Ok(SimilitudeTriple { g, lambda })
}

/// An isomorphism `C → C̃` of compositions of dimension 8 over `F_p` with
/// `q_i ≅ q̃_i`.
///
/// An isometry `g₁` is adjusted by a reflection to preserve the
/// polarization, extended to `(g₁, g₂, g₃)` with `λ = (μ(g₂), 1, 1)`, and
/// corrected by a similitude of `C̃` with multiplier `(μ(g₂)⁻¹, 1, 1)`.
pub fn isomorphism_witness(c: &Composition, ct: &Composition, cfg: &SearchConfig) -> Result<SimilitudeTriple> {
    if c.field() != ct.field() {
        return Err(Error::FieldMismatch);
    }
    if !c.field().is_finite() {
        return Err(Error::InvalidForm("explicit isometries are only built over F_p".into()));
    }
    let t = make_triple(c)?;
    let tt = make_triple(ct)?;
    let field = c.field();
    let g1 = is_isometric(c.q(1), ct.q(1))?
        .witness
        .ok_or_else(|| Error::InvalidForm("q1 and q̃1 are not isometric".into()))?;
    if similitude_check(c.q(1), ct.q(1), &g1) != Some(field.one()) {
        return Err(Error::Inconsistent("isometry witness fails".into()));
    }
    let image = EvenMap::new(t.algebra(), tt.algebra(), &g1)?.apply(&t.polarization().0)?;
    let g1 = if &image == &tt.polarization().1 {
        g1.mul(&c.q(1).reflection(&anisotropic_vector(c.q(1))?)?)
    } else {
        g1
    };
    let s = extend_similitude(&t, &tt, &g1)?;
    let one = field.one();
    let h = multiplier_witness(ct, &[s.lambda[0].inv()?, one.clone(), one], cfg)?;
    let w = h.after(&s);
    match similitude_multiplier(c, ct, &w.g) {
        Some(l) if l.iter().all(Scalar::is_one) => Ok(SimilitudeTriple { g: w.g, lambda: l }),
        _ => Err(Error::Inconsistent("corrected triple is not an isomorphism".into())),
    }
}
