// SPDX-License-Identifier: Apache-2.0
//! The isomorphisms `θ₊: 𝔭𝔤𝔬(q₁) → 𝔭𝔤𝔬(q₂)` and `θ₋: 𝔭𝔤𝔬(q₁) → 𝔭𝔤𝔬(q₃)`
//! induced by `C₊(α)` and `C₋(α)` on `ω(q₁)`.

use std::sync::Arc;

use super::{derived_triple, local_triality_holds, local_triality_solve, TrialitarianTripleSplit};
use crate::clifford::{go_multiplier, omega_lie, PgoBasis};
use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::exactfield::{Echelon, Matrix, Scalar};
use crate::report::{Check, Checker, Report};

/// A linear map `𝔭𝔤𝔬(q_a) → 𝔭𝔤𝔬(q_b)` in the coordinates of [`PgoBasis`].
#[derive(Clone, Debug)]
pub struct PgoMap {
    source: Arc<PgoBasis>,
    target: Arc<PgoBasis>,
    matrix: Matrix,
}

impl PartialEq for PgoMap {
    fn eq(&self, other: &Self) -> bool {
        self.source.form() == other.source.form()
            && self.target.form() == other.target.form()
            && self.matrix == other.matrix
    }
}

impl Eq for PgoMap {}

impl PgoMap {
    pub fn source(&self) -> &PgoBasis {
        &self.source
    }

    pub fn target(&self) -> &PgoBasis {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply_coords(&self, c: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(c)
    }

    /// A representative of `θ(g + F)`.
    pub fn apply(&self, g: &Matrix) -> Result<Matrix> {
        Ok(self.target.element(&self.apply_coords(&self.source.coords(g)?)))
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &PgoMap) -> Result<PgoMap> {
        if other.target.form() != self.source.form() {
            return Err(Error::FormMismatch);
        }
        Ok(PgoMap {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&other.matrix),
        })
    }

    pub fn inverse(&self) -> Result<PgoMap> {
        let inv = self
            .matrix
            .inverse()
            .map_err(|_| Error::RankDeficient("θ is not invertible".into()))?;
        Ok(PgoMap {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: inv,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source.form() == self.target.form() && self.matrix.is_identity()
    }

    /// `θ([x, y]) = [θx, θy]` on the given pairs of basis indices.
    pub fn lie_hom_check(&self, pairs: &[(usize, usize)]) -> Result<Check> {
        let mut ch = Checker::new("θ([x,y]) = [θ(x),θ(y)]");
        let b = self.source.basis();
        for &(i, j) in pairs {
            let lhs = self.apply_coords(&self.source.coords(&b[i].commutator(&b[j]))?);
            let (x, y) = (self.apply(&b[i])?, self.apply(&b[j])?);
            let rhs = self.target.coords(&x.commutator(&y))?;
            ch.case(|| vec![format!("i={i}"), format!("j={j}")], lhs, rhs);
        }
        Ok(ch.finish())
    }
}

/// `θ₊: 𝔭𝔤𝔬(q₁) → 𝔭𝔤𝔬(q₂)` and `θ₋: 𝔭𝔤𝔬(q₁) → 𝔭𝔤𝔬(q₃)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaMaps {
    pub plus: PgoMap,
    pub minus: PgoMap,
}

/// The unique `θ` with `θ(x_k) = y_k`, certified on every sample.
fn fit(src: &Arc<PgoBasis>, tgt: &Arc<PgoBasis>, x: &[Vec<Scalar>], y: &[Vec<Scalar>]) -> Result<PgoMap> {
    let field = src.form().field();
    let d = src.dim();
    let mut ech = Echelon::new(field, d);
    let sel: Vec<usize> = (0..x.len()).filter(|&k| ech.insert(&x[k])).collect();
    if sel.len() < d {
        return Err(Error::RankDeficient(format!(
            "χ̇₀(ω) spans {} of {d} dimensions of 𝔭𝔤𝔬(q1)",
            sel.len()
        )));
    }
    let xs = Matrix::from_cols(field, d, &sel.iter().map(|&k| x[k].clone()).collect::<Vec<_>>())?;
    let ys = Matrix::from_cols(field, tgt.dim(), &sel.iter().map(|&k| y[k].clone()).collect::<Vec<_>>())?;
    let matrix = ys.mul(&xs.inverse()?);
    if x.iter().zip(y).any(|(xk, yk)| &matrix.mul_vec(xk) != yk) {
        return Err(Error::Inconsistent("θ is not well defined on 𝔭𝔤𝔬(q1)".into()));
    }
    if tgt.dim() != d || matrix.rank() != d {
        return Err(Error::RankDeficient("θ is not bijective".into()));
    }
    Ok(PgoMap {
        source: src.clone(),
        target: tgt.clone(),
        matrix,
    })
}

pub fn theta_maps(t: &TrialitarianTripleSplit) -> Result<ThetaMaps> {
    let c = t.composition();
    let bases: [Arc<PgoBasis>; 3] = std::array::from_fn(|i| Arc::new(PgoBasis::new(c.q(i + 1))));
    let omega = omega_lie(t.algebra())?;
    let (mut x, mut p, mut m) = (Vec::new(), Vec::new(), Vec::new());
    for (eta, chi0) in omega.basis.iter().zip(&omega.chi0) {
        let (cp, cm) = t.alpha().even_image(eta)?;
        x.push(bases[0].coords(chi0)?);
        p.push(bases[1].coords(&cp)?);
        m.push(bases[2].coords(&cm)?);
    }
    Ok(ThetaMaps {
        plus: fit(&bases[0], &bases[1], &x, &p)?,
        minus: fit(&bases[0], &bases[2], &x, &m)?,
    })
}

fn map_case(ch: &mut Checker, lhs: &PgoMap, rhs: &PgoMap) {
    let same = lhs.source.form() == rhs.source.form() && lhs.target.form() == rhs.target.form();
    ch.assert(|| vec!["source or target form".into()], same);
    ch.case(Vec::new, lhs.matrix.data().to_vec(), rhs.matrix.data().to_vec());
}

fn identity_case(ch: &mut Checker, m: &PgoMap) {
    ch.assert(|| vec!["not an automorphism".into()], m.source.form() == m.target.form());
    let id = Matrix::identity(m.matrix.field(), m.matrix.rows());
    ch.case(Vec::new, m.matrix.data().to_vec(), id.into_data());
}

/// Computes `θ′±` from `∂T` and `θ″±` from `∂²T` and checks them against
/// `θ±`, together with the Lie property and `π₂ = θ₊∘π₁`, `π₃ = θ₋∘π₁`.
pub fn verify_theta_relations(t: &TrialitarianTripleSplit) -> Result<Report> {
    let dt = derived_triple(t)?;
    let ddt = derived_triple(&dt)?;
    let th = theta_maps(t)?;
    let th1 = theta_maps(&dt)?;
    let th2 = theta_maps(&ddt)?;
    let (p, m) = (&th.plus, &th.minus);
    let (p1, m1) = (&th1.plus, &th1.minus);
    let (p2, m2) = (&th2.plus, &th2.minus);
    let mut rep = Report::new();
    let mut eq = |name: &str, lhs: &PgoMap, rhs: PgoMap| {
        let mut ch = Checker::new(name);
        map_case(&mut ch, lhs, &rhs);
        rep.push(ch.finish());
    };
    eq("θ′₊ = θ₋∘θ₊⁻¹", p1, m.after(&p.inverse()?)?);
    eq("θ′₋ = θ₊⁻¹", m1, p.inverse()?);
    eq("θ″₊ = θ₋⁻¹", p2, m.inverse()?);
    eq("θ″₋ = θ₊∘θ₋⁻¹", m2, p.after(&m.inverse()?)?);
    eq("θ″₊ = θ′₋∘θ′₊⁻¹", p2, m1.after(&p1.inverse()?)?);
    eq("θ″₋ = θ′₊⁻¹", m2, p1.inverse()?);
    eq("θ₊ = θ″₋∘θ″₊⁻¹", p, m2.after(&p2.inverse()?)?);
    eq("θ₋ = θ″₊⁻¹", m, p2.inverse()?);
    for (name, map) in [
        ("θ′₋∘θ₊ = id", m1.after(p)?),
        ("θ″₊∘θ₋ = id", p2.after(m)?),
        ("θ″₋∘θ′₊ = id", m2.after(p1)?),
    ] {
        let mut ch = Checker::new(name);
        identity_case(&mut ch, &map);
        rep.push(ch.finish());
    }
    let d = p.source.dim();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    for (label, map) in [("θ₊", p), ("θ₋", m)] {
        let mut c = map.lie_hom_check(&pairs)?;
        c.identity = format!("{label}: {}", c.identity);
        rep.push(c);
    }
    let mut pi2 = Checker::new("π₂ = θ₊∘π₁");
    let mut pi3 = Checker::new("π₃ = θ₋∘π₁");
    for (k, g1) in p.source.basis().iter().enumerate() {
        let sol = local_triality_solve(t, g1)?;
        let c1 = p.source.coords(g1)?;
        pi2.case(|| vec![format!("basis {k}")], p.target.coords(&sol.g2)?, p.apply_coords(&c1));
        pi3.case(|| vec![format!("basis {k}")], m.target.coords(&sol.g3)?, m.apply_coords(&c1));
    }
    rep.push(pi2.finish());
    rep.push(pi3.finish());
    Ok(rep)
}

/// `ℓ` with `h₃(x₁*x₂) = h₁x₁*x₂ + x₁*h₂x₂ − ℓ x₁*x₂` on basis pairs, if any.
pub(crate) fn lie_multiplier(c: &Composition, h: [&Matrix; 3]) -> Option<Scalar> {
    let n = c.dim();
    let h1 = h[0].col_vecs();
    let h2 = h[1].col_vecs();
    let mut ell: Option<Scalar> = None;
    let mut zero_pairs = Vec::new();
    for i in 0..n {
        let ei = c.unit(i);
        for j in 0..n {
            let ej = c.unit(j);
            let prod = c.basis_product(i, j);
            let lhs = h[2].mul_vec(&prod);
            let rhs = crate::exactfield::vec_add(&c.mul(&h1[i], &ej), &c.mul(&ei, &h2[j]));
            let resid = crate::exactfield::vec_sub(&rhs, &lhs);
            match prod.iter().position(|s| !s.is_zero()) {
                None => zero_pairs.push(resid),
                Some(k) => {
                    let l = ell.get_or_insert_with(|| &resid[k] / &prod[k]).clone();
                    if resid.iter().zip(&prod).any(|(r, p)| r != &(&l * p)) {
                        return None;
                    }
                }
            }
        }
    }
    let l = ell?;
    zero_pairs.iter().all(|r| crate::exactfield::is_zero_vec(r)).then_some(l)
}

/// For each `ξ` in a basis of `ω(q₁)`, checks that
/// `(χ̇₀(ξ), C₊(α)(ξ), C₋(α)(ξ))` lies in `𝔤𝔬(C)`, that its derived triple
/// lies in `𝔤𝔬(∂C)` with `λ₁ = μ̇(g₂) − λ₃`, and that it solves the local
/// triality equation after shifting `g₂` by a scalar.
pub fn differential_consistency(t: &TrialitarianTripleSplit) -> Result<Report> {
    let c = t.composition();
    let dc = c.derive_unchecked();
    let field = c.field();
    let n = c.dim();
    let omega = omega_lie(t.algebra())?;
    let mut in_go = Checker::new("(χ̇₀(ξ), C₊(α)(ξ), C₋(α)(ξ)) ∈ 𝔤𝔬(C)");
    let mut derived = Checker::new("∂g ∈ 𝔤𝔬(∂C) with λ₁ = μ̇(g₂) − λ₃");
    let mut local = Checker::new("(χ̇₀(ξ), C₊(α)(ξ) + s, C₋(α)(ξ)) solves local triality");
    for (k, (eta, h1)) in omega.basis.iter().zip(&omega.chi0).enumerate() {
        let lbl = || vec![format!("ω basis {k}")];
        let (h2, h3) = t.alpha().even_image(eta)?;
        let l3 = lie_multiplier(c, [h1, &h2, &h3]);
        in_go.assert(lbl, l3.is_some());
        let l1 = lie_multiplier(&dc, [&h2, &h3, h1]);
        let mu2 = go_multiplier(c.q(2), &h2).ok_or(Error::NotInGo)?;
        let mu1 = go_multiplier(c.q(1), h1).ok_or(Error::NotInGo)?;
        match (&l3, &l1) {
            (Some(l3), Some(l1)) => {
                derived.case(lbl, l1.clone(), &mu2 - l3);
                let shift = Matrix::scalar(field, n, &(l1 + &mu1));
                local.assert(lbl, local_triality_holds(t, h1, &h2.sub(&shift), &h3)?);
            }
            _ => {
                derived.assert(lbl, false);
                local.assert(lbl, false);
            }
        }
    }
    let mut rep = Report::new();
    rep.push(in_go.finish());
    rep.push(derived.finish());
    rep.push(local.finish());
    Ok(rep)
}
