// SPDX-License-Identifier: Apache-2.0
//! Lifting isometries of `q₁` through the Clifford group, and the local
//! (Lie algebra) form of triality.

use super::{square, TrialitarianTripleSplit};
use crate::clifford::{chi, go_multiplier, lift_generation_check, proper_test_in, CliffordElem};
use crate::composition::{similitude_multiplier, Composition};
use crate::error::{Error, Result};
use crate::exactfield::{linear_solve, vec_add, vec_scale, vec_sub, Matrix, Scalar, Solution};
use crate::quadform::{factor_into_reflections, similitude_check};
use crate::report::{Check, Checker};

/// Whether lifts of `θ` are unique: the commutator relations on a Witt basis
/// hold, the commutators generate `C₀`, and dropping one hyperbolic pair
/// leaves a proper subalgebra.
pub fn lift_uniqueness_test(t: &TrialitarianTripleSplit) -> Result<bool> {
    let span = lift_generation_check(t.algebra())?;
    Ok(span.relations_hold && span.span_dim == span.target_dim && span.restricted_span_dim < span.target_dim)
}

/// `(g₂, g₃)` with `g₁(x₂ *₁ x₃) = g₂(x₂) *₁ g₃(x₃)`, obtained from
/// `ξ = v₁⋯v_{2k}` with `g₁ = r_{v₁}∘…∘r_{v_{2k}}`.
#[derive(Clone, Debug)]
pub struct LiftedIsometry {
    pub factors: Vec<Vec<Scalar>>,
    pub xi: CliffordElem,
    pub g2: Matrix,
    pub g3: Matrix,
    /// Multiplier of `(C₊(α)(ξ), C₋(α)(ξ), g₁)` on `∂C` before rescaling `g₂`.
    pub lambda: [Scalar; 3],
    pub certificate: Check,
}

pub fn triality_lift_isometry(t: &TrialitarianTripleSplit, g1: &Matrix) -> Result<LiftedIsometry> {
    let c = t.composition();
    let q1 = c.q(1);
    match similitude_check(q1, q1, g1) {
        Some(mu) if mu.is_one() => {}
        _ => return Err(Error::FactorizationFailed("input is not an isometry".into())),
    }
    if !proper_test_in(t.algebra(), g1)? {
        return Err(Error::PolarizationMismatch);
    }
    let factors = factor_into_reflections(q1, g1)?;
    let xi = t.algebra().vector_product(&factors);
    if chi(&xi).as_ref() != Some(g1) {
        return Err(Error::Inconsistent("ξxξ⁻¹ does not reproduce g1".into()));
    }
    let (p, m) = t.alpha().even_image(&xi)?;
    let dc = c.derive_unchecked();
    let lambda = similitude_multiplier(&dc, &dc, &[p.clone(), m.clone(), g1.clone()])
        .ok_or_else(|| Error::Inconsistent("(C₊(α)(ξ), C₋(α)(ξ), g1) is not a similitude of ∂C".into()))?;
    let g2 = p.scale(&lambda[2].inv()?);
    let g3 = m;
    let certificate = lift_certificate(&dc, g1, &g2, &g3);
    Ok(LiftedIsometry {
        factors,
        xi,
        g2,
        g3,
        lambda,
        certificate,
    })
}

fn lift_certificate(dc: &Composition, g1: &Matrix, g2: &Matrix, g3: &Matrix) -> Check {
    let n = dc.dim();
    let mut ch = Checker::new("g1(x2*1x3) = g2(x2)*1g3(x3)");
    let (c2, c3) = (g2.col_vecs(), g3.col_vecs());
    for a in 0..n {
        for b in 0..n {
            ch.case(
                || vec![format!("x2=e{a}"), format!("x3=e{b}")],
                g1.mul_vec(&dc.basis_product(a, b)),
                dc.mul(&c2[a], &c3[b]),
            );
        }
    }
    ch.finish()
}

/// A solution of `g₁(x₂*₁x₃) = g₂x₂*₁x₃ + x₂*₁g₃x₃ + μ̇(g₁) x₂*₁x₃`
/// with the full solution space `(g₂, g₃) + F(I, −I)`.
#[derive(Clone, Debug)]
pub struct LocalTriality {
    pub g2: Matrix,
    pub g3: Matrix,
    pub mu_dot: Scalar,
    pub kernel: Vec<(Matrix, Matrix)>,
    pub certificate: Check,
}

/// `g₁(x₂*₁x₃) − μ̇(g₁)x₂*₁x₃ − g₂x₂*₁x₃ − x₂*₁g₃x₃` on a basis pair.
fn local_residual(dc: &Composition, g: [&Matrix; 3], mu: &Scalar, a: usize, b: usize) -> Vec<Scalar> {
    let (ea, eb) = (dc.unit(a), dc.unit(b));
    let prod = dc.basis_product(a, b);
    let lhs = vec_sub(&g[0].mul_vec(&prod), &vec_scale(mu, &prod));
    let rhs = vec_add(&dc.mul(&g[1].col(a), &eb), &dc.mul(&ea, &g[2].col(b)));
    vec_sub(&lhs, &rhs)
}

/// Substitutes `(g₁, g₂, g₃)` into the local triality equation on `∂C`.
pub fn local_triality_holds(t: &TrialitarianTripleSplit, g1: &Matrix, g2: &Matrix, g3: &Matrix) -> Result<bool> {
    let c = t.composition();
    let mu = go_multiplier(c.q(1), g1).ok_or(Error::NotInGo)?;
    let dc = c.derive_unchecked();
    let n = c.dim();
    Ok((0..n).all(|a| {
        (0..n).all(|b| local_residual(&dc, [g1, g2, g3], &mu, a, b).iter().all(Scalar::is_zero))
    }))
}

pub fn local_triality_solve(t: &TrialitarianTripleSplit, g1: &Matrix) -> Result<LocalTriality> {
    let c = t.composition();
    let field = c.field();
    let n = c.dim();
    let mu = go_multiplier(c.q(1), g1).ok_or(Error::NotInGo)?;
    let dc = c.derive_unchecked();
    // Unknowns: g₂[r][a] at r·n + a, then g₃[s][b] at n² + s·n + b.
    let nn = n * n;
    let mut a_mat = Matrix::zeros(field, n * nn, 2 * nn);
    let mut rhs = Vec::with_capacity(n * nn);
    for a in 0..n {
        for b in 0..n {
            let target = vec_sub(&g1.mul_vec(&dc.basis_product(a, b)), &vec_scale(&mu, &dc.basis_product(a, b)));
            for (l, t_l) in target.into_iter().enumerate() {
                let row = (a * n + b) * n + l;
                for r in 0..n {
                    let x = a_mat.get(row, r * n + a) + dc.coeff(l, r, b);
                    a_mat.set(row, r * n + a, x);
                    let y = a_mat.get(row, nn + r * n + b) + dc.coeff(l, a, r);
                    a_mat.set(row, nn + r * n + b, y);
                }
                rhs.push(t_l);
            }
        }
    }
    let (particular, kernel) = match linear_solve(&a_mat, &rhs)? {
        Solution::Inconsistent => {
            return Err(Error::Inconsistent("local triality system has no solution".into()));
        }
        Solution::Solutions { particular, kernel } => (particular, kernel),
    };
    let split = |v: &[Scalar]| (square(field, n, &v[..nn]), square(field, n, &v[nn..]));
    let kernel: Vec<(Matrix, Matrix)> = kernel.iter().map(|v| split(v)).collect();
    let id = Matrix::identity(field, n);
    let expected = kernel.len() == 1 && {
        let (k2, k3) = &kernel[0];
        k2.proportional_to(&id).is_some() && k2.add(k3).is_zero()
    };
    if !expected {
        return Err(Error::Inconsistent("solution space is not (g2, g3) + F(I, -I)".into()));
    }
    let (g2, g3) = split(&particular);
    let mut ch = Checker::new("g1(x2*1x3) = g2x2*1x3 + x2*1g3x3 + μ̇(g1)x2*1x3");
    for a in 0..n {
        for b in 0..n {
            let r = local_residual(&dc, [g1, &g2, &g3], &mu, a, b);
            ch.case(|| vec![format!("x2=e{a}"), format!("x3=e{b}")], r, field.vec_zero(n));
        }
    }
    Ok(LocalTriality {
        g2,
        g3,
        mu_dot: mu,
        kernel,
        certificate: ch.finish(),
    })
}
