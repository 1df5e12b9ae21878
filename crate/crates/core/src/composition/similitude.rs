// SPDX-License-Identifier: Apache-2.0
//! Similitudes of compositions `λ₃ g₃(x₁ *₃ x₂) = g₁(x₁) *̃₃ g₂(x₂)` and
//! their composition multipliers `(λ₁, λ₂, λ₃)`, with
//! `μ(g₁) = λ₂λ₃`, `μ(g₂) = λ₃λ₁`, `μ(g₃) = λ₁λ₂`.

use super::pfister::anisotropic_vector;
use super::Composition;
use crate::error::{Error, Result};
use crate::exactfield::{Matrix, Scalar};
use crate::quadform::{find_vector_with_value, similitude_check, SearchConfig};

/// A similitude of compositions with its composition multiplier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilitudeTriple {
    pub g: [Matrix; 3],
    pub lambda: [Scalar; 3],
}

impl SimilitudeTriple {
    pub fn identity(c: &Composition) -> Self {
        let f = c.field();
        let id = Matrix::identity(f, c.dim());
        SimilitudeTriple {
            g: [id.clone(), id.clone(), id],
            lambda: [f.one(), f.one(), f.one()],
        }
    }

    /// `(ν id, ν id, ν id)`, with multiplier `(ν, ν, ν)`.
    pub fn homothety(c: &Composition, nu: &Scalar) -> Self {
        let id = Matrix::scalar(c.field(), c.dim(), nu);
        SimilitudeTriple {
            g: [id.clone(), id.clone(), id],
            lambda: [nu.clone(), nu.clone(), nu.clone()],
        }
    }

    /// `self ∘ other`; multipliers multiply.
    pub fn after(&self, other: &SimilitudeTriple) -> SimilitudeTriple {
        SimilitudeTriple {
            g: std::array::from_fn(|i| self.g[i].mul(&other.g[i])),
            lambda: std::array::from_fn(|i| &self.lambda[i] * &other.lambda[i]),
        }
    }

    /// `∂g = (g₂, g₃, g₁)` with multiplier `(λ₂, λ₃, λ₁)`.
    pub fn derived(&self) -> SimilitudeTriple {
        let [g1, g2, g3] = self.g.clone();
        let [l1, l2, l3] = self.lambda.clone();
        SimilitudeTriple {
            g: [g2, g3, g1],
            lambda: [l2, l3, l1],
        }
    }

    /// Inverse of `∂`: from `h = ∂g` recovers `g = (h₃, h₁, h₂)`.
    pub fn underived(&self) -> SimilitudeTriple {
        let [h1, h2, h3] = self.g.clone();
        let [l1, l2, l3] = self.lambda.clone();
        SimilitudeTriple {
            g: [h3, h1, h2],
            lambda: [l3, l1, l2],
        }
    }

    pub fn is_isomorphism(&self) -> bool {
        self.lambda.iter().all(Scalar::is_one)
    }
}

/// The composition multiplier of `(g₁, g₂, g₃): C → C̃`, or `None` when the
/// triple is not a similitude of compositions.
pub fn similitude_multiplier(c: &Composition, ct: &Composition, g: &[Matrix; 3]) -> Option<[Scalar; 3]> {
    if c.field() != ct.field() || c.dim() != ct.dim() {
        return None;
    }
    let mu: Vec<Scalar> = (1..=3)
        .map(|i| similitude_check(c.q(i), ct.q(i), &g[i - 1]))
        .collect::<Option<_>>()?;
    let n = c.dim();
    let g1 = g[0].col_vecs();
    let g2 = g[1].col_vecs();
    let mut lambda3: Option<Scalar> = None;
    for i in 0..n {
        for j in 0..n {
            let lhs = g[2].mul_vec(&c.basis_product(i, j));
            let rhs = ct.mul(&g1[i], &g2[j]);
            let l3 = match &lambda3 {
                Some(l) => l.clone(),
                None => {
                    let Some(k) = lhs.iter().position(|s| !s.is_zero()) else {
                        if rhs.iter().all(Scalar::is_zero) {
                            continue;
                        }
                        return None;
                    };
                    let l = &rhs[k] / &lhs[k];
                    lambda3 = Some(l.clone());
                    l
                }
            };
            if lhs.iter().zip(&rhs).any(|(a, b)| &(a * &l3) != b) {
                return None;
            }
        }
    }
    let l3 = lambda3.filter(|l| !l.is_zero())?;
    let inv = l3.inv().ok()?;
    let l1 = &mu[1] * &inv;
    let l2 = &mu[0] * &inv;
    (mu[2] == &l1 * &l2).then_some([l1, l2, l3])
}

/// Certified triple: computes and attaches the multiplier.
fn certify(c: &Composition, ct: &Composition, g: [Matrix; 3]) -> Result<SimilitudeTriple> {
    let lambda = similitude_multiplier(c, ct, &g)
        .ok_or_else(|| Error::Inconsistent("constructed triple is not a similitude".into()))?;
    Ok(SimilitudeTriple { g, lambda })
}

/// The two similitudes attached to an anisotropic `u₃ ∈ V₃`.
#[derive(Clone, Debug)]
pub struct RhoPair {
    /// `C′ = (q₂, q₁, q₃, x₂ *′₃ x₁ = x₁ *₃ x₂)`.
    pub swapped: Composition,
    /// `(ℓ_{u₃}, r_{u₃}, ρ_{u₃}): C → C′`.
    pub forward: SimilitudeTriple,
    /// `(r_{u₃}, ℓ_{u₃}, ρ_{u₃}): C′ → C`.
    pub backward: SimilitudeTriple,
}

/// `ℓ_{u₃}(x₁) = u₃ *₂ x₁`, `r_{u₃}(x₂) = x₂ *₁ u₃` and
/// `ρ_{u₃}(x₃) = u₃ q₃(u₃)⁻¹ b₃(u₃, x₃) − x₃`; both triples have
/// multiplier `(1, 1, q₃(u₃))`.
pub fn rho_similitude(c: &Composition, u3: &[Scalar]) -> Result<RhoPair> {
    c.require_composition()?;
    let q3 = c.q(3);
    q3.check_vector(u3)?;
    let nu = q3.eval(u3);
    if nu.is_zero() {
        return Err(Error::IsotropicVector);
    }
    let c1 = c.derive_unchecked();
    let c2 = c1.derive_unchecked();
    let l = c2.left_mul(u3);
    let r = c1.right_mul(u3);
    let rho = q3.rho(u3)?;
    let swapped = c.swapped();
    let forward = certify(c, &swapped, [l.clone(), r.clone(), rho.clone()])?;
    let backward = certify(&swapped, c, [r, l, rho])?;
    let f = c.field();
    let expected = [f.one(), f.one(), nu];
    if forward.lambda != expected || backward.lambda != expected {
        return Err(Error::Inconsistent("ρ-similitude multiplier differs from (1,1,q3(u3))".into()));
    }
    Ok(RhoPair {
        swapped,
        forward,
        backward,
    })
}

/// An auto-similitude of `C` with multiplier `(1, 1, ν)`, as
/// `(r_v, ℓ_v, ρ_v) ∘ (ℓ_u, r_u, ρ_u)` with `q₃(u) q₃(v) = ν`.
fn one_one_nu(c: &Composition, nu: &Scalar, cfg: &SearchConfig) -> Result<SimilitudeTriple> {
    if nu.is_one() {
        return Ok(SimilitudeTriple::identity(c));
    }
    let q3 = c.q(3);
    let u = anisotropic_vector(q3)?;
    let target = nu / &q3.eval(&u);
    let v = find_vector_with_value(q3, &target, cfg)?.ok_or(Error::NotInMultiplierGroup)?;
    let first = rho_similitude(c, &u)?.forward;
    let second = rho_similitude(c, &v)?.backward;
    Ok(second.after(&first))
}

/// An auto-similitude of `C` with composition multiplier `λ`, built from
/// `(λ₁λ₂⁻¹, 1, 1)`, `(1, 1, λ₂⁻¹λ₃)` and the homothety `λ₂`.
///
/// `NotInMultiplierGroup` when a needed ratio is not represented by the
/// Pfister form of `C`.
pub fn multiplier_witness(c: &Composition, lambda: &[Scalar; 3], cfg: &SearchConfig) -> Result<SimilitudeTriple> {
    c.require_composition()?;
    if lambda.iter().any(Scalar::is_zero) {
        return Err(Error::NotInMultiplierGroup);
    }
    let [l1, l2, l3] = lambda;
    let nu1 = l1 / l2;
    let nu3 = l3 / l2;
    let t3 = one_one_nu(c, &nu3, cfg)?;
    let t1 = one_one_nu(&c.derive_unchecked(), &nu1, cfg)?.underived();
    let w = SimilitudeTriple::homothety(c, l2).after(&t1).after(&t3);
    let cert = certify(c, c, w.g)?;
    if &cert.lambda != lambda {
        return Err(Error::Inconsistent("witness multiplier differs from the request".into()));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;
    use crate::quadform::QuadForm;

    fn quaternions(f: FieldSpec) -> Composition {
        // 2×2 matrices in the basis E11, E12, E21, E22 with q = det.
        let q = QuadForm::from_entries(f, 4, &[(0, 3, f.one()), (1, 2, -f.one())]).unwrap();
        Composition::from_basis_products(q.clone(), q.clone(), q, |i, j| {
            let (a, b) = (i / 2, i % 2);
            let (c, d) = (j / 2, j % 2);
            let mut v = f.vec_zero(4);
            if b == c {
                v[a * 2 + d] = f.one();
            }
            v
        })
        .unwrap()
    }

    #[test]
    fn identity_and_homothety_multipliers() {
        let f = FieldSpec::Prime(7);
        let c = quaternions(f);
        assert!(c.verify().pass());
        let id = SimilitudeTriple::identity(&c);
        assert_eq!(similitude_multiplier(&c, &c, &id.g), Some([f.one(), f.one(), f.one()]));
        let (n1, n2, n3) = (f.int(2), f.int(3), f.int(5));
        let g = [
            Matrix::scalar(f, 4, &n1),
            Matrix::scalar(f, 4, &n2),
            Matrix::scalar(f, 4, &n3),
        ];
        let expected = [
            &n2 * &n3 / n1.clone(),
            &n3 * &n1 / n2.clone(),
            &n1 * &n2 / n3.clone(),
        ];
        assert_eq!(similitude_multiplier(&c, &c, &g), Some(expected));
    }

    #[test]
    fn rho_pair_and_double_rho() {
        let f = FieldSpec::Prime(5);
        let c = quaternions(f);
        let u = vec![f.int(1), f.int(0), f.int(0), f.int(2)];
        let v = vec![f.int(0), f.int(1), f.int(3), f.int(1)];
        let pu = rho_similitude(&c, &u).unwrap();
        let pv = rho_similitude(&c, &v).unwrap();
        let both = pv.backward.after(&pu.forward);
        let qu = c.q(3).eval(&u);
        let qv = c.q(3).eval(&v);
        assert_eq!(
            similitude_multiplier(&c, &c, &both.g),
            Some([f.one(), f.one(), &qu * &qv])
        );
        let iso = vec![f.int(1), f.int(0), f.int(0), f.int(0)];
        assert_eq!(rho_similitude(&c, &iso).unwrap_err(), Error::IsotropicVector);
    }

    #[test]
    fn witness_for_arbitrary_triples() {
        let f = FieldSpec::Prime(7);
        let c = quaternions(f);
        let cfg = SearchConfig::default();
        for (a, b, d) in [(1, 1, 1), (1, 1, 3), (2, 5, 6), (3, 3, 4)] {
            let l = [f.int(a), f.int(b), f.int(d)];
            let w = multiplier_witness(&c, &l, &cfg).unwrap();
            assert_eq!(w.lambda, l);
        }
    }

    #[test]
    fn derived_similitude_cycles_multiplier() {
        let f = FieldSpec::Prime(7);
        let c = quaternions(f);
        let w = multiplier_witness(&c, &[f.int(2), f.int(5), f.int(6)], &SearchConfig::default()).unwrap();
        let dc = c.derive().unwrap();
        let d = w.derived();
        assert_eq!(similitude_multiplier(&dc, &dc, &d.g), Some(d.lambda.clone()));
        assert_eq!(d.lambda, [f.int(5), f.int(6), f.int(2)]);
    }
}
