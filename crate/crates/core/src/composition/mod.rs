// SPDX-License-Identifier: Apache-2.0
//! Compositions of quadratic spaces `q₃(x₁ *₃ x₂) = q₁(x₁) q₂(x₂)`.
//!
//! A [`Composition`] stores three forms of equal dimension `n` and the
//! structure tensor `c[k][i][j]` with `e_i *₃ f_j = Σ_k c[k][i][j] g_k`.
//! Construction does not certify multiplicativity; [`Composition::verify`]
//! does, by the finite polarized identity set
//!
//! * (a) `q₃(e_i*f_j) = q₁(e_i) q₂(f_j)`,
//! * (b) `b₃(e_i*f_j, e_i*f_k) = q₁(e_i) b₂(f_j,f_k)` for `j < k`,
//! * (c) `b₃(e_i*f_j, e_k*f_j) = b₁(e_i,e_k) q₂(f_j)` for `i < k`,
//! * (d) `b₃(e_i*f_j, e_k*f_l) + b₃(e_i*f_l, e_k*f_j) = b₁(e_i,e_k) b₂(f_j,f_l)`
//!   for `i < k`, `j < l`,
//!
//! which is equivalent to the biquadratic identity in every characteristic.

mod alpha;
mod identities;
mod pfister;
mod pointed;
mod similitude;

pub use alpha::{sym_basis, verify_quadpair_iso, CliffordAlpha};
pub use identities::{identity_suite, IDENTITY_NAMES};
pub use pfister::{anisotropic_vector, iso_decision, pfister_data, IsoDecision, PfisterData};
pub use pointed::{pointed_suite, PointedComposition, PointedReport};
pub use similitude::{
    multiplier_witness, rho_similitude, similitude_multiplier, RhoPair, SimilitudeTriple,
};

use crate::error::{Error, Result};
use crate::exactfield::{dot, FieldSpec, Matrix, Scalar};
use crate::quadform::QuadForm;
use crate::report::{Checker, Report};

/// Three quadratic spaces of equal dimension with a bilinear map
/// `*₃: V₁ × V₂ → V₃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    forms: [QuadForm; 3],
    n: usize,
    /// `c[k][i][j]` at `(k n + i) n + j`.
    tensor: Vec<Scalar>,
}

impl Composition {
    /// Assembles a candidate composition; shapes and fields are checked,
    /// multiplicativity is not.
    pub fn new(q1: QuadForm, q2: QuadForm, q3: QuadForm, tensor: Vec<Scalar>) -> Result<Self> {
        let field = q1.field();
        if q2.field() != field || q3.field() != field {
            return Err(Error::FieldMismatch);
        }
        let n = q1.dim();
        if q2.dim() != n || q3.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "spaces of dimensions {}, {}, {}",
                n,
                q2.dim(),
                q3.dim()
            )));
        }
        if tensor.len() != n * n * n {
            return Err(Error::DimensionMismatch(format!(
                "tensor has {} entries, expected {}",
                tensor.len(),
                n * n * n
            )));
        }
        if tensor.iter().any(|s| s.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Composition {
            forms: [q1, q2, q3],
            n,
            tensor,
        })
    }

    /// Builds the tensor from the products `prod(i, j) = e_i *₃ f_j`.
    pub fn from_basis_products(
        q1: QuadForm,
        q2: QuadForm,
        q3: QuadForm,
        prod: impl Fn(usize, usize) -> Vec<Scalar>,
    ) -> Result<Self> {
        let n = q1.dim();
        let field = q1.field();
        let mut tensor = vec![field.zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                let v = prod(i, j);
                if v.len() != n {
                    return Err(Error::DimensionMismatch("basis product has wrong length".into()));
                }
                for (k, c) in v.into_iter().enumerate() {
                    tensor[(k * n + i) * n + j] = c;
                }
            }
        }
        Self::new(q1, q2, q3, tensor)
    }

    /// As [`Composition::new`], then requires [`Composition::verify`].
    pub fn checked(q1: QuadForm, q2: QuadForm, q3: QuadForm, tensor: Vec<Scalar>) -> Result<Self> {
        let c = Self::new(q1, q2, q3, tensor)?;
        c.require_composition()?;
        Ok(c)
    }

    /// The one-dimensional composition `⟨1⟩ × ⟨1⟩ → ⟨1⟩`, `x * y = xy`.
    ///
    /// Refused in characteristic 2, where `⟨1⟩` has a singular polar form.
    pub fn one_dimensional(field: FieldSpec) -> Result<Self> {
        if field.is_char2() {
            return Err(Error::InvalidForm(
                "a one-dimensional composition needs characteristic ≠ 2".into(),
            ));
        }
        let q = QuadForm::diagonal(field, &[field.one()])?;
        Self::new(q.clone(), q.clone(), q, vec![field.one()])
    }

    pub fn field(&self) -> FieldSpec {
        self.forms[0].field()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `q_i` for `i ∈ {1, 2, 3}`.
    pub fn q(&self, i: usize) -> &QuadForm {
        &self.forms[i - 1]
    }

    pub fn forms(&self) -> &[QuadForm; 3] {
        &self.forms
    }

    pub fn tensor(&self) -> &[Scalar] {
        &self.tensor
    }

    pub fn coeff(&self, k: usize, i: usize, j: usize) -> &Scalar {
        &self.tensor[(k * self.n + i) * self.n + j]
    }

    /// `e_i *₃ f_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        (0..self.n).map(|k| self.coeff(k, i, j).clone()).collect()
    }

    /// `x₁ *₃ x₂`.
    pub fn mul(&self, x1: &[Scalar], x2: &[Scalar]) -> Vec<Scalar> {
        self.left_mul(x1).mul_vec(x2)
    }

    /// `ℓ_{x₁}: V₂ → V₃`, `x₂ ↦ x₁ *₃ x₂`.
    pub fn left_mul(&self, x1: &[Scalar]) -> Matrix {
        let n = self.n;
        Matrix::from_fn(self.field(), n, n, |k, j| {
            let mut s = self.field().zero();
            for (i, a) in x1.iter().enumerate() {
                if !a.is_zero() {
                    s += &(a * self.coeff(k, i, j));
                }
            }
            s
        })
    }

    /// `r_{x₂}: V₁ → V₃`, `x₁ ↦ x₁ *₃ x₂`.
    pub fn right_mul(&self, x2: &[Scalar]) -> Matrix {
        let n = self.n;
        Matrix::from_fn(self.field(), n, n, |k, i| {
            let mut s = self.field().zero();
            for (j, a) in x2.iter().enumerate() {
                if !a.is_zero() {
                    s += &(a * self.coeff(k, i, j));
                }
            }
            s
        })
    }

    /// Checks the polarized identity set (a)–(d).
    pub fn verify(&self) -> Report {
        let n = self.n;
        let [q1, q2, q3] = &self.forms;
        let prods: Vec<Vec<Scalar>> = (0..n * n).map(|ij| self.basis_product(ij / n, ij % n)).collect();
        let p = |i: usize, j: usize| &prods[i * n + j];
        let b1 = q1.polar();
        let b2 = q2.polar();
        let b3 = |x: &[Scalar], y: &[Scalar]| q3.bilinear(x, y);
        let d1 = |i: usize| q1.upper().get(i, i);
        let d2 = |j: usize| q2.upper().get(j, j);

        let mut a = Checker::new("(a) q3(e_i*f_j) = q1(e_i)q2(f_j)");
        let mut b = Checker::new("(b) b3(e_i*f_j, e_i*f_k) = q1(e_i)b2(f_j,f_k)");
        let mut c = Checker::new("(c) b3(e_i*f_j, e_k*f_j) = b1(e_i,e_k)q2(f_j)");
        let mut d = Checker::new(
            "(d) b3(e_i*f_j, e_k*f_l) + b3(e_i*f_l, e_k*f_j) = b1(e_i,e_k)b2(f_j,f_l)",
        );
        for i in 0..n {
            for j in 0..n {
                a.case(|| idx(&[("i", i), ("j", j)]), q3.eval(p(i, j)), d1(i) * d2(j));
                for k in j + 1..n {
                    b.case(
                        || idx(&[("i", i), ("j", j), ("k", k)]),
                        b3(p(i, j), p(i, k)),
                        d1(i) * b2.get(j, k),
                    );
                }
            }
            for k in i + 1..n {
                for j in 0..n {
                    c.case(
                        || idx(&[("i", i), ("k", k), ("j", j)]),
                        b3(p(i, j), p(k, j)),
                        b1.get(i, k) * d2(j),
                    );
                    for l in j + 1..n {
                        d.case(
                            || idx(&[("i", i), ("k", k), ("j", j), ("l", l)]),
                            b3(p(i, j), p(k, l)) + b3(p(i, l), p(k, j)),
                            b1.get(i, k) * b2.get(j, l),
                        );
                    }
                }
            }
        }
        let mut r = Report::new();
        // (b), (c), (d) are empty families in dimension 1.
        for ch in [a, b, c, d] {
            let ch = ch.finish();
            if ch.checked > 0 {
                r.push(ch);
            }
        }
        r
    }

    pub fn is_composition(&self) -> bool {
        self.verify().pass()
    }

    pub(crate) fn require_composition(&self) -> Result<()> {
        let r = self.verify();
        match r.first_failure() {
            None => Ok(()),
            Some(c) => Err(Error::NotComposition(c.identity.clone())),
        }
    }

    /// The derived composition `∂C = (q₂, q₃, q₁, *₁)`, where `*₁` is
    /// determined by `b₁(x₁, x₂ *₁ x₃) = b₃(x₃, x₁ *₃ x₂)`.
    pub fn derive(&self) -> Result<Composition> {
        self.require_composition()?;
        Ok(self.derive_unchecked())
    }

    /// `∂²C = (q₃, q₁, q₂, *₂)`.
    pub fn derive2(&self) -> Result<Composition> {
        self.require_composition()?;
        Ok(self.derive_unchecked().derive_unchecked())
    }

    pub(crate) fn derive_unchecked(&self) -> Composition {
        let n = self.n;
        let field = self.field();
        let [q1, q2, q3] = &self.forms;
        let b3 = q3.polar();
        let b1inv = q1.polar_inv();
        let mut t = vec![field.zero(); n * n * n];
        for j in 0..n {
            for k in 0..n {
                let rhs: Vec<Scalar> = (0..n)
                    .map(|i| dot(b3.row(k), &self.basis_product(i, j)))
                    .collect();
                let d = b1inv.mul_vec(&rhs);
                for (l, c) in d.into_iter().enumerate() {
                    t[(l * n + j) * n + k] = c;
                }
            }
        }
        Composition {
            forms: [q2.clone(), q3.clone(), q1.clone()],
            n,
            tensor: t,
        }
    }

    /// `C′ = (q₂, q₁, q₃, *′₃)` with `x₂ *′₃ x₁ = x₁ *₃ x₂`.
    pub fn swapped(&self) -> Composition {
        let n = self.n;
        let mut t = self.tensor.clone();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    t[(k * n + j) * n + i] = self.coeff(k, i, j).clone();
                }
            }
        }
        let [q1, q2, q3] = &self.forms;
        Composition {
            forms: [q2.clone(), q1.clone(), q3.clone()],
            n,
            tensor: t,
        }
    }

    /// The composition for which the identity maps form a similitude
    /// `C → C̃` with composition multiplier `λ`:
    /// `q̃₁ = λ₂λ₃ q₁`, `q̃₂ = λ₃λ₁ q₂`, `q̃₃ = λ₁λ₂ q₃`, `x *̃₃ y = λ₃ x *₃ y`.
    pub fn rescaled(&self, lambda: &[Scalar; 3]) -> Result<Composition> {
        let [l1, l2, l3] = lambda;
        if lambda.iter().any(Scalar::is_zero) {
            return Err(Error::DivisionByZero);
        }
        let [q1, q2, q3] = &self.forms;
        Ok(Composition {
            forms: [q1.scaled(&(l2 * l3))?, q2.scaled(&(l3 * l1))?, q3.scaled(&(l1 * l2))?],
            n: self.n,
            tensor: self.tensor.iter().map(|c| c * l3).collect(),
        })
    }

    /// Replaces `c[k][i][j]` by `c[k][i][j] + delta`, for negative controls.
    pub fn perturbed(&self, k: usize, i: usize, j: usize, delta: &Scalar) -> Composition {
        let mut c = self.clone();
        let n = self.n;
        c.tensor[(k * n + i) * n + j] = &c.tensor[(k * n + i) * n + j] + delta;
        c
    }

    /// The standard basis vector `e_i` of `V_1`, `V_2` or `V_3`.
    pub(crate) fn unit(&self, i: usize) -> Vec<Scalar> {
        self.field().unit_vec(self.n, i)
    }
}

pub(crate) fn idx(pairs: &[(&str, usize)]) -> Vec<String> {
    pairs.iter().map(|(k, v)| format!("{k}={v}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;

    /// `F × F` with `q(a, b) = ab`.
    fn etale(f: FieldSpec) -> Composition {
        let q = QuadForm::hyperbolic(f, 1);
        Composition::from_basis_products(q.clone(), q.clone(), q, |i, j| {
            if i == j {
                f.unit_vec(2, i)
            } else {
                f.vec_zero(2)
            }
        })
        .unwrap()
    }

    #[test]
    fn etale_verifies_over_every_field() {
        for f in FieldSpec::defaults() {
            let c = etale(f);
            assert!(c.verify().pass(), "{f}");
            let d = c.derive().unwrap();
            assert!(d.verify().pass());
            assert_eq!(d.derive().unwrap().derive().unwrap(), c);
        }
    }

    #[test]
    fn zero_tensor_violates_a() {
        let f = FieldSpec::Rationals;
        let q = QuadForm::diagonal(f, &[f.one(), f.one()]).unwrap();
        let c = Composition::new(q.clone(), q.clone(), q, vec![f.zero(); 8]).unwrap();
        let r = c.verify();
        assert!(!r.pass());
        assert!(r.checks[0].identity.starts_with("(a)"));
        assert!(!r.checks[0].pass());
        assert!(matches!(c.derive(), Err(Error::NotComposition(_))));
    }

    #[test]
    fn one_dimensional_refused_in_char_two() {
        assert!(Composition::one_dimensional(FieldSpec::Prime(2)).is_err());
        for f in [FieldSpec::Rationals, FieldSpec::Prime(3), FieldSpec::Prime(7)] {
            let c = Composition::one_dimensional(f).unwrap();
            assert!(c.verify().pass());
            assert_eq!(c.derive().unwrap(), c);
        }
    }

    #[test]
    fn swapped_and_rescaled_are_compositions() {
        let f = FieldSpec::Prime(7);
        let c = etale(f);
        assert!(c.swapped().verify().pass());
        assert_eq!(c.swapped().swapped(), c);
        let r = c.rescaled(&[f.int(2), f.int(3), f.int(5)]).unwrap();
        assert!(r.verify().pass());
        assert_eq!(r.q(3), &c.q(3).scaled(&f.int(6)).unwrap());
    }

    #[test]
    fn shape_errors() {
        let f = FieldSpec::Rationals;
        let q = QuadForm::hyperbolic(f, 1);
        assert!(matches!(
            Composition::new(q.clone(), q.clone(), q.clone(), vec![f.zero(); 7]),
            Err(Error::DimensionMismatch(_))
        ));
        let q4 = QuadForm::hyperbolic(f, 2);
        assert!(Composition::new(q.clone(), q4, q, vec![]).is_err());
    }
}
