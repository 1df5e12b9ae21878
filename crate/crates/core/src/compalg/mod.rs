// SPDX-License-Identifier: Apache-2.0
//! Composition algebras `(A, q, ⋄)`, viewed as compositions with
//! `q₁ = q₂ = q₃ = q`: the split étale, quaternion and octonion algebras,
//! para-unital algebras, Kaplansky's unitalization and isotopies.

use crate::composition::{similitude_multiplier, Composition, SimilitudeTriple};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Matrix, Scalar};
use crate::quadform::{find_vector_with_value, similitude_check, QuadForm, SearchConfig};

/// A composition algebra with an optional unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionAlgebra {
    comp: Composition,
    unit: Option<Vec<Scalar>>,
}

impl CompositionAlgebra {
    /// Wraps a product tensor on `(A, q)`. The composition identities are
    /// certified, and a supplied unit must satisfy `q(e) = 1` and
    /// `e⋄x = x⋄e = x`.
    pub fn new(q: QuadForm, tensor: Vec<Scalar>, unit: Option<Vec<Scalar>>) -> Result<Self> {
        let comp = Composition::checked(q.clone(), q.clone(), q, tensor)?;
        Self::from_composition(comp, unit)
    }

    pub fn from_composition(comp: Composition, unit: Option<Vec<Scalar>>) -> Result<Self> {
        if comp.q(1) != comp.q(2) || comp.q(1) != comp.q(3) {
            return Err(Error::InvalidForm("the three forms of a composition algebra must agree".into()));
        }
        let a = CompositionAlgebra { comp, unit: None };
        if let Some(e) = &unit {
            a.q().check_vector(e)?;
            if !a.is_unit(e) {
                return Err(Error::NotUnital);
            }
        }
        Ok(CompositionAlgebra { unit, ..a })
    }

    fn is_unit(&self, e: &[Scalar]) -> bool {
        let n = self.dim();
        let f = self.field();
        self.q().eval(e).is_one()
            && (0..n).all(|i| {
                let x = f.unit_vec(n, i);
                self.mul(e, &x) == x && self.mul(&x, e) == x
            })
    }

    pub fn composition(&self) -> &Composition {
        &self.comp
    }

    pub fn field(&self) -> FieldSpec {
        self.comp.field()
    }

    pub fn dim(&self) -> usize {
        self.comp.dim()
    }

    pub fn q(&self) -> &QuadForm {
        self.comp.q(1)
    }

    pub fn unit(&self) -> Option<&[Scalar]> {
        self.unit.as_deref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    /// `∂C(A) = C(A)` as tensors.
    pub fn is_symmetric(&self) -> bool {
        self.comp.derive_unchecked() == self.comp
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.comp.mul(x, y)
    }

    fn require_unit(&self) -> Result<&[Scalar]> {
        self.unit().ok_or(Error::NotUnital)
    }

    /// `x̄ = e b(e, x) − x` as a matrix.
    pub fn bar_matrix(&self) -> Result<Matrix> {
        let e = self.require_unit()?;
        Ok(self.q().tensor(e, e).sub(&Matrix::identity(self.field(), self.dim())))
    }

    pub fn bar(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        Ok(self.bar_matrix()?.mul_vec(x))
    }
}

fn zorn_mul(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let (a, v, w, b) = (&x[0], &x[1..4], &x[4..7], &x[7]);
    let (a2, v2, w2, b2) = (&y[0], &y[1..4], &y[4..7], &y[7]);
    let dot = |s: &[Scalar], t: &[Scalar]| crate::exactfield::dot(s, t);
    let cross = |s: &[Scalar], t: &[Scalar]| -> Vec<Scalar> {
        (0..3)
            .map(|i| {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                &s[j] * &t[k] - &s[k] * &t[j]
            })
            .collect()
    };
    let mut out = vec![a * a2 + dot(v, w2)];
    let ww = cross(w, w2);
    out.extend((0..3).map(|i| a * &v2[i] + b2 * &v[i] - &ww[i]));
    let vv = cross(v, v2);
    out.extend((0..3).map(|i| a2 * &w[i] + b * &w2[i] + &vv[i]));
    out.push(b * b2 + dot(w, v2));
    out
}

/// The split unital composition algebra of dimension 2, 4 or 8.
///
/// * `n = 2`: `F × F` with `q(x) = x₀x₁`.
/// * `n = 4`: `M₂(F)` on `E₁₁, E₁₂, E₂₁, E₂₂` with `q = det`.
/// * `n = 8`: Zorn vector matrices `(a, v; w, b)` on coordinates
///   `a, v₁..v₃, w₁..w₃, b`, with `q = ab − v·w` and
///   `(a,v;w,b)(a′,v′;w′,b′) = (aa′ + v·w′, av′ + b′v − w×w′; a′w + bw′ + v×v′, bb′ + w·v′)`.
pub fn make_split(n: usize, field: FieldSpec) -> Result<CompositionAlgebra> {
    let f = field;
    let (q, tensor_fn, unit): (QuadForm, Box<dyn Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>>, Vec<Scalar>) = match n {
        2 => (
            QuadForm::hyperbolic(f, 1),
            Box::new(|x, y| vec![&x[0] * &y[0], &x[1] * &y[1]]),
            vec![f.one(), f.one()],
        ),
        4 => (
            QuadForm::from_entries(f, 4, &[(0, 3, f.one()), (1, 2, -f.one())])?,
            Box::new(|x, y| {
                vec![
                    &x[0] * &y[0] + &x[1] * &y[2],
                    &x[0] * &y[1] + &x[1] * &y[3],
                    &x[2] * &y[0] + &x[3] * &y[2],
                    &x[2] * &y[1] + &x[3] * &y[3],
                ]
            }),
            vec![f.one(), f.zero(), f.zero(), f.one()],
        ),
        8 => {
            let mut entries = vec![(0, 7, f.one())];
            entries.extend((1..4).map(|i| (i, i + 3, -f.one())));
            let mut e = f.vec_zero(8);
            e[0] = f.one();
            e[7] = f.one();
            (
                QuadForm::from_entries(f, 8, &entries)?,
                Box::new(zorn_mul),
                e,
            )
        }
        _ => {
            return Err(Error::DimensionMismatch(format!(
                "split composition algebras have dimension 2, 4 or 8, got {n}"
            )))
        }
    };
    let comp = Composition::from_basis_products(q.clone(), q.clone(), q, |i, j| {
        tensor_fn(&f.unit_vec(n, i), &f.unit_vec(n, j))
    })?;
    comp.require_composition()?;
    CompositionAlgebra::from_composition(comp, Some(unit))
}

/// The para-unital algebra `x * y = x̄ ⋄ ȳ`, which is symmetric.
pub fn para(a: &CompositionAlgebra) -> Result<CompositionAlgebra> {
    let bar = a.bar_matrix()?;
    let q = a.q().clone();
    let comp = Composition::from_basis_products(q.clone(), q.clone(), q, |i, j| {
        a.mul(&bar.col(i), &bar.col(j))
    })?;
    let p = CompositionAlgebra::from_composition(comp, None)?;
    if !p.is_symmetric() {
        return Err(Error::Inconsistent("para-unital algebra is not ∂-fixed".into()));
    }
    Ok(p)
}

/// The derived products `⋄₁`, `⋄₂` of a unital algebra in closed form,
/// `x ⋄₁ y = y ⋄ x̄` and `x ⋄₂ y = ȳ ⋄ x`, checked against [`Composition::derive`].
#[derive(Clone, Debug)]
pub struct DerivedProducts {
    pub first: Composition,
    pub second: Composition,
    /// Whether the closed forms agree with the generic derivation.
    pub agree: [bool; 2],
}

pub fn derived_products(a: &CompositionAlgebra) -> Result<DerivedProducts> {
    let bar = a.bar_matrix()?;
    let q = a.q().clone();
    let first = Composition::from_basis_products(q.clone(), q.clone(), q.clone(), |i, j| {
        a.mul(&a.field().unit_vec(a.dim(), j), &bar.col(i))
    })?;
    let second = Composition::from_basis_products(q.clone(), q.clone(), q, |i, j| {
        a.mul(&bar.col(j), &a.field().unit_vec(a.dim(), i))
    })?;
    let d1 = a.comp.derive()?;
    let d2 = d1.derive()?;
    Ok(DerivedProducts {
        agree: [d1 == first, d2 == second],
        first,
        second,
    })
}

/// Kaplansky's unital algebra `x * y = r_u⁻¹(x) ⋄ ℓ_u⁻¹(y)` with unit
/// `u ⋄ u`, for `q(u) = 1`.
#[derive(Clone, Debug)]
pub struct Kaplansky {
    pub algebra: CompositionAlgebra,
    pub u: Vec<Scalar>,
    /// `(r_u, ℓ_u, Id): C(A) → C(A*)`, an isotopy and an isomorphism.
    pub iso: SimilitudeTriple,
}

/// `q(u) = 1` searched among basis vectors, sums of two basis vectors,
/// then by [`find_vector_with_value`].
pub fn norm_one_vector(q: &QuadForm, cfg: &SearchConfig) -> Result<Vec<Scalar>> {
    let f = q.field();
    let n = q.dim();
    for i in 0..n {
        let e = f.unit_vec(n, i);
        if q.eval(&e).is_one() {
            return Ok(e);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut e = f.unit_vec(n, i);
            e[j] = f.one();
            if q.eval(&e).is_one() {
                return Ok(e);
            }
        }
    }
    match find_vector_with_value(q, &f.one(), cfg) {
        Ok(Some(u)) => Ok(u),
        Ok(None) | Err(Error::SearchExhausted(_)) => Err(Error::NoNormOneVector),
        Err(e) => Err(e),
    }
}

pub fn kaplansky(a: &CompositionAlgebra, cfg: &SearchConfig) -> Result<Kaplansky> {
    let u = norm_one_vector(a.q(), cfg)?;
    kaplansky_at(a, &u)
}

pub fn kaplansky_at(a: &CompositionAlgebra, u: &[Scalar]) -> Result<Kaplansky> {
    if !a.q().eval(u).is_one() {
        return Err(Error::NoNormOneVector);
    }
    let c = &a.comp;
    let r = c.right_mul(u);
    let l = c.left_mul(u);
    let (ri, li) = (r.inverse()?, l.inverse()?);
    let q = a.q().clone();
    let comp = Composition::from_basis_products(q.clone(), q.clone(), q, |i, j| c.mul(&ri.col(i), &li.col(j)))?;
    let e = c.mul(u, u);
    let algebra = CompositionAlgebra::from_composition(comp, Some(e))?;
    let g = [r, l, Matrix::identity(a.field(), a.dim())];
    let lambda = similitude_multiplier(c, &algebra.comp, &g)
        .ok_or_else(|| Error::Inconsistent("(r_u, ℓ_u, Id) is not a similitude".into()))?;
    let iso = SimilitudeTriple { g, lambda };
    if !iso.is_isomorphism() {
        return Err(Error::Inconsistent("(r_u, ℓ_u, Id) has multiplier other than (1,1,1)".into()));
    }
    Ok(Kaplansky {
        algebra,
        u: u.to_vec(),
        iso,
    })
}

/// The verdicts of [`isotopy_dictionary`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotopyVerdict {
    /// `f₃(x ⋄ y) = f₁(x) ⋄̃ f₂(y)` on all basis pairs.
    pub isotopy: bool,
    /// The multiplier of `f` as a similitude `C(A) → C(Ã)`, if it is one.
    pub lambda: Option<[Scalar; 3]>,
    /// `(μ(f₂), μ(f₁), 1)` when both `f₁`, `f₂` are similitudes.
    pub expected: Option<[Scalar; 3]>,
}

impl IsotopyVerdict {
    /// Isotopy holds iff `f` is a similitude with multiplier
    /// `(μ(f₂), μ(f₁), 1)`.
    pub fn consistent(&self) -> bool {
        let sim = self.lambda.is_some() && self.lambda == self.expected;
        self.isotopy == sim
    }
}

pub fn isotopy_dictionary(a: &CompositionAlgebra, at: &CompositionAlgebra, f: &[Matrix; 3]) -> Result<IsotopyVerdict> {
    if a.field() != at.field() {
        return Err(Error::FieldMismatch);
    }
    let n = a.dim();
    for m in f {
        if m.rows() != at.dim() || m.cols() != n {
            return Err(Error::DimensionMismatch("isotopy components must map A to Ã".into()));
        }
        if m.rank() != n || at.dim() != n {
            return Err(Error::Singular);
        }
    }
    let fs = a.field();
    let isotopy = (0..n).all(|i| {
        (0..n).all(|j| {
            let x = fs.unit_vec(n, i);
            let y = fs.unit_vec(n, j);
            f[2].mul_vec(&a.mul(&x, &y)) == at.mul(&f[0].mul_vec(&x), &f[1].mul_vec(&y))
        })
    });
    let lambda = similitude_multiplier(&a.comp, &at.comp, f);
    let expected = match (similitude_check(a.q(), at.q(), &f[1]), similitude_check(a.q(), at.q(), &f[0])) {
        (Some(m2), Some(m1)) => Some([m2, m1, fs.one()]),
        _ => None,
    };
    Ok(IsotopyVerdict {
        isotopy,
        lambda,
        expected,
    })
}

/// Whether `(f, f, f)` is an automorphism of `C(A)`, `∂C(A)` and `∂²C(A)`.
pub fn automorphism_check(a: &CompositionAlgebra, f: &Matrix) -> bool {
    let one = a.field().one();
    let g = [f.clone(), f.clone(), f.clone()];
    let c1 = a.comp.derive_unchecked();
    let c2 = c1.derive_unchecked();
    [&a.comp, &c1, &c2]
        .iter()
        .all(|c| similitude_multiplier(c, c, &g).is_some_and(|l| l.iter().all(|s| *s == one)))
}

#[cfg(test)]
mod tests;
