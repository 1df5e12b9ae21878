// SPDX-License-Identifier: Apache-2.0
//! Nonsingular quadratic spaces, the adjoint quadratic pair on `End V`,
//! similitudes, reflections, Witt decomposition and isometry classification.
//!
//! A form is stored by its upper-triangular coefficient table `Q` with
//! `q(x) = Σ_{i≤j} Q[i][j] x_i x_j`; in characteristic 2 the form cannot be
//! recovered from its polar matrix, so the polar matrix is derived, never
//! the other way round.

mod classify;
pub(crate) mod search;

pub use classify::{classify, is_hyperbolic, is_isometric, Invariants, IsometryDecision};
pub use search::{SearchConfig, DEFAULT_HEIGHT};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactfield::{axpy, dot, is_zero_vec, vec_sub, Echelon, FieldSpec, Matrix, Scalar};

/// A nonsingular quadratic form on `F^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadForm {
    upper: Matrix,
    polar: Matrix,
    polar_inv: Matrix,
}

impl QuadForm {
    /// Builds a form from an upper-triangular coefficient table.
    ///
    /// Entries below the diagonal must be zero; the polar matrix must be
    /// invertible (which forces even dimension in characteristic 2).
    pub fn new(upper: Matrix) -> Result<Self> {
        if !upper.is_square() {
            return Err(Error::InvalidForm("coefficient table is not square".into()));
        }
        let n = upper.rows();
        for i in 0..n {
            for j in 0..i {
                if !upper.get(i, j).is_zero() {
                    return Err(Error::InvalidForm(format!(
                        "entry ({i},{j}) below the diagonal is nonzero"
                    )));
                }
            }
        }
        let polar = upper.add(&upper.transpose());
        let polar_inv = polar.inverse().map_err(|_| {
            Error::InvalidForm(if upper.field().is_char2() && n % 2 == 1 {
                "odd dimension in characteristic 2".into()
            } else {
                "polar form is singular".into()
            })
        })?;
        Ok(QuadForm {
            upper,
            polar,
            polar_inv,
        })
    }

    /// Builds a form from `(i, j, coefficient)` entries with `i ≤ j`.
    pub fn from_entries(field: FieldSpec, n: usize, entries: &[(usize, usize, Scalar)]) -> Result<Self> {
        let mut upper = Matrix::zeros(field, n, n);
        for (i, j, c) in entries {
            let (i, j) = if i <= j { (*i, *j) } else { (*j, *i) };
            if j >= n {
                return Err(Error::InvalidForm(format!("index ({i},{j}) out of range")));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            let v = upper.get(i, j) + c;
            upper.set(i, j, v);
        }
        Self::new(upper)
    }

    /// `⟨a_1, …, a_n⟩ = Σ a_i x_i²`.
    pub fn diagonal(field: FieldSpec, coeffs: &[Scalar]) -> Result<Self> {
        let entries: Vec<_> = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (i, i, c.clone()))
            .collect();
        Self::from_entries(field, coeffs.len(), &entries)
    }

    /// Orthogonal sum of `m` hyperbolic planes `x_{2i} x_{2i+1}`.
    pub fn hyperbolic(field: FieldSpec, m: usize) -> Self {
        let entries: Vec<_> = (0..m).map(|i| (2 * i, 2 * i + 1, field.one())).collect();
        Self::from_entries(field, 2 * m, &entries).expect("hyperbolic form is nonsingular")
    }

    pub fn field(&self) -> FieldSpec {
        self.upper.field()
    }

    pub fn dim(&self) -> usize {
        self.upper.rows()
    }

    /// The coefficient table `Q`.
    pub fn upper(&self) -> &Matrix {
        &self.upper
    }

    /// `B = Q + Qᵀ`.
    pub fn polar(&self) -> &Matrix {
        &self.polar
    }

    pub fn polar_inv(&self) -> &Matrix {
        &self.polar_inv
    }

    /// Nonzero entries of `Q` as `(i, j, Q[i][j])`.
    pub fn entries(&self) -> Vec<(usize, usize, Scalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let c = self.upper.get(i, j);
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        assert_eq!(x.len(), self.dim(), "vector length");
        let mut acc = self.field().zero();
        for i in 0..self.dim() {
            if x[i].is_zero() {
                continue;
            }
            let mut row = self.field().zero();
            for j in i..self.dim() {
                let c = self.upper.get(i, j);
                if !c.is_zero() && !x[j].is_zero() {
                    row += &(c * &x[j]);
                }
            }
            acc += &(&x[i] * &row);
        }
        acc
    }

    /// `b(x, y) = q(x+y) - q(x) - q(y)`.
    pub fn bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        dot(x, &self.polar.mul_vec(y))
    }

    pub fn check_vector(&self, x: &[Scalar]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a form of dimension {}",
                x.len(),
                self.dim()
            )));
        }
        if x.iter().any(|s| s.field() != self.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn check_endo(&self, a: &Matrix) -> Result<()> {
        if a.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        if a.rows() != self.dim() || a.cols() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix on a space of dimension {}",
                a.rows(),
                a.cols(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// `c · q`.
    pub fn scaled(&self, c: &Scalar) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidForm("scaling by zero".into()));
        }
        Self::new(self.upper.scale(c))
    }

    /// `q ⊥ q'` on `F^{n+n'}`.
    pub fn orthogonal_sum(&self, o: &QuadForm) -> Result<Self> {
        if self.field() != o.field() {
            return Err(Error::FieldMismatch);
        }
        Self::new(Matrix::block_diag(&self.upper, &o.upper))
    }

    /// Coefficient table of `x ↦ q(g x)`; may be singular, so it is returned raw.
    pub fn pullback_table(&self, g: &Matrix) -> Matrix {
        let n = g.cols();
        let cols = g.col_vecs();
        let mut t = Matrix::zeros(self.field(), n, n);
        for i in 0..n {
            t.set(i, i, self.eval(&cols[i]));
            for j in i + 1..n {
                t.set(i, j, self.bilinear(&cols[i], &cols[j]));
            }
        }
        t
    }

    /// The form `x ↦ q(g x)` for invertible `g`.
    pub fn pullback(&self, g: &Matrix) -> Result<Self> {
        Self::new(self.pullback_table(g))
    }

    /// Restriction of `q` to the span of `basis`, in those coordinates.
    pub fn restrict(&self, basis: &[Vec<Scalar>]) -> Result<Self> {
        let cols = Matrix::from_cols(self.field(), self.dim(), basis)?;
        Self::new(self.pullback_table(&cols))
    }

    /// Adjoint involution `σ_b(a) = B⁻¹ aᵀ B`.
    pub fn sigma(&self, a: &Matrix) -> Matrix {
        self.polar_inv.mul(&a.transpose()).mul(&self.polar)
    }

    /// The semitrace `f_q(s) = tr(Q s B⁻¹)` on `σ_b`-symmetric `s`.
    pub fn semitrace(&self, s: &Matrix) -> Result<Scalar> {
        self.check_endo(s)?;
        if &self.sigma(s) != s {
            return Err(Error::NotSymmetric);
        }
        Ok(self.semitrace_unchecked(s))
    }

    pub(crate) fn semitrace_unchecked(&self, s: &Matrix) -> Scalar {
        self.upper.mul(s).mul(&self.polar_inv).trace()
    }

    /// `(σ_b(a), f_q(a))`, the semitrace only when `a` is symmetric.
    pub fn adjoint_pair_apply(&self, a: &Matrix) -> Result<(Matrix, Option<Scalar>)> {
        self.check_endo(a)?;
        let s = self.sigma(a);
        let f = (&s == a).then(|| self.semitrace_unchecked(a));
        Ok((s, f))
    }

    /// The rank-one endomorphism `y ↦ x b(x', y)`, i.e. `x ⊗ x'`.
    pub fn tensor(&self, x: &[Scalar], xp: &[Scalar]) -> Matrix {
        let bx = self.polar.mul_vec(xp);
        Matrix::from_fn(self.field(), self.dim(), self.dim(), |i, j| &x[i] * &bx[j])
    }

    /// Reflection `r_v(x) = x - b(x,v) q(v)⁻¹ v`.
    pub fn reflection(&self, v: &[Scalar]) -> Result<Matrix> {
        self.check_vector(v)?;
        let qv = self.eval(v);
        if qv.is_zero() {
            return Err(Error::IsotropicVector);
        }
        let c = -qv.inv()?;
        Ok(Matrix::identity(self.field(), self.dim()).add(&self.tensor(v, v).scale(&c)))
    }

    /// `ρ_u(x) = u q(u)⁻¹ b(u,x) - x`, the isometry fixing `u`.
    pub fn rho(&self, u: &[Scalar]) -> Result<Matrix> {
        Ok(self.reflection(u)?.neg())
    }
}

/// `Some(μ)` when `q̃(g x) = μ q(x)` identically and `μ ≠ 0`.
pub fn similitude_check(q: &QuadForm, qt: &QuadForm, g: &Matrix) -> Option<Scalar> {
    if q.field() != qt.field() || g.rows() != qt.dim() || g.cols() != q.dim() || q.dim() == 0 {
        return None;
    }
    let pulled = qt.pullback_table(g);
    let (i, j) = (0..q.dim())
        .flat_map(|i| (i..q.dim()).map(move |j| (i, j)))
        .find(|&(i, j)| !q.upper().get(i, j).is_zero())?;
    let mu = pulled.get(i, j) / q.upper().get(i, j);
    if mu.is_zero() {
        return None;
    }
    (pulled == q.upper().scale(&mu)).then_some(mu)
}

/// A similitude together with its multiplier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Similitude {
    pub matrix: Matrix,
    pub multiplier: Scalar,
}

impl Similitude {
    pub fn new(q: &QuadForm, qt: &QuadForm, g: Matrix) -> Option<Self> {
        let multiplier = similitude_check(q, qt, &g)?;
        Some(Similitude {
            matrix: g,
            multiplier,
        })
    }
}

/// Factors an isometry as a product of reflections `r_{v_1} ∘ … ∘ r_{v_k}`.
///
/// The vectors `y` of a basis are fixed one at a time. With `S` the span of
/// the vectors already fixed by the current map `h`, the difference
/// `v = h y − y` lies in `S⊥`. If `v` is anisotropic, `r_v` sends `h y` to
/// `y`; otherwise `h y` is sent to `z = r_d(y)` by `r_{h y − z}` and then to
/// `y` by `r_d`, for an anisotropic `d ∈ S⊥`. All reflections are in vectors
/// of `S⊥`, so `S` stays fixed. If the standard basis gets stuck, random
/// bases are tried.
pub fn reflection_factors(q: &QuadForm, g: &Matrix) -> Result<Vec<Vec<Scalar>>> {
    match similitude_check(q, q, g) {
        Some(mu) if mu.is_one() => {}
        _ => return Err(Error::FactorizationFailed("input is not an isometry".into())),
    }
    let n = q.dim();
    let field = q.field();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f_c4a7);
    let mut basis: Vec<Vec<Scalar>> = (0..n).map(|i| field.unit_vec(n, i)).collect();
    for _ in 0..32 {
        if let Some(factors) = factor_along(q, g, &basis, &mut rng)? {
            let mut check = Matrix::identity(field, n);
            for v in &factors {
                check = check.mul(&q.reflection(v)?);
            }
            if &check != g {
                return Err(Error::FactorizationFailed("product does not reproduce input".into()));
            }
            return Ok(factors);
        }
        basis = loop {
            let m = Matrix::from_fn(field, n, n, |_, _| field.random(&mut rng, 2));
            if m.rank() == n {
                break m.col_vecs();
            }
        };
    }
    Err(Error::FactorizationFailed("no anisotropic difference vector".into()))
}

fn factor_along(
    q: &QuadForm,
    g: &Matrix,
    basis: &[Vec<Scalar>],
    rng: &mut ChaCha8Rng,
) -> Result<Option<Vec<Vec<Scalar>>>> {
    let n = q.dim();
    let field = q.field();
    let mut h = g.clone();
    let mut factors = Vec::new();
    let mut fixed: Vec<Vec<Scalar>> = Vec::new();
    for y in basis {
        let hy = h.mul_vec(y);
        if &hy != y {
            let rows: Vec<Vec<Scalar>> = fixed.iter().map(|s| q.polar().mul_vec(s)).collect();
            let perp = if rows.is_empty() {
                (0..n).map(|i| field.unit_vec(n, i)).collect()
            } else {
                Matrix::from_rows(field, n, &rows)?.kernel()
            };
            let v = vec_sub(&hy, y);
            let step = if !q.eval(&v).is_zero() {
                Some(vec![v])
            } else {
                span_samples(field, &perp, rng).into_iter().find_map(|d| {
                    if q.eval(&d).is_zero() || q.bilinear(y, &d).is_zero() {
                        return None;
                    }
                    let z = q.reflection(&d).ok()?.mul_vec(y);
                    let u = vec_sub(&hy, &z);
                    if is_zero_vec(&u) {
                        Some(vec![d])
                    } else {
                        (!q.eval(&u).is_zero()).then(|| vec![u, d])
                    }
                })
            };
            let Some(step) = step else {
                return Ok(None);
            };
            for v in step {
                h = q.reflection(&v)?.mul(&h);
                factors.push(v);
            }
        }
        fixed.push(y.clone());
    }
    Ok(h.is_identity().then_some(factors))
}

/// Basis vectors, their pairwise sums and differences, and random
/// combinations of a spanning set.
fn span_samples(field: FieldSpec, basis: &[Vec<Scalar>], rng: &mut ChaCha8Rng) -> Vec<Vec<Scalar>> {
    let mut out: Vec<Vec<Scalar>> = basis.to_vec();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            out.push(crate::exactfield::vec_add(a, b));
            if !field.is_char2() {
                out.push(vec_sub(a, b));
            }
        }
    }
    for _ in 0..500 {
        let mut v = field.vec_zero(basis.first().map_or(0, Vec::len));
        for b in basis {
            axpy(&mut v, &field.random(rng, 2), b);
        }
        out.push(v);
    }
    out
}

/// Factorization of a proper isometry into an even number of reflections.
pub fn factor_into_reflections(q: &QuadForm, g: &Matrix) -> Result<Vec<Vec<Scalar>>> {
    let f = reflection_factors(q, g)?;
    if f.len() % 2 == 1 {
        return Err(Error::FactorizationFailed(
            "isometry is improper (odd number of reflections)".into(),
        ));
    }
    Ok(f)
}

/// Hyperbolic pairs and an anisotropic complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittDecomposition {
    pub pairs: Vec<(Vec<Scalar>, Vec<Scalar>)>,
    pub anisotropic: Vec<Vec<Scalar>>,
}

impl WittDecomposition {
    pub fn witt_index(&self) -> usize {
        self.pairs.len()
    }

    /// Basis `e_1, e'_1, …, e_k, e'_k, a_1, …` as matrix columns.
    pub fn basis_matrix(&self, field: FieldSpec, n: usize) -> Matrix {
        let mut cols = Vec::new();
        for (e, ep) in &self.pairs {
            cols.push(e.clone());
            cols.push(ep.clone());
        }
        cols.extend(self.anisotropic.iter().cloned());
        Matrix::from_cols(field, n, &cols).expect("basis vectors")
    }
}

/// Splits off hyperbolic planes until the complement is anisotropic.
pub fn witt_decompose(q: &QuadForm) -> Result<WittDecomposition> {
    witt_decompose_with(q, &SearchConfig::default())
}

pub fn witt_decompose_with(q: &QuadForm, cfg: &SearchConfig) -> Result<WittDecomposition> {
    let field = q.field();
    let n = q.dim();
    let mut rest: Vec<Vec<Scalar>> = (0..n).map(|i| field.unit_vec(n, i)).collect();
    let mut pairs = Vec::new();
    while !rest.is_empty() {
        let sub = q.restrict(&rest)?;
        let Some(local) = search::isotropic_vector(&sub, cfg)? else {
            break;
        };
        let e = combine(field, n, &rest, &local);
        let k = rest
            .iter()
            .position(|w| !q.bilinear(&e, w).is_zero())
            .ok_or_else(|| Error::InvalidForm("degenerate restriction".into()))?;
        let inv = q.bilinear(&e, &rest[k]).inv()?;
        let y: Vec<Scalar> = rest[k].iter().map(|s| s * &inv).collect();
        let mut ep = y.clone();
        axpy(&mut ep, &-q.eval(&y), &e);
        let mut ech = Echelon::new(field, n);
        let mut next = Vec::new();
        for w in &rest {
            let mut p = w.clone();
            axpy(&mut p, &-q.bilinear(w, &ep), &e);
            axpy(&mut p, &-q.bilinear(w, &e), &ep);
            if ech.insert(&p) {
                next.push(p);
            }
        }
        pairs.push((e, ep));
        rest = next;
    }
    Ok(WittDecomposition {
        pairs,
        anisotropic: rest,
    })
}

/// `Σ c_i basis_i` in ambient coordinates.
fn combine(field: FieldSpec, n: usize, basis: &[Vec<Scalar>], coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut v = field.vec_zero(n);
    for (c, b) in coeffs.iter().zip(basis) {
        axpy(&mut v, c, b);
    }
    v
}

/// An orthogonal basis of `q` (characteristic not 2), with its values.
pub fn orthogonal_basis(q: &QuadForm) -> Result<Vec<(Vec<Scalar>, Scalar)>> {
    let field = q.field();
    if field.is_char2() {
        return Err(Error::InvalidForm("no orthogonal basis in characteristic 2".into()));
    }
    let n = q.dim();
    let two = field.int(2);
    let mut rest: Vec<Vec<Scalar>> = (0..n).map(|i| field.unit_vec(n, i)).collect();
    let mut out = Vec::new();
    while !rest.is_empty() {
        let v = anisotropic_in(q, &rest)
            .ok_or_else(|| Error::InvalidForm("degenerate restriction".into()))?;
        let qv = q.eval(&v);
        let denom = (&two * &qv).inv()?;
        let mut ech = Echelon::new(field, n);
        ech.insert(&v);
        let mut next = Vec::new();
        for w in &rest {
            let mut p = w.clone();
            axpy(&mut p, &-(q.bilinear(w, &v) * &denom), &v);
            if !is_zero_vec(&p) && ech.insert(&p) {
                next.push(p);
            }
        }
        out.push((v, qv));
        rest = next;
    }
    Ok(out)
}

/// An anisotropic vector in the span of `basis`: a basis vector or the sum
/// of two with nonzero pairing.
fn anisotropic_in(q: &QuadForm, basis: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
    if let Some(v) = basis.iter().find(|v| !q.eval(v).is_zero()) {
        return Some(v.clone());
    }
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            let s: Vec<Scalar> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if !q.eval(&s).is_zero() {
                return Some(s);
            }
        }
    }
    None
}

/// The first anisotropic vector among basis vectors and `e_i ± e_j`.
pub fn find_anisotropic(q: &QuadForm) -> Option<Vec<Scalar>> {
    let field = q.field();
    let n = q.dim();
    let basis: Vec<Vec<Scalar>> = (0..n).map(|i| field.unit_vec(n, i)).collect();
    anisotropic_in(q, &basis)
}

/// A vector with `q(x) = c`, searched per [`SearchConfig`].
pub fn find_vector_with_value(q: &QuadForm, c: &Scalar, cfg: &SearchConfig) -> Result<Option<Vec<Scalar>>> {
    search::represent(q, c, cfg)
}

/// A nonzero isotropic vector, if the search finds one.
pub fn isotropic_vector(q: &QuadForm, cfg: &SearchConfig) -> Result<Option<Vec<Scalar>>> {
    search::isotropic_vector(q, cfg)
}

/// Whether the similitude `g` of `q` is proper, i.e. `C₀(g)` fixes the
/// primitive central idempotents.
pub fn proper_test(q: &QuadForm, g: &Matrix) -> Result<bool> {
    crate::clifford::proper_test(q, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_field() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn polar_matrices() {
        let f = q_field();
        let h = QuadForm::hyperbolic(f, 1);
        assert_eq!(h.polar(), &Matrix::from_ints(f, &[&[0, 1], &[1, 0]]));
        let sq = QuadForm::diagonal(f, &[f.one()]).unwrap();
        assert_eq!(sq.polar(), &Matrix::from_ints(f, &[&[2]]));
        let f2 = FieldSpec::Prime(2);
        let a = QuadForm::from_entries(f2, 2, &[(0, 0, f2.one()), (0, 1, f2.one()), (1, 1, f2.one())])
            .unwrap();
        assert_eq!(a.polar(), &Matrix::from_ints(f2, &[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn odd_dimension_rejected_in_char_two() {
        let f2 = FieldSpec::Prime(2);
        assert!(matches!(
            QuadForm::diagonal(f2, &[f2.one()]),
            Err(Error::InvalidForm(_))
        ));
    }

    #[test]
    fn semitrace_on_rank_one_tensors() {
        let f = FieldSpec::Prime(5);
        let q = QuadForm::from_entries(f, 2, &[(0, 0, f.int(2)), (0, 1, f.int(1)), (1, 1, f.int(3))])
            .unwrap();
        assert!(q.sigma(&Matrix::identity(f, 2)).is_identity());
        for i in 0..2 {
            let e = f.unit_vec(2, i);
            let s = q.tensor(&e, &e);
            assert_eq!(q.semitrace(&s).unwrap(), q.upper().get(i, i).clone());
        }
        let a = Matrix::from_ints(f, &[&[1, 2], &[0, 4]]);
        assert_eq!(q.semitrace(&a), Err(Error::NotSymmetric));
    }

    #[test]
    fn similitude_multipliers() {
        let f = q_field();
        let h = QuadForm::hyperbolic(f, 1);
        assert_eq!(similitude_check(&h, &h, &Matrix::identity(f, 2)), Some(f.one()));
        let nu = f.int(3);
        assert_eq!(
            similitude_check(&h, &h, &Matrix::scalar(f, 2, &nu)),
            Some(f.int(9))
        );
        let d = Matrix::from_ints(f, &[&[2, 0], &[0, 1]]);
        assert_eq!(similitude_check(&h, &h, &d), Some(f.int(2)));
        let bad = Matrix::from_ints(f, &[&[1, 1], &[0, 1]]);
        assert_eq!(similitude_check(&h, &h, &bad), None);
    }

    #[test]
    fn rho_on_hyperbolic_plane_over_f3() {
        let f = FieldSpec::Prime(3);
        let h = QuadForm::hyperbolic(f, 1);
        let u = vec![f.one(), f.one()];
        let r = h.rho(&u).unwrap();
        assert_eq!(r, Matrix::from_ints(f, &[&[0, 1], &[1, 0]]));
        assert_eq!(r.mul_vec(&u), u);
        assert!(r.mul(&r).is_identity());
        assert_eq!(h.rho(&[f.one(), f.zero()]), Err(Error::IsotropicVector));
    }

    #[test]
    fn rho_negates_orthogonal_vectors() {
        let f = q_field();
        let q = QuadForm::diagonal(f, &[f.int(1), f.int(2), f.int(-3)]).unwrap();
        let r = q.rho(&f.unit_vec(3, 0)).unwrap();
        let x = f.unit_vec(3, 2);
        assert_eq!(r.mul_vec(&x), vec![f.zero(), f.zero(), -f.one()]);
    }

    #[test]
    fn factorization_of_small_cases() {
        let f = FieldSpec::Prime(3);
        let q = QuadForm::hyperbolic(f, 2);
        assert!(factor_into_reflections(&q, &Matrix::identity(f, 4))
            .unwrap()
            .is_empty());
        let u = vec![f.int(1), f.int(1), f.int(0), f.int(0)];
        let v = vec![f.int(0), f.int(1), f.int(1), f.int(1)];
        let g = q.reflection(&u).unwrap().mul(&q.reflection(&v).unwrap());
        let fs = factor_into_reflections(&q, &g).unwrap();
        assert_eq!(fs.len() % 2, 0);
        let single = q.reflection(&u).unwrap();
        assert!(factor_into_reflections(&q, &single).is_err());
        assert_eq!(reflection_factors(&q, &single).unwrap().len() % 2, 1);
    }

    #[test]
    fn factorization_of_random_products() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for f in FieldSpec::defaults() {
            for m in [3, 4] {
                let q = QuadForm::hyperbolic(f, m);
                let n = 2 * m;
                for _ in 0..50 {
                    let k = rng.gen_range(1..=n);
                    let mut g = Matrix::identity(f, n);
                    let mut done = 0;
                    while done < k {
                        let v: Vec<Scalar> = (0..n).map(|_| f.random(&mut rng, 2)).collect();
                        if !q.eval(&v).is_zero() {
                            g = g.mul(&q.reflection(&v).unwrap());
                            done += 1;
                        }
                    }
                    let fs = reflection_factors(&q, &g).unwrap_or_else(|e| panic!("{f} n={n}: {e}"));
                    assert_eq!(fs.len() % 2, k % 2, "{f} n={n}");
                }
            }
        }
    }

    #[test]
    fn witt_examples() {
        let f = q_field();
        let h = QuadForm::hyperbolic(f, 1);
        let w = witt_decompose(&h).unwrap();
        assert_eq!(w.pairs.len(), 1);
        assert!(w.anisotropic.is_empty());

        let f5 = FieldSpec::Prime(5);
        let s = QuadForm::diagonal(f5, &[f5.one(), f5.one()]).unwrap();
        let w = witt_decompose(&s).unwrap();
        assert_eq!(w.pairs.len(), 1);
        let (e, ep) = &w.pairs[0];
        assert!(s.eval(e).is_zero() && s.eval(ep).is_zero());
        assert!(s.bilinear(e, ep).is_one());

        let s = QuadForm::diagonal(f, &[f.one(), f.one()]).unwrap();
        let w = witt_decompose(&s).unwrap();
        assert!(w.pairs.is_empty());
        assert_eq!(w.anisotropic.len(), 2);
    }
}
