// SPDX-License-Identifier: Apache-2.0
//! Clifford algebras `C(V,q)` of nondegenerate forms, their even parts,
//! the canonical involution, the center of `C₀`, and the extended
//! Clifford group.
//!
//! Elements are dense coefficient vectors over the monomial basis
//! `e_S = e_{s₁}⋯e_{s_k}` (`s₁ < ⋯ < s_k`), indexed by the bitmask of `S`.
//! The full multiplication table on monomials is computed once per
//! algebra from the relations `e_i² = q(e_i)` and
//! `e_ie_j + e_je_i = b(e_i,e_j)`.

pub(crate) mod lie;
mod rep;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactfield::{is_zero_vec, lex_cmp, FieldSpec, Matrix, Scalar};
use crate::quadform::{search::solve_quadratic, similitude_check, QuadForm};
use crate::{linear_solve, Solution};

pub use lie::{
    chi0_dot, chi_dot, ell_element, gamma_basis, mu_dot, go_basis, go_multiplier, lie_ledger, lift_generation_check, o_basis,
    omega_lie, spin_basis, trp, CharTwoChecks, LieLedger, LiftSpan, OmegaLie, PgoBasis,
};
pub use rep::{build_rep, CliffordRep, Parity, Semitrace};

/// Largest supported dimension; the monomial table has `4^n` entries.
pub const MAX_DIM: usize = 8;

type Terms = Vec<(u32, Scalar)>;

/// The center `Z = F·1 ⊕ F·w` of `C₀(V,q)` for even `n`, with
/// `w² = α + βw`.
#[derive(Clone, Debug)]
pub struct Center {
    pub w: CliffordElem,
    pub alpha: Scalar,
    pub beta: Scalar,
    /// Primitive idempotents `(z₊, z₋)` when `Z ≅ F × F`.
    pub idempotents: Option<(CliffordElem, CliffordElem)>,
}

impl Center {
    /// Coordinates `(a, b)` of `z = a + b·w`, or `None` if `z ∉ Z`.
    pub fn coords(&self, z: &CliffordElem) -> Option<(Scalar, Scalar)> {
        let lead = self.w.leading_mask()?;
        let b = z.get(lead).clone();
        let a = z.get(0).clone();
        let rebuilt = z.alg.scalar(&a).add(&self.w.scale(&b));
        (rebuilt == *z).then_some((a, b))
    }

    pub fn contains(&self, z: &CliffordElem) -> bool {
        self.coords(z).is_some()
    }

    /// The nontrivial automorphism `ι` of `Z`: `w ↦ β − w`.
    pub fn iota(&self, z: &CliffordElem) -> Option<CliffordElem> {
        let (a, b) = self.coords(z)?;
        let alg = &z.alg;
        Some(alg.scalar(&(&a + &(&b * &self.beta))).sub(&self.w.scale(&b)))
    }

    /// `Tr_{Z/F}(a + bw) = 2a + bβ`.
    pub fn trace(&self, z: &CliffordElem) -> Option<Scalar> {
        let (a, b) = self.coords(z)?;
        let f = a.field();
        Some(f.int(2) * &a + &b * &self.beta)
    }

    /// `N_{Z/F}(z) = z·ι(z)`.
    pub fn norm(&self, z: &CliffordElem) -> Option<Scalar> {
        let p = z.mul(&self.iota(z)?);
        p.scalar_value()
    }

    /// `Z⁰ = ker(Tr_{Z/F})`, a line in `Z`.
    pub fn trace_zero(&self) -> CliffordElem {
        let alg = &self.w.alg;
        let f = alg.field();
        if self.beta.is_zero() && f.is_char2() {
            return alg.one();
        }
        // (β, −2) spans the kernel of (c₁, c₂) ↦ 2c₁ + βc₂ in every other case.
        alg.scalar(&self.beta).sub(&self.w.scale(&f.int(2)))
    }

    pub fn basis(&self) -> [CliffordElem; 2] {
        [self.w.alg.one(), self.w.clone()]
    }
}

/// `C(V,q)` with its precomputed monomial multiplication table.
pub struct CliffordAlgebra {
    form: QuadForm,
    n: usize,
    table: Vec<Terms>,
    tau: Vec<Terms>,
    center: OnceLock<std::result::Result<Center, Error>>,
}

impl fmt::Debug for CliffordAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CliffordAlgebra").field("form", &self.form).finish()
    }
}

fn accumulate(acc: &mut BTreeMap<u32, Scalar>, mask: u32, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&mask) {
        Some(v) => {
            *v += &c;
            if v.is_zero() {
                acc.remove(&mask);
            }
        }
        None => {
            acc.insert(mask, c);
        }
    }
}

impl CliffordAlgebra {
    pub fn new(form: &QuadForm) -> Result<Arc<Self>> {
        let n = form.dim();
        if n > MAX_DIM {
            return Err(Error::DimensionMismatch(format!(
                "Clifford algebras are supported up to dimension {MAX_DIM}, got {n}"
            )));
        }
        let size = 1usize << n;
        let field = form.field();
        let upper = form.upper();
        // gens[s * n + j] = e_S · e_j
        let mut gens: Vec<Terms> = vec![Vec::new(); size * n];
        for s in 0..size as u32 {
            for j in 0..n {
                let terms = if s == 0 || (31 - s.leading_zeros()) < j as u32 {
                    vec![(s | 1 << j, field.one())]
                } else {
                    let m = (31 - s.leading_zeros()) as usize;
                    let rest = s ^ (1 << m);
                    if m == j {
                        vec![(rest, upper.get(j, j).clone())]
                    } else {
                        let mut acc = BTreeMap::new();
                        accumulate(&mut acc, rest, upper.get(j, m).clone());
                        for (t, c) in &gens[rest as usize * n + j] {
                            accumulate(&mut acc, t | 1 << m, -c);
                        }
                        acc.into_iter().collect()
                    }
                };
                gens[s as usize * n + j] = terms;
            }
        }
        // table[s * size + t] = e_S · e_T, built as (e_S · e_{T∖max}) · e_max.
        let mut table: Vec<Terms> = vec![Vec::new(); size * size];
        for s in 0..size {
            table[s * size] = vec![(s as u32, field.one())];
            for t in 1..size as u32 {
                let m = (31 - t.leading_zeros()) as usize;
                let prev = (t ^ (1 << m)) as usize;
                let mut acc = BTreeMap::new();
                for (r, c) in &table[s * size + prev] {
                    for (u, d) in &gens[*r as usize * n + m] {
                        accumulate(&mut acc, *u, c * d);
                    }
                }
                table[s * size + t as usize] = acc.into_iter().collect();
            }
        }
        // τ(e_S) = e_max · τ(e_{S∖max}).
        let mut tau: Vec<Terms> = vec![Vec::new(); size];
        tau[0] = vec![(0, field.one())];
        for s in 1..size as u32 {
            let m = (31 - s.leading_zeros()) as usize;
            let prev = (s ^ (1 << m)) as usize;
            let mut acc = BTreeMap::new();
            for (r, c) in &tau[prev] {
                for (u, d) in &table[(1usize << m) * size + *r as usize] {
                    accumulate(&mut acc, *u, c * d);
                }
            }
            tau[s as usize] = acc.into_iter().collect();
        }
        Ok(Arc::new(CliffordAlgebra {
            form: form.clone(),
            n,
            table,
            tau,
            center: OnceLock::new(),
        }))
    }

    pub fn form(&self) -> &QuadForm {
        &self.form
    }

    pub fn field(&self) -> FieldSpec {
        self.form.field()
    }

    /// Dimension `n` of the underlying space.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `2^n`.
    pub fn size(&self) -> usize {
        1 << self.n
    }

    /// Bitmasks of the even monomials in increasing order.
    pub fn even_masks(&self) -> Vec<u32> {
        (0..self.size() as u32).filter(|m| m.count_ones() % 2 == 0).collect()
    }

    pub fn zero(self: &Arc<Self>) -> CliffordElem {
        CliffordElem {
            alg: self.clone(),
            coeffs: self.field().vec_zero(self.size()),
        }
    }

    pub fn one(self: &Arc<Self>) -> CliffordElem {
        self.scalar(&self.field().one())
    }

    pub fn scalar(self: &Arc<Self>, c: &Scalar) -> CliffordElem {
        let mut z = self.zero();
        z.coeffs[0] = c.clone();
        z
    }

    pub fn monomial(self: &Arc<Self>, mask: u32) -> CliffordElem {
        let mut z = self.zero();
        z.coeffs[mask as usize] = self.field().one();
        z
    }

    /// The generator `e_i` (0-based).
    pub fn gen(self: &Arc<Self>, i: usize) -> CliffordElem {
        self.monomial(1 << i)
    }

    /// The vector `Σ v_i e_i`.
    pub fn vector(self: &Arc<Self>, v: &[Scalar]) -> CliffordElem {
        assert_eq!(v.len(), self.n, "vector length");
        let mut z = self.zero();
        for (i, c) in v.iter().enumerate() {
            z.coeffs[1 << i] = c.clone();
        }
        z
    }

    /// Product `v₁ ⋯ v_k` of vectors.
    pub fn vector_product(self: &Arc<Self>, vs: &[Vec<Scalar>]) -> CliffordElem {
        vs.iter().fold(self.one(), |acc, v| acc.mul(&self.vector(v)))
    }

    pub fn from_coeffs(self: &Arc<Self>, coeffs: Vec<Scalar>) -> Result<CliffordElem> {
        if coeffs.len() != self.size() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coefficients, got {}",
                self.size(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| c.field() != self.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(CliffordElem {
            alg: self.clone(),
            coeffs,
        })
    }

    /// Embeds coordinates over [`CliffordAlgebra::even_masks`].
    pub fn from_even_coords(self: &Arc<Self>, v: &[Scalar]) -> CliffordElem {
        let mut z = self.zero();
        for (m, c) in self.even_masks().into_iter().zip(v) {
            z.coeffs[m as usize] = c.clone();
        }
        z
    }

    /// The center of `C₀` (n even), computed once.
    pub fn center(self: &Arc<Self>) -> Result<&Center> {
        self.center
            .get_or_init(|| compute_center(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// The polarization `(z₊, z₋)`.
    pub fn polarization(self: &Arc<Self>) -> Result<(CliffordElem, CliffordElem)> {
        self.center()?.idempotents.clone().ok_or(Error::NontrivialDiscriminant)
    }

    fn same(&self, o: &CliffordAlgebra) -> bool {
        std::ptr::eq(self, o) || self.form == o.form
    }
}

/// An element of `C(V,q)`.
#[derive(Clone)]
pub struct CliffordElem {
    alg: Arc<CliffordAlgebra>,
    coeffs: Vec<Scalar>,
}

impl PartialEq for CliffordElem {
    fn eq(&self, o: &Self) -> bool {
        self.alg.same(&o.alg) && self.coeffs == o.coeffs
    }
}

impl Eq for CliffordElem {}

impl fmt::Debug for CliffordElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CliffordElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m == 0 {
                write!(f, "{c}")?;
            } else {
                let idx: Vec<String> = (0..self.alg.n)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| format!("e{}", i + 1))
                    .collect();
                write!(f, "({c}){}", idx.join(""))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl CliffordElem {
    pub fn algebra(&self) -> &Arc<CliffordAlgebra> {
        &self.alg
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn get(&self, mask: u32) -> &Scalar {
        &self.coeffs[mask as usize]
    }

    /// Nonzero `(mask, coefficient)` pairs in mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m as u32, c))
    }

    /// Coordinates over [`CliffordAlgebra::even_masks`].
    pub fn even_coords(&self) -> Vec<Scalar> {
        self.alg
            .even_masks()
            .into_iter()
            .map(|m| self.coeffs[m as usize].clone())
            .collect()
    }

    fn leading_mask(&self) -> Option<u32> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|m| m as u32)
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coeffs)
    }

    pub fn is_even(&self) -> bool {
        self.terms().all(|(m, _)| m.count_ones() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.terms().all(|(m, _)| m.count_ones() % 2 == 1)
    }

    pub fn scalar_value(&self) -> Option<Scalar> {
        self.terms().all(|(m, _)| m == 0).then(|| self.coeffs[0].clone())
    }

    /// Coordinates of `x` if `x ∈ V`.
    pub fn vector_value(&self) -> Option<Vec<Scalar>> {
        if !self.terms().all(|(m, _)| m.count_ones() == 1) {
            return None;
        }
        Some((0..self.alg.n).map(|i| self.coeffs[1 << i].clone()).collect())
    }

    /// The component of degree `k`.
    pub fn grade(&self, k: u32) -> CliffordElem {
        let mut z = self.alg.zero();
        for (m, c) in self.terms() {
            if m.count_ones() == k {
                z.coeffs[m as usize] = c.clone();
            }
        }
        z
    }

    pub fn add(&self, o: &Self) -> Self {
        self.checked_add(o).expect("Clifford algebras differ")
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        Ok(CliffordElem {
            alg: self.alg.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        CliffordElem {
            alg: self.alg.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        CliffordElem {
            alg: self.alg.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self.alg.same(&o.alg) {
            Ok(())
        } else {
            Err(Error::FormMismatch)
        }
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let size = self.alg.size();
        let mut out = self.alg.field().vec_zero(size);
        for (s, a) in self.terms() {
            for (t, b) in o.terms() {
                let ab = a * b;
                for (m, c) in &self.alg.table[s as usize * size + t as usize] {
                    out[*m as usize] += &(&ab * c);
                }
            }
        }
        Ok(CliffordElem {
            alg: self.alg.clone(),
            coeffs: out,
        })
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("Clifford algebras differ")
    }

    /// `xy − yx`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// The canonical involution, reversing every monomial.
    pub fn tau(&self) -> Self {
        let mut out = self.alg.field().vec_zero(self.alg.size());
        for (s, a) in self.terms() {
            for (m, c) in &self.alg.tau[s as usize] {
                out[*m as usize] += &(a * c);
            }
        }
        CliffordElem {
            alg: self.alg.clone(),
            coeffs: out,
        }
    }

    /// Canonical tie-break order on coefficient vectors.
    pub fn canonical_cmp(&self, o: &Self) -> Ordering {
        lex_cmp(&self.coeffs, &o.coeffs)
    }

    /// Inverse within `C₀` (for even `self`) or within `C`.
    pub fn inverse(&self) -> Option<Self> {
        let alg = &self.alg;
        let masks: Vec<u32> = if self.is_even() {
            alg.even_masks()
        } else {
            (0..alg.size() as u32).collect()
        };
        let cols: Vec<Vec<Scalar>> = masks
            .iter()
            .map(|&m| {
                let p = self.mul(&alg.monomial(m));
                masks.iter().map(|&r| p.coeffs[r as usize].clone()).collect()
            })
            .collect();
        let a = Matrix::from_cols(alg.field(), masks.len(), &cols).ok()?;
        let mut rhs = alg.field().vec_zero(masks.len());
        rhs[0] = alg.field().one();
        match linear_solve(&a, &rhs).ok()? {
            Solution::Solutions { particular, kernel } if kernel.is_empty() => {
                let mut z = alg.zero();
                for (m, c) in masks.iter().zip(particular) {
                    z.coeffs[*m as usize] = c;
                }
                Some(z)
            }
            _ => None,
        }
    }
}

/// Kernel of the stacked maps `ξ ↦ [ξ, e_ie_j]` on `C₀`.
fn even_centralizer(alg: &Arc<CliffordAlgebra>, gens: &[CliffordElem]) -> Vec<CliffordElem> {
    let masks = alg.even_masks();
    let d = masks.len();
    let field = alg.field();
    let size = alg.size();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in gens {
        let images: Vec<CliffordElem> = masks.iter().map(|&m| alg.monomial(m).commutator(g)).collect();
        for r in 0..size {
            let row: Vec<Scalar> = images.iter().map(|im| im.coeffs[r].clone()).collect();
            if !is_zero_vec(&row) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return (0..d).map(|k| alg.from_even_coords(&field.unit_vec(d, k))).collect();
    }
    let a = Matrix::from_rows(field, d, &rows).expect("rows have length d");
    a.kernel().iter().map(|v| alg.from_even_coords(v)).collect()
}

/// The bivectors `e_ie_j` (`i < j`), which generate `C₀`.
pub fn bivectors(alg: &Arc<CliffordAlgebra>) -> Vec<CliffordElem> {
    let n = alg.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(alg.monomial(1 << i | 1 << j));
        }
    }
    out
}

fn compute_center(alg: &Arc<CliffordAlgebra>) -> Result<Center> {
    let n = alg.n();
    if n == 0 || n % 2 == 1 {
        return Err(Error::DimensionMismatch(format!(
            "center of C₀ needs an even positive dimension, got {n}"
        )));
    }
    let field = alg.field();
    let basis = even_centralizer(alg, &bivectors(alg));
    if basis.len() != 2 {
        return Err(Error::RankDeficient(format!(
            "center of C₀ has dimension {}",
            basis.len()
        )));
    }
    let one = alg.one();
    let mut w = basis
        .into_iter()
        .map(|b| b.sub(&one.scale(b.get(0))))
        .find(|b| !b.is_zero())
        .ok_or_else(|| Error::RankDeficient("center spanned by scalars".into()))?;
    let lead = w.leading_mask().expect("nonzero");
    let inv = w.get(lead).inv()?;
    w = w.scale(&inv);
    let w2 = w.mul(&w);
    let beta = w2.get(lead).clone();
    let alpha = w2.get(0).clone();
    if w2 != alg.scalar(&alpha).add(&w.scale(&beta)) {
        return Err(Error::Inconsistent("w² is not in span{1, w}".into()));
    }
    // Roots of t² − βt − α give the idempotents (w − r₂)/(r₁ − r₂).
    let idempotents = solve_quadratic(&field.one(), &-&beta, &-&alpha).and_then(|r1| {
        let r2 = &beta - &r1;
        let d = &r1 - &r2;
        let dinv = d.inv().ok()?;
        let za = w.sub(&alg.scalar(&r2)).scale(&dinv);
        let zb = one.sub(&za);
        Some(if za.canonical_cmp(&zb) == Ordering::Greater {
            (zb, za)
        } else {
            (za, zb)
        })
    });
    Ok(Center {
        w,
        alpha,
        beta,
        idempotents,
    })
}

/// The primitive central idempotents `(z₊, z₋)` of `C₀(V,q)`.
pub fn center_even(alg: &Arc<CliffordAlgebra>) -> Result<(CliffordElem, CliffordElem)> {
    alg.polarization()
}

/// An element of the extended Clifford group `Ω(q)` with its multiplier
/// `μ̲(ξ) = τ₀(ξ)ξ ∈ Z` and `χ₀(ξ) ∈ GO⁺(q)`.
#[derive(Clone, Debug)]
pub struct OmegaElem {
    pub xi: CliffordElem,
    pub mu: CliffordElem,
    pub chi0: Matrix,
}

/// Expresses the linear map `e_k ↦ f(e_k)` as a matrix if every image is a vector.
fn vector_map(
    alg: &Arc<CliffordAlgebra>,
    mut f: impl FnMut(&CliffordElem) -> CliffordElem,
) -> Option<Matrix> {
    let n = alg.n();
    let cols: Option<Vec<Vec<Scalar>>> = (0..n).map(|k| f(&alg.gen(k)).vector_value()).collect();
    Matrix::from_cols(alg.field(), n, &cols?).ok()
}

/// Tests `ξ ∈ Ω(q)`, returning the element with cached `μ̲(ξ)` and `χ₀(ξ)`.
///
/// `χ₀(ξ)` is computed as `x ↦ ι(μ̲(ξ))ξxξ⁻¹` and cross-checked against
/// `σ_b(χ₀(ξ))(x) = τ₀(ξ)xξ` and the multiplier `N_{Z/F}(μ̲(ξ))`.
pub fn omega_membership(xi: &CliffordElem) -> Result<Option<OmegaElem>> {
    let alg = xi.algebra();
    if !xi.is_even() {
        return Ok(None);
    }
    let center = alg.center()?;
    let Some(inv) = xi.inverse() else {
        return Ok(None);
    };
    let txi = xi.tau();
    let mu = txi.mul(xi);
    let Some(imu) = center.iota(&mu) else {
        return Ok(None);
    };
    let Some(u) = vector_map(alg, |y| imu.mul(xi).mul(y).mul(&inv)) else {
        return Ok(None);
    };
    let q = alg.form();
    let dual = vector_map(alg, |x| txi.mul(x).mul(xi))
        .ok_or_else(|| Error::Inconsistent("τ₀(ξ)Vξ ⊄ V while ξVξ⁻¹ = V".into()))?;
    if q.sigma(&u) != dual {
        return Err(Error::Inconsistent("the two descriptions of χ₀ disagree".into()));
    }
    let norm = center.norm(&mu).expect("μ̲ lies in Z");
    if similitude_check(q, q, &u) != Some(norm) {
        return Err(Error::Inconsistent("μ(χ₀(ξ)) differs from N(μ̲(ξ))".into()));
    }
    Ok(Some(OmegaElem {
        xi: xi.clone(),
        mu,
        chi0: u,
    }))
}

/// `ω ∈ Spin(q)` iff `μ̲(ξ) = 1`.
pub fn spin_membership(omega: &OmegaElem) -> bool {
    omega.mu.scalar_value().is_some_and(|c| c.is_one())
}

/// The vector representation `χ(ξ)(x) = ξxξ⁻¹` for `ξ ∈ Γ⁺(q)`.
pub fn chi(xi: &CliffordElem) -> Option<Matrix> {
    let inv = xi.inverse()?;
    vector_map(xi.algebra(), |x| xi.mul(x).mul(&inv))
}

/// `C₀(g)`: the algebra isomorphism `C₀(V,q) → C₀(Ṽ,q̃)` induced by a
/// similitude `g` with multiplier `μ`, `xy ↦ μ⁻¹g(x)g(y)`.
#[derive(Clone, Debug)]
pub struct EvenMap {
    source: Arc<CliffordAlgebra>,
    images: Vec<Option<CliffordElem>>,
    matrix: Matrix,
    multiplier: Scalar,
}

impl EvenMap {
    pub fn new(source: &Arc<CliffordAlgebra>, target: &Arc<CliffordAlgebra>, g: &Matrix) -> Result<Self> {
        let mu = similitude_check(source.form(), target.form(), g)
            .ok_or_else(|| Error::InvalidForm("map is not a similitude".into()))?;
        let mu_inv = mu.inv()?;
        let gv: Vec<CliffordElem> = g.col_vecs().iter().map(|c| target.vector(c)).collect();
        let mut images = vec![None; source.size()];
        for m in source.even_masks() {
            let mut acc = target.one();
            let mut k = 0;
            for (i, gi) in gv.iter().enumerate() {
                if m >> i & 1 == 1 {
                    acc = acc.mul(gi);
                    k += 1;
                }
            }
            images[m as usize] = Some(acc.scale(&mu_inv.pow(k / 2)));
        }
        Ok(EvenMap {
            source: source.clone(),
            images,
            matrix: g.clone(),
            multiplier: mu,
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn multiplier(&self) -> &Scalar {
        &self.multiplier
    }

    pub fn apply(&self, x: &CliffordElem) -> Result<CliffordElem> {
        if !x.alg.same(&self.source) {
            return Err(Error::FormMismatch);
        }
        if !x.is_even() {
            return Err(Error::BadParity);
        }
        let mut terms = x.terms();
        let Some((m, c)) = terms.next() else {
            let first = self.images[0].as_ref().expect("image of 1");
            return Ok(first.alg.zero());
        };
        let mut acc = self.images[m as usize].as_ref().expect("even").scale(c);
        for (m, c) in terms {
            acc = acc.add(&self.images[m as usize].as_ref().expect("even").scale(c));
        }
        Ok(acc)
    }
}

/// Whether the similitude `g` of `q` is proper: `C₀(g)` fixes `Z`.
pub fn proper_test(q: &QuadForm, g: &Matrix) -> Result<bool> {
    let alg = CliffordAlgebra::new(q)?;
    proper_test_in(&alg, g)
}

pub fn proper_test_in(alg: &Arc<CliffordAlgebra>, g: &Matrix) -> Result<bool> {
    let center = alg.center()?;
    let map = EvenMap::new(alg, alg, g)?;
    let image = map.apply(&center.w)?;
    if image == center.w {
        return Ok(true);
    }
    if Some(image) == center.iota(&center.w) {
        return Ok(false);
    }
    Err(Error::Inconsistent("C₀(g) does not preserve the center".into()))
}
