// SPDX-License-Identifier: Apache-2.0
//! The Lie algebras `𝔬(q) ⊂ 𝔤𝔬(q)`, `𝔭𝔤𝔬(q)`, and inside `C₀(V,q)` the
//! Clifford Lie algebra `γ(q)`, `𝔰𝔭𝔦𝔫(q)` and the extended Clifford Lie
//! algebra `ω(q)` with `χ̇₀: ω(q) → 𝔤𝔬(q)`.
//!
//! `ω(q)` is obtained by linearizing the defining conditions of `Ω(q)`
//! at `1 + εη`: `τ₀(η) + η ∈ Z` and `τ₀(η)x + xη ∈ V` for `x ∈ V`. Then
//! `χ̇₀(η)(x) = ηx + xτ₀(η)`, and `σ_b(χ̇₀(η))(x) = τ₀(η)x + xη`.

use std::sync::Arc;

use super::{vector_map, CliffordAlgebra, CliffordElem};
use crate::error::{Error, Result};
use crate::exactfield::{is_zero_vec, Echelon, FieldSpec, Matrix, Scalar};
use crate::quadform::{witt_decompose, QuadForm};
use crate::{linear_solve, Solution};

fn vec_of(m: &Matrix) -> Vec<Scalar> {
    m.data().to_vec()
}

fn mat_of(field: FieldSpec, n: usize, v: &[Scalar]) -> Matrix {
    Matrix::from_vec(field, n, n, v.to_vec()).expect("n² entries")
}

/// Rows of the linear system in `(g, μ)` expressing `b(g(u),u) = μq(u)`:
/// `(gᵀB)_ii = μQ_ii` and `(gᵀB)_ij + (gᵀB)_ji = μB_ij` for `i < j`.
fn go_system(q: &QuadForm) -> Matrix {
    let n = q.dim();
    let field = q.field();
    let b = q.polar();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut row = field.vec_zero(n * n + 1);
            // (gᵀB)_ij = Σ_k g_ki B_kj; g_ki sits at index k*n + i.
            for k in 0..n {
                row[k * n + i] += b.get(k, j);
                if i != j {
                    row[k * n + j] += b.get(k, i);
                }
            }
            row[n * n] = -q.upper().get(i, j).clone();
            rows.push(row);
        }
    }
    Matrix::from_rows(field, n * n + 1, &rows).expect("row length")
}

/// `μ̇(g)` if `g ∈ 𝔤𝔬(q)`, i.e. `b(g(u),u) = μ̇(g)q(u)` for all `u`.
pub fn go_multiplier(q: &QuadForm, g: &Matrix) -> Option<Scalar> {
    let n = q.dim();
    if g.rows() != n || g.cols() != n {
        return None;
    }
    let sys = go_system(q);
    let gv = vec_of(g);
    let mut mu: Option<Scalar> = None;
    for r in 0..sys.rows() {
        let row = sys.row(r);
        let lhs: Scalar = row[..n * n]
            .iter()
            .zip(&gv)
            .fold(q.field().zero(), |acc, (a, x)| acc + a * x);
        let coeff = -row[n * n].clone();
        if coeff.is_zero() {
            if !lhs.is_zero() {
                return None;
            }
        } else {
            let m = lhs / coeff;
            match &mu {
                None => mu = Some(m),
                Some(prev) if *prev != m => return None,
                _ => {}
            }
        }
    }
    mu
}

/// Basis of `𝔤𝔬(q)` with the multipliers `μ̇`.
pub fn go_basis(q: &QuadForm) -> Vec<(Matrix, Scalar)> {
    let n = q.dim();
    go_system(q)
        .kernel()
        .into_iter()
        .map(|v| (mat_of(q.field(), n, &v[..n * n]), v[n * n].clone()))
        .collect()
}

/// Basis of `𝔬(q) = ker μ̇`.
pub fn o_basis(q: &QuadForm) -> Vec<Matrix> {
    let n = q.dim();
    let field = q.field();
    let mut sys = go_system(q);
    let mut extra = field.vec_zero(n * n + 1);
    extra[n * n] = field.one();
    sys = sys.vstack(&Matrix::from_rows(field, n * n + 1, &[extra]).expect("row")).expect("stack");
    sys.kernel().into_iter().map(|v| mat_of(field, n, &v[..n * n])).collect()
}

/// An element `ℓ ∈ 𝔤𝔬(q)` with `μ̇(ℓ) = 1`, so that `Trd(ℓs) = f_q(s)` on
/// `Sym(σ_b)`. It is unique modulo `𝔬(q) = Alt(σ_b)`.
pub fn ell_element(q: &QuadForm) -> Result<Matrix> {
    let n = q.dim();
    let sys = go_system(q);
    let a = sys.submatrix(0, sys.rows(), 0, n * n);
    let rhs: Vec<Scalar> = (0..sys.rows()).map(|r| -sys.get(r, n * n).clone()).collect();
    match linear_solve(&a, &rhs)? {
        Solution::Solutions { particular, .. } => Ok(mat_of(q.field(), n, &particular)),
        Solution::Inconsistent => Err(Error::Inconsistent("no ℓ with μ̇(ℓ) = 1".into())),
    }
}

/// Fixed coordinates on `𝔭𝔤𝔬(q) = 𝔤𝔬(q)/F`.
#[derive(Clone, Debug)]
pub struct PgoBasis {
    form: QuadForm,
    basis: Vec<Matrix>,
    ech: Echelon,
}

impl PgoBasis {
    pub fn new(q: &QuadForm) -> Self {
        let n = q.dim();
        let field = q.field();
        let mut ech = Echelon::new(field, n * n);
        ech.insert(&vec_of(&Matrix::identity(field, n)));
        let mut basis = Vec::new();
        for (g, _) in go_basis(q) {
            if ech.insert(&vec_of(&g)) {
                basis.push(g);
            }
        }
        PgoBasis {
            form: q.clone(),
            basis,
            ech,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn form(&self) -> &QuadForm {
        &self.form
    }

    /// Coordinates of `g + F`.
    pub fn coords(&self, g: &Matrix) -> Result<Vec<Scalar>> {
        if go_multiplier(&self.form, g).is_none() {
            return Err(Error::NotInGo);
        }
        let c = self
            .ech
            .coordinates(&vec_of(g))
            .ok_or_else(|| Error::Inconsistent("𝔤𝔬 element outside the computed basis".into()))?;
        Ok(c[1..].to_vec())
    }

    /// The representative `Σ cᵢ gᵢ`.
    pub fn element(&self, c: &[Scalar]) -> Matrix {
        let field = self.form.field();
        let n = self.form.dim();
        self.basis
            .iter()
            .zip(c)
            .fold(Matrix::zeros(field, n, n), |acc, (g, ci)| acc.add(&g.scale(ci)))
    }
}

/// Subspace of `C₀` spanned by even elements, in even coordinates.
fn even_echelon(alg: &Arc<CliffordAlgebra>, elems: &[CliffordElem]) -> Echelon {
    let mut ech = Echelon::new(alg.field(), alg.size() / 2);
    for x in elems {
        ech.insert(&x.even_coords());
    }
    ech
}

/// Basis of `γ(q) = span{e_ie_j}`.
pub fn gamma_basis(alg: &Arc<CliffordAlgebra>) -> Vec<CliffordElem> {
    let n = alg.n();
    let mut ech = Echelon::new(alg.field(), alg.size() / 2);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let x = alg.gen(i).mul(&alg.gen(j));
            if ech.insert(&x.even_coords()) {
                out.push(x);
            }
        }
    }
    out
}

/// `μ̲̇(ξ) = τ(ξ) + ξ`.
pub fn mu_dot(xi: &CliffordElem) -> CliffordElem {
    xi.tau().add(xi)
}

/// `χ̇(ξ)(x) = [ξ, x]` for `ξ ∈ γ(q)`.
pub fn chi_dot(xi: &CliffordElem) -> Option<Matrix> {
    vector_map(xi.algebra(), |x| xi.commutator(x))
}

/// Basis of `𝔰𝔭𝔦𝔫(q) = ker(μ̲̇: γ(q) → F)`.
pub fn spin_basis(alg: &Arc<CliffordAlgebra>) -> Result<Vec<CliffordElem>> {
    let gamma = gamma_basis(alg);
    let field = alg.field();
    let row: Vec<Scalar> = gamma
        .iter()
        .map(|x| {
            mu_dot(x)
                .scalar_value()
                .ok_or_else(|| Error::Inconsistent("μ̲̇ is not scalar on γ".into()))
        })
        .collect::<Result<_>>()?;
    let k = Matrix::from_rows(field, gamma.len(), &[row])?.kernel();
    Ok(k.iter().map(|c| combine(alg, &gamma, c)).collect())
}

fn combine(alg: &Arc<CliffordAlgebra>, elems: &[CliffordElem], c: &[Scalar]) -> CliffordElem {
    elems
        .iter()
        .zip(c)
        .filter(|(_, ci)| !ci.is_zero())
        .fold(alg.zero(), |acc, (x, ci)| acc.add(&x.scale(ci)))
}

/// `χ̇₀(η)` if `η ∈ ω(q)`, certified against the adjoint description.
pub fn chi0_dot(eta: &CliffordElem) -> Result<Option<Matrix>> {
    let alg = eta.algebra();
    if !eta.is_even() {
        return Ok(None);
    }
    let center = alg.center()?;
    let t = eta.tau();
    if !center.contains(&t.add(eta)) {
        return Ok(None);
    }
    let Some(dual) = vector_map(alg, |x| t.mul(x).add(&x.mul(eta))) else {
        return Ok(None);
    };
    let g = vector_map(alg, |x| eta.mul(x).add(&x.mul(&t)))
        .ok_or_else(|| Error::Inconsistent("ηx + xτ₀(η) leaves V".into()))?;
    if alg.form().sigma(&g) != dual {
        return Err(Error::Inconsistent("the two descriptions of χ̇₀ disagree".into()));
    }
    Ok(Some(g))
}

/// `ω(q)` with `χ̇₀` evaluated on its basis.
#[derive(Clone, Debug)]
pub struct OmegaLie {
    pub basis: Vec<CliffordElem>,
    pub chi0: Vec<Matrix>,
}

impl OmegaLie {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `ξ` in [`OmegaLie::basis`].
    pub fn coords(&self, xi: &CliffordElem) -> Option<Vec<Scalar>> {
        let alg = xi.algebra();
        even_echelon(alg, &self.basis).coordinates(&xi.even_coords())
    }
}

/// Solves the linearized conditions for `ω(q)` over `η ∈ C₀`.
pub fn omega_lie(alg: &Arc<CliffordAlgebra>) -> Result<OmegaLie> {
    let field = alg.field();
    let n = alg.n();
    let masks = alg.even_masks();
    let d = masks.len();
    let gens: Vec<CliffordElem> = (0..n).map(|k| alg.gen(k)).collect();
    let bivs = super::bivectors(alg);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut push_rows = |images: &[CliffordElem], keep: &dyn Fn(u32) -> bool| {
        for r in 0..alg.size() as u32 {
            if !keep(r) {
                continue;
            }
            let row: Vec<Scalar> = images.iter().map(|im| im.get(r).clone()).collect();
            if !is_zero_vec(&row) {
                rows.push(row);
            }
        }
    };
    let monos: Vec<CliffordElem> = masks.iter().map(|&m| alg.monomial(m)).collect();
    let taus: Vec<CliffordElem> = monos.iter().map(CliffordElem::tau).collect();
    for x in &gens {
        let images: Vec<CliffordElem> = monos
            .iter()
            .zip(&taus)
            .map(|(e, t)| t.mul(x).add(&x.mul(e)))
            .collect();
        push_rows(&images, &|r| r.count_ones() != 1);
    }
    let sym: Vec<CliffordElem> = monos.iter().zip(&taus).map(|(e, t)| t.add(e)).collect();
    for b in &bivs {
        let images: Vec<CliffordElem> = sym.iter().map(|s| s.commutator(b)).collect();
        push_rows(&images, &|_| true);
    }
    let kernel = if rows.is_empty() {
        (0..d).map(|k| field.unit_vec(d, k)).collect()
    } else {
        Matrix::from_rows(field, d, &rows)?.kernel()
    };
    let basis: Vec<CliffordElem> = kernel.iter().map(|v| alg.from_even_coords(v)).collect();
    let chi0 = basis
        .iter()
        .map(|eta| chi0_dot(eta)?.ok_or_else(|| Error::Inconsistent("kernel element outside ω".into())))
        .collect::<Result<_>>()?;
    Ok(OmegaLie { basis, chi0 })
}

/// The pfaffian trace `Trp(a − σ(a)) = Trd(a)` on `𝔬(q)`, characteristic 2.
pub fn trp(q: &QuadForm, g: &Matrix) -> Result<Scalar> {
    let field = q.field();
    if !field.is_char2() {
        return Err(Error::InvalidForm("the pfaffian trace is defined in characteristic 2".into()));
    }
    let n = q.dim();
    let cols: Vec<Vec<Scalar>> = (0..n * n)
        .map(|k| {
            let e = mat_of(field, n, &field.unit_vec(n * n, k));
            vec_of(&e.sub(&q.sigma(&e)))
        })
        .collect();
    let a = Matrix::from_cols(field, n * n, &cols)?;
    match linear_solve(&a, &vec_of(g))? {
        Solution::Solutions { particular, .. } => Ok(mat_of(field, n, &particular).trace()),
        Solution::Inconsistent => Err(Error::NotInGo),
    }
}

/// Exactness checks specific to characteristic 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharTwoChecks {
    /// `Z ⊂ 𝔰𝔭𝔦𝔫(q)`.
    pub center_in_spin: bool,
    /// `0 → Z → 𝔰𝔭𝔦𝔫 → 𝔭𝔤𝔬 → Z → 0` via `χ̇′` and `Ṡ`.
    pub spin_pgo_sequence: bool,
    /// `Trp` vanishes on brackets of `𝔬(q)`.
    pub trp_lie_hom: bool,
    /// Rows and columns of the `𝔰𝔭𝔦𝔫 ⊂ γ`, `𝔰𝔬 ⊂ 𝔬` diagram are exact.
    pub diagram_exact: bool,
    /// `Trp ∘ χ̇ = μ̲̇` on `γ(q)`.
    pub diagram_commutes: bool,
}

/// Dimension and exactness ledger for the Lie algebras of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieLedger {
    pub dim_o: usize,
    pub dim_go: usize,
    pub dim_pgo: usize,
    pub dim_gamma: usize,
    pub dim_spin: usize,
    pub dim_omega: usize,
    /// `[γ, γ] ⊂ γ`.
    pub gamma_closed: bool,
    /// `ker χ̇ = F` on `γ`.
    pub ker_chi_is_scalars: bool,
    /// `ker χ̇₀ = Z⁰`.
    pub ker_chi0_is_trace_zero: bool,
    /// `χ̇₀(ω) = 𝔤𝔬(q)`.
    pub chi0_onto_go: bool,
    /// `μ̇(χ̇₀(ξ)) = Tr(μ̲̇(ξ))` and `χ̇₀(z) = Tr(z)` on the bases.
    pub multiplier_compatible: bool,
    /// `ω = γ + Z`, checked when the characteristic is not 2.
    pub omega_is_gamma_plus_center: Option<bool>,
    pub char2: Option<CharTwoChecks>,
}

fn kernel_elems(alg: &Arc<CliffordAlgebra>, elems: &[CliffordElem], images: &[Vec<Scalar>]) -> Result<Vec<CliffordElem>> {
    if elems.is_empty() {
        return Ok(Vec::new());
    }
    let rows = images[0].len();
    let m = Matrix::from_cols(alg.field(), rows, images)?;
    Ok(m.kernel().iter().map(|c| combine(alg, elems, c)).collect())
}

fn same_span(alg: &Arc<CliffordAlgebra>, a: &[CliffordElem], b: &[CliffordElem]) -> bool {
    let ea = even_echelon(alg, a);
    let eb = even_echelon(alg, b);
    ea.rank() == eb.rank() && b.iter().all(|x| ea.contains(&x.even_coords()))
}

fn rank_of(field: FieldSpec, vecs: &[Vec<Scalar>]) -> usize {
    let Some(first) = vecs.first() else {
        return 0;
    };
    let mut e = Echelon::new(field, first.len());
    for v in vecs {
        e.insert(v);
    }
    e.rank()
}

pub fn lie_ledger(alg: &Arc<CliffordAlgebra>) -> Result<LieLedger> {
    let q = alg.form();
    let field = alg.field();
    let n = q.dim();
    let center = alg.center()?.clone();
    let o = o_basis(q);
    let go = go_basis(q);
    let pgo = PgoBasis::new(q);
    let gamma = gamma_basis(alg);
    let spin = spin_basis(alg)?;
    let omega = omega_lie(alg)?;

    let gamma_ech = even_echelon(alg, &gamma);
    let gamma_closed = gamma.iter().enumerate().all(|(i, a)| {
        gamma[i + 1..]
            .iter()
            .all(|b| gamma_ech.contains(&a.commutator(b).even_coords()))
    });

    let chi_imgs: Vec<Matrix> = gamma
        .iter()
        .map(|x| chi_dot(x).ok_or_else(|| Error::Inconsistent("[γ, V] ⊄ V".into())))
        .collect::<Result<_>>()?;
    let chi_vecs: Vec<Vec<Scalar>> = chi_imgs.iter().map(vec_of).collect();
    let ker_chi = kernel_elems(alg, &gamma, &chi_vecs)?;
    let ker_chi_is_scalars = same_span(alg, &ker_chi, &[alg.one()]);

    let chi0_vecs: Vec<Vec<Scalar>> = omega.chi0.iter().map(vec_of).collect();
    let ker_chi0 = kernel_elems(alg, &omega.basis, &chi0_vecs)?;
    let ker_chi0_is_trace_zero = same_span(alg, &ker_chi0, &[center.trace_zero()]);
    let chi0_onto_go =
        rank_of(field, &chi0_vecs) == go.len() && omega.chi0.iter().all(|g| go_multiplier(q, g).is_some());

    let mut multiplier_compatible = omega.basis.iter().zip(&omega.chi0).all(|(xi, g)| {
        let tr = center.trace(&mu_dot(xi));
        tr.is_some() && go_multiplier(q, g) == tr
    });
    for z in center.basis() {
        let g = chi0_dot(&z)?;
        let tr = center.trace(&z).expect("z ∈ Z");
        multiplier_compatible &= g == Some(Matrix::scalar(field, n, &tr));
    }

    let omega_is_gamma_plus_center = (!field.is_char2()).then(|| {
        let mut sum = gamma.clone();
        sum.extend(center.basis());
        same_span(alg, &omega.basis, &sum)
    });

    let char2 = if field.is_char2() {
        Some(char_two_checks(alg, &center, &o, &pgo, &gamma, &chi_imgs, &spin, &omega)?)
    } else {
        None
    };

    Ok(LieLedger {
        dim_o: o.len(),
        dim_go: go.len(),
        dim_pgo: pgo.dim(),
        dim_gamma: gamma.len(),
        dim_spin: spin.len(),
        dim_omega: omega.dim(),
        gamma_closed,
        ker_chi_is_scalars,
        ker_chi0_is_trace_zero,
        chi0_onto_go,
        multiplier_compatible,
        omega_is_gamma_plus_center,
        char2,
    })
}

#[allow(clippy::too_many_arguments)]
fn char_two_checks(
    alg: &Arc<CliffordAlgebra>,
    center: &super::Center,
    o: &[Matrix],
    pgo: &PgoBasis,
    gamma: &[CliffordElem],
    chi_imgs: &[Matrix],
    spin: &[CliffordElem],
    omega: &OmegaLie,
) -> Result<CharTwoChecks> {
    let q = alg.form();
    let field = alg.field();
    let n = q.dim();
    let z_basis = center.basis();
    let spin_ech = even_echelon(alg, spin);
    let center_in_spin = z_basis.iter().all(|z| spin_ech.contains(&z.even_coords()));

    // χ̇′ on 𝔰𝔭𝔦𝔫 and Ṡ on 𝔭𝔤𝔬.
    let spin_pgo: Vec<Vec<Scalar>> = spin
        .iter()
        .map(|xi| {
            let g = chi0_dot(xi)?.ok_or_else(|| Error::Inconsistent("𝔰𝔭𝔦𝔫 ⊄ ω".into()))?;
            pgo.coords(&g)
        })
        .collect::<Result<_>>()?;
    let ker_spin = kernel_elems(alg, spin, &spin_pgo)?;
    let kernel_is_center = same_span(alg, &ker_spin, &z_basis);
    let mut cols: Vec<Vec<Scalar>> = omega.chi0.iter().map(vec_of).collect();
    cols.push(vec_of(&Matrix::identity(field, n)));
    let lift_sys = Matrix::from_cols(field, n * n, &cols)?;
    let s_dot = |g: &Matrix| -> Result<(Scalar, Scalar)> {
        let Solution::Solutions { particular, .. } = linear_solve(&lift_sys, &vec_of(g))? else {
            return Err(Error::Inconsistent("χ̇′ is not onto 𝔭𝔤𝔬".into()));
        };
        let xi = combine(alg, &omega.basis, &particular[..omega.dim()]);
        center
            .coords(&mu_dot(&xi))
            .ok_or_else(|| Error::Inconsistent("μ̲̇ leaves Z".into()))
    };
    let s_cols: Vec<Vec<Scalar>> = pgo
        .basis()
        .iter()
        .map(|g| s_dot(g).map(|(a, b)| vec![a, b]))
        .collect::<Result<_>>()?;
    let s_onto = rank_of(field, &s_cols) == 2;
    let s_mat = Matrix::from_cols(field, 2, &s_cols)?;
    let composite_zero = spin_pgo.iter().all(|c| is_zero_vec(&s_mat.mul_vec(c)));
    let image_rank = rank_of(field, &spin_pgo);
    let spin_pgo_sequence =
        kernel_is_center && s_onto && composite_zero && image_rank + 2 == pgo.dim() && center_in_spin;

    // Pfaffian trace.
    let trp_vals: Vec<Scalar> = o.iter().map(|a| trp(q, a)).collect::<Result<_>>()?;
    let mut trp_lie_hom = true;
    for i in 0..o.len() {
        for j in i + 1..o.len() {
            trp_lie_hom &= trp(q, &o[i].commutator(&o[j]))?.is_zero();
        }
    }
    let trp_onto = trp_vals.iter().any(|t| !t.is_zero());

    // 𝔰𝔬 = χ̇(𝔰𝔭𝔦𝔫) = ker Trp, with ker(χ̇|𝔰𝔭𝔦𝔫) = F.
    let so_vecs: Vec<Vec<Scalar>> = spin
        .iter()
        .map(|xi| chi_dot(xi).map(|g| vec_of(&g)).ok_or_else(|| Error::Inconsistent("[𝔰𝔭𝔦𝔫, V] ⊄ V".into())))
        .collect::<Result<_>>()?;
    let so_rank = rank_of(field, &so_vecs);
    let so_in_ker_trp = so_vecs
        .iter()
        .map(|v| trp(q, &mat_of(field, n, v)))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(Scalar::is_zero);
    let ker_spin_chi = kernel_elems(alg, spin, &so_vecs)?;
    let one_in_spin = spin_ech.contains(&alg.one().even_coords());
    let gamma_rank = rank_of(field, &chi_imgs.iter().map(vec_of).collect::<Vec<_>>());
    let mu_row: Vec<Scalar> = gamma
        .iter()
        .map(|x| mu_dot(x).scalar_value().expect("μ̲̇ scalar on γ"))
        .collect();
    let mu_onto = mu_row.iter().any(|c| !c.is_zero());
    let diagram_exact = trp_onto
        && so_in_ker_trp
        && so_rank + 1 == o.len()
        && one_in_spin
        && same_span(alg, &ker_spin_chi, &[alg.one()])
        && gamma_rank == o.len()
        && mu_onto
        && spin.len() + 1 == gamma.len();
    let diagram_commutes = chi_imgs
        .iter()
        .zip(&mu_row)
        .map(|(g, m)| trp(q, g).map(|t| t == *m))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);

    Ok(CharTwoChecks {
        center_in_spin,
        spin_pgo_sequence,
        trp_lie_hom,
        diagram_exact,
        diagram_commutes,
    })
}

/// Outcome of the generation argument behind uniqueness of lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftSpan {
    /// The four commutator identities and the expression of `e_ie′_i`.
    pub relations_hold: bool,
    pub generators: usize,
    /// Dimension of the subalgebra generated by the commutators.
    pub span_dim: usize,
    /// `dim C₀`.
    pub target_dim: usize,
    /// Span reached when the last hyperbolic pair is left out.
    pub restricted_span_dim: usize,
}

fn generated_dim(alg: &Arc<CliffordAlgebra>, gens: &[CliffordElem]) -> usize {
    let mut ech = Echelon::new(alg.field(), alg.size() / 2);
    let one = alg.one();
    ech.insert(&one.even_coords());
    let mut frontier = vec![one];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mul(g);
            if ech.insert(&y.even_coords()) {
                frontier.push(y);
            }
        }
    }
    ech.rank()
}

/// Checks `[e_ie_j, e′_je_j] = e_ie_j`, `[e_ie′_j, e_je′_j] = e_ie′_j`,
/// `[e′_ie_j, e′_je_j] = e′_ie_j`, `[e′_ie′_j, e_je′_j] = e′_ie′_j` and
/// `e_ie′_i = (e_ie_j)(e′_je′_i) + (e_ie′_j)(e_je′_i)` for `i ≠ j` on a
/// Witt basis, then measures the subalgebra these products generate.
pub fn lift_generation_check(alg: &Arc<CliffordAlgebra>) -> Result<LiftSpan> {
    let n = alg.n();
    let witt = witt_decompose(alg.form())?;
    if n % 2 == 1 || witt.witt_index() != n / 2 {
        return Err(Error::NotHyperbolic);
    }
    let m = n / 2;
    let e: Vec<CliffordElem> = witt.pairs.iter().map(|(a, _)| alg.vector(a)).collect();
    let ep: Vec<CliffordElem> = witt.pairs.iter().map(|(_, b)| alg.vector(b)).collect();
    let mut relations_hold = true;
    let mut gens = Vec::new();
    let mut restricted = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let ee = e[i].mul(&e[j]);
            let eep = e[i].mul(&ep[j]);
            let epe = ep[i].mul(&e[j]);
            let epep = ep[i].mul(&ep[j]);
            relations_hold &= ee.commutator(&ep[j].mul(&e[j])) == ee;
            relations_hold &= eep.commutator(&e[j].mul(&ep[j])) == eep;
            relations_hold &= epe.commutator(&ep[j].mul(&e[j])) == epe;
            relations_hold &= epep.commutator(&e[j].mul(&ep[j])) == epep;
            let lhs = e[i].mul(&ep[i]);
            let rhs = ee.mul(&ep[j].mul(&ep[i])).add(&eep.mul(&e[j].mul(&ep[i])));
            relations_hold &= lhs == rhs;
            let four = [ee, eep, epe, epep];
            if i + 1 < m && j + 1 < m {
                restricted.extend(four.iter().cloned());
            }
            gens.extend(four);
        }
    }
    Ok(LiftSpan {
        relations_hold,
        generators: gens.len(),
        span_dim: generated_dim(alg, &gens),
        target_dim: alg.size() / 2,
        restricted_span_dim: generated_dim(alg, &restricted),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_dimensions() {
        let f = FieldSpec::Rationals;
        let plane = CliffordAlgebra::new(&QuadForm::hyperbolic(f, 1)).unwrap();
        assert_eq!(gamma_basis(&plane).len(), 2);
        let f3 = FieldSpec::Prime(3);
        let alg = CliffordAlgebra::new(&QuadForm::hyperbolic(f3, 2)).unwrap();
        assert_eq!(gamma_basis(&alg).len(), 7);
    }

    #[test]
    fn go_membership_test() {
        let f = FieldSpec::Prime(5);
        let q = QuadForm::hyperbolic(f, 2);
        assert_eq!(go_multiplier(&q, &Matrix::identity(f, 4)), Some(f.int(2)));
        let u = vec![f.int(1), f.int(2), f.int(0), f.int(1)];
        let v = vec![f.int(0), f.int(1), f.int(3), f.int(1)];
        let g = q.tensor(&u, &v).sub(&q.tensor(&v, &u));
        assert_eq!(go_multiplier(&q, &g), Some(f.zero()));
        assert_eq!(go_multiplier(&q, &q.tensor(&u, &u)), None);
        let ell = ell_element(&q).unwrap();
        assert_eq!(go_multiplier(&q, &ell), Some(f.one()));
        assert_eq!(o_basis(&q).len(), 6);
        assert_eq!(go_basis(&q).len(), 7);
        assert_eq!(PgoBasis::new(&q).dim(), 6);
    }

    #[test]
    fn ledger_dimension_four() {
        for f in [FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Rationals] {
            let alg = CliffordAlgebra::new(&QuadForm::hyperbolic(f, 2)).unwrap();
            let l = lie_ledger(&alg).unwrap();
            assert_eq!((l.dim_o, l.dim_go, l.dim_pgo), (6, 7, 6));
            assert_eq!((l.dim_gamma, l.dim_spin, l.dim_omega), (7, 6, 8));
            assert!(l.gamma_closed && l.ker_chi_is_scalars && l.ker_chi0_is_trace_zero);
            assert!(l.chi0_onto_go && l.multiplier_compatible);
            assert_ne!(l.omega_is_gamma_plus_center, Some(false));
            if let Some(c) = l.char2 {
                assert!(c.center_in_spin && c.spin_pgo_sequence && c.trp_lie_hom);
                assert!(c.diagram_exact && c.diagram_commutes);
            }
        }
    }

    #[test]
    fn lift_span_dimension_four() {
        let f = FieldSpec::Prime(5);
        let alg = CliffordAlgebra::new(&QuadForm::hyperbolic(f, 2)).unwrap();
        let s = lift_generation_check(&alg).unwrap();
        assert!(s.relations_hold);
        assert_eq!(s.span_dim, 8);
        assert_eq!(s.target_dim, 8);
        assert!(s.restricted_span_dim < 8);
    }
}
