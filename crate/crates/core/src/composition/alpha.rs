// SPDX-License-Identifier: Apache-2.0
//! The canonical Clifford map `C(α): C(V₁,q₁) → End(V₂ ⊕ V₃)`,
//! `x₁ ↦ (0 r_{x₁}; ℓ_{x₁} 0)`, and its even part `C₀(α)`.

use std::sync::Arc;

use super::Composition;
use crate::clifford::{CliffordAlgebra, CliffordElem, CliffordRep, Parity, Semitrace};
use crate::error::{Error, Result};
use crate::exactfield::{Echelon, Matrix, Scalar};
use crate::report::{Checker, Report};

/// `C(α)` for a composition, with the polarization `z±` of `(V₁, q₁)`
/// determined by `C₀(α)(z₊) = (1, 0)`.
#[derive(Clone, Debug)]
pub struct CliffordAlpha {
    comp: Composition,
    rep: CliffordRep,
    polarization: Option<(CliffordElem, CliffordElem)>,
}

fn block(m: &Matrix, r0: usize, c0: usize, n: usize) -> Matrix {
    m.submatrix(r0, r0 + n, c0, c0 + n)
}

impl CliffordAlpha {
    /// Builds `C(α)`; the Clifford relations are certified on the basis,
    /// so a non-composition input is reported as `RelationViolation`.
    pub fn new(c: &Composition) -> Result<Self> {
        let alg = CliffordAlgebra::new(c.q(1))?;
        let n = c.dim();
        let c2 = c.derive_unchecked().derive_unchecked();
        let field = c.field();
        let gens: Vec<Matrix> = (0..n)
            .map(|i| {
                let e = c.unit(i);
                let mut m = Matrix::zeros(field, 2 * n, 2 * n);
                m.set_block(0, n, &c2.right_mul(&e));
                m.set_block(n, 0, &c.left_mul(&e));
                m
            })
            .collect();
        let rep = CliffordRep::from_generators(&alg, gens)?;
        let mut out = CliffordAlpha {
            comp: c.clone(),
            rep,
            polarization: None,
        };
        out.polarization = out.label_idempotents()?;
        Ok(out)
    }

    fn label_idempotents(&self) -> Result<Option<(CliffordElem, CliffordElem)>> {
        let alg = self.algebra();
        if alg.n() % 2 == 1 {
            return Ok(None);
        }
        let (za, zb) = match alg.polarization() {
            Ok(p) => p,
            Err(Error::NontrivialDiscriminant) => return Ok(None),
            Err(e) => return Err(e),
        };
        let n = self.comp.dim();
        let field = self.comp.field();
        let plus = Matrix::block_diag(&Matrix::identity(field, n), &Matrix::zeros(field, n, n));
        let minus = Matrix::block_diag(&Matrix::zeros(field, n, n), &Matrix::identity(field, n));
        let (ia, ib) = (self.image(&za)?, self.image(&zb)?);
        Ok(if ia == plus && ib == minus {
            Some((za, zb))
        } else if ib == plus && ia == minus {
            Some((zb, za))
        } else {
            None
        })
    }

    pub fn composition(&self) -> &Composition {
        &self.comp
    }

    pub fn algebra(&self) -> &Arc<CliffordAlgebra> {
        self.rep.algebra()
    }

    pub fn rep(&self) -> &CliffordRep {
        &self.rep
    }

    /// `α(x₁)` for a vector `x₁ ∈ V₁`.
    pub fn alpha(&self, x1: &[Scalar]) -> Result<Matrix> {
        self.image(&self.algebra().vector(x1))
    }

    pub fn image(&self, x: &CliffordElem) -> Result<Matrix> {
        self.rep.image(x)
    }

    /// `C₀(α)(x) = (C₊(α)(x), C₋(α)(x)) ∈ End V₂ × End V₃`.
    pub fn even_image(&self, x: &CliffordElem) -> Result<(Matrix, Matrix)> {
        if !x.is_even() {
            return Err(Error::BadParity);
        }
        let m = self.image(x)?;
        let n = self.comp.dim();
        Ok((block(&m, 0, 0, n), block(&m, n, n, n)))
    }

    pub fn c_plus(&self, x: &CliffordElem) -> Result<Matrix> {
        Ok(self.even_image(x)?.0)
    }

    pub fn c_minus(&self, x: &CliffordElem) -> Result<Matrix> {
        Ok(self.even_image(x)?.1)
    }

    /// `(z₊, z₋)` with `C₀(α)(z₊) = (1, 0)` and `C₀(α)(z₋) = (0, 1)`.
    pub fn polarization(&self) -> Result<&(CliffordElem, CliffordElem)> {
        self.polarization.as_ref().ok_or_else(|| {
            Error::Inconsistent("central idempotents of C₀ do not map to (1,0) and (0,1)".into())
        })
    }

    /// Rank of `C(α)` as a linear map.
    pub fn rank(&self) -> usize {
        let alg = self.algebra();
        let d = self.rep.degree();
        let mut ech = Echelon::new(alg.field(), d * d);
        for m in 0..alg.size() as u32 {
            let img = self.image(&alg.monomial(m)).expect("same algebra");
            ech.insert(img.data());
        }
        ech.rank()
    }

    pub fn is_bijective(&self) -> bool {
        let d = self.rep.degree();
        self.algebra().size() == d * d && self.rank() == d * d
    }
}

/// A basis of `Sym(τ)` in `C(V,q)`, or of `Sym(τ₀)` in `C₀(V,q)`.
pub fn sym_basis(alg: &Arc<CliffordAlgebra>, even: bool) -> Vec<CliffordElem> {
    let masks: Vec<u32> = if even {
        alg.even_masks()
    } else {
        (0..alg.size() as u32).collect()
    };
    let field = alg.field();
    let pos: std::collections::HashMap<u32, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let size = masks.len();
    let mut t = Matrix::zeros(field, size, size);
    for (col, &m) in masks.iter().enumerate() {
        let x = alg.monomial(m);
        let d = x.tau().sub(&x);
        for (mm, c) in d.terms() {
            t.set(pos[&mm], col, c.clone());
        }
    }
    t.kernel()
        .into_iter()
        .map(|v| {
            let mut coeffs = field.vec_zero(alg.size());
            for (i, c) in v.into_iter().enumerate() {
                coeffs[masks[i] as usize] = c;
            }
            alg.from_coeffs(coeffs).expect("length matches")
        })
        .collect()
}

/// Certifies that `C(α)` and `C₀(α)` are isomorphisms of algebras with
/// quadratic pair, for a composition of dimension 8.
pub fn verify_quadpair_iso(c: &Composition) -> Result<Report> {
    if c.dim() != 8 {
        return Err(Error::DimensionMismatch(format!(
            "quadratic-pair isomorphism needs dimension 8, got {}",
            c.dim()
        )));
    }
    let ca = match CliffordAlpha::new(c) {
        Ok(ca) => ca,
        Err(Error::RelationViolation(msg)) => {
            let mut ch = Checker::new("α(x)² = q1(x)");
            ch.assert(|| vec![msg], false);
            let mut r = Report::new();
            r.push(ch.finish());
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    let alg = ca.algebra().clone();
    let n = c.dim();
    let field = c.field();
    let q23 = c.q(2).orthogonal_sum(c.q(3))?;
    let mut rep = Report::new();

    let mut bij = Checker::new("C(α) is bijective");
    bij.case(Vec::new, ca.rank(), alg.size());
    rep.push(bij.finish());

    let mut inv = Checker::new("C(α)(τ1(x)) = σ_{b2⊥b3}(C(α)(x))");
    let mut diag = Checker::new("C₀(α)(x) is block diagonal");
    let mut inv0 = Checker::new("C₀(α)(τ01(x)) = (σ_{b2}, σ_{b3})(C₀(α)(x))");
    for m in 0..alg.size() as u32 {
        let x = alg.monomial(m);
        let img = ca.image(&x)?;
        let lbl = || vec![format!("monomial={m:#b}")];
        inv.case(lbl, ca.image(&x.tau())?.into_data(), q23.sigma(&img).into_data());
        if x.is_even() {
            let off = block(&img, 0, n, n).is_zero() && block(&img, n, 0, n).is_zero();
            diag.assert(lbl, off);
            let (p, mm) = ca.even_image(&x.tau())?;
            let (ip, im) = (block(&img, 0, 0, n), block(&img, n, n, n));
            let lhs: Vec<Scalar> = p.into_data().into_iter().chain(mm.into_data()).collect();
            let rhs: Vec<Scalar> = c
                .q(2)
                .sigma(&ip)
                .into_data()
                .into_iter()
                .chain(c.q(3).sigma(&im).into_data())
                .collect();
            inv0.case(lbl, lhs, rhs);
        }
    }
    rep.push(inv.finish());

    let mut semi = Checker::new("f_{q2⊥q3}(C(α)(s)) = Trd(e1e1′s)");
    for (k, s) in sym_basis(&alg, false).iter().enumerate() {
        let lbl = || vec![format!("sym basis {k}")];
        let Semitrace::Full(g) = ca.rep().semitrace(s, Parity::Full)? else {
            unreachable!("full parity");
        };
        match q23.semitrace(&ca.image(s)?) {
            Ok(f) => {
                semi.case(lbl, f, g);
            }
            Err(_) => {
                semi.assert(lbl, false);
            }
        }
    }
    rep.push(semi.finish());
    rep.push(diag.finish());
    rep.push(inv0.finish());

    let (e, ep) = ca.rep().pair().clone();
    let eep = alg.vector(&e).mul(&alg.vector(&ep));
    let mut semi0 = Checker::new("(f_{q2}, f_{q3})(C₀(α)(s)) = Trd(C₀(α)(e1e1′s))");
    for (k, s) in sym_basis(&alg, true).iter().enumerate() {
        let lbl = || vec![format!("even sym basis {k}")];
        let (sp, sm) = ca.even_image(s)?;
        let (tp, tm) = ca.even_image(&eep.mul(s))?;
        match (c.q(2).semitrace(&sp), c.q(3).semitrace(&sm)) {
            (Ok(a), Ok(b)) => {
                semi0.case(lbl, vec![a, b], vec![tp.trace(), tm.trace()]);
            }
            _ => {
                semi0.assert(lbl, false);
            }
        }
    }
    rep.push(semi0.finish());

    let mut pol = Checker::new("C₀(α)(z₊) = (1,0), C₀(α)(z₋) = (0,1)");
    pol.assert(Vec::new, ca.polarization().is_ok());
    if let Ok((zp, zm)) = ca.polarization() {
        let one = Matrix::identity(field, n);
        let zero = Matrix::zeros(field, n, n);
        let (a, b) = ca.even_image(zp)?;
        pol.assert(|| vec!["z+".into()], a == one && b == zero);
        let (a, b) = ca.even_image(zm)?;
        pol.assert(|| vec!["z-".into()], a == zero && b == one);
    }
    rep.push(pol.finish());
    Ok(rep)
}
