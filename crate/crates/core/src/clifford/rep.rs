// SPDX-License-Identifier: Apache-2.0
//! Matrix representations of `C(V,q)`, reduced traces and the canonical
//! semitraces `Trd(ee′s)`.

use std::sync::Arc;

use super::{CliffordAlgebra, CliffordElem};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Matrix, Scalar};
use crate::quadform::witt_decompose;

/// Which algebra a semitrace is taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// `C(V,q)` with `τ`.
    Full,
    /// `C₀(V,q)` with `τ₀`, split along `z±`.
    Even,
}

/// Value of a semitrace: a scalar on `C`, a pair of block traces on `C₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Semitrace {
    Full(Scalar),
    Even(Scalar, Scalar),
}

/// Images `ρ(e_i)` of the generators as square matrices.
#[derive(Clone, Debug)]
pub struct CliffordRep {
    alg: Arc<CliffordAlgebra>,
    gens: Vec<Matrix>,
    monomials: Vec<Matrix>,
    pair: (Vec<Scalar>, Vec<Scalar>),
}

/// Creation and annihilation operators on `Λ(F^m)` with states indexed
/// by bitmask.
fn fock_operators(field: FieldSpec, m: usize) -> (Vec<Matrix>, Vec<Matrix>) {
    let dim = 1usize << m;
    let sign = |s: usize, i: usize| {
        if (s & ((1 << i) - 1)).count_ones() % 2 == 0 {
            field.one()
        } else {
            -field.one()
        }
    };
    let mut ann = Vec::new();
    let mut cre = Vec::new();
    for i in 0..m {
        let mut a = Matrix::zeros(field, dim, dim);
        let mut c = Matrix::zeros(field, dim, dim);
        for s in 0..dim {
            if s >> i & 1 == 1 {
                a.set(s ^ (1 << i), s, sign(s, i));
            } else {
                c.set(s | (1 << i), s, sign(s, i));
            }
        }
        ann.push(a);
        cre.push(c);
    }
    (ann, cre)
}

impl CliffordRep {
    /// Checks the Clifford relations on `gens` and extends multiplicatively.
    pub fn from_generators(alg: &Arc<CliffordAlgebra>, gens: Vec<Matrix>) -> Result<Self> {
        let q = alg.form();
        let n = alg.n();
        if gens.len() != n {
            return Err(Error::DimensionMismatch(format!("{} generator images for n = {n}", gens.len())));
        }
        let d = gens.first().map_or(1, Matrix::rows);
        if gens.iter().any(|g| g.rows() != d || g.cols() != d) {
            return Err(Error::DimensionMismatch("generator images must be square of equal size".into()));
        }
        let field = alg.field();
        for i in 0..n {
            if gens[i].mul(&gens[i]) != Matrix::scalar(field, d, q.upper().get(i, i)) {
                return Err(Error::RelationViolation(format!("ρ(e{})² ≠ q(e{})", i + 1, i + 1)));
            }
            for j in i + 1..n {
                let ac = gens[i].mul(&gens[j]).add(&gens[j].mul(&gens[i]));
                if ac != Matrix::scalar(field, d, q.polar().get(i, j)) {
                    return Err(Error::RelationViolation(format!(
                        "ρ(e{})ρ(e{}) + ρ(e{})ρ(e{}) ≠ b(e{}, e{})",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1,
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let e = field.unit_vec(n, 0);
        let ep = q.polar_inv().col(0);
        Ok(Self::assemble(alg, gens, (e, ep)))
    }

    fn assemble(alg: &Arc<CliffordAlgebra>, gens: Vec<Matrix>, pair: (Vec<Scalar>, Vec<Scalar>)) -> Self {
        let field = alg.field();
        let d = gens.first().map_or(1, Matrix::rows);
        let mut monomials = Vec::with_capacity(alg.size());
        monomials.push(Matrix::identity(field, d));
        for s in 1..alg.size() {
            let m = (usize::BITS - 1 - s.leading_zeros()) as usize;
            let prev = monomials[s ^ (1 << m)].mul(&gens[m]);
            monomials.push(prev);
        }
        CliffordRep {
            alg: alg.clone(),
            gens,
            monomials,
            pair,
        }
    }

    /// The spinor representation of a hyperbolic form, built on a Witt
    /// basis: `e_i` acts by annihilation and `e′_i` by creation.
    pub fn fock(alg: &Arc<CliffordAlgebra>) -> Result<Self> {
        let q = alg.form();
        let n = alg.n();
        if n % 2 == 1 {
            return Err(Error::NotHyperbolic);
        }
        let witt = witt_decompose(q)?;
        if witt.witt_index() != n / 2 {
            return Err(Error::NotHyperbolic);
        }
        let field = alg.field();
        let (ann, cre) = fock_operators(field, n / 2);
        let d = 1usize << (n / 2);
        let gens: Vec<Matrix> = (0..n)
            .map(|k| {
                let v = field.unit_vec(n, k);
                let mut m = Matrix::zeros(field, d, d);
                for (i, (e, ep)) in witt.pairs.iter().enumerate() {
                    m = m.add(&ann[i].scale(&q.bilinear(&v, ep)));
                    m = m.add(&cre[i].scale(&q.bilinear(&v, e)));
                }
                m
            })
            .collect();
        let rep = Self::from_generators(alg, gens)?;
        let pair = witt.pairs[0].clone();
        Ok(CliffordRep { pair, ..rep })
    }

    pub fn algebra(&self) -> &Arc<CliffordAlgebra> {
        &self.alg
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.gens
    }

    /// Size of the representing matrices.
    pub fn degree(&self) -> usize {
        self.monomials[0].rows()
    }

    /// The vectors `(e, e′)` with `b(e, e′) = 1` used for semitraces.
    pub fn pair(&self) -> &(Vec<Scalar>, Vec<Scalar>) {
        &self.pair
    }

    pub fn image(&self, x: &CliffordElem) -> Result<Matrix> {
        if x.algebra().form() != self.alg.form() {
            return Err(Error::FormMismatch);
        }
        let field = self.alg.field();
        let d = self.degree();
        let mut out = Matrix::zeros(field, d, d);
        for (m, c) in x.terms() {
            out = out.add(&self.monomials[m as usize].scale(c));
        }
        Ok(out)
    }

    /// Reduced trace, read off as the matrix trace of `ρ(x)`.
    pub fn trd(&self, x: &CliffordElem) -> Result<Scalar> {
        Ok(self.image(x)?.trace())
    }

    /// The canonical semitrace `s ↦ Trd(ee′s)` on `Sym(τ)` or `Sym(τ₀)`.
    pub fn semitrace(&self, s: &CliffordElem, parity: Parity) -> Result<Semitrace> {
        let (e, ep) = self.pair.clone();
        self.semitrace_with(s, parity, &e, &ep)
    }

    /// As [`CliffordRep::semitrace`] with an explicit pair `b(e, e′) = 1`.
    pub fn semitrace_with(&self, s: &CliffordElem, parity: Parity, e: &[Scalar], ep: &[Scalar]) -> Result<Semitrace> {
        let q = self.alg.form();
        if !q.bilinear(e, ep).is_one() {
            return Err(Error::InvalidForm("semitrace pair must satisfy b(e, e′) = 1".into()));
        }
        if s.tau() != *s {
            return Err(Error::NotSymmetric);
        }
        let eep = self.alg.vector(e).mul(&self.alg.vector(ep));
        let x = eep.mul(s);
        match parity {
            Parity::Full => Ok(Semitrace::Full(self.trd(&x)?)),
            Parity::Even => {
                if !s.is_even() {
                    return Err(Error::BadParity);
                }
                let (zp, zm) = self.alg.polarization()?;
                Ok(Semitrace::Even(self.trd(&x.mul(&zp))?, self.trd(&x.mul(&zm))?))
            }
        }
    }

    /// Reduced traces on the two simple components of `C₀`.
    pub fn trd_even(&self, x: &CliffordElem) -> Result<(Scalar, Scalar)> {
        if !x.is_even() {
            return Err(Error::BadParity);
        }
        let (zp, zm) = self.alg.polarization()?;
        Ok((self.trd(&x.mul(&zp))?, self.trd(&x.mul(&zm))?))
    }
}

/// The hyperbolic-form representation; `NotHyperbolic` otherwise.
pub fn build_rep(alg: &Arc<CliffordAlgebra>) -> Result<CliffordRep> {
    CliffordRep::fock(alg)
}
