// SPDX-License-Identifier: Apache-2.0
//! Isometry invariants: discriminant over `F_p`, Arf invariant over `F_2`,
//! and signature, discriminant and Hasse invariants over Q.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{orthogonal_basis, similitude_check, witt_decompose, QuadForm, SearchConfig};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Matrix, Rational, Scalar};

/// The invariant record of a nonsingular form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invariants {
    /// Odd `p`: the class is determined by dimension and discriminant.
    FiniteOdd {
        dim: usize,
        p: u32,
        /// `(-1)^{n(n-1)/2} det B`.
        disc: Scalar,
        disc_is_square: bool,
    },
    /// `p = 2`: the class is determined by dimension and Arf invariant.
    Char2 { dim: usize, arf: Scalar },
    /// Over Q, enough for the Hasse–Minkowski decision.
    Rational {
        dim: usize,
        positive: usize,
        negative: usize,
        /// Squarefree representative of `(-1)^{n(n-1)/2} det B`.
        disc: BigInt,
        /// Hasse invariants `Π_{i<j} (a_i, a_j)_p` of a diagonalization,
        /// at 2 and the primes dividing the diagonal entries.
        hasse: BTreeMap<u64, i8>,
    },
}

impl Invariants {
    pub fn dim(&self) -> usize {
        match self {
            Invariants::FiniteOdd { dim, .. }
            | Invariants::Char2 { dim, .. }
            | Invariants::Rational { dim, .. } => *dim,
        }
    }

    /// Whether the discriminant (or Arf invariant) is trivial.
    pub fn trivial_discriminant(&self) -> bool {
        match self {
            Invariants::FiniteOdd { disc_is_square, .. } => *disc_is_square,
            Invariants::Char2 { arf, .. } => arf.is_zero(),
            Invariants::Rational { disc, .. } => disc.is_one(),
        }
    }
}

fn signed_disc(q: &QuadForm) -> Result<Scalar> {
    let n = q.dim() as u64;
    let d = q.polar().det()?;
    Ok(if (n * n.saturating_sub(1) / 2) % 2 == 1 { -d } else { d })
}

/// Computes the invariant record of `q`.
pub fn classify(q: &QuadForm) -> Result<Invariants> {
    let dim = q.dim();
    match q.field() {
        FieldSpec::Prime(2) => Ok(Invariants::Char2 {
            dim,
            arf: arf_invariant(q),
        }),
        FieldSpec::Prime(p) => {
            let disc = signed_disc(q)?;
            Ok(Invariants::FiniteOdd {
                dim,
                p,
                disc_is_square: disc.is_square_fast(),
                disc,
            })
        }
        FieldSpec::Rationals => {
            let diag = rational_diagonal(q)?;
            let positive = diag.iter().filter(|a| a.is_positive()).count();
            let disc = squarefree(&rational_class(
                signed_disc(q)?.as_rational().expect("rational field"),
            ));
            let hasse = relevant_primes(&diag)
                .into_iter()
                .map(|p| (p, hasse_at(&diag, p)))
                .collect();
            Ok(Invariants::Rational {
                dim,
                positive,
                negative: dim - positive,
                disc,
                hasse,
            })
        }
    }
}

/// `Σ q(e_i) q(f_i)` for a symplectic basis of `b`, valued in `F_2`.
fn arf_invariant(q: &QuadForm) -> Scalar {
    let field = q.field();
    let n = q.dim();
    let mut rest: Vec<Vec<Scalar>> = (0..n).map(|i| field.unit_vec(n, i)).collect();
    let mut arf = field.zero();
    while let Some(e) = rest.first().cloned() {
        let k = rest
            .iter()
            .position(|w| !q.bilinear(&e, w).is_zero())
            .expect("polar form is nonsingular");
        let inv = q.bilinear(&e, &rest[k]).inv().expect("nonzero");
        let f: Vec<Scalar> = rest[k].iter().map(|s| s * &inv).collect();
        arf += &(q.eval(&e) * q.eval(&f));
        let mut ech = crate::exactfield::Echelon::new(field, n);
        let mut next = Vec::new();
        for w in &rest {
            let mut p = w.clone();
            crate::exactfield::axpy(&mut p, &-q.bilinear(w, &f), &e);
            crate::exactfield::axpy(&mut p, &-q.bilinear(w, &e), &f);
            if !crate::exactfield::is_zero_vec(&p) && ech.insert(&p) {
                next.push(p);
            }
        }
        rest = next;
    }
    arf
}

/// Squarefree integers in the square classes of a diagonalization.
fn rational_diagonal(q: &QuadForm) -> Result<Vec<BigInt>> {
    Ok(orthogonal_basis(q)?
        .into_iter()
        .map(|(_, a)| squarefree(&rational_class(a.as_rational().expect("rational field"))))
        .collect())
}

fn rational_class(r: &Rational) -> BigInt {
    r.square_class_integer()
}

fn small_primes_of(n: &BigInt) -> Vec<u64> {
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2u32);
    while &d * &d <= m {
        if (&m % &d).is_zero() {
            out.push(d.to_u64().expect("trial divisor fits"));
            while (&m % &d).is_zero() {
                m /= &d;
            }
        }
        d += 1u32;
    }
    if m > BigInt::one() {
        out.push(m.to_u64().expect("prime factor fits in u64"));
    }
    out
}

/// Squarefree part of a nonzero integer, keeping its sign.
pub(crate) fn squarefree(n: &BigInt) -> BigInt {
    assert!(!n.is_zero(), "squarefree part of zero");
    let mut m = n.abs();
    let mut out = BigInt::one();
    for p in small_primes_of(n) {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &bp;
        }
    }
    if n.is_negative() {
        -out
    } else {
        out
    }
}

fn relevant_primes(diag: &[BigInt]) -> BTreeSet<u64> {
    let mut s = BTreeSet::from([2u64]);
    for a in diag {
        s.extend(small_primes_of(a));
    }
    s
}

/// `(p-adic valuation, unit part)`.
fn split(a: &BigInt, p: u64) -> (u32, BigInt) {
    let bp = BigInt::from(p);
    let mut u = a.clone();
    let mut v = 0;
    while (&u % &bp).is_zero() {
        u /= &bp;
        v += 1;
    }
    (v, u)
}

fn legendre(u: &BigInt, p: u64) -> i8 {
    let bp = BigInt::from(p);
    let r = u.mod_floor(&bp);
    let e = r.modpow(&BigInt::from((p - 1) / 2), &bp);
    if e.is_one() {
        1
    } else {
        -1
    }
}

/// Hilbert symbol `(a, b)_p` of nonzero integers.
pub(crate) fn hilbert(a: &BigInt, b: &BigInt, p: u64) -> i8 {
    let (alpha, u) = split(a, p);
    let (beta, v) = split(b, p);
    if p == 2 {
        let m8 = |x: &BigInt| x.mod_floor(&BigInt::from(8)).to_u64().expect("residue");
        let (u8_, v8) = (m8(&u), m8(&v));
        let eps = |x: u64| ((x - 1) / 2) % 2;
        let omega = |x: u64| ((x * x - 1) / 8) % 2;
        let e = eps(u8_) * eps(v8) + alpha as u64 * omega(v8) + beta as u64 * omega(u8_);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let mut s: i8 = if (alpha as u64 * beta as u64 * ((p - 1) / 2)) % 2 == 0 {
            1
        } else {
            -1
        };
        if beta % 2 == 1 {
            s *= legendre(&u, p);
        }
        if alpha % 2 == 1 {
            s *= legendre(&v, p);
        }
        s
    }
}

fn hasse_at(diag: &[BigInt], p: u64) -> i8 {
    let mut s = 1;
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            s *= hilbert(&diag[i], &diag[j], p);
        }
    }
    s
}

fn is_padic_square(d: &BigInt, p: u64) -> bool {
    let (v, u) = split(d, p);
    if v % 2 == 1 {
        return false;
    }
    if p == 2 {
        u.mod_floor(&BigInt::from(8)).is_one()
    } else {
        legendre(&u, p) == 1
    }
}

/// Hasse–Minkowski isotropy decision over Q.
pub(crate) fn rational_isotropic(q: &QuadForm) -> bool {
    let diag = rational_diagonal(q).expect("rational form diagonalizes");
    let n = diag.len();
    let pos = diag.iter().filter(|a| a.is_positive()).count();
    if n < 2 || pos == 0 || pos == n {
        return false;
    }
    let d: BigInt = diag.iter().product();
    if n == 2 {
        return squarefree(&-d).is_one();
    }
    if n >= 5 {
        return true;
    }
    let minus_one = BigInt::from(-1);
    relevant_primes(&diag).into_iter().all(|p| {
        let eps = hasse_at(&diag, p);
        if n == 3 {
            hilbert(&minus_one, &-&d, p) == eps
        } else {
            !is_padic_square(&d, p) || eps == hilbert(&minus_one, &minus_one, p)
        }
    })
}

/// An isometry decision, with a witness `g` (`q̃ ∘ g = q`) over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryDecision {
    pub isometric: bool,
    pub witness: Option<Matrix>,
}

/// Decides whether `q ≅ q̃`; over `F_p` also builds an explicit isometry.
pub fn is_isometric(q: &QuadForm, qt: &QuadForm) -> Result<IsometryDecision> {
    if q.field() != qt.field() {
        return Err(Error::FieldMismatch);
    }
    let no = IsometryDecision {
        isometric: false,
        witness: None,
    };
    if q.dim() != qt.dim() {
        return Ok(no);
    }
    if q == qt {
        return Ok(IsometryDecision {
            isometric: true,
            witness: Some(Matrix::identity(q.field(), q.dim())),
        });
    }
    let (a, b) = (classify(q)?, classify(qt)?);
    let same = match (&a, &b) {
        (
            Invariants::Rational {
                positive: p1,
                disc: d1,
                ..
            },
            Invariants::Rational {
                positive: p2,
                disc: d2,
                ..
            },
        ) => {
            let (da, db) = (rational_diagonal(q)?, rational_diagonal(qt)?);
            let mut primes = relevant_primes(&da);
            primes.extend(relevant_primes(&db));
            p1 == p2 && d1 == d2 && primes.iter().all(|&p| hasse_at(&da, p) == hasse_at(&db, p))
        }
        (
            Invariants::FiniteOdd { disc_is_square: s1, .. },
            Invariants::FiniteOdd { disc_is_square: s2, .. },
        ) => s1 == s2,
        (Invariants::Char2 { arf: a1, .. }, Invariants::Char2 { arf: a2, .. }) => a1 == a2,
        _ => false,
    };
    if !same {
        return Ok(no);
    }
    if q.field() == FieldSpec::Rationals {
        return Ok(IsometryDecision {
            isometric: true,
            witness: None,
        });
    }
    let g = finite_witness(q, qt)?;
    Ok(IsometryDecision {
        isometric: true,
        witness: Some(g),
    })
}

/// Matches hyperbolic pairs and maps the (at most 2-dimensional)
/// anisotropic parts onto each other.
fn finite_witness(q: &QuadForm, qt: &QuadForm) -> Result<Matrix> {
    let field = q.field();
    let n = q.dim();
    let (w, wt) = (witt_decompose(q)?, witt_decompose(qt)?);
    let fault = || Error::Inconsistent("isometric forms with different Witt decompositions".into());
    if w.pairs.len() != wt.pairs.len() {
        return Err(fault());
    }
    let a = q.restrict(&w.anisotropic)?;
    let at = qt.restrict(&wt.anisotropic)?;
    let m = anisotropic_isometry(&a, &at)?.ok_or_else(fault)?;
    let src = w.basis_matrix(field, n);
    let mut images = Vec::new();
    for (e, ep) in &wt.pairs {
        images.push(e.clone());
        images.push(ep.clone());
    }
    for k in 0..m.cols() {
        let mut v = field.vec_zero(n);
        for (l, at_l) in wt.anisotropic.iter().enumerate() {
            crate::exactfield::axpy(&mut v, m.get(l, k), at_l);
        }
        images.push(v);
    }
    let dst = Matrix::from_cols(field, n, &images)?;
    let g = dst.mul(&src.inverse()?);
    match similitude_check(q, qt, &g) {
        Some(mu) if mu.is_one() => Ok(g),
        _ => Err(Error::Inconsistent("constructed isometry fails verification".into())),
    }
}

/// An isometry `M` with `ã(M x) = a(x)` between anisotropic forms over `F_p`.
fn anisotropic_isometry(a: &QuadForm, at: &QuadForm) -> Result<Option<Matrix>> {
    let field = a.field();
    let d = a.dim();
    match d {
        0 => Ok(Some(Matrix::zeros(field, 0, 0))),
        1 => {
            let ratio = a.upper().get(0, 0) / at.upper().get(0, 0);
            Ok(ratio.is_square()?.map(|c| Matrix::scalar(field, 1, &c)))
        }
        2 => {
            let p = field.characteristic();
            if p <= 17 {
                return Ok(brute_force_2x2(a, at));
            }
            let ob = orthogonal_basis(a)?;
            let (u1, a1) = &ob[0];
            let (u2, a2) = &ob[1];
            let Some(w) = super::search::represent(at, a1, &SearchConfig::default())? else {
                return Ok(None);
            };
            let c = at.polar().mul_vec(&w);
            let y = vec![-c[1].clone(), c[0].clone()];
            let Some(s) = (a2 / &at.eval(&y)).is_square()? else {
                return Ok(None);
            };
            let y: Vec<Scalar> = y.iter().map(|t| t * &s).collect();
            let img = Matrix::from_cols(field, 2, &[w, y])?;
            let src = Matrix::from_cols(field, 2, &[u1.clone(), u2.clone()])?;
            Ok(Some(img.mul(&src.inverse()?)))
        }
        _ => Err(Error::Inconsistent(
            "anisotropic part of dimension above 2 over a finite field".into(),
        )),
    }
}

fn brute_force_2x2(a: &QuadForm, at: &QuadForm) -> Option<Matrix> {
    let field = a.field();
    let els = field.elements()?;
    for m00 in &els {
        for m01 in &els {
            for m10 in &els {
                for m11 in &els {
                    let m = Matrix::from_vec(
                        field,
                        2,
                        2,
                        vec![m00.clone(), m01.clone(), m10.clone(), m11.clone()],
                    )
                    .expect("2x2");
                    if at.pullback_table(&m) == *a.upper() {
                        return Some(m);
                    }
                }
            }
        }
    }
    None
}

/// Whether `q` is an orthogonal sum of hyperbolic planes.
pub fn is_hyperbolic(q: &QuadForm) -> Result<bool> {
    if q.dim() % 2 == 1 {
        return Ok(false);
    }
    Ok(is_isometric(q, &QuadForm::hyperbolic(q.field(), q.dim() / 2))?.isometric)
}
