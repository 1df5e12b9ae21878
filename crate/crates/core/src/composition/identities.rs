// SPDX-License-Identifier: Apache-2.0
//! The identities satisfied by a composition map and its two derived maps.
//!
//! Each identity is linear in some arguments and quadratic in at most one.
//! Linear arguments range over basis vectors. A quadratic argument ranges
//! over `{e_i} ∪ {e_i + e_k : i < k}`, on which a homogeneous quadratic
//! polynomial vanishes only if it is zero, in every characteristic. With
//! `ℓ` and `r` the left and right multiplication matrices, every identity
//! becomes a matrix equation checked entrywise.

use super::Composition;
use crate::exactfield::{Matrix, Scalar};
use crate::quadform::QuadForm;
use crate::report::{Check, Checker, Report};

/// The eighteen identities, in the order reported.
pub const IDENTITY_NAMES: [&str; 18] = [
    "b3(x1*3x2, x1*3y2) = q1(x1)b2(x2,y2)",
    "b3(x1*3x2, y1*3x2) = b1(x1,y1)q2(x2)",
    "b1(x2*1x3, x2*1y3) = q2(x2)b3(x3,y3)",
    "b1(x2*1x3, y2*1x3) = b2(x2,y2)q3(x3)",
    "b2(x3*2x1, x3*2y1) = q3(x3)b1(x1,y1)",
    "b2(x3*2x1, y3*2x1) = b3(x3,y3)q1(x1)",
    "(x1*3x2)*2x1 = x2 q1(x1)",
    "x2*1(x1*3x2) = x1 q2(x2)",
    "(x2*1x3)*3x2 = x3 q2(x2)",
    "x3*2(x2*1x3) = x2 q3(x3)",
    "(x3*2x1)*1x3 = x1 q3(x3)",
    "x1*3(x3*2x1) = x3 q1(x1)",
    "(x1*3x2)*2y1 + (y1*3x2)*2x1 = x2 b1(x1,y1)",
    "x2*1(x1*3y2) + y2*1(x1*3x2) = x1 b2(x2,y2)",
    "(x2*1x3)*3y2 + (y2*1x3)*3x2 = x3 b2(x2,y2)",
    "x3*2(x2*1y3) + y3*2(x2*1x3) = x2 b3(x3,y3)",
    "(x3*2x1)*1y3 + (y3*2x1)*1x3 = x1 b3(x3,y3)",
    "x1*3(x3*2y1) + y1*3(x3*2x1) = x3 b1(x1,y1)",
];

/// Names of the two multiplicativity checks for the derived maps.
pub const DERIVED_MULTIPLICATIVITY: [&str; 2] = [
    "q1(x2*1x3) = q2(x2)q3(x3)",
    "q2(x3*2x1) = q3(x3)q1(x1)",
];

/// Test vectors for a quadratic argument, with labels.
fn quadratic_set(q: &QuadForm) -> Vec<(String, Vec<Scalar>)> {
    let f = q.field();
    let n = q.dim();
    let mut out: Vec<(String, Vec<Scalar>)> = (0..n).map(|i| (format!("e{i}"), f.unit_vec(n, i))).collect();
    for i in 0..n {
        for k in i + 1..n {
            let mut v = f.unit_vec(n, i);
            v[k] = f.one();
            out.push((format!("e{i}+e{k}"), v));
        }
    }
    out
}

fn entrywise(ch: &mut Checker, var: &str, lhs: &Matrix, rhs: &Matrix) {
    for r in 0..lhs.rows() {
        for c in 0..lhs.cols() {
            ch.case(
                || vec![var.to_string(), format!("entry=({r},{c})")],
                lhs.get(r, c).clone(),
                rhs.get(r, c).clone(),
            );
        }
    }
}

/// `M(x)ᵀ B_out M(x) = q(x) B_in` for `x` in the quadratic set of `q`.
fn gram_identity(name: &str, q: &QuadForm, out: &QuadForm, inner: &QuadForm, m: impl Fn(&[Scalar]) -> Matrix) -> Check {
    let mut ch = Checker::new(name);
    for (label, x) in quadratic_set(q) {
        let mx = m(&x);
        let lhs = mx.transpose().mul(out.polar()).mul(&mx);
        let rhs = inner.polar().scale(&q.eval(&x));
        entrywise(&mut ch, &label, &lhs, &rhs);
    }
    ch.finish()
}

/// `A(x) B(x) = q(x) I` for `x` in the quadratic set of `q`.
fn product_identity(
    name: &str,
    q: &QuadForm,
    a: impl Fn(&[Scalar]) -> Matrix,
    b: impl Fn(&[Scalar]) -> Matrix,
) -> Check {
    let mut ch = Checker::new(name);
    for (label, x) in quadratic_set(q) {
        let lhs = a(&x).mul(&b(&x));
        let rhs = Matrix::scalar(q.field(), lhs.rows(), &q.eval(&x));
        entrywise(&mut ch, &label, &lhs, &rhs);
    }
    ch.finish()
}

/// `A(x) B(y) + A(y) B(x) = b(x, y) I` for basis vectors `x`, `y`.
fn linearized_identity(
    name: &str,
    q: &QuadForm,
    a: impl Fn(&[Scalar]) -> Matrix,
    b: impl Fn(&[Scalar]) -> Matrix,
) -> Check {
    let mut ch = Checker::new(name);
    let f = q.field();
    let n = q.dim();
    let basis: Vec<Vec<Scalar>> = (0..n).map(|i| f.unit_vec(n, i)).collect();
    let am: Vec<Matrix> = basis.iter().map(|x| a(x)).collect();
    let bm: Vec<Matrix> = basis.iter().map(|x| b(x)).collect();
    for i in 0..n {
        for k in 0..n {
            let lhs = am[i].mul(&bm[k]).add(&am[k].mul(&bm[i]));
            let rhs = Matrix::scalar(f, lhs.rows(), q.polar().get(i, k));
            entrywise(&mut ch, &format!("x=e{i}, y=e{k}"), &lhs, &rhs);
        }
    }
    ch.finish()
}

/// Checks all eighteen identities, followed by multiplicativity of the two
/// derived maps. The input need not be a composition; failures are reported.
pub fn identity_suite(c: &Composition) -> Report {
    let c1 = c.derive_unchecked();
    let c2 = c1.derive_unchecked();
    let (q1, q2, q3) = (c.q(1), c.q(2), c.q(3));
    // *3: V1 × V2 → V3, *1: V2 × V3 → V1, *2: V3 × V1 → V2.
    let l3 = |x1: &[Scalar]| c.left_mul(x1);
    let r3 = |x2: &[Scalar]| c.right_mul(x2);
    let l1 = |x2: &[Scalar]| c1.left_mul(x2);
    let r1 = |x3: &[Scalar]| c1.right_mul(x3);
    let l2 = |x3: &[Scalar]| c2.left_mul(x3);
    let r2 = |x1: &[Scalar]| c2.right_mul(x1);
    let n = IDENTITY_NAMES;
    let mut rep = Report::new();
    rep.push(gram_identity(n[0], q1, q3, q2, l3));
    rep.push(gram_identity(n[1], q2, q3, q1, r3));
    rep.push(gram_identity(n[2], q2, q1, q3, l1));
    rep.push(gram_identity(n[3], q3, q1, q2, r1));
    rep.push(gram_identity(n[4], q3, q2, q1, l2));
    rep.push(gram_identity(n[5], q1, q2, q3, r2));
    rep.push(product_identity(n[6], q1, r2, l3));
    rep.push(product_identity(n[7], q2, l1, r3));
    rep.push(product_identity(n[8], q2, r3, l1));
    rep.push(product_identity(n[9], q3, l2, r1));
    rep.push(product_identity(n[10], q3, r1, l2));
    rep.push(product_identity(n[11], q1, l3, r2));
    rep.push(linearized_identity(n[12], q1, r2, l3));
    rep.push(linearized_identity(n[13], q2, l1, r3));
    rep.push(linearized_identity(n[14], q2, r3, l1));
    rep.push(linearized_identity(n[15], q3, l2, r1));
    rep.push(linearized_identity(n[16], q3, r1, l2));
    rep.push(linearized_identity(n[17], q1, l3, r2));
    for (name, d) in DERIVED_MULTIPLICATIVITY.iter().zip([&c1, &c2]) {
        let v = d.verify();
        let mut ch = Checker::new(*name);
        for sub in &v.checks {
            ch.case(|| vec![sub.identity.clone()], sub.failures, 0);
        }
        rep.push(ch.finish());
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;

    #[test]
    fn quadratic_set_size() {
        let q = QuadForm::hyperbolic(FieldSpec::Prime(2), 4);
        assert_eq!(quadratic_set(&q).len(), 8 + 28);
    }

    #[test]
    fn etale_passes_and_perturbation_fails() {
        for f in FieldSpec::defaults() {
            let q = QuadForm::hyperbolic(f, 1);
            let c = Composition::from_basis_products(q.clone(), q.clone(), q, |i, j| {
                if i == j {
                    f.unit_vec(2, i)
                } else {
                    f.vec_zero(2)
                }
            })
            .unwrap();
            let r = identity_suite(&c);
            assert_eq!(r.checks.len(), 20);
            assert!(r.pass(), "{f}: {:?}", r.first_failure());
            let bad = identity_suite(&c.perturbed(0, 1, 0, &f.one()));
            assert!(!bad.pass());
        }
    }
}
