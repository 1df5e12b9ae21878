// SPDX-License-Identifier: Apache-2.0
//! Seeded random inputs for certificate batches.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::{go_basis, CliffordAlgebra, CliffordElem};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Matrix, Scalar};
use crate::quadform::QuadForm;

/// Coordinate height of random scalars over Q.
const HEIGHT: i64 = 3;

/// Independent streams for each `(seed, label)`.
pub fn rng_for(seed: u64, label: &str) -> ChaCha8Rng {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for b in label.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(h)
}

pub fn random_vector<R: Rng>(f: FieldSpec, n: usize, rng: &mut R) -> Vec<Scalar> {
    (0..n).map(|_| f.random(rng, HEIGHT)).collect()
}

pub fn random_anisotropic<R: Rng>(q: &QuadForm, rng: &mut R) -> Vec<Scalar> {
    loop {
        let v = random_vector(q.field(), q.dim(), rng);
        if !q.eval(&v).is_zero() {
            return v;
        }
    }
}

pub fn random_invertible<R: Rng>(f: FieldSpec, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = Matrix::from_fn(f, n, n, |_, _| f.random(rng, HEIGHT));
        if m.rank() == n {
            return m;
        }
    }
}

/// A product of two or four reflections in random anisotropic vectors.
pub fn random_proper_isometry<R: Rng>(q: &QuadForm, rng: &mut R) -> Result<Matrix> {
    let k = rng.gen_range(1..=2);
    let mut g = Matrix::identity(q.field(), q.dim());
    for _ in 0..2 * k {
        g = g.mul(&q.reflection(&random_anisotropic(q, rng))?);
    }
    Ok(g)
}

/// A random combination of the standard basis of `go(q)`.
pub fn random_go<R: Rng>(q: &QuadForm, rng: &mut R) -> Matrix {
    let f = q.field();
    let mut g = Matrix::zeros(f, q.dim(), q.dim());
    for (b, _) in go_basis(q) {
        g = g.add(&b.scale(&f.random(rng, HEIGHT)));
    }
    g
}

/// `v₁⋯v_{2k}(a z₊ + b z₋)` with anisotropic `v_i`, `1 ≤ k ≤ 2`, and
/// `a, b ≠ 0`, an element of `Ω(q)`.
pub fn random_omega<R: Rng>(alg: &Arc<CliffordAlgebra>, rng: &mut R) -> Result<CliffordElem> {
    let q = alg.form();
    let f = q.field();
    let k = rng.gen_range(1..=2);
    let vs: Vec<_> = (0..2 * k).map(|_| random_anisotropic(q, rng)).collect();
    let (zp, zm) = alg.polarization()?;
    let a = f.random_nonzero(rng, HEIGHT);
    let b = f.random_nonzero(rng, HEIGHT);
    let xi = alg.vector_product(&vs).mul(&zp.scale(&a).add(&zm.scale(&b)));
    if xi.is_zero() {
        return Err(Error::Inconsistent("product of anisotropic vectors vanished".into()));
    }
    Ok(xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{go_multiplier, omega_membership};
    use crate::quadform::similitude_check;

    #[test]
    fn streams_are_deterministic_and_distinct() {
        let f = FieldSpec::Prime(7);
        let a = random_vector(f, 8, &mut rng_for(1, "x"));
        assert_eq!(a, random_vector(f, 8, &mut rng_for(1, "x")));
        assert_ne!(a, random_vector(f, 8, &mut rng_for(1, "y")));
        assert_ne!(a, random_vector(f, 8, &mut rng_for(2, "x")));
    }

    #[test]
    fn samples_lie_where_claimed() {
        for f in FieldSpec::defaults() {
            let q = QuadForm::hyperbolic(f, 4);
            let mut rng = rng_for(3, "samples");
            let g = random_proper_isometry(&q, &mut rng).unwrap();
            assert_eq!(similitude_check(&q, &q, &g), Some(f.one()));
            assert!(go_multiplier(&q, &random_go(&q, &mut rng)).is_some());
            let alg = CliffordAlgebra::new(&q).unwrap();
            let xi = random_omega(&alg, &mut rng).unwrap();
            assert!(omega_membership(&xi).unwrap().is_some());
        }
    }
}
