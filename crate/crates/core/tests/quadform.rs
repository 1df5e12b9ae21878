// SPDX-License-Identifier: Apache-2.0
use compquad::quadform::{classify, factor_into_reflections, is_isometric, similitude_check, witt_decompose, QuadForm};
use compquad::{FieldSpec, Matrix};

#[test]
fn hyperbolic_spaces_decompose_fully() {
    for f in FieldSpec::defaults() {
        for m in 1..=4 {
            let q = QuadForm::hyperbolic(f, m);
            assert_eq!(witt_decompose(&q).unwrap().witt_index(), m, "{f} m={m}");
            assert!(classify(&q).unwrap().trivial_discriminant());
        }
    }
}

#[test]
fn rescaled_forms_are_isometric_with_witness() {
    for f in [FieldSpec::Prime(3), FieldSpec::Prime(5), FieldSpec::Prime(7)] {
        let q = QuadForm::hyperbolic(f, 2);
        let qt = q.scaled(&f.int(2)).unwrap();
        let d = is_isometric(&q, &qt).unwrap();
        assert!(d.isometric);
        assert_eq!(similitude_check(&q, &qt, &d.witness.unwrap()), Some(f.one()));
    }
}

#[test]
fn rotations_factor_into_an_even_number_of_reflections() {
    for f in FieldSpec::defaults() {
        let q = QuadForm::hyperbolic(f, 3);
        let mut u = f.vec_zero(6);
        u[0] = f.one();
        u[1] = f.one();
        let mut v = f.vec_zero(6);
        v[2] = f.one();
        v[3] = f.one();
        let g = q.reflection(&u).unwrap().mul(&q.reflection(&v).unwrap());
        let fs = factor_into_reflections(&q, &g).unwrap();
        assert_eq!(fs.len() % 2, 0);
        let prod = fs.iter().fold(Matrix::identity(f, 6), |acc, w| acc.mul(&q.reflection(w).unwrap()));
        assert_eq!(prod, g, "{f}");
    }
}
