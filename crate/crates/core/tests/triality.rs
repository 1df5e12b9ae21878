// SPDX-License-Identifier: Apache-2.0
use compquad::compalg::make_split;
use compquad::quadform::QuadForm;
use compquad::triality::{extend_similitude, make_triple, triality_lift_isometry};
use compquad::{Error, FieldSpec, Matrix};

#[test]
fn minus_identity_lifts_over_every_field() {
    for f in FieldSpec::defaults() {
        let t = make_triple(make_split(8, f).unwrap().composition()).unwrap();
        let minus = Matrix::scalar(f, 8, &-f.one());
        let l = triality_lift_isometry(&t, &minus).unwrap();
        assert!(l.certificate.pass(), "{f}");
    }
}

#[test]
fn reflections_swap_the_polarization() {
    for f in [FieldSpec::Prime(2), FieldSpec::Prime(5), FieldSpec::Rationals] {
        let t = make_triple(make_split(8, f).unwrap().composition()).unwrap();
        let mut v = f.vec_zero(8);
        v[0] = f.one();
        v[7] = f.one();
        let r = QuadForm::reflection(t.composition().q(1), &v).unwrap();
        assert!(matches!(triality_lift_isometry(&t, &r), Err(Error::PolarizationMismatch)));
        assert!(matches!(extend_similitude(&t, &t, &r), Err(Error::PolarizationMismatch)));
    }
}
