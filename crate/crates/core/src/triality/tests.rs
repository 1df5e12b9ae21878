// SPDX-License-Identifier: Apache-2.0
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::clifford::{omega_membership, spin_membership, PgoBasis};
use crate::compalg::{automorphism_check, make_split, CompositionAlgebra};
use crate::composition::{similitude_multiplier, SimilitudeTriple};
use crate::quadform::SearchConfig;

fn zorn(f: FieldSpec) -> TrialitarianTripleSplit {
    make_triple(make_split(8, f).unwrap().composition()).unwrap()
}

fn random_anisotropic(t: &TrialitarianTripleSplit, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    let f = t.field();
    let q = t.composition().q(1);
    loop {
        let v: Vec<Scalar> = (0..8).map(|_| f.random(rng, 2)).collect();
        if !q.eval(&v).is_zero() {
            return v;
        }
    }
}

/// A product of `2k` reflections, `1 ≤ k ≤ 2`.
fn random_proper_isometry(t: &TrialitarianTripleSplit, rng: &mut ChaCha8Rng) -> Matrix {
    let q = t.composition().q(1);
    let k = rng.gen_range(1..=2);
    let mut g = Matrix::identity(t.field(), 8);
    for _ in 0..2 * k {
        g = g.mul(&q.reflection(&random_anisotropic(t, rng)).unwrap());
    }
    g
}

#[test]
fn derived_triple_has_period_three() {
    for f in FieldSpec::defaults() {
        let t = zorn(f);
        let d1 = derived_triple(&t).unwrap();
        let d3 = derived_triple(&derived_triple(&d1).unwrap()).unwrap();
        assert_eq!(d3.composition(), t.composition(), "{f}");
        assert_eq!(d1.composition(), &t.composition().derive().unwrap());
        // C₀(α′) acts on V₃ ⊕ V₁ and sends z₊′ to (1, 0).
        let (zp, zm) = d1.polarization();
        let id = Matrix::identity(f, 8);
        assert_eq!(d1.alpha().even_image(zp).unwrap(), (id.clone(), Matrix::zeros(f, 8, 8)));
        assert_eq!(d1.alpha().even_image(zm).unwrap(), (Matrix::zeros(f, 8, 8), id));
    }
}

#[test]
fn make_triple_rejects_bad_input() {
    let f = FieldSpec::Prime(3);
    let quat = make_split(4, f).unwrap();
    assert!(matches!(make_triple(quat.composition()), Err(Error::DimensionMismatch(_))));
    let z = make_split(8, f).unwrap();
    let bad = z.composition().perturbed(0, 0, 0, &f.one());
    assert!(matches!(make_triple(&bad), Err(Error::NotComposition(_))));
}

#[test]
fn theta_maps_are_bijective_lie_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    for f in [FieldSpec::Rationals, FieldSpec::Prime(3), FieldSpec::Prime(2)] {
        let t = zorn(f);
        let th = theta_maps(&t).unwrap();
        for map in [&th.plus, &th.minus] {
            assert_eq!(map.matrix().rows(), 28);
            assert_eq!(map.matrix().rank(), 28, "{f}");
            let pairs: Vec<(usize, usize)> = (0..30).map(|_| (rng.gen_range(0..28), rng.gen_range(0..28))).collect();
            assert!(map.lie_hom_check(&pairs).unwrap().pass(), "{f}");
        }
        assert!(th.plus.inverse().unwrap().after(&th.plus).unwrap().is_identity());
    }
}

#[test]
fn theta_kills_scalars() {
    let f = FieldSpec::Prime(5);
    let t = zorn(f);
    let th = theta_maps(&t).unwrap();
    let g = th.plus.source().basis()[3].clone();
    let shifted = g.add(&Matrix::scalar(f, 8, &f.int(2)));
    assert_eq!(th.plus.apply(&g).unwrap(), th.plus.apply(&shifted).unwrap());
    assert_eq!(PgoBasis::new(t.composition().q(1)).dim(), 28);
}

#[test]
fn theta_relations_hold() {
    for f in FieldSpec::defaults() {
        let r = verify_theta_relations(&zorn(f)).unwrap();
        assert!(r.pass(), "{f}: {:?}", r.first_failure());
        assert_eq!(r.checks.len(), 15);
    }
}

#[test]
fn theta_relations_on_a_rescaled_triple() {
    let f = FieldSpec::Prime(5);
    let c = make_split(8, f).unwrap().composition().rescaled(&[f.int(2), f.int(3), f.one()]).unwrap();
    let t = make_triple(&c).unwrap();
    let r = verify_theta_relations(&t).unwrap();
    assert!(r.pass(), "{:?}", r.first_failure());
}

#[test]
fn omega_triples_are_lie_similitudes() {
    for f in FieldSpec::defaults() {
        let r = differential_consistency(&zorn(f)).unwrap();
        assert!(r.pass(), "{f}: {:?}", r.first_failure());
    }
}

#[test]
fn lifts_are_unique() {
    for f in FieldSpec::defaults() {
        assert!(lift_uniqueness_test(&zorn(f)).unwrap(), "{f}");
    }
    let f = FieldSpec::Rationals;
    let t = zorn(f);
    let span = crate::clifford::lift_generation_check(t.algebra()).unwrap();
    assert_eq!(span.span_dim, 128);
    assert!(span.restricted_span_dim < 128);
}

#[test]
fn lift_of_identity_is_identity() {
    for f in FieldSpec::defaults() {
        let t = zorn(f);
        let id = Matrix::identity(f, 8);
        let l = triality_lift_isometry(&t, &id).unwrap();
        assert!(l.factors.is_empty());
        assert_eq!(l.g2, id);
        assert_eq!(l.g3, id);
        assert!(l.certificate.pass());
    }
}

#[test]
fn lift_of_two_reflections() {
    let f = FieldSpec::Prime(3);
    let t = zorn(f);
    let q = t.composition().q(1);
    let u = vec![f.int(1), f.int(0), f.int(1), f.int(0), f.int(2), f.int(0), f.int(0), f.int(1)];
    let v = vec![f.int(0), f.int(1), f.int(0), f.int(0), f.int(1), f.int(0), f.int(1), f.int(0)];
    assert!(!q.eval(&u).is_zero() && !q.eval(&v).is_zero());
    let g1 = q.reflection(&u).unwrap().mul(&q.reflection(&v).unwrap());
    let l = triality_lift_isometry(&t, &g1).unwrap();
    assert!(l.certificate.pass());
    assert_eq!(crate::clifford::chi(&l.xi), Some(g1.clone()));
    // Independent route: ξ = uv directly.
    let xi = t.algebra().vector(&u).mul(&t.algebra().vector(&v));
    assert_eq!(crate::clifford::chi(&xi), Some(g1));
    let (p, m) = t.alpha().even_image(&xi).unwrap();
    assert!(l.g2.proportional_to(&p).is_some());
    assert!(l.g3.proportional_to(&m).is_some());
}

#[test]
fn random_lifts_certify_over_f5() {
    let f = FieldSpec::Prime(5);
    let t = zorn(f);
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for k in 0..20 {
        let g1 = random_proper_isometry(&t, &mut rng);
        let l = triality_lift_isometry(&t, &g1).unwrap();
        assert!(l.certificate.pass(), "case {k}: {:?}", l.certificate);
    }
}

#[test]
fn lifts_are_multiplicative_up_to_scalars() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for f in [FieldSpec::Prime(5), FieldSpec::Prime(2), FieldSpec::Rationals] {
        let t = zorn(f);
        for _ in 0..4 {
            let g = random_proper_isometry(&t, &mut rng);
            let h = random_proper_isometry(&t, &mut rng);
            let (lg, lh) = (triality_lift_isometry(&t, &g).unwrap(), triality_lift_isometry(&t, &h).unwrap());
            let lgh = triality_lift_isometry(&t, &g.mul(&h)).unwrap();
            assert!(lgh.g2.proportional_to(&lg.g2.mul(&lh.g2)).is_some(), "{f}");
            assert!(lgh.g3.proportional_to(&lg.g3.mul(&lh.g3)).is_some(), "{f}");
        }
    }
}

#[test]
fn improper_isometries_do_not_lift() {
    let f = FieldSpec::Prime(3);
    let t = zorn(f);
    let q = t.composition().q(1);
    let r = q.reflection(&find_aniso(q)).unwrap();
    assert!(matches!(triality_lift_isometry(&t, &r), Err(Error::PolarizationMismatch)));
    let f5 = FieldSpec::Prime(5);
    let two = Matrix::scalar(f5, 8, &f5.int(2));
    assert!(matches!(triality_lift_isometry(&zorn(f5), &two), Err(Error::FactorizationFailed(_))));
}

fn find_aniso(q: &crate::quadform::QuadForm) -> Vec<Scalar> {
    crate::quadform::find_anisotropic(q).unwrap()
}

#[test]
fn local_triality_at_identity() {
    for f in FieldSpec::defaults() {
        let t = zorn(f);
        let id = Matrix::identity(f, 8);
        let s = local_triality_solve(&t, &id).unwrap();
        assert!(s.certificate.pass());
        assert_eq!(s.mu_dot, f.int(2));
        // The solutions are exactly (aI, bI) with a + b = −1.
        let a = s.g2.scalar_value().expect("scalar");
        let b = s.g3.scalar_value().expect("scalar");
        assert_eq!(&a + &b, -f.one(), "{f}");
        let zero = Matrix::zeros(f, 8, 8);
        assert!(local_triality_holds(&t, &id, &Matrix::scalar(f, 8, &-f.one()), &zero).unwrap());
        let ii = local_triality_holds(&t, &id, &id, &id).unwrap();
        assert_eq!(ii, f.characteristic() == 3, "{f}");
    }
}

#[test]
fn local_triality_for_rank_two_map() {
    for f in [FieldSpec::Prime(2), FieldSpec::Rationals, FieldSpec::Prime(7)] {
        let t = zorn(f);
        let q = t.composition().q(1);
        let u = f.unit_vec(8, 1);
        let v = vec![f.int(1), f.int(0), f.int(1), f.int(0), f.int(0), f.int(1), f.int(0), f.int(0)];
        let g1 = q.tensor(&u, &v).sub(&q.tensor(&v, &u));
        let s = local_triality_solve(&t, &g1).unwrap();
        assert!(s.mu_dot.is_zero());
        assert!(s.certificate.pass());
        assert_eq!(s.kernel.len(), 1);
        let (k2, k3) = &s.kernel[0];
        assert!(local_triality_holds(&t, &g1, &s.g2.add(k2), &s.g3.add(k3)).unwrap());
        assert!(!local_triality_holds(&t, &g1, &s.g2.add(k2), &s.g3).unwrap());
    }
}

#[test]
fn local_triality_rejects_non_go() {
    let f = FieldSpec::Rationals;
    let t = zorn(f);
    let mut g = Matrix::zeros(f, 8, 8);
    g.set(0, 0, f.one());
    assert!(matches!(local_triality_solve(&t, &g), Err(Error::NotInGo)));
}

#[test]
fn extend_identity() {
    for f in FieldSpec::defaults() {
        let t = zorn(f);
        let id = Matrix::identity(f, 8);
        let s = extend_similitude(&t, &t, &id).unwrap();
        assert_eq!(s, SimilitudeTriple::identity(t.composition()));
    }
}

#[test]
fn extend_omega_image() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    for f in [FieldSpec::Prime(3), FieldSpec::Prime(2), FieldSpec::Rationals] {
        let t = zorn(f);
        let alg = t.algebra();
        for _ in 0..3 {
            let xi = alg.vector(&random_anisotropic(&t, &mut rng)).mul(&alg.vector(&random_anisotropic(&t, &mut rng)));
            let om = omega_membership(&xi).unwrap().unwrap();
            let s = extend_similitude(&t, &t, &om.chi0).unwrap();
            let (p, m) = t.alpha().even_image(&xi).unwrap();
            assert!(s.g[1].proportional_to(&p).is_some(), "{f}");
            assert!(s.g[2].proportional_to(&m).is_some(), "{f}");
            assert!(s.lambda[2].is_one());
        }
    }
}

#[test]
fn extend_rejects_improper() {
    for f in [FieldSpec::Prime(3), FieldSpec::Rationals] {
        let t = zorn(f);
        let q = t.composition().q(1);
        let r = q.reflection(&find_aniso(q)).unwrap();
        assert!(matches!(extend_similitude(&t, &t, &r), Err(Error::PolarizationMismatch)));
    }
}

#[test]
fn extend_between_rescaled_triples() {
    let f = FieldSpec::Rationals;
    let c = make_split(8, f).unwrap().composition().clone();
    let lambda = [f.int(2), f.int(3), f.ratio(1, 5).unwrap()];
    let ct = c.rescaled(&lambda).unwrap();
    let (t, tt) = (make_triple(&c).unwrap(), make_triple(&ct).unwrap());
    let id = Matrix::identity(f, 8);
    let s = extend_similitude(&t, &tt, &id).unwrap();
    assert_eq!(similitude_multiplier(&c, &ct, &s.g), Some(s.lambda.clone()));
    assert!(s.lambda[2].is_one());
}

#[test]
fn isomorphism_witnesses_over_finite_fields() {
    let cfg = SearchConfig::default();
    for f in [FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Prime(5)] {
        let c = make_split(8, f).unwrap().composition().clone();
        let a = if f.is_char2() { f.one() } else { f.int(2) };
        let targets = [
            c.derive().unwrap(),
            c.rescaled(&[a.clone(), f.one(), a.inv().unwrap()]).unwrap(),
            c.swapped(),
        ];
        for ct in targets {
            let w = isomorphism_witness(&c, &ct, &cfg).unwrap();
            assert!(w.is_isomorphism());
            assert_eq!(similitude_multiplier(&c, &ct, &w.g), Some([f.one(), f.one(), f.one()]));
        }
    }
    let q = FieldSpec::Rationals;
    let c = make_split(8, q).unwrap().composition().clone();
    assert!(isomorphism_witness(&c, &c, &cfg).is_err());
}

#[test]
fn center_formulas() {
    for f in FieldSpec::defaults() {
        let r = psi_center_formulas(&zorn(f)).unwrap();
        assert!(r.pass(), "{f}: {:?}", r.first_failure());
        let cases = if f.is_char2() { 1 } else { 4 };
        assert_eq!(r.checks[0].checked, cases);
    }
}

#[test]
fn center_formula_at_minus_one_one() {
    let f = FieldSpec::Rationals;
    let t = zorn(f);
    let (zp, zm) = t.polarization();
    let z = zp.scale(&-f.one()).add(zm);
    let om = omega_membership(&z).unwrap().unwrap();
    assert_eq!(om.chi0, Matrix::scalar(f, 8, &-f.one()));
    let (p, m) = t.alpha().even_image(&z).unwrap();
    assert_eq!(p, Matrix::scalar(f, 8, &-f.one()));
    assert_eq!(m, Matrix::identity(f, 8));
    // Σ image: z₂₊ − z₂₋.
    let dt = derived_triple(&t).unwrap();
    let (zp2, zm2) = dt.polarization();
    let z2 = zp2.sub(zm2);
    let om2 = omega_membership(&z2).unwrap().unwrap();
    let (p2, m2) = dt.alpha().even_image(&z2).unwrap();
    assert_eq!((om2.chi0, p2, m2), (Matrix::scalar(f, 8, &-f.one()), Matrix::identity(f, 8), Matrix::scalar(f, 8, &-f.one())));
}

fn split_octonions(f: FieldSpec) -> CompositionAlgebra {
    make_split(8, f).unwrap()
}

#[test]
fn psi_a_of_one_is_identity() {
    for f in FieldSpec::defaults() {
        let a = split_octonions(f);
        let psi = PsiA::new(&a).unwrap();
        let one = psi.triple().algebra().one();
        let id = Matrix::identity(f, 8);
        assert_eq!(psi.apply(&one).unwrap(), [id.clone(), id.clone(), id]);
    }
}

#[test]
fn psi_a_round_trips_over_f5() {
    let f = FieldSpec::Prime(5);
    let a = split_octonions(f);
    let psi = PsiA::new(&a).unwrap();
    let t = psi.triple().clone();
    let alg = t.algebra().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    for k in 0..20 {
        let count = if k % 2 == 0 { 2 } else { 4 };
        let vs: Vec<Vec<Scalar>> = (0..count).map(|_| random_anisotropic(&t, &mut rng)).collect();
        let mut xi = alg.vector_product(&vs);
        if k % 5 == 0 {
            let (zp, zm) = t.polarization();
            xi = xi.mul(&zp.scale(&f.int(2)).add(zm));
        }
        let f3 = psi.apply(&xi).unwrap();
        let back = psi.invert(&f3).unwrap();
        assert_eq!(back, xi, "case {k}");
        assert_eq!(psi.apply(&back).unwrap(), f3);
    }
}

#[test]
fn psi_a_on_spin_is_automorphism_grade() {
    let cfg = SearchConfig::default();
    for f in [FieldSpec::Prime(5), FieldSpec::Prime(3), FieldSpec::Rationals] {
        let a = split_octonions(f);
        let psi = PsiA::new(&a).unwrap();
        let alg = psi.triple().algebra().clone();
        let q = a.q();
        let v = crate::compalg::norm_one_vector(q, &cfg).unwrap();
        let w = vec![f.int(1), f.int(1), f.int(0), f.int(0), f.int(1), f.int(0), f.int(0), f.int(2)];
        assert!(q.eval(&w).is_one());
        let xi = alg.vector(&v).mul(&alg.vector(&w));
        assert!(spin_membership(&omega_membership(&xi).unwrap().unwrap()));
        let fs = psi.apply(&xi).unwrap();
        assert_eq!(psi.multiplier(&fs), Some([f.one(), f.one(), f.one()]));
    }
}

#[test]
fn psi_a_input_validation() {
    let f = FieldSpec::Prime(5);
    let a = split_octonions(f);
    let psi = PsiA::new(&a).unwrap();
    let alg = psi.triple().algebra().clone();
    let e = alg.gen(0).mul(&alg.gen(7));
    let not_omega = alg.one().add(&e.scale(&f.int(2))).add(&alg.gen(1).mul(&alg.gen(4)));
    assert!(matches!(psi.apply(&not_omega), Err(Error::NotInOmega)));
    let id = Matrix::identity(f, 8);
    let bad = [id.clone(), id.scale(&f.int(2)), id.clone()];
    assert!(matches!(psi.invert(&bad), Err(Error::NotAutotopy)));
    // An automorphism g of A gives the autotopy (g, g, g).
    let m = Matrix::from_ints(f, &[&[1, 1, 0], &[0, 1, 2], &[0, 0, 1]]);
    let mut g = Matrix::zeros(f, 8, 8);
    g.set(0, 0, f.one());
    g.set(7, 7, f.one());
    g.set_block(1, 1, &m);
    g.set_block(4, 4, &m.inverse().unwrap().transpose());
    assert!(automorphism_check(&a, &g));
    let auto = [g.clone(), g.clone(), g];
    let xi = psi.invert(&auto).unwrap();
    assert_eq!(psi.apply(&xi).unwrap(), auto);
}
