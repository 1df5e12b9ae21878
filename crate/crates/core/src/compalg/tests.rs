// SPDX-License-Identifier: Apache-2.0
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::composition::identity_suite;
use crate::quadform::{is_hyperbolic, QuadForm};

fn basis(f: FieldSpec, n: usize) -> Vec<Vec<Scalar>> {
    (0..n).map(|i| f.unit_vec(n, i)).collect()
}

#[test]
fn split_algebras_pass_everything() {
    for f in FieldSpec::defaults() {
        for n in [2, 4, 8] {
            let a = make_split(n, f).unwrap();
            assert!(a.composition().verify().pass(), "{f} n={n}");
            let r = identity_suite(a.composition());
            assert!(r.pass(), "{f} n={n}: {:?}", r.first_failure());
            assert!(is_hyperbolic(a.q()).unwrap());
            assert!(a.q().eval(a.unit().unwrap()).is_one());
        }
    }
    assert!(make_split(3, FieldSpec::Rationals).is_err());
}

#[test]
fn zorn_norm_is_multiplicative_on_random_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for f in FieldSpec::defaults() {
        let a = make_split(8, f).unwrap();
        for _ in 0..20 {
            let x: Vec<Scalar> = (0..8).map(|_| f.random(&mut rng, 5)).collect();
            let y: Vec<Scalar> = (0..8).map(|_| f.random(&mut rng, 5)).collect();
            let direct = |v: &[Scalar]| &v[0] * &v[7] - crate::exactfield::dot(&v[1..4], &v[4..7]);
            assert_eq!(direct(&a.mul(&x, &y)), direct(&x) * direct(&y));
        }
    }
}

#[test]
fn quaternion_product_is_matrix_product() {
    let f = FieldSpec::Prime(5);
    let a = make_split(4, f).unwrap();
    let x = vec![f.int(1), f.int(2), f.int(3), f.int(4)];
    let y = vec![f.int(0), f.int(1), f.int(1), f.int(2)];
    let mx = Matrix::from_rows(f, 2, &[x[0..2].to_vec(), x[2..4].to_vec()]).unwrap();
    let my = Matrix::from_rows(f, 2, &[y[0..2].to_vec(), y[2..4].to_vec()]).unwrap();
    let p = mx.mul(&my);
    assert_eq!(a.mul(&x, &y), vec![p.get(0, 0).clone(), p.get(0, 1).clone(), p.get(1, 0).clone(), p.get(1, 1).clone()]);
}

#[test]
fn para_algebras_are_symmetric() {
    for f in FieldSpec::defaults() {
        for n in [2, 4, 8] {
            let a = make_split(n, f).unwrap();
            let p = para(&a).unwrap();
            assert!(p.is_symmetric());
            assert!(!p.is_unital());
            let e = a.unit().unwrap();
            assert_eq!(p.mul(e, e), e.to_vec());
            for x in basis(f, n) {
                let xb = a.bar(&x).unwrap();
                assert_eq!(p.mul(e, &x), xb);
                assert_eq!(p.mul(&x, e), xb);
            }
            assert!(identity_suite(p.composition()).pass());
        }
    }
    let p = para(&para(&make_split(4, FieldSpec::Rationals).unwrap()).unwrap());
    assert!(matches!(p, Err(Error::NotUnital)));
}

#[test]
fn para_octonion_product_is_not_associative() {
    let f = FieldSpec::Rationals;
    let p = para(&make_split(8, f).unwrap()).unwrap();
    let b = basis(f, 8);
    let found = b.iter().any(|x| {
        b.iter()
            .any(|y| b.iter().any(|z| p.mul(&p.mul(x, y), z) != p.mul(x, &p.mul(y, z))))
    });
    assert!(found);
}

#[test]
fn derived_products_match_closed_forms() {
    for f in FieldSpec::defaults() {
        for n in [2, 4, 8] {
            let a = make_split(n, f).unwrap();
            let d = derived_products(&a).unwrap();
            assert_eq!(d.agree, [true, true], "{f} n={n}");
            let e = a.unit().unwrap();
            for x in basis(f, n) {
                let xb = a.bar(&x).unwrap();
                assert_eq!(d.first.mul(&x, e), xb);
                assert_eq!(d.second.mul(e, &x), xb);
            }
        }
    }
    let p = para(&make_split(4, FieldSpec::Prime(3)).unwrap()).unwrap();
    assert!(matches!(derived_products(&p), Err(Error::NotUnital)));
}

#[test]
fn kaplansky_at_unit_is_identity() {
    for f in FieldSpec::defaults() {
        let a = make_split(8, f).unwrap();
        let k = kaplansky_at(&a, a.unit().unwrap()).unwrap();
        assert_eq!(k.algebra.composition(), a.composition());
        assert!(k.iso.is_isomorphism());
    }
}

#[test]
fn kaplansky_unitalizes_para_algebras() {
    let cfg = SearchConfig::default();
    for f in FieldSpec::defaults() {
        for n in [2, 4, 8] {
            let a = make_split(n, f).unwrap();
            let p = para(&a).unwrap();
            let k = kaplansky(&p, &cfg).unwrap();
            assert!(k.algebra.is_unital());
            assert!(k.algebra.composition().verify().pass());
            assert_eq!(k.iso.lambda, [f.one(), f.one(), f.one()]);
            let v = isotopy_dictionary(&p, &k.algebra, &k.iso.g).unwrap();
            assert!(v.isotopy && v.consistent());
        }
    }
}

#[test]
fn norm_one_search_failures() {
    let f = FieldSpec::Rationals;
    // ⟨2⟩ does not represent 1 over Q.
    let q = QuadForm::diagonal(f, &[f.int(2)]).unwrap();
    assert!(matches!(norm_one_vector(&q, &SearchConfig::default()), Err(Error::NoNormOneVector)));
    let a = make_split(4, f).unwrap();
    let u = vec![f.int(1), f.zero(), f.zero(), f.int(2)];
    assert!(matches!(kaplansky_at(&a, &u), Err(Error::NoNormOneVector)));
}

fn random_invertible(f: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = Matrix::from_fn(f, n, n, |_, _| f.random(rng, 3));
        if m.rank() == n {
            return m;
        }
    }
}

#[test]
fn isotopy_and_similitude_verdicts_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cfg = SearchConfig::default();
    for f in FieldSpec::defaults() {
        let a = make_split(4, f).unwrap();
        let c = a.composition();
        let mut accepted = 0;
        for t in 0..50 {
            let f3 = if t % 2 == 0 {
                // Similitudes with λ₃ = 1 are isotopies.
                let l1 = f.random_nonzero(&mut rng, 3);
                let l2 = f.random_nonzero(&mut rng, 3);
                let w = crate::composition::multiplier_witness(c, &[l1, l2, f.one()], &cfg);
                match w {
                    Ok(w) => Some(w.g),
                    Err(Error::NotInMultiplierGroup) => None,
                    Err(e) => panic!("{e}"),
                }
            } else {
                None
            };
            let g = f3.unwrap_or_else(|| {
                [
                    random_invertible(f, 4, &mut rng),
                    random_invertible(f, 4, &mut rng),
                    random_invertible(f, 4, &mut rng),
                ]
            });
            let v = isotopy_dictionary(&a, &a, &g).unwrap();
            assert!(v.consistent(), "{f} trial {t}: {v:?}");
            if v.isotopy {
                accepted += 1;
                assert!(v.lambda.as_ref().unwrap()[2].is_one());
            }
        }
        assert!(accepted > 0, "{f}");
    }
}

#[test]
fn isotopy_identity() {
    let f = FieldSpec::Prime(3);
    let a = make_split(8, f).unwrap();
    let id = Matrix::identity(f, 8);
    let v = isotopy_dictionary(&a, &a, &[id.clone(), id.clone(), id]).unwrap();
    assert!(v.isotopy);
    assert_eq!(v.lambda, Some([f.one(), f.one(), f.one()]));
}

#[test]
fn zorn_automorphisms() {
    for f in FieldSpec::defaults() {
        let a = make_split(8, f).unwrap();
        assert!(automorphism_check(&a, &Matrix::identity(f, 8)));
        // (a, v; w, b) ↦ (a, Mv; M⁻ᵀw, b) with det M = 1.
        let m = Matrix::from_ints(f, &[&[1, 1, 0], &[0, 1, 2], &[0, 0, 1]]);
        let mit = m.inverse().unwrap().transpose();
        let mut g = Matrix::zeros(f, 8, 8);
        g.set(0, 0, f.one());
        g.set(7, 7, f.one());
        g.set_block(1, 1, &m);
        g.set_block(4, 4, &mit);
        assert!(automorphism_check(&a, &g), "{f}");
    }
}

#[test]
fn non_multiplicative_isometry_is_not_automorphism() {
    for f in [FieldSpec::Rationals, FieldSpec::Prime(3)] {
        let a = make_split(8, f).unwrap();
        let r = a.q().reflection(a.unit().unwrap()).unwrap();
        assert_eq!(similitude_check(a.q(), a.q(), &r), Some(f.one()));
        assert!(!automorphism_check(&a, &r));
        let b = basis(f, 8);
        let witness = b.iter().any(|x| b.iter().any(|y| r.mul_vec(&a.mul(x, y)) != a.mul(&r.mul_vec(x), &r.mul_vec(y))));
        assert!(witness);
    }
}
