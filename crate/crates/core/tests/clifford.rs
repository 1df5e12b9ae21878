// SPDX-License-Identifier: Apache-2.0
use compquad::clifford::{build_rep, center_even, lie_ledger, lift_generation_check, CliffordAlgebra, Parity, Semitrace};
use compquad::quadform::QuadForm;
use compquad::FieldSpec;

fn octonion_space(f: FieldSpec) -> std::sync::Arc<CliffordAlgebra> {
    CliffordAlgebra::new(&QuadForm::hyperbolic(f, 4)).unwrap()
}

#[test]
fn lie_ledger_dimension_eight() {
    for f in FieldSpec::defaults() {
        let alg = octonion_space(f);
        let l = lie_ledger(&alg).unwrap();
        assert_eq!((l.dim_o, l.dim_go, l.dim_pgo), (28, 29, 28), "{f}");
        assert_eq!((l.dim_gamma, l.dim_spin, l.dim_omega), (29, 28, 30), "{f}");
        assert!(l.gamma_closed && l.ker_chi_is_scalars && l.ker_chi0_is_trace_zero, "{f}");
        assert!(l.chi0_onto_go && l.multiplier_compatible, "{f}");
        match l.char2 {
            Some(c) => {
                assert!(c.center_in_spin && c.spin_pgo_sequence && c.trp_lie_hom);
                assert!(c.diagram_exact && c.diagram_commutes);
            }
            None => assert_eq!(l.omega_is_gamma_plus_center, Some(true)),
        }
    }
}

#[test]
fn lift_generators_span_even_algebra() {
    for f in FieldSpec::defaults() {
        let s = lift_generation_check(&octonion_space(f)).unwrap();
        assert!(s.relations_hold);
        assert_eq!((s.span_dim, s.target_dim), (128, 128));
        assert_eq!(s.restricted_span_dim, 32);
    }
}

#[test]
fn semitrace_of_one_is_half_the_degree() {
    for f in [FieldSpec::Rationals, FieldSpec::Prime(3), FieldSpec::Prime(7)] {
        let alg = octonion_space(f);
        let rep = build_rep(&alg).unwrap();
        assert_eq!(rep.semitrace(&alg.one(), Parity::Full).unwrap(), Semitrace::Full(f.int(8)));
        assert_eq!(rep.semitrace(&alg.one(), Parity::Even).unwrap(), Semitrace::Even(f.int(4), f.int(4)));
        let (zp, zm) = center_even(&alg).unwrap();
        assert_eq!(rep.trd(&zp).unwrap(), f.int(8));
        assert_eq!(rep.trd(&zm).unwrap(), f.int(8));
    }
}
