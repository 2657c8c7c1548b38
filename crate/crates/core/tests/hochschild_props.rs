use ainf_core::hochschild::*;
use ainf_core::scalars::Rat;
use proptest::prelude::*;

const N: usize = 3;

fn cochain() -> impl Strategy<Value = Cochain> {
    let term = (prop::collection::vec(0u8..8, 0..=3), 0u8..8, -3i64..=3);
    prop::collection::vec(term, 1..5).prop_map(|ts| {
        let mut c = Cochain::zero(N);
        for (ins, out, k) in ts {
            c.add_term(CochainKey { inputs: ins, hbar: 0, out }, Rat::from_int(k));
        }
        c
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn differential_squares_to_zero(phi in cochain()) {
        prop_assert!(hochschild_d(&hochschild_d(&phi)).is_zero());
    }

    #[test]
    fn differential_is_bracket_with_product(phi in cochain()) {
        let m = Cochain::product(N);
        prop_assert_eq!(hochschild_d(&phi), gerstenhaber(&m, &phi));
    }

    #[test]
    fn bracket_graded_antisymmetric(phi in cochain(), psi in cochain()) {
        prop_assert!(antisymmetry_defect(&phi, &psi).is_zero());
    }

    #[test]
    fn bracket_jacobi(phi in cochain(), psi in cochain(), chi in cochain()) {
        prop_assert!(jacobi_defect(&phi, &psi, &chi).is_zero());
    }

    #[test]
    fn differential_is_derivation_of_bracket(phi in cochain(), psi in cochain()) {
        // ∂[φ,ψ] = [∂φ,ψ] + (−1)^{|φ|}[φ,∂ψ]
        for (p, x) in homogeneous_parts(&phi) {
            let lhs = hochschild_d(&gerstenhaber(&x, &psi));
            let r = gerstenhaber(&hochschild_d(&x), &psi)
                .add(&gerstenhaber(&x, &hochschild_d(&psi)).scale(&Rat::from_int(if p % 2 == 0 { 1 } else { -1 })));
            prop_assert_eq!(lhs, r);
        }
    }

    #[test]
    fn hkr_is_additive(phi in cochain(), psi in cochain()) {
        prop_assert_eq!(hkr(&phi.add(&psi)), hkr(&phi).add(&hkr(&psi)));
    }
}
