mod common;

use common::*;
use nashcert::blowup::{cax2_action, Hyperquotient};
use nashcert::cax2::{certify_nash, CertifyOptions, Verdict};
use nashcert::dsl::{parse_polynomial, parse_singularity, print_singularity, SingularityFile};
use nashcert::num::qi;
use nashcert::poly::{Monomial, SparsePoly, Var};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(PROPERTY_CASES))]

    #[test]
    fn substitution_homomorphism(
        p in nonzero_poly_strategy(4, 3),
        r in nonzero_poly_strategy(4, 3),
        w in weight_strategy(),
        chart in 0usize..4,
    ) {
        check_substitution_homomorphism(&p, &r, &w, chart)?;
    }

    #[test]
    fn wt_additivity(
        p in nonzero_poly_strategy(4, 3),
        r in nonzero_poly_strategy(4, 3),
        w in weight_strategy(),
    ) {
        check_wt_additivity(&p, &r, &w)?;
    }

    #[test]
    fn factorization_exponent_is_wt(
        p in nonzero_poly_strategy(5, 4),
        w in weight_strategy(),
        chart in 0usize..4,
    ) {
        check_factor_exponent(&p, &w, chart)?;
    }

    #[test]
    fn leibniz_rule(p in nonzero_poly_strategy(4, 3), r in nonzero_poly_strategy(4, 3)) {
        check_leibniz(&p, &r)?;
    }

    #[test]
    fn perfect_square_round_trip(p in binary_form_strategy(), s in 1i64..=5, twist in any::<bool>()) {
        check_perfect_square(&p, s, twist)?;
    }

    #[test]
    fn polynomial_print_parse(p in poly_strategy(6, 5)) {
        prop_assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn singularity_print_parse(f in invariant_f()) {
        let phi = SparsePoly::var(Var::X).pow(2) + SparsePoly::var(Var::Y).pow(2) + f;
        let file = SingularityFile {
            name: Some("random".into()),
            hq: Hyperquotient::new(phi, cax2_action()).unwrap(),
            weight: None,
            commands: vec!["cax2 certify".into()],
        };
        let text = print_singularity(&file);
        let back = parse_singularity(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(print_singularity(&back), text);
    }
}

/// Invariant `f` in `(z, u)^4`: even total degree between 4 and 8.
fn invariant_f() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((-3i64..=3, 2u64..=4, 0u64..=8), 1..=4)
        .prop_map(|ts| {
            SparsePoly::from_terms(ts.into_iter().map(|(c, half, a)| {
                let d = 2 * half;
                let a = a.min(d);
                (Monomial::integral([0, 0, a, d - a]), qi(c))
            }))
        })
        .prop_filter("nonzero", |f| !f.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// On random cAx/2 inputs the certificate may be incomplete or the input
    /// rejected, but a check that the construction guarantees never fails.
    #[test]
    fn certify_never_fails(f in invariant_f()) {
        let phi = SparsePoly::var(Var::X).pow(2) + SparsePoly::var(Var::Y).pow(2) + f;
        let hq = Hyperquotient::new(phi, cax2_action()).unwrap();
        if let Ok(cert) = certify_nash(&hq, &CertifyOptions::default()) {
            prop_assert_ne!(cert.verdict, Verdict::Failed, "issues: {:?}", cert.issues);
            prop_assert_eq!(cert.discrepancy, qi(1) / qi(2));
        }
    }
}
