mod common;

use common::criteria::{cax2, cax2_instances, criterion_4, criterion_5, criterion_6};
use common::*;
use nashcert::blowup::{
    admissible_weight, chart, charts, conclude_non_domination, singular_points_on_e,
    strict_transform_factorization, val_e, ValuationRelation,
};
use nashcert::cax2::{select_weight, validate_cax2};
use nashcert::dsl::parse_polynomial;
use nashcert::num::{q, qi};
use nashcert::poly::{GroupAction, Weight};
use num_traits::Zero;

fn pass(r: Result<String, String>) {
    if let Err(e) = r {
        panic!("{e}");
    }
}

#[test]
fn discrepancy_one_half() {
    pass(criterion_4());
}

#[test]
fn case1_tau4_charts() {
    pass(criterion_5());
}

#[test]
fn quotient_indices() {
    pass(criterion_6());
}

#[test]
fn strict_transforms_match_oracle_everywhere() {
    for (name, hq, w) in cax2_instances() {
        for model in charts(&hq, &w).unwrap() {
            let i = model.index - 1;
            let pulled = o_pullback(&oracle(hq.phi()), i, &w);
            let k = o_min_exponent(&pulled, i).unwrap();
            assert_eq!(k, model.wt_phi, "{name} chart {}", model.index);
            let strict: OPoly = pulled
                .into_iter()
                .map(|(mut e, c)| {
                    e[i] = &e[i] - &k;
                    (e, c)
                })
                .collect();
            assert_eq!(oracle(&model.strict_phi), strict, "{name} chart {}", model.index);
        }
    }
}

#[test]
fn every_reported_point_is_singular_or_fixed() {
    for (name, hq, w) in cax2_instances() {
        for model in charts(&hq, &w).unwrap() {
            let r = singular_points_on_e(&model).unwrap();
            let i = model.index - 1;
            for p in r.points.iter().chain(&r.quotient_points) {
                assert!(p.coordinates[i].is_zero(), "{name}: point off E");
                assert!(
                    o_eval(&oracle(&model.strict_phi), &p.coordinates).is_zero(),
                    "{name}: point off the strict transform"
                );
            }
            for p in &r.quotient_points {
                assert!(p.local_index > 1, "{name}: quotient point with trivial stabilizer");
            }
        }
    }
}

#[test]
fn valuation_of_h_is_one_in_every_case() {
    let h = parse_polynomial("x^2 + y^2 + z^2 + u^2").unwrap();
    for (name, _, w) in cax2_instances() {
        let v = val_e(&h, &w).unwrap();
        // x^2 has weight >= 2 * (tau0/4) >= 2, z^2 has weight 1
        assert_eq!(v, qi(1), "{name}");
        assert!(conclude_non_domination(&ValuationRelation::symbolic(v)).is_ok());
    }
}

#[test]
fn inadmissible_weights_are_rejected() {
    let hq = cax2("z^4 + u^4");
    for entries in [[2, 2, 2, 2], [1, 1, 1, 1], [4, 2, 2, 2]] {
        let w = Weight::new(2, entries).unwrap();
        assert!(!admissible_weight(hq.action(), &w).unwrap(), "{entries:?}");
        assert!(chart(&hq, &w, 1).is_err());
    }
    assert!(admissible_weight(&GroupAction::trivial(), &Weight::new(1, [1, 2, 3, 4]).unwrap())
        .unwrap());
}

#[test]
fn fractional_exponents_in_pullbacks() {
    // z has weight 1/2, so in the x-chart z -> x^(1/2) z
    let w = Weight::new(2, [2, 3, 1, 1]).unwrap();
    let f = strict_transform_factorization(&parse_polynomial("z").unwrap(), &w, 1).unwrap();
    assert_eq!(f.k, q(1, 2));
    assert_eq!(f.g, parse_polynomial("z").unwrap());
    let form = validate_cax2(&cax2("z^4 + u^4")).unwrap();
    assert_eq!(select_weight(&form), w);
}
