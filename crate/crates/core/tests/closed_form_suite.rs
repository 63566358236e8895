//! Exact agreement between the closed-form registry and the invariant
//! profiles of the corresponding family instances, across every valid order
//! up to 30.

use dit_core::families::{
    closed_form, make_broom, make_crossed_cycle, make_cycle, make_path, make_spider4,
    ClosedFormId,
};
use dit_core::invariants::invariant_profile;
use dit_core::rat::Rat;
use dit_core::{Graph, Profile};

fn profile(g: &Graph) -> Profile {
    invariant_profile(g).expect("family instances have profiles")
}

fn as_rat(x: u32) -> Rat {
    Rat::from_int(i128::from(x))
}

#[test]
fn path_average_distance() {
    for n in 2..=30 {
        let p = profile(&make_path(n).unwrap());
        assert_eq!(
            p.avg_distance,
            closed_form(ClosedFormId::LbarPath, n).unwrap(),
            "n={n}"
        );
    }
}

#[test]
fn path_proximity_by_parity() {
    for n in 2..=30 {
        let p = profile(&make_path(n).unwrap());
        let id = if n % 2 == 1 {
            ClosedFormId::PiPathOdd
        } else {
            ClosedFormId::PiPathEven
        };
        assert_eq!(p.proximity, closed_form(id, n).unwrap(), "n={n}");
    }
}

#[test]
fn path_ecc_remoteness_gap() {
    for n in 2..=30 {
        let p = profile(&make_path(n).unwrap());
        assert_eq!(
            p.avg_ecc - p.remoteness,
            closed_form(ClosedFormId::EccMinusRhoPath, n).unwrap(),
            "n={n}"
        );
    }
}

#[test]
fn odd_path_remoteness_radius_gap() {
    for n in (3..=29).step_by(2) {
        let p = profile(&make_path(n).unwrap());
        assert_eq!(
            p.remoteness - as_rat(p.radius),
            closed_form(ClosedFormId::RhoMinusRPathOdd, n).unwrap(),
            "n={n}"
        );
    }
}

#[test]
fn four_leg_spider_proximity() {
    for k in 1..=7 {
        let n = 4 * k + 1;
        let p = profile(&make_spider4(k).unwrap());
        assert_eq!(
            p.proximity,
            closed_form(ClosedFormId::PiSpider4, n).unwrap(),
            "n={n}"
        );
    }
}

/// The registered four-leg average distance, (3n²+10n+3)/(16n), is checked
/// against the built spider at every valid order up to 30.
///
/// The registered form agrees with the graph only at n = 5.  Summing the
/// spider's transmissions directly gives l̄ = (n+3)(5n−1)/(24n), and the two
/// expressions coincide exactly when (n−5)(n+3) = 0; already at n = 9 the
/// spider measures 22/9 against the registered 7/3.  The assertion is kept
/// as stated and this test therefore fails, documenting the defect rather
/// than hiding it.
#[test]
fn four_leg_spider_average_distance_matches_the_registry() {
    for k in 1..=7 {
        let n = 4 * k + 1;
        let p = profile(&make_spider4(k).unwrap());
        assert_eq!(
            p.avg_distance,
            closed_form(ClosedFormId::LbarSpider4, n).unwrap(),
            "n={n}"
        );
    }
}

#[test]
fn even_broom_remoteness_radius_gap() {
    for n in (4..=30).step_by(2) {
        let p = profile(&make_broom(n).unwrap());
        assert_eq!(
            p.remoteness - as_rat(p.radius),
            closed_form(ClosedFormId::RhoMinusRBroomEven, n).unwrap(),
            "n={n}"
        );
    }
}

/// The even branch of the ecc-remoteness bound is attained exactly by the
/// even cycle; the odd branch is a formula only (the odd cycle sits below
/// it), so only the even case is compared against a graph.
#[test]
fn even_cycle_attains_the_ecc_remoteness_bound() {
    for n in (4..=12).step_by(2) {
        let p = profile(&make_cycle(n).unwrap());
        assert_eq!(
            p.avg_ecc - p.remoteness,
            closed_form(ClosedFormId::Con2Bound, n).unwrap(),
            "n={n}"
        );
    }
}

#[test]
fn claimed_families_attain_the_remoteness_radius_bound() {
    for n in (4..=12).step_by(2) {
        let p = profile(&make_cycle(n).unwrap());
        assert_eq!(
            p.remoteness - as_rat(p.radius),
            closed_form(ClosedFormId::Con3Bound, n).unwrap(),
            "even n={n}"
        );
    }
    for n in (5..=13).step_by(2) {
        let p = profile(&make_crossed_cycle(n).unwrap());
        assert_eq!(
            p.remoteness - as_rat(p.radius),
            closed_form(ClosedFormId::Con3Bound, n).unwrap(),
            "odd n={n}"
        );
    }
}

/// Every registry entry refuses orders outside its domain instead of
/// returning a wrong value.
#[test]
fn registry_domains_are_enforced() {
    assert!(closed_form(ClosedFormId::LbarPath, 1).is_err());
    assert!(closed_form(ClosedFormId::PiPathOdd, 6).is_err());
    assert!(closed_form(ClosedFormId::PiPathEven, 7).is_err());
    assert!(closed_form(ClosedFormId::LbarSpider4, 8).is_err());
    assert!(closed_form(ClosedFormId::PiSpider4, 12).is_err());
    assert!(closed_form(ClosedFormId::RhoMinusRPathOdd, 8).is_err());
    assert!(closed_form(ClosedFormId::RhoMinusRBroomEven, 9).is_err());
    assert!(closed_form(ClosedFormId::Con2Bound, 2).is_err());
    assert!(closed_form(ClosedFormId::Con3Bound, 2).is_err());
}
