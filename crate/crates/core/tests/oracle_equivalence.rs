use boxpart_core::ensembles::{distribution, EnsembleSpec};
use boxpart_core::ferrers::{conditional_area, ferrers_hw_polynomial, perimeter_joint, PerimeterCap};
use boxpart_core::oracle::{enumerate_cspp, enumerate_ferrers, enumerate_pp, enumerate_spp, OracleCaps};
use boxpart_core::qpoly::{eval_at_one, DegreeCap};
use num_bigint::BigInt;
use num_rational::BigRational;

const CAP: DegreeCap = DegreeCap::DEFAULT;

#[test]
fn pp_matches_enumeration() {
    let caps = OracleCaps::default();
    for r in 1..=3 {
        for s in 1..=3 {
            for t in 1..=3 {
                let spec = EnsembleSpec::Pp { r, s, t };
                let oracle = enumerate_pp(r, s, t, &caps).unwrap();
                assert_eq!(distribution(&spec, CAP).unwrap(), *oracle.distribution(), "{spec}");
            }
        }
    }
}

#[test]
fn spp_and_cspp_match_enumeration() {
    let caps = OracleCaps::default();
    for r in 1..=3 {
        for t in 1..=3 {
            let spec = EnsembleSpec::Spp { r, t };
            let oracle = enumerate_spp(r, t, &caps).unwrap();
            assert_eq!(distribution(&spec, CAP).unwrap(), *oracle.distribution(), "{spec}");
        }
    }
    for r in 1..=4 {
        let spec = EnsembleSpec::Cspp { r };
        let oracle = enumerate_cspp(r, &caps).unwrap();
        assert_eq!(distribution(&spec, CAP).unwrap(), *oracle.distribution(), "{spec}");
    }
}

#[test]
fn enumeration_is_box_symmetric() {
    let caps = OracleCaps::default();
    let base = enumerate_pp(1, 2, 4, &caps).unwrap();
    for (r, s, t) in [(1, 4, 2), (2, 1, 4), (2, 4, 1), (4, 1, 2), (4, 2, 1)] {
        assert_eq!(enumerate_pp(r, s, t, &caps).unwrap().counts(), base.counts());
    }
}

#[test]
fn enumeration_totals_match_products() {
    let caps = OracleCaps::default();
    for (r, s, t) in [(2, 3, 4), (3, 3, 4), (4, 4, 2), (1, 4, 4)] {
        let total = enumerate_pp(r, s, t, &caps).unwrap().total().clone();
        let product = boxpart_core::ensembles::build_pp(r, s, t).unwrap();
        assert_eq!(BigRational::from_integer(total), eval_at_one(&product).unwrap());
    }
}

#[test]
fn ferrers_hw_matches_enumeration() {
    let caps = OracleCaps::default();
    for h in 1..=5 {
        for w in 1..=5 {
            let oracle = enumerate_ferrers(h, w, &caps).unwrap();
            assert_eq!(&ferrers_hw_polynomial(h, w, CAP).unwrap(), oracle.counts(), "{h}x{w}");
        }
    }
}

#[test]
fn perimeter_rows_match_enumeration() {
    let caps = OracleCaps::default();
    for m in 0..=6 {
        let joint = perimeter_joint(m, PerimeterCap::DEFAULT, CAP).unwrap();
        assert_eq!(joint.total(), &(BigInt::from(1) << m));
        for h in 1..=m + 1 {
            let oracle = enumerate_ferrers(h, m + 2 - h, &caps).unwrap();
            assert_eq!(conditional_area(&joint, h).unwrap(), *oracle.distribution());
        }
    }
}

#[test]
fn ferrers_hw_closed_moments_are_exact() {
    use boxpart_core::ferrers::{hw_mean_closed, hw_variance_closed};
    use boxpart_core::moments::{empirical_central_moment, empirical_moment};
    for h in 1..=7 {
        for w in 1..=7 {
            let dist = distribution(&EnsembleSpec::FerrersHw { h, w }, CAP).unwrap();
            assert_eq!(empirical_moment(&dist, 1), hw_mean_closed(h, w), "{h}x{w}");
            assert_eq!(empirical_central_moment(&dist, 2), hw_variance_closed(h, w), "{h}x{w}");
        }
    }
}
