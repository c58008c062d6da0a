//! Numerical monodromy checks against independent oracles: the holomorphic
//! Frobenius series at 0 and the exact integer generators.

use cymono::catalog::{catalog, family, m_infinity, quintic};
use cymono::pf::linalg::{eigenvalues, frobenius_norm, singular_values, spectral_norm};
use cymono::pf::{
    compare_invariants, integrate_path, theta_frame_system, transport, LoopCenter, MatchedVariant, OdeParams,
    Orientation, PathSpec, PfConfig, PfError, Segment,
};
use cymono::{ComplexMat4, Mat4};
use num_complex::Complex;
use num_rational::Rational64;
use num_traits::ToPrimitive;

type C = Complex<f64>;

const LOOPS: [LoopCenter; 3] = [LoopCenter::Zero, LoopCenter::One, LoopCenter::Infinity];

fn base() -> C {
    C::new(0.5, 0.25)
}

fn loop_of(params: &OdeParams, center: LoopCenter) -> cymono::ComplexMat4Estimate {
    integrate_path(params, &PathSpec::new(base(), center, 0.45), 1e-10).unwrap()
}

fn id_minus(m: &ComplexMat4) -> ComplexMat4 {
    m - &Mat4::identity()
}

/// `(Σ nʲ cₙ φⁿ)` for j = 0..=4, where `y₀ = Σ cₙ φⁿ` is the holomorphic
/// solution at 0; index j is `θʲ y₀`.
fn frobenius(big_a: f64, big_b: f64, phi: C) -> [C; 5] {
    let mut out = [C::new(0.0, 0.0); 5];
    let mut c = 1.0f64;
    let mut pow = C::new(1.0, 0.0);
    for n in 0..400u32 {
        let nf = n as f64;
        if n > 0 {
            c *= (nf - 1.0 + big_a) * (nf - big_a) * (nf - 1.0 + big_b) * (nf - big_b) / nf.powi(4);
            pow *= phi;
        }
        let term = pow * c;
        for (j, slot) in out.iter_mut().enumerate() {
            *slot += term * nf.powi(j as i32);
        }
        if term.norm() * nf.powi(4).max(1.0) < 1e-30 {
            break;
        }
    }
    out
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn as_f64(x: Rational64) -> f64 {
    x.to_f64().unwrap()
}

#[test]
fn holomorphic_series_solves_the_first_order_system() {
    for f in catalog() {
        let params = OdeParams::of(&f);
        let phi = C::new(0.1, 0.0);
        let s = frobenius(as_f64(params.big_a), as_f64(params.big_b), phi);
        let n = theta_frame_system::<f64>(&params, phi).unwrap();
        for i in 0..4 {
            let lhs = s[i + 1];
            let rhs: C = (0..4).map(|j| n.get(i, j) * s[j]).sum();
            assert!((lhs - rhs).norm() <= 1e-14 * lhs.norm().max(1.0), "{f:?} row {i}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn transport_along_a_segment_matches_the_series() {
    let params = OdeParams::of(&quintic());
    let (from, to) = (C::new(0.1, 0.0), C::new(0.3, 0.2));
    let est = transport(&params, from, &[Segment::Line { from, to }], 1e-12, 200).unwrap();
    let y0 = frobenius(0.2, 0.4, from);
    let y1 = frobenius(0.2, 0.4, to);
    for i in 0..4 {
        let moved: C = (0..4).map(|j| est.matrix.get(i, j) * y0[j]).sum();
        assert!((moved - y1[i]).norm() < 1e-9, "component {i}: {moved} vs {}", y1[i]);
    }
}

#[test]
fn system_matches_hand_expansion_for_the_quintic() {
    let params = OdeParams::new(r(1, 5), r(2, 5)).unwrap();
    assert_eq!(params.last_row(), [r(24, 625), r(2, 5), r(7, 5), r(2, 1)]);
    let n = theta_frame_system::<f64>(&params, C::new(0.5, 0.0)).unwrap();
    let expected = [24.0 / 625.0, 0.4, 1.4, 2.0];
    for (j, e) in expected.iter().enumerate() {
        assert!((n.get(3, j) - C::new(*e, 0.0)).norm() < 1e-15);
    }
    assert!(matches!(theta_frame_system::<f64>(&params, C::new(1.0, 0.0)), Err(PfError::SingularPoint(_))));
}

#[test]
fn degenerate_loop_is_the_identity() {
    let params = OdeParams::of(&quintic());
    for center in LOOPS {
        let est = integrate_path(&params, &PathSpec::new(base(), center, 0.0), 1e-10).unwrap();
        assert!(est.matrix.is_identity());
        assert_eq!(est.err, 0.0);
    }
}

#[test]
fn loop_about_one_is_a_transvection() {
    let est = loop_of(&OdeParams::of(&quintic()), LoopCenter::One);
    let sv = singular_values(&id_minus(&est.matrix));
    assert!(sv[1] < 1e-4 * sv[0], "{sv:?}");
}

#[test]
fn loop_about_zero_is_maximally_unipotent() {
    let est = loop_of(&OdeParams::of(&quintic()), LoopCenter::Zero);
    let shifted = id_minus(&est.matrix);
    assert!(frobenius_norm(&shifted.pow(4)) < 1e-4);
    let sv = singular_values(&shifted);
    assert!(sv[2] > 1e-4 * sv[0] && sv[3] < 1e-4 * sv[0], "rank 3 expected: {sv:?}");
    // A perturbation ε of a single 4×4 Jordan block moves its eigenvalues by
    // about ε^{1/4}, so the spectrum is only pinned to that accuracy.
    let radius = est.err.powf(0.25);
    for z in eigenvalues(&est.matrix) {
        assert!((z - 1.0).norm() < radius, "{z} further than {radius} from 1");
    }
}

#[test]
fn determinant_stays_flat() {
    for f in [quintic(), family(16, 8).unwrap(), family(1, 3).unwrap()] {
        let params = OdeParams::of(&f);
        for center in LOOPS {
            let est = loop_of(&params, center);
            assert!(est.det_drift <= 10.0 * est.err, "{f:?} {center}: drift {} err {}", est.det_drift, est.err);
            assert!((est.matrix.det() - 1.0).norm() <= 10.0 * est.err);
        }
    }
}

#[test]
fn reversed_orientation_gives_the_inverse() {
    for f in [quintic(), family(16, 8).unwrap(), family(2, 3).unwrap()] {
        let params = OdeParams::of(&f);
        for center in LOOPS {
            let path = PathSpec::new(base(), center, 0.45);
            let fwd = integrate_path(&params, &path, 1e-10).unwrap();
            let back = integrate_path(&params, &path.with_orientation(Orientation::Clockwise), 1e-10).unwrap();
            let dev = spectral_norm(&id_minus(&(&back.matrix * &fwd.matrix)));
            assert!(dev < 10.0 * fwd.err, "{f:?} {center}: {dev} vs err {}", fwd.err);
        }
    }
}

#[test]
fn halving_the_tolerance_shrinks_the_error() {
    let params = OdeParams::of(&quintic());
    for center in LOOPS {
        // A coarse sample floor leaves step control to the tolerance.
        let path = PathSpec::new(base(), center, 0.45).with_min_samples(20);
        let errs: Vec<f64> = (0..4)
            .map(|i| integrate_path(&params, &path, 1e-8 / f64::from(1 << i)).unwrap().err)
            .collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{center}: {errs:?}");

        // At the default floor the step cap dominates; the error never grows.
        let path = PathSpec::new(base(), center, 0.45);
        let errs: Vec<f64> = (0..4)
            .map(|i| integrate_path(&params, &path, 1e-8 / f64::from(1 << i)).unwrap().err)
            .collect();
        assert!(errs.windows(2).all(|w| w[1] <= w[0]), "{center}: {errs:?}");
    }
}

#[test]
fn invariants_do_not_depend_on_the_base_point() {
    let params = OdeParams::of(&quintic());
    for center in LOOPS {
        let a = integrate_path(&params, &PathSpec::new(C::new(0.4, 0.25), center, 0.45), 1e-10).unwrap();
        let b = integrate_path(&params, &PathSpec::new(C::new(0.6, 0.25), center, 0.45), 1e-10).unwrap();
        let (ca, cb) = (a.matrix.charpoly(), b.matrix.charpoly());
        let dev = (0..5).map(|i| (ca[i] - cb[i]).norm()).fold(0.0, f64::max);
        assert!(dev < 10.0 * (a.err + b.err), "{center}: {dev}");
    }
}

#[test]
fn rejects_bad_tolerances_and_paths() {
    let params = OdeParams::of(&quintic());
    let path = PathSpec::new(base(), LoopCenter::Zero, 0.45);
    assert!(matches!(integrate_path(&params, &path, 1e-14), Err(PfError::Tolerance(_))));
    assert!(matches!(integrate_path(&params, &path, f64::NAN), Err(PfError::Tolerance(_))));
    let grazing = PathSpec::new(base(), LoopCenter::Zero, 0.95);
    assert!(integrate_path(&params, &grazing, 1e-10).is_err());
    let near = PathSpec::new(C::new(0.95, 0.0), LoopCenter::Zero, 0.5);
    assert!(matches!(integrate_path(&params, &near, 1e-10), Err(PfError::PathTooClose { .. })));
}

#[test]
fn finite_loops_match_for_every_family() {
    let cfg = PfConfig::default();
    for f in catalog() {
        let reports = compare_invariants(&f, &cfg).unwrap();
        for rep in reports.iter().filter(|r| r.loop_center != LoopCenter::Infinity) {
            assert!(rep.pass, "{f:?}: {rep:?}");
            assert_eq!(rep.charpoly_integer, vec![1, -4, 6, -4, 1]);
        }
        assert_eq!(reports[0].rank, 3);
        assert_eq!(reports[1].rank, 1);
    }
}

#[test]
fn infinity_loop_for_the_quintic_and_the_half_family() {
    let cfg = PfConfig::default();
    for (f, expected) in [(quintic(), vec![1, 1, 1, 1, 1]), (family(16, 8).unwrap(), vec![1, 4, 6, 4, 1])] {
        let rep = compare_invariants(&f, &cfg).unwrap().remove(2);
        assert_eq!(rep.charpoly_integer, expected);
        assert!(rep.pass && rep.max_dev < 1e-4, "{rep:?}");
    }
}

/// For the catalog rows (2,3) and (6,5) the exponents at ∞ do not fit the
/// integer (M0·M1)⁻¹; exchanging the two rows' (A, B) pairs does.
#[test]
fn mismatched_exponent_rows_are_detected() {
    let cfg = PfConfig::default();
    let infinity_dev = |d: u32, k: u32, params: &OdeParams| {
        let est = loop_of(params, LoopCenter::Infinity);
        let integer = m_infinity(&family(d, k).unwrap()).charpoly();
        let dev = |cp: [C; 5]| (0..5).map(|i| (cp[i] - integer[i].to_f64().unwrap()).norm()).fold(0.0, f64::max);
        f64::min(dev(est.matrix.charpoly()), dev(est.matrix.inverse_in_field().unwrap().charpoly()))
    };
    for (d, k) in [(2, 3), (6, 5)] {
        let rep = compare_invariants(&family(d, k).unwrap(), &cfg).unwrap().remove(2);
        assert!(!rep.pass && rep.max_dev > 1.0, "{rep:?}");
    }
    let from_six = OdeParams::new(r(1, 6), r(1, 4)).unwrap();
    let from_two = OdeParams::new(r(1, 4), r(1, 3)).unwrap();
    assert!(infinity_dev(2, 3, &from_six) < 1e-4);
    assert!(infinity_dev(6, 5, &from_two) < 1e-4);
}

#[test]
fn matched_variant_is_reported() {
    let rep = compare_invariants(&quintic(), &PfConfig::default()).unwrap().remove(2);
    let json = serde_json::to_value(&rep).unwrap();
    assert_eq!(json["loop"], "infinity");
    let variant = if rep.matched == MatchedVariant::Direct { "direct" } else { "inverse" };
    assert_eq!(json["matched"], variant);
}
