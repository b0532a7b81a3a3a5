//! Property tests for jets, the spinor map, null curves and surfaces.

use approx::assert_relative_eq;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lorentz_weierstrass::corpus;
use lorentz_weierstrass::curve::{
    weier_data_r31, weier_data_r42, weier_r31, weier_r42, WeierstrassR31,
};
use lorentz_weierstrass::expr::Expression;
use lorentz_weierstrass::space::{
    dot, mobius_on_weierstrass, motion_for_kind, random_proper_motion_r42, spinor_to_so21,
    MotionKind, SpinMatrix, Vec3L,
};
use lorentz_weierstrass::surface::CanonicalSurfaceDataR42;

fn e(s: &str) -> Expression {
    Expression::parse(s, "t").unwrap()
}

fn spin(det_sign: f64) -> impl Strategy<Value = SpinMatrix> {
    any::<u64>()
        .prop_map(move |seed| SpinMatrix::random(&mut ChaCha8Rng::seed_from_u64(seed), det_sign))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jet_matches_finite_differences(a in 0.2f64..2.0, b in -1.0f64..1.0, t in -1.0f64..1.0) {
        let x = e(&format!("sin({a}*t)*exp({b}*t) + ln(2 + t^2) / cosh(t) + sqrt(3 + tanh(t))"));
        let j = x.eval_jet2(t).unwrap();
        let h = 1e-4;
        let (p, m, c) = (x.eval(t + h).unwrap(), x.eval(t - h).unwrap(), x.eval(t).unwrap());
        prop_assert!((j.v - c).abs() < 1e-15);
        prop_assert!((j.d1 - (p - m) / (2.0 * h)).abs() < 1e-6);
        prop_assert!((j.d2 - (p - 2.0 * c + m) / (h * h)).abs() < 1e-4);
    }

    #[test]
    fn jet_chain_rule(a in 0.2f64..2.0, t in -1.0f64..1.0) {
        // d/dt sin(exp(a t)) and its second derivative, by hand
        let j = e(&format!("sin(exp({a}*t))")).eval_jet2(t).unwrap();
        let u = (a * t).exp();
        assert_relative_eq!(j.d1, u.cos() * a * u, max_relative = 1e-13, epsilon = 1e-14);
        let d2 = -u.sin() * (a * u).powi(2) + u.cos() * a * a * u;
        assert_relative_eq!(j.d2, d2, max_relative = 1e-12, epsilon = 1e-13);
    }

    #[test]
    fn spinor_map_is_a_homomorphism(b1 in spin(1.0), b2 in spin(-1.0)) {
        let l = |b: &SpinMatrix| *spinor_to_so21(b).unwrap().matrix();
        let diff = (l(&b1.mul(&b2)) - l(&b1) * l(&b2)).amax();
        prop_assert!(diff < 1e-10, "{diff}");
        prop_assert!((l(&b1.neg()) - l(&b1)).amax() < 1e-12);
    }

    #[test]
    fn spinor_map_preserves_the_metric(b in spin(-1.0), v in prop::array::uniform3(-2.0f64..2.0)) {
        let m = spinor_to_so21(&b).unwrap();
        let v = Vec3L::from(v);
        let w = m.apply_linear(&v);
        prop_assert!((dot(&w, &w) - dot(&v, &v)).abs() < 1e-9);
    }

    #[test]
    fn random_curves_are_null(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = corpus::random_interval();
        let c4 = weier_r42(&corpus::random_weierstrass_r42(&mut rng, false), i).unwrap();
        let c3 = weier_r31(&corpus::random_weierstrass_r31(&mut rng, false), i).unwrap();
        for t in i.grid(50) {
            let (a, b) = (c4.tangent(t).unwrap(), c3.tangent(t).unwrap());
            prop_assert!(dot(&a, &a).abs() < 1e-10);
            prop_assert!(dot(&b, &b).abs() < 1e-10);
        }
    }

    #[test]
    fn data_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = corpus::random_interval();
        let d = corpus::random_weierstrass_r42(&mut rng, false);
        for p in weier_data_r42(&weier_r42(&d, i).unwrap()).unwrap() {
            prop_assert!((p.h.v - d.h.eval(p.t).unwrap()).abs() < 1e-10);
            prop_assert!((p.g.d - d.g.eval_jet2(p.t).unwrap().d1).abs() < 1e-8);
        }
        let d = corpus::random_weierstrass_r31(&mut rng, false);
        for p in weier_data_r31(&weier_r31(&d, i).unwrap()).unwrap() {
            prop_assert!((p.f.v - d.f.eval(p.t).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn mobius_matches_motion_on_tangents(b in spin(1.0), seed in any::<u64>(), k in 0usize..4) {
        let kind = MotionKind::ALL[k];
        let b = if kind.required_det() < 0.0 { b.mul(&SpinMatrix::new(1.0, 0.0, 0.0, -1.0)) } else { b };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = corpus::random_weierstrass_r31(&mut rng, false);
        let i = corpus::random_interval();
        let ts = i.grid(60);
        prop_assume!(ts.iter().all(|&t| (b.c * d.g.eval(t).unwrap() + b.d).abs() > 0.1));
        let (f, g) = mobius_on_weierstrass(&d.f, &d.g, &b, kind).unwrap();
        let moved = weier_r31(&WeierstrassR31 { f, g }, i).unwrap();
        let c = weier_r31(&d, i).unwrap();
        let m = motion_for_kind(&b, kind).unwrap();
        for t in ts {
            let expected = m.apply_linear(&c.tangent(t).unwrap());
            let got = moved.tangent(t).unwrap();
            prop_assert!((got - expected).amax() <= 1e-8 * (1.0 + expected.amax()));
        }
    }

    #[test]
    fn curvatures_are_invariant_under_proper_motions(seed in any::<u64>(), a in 0.5f64..2.0, b in 0.2f64..1.0) {
        let d = CanonicalSurfaceDataR42::new(
            e(&format!("{a}*exp(t)")), e("t"), e(&format!("-{b}*t")), e("t^3 + t"),
            1.0, -1.0, lorentz_weierstrass::surface::rect((0.5, 1.0), (-2.0, -1.0)).unwrap(),
        );
        prop_assume!(d.is_ok());
        let s = d.unwrap().surface().unwrap();
        let moved = s.apply_motion(&random_proper_motion_r42(seed));
        for (t1, t2) in s.domain().interior_grid(3) {
            let (p, q) = (s.curvatures(t1, t2).unwrap(), moved.curvatures(t1, t2));
            let Ok(q) = q else { continue };
            prop_assert!((p.k - q.k).abs() <= 1e-7 * (1.0 + p.k.abs()));
            prop_assert!((p.kappa - q.kappa).abs() <= 1e-7 * (1.0 + p.kappa.abs()));
        }
    }

    #[test]
    fn conjugate_negates_first_form_and_curvatures(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = corpus::random_interval();
        let c1 = weier_r42(&corpus::random_weierstrass_r42(&mut rng, true), i).unwrap();
        let c2 = weier_r42(&corpus::random_weierstrass_r42(&mut rng, true), i).unwrap();
        let Ok(s) = lorentz_weierstrass::surface::build_surface(&c1, &c2) else { return Ok(()) };
        let conj = s.conjugate();
        for (t1, t2) in s.domain().interior_grid(3) {
            let (Ok(p), Ok(q)) = (s.curvatures(t1, t2), conj.curvatures(t1, t2)) else { continue };
            prop_assert_eq!(conj.first_form_f(t1, t2).unwrap(), -s.first_form_f(t1, t2).unwrap());
            prop_assert!((p.k + q.k).abs() <= 1e-9 * (1.0 + p.k.abs()));
            prop_assert!((p.kappa + q.kappa).abs() <= 1e-9 * (1.0 + p.kappa.abs()));
        }
    }
}
