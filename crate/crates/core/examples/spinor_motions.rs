//! The spinor map from 2x2 real matrices of determinant ±1 to motions of
//! R³₁, and the matching Möbius action on Weierstrass data.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lorentz_weierstrass::curve::{weier_r31, WeierstrassR31};
use lorentz_weierstrass::domain::Interval;
use lorentz_weierstrass::expr::Expression;
use lorentz_weierstrass::space::{
    determinant, mobius_on_weierstrass, motion_for_kind, spinor_to_so21, MotionKind, SpinMatrix,
};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let b = SpinMatrix::random(&mut rng, 1.0);
    let l = spinor_to_so21(&b).unwrap();
    println!("B = [[{:.4}, {:.4}], [{:.4}, {:.4}]]", b.a, b.b, b.c, b.d);
    println!("L = {:.4}", l.matrix());
    println!("det L = {:.12}", determinant(l.matrix()));

    let e = |s: &str| Expression::parse(s, "t").unwrap();
    let data = WeierstrassR31 {
        f: e("1"),
        g: e("t"),
    };
    let interval = Interval::new(-0.5, 0.5).unwrap();
    let c = weier_r31(&data, interval).unwrap();

    for kind in MotionKind::ALL {
        let b = if kind.required_det() > 0.0 {
            SpinMatrix::new(1.2, 0.3, 0.1, 0.8583333333333334)
        } else {
            SpinMatrix::new(1.2, 0.3, 0.1, -0.8083333333333333)
        };
        let (f, g) = mobius_on_weierstrass(&data.f, &data.g, &b, kind).unwrap();
        let moved = weier_r31(
            &WeierstrassR31 {
                f: f.clone(),
                g: g.clone(),
            },
            interval,
        )
        .unwrap();
        let m = motion_for_kind(&b, kind).unwrap();
        let worst = interval
            .grid(11)
            .into_iter()
            .map(|t| (moved.tangent(t).unwrap() - m.apply_linear(&c.tangent(t).unwrap())).amax())
            .fold(0.0, f64::max);
        println!("{kind:?}: f = {f}, g = {g}, tangent mismatch {worst:.1e}");
    }
}
