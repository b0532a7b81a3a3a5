//! Builds a null curve in R⁴₂ from Weierstrass data, checks that it is null,
//! and reparametrizes it by its natural parameter.

use lorentz_weierstrass::curve::{natural_param, weier_r42, WeierstrassR42};
use lorentz_weierstrass::domain::Interval;
use lorentz_weierstrass::expr::Expression;
use lorentz_weierstrass::space::dot;

fn main() {
    let e = |s: &str| Expression::parse(s, "t").unwrap();
    let data = WeierstrassR42 {
        f: e("1 + t^2"),
        g: e("t"),
        h: e("exp(t)"),
    };
    let interval = Interval::new(0.0, 1.0).unwrap();
    let c = weier_r42(&data, interval).unwrap();

    println!(
        "{:>6} {:>12} {:>12} {:>12}",
        "t", "<a',a'>", "<a'',a''>", "|a(t)|_inf"
    );
    for t in interval.grid(5) {
        let v = c.tangent(t).unwrap();
        println!(
            "{t:>6.2} {:>12.2e} {:>12.5} {:>12.5}",
            dot(&v, &v),
            c.accel_norm2(t).unwrap(),
            c.position(t).unwrap().amax()
        );
    }

    let map = natural_param(&c, 0.0).unwrap();
    let s = map.s_interval();
    println!(
        "natural parameter runs over [{:.6}, {:.6}]",
        s.min(),
        s.max()
    );
    let nc = map.reparametrized();
    for s in s.grid(4) {
        println!(
            "s = {s:>9.5}: |a''(s)^2| = {:.12}",
            nc.accel_norm2(s).unwrap().abs()
        );
    }
}
