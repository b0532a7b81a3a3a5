//! Parses an expression and evaluates it with second-order jets.
//!
//! `cargo run --example expressions -- "sin(t)*exp(-t^2)" 0.5`

use lorentz_weierstrass::expr::Expression;

fn main() {
    let mut args = std::env::args().skip(1);
    let source = args.next().unwrap_or_else(|| "t^3 + ln(cosh(t))".into());
    let t: f64 = args
        .next()
        .map_or(0.5, |s| s.parse().expect("t is a number"));

    let x = match Expression::parse(&source, "t") {
        Ok(x) => x,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    println!("parsed:   {x}");
    match x.eval_jet2(t) {
        Ok(j) => {
            println!("x({t})   = {}", j.v);
            println!("x'({t})  = {}", j.d1);
            println!("x''({t}) = {}", j.d2);
        }
        Err(e) => println!("not defined at {t}: {e}"),
    }
    println!("x + 2x: {}", x.add(&x.scale(2.0)));
}
