//! Samples the catenoid in R⁴₂, prints curvatures along the diagonal and
//! writes an OBJ mesh projected to three coordinates.
//!
//! `cargo run --example catenoid_mesh -- catenoid.obj`

use lorentz_weierstrass::cli::{surface_obj, surface_table};
use lorentz_weierstrass::corpus::{self, SurfaceData};
use lorentz_weierstrass::scene::Projection;

fn main() {
    let data = corpus::catenoid_merged();
    let s = data.surface().unwrap();
    println!("type: {}", s.surface_type().unwrap());
    for t in data.domain.t1.grid(5) {
        let c = s.curvatures(t, t).unwrap();
        println!(
            "({t:.2}, {t:.2})  F = {:>10.5}  K = {:>10.5}  kappa = {:>10.5}",
            s.first_form_f(t, t).unwrap(),
            c.k,
            c.kappa
        );
    }

    let table = surface_table("catenoid", &SurfaceData::CanonicalR42(data), 30, 30).unwrap();
    let obj = surface_obj(&table, Projection::Drop3);
    match std::env::args().nth(1) {
        Some(path) => {
            std::fs::write(&path, obj).unwrap();
            println!("wrote {path}");
        }
        None => println!(
            "{} vertices; pass a path to write the mesh",
            table.rows.len()
        ),
    }
}
