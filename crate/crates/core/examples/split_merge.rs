//! Splits a surface in R⁴₂ into its two R³₁ surfaces, compares curvatures
//! through the correspondence formulas, and merges the pair back.

use lorentz_weierstrass::corpus::{standard_corpus, SurfaceData};
use lorentz_weierstrass::correspondence::{curvature_relation, merge_surfaces, split_surface};
use lorentz_weierstrass::surface::SurfaceType;

fn main() {
    for entry in standard_corpus() {
        let SurfaceData::CanonicalR42(d) = entry.data else {
            continue;
        };
        let s = d.surface().unwrap();
        let ty = s.surface_type().unwrap();
        let pair = split_surface(&d).unwrap();
        let (t1, t2) = d.domain.interior_grid(1)[0];
        let c = s.curvatures(t1, t2).unwrap();
        let (k_g, k_h) = pair.gauss_curvatures(t1, t2).unwrap();
        let eta = if ty == SurfaceType::Third {
            c.kappa.signum()
        } else {
            c.k.signum()
        };
        let r = curvature_relation(k_g, k_h, ty, eta).unwrap();
        let back = merge_surfaces(&pair, d.omega1, d.omega2).unwrap();
        println!(
            "{:<16} {:<6} K = {:>9.5} ({:>9.5})  kappa = {:>9.5} ({:>9.5})  merge(split) = id: {}",
            entry.name,
            ty.to_string(),
            c.k,
            r.k,
            c.kappa,
            r.kappa,
            back == d
        );
    }
}
