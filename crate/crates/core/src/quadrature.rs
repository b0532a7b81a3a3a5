//! Globally adaptive Gauss–Kronrod (G10/K21) quadrature for vector-valued
//! integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

// Kronrod abscissae on [0, 1); odd indices are the 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_22,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_725,
    0.054_755_896_574_351_995,
    0.075_039_674_810_919_96,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_84,
    0.134_709_217_311_473_34,
    0.142_775_938_577_060_09,
    0.147_739_104_901_338_49,
    0.149_445_554_002_916_9,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-13,
            max_subdivisions: 100_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum QuadError {
    #[error("integrand is not finite at t = {t}")]
    NonFinite { t: f64 },
    #[error("subdivision limit reached with error estimate {estimate:e}")]
    SubdivisionLimit { estimate: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<const N: usize> {
    pub value: [f64; N],
    pub error: f64,
    pub subdivisions: usize,
}

struct Segment<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    error: f64,
}

impl<const N: usize> PartialEq for Segment<N> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<const N: usize> Eq for Segment<N> {}
impl<const N: usize> PartialOrd for Segment<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<const N: usize> Ord for Segment<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rule<const N: usize, F>(f: &mut F, a: f64, b: f64) -> Result<Segment<N>, QuadError>
where
    F: FnMut(f64) -> [f64; N],
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |t: f64| {
        let y = f(t);
        if y.iter().all(|v| v.is_finite()) {
            Ok(y)
        } else {
            Err(QuadError::NonFinite { t })
        }
    };
    let fc = eval(center)?;
    let mut kronrod = [0.0; N];
    let mut gauss = [0.0; N];
    for k in 0..N {
        kronrod[k] = WGK[10] * fc[k];
    }
    for (j, (&x, &w)) in XGK[..10].iter().zip(&WGK[..10]).enumerate() {
        let dx = half * x;
        let lo = eval(center - dx)?;
        let hi = eval(center + dx)?;
        for k in 0..N {
            let s = lo[k] + hi[k];
            kronrod[k] += w * s;
            if j % 2 == 1 {
                gauss[k] += WG[j / 2] * s;
            }
        }
    }
    let mut value = [0.0; N];
    let mut error = 0.0f64;
    for k in 0..N {
        value[k] = kronrod[k] * half;
        error = error.max(((kronrod[k] - gauss[k]) * half).abs());
    }
    Ok(Segment { a, b, value, error })
}

/// Integrates a vector-valued function over `[a, b]` (either orientation).
///
/// The error estimate is the max-norm of the Kronrod/Gauss difference summed
/// over segments; refinement bisects the worst segment until the estimate
/// falls below `max(abs_tol, rel_tol * |value|)`.
pub fn integrate_vec<const N: usize, F>(
    mut f: F,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> Result<Quadrature<N>, QuadError>
where
    F: FnMut(f64) -> [f64; N],
{
    if a == b {
        return Ok(Quadrature {
            value: [0.0; N],
            error: 0.0,
            subdivisions: 0,
        });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let first = rule(&mut f, lo, hi)?;
    let mut total = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut subdivisions = 1;
    let tolerance = |total: &[f64; N]| {
        let norm = total.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        opts.abs_tol.max(opts.rel_tol * norm)
    };
    while error > tolerance(&total) {
        if subdivisions >= opts.max_subdivisions {
            return Err(QuadError::SubdivisionLimit { estimate: error });
        }
        let worst = heap.pop().expect("heap holds every segment");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // segment is at floating point resolution
            return Err(QuadError::SubdivisionLimit { estimate: error });
        }
        let left = rule(&mut f, worst.a, mid)?;
        let right = rule(&mut f, mid, worst.b)?;
        for (k, t) in total.iter_mut().enumerate() {
            *t += left.value[k] + right.value[k] - worst.value[k];
        }
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
        // re-sum occasionally so the running error does not drift
        if subdivisions % 64 == 0 {
            error = heap.iter().map(|s| s.error).sum();
        }
    }
    // final summation from segments for accuracy
    let mut value = [0.0; N];
    for s in heap.iter() {
        for (v, x) in value.iter_mut().zip(s.value) {
            *v += x;
        }
    }
    for v in value.iter_mut() {
        *v *= sign;
    }
    Ok(Quadrature {
        value,
        error,
        subdivisions,
    })
}

/// Scalar convenience wrapper around [`integrate_vec`].
pub fn integrate<F>(mut f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<f64, QuadError>
where
    F: FnMut(f64) -> f64,
{
    integrate_vec(|t| [f(t)], a, b, opts).map(|q| q.value[0])
}
