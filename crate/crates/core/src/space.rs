//! The pseudo-Euclidean spaces R³₁ and R⁴₂: indefinite inner products, rigid
//! motions, the spinor map SL(2,R) → SO⁺(2,1) and the induced linear
//! fractional action on Weierstrass data.
//!
//! Vectors are plain `nalgebra` column vectors; the metric is
//! `diag(-1, 1, 1)` in dimension 3 and `diag(-1, 1, -1, 1)` in dimension 4.

use nalgebra::{SMatrix, SVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::expr::Expression;

pub type LVec<const N: usize> = SVector<f64, N>;
pub type LMat<const N: usize> = SMatrix<f64, N, N>;
pub type Vec3L = LVec<3>;
pub type Vec4L = LVec<4>;

/// Entrywise tolerance for the isometry test `AᵀηA = ±η`.
pub const ISOMETRY_TOL: f64 = 1e-10;

const DET_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MotionError {
    #[error("matrix is neither an isometry nor an anti-isometry (max deviation {deviation:e})")]
    NotIsometry { deviation: f64 },
    #[error("spin matrix must have determinant ±1, found {det}")]
    NonUnitDeterminant { det: f64 },
    #[error("{kind:?} requires determinant {required}, found {det}")]
    KindMismatch {
        kind: MotionKind,
        required: f64,
        det: f64,
    },
}

/// Metric signature as a vector of ±1.
pub fn signature<const N: usize>() -> LVec<N> {
    const { assert!(N == 3 || N == 4, "only R^3_1 and R^4_2 are supported") };
    let mut s = LVec::<N>::repeat(1.0);
    s[0] = -1.0;
    if N == 4 {
        s[2] = -1.0;
    }
    s
}

pub fn eta<const N: usize>() -> LMat<N> {
    LMat::<N>::from_diagonal(&signature::<N>())
}

pub fn dot<const N: usize>(a: &LVec<N>, b: &LVec<N>) -> f64 {
    let s = signature::<N>();
    (0..N).map(|i| s[i] * a[i] * b[i]).sum()
}

/// `-a₁b₁ + a₂b₂ + a₃b₃`
pub fn dot3(a: &Vec3L, b: &Vec3L) -> f64 {
    dot(a, b)
}

/// `-a₁b₁ + a₂b₂ - a₃b₃ + a₄b₄`
pub fn dot4(a: &Vec4L, b: &Vec4L) -> f64 {
    dot(a, b)
}

/// R³₁ as the hyperplane `x₃ = 0` of R⁴₂.
pub fn embed_r31(v: &Vec3L) -> Vec4L {
    Vec4L::new(v[0], v[1], 0.0, v[2])
}

/// A real 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinMatrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl SpinMatrix {
    pub const IDENTITY: SpinMatrix = SpinMatrix::new(1.0, 0.0, 0.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &SpinMatrix) -> SpinMatrix {
        SpinMatrix::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    pub fn neg(&self) -> SpinMatrix {
        SpinMatrix::new(-self.a, -self.b, -self.c, -self.d)
    }

    /// Random matrix with determinant `det_sign` (±1), entries of moderate size.
    pub fn random<R: Rng>(rng: &mut R, det_sign: f64) -> SpinMatrix {
        loop {
            let a: f64 = rng.gen_range(-2.0..2.0);
            let b: f64 = rng.gen_range(-2.0..2.0);
            let c: f64 = rng.gen_range(-2.0..2.0);
            if a.abs() < 0.2 {
                continue;
            }
            // solve a d - b c = det_sign for d
            let d = (det_sign + b * c) / a;
            if d.abs() < 4.0 {
                return SpinMatrix::new(a, b, c, d);
            }
        }
    }
}

/// The four connected components of the motion group of R³₁, named by the
/// law they induce on Weierstrass data `(f, g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MotionKind {
    ProperOrthochronous,
    ProperNonOrthochronous,
    NonProperOrthochronous,
    NonProperNonOrthochronous,
}

impl MotionKind {
    pub const ALL: [MotionKind; 4] = [
        MotionKind::ProperOrthochronous,
        MotionKind::ProperNonOrthochronous,
        MotionKind::NonProperOrthochronous,
        MotionKind::NonProperNonOrthochronous,
    ];

    /// Determinant of the spin matrix paired with this kind.
    pub fn required_det(self) -> f64 {
        match self {
            MotionKind::ProperOrthochronous | MotionKind::NonProperNonOrthochronous => 1.0,
            MotionKind::ProperNonOrthochronous | MotionKind::NonProperOrthochronous => -1.0,
        }
    }

    /// Sign in `f̂ = ±f (c g + d)²`.
    pub fn f_sign(self) -> f64 {
        match self {
            MotionKind::ProperOrthochronous | MotionKind::NonProperOrthochronous => 1.0,
            MotionKind::ProperNonOrthochronous | MotionKind::NonProperNonOrthochronous => -1.0,
        }
    }

    pub fn proper(self) -> bool {
        matches!(
            self,
            MotionKind::ProperOrthochronous | MotionKind::ProperNonOrthochronous
        )
    }

    pub fn orthochronous(self) -> bool {
        matches!(
            self,
            MotionKind::ProperOrthochronous | MotionKind::NonProperOrthochronous
        )
    }
}

/// An affine map `x ↦ A x + b` whose linear part is an isometry
/// (`AᵀηA = η`) or, in R⁴₂, an anti-isometry (`AᵀηA = -η`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Motion<const N: usize> {
    matrix: LMat<N>,
    translation: LVec<N>,
    proper: bool,
    anti_isometry: bool,
}

pub type MotionR31 = Motion<3>;
pub type MotionR42 = Motion<4>;

impl<const N: usize> Motion<N> {
    pub fn new(matrix: LMat<N>, translation: LVec<N>) -> Result<Self, MotionError> {
        let e = eta::<N>();
        let gram = matrix.transpose() * e * matrix;
        let iso = (gram - e).abs().max();
        let anti = (gram + e).abs().max();
        let anti_isometry = if iso <= ISOMETRY_TOL {
            false
        } else if anti <= ISOMETRY_TOL {
            true
        } else {
            return Err(MotionError::NotIsometry {
                deviation: iso.min(anti),
            });
        };
        Ok(Self {
            matrix,
            translation,
            proper: determinant(&matrix) > 0.0,
            anti_isometry,
        })
    }

    pub fn linear(matrix: LMat<N>) -> Result<Self, MotionError> {
        Self::new(matrix, LVec::zeros())
    }

    pub fn identity() -> Self {
        Self {
            matrix: LMat::identity(),
            translation: LVec::zeros(),
            proper: true,
            anti_isometry: false,
        }
    }

    /// `x ↦ -x`.
    pub fn point_reflection() -> Self {
        Self::linear(-LMat::<N>::identity()).expect("-I is an isometry")
    }

    pub fn matrix(&self) -> &LMat<N> {
        &self.matrix
    }

    pub fn translation(&self) -> &LVec<N> {
        &self.translation
    }

    pub fn proper(&self) -> bool {
        self.proper
    }

    pub fn anti_isometry(&self) -> bool {
        self.anti_isometry
    }

    /// Sign by which the motion scales every inner product.
    pub fn metric_factor(&self) -> f64 {
        if self.anti_isometry {
            -1.0
        } else {
            1.0
        }
    }

    /// Time orientation, defined for R³₁ only: `A₁₁ ≥ 1`.
    pub fn orthochronous(&self) -> Option<bool> {
        (N == 3).then(|| self.matrix[(0, 0)] > 0.0)
    }

    pub fn with_translation(mut self, translation: LVec<N>) -> Self {
        self.translation = translation;
        self
    }

    pub fn apply(&self, x: &LVec<N>) -> LVec<N> {
        self.matrix * x + self.translation
    }

    pub fn apply_linear(&self, v: &LVec<N>) -> LVec<N> {
        self.matrix * v
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Motion<N>) -> Motion<N> {
        Motion {
            matrix: self.matrix * other.matrix,
            translation: self.matrix * other.translation + self.translation,
            proper: self.proper == other.proper,
            anti_isometry: self.anti_isometry != other.anti_isometry,
        }
    }
}

impl Motion<3> {
    /// The same motion acting on the hyperplane `x₃ = 0` of R⁴₂, fixing `x₃`.
    pub fn embed_r42(&self) -> Motion<4> {
        const IDX: [usize; 3] = [0, 1, 3];
        let mut m = LMat::<4>::zeros();
        m[(2, 2)] = 1.0;
        for (i, &r) in IDX.iter().enumerate() {
            for (j, &c) in IDX.iter().enumerate() {
                m[(r, c)] = self.matrix[(i, j)];
            }
        }
        Motion {
            matrix: m,
            translation: embed_r31(&self.translation),
            proper: self.proper,
            anti_isometry: false,
        }
    }
}

/// Image of `B` under the spinor map, defined through the conjugation
/// `S ↦ B S B⁻¹` on traceless matrices `S = [[-x₃, x₂+x₁], [x₂-x₁, x₃]]`.
///
/// For `det B = 1` the result is proper orthochronous; `det B = -1` yields a
/// proper non-orthochronous motion.
pub fn spinor_to_so21(b: &SpinMatrix) -> Result<MotionR31, MotionError> {
    let det = b.det();
    if (det.abs() - 1.0).abs() > DET_TOL {
        return Err(MotionError::NonUnitDeterminant { det });
    }
    let SpinMatrix { a, b, c, d } = *b;
    let m = LMat::<3>::new(
        0.5 * (a * a + b * b + c * c + d * d),
        0.5 * (a * a - b * b + c * c - d * d),
        a * b + c * d,
        0.5 * (a * a + b * b - c * c - d * d),
        0.5 * (a * a - b * b - c * c + d * d),
        a * b - c * d,
        a * c + b * d,
        a * c - b * d,
        a * d + b * c,
    ) / det;
    Motion::linear(m)
}

/// The motion of R³₁ whose action on Weierstrass data is the linear
/// fractional law of `kind` with coefficients from `b`.
pub fn motion_for_kind(b: &SpinMatrix, kind: MotionKind) -> Result<MotionR31, MotionError> {
    check_kind(b, kind)?;
    let spin = spinor_to_so21(b)?;
    Ok(if kind.proper() {
        spin
    } else {
        Motion::<3>::point_reflection().compose(&spin)
    })
}

fn check_kind(b: &SpinMatrix, kind: MotionKind) -> Result<(), MotionError> {
    let det = b.det();
    let required = kind.required_det();
    if (det - required).abs() > DET_TOL {
        return Err(MotionError::KindMismatch {
            kind,
            required,
            det,
        });
    }
    Ok(())
}

/// Transforms Weierstrass data of a null curve in R³₁:
/// `ĝ = (a g + b)/(c g + d)`, `f̂ = ±f (c g + d)²`.
pub fn mobius_on_weierstrass(
    f: &Expression,
    g: &Expression,
    b: &SpinMatrix,
    kind: MotionKind,
) -> Result<(Expression, Expression), MotionError> {
    check_kind(b, kind)?;
    let denominator = g.scale(b.c).offset(b.d);
    let g_hat = g.scale(b.a).offset(b.b).div(&denominator);
    let f_hat = f.mul(&denominator.powi(2)).scale(kind.f_sign());
    Ok((f_hat, g_hat))
}

/// Determinant for a generic const dimension.
pub fn determinant<const N: usize>(m: &LMat<N>) -> f64 {
    nalgebra::DMatrix::from_column_slice(N, N, m.as_slice()).determinant()
}

fn plane_boost(i: usize, j: usize, rapidity: f64) -> LMat<4> {
    let mut m = LMat::<4>::identity();
    let (c, s) = (rapidity.cosh(), rapidity.sinh());
    m[(i, i)] = c;
    m[(j, j)] = c;
    m[(i, j)] = s;
    m[(j, i)] = s;
    m
}

/// Planes mixing one timelike and one spacelike axis, 0-based.
const BOOST_PLANES: [(usize, usize); 4] = [(0, 1), (2, 3), (0, 3), (1, 2)];

/// Product of hyperbolic rotations in the (1,2), (3,4), (1,4) and (2,3)
/// coordinate planes followed by a translation.
pub fn proper_motion_r42(rapidities: [f64; 4], translation: Vec4L) -> MotionR42 {
    let m = BOOST_PLANES
        .iter()
        .zip(rapidities)
        .fold(LMat::<4>::identity(), |acc, (&(i, j), r)| {
            acc * plane_boost(i, j, r)
        });
    Motion::new(m, translation).expect("boost products are isometries")
}

pub fn random_proper_motion_r42(seed: u64) -> MotionR42 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rapidities = [(); 4].map(|_| rng.gen_range(-0.6..0.6));
    let translation = Vec4L::from_fn(|_, _| rng.gen_range(-1.0..1.0));
    proper_motion_r42(rapidities, translation)
}

/// `(x₁, x₂, x₃, x₄) ↦ (x₂, x₁, x₄, x₃)`: negates the metric, determinant +1.
pub fn swap_anti_isometry_r42() -> MotionR42 {
    let mut m = LMat::<4>::zeros();
    m[(0, 1)] = 1.0;
    m[(1, 0)] = 1.0;
    m[(2, 3)] = 1.0;
    m[(3, 2)] = 1.0;
    Motion::linear(m).expect("coordinate swap is an anti-isometry")
}

/// `x₄ ↦ -x₄`: an isometry of determinant -1.
pub fn reflection_r42() -> MotionR42 {
    Motion::linear(LMat::<4>::from_diagonal(&Vec4L::new(1.0, 1.0, 1.0, -1.0)))
        .expect("reflection is an isometry")
}

#[cfg(test)]
mod tests {
    use super::*;

    // Oracle: conjugate the traceless matrix of each basis vector explicitly.
    fn conjugation_oracle(b: &SpinMatrix) -> LMat<3> {
        let to_s = |x: &Vec3L| [[-x[2], x[1] + x[0]], [x[1] - x[0], x[2]]];
        let det = b.det();
        let bm = [[b.a, b.b], [b.c, b.d]];
        let binv = [[b.d / det, -b.b / det], [-b.c / det, b.a / det]];
        let mul = |p: [[f64; 2]; 2], q: [[f64; 2]; 2]| {
            let mut r = [[0.0; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    r[i][j] = p[i][0] * q[0][j] + p[i][1] * q[1][j];
                }
            }
            r
        };
        let mut out = LMat::<3>::zeros();
        for k in 0..3 {
            let mut e = Vec3L::zeros();
            e[k] = 1.0;
            let s = mul(mul(bm, to_s(&e)), binv);
            let (u, w) = (s[0][1], s[1][0]);
            out[(0, k)] = 0.5 * (u - w);
            out[(1, k)] = 0.5 * (u + w);
            out[(2, k)] = s[1][1];
        }
        out
    }

    #[test]
    fn metric_signatures() {
        let e1 = Vec4L::new(1.0, 0.0, 0.0, 0.0);
        assert_eq!(dot4(&e1, &e1), -1.0);
        let n = Vec4L::new(1.0, 1.0, 0.0, 0.0);
        assert_eq!(dot4(&n, &n), 0.0);
        let s1 = 1.0f64.sinh();
        let c1 = 1.0f64.cosh();
        let v = dot4(
            &Vec4L::new(c1, s1, 0.0, 1.0),
            &Vec4L::new(0.0, -1.0, c1, -s1),
        );
        assert!((v - (-2.0 * s1)).abs() < 1e-15);
        assert!((v + 2.350_40).abs() < 1e-5);
        assert_eq!(
            dot3(&Vec3L::new(1.0, 0.0, 0.0), &Vec3L::new(1.0, 0.0, 0.0)),
            -1.0
        );
    }

    #[test]
    fn embedding_preserves_inner_products() {
        let a = Vec3L::new(1.0, 2.0, 3.0);
        assert_eq!(embed_r31(&a), Vec4L::new(1.0, 2.0, 0.0, 3.0));
        let b = Vec3L::new(-0.5, 0.25, 4.0);
        assert_eq!(dot4(&embed_r31(&a), &embed_r31(&b)), dot3(&a, &b));
        let null = Vec3L::new(5.0, 3.0, 4.0);
        assert_eq!(dot4(&embed_r31(&null), &embed_r31(&null)), 0.0);
    }

    #[test]
    fn spinor_map_kernel_and_oracle() {
        let id = spinor_to_so21(&SpinMatrix::IDENTITY).unwrap();
        assert_eq!(*id.matrix(), LMat::<3>::identity());
        let minus = spinor_to_so21(&SpinMatrix::IDENTITY.neg()).unwrap();
        assert_eq!(*minus.matrix(), LMat::<3>::identity());
        let shear = SpinMatrix::new(1.0, 1.0, 0.0, 1.0);
        let a = spinor_to_so21(&shear).unwrap();
        assert!((a.matrix() - conjugation_oracle(&shear)).abs().max() < 1e-14);
        assert!(a.proper());
        assert_eq!(a.orthochronous(), Some(true));
        assert!(matches!(
            spinor_to_so21(&SpinMatrix::new(2.0, 0.0, 0.0, 1.0)),
            Err(MotionError::NonUnitDeterminant { .. })
        ));
    }

    #[test]
    fn negative_determinant_gives_proper_non_orthochronous() {
        let b = SpinMatrix::new(1.0, 0.0, 0.0, -1.0);
        let a = spinor_to_so21(&b).unwrap();
        assert!((a.matrix() - conjugation_oracle(&b)).abs().max() < 1e-14);
        assert!(a.proper());
        assert_eq!(a.orthochronous(), Some(false));
        for kind in MotionKind::ALL {
            let b = if kind.required_det() > 0.0 {
                SpinMatrix::new(2.0, 1.0, 1.0, 1.0)
            } else {
                SpinMatrix::new(1.0, 1.0, 1.0, 0.0)
            };
            let m = motion_for_kind(&b, kind).unwrap();
            assert_eq!(m.proper(), kind.proper(), "{kind:?}");
            assert_eq!(m.orthochronous(), Some(kind.orthochronous()), "{kind:?}");
        }
    }

    #[test]
    fn mobius_shear_shifts_g() {
        let f = Expression::parse("exp(t)", "t").unwrap();
        let g = Expression::parse("t^2", "t").unwrap();
        let (f1, g1) = mobius_on_weierstrass(
            &f,
            &g,
            &SpinMatrix::IDENTITY,
            MotionKind::ProperOrthochronous,
        )
        .unwrap();
        assert_eq!((f1, g1), (f.clone(), g.clone()));
        let (f2, g2) = mobius_on_weierstrass(
            &f,
            &g,
            &SpinMatrix::new(1.0, 1.0, 0.0, 1.0),
            MotionKind::ProperOrthochronous,
        )
        .unwrap();
        assert_eq!(f2, f);
        assert_eq!(g2, Expression::parse("t^2 + 1", "t").unwrap());
        assert!(matches!(
            mobius_on_weierstrass(
                &f,
                &g,
                &SpinMatrix::IDENTITY,
                MotionKind::ProperNonOrthochronous
            ),
            Err(MotionError::KindMismatch { .. })
        ));
    }

    #[test]
    fn boosts_are_proper_isometries() {
        let id = proper_motion_r42([0.0; 4], Vec4L::zeros());
        assert_eq!(*id.matrix(), LMat::<4>::identity());
        for seed in 0..50 {
            let m = random_proper_motion_r42(seed);
            let gram = m.matrix().transpose() * eta::<4>() * m.matrix();
            assert!((gram - eta::<4>()).abs().max() <= ISOMETRY_TOL);
            assert!((m.matrix().determinant() - 1.0).abs() <= 1e-10);
            assert!(!m.anti_isometry());
        }
    }

    #[test]
    fn anti_isometry_flips_inner_products() {
        let m = swap_anti_isometry_r42();
        assert!(m.anti_isometry());
        assert!(m.proper());
        let v = Vec4L::new(0.3, -1.2, 2.0, 0.7);
        let w = Vec4L::new(1.1, 0.4, -0.2, 0.9);
        let (mv, mw) = (m.apply_linear(&v), m.apply_linear(&w));
        assert!((dot4(&mv, &mw) + dot4(&v, &w)).abs() < 1e-15);
        let r = reflection_r42();
        assert!(!r.proper() && !r.anti_isometry());
        assert!(matches!(
            Motion::<4>::linear(LMat::<4>::identity() * 2.0),
            Err(MotionError::NotIsometry { .. })
        ));
    }
}
