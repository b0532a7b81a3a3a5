//! Truncated Taylor arithmetic.
//!
//! [`Jet2`] carries a value with its first and second derivative with respect
//! to a single parameter; [`Dual`] carries only the first derivative. Both
//! propagate derivatives exactly (up to floating point round-off) through the
//! arithmetic operators and the elementary functions used by the expression
//! language.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Value and first two derivatives of a scalar function at a point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet2 {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet2 {
    pub const fn new(v: f64, d1: f64, d2: f64) -> Self {
        Self { v, d1, d2 }
    }

    pub const fn constant(v: f64) -> Self {
        Self::new(v, 0.0, 0.0)
    }

    /// The identity function evaluated at `t`.
    pub const fn variable(t: f64) -> Self {
        Self::new(t, 1.0, 0.0)
    }

    /// Applies a scalar function given its value and first two derivatives at
    /// `self.v` (chain rule / Faà di Bruno truncated at order two).
    #[inline]
    pub fn compose(self, f0: f64, f1: f64, f2: f64) -> Self {
        Self::new(f0, f1 * self.d1, f2 * self.d1 * self.d1 + f1 * self.d2)
    }

    /// Drops the second derivative.
    pub fn to_dual(self) -> Dual {
        Dual::new(self.v, self.d1)
    }

    /// The derivative of the underlying function as a first order jet.
    pub fn derivative(self) -> Dual {
        Dual::new(self.d1, self.d2)
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }

    pub fn recip(self) -> Self {
        let r = 1.0 / self.v;
        self.compose(r, -r * r, 2.0 * r * r * r)
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.compose(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.compose(c, -s, -c)
    }

    pub fn tan(self) -> Self {
        let t = self.v.tan();
        let sec2 = 1.0 + t * t;
        self.compose(t, sec2, 2.0 * t * sec2)
    }

    pub fn sinh(self) -> Self {
        self.compose(self.v.sinh(), self.v.cosh(), self.v.sinh())
    }

    pub fn cosh(self) -> Self {
        self.compose(self.v.cosh(), self.v.sinh(), self.v.cosh())
    }

    pub fn tanh(self) -> Self {
        let th = self.v.tanh();
        let sech2 = 1.0 - th * th;
        self.compose(th, sech2, -2.0 * th * sech2)
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        self.compose(e, e, e)
    }

    /// Natural logarithm; the caller guarantees `v > 0`.
    pub fn ln(self) -> Self {
        let r = 1.0 / self.v;
        self.compose(self.v.ln(), r, -r * r)
    }

    /// Square root; the caller guarantees `v > 0`.
    pub fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        self.compose(s, 0.5 / s, -0.25 / (s * s * s))
    }

    /// Absolute value, differentiated as `sign(v)`; the caller guarantees `v != 0`.
    pub fn abs(self) -> Self {
        let sg = self.v.signum();
        Self::new(self.v.abs(), sg * self.d1, sg * self.d2)
    }

    /// Integer power by repeated squaring.
    pub fn powi(self, n: i32) -> Self {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut base = self;
        let mut acc = Jet2::constant(1.0);
        let mut k = n as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            k >>= 1;
            if k > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// General power `self^exponent` through `exp(exponent * ln(self))`; the
    /// caller guarantees `v > 0`.
    pub fn powf(self, exponent: Jet2) -> Self {
        (exponent * self.ln()).exp()
    }
}

impl Add for Jet2 {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl Sub for Jet2 {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2)
    }
}

impl Mul for Jet2 {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.v * o.v,
            self.d1 * o.v + self.v * o.d1,
            self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        )
    }
}

impl Div for Jet2 {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        let q = self.v / o.v;
        let q1 = (self.d1 - q * o.d1) / o.v;
        let q2 = (self.d2 - 2.0 * q1 * o.d1 - q * o.d2) / o.v;
        Self::new(q, q1, q2)
    }
}

impl Neg for Jet2 {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.v, -self.d1, -self.d2)
    }
}

impl Mul<f64> for Jet2 {
    type Output = Self;
    #[inline]
    fn mul(self, k: f64) -> Self {
        Self::new(self.v * k, self.d1 * k, self.d2 * k)
    }
}

impl Add<f64> for Jet2 {
    type Output = Self;
    #[inline]
    fn add(self, k: f64) -> Self {
        Self::new(self.v + k, self.d1, self.d2)
    }
}

/// Value and first derivative.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dual {
    pub v: f64,
    pub d: f64,
}

impl Dual {
    pub const fn new(v: f64, d: f64) -> Self {
        Self { v, d }
    }

    pub const fn constant(v: f64) -> Self {
        Self::new(v, 0.0)
    }

    pub fn recip(self) -> Self {
        let r = 1.0 / self.v;
        Self::new(r, -self.d * r * r)
    }

    pub fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        Self::new(s, 0.5 * self.d / s)
    }

    pub fn abs(self) -> Self {
        let sg = self.v.signum();
        Self::new(self.v.abs(), sg * self.d)
    }

    pub fn powi(self, n: i32) -> Self {
        Self::new(self.v.powi(n), n as f64 * self.v.powi(n - 1) * self.d)
    }
}

impl Add for Dual {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.v + o.v, self.d + o.d)
    }
}

impl Sub for Dual {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.v - o.v, self.d - o.d)
    }
}

impl Mul for Dual {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(self.v * o.v, self.d * o.v + self.v * o.d)
    }
}

impl Div for Dual {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        let q = self.v / o.v;
        Self::new(q, (self.d - q * o.d) / o.v)
    }
}

impl Neg for Dual {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.v, -self.d)
    }
}

impl Mul<f64> for Dual {
    type Output = Self;
    #[inline]
    fn mul(self, k: f64) -> Self {
        Self::new(self.v * k, self.d * k)
    }
}

impl Add<f64> for Dual {
    type Output = Self;
    #[inline]
    fn add(self, k: f64) -> Self {
        Self::new(self.v + k, self.d)
    }
}
