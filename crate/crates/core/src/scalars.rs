//! Coefficient fields.
//!
//! Three kinds of scalar live here:
//!
//! * [`GaussianRational`]: exact elements of ℚ(i).
//! * [`ExtendedScalar`]: exact elements of ℚ(i)[s]/(s² + i·m), where `s` is a
//!   formal square root of `-i·m` for a fixed nonzero integer weight `m`.
//! * [`FloatScalar`]: double precision complex numbers compared up to a
//!   tolerance.
//!
//! [`Scalar`] is the tagged union used by matrices and representations.
//! Exact values promote into extensions and into floats automatically, but two
//! extensions with different `m` never combine.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{DivisionRing, Ring};

/// Default comparison tolerance used when a float scalar is created without an
/// explicit one.
pub const DEFAULT_TOL: f64 = 1e-9;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// An exact Gaussian rational `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(rat(re), rat(im))
    }

    /// `(re_num/re_den) + i·(im_num/im_den)`.
    pub fn from_fractions(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(BigRational::new(re.0.into(), re.1.into()), BigRational::new(im.0.into(), im.1.into()))
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "({}-{}i)", self.re, -self.im.clone())
                } else {
                    write!(f, "({}+{}i)", self.re, self.im)
                }
            }
        }
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

/// If `-i·m` is a square in ℚ(i) (exactly when `m = ±2k²`), returns its
/// principal square root `k·(1 - i·sign(m))`.
pub fn gaussian_root_of_neg_im(m: i64) -> Option<GaussianRational> {
    if m == 0 || m % 2 != 0 {
        return None;
    }
    let half = (m / 2).unsigned_abs();
    let k = half.sqrt();
    if k * k != half {
        return None;
    }
    let k = k as i64;
    Some(GaussianRational::from_ints(k, -k * m.signum()))
}

/// An element `c0 + c1·s` of ℚ(i)[s]/(s² + i·m).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtendedScalar {
    c0: GaussianRational,
    c1: GaussianRational,
    m: i64,
}

impl ExtendedScalar {
    pub fn new(c0: GaussianRational, c1: GaussianRational, m: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::DegenerateWeight);
        }
        Ok(Self { c0, c1, m })
    }

    /// The formal generator `s` with `s² = -i·m`.
    pub fn generator(m: i64) -> Result<Self> {
        Self::new(GaussianRational::default(), GaussianRational::from_ints(1, 0), m)
    }

    pub fn c0(&self) -> &GaussianRational {
        &self.c0
    }

    pub fn c1(&self) -> &GaussianRational {
        &self.c1
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// `s²`, i.e. `-i·m`.
    fn s_squared(&self) -> GaussianRational {
        GaussianRational::from_ints(0, -self.m)
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.m == other.m {
            Ok(())
        } else {
            Err(Error::MixedExtension(self.m, other.m))
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        Ok(Self { c0: &self.c0 + &rhs.c0, c1: &self.c1 + &rhs.c1, m: self.m })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        Ok(Self { c0: &self.c0 - &rhs.c0, c1: &self.c1 - &rhs.c1, m: self.m })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        let c0 = &(&self.c0 * &rhs.c0) + &(&(&self.c1 * &rhs.c1) * &self.s_squared());
        let c1 = &(&self.c0 * &rhs.c1) + &(&self.c1 * &rhs.c0);
        Ok(Self { c0, c1, m: self.m })
    }

    pub fn neg(&self) -> Self {
        Self { c0: -&self.c0, c1: -&self.c1, m: self.m }
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        Self { c0: &self.c0 * k, c1: &self.c1 * k, m: self.m }
    }

    /// Complex conjugate, with `s` read as the principal root. On that branch
    /// `conj(s) = i·sign(m)·s`.
    pub fn conj(&self) -> Self {
        let factor = GaussianRational::from_ints(0, self.m.signum());
        Self { c0: self.c0.conj(), c1: &self.c1.conj() * &factor, m: self.m }
    }

    /// Multiplicative inverse.
    ///
    /// The regular path rationalizes: `(c0 - c1·s) / (c0² + i·m·c1²)`. The
    /// denominator vanishes only when `-i·m` has a root `r` in ℚ(i) and the
    /// element is a multiple of `s ∓ r`, i.e. a zero divisor of the quotient
    /// ring; in that case `s` is replaced by the principal root and the
    /// inverse is taken in ℚ(i).
    pub fn invert(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c1_sq = &self.c1 * &self.c1;
        let den = &(&self.c0 * &self.c0) - &(&c1_sq * &self.s_squared());
        if let Some(den_inv) = den.inv() {
            let out = Self { c0: &self.c0 * &den_inv, c1: &(-&self.c1) * &den_inv, m: self.m };
            return Ok(Scalar::from(out));
        }
        let root = gaussian_root_of_neg_im(self.m).ok_or(Error::DivisionByZero)?;
        let value = &self.c0 + &(&self.c1 * &root);
        value.inv().map(Scalar::Exact).ok_or(Error::DivisionByZero)
    }

    /// Numerical value on the principal branch.
    pub fn to_complex(&self) -> (f64, f64) {
        let (sr, si) = principal_sqrt_neg_im(self.m);
        let (a, b) = self.c0.to_f64();
        let (c, d) = self.c1.to_f64();
        (a + c * sr - d * si, b + c * si + d * sr)
    }
}

impl fmt::Debug for ExtendedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExtendedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·s[{}]", self.c0, self.c1, self.m)
    }
}

fn principal_sqrt_neg_im(m: i64) -> (f64, f64) {
    let r = (m.unsigned_abs() as f64 / 2.0).sqrt();
    (r, -r * m.signum() as f64)
}

/// A complex float with a comparison tolerance.
#[derive(Clone, Copy)]
pub struct FloatScalar {
    pub re: f64,
    pub im: f64,
    pub tol: f64,
}

impl FloatScalar {
    pub fn new(re: f64, im: f64, tol: f64) -> Self {
        Self { re, im, tol }
    }

    pub fn is_zero(&self) -> bool {
        self.re.abs() <= self.tol && self.im.abs() <= self.tol
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    fn combine(&self, rhs: &Self, re: f64, im: f64) -> Self {
        Self::new(re, im, self.tol.max(rhs.tol))
    }
}

impl PartialEq for FloatScalar {
    fn eq(&self, other: &Self) -> bool {
        let tol = self.tol.max(other.tol);
        (self.re - other.re).abs() <= tol && (self.im - other.im).abs() <= tol
    }
}

impl fmt::Debug for FloatScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.re, self.im)
    }
}

/// Whether computations run on exact or floating scalars.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum ScalarMode {
    #[default]
    Exact,
    Float {
        tol: f64,
    },
}

/// Which square root of `-i·m` to use. The constructions of weight-m
/// representations are equivalent for both choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    #[default]
    Principal,
    Negated,
}

/// Coefficient of every matrix and section in the crate.
#[derive(Clone)]
pub enum Scalar {
    Exact(GaussianRational),
    /// Always carries a nonzero `s` component; values with `c1 = 0` are
    /// stored as `Exact`.
    Ext(ExtendedScalar),
    Float(FloatScalar),
}

impl From<GaussianRational> for Scalar {
    fn from(x: GaussianRational) -> Self {
        Scalar::Exact(x)
    }
}

impl From<ExtendedScalar> for Scalar {
    fn from(x: ExtendedScalar) -> Self {
        if x.c1.is_zero() {
            Scalar::Exact(x.c0)
        } else {
            Scalar::Ext(x)
        }
    }
}

impl From<FloatScalar> for Scalar {
    fn from(x: FloatScalar) -> Self {
        Scalar::Float(x)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::Exact(GaussianRational::from_ints(n, 0))
    }
}

/// A square root of `-i·m`.
///
/// In exact mode this is the formal generator of the quadratic extension for
/// `m`, except when `-i·m` already has a root in ℚ(i) (`m = ±2k²`); then the
/// principal Gaussian root is returned so that weight-m arithmetic stays in a
/// field. In float mode it is the principal branch `√(|m|/2)·(1 - i·sign(m))`.
pub fn sqrt_neg_im(m: i64, mode: ScalarMode) -> Result<Scalar> {
    sqrt_neg_im_branch(m, mode, Branch::Principal)
}

pub fn sqrt_neg_im_branch(m: i64, mode: ScalarMode, branch: Branch) -> Result<Scalar> {
    if m == 0 {
        return Err(Error::DegenerateWeight);
    }
    let s = match mode {
        ScalarMode::Exact => match gaussian_root_of_neg_im(m) {
            Some(root) => Scalar::Exact(root),
            None => Scalar::Ext(ExtendedScalar::generator(m)?),
        },
        ScalarMode::Float { tol } => {
            let (re, im) = principal_sqrt_neg_im(m);
            Scalar::Float(FloatScalar::new(re, im, tol))
        }
    };
    Ok(match branch {
        Branch::Principal => s,
        Branch::Negated => -s,
    })
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(GaussianRational::default())
    }

    pub fn one() -> Self {
        Scalar::from(1)
    }

    pub fn i() -> Self {
        Scalar::Exact(GaussianRational::i())
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar::Exact(GaussianRational::from_ints(re, im))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Scalar::Exact(GaussianRational::from_fractions((num, den), (0, 1)))
    }

    pub fn float(re: f64, im: f64, tol: f64) -> Self {
        Scalar::Float(FloatScalar::new(re, im, tol))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(x) => x.is_zero(),
            Scalar::Ext(x) => x.is_zero(),
            Scalar::Float(x) => x.is_zero(),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Scalar::Float(_))
    }

    /// Extension parameter if this value involves a formal root.
    pub fn extension(&self) -> Option<i64> {
        match self {
            Scalar::Ext(x) => Some(x.m),
            _ => None,
        }
    }

    pub fn to_complex(&self) -> (f64, f64) {
        match self {
            Scalar::Exact(x) => x.to_f64(),
            Scalar::Ext(x) => x.to_complex(),
            Scalar::Float(x) => (x.re, x.im),
        }
    }

    pub fn to_float(&self, tol: f64) -> FloatScalar {
        match self {
            Scalar::Float(x) => *x,
            other => {
                let (re, im) = other.to_complex();
                FloatScalar::new(re, im, tol)
            }
        }
    }

    /// Converts to the requested mode. Exact values are kept as they are in
    /// exact mode; float mode evaluates formal roots on the principal branch.
    pub fn in_mode(&self, mode: ScalarMode) -> Scalar {
        match mode {
            ScalarMode::Exact => self.clone(),
            ScalarMode::Float { tol } => {
                let mut x = self.to_float(tol);
                x.tol = tol;
                Scalar::Float(x)
            }
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(x) => Scalar::Exact(x.conj()),
            Scalar::Ext(x) => Scalar::from(x.conj()),
            Scalar::Float(x) => Scalar::Float(FloatScalar::new(x.re, -x.im, x.tol)),
        }
    }

    fn float_pair(&self, rhs: &Scalar) -> Option<(FloatScalar, FloatScalar)> {
        match (self, rhs) {
            (Scalar::Float(a), Scalar::Float(b)) => Some((*a, *b)),
            (Scalar::Float(a), b) => Some((*a, b.to_float(a.tol))),
            (a, Scalar::Float(b)) => Some((a.to_float(b.tol), *b)),
            _ => None,
        }
    }

    fn ext_pair(&self, rhs: &Scalar) -> Result<(ExtendedScalar, ExtendedScalar)> {
        let lift = |x: &Scalar, m: i64| -> ExtendedScalar {
            match x {
                Scalar::Ext(e) => e.clone(),
                Scalar::Exact(g) => ExtendedScalar { c0: g.clone(), c1: GaussianRational::default(), m },
                Scalar::Float(_) => unreachable!("float handled before"),
            }
        };
        let m = match (self.extension(), rhs.extension()) {
            (Some(a), Some(b)) if a != b => return Err(Error::MixedExtension(a, b)),
            (Some(a), _) | (_, Some(a)) => a,
            (None, None) => unreachable!("exact pair handled before"),
        };
        Ok((lift(self, m), lift(rhs, m)))
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar> {
        if let Some((a, b)) = self.float_pair(rhs) {
            return Ok(Scalar::Float(a.combine(&b, a.re + b.re, a.im + b.im)));
        }
        if let (Scalar::Exact(a), Scalar::Exact(b)) = (self, rhs) {
            return Ok(Scalar::Exact(a + b));
        }
        let (a, b) = self.ext_pair(rhs)?;
        Ok(Scalar::from(a.try_add(&b)?))
    }

    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.try_add(&-rhs)
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        if let Some((a, b)) = self.float_pair(rhs) {
            return Ok(Scalar::Float(a.combine(&b, a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re)));
        }
        if let (Scalar::Exact(a), Scalar::Exact(b)) = (self, rhs) {
            return Ok(Scalar::Exact(a * b));
        }
        let (a, b) = self.ext_pair(rhs)?;
        Ok(Scalar::from(a.try_mul(&b)?))
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Exact(x) => x.inv().map(Scalar::Exact).ok_or(Error::DivisionByZero),
            Scalar::Ext(x) => x.invert(),
            Scalar::Float(x) => {
                if x.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let n = x.re * x.re + x.im * x.im;
                Ok(Scalar::float(x.re / n, -x.im / n, x.tol))
            }
        }
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.try_mul(&rhs.inv()?)
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut out = Scalar::one();
        for _ in 0..k {
            out = out * self.clone();
        }
        out
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if let Some((a, b)) = self.float_pair(other) {
            return a == b;
        }
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Ext(a), Scalar::Ext(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(x) => write!(f, "{x}"),
            Scalar::Ext(x) => write!(f, "{x}"),
            Scalar::Float(x) => write!(f, "{x:?}"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

scalar_binop!(Add, add, try_add);
scalar_binop!(Sub, sub, try_sub);
scalar_binop!(Mul, mul, try_mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(x) => Scalar::Exact(-x),
            Scalar::Ext(x) => Scalar::Ext(x.neg()),
            Scalar::Float(x) => Scalar::float(-x.re, -x.im, x.tol),
        }
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.try_add(rhs)
    }
    fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.try_sub(rhs)
    }
    fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.try_mul(rhs)
    }
}

impl DivisionRing for Scalar {
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }

    fn pivot_weight(&self) -> f64 {
        match self {
            Scalar::Float(x) if x.is_zero() => 0.0,
            Scalar::Float(x) => x.abs(),
            other if other.is_zero() => 0.0,
            _ => 1.0,
        }
    }
}

/// Canonical string of a rational: `p` or `p/q` with `q > 0`.
pub fn rational_to_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
