use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::{Complex, Complex64};
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;

use crate::rootsys::Rat;
use crate::PRUNE_TOL;

/// Gaussian rationals, the exact coefficient mode.
pub type GaussRat = Complex<Rat>;

/// Coefficients of a Laurent polynomial.
///
/// Exact types prune only true zeros; `Complex64` prunes below [`PRUNE_TOL`].
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn from_i64(n: i64) -> Self;

    /// `self / rhs` when it exists in the coefficient ring.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;

    fn to_complex(&self) -> Complex64;

    fn to_json(&self) -> (Value, Value);

    fn from_json(re: &Value, im: &Value) -> Option<Self>;
}

fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn rat_to_json(r: &Rat) -> Value {
    Value::String(r.to_string())
}

/// Parses `"p/q"`, `"p"` or a JSON integer.
pub fn rat_from_json(v: &Value) -> Option<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => n.as_i64().map(Rat::from_integer),
        _ => None,
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                return None;
            }
            Some(Rat::new(p.trim().parse().ok()?, q))
        }
        None => s.parse::<i64>().ok().map(Rat::from_integer),
    }
}

impl Coeff for i64 {
    fn from_i64(n: i64) -> Self {
        n
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (*rhs != 0 && self % rhs == 0).then(|| self / rhs)
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self as f64, 0.0)
    }

    fn to_json(&self) -> (Value, Value) {
        (Value::from(*self), Value::from(0))
    }

    fn from_json(re: &Value, im: &Value) -> Option<Self> {
        let im_zero = im.as_i64() == Some(0) || im.as_f64() == Some(0.0) || im.is_null();
        if !im_zero {
            return None;
        }
        re.as_i64()
            .or_else(|| rat_from_json(re).filter(|r| r.is_integer()).map(|r| r.to_integer()))
    }
}

impl Coeff for Rat {
    fn from_i64(n: i64) -> Self {
        Rat::from_integer(n)
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(self), 0.0)
    }

    fn to_json(&self) -> (Value, Value) {
        (rat_to_json(self), Value::String("0".into()))
    }

    fn from_json(re: &Value, im: &Value) -> Option<Self> {
        let im = if im.is_null() { Rat::zero() } else { rat_from_json(im)? };
        im.is_zero().then_some(())?;
        rat_from_json(re)
    }
}

impl Coeff for GaussRat {
    fn from_i64(n: i64) -> Self {
        Complex::new(Rat::from_integer(n), Rat::zero())
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    fn to_json(&self) -> (Value, Value) {
        (rat_to_json(&self.re), rat_to_json(&self.im))
    }

    fn from_json(re: &Value, im: &Value) -> Option<Self> {
        let im = if im.is_null() { Rat::zero() } else { rat_from_json(im)? };
        Some(Complex::new(rat_from_json(re)?, im))
    }
}

impl Coeff for Complex64 {
    fn is_negligible(&self) -> bool {
        self.norm() < PRUNE_TOL
    }

    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn to_json(&self) -> (Value, Value) {
        (Value::from(self.re), Value::from(self.im))
    }

    fn from_json(re: &Value, im: &Value) -> Option<Self> {
        let num = |v: &Value| v.as_f64().or_else(|| rat_from_json(v).map(|r| rat_to_f64(&r)));
        let im = if im.is_null() { Some(0.0) } else { num(im) };
        Some(Complex64::new(num(re)?, im?))
    }
}
