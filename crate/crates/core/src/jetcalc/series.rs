use std::ops::{Add, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::charring::ComplexPoly;
use crate::error::{Error, Result};

/// Coefficient spaces for truncated power series: complex scalars or
/// complex Laurent polynomials.
pub trait SeriesCoeff:
    Clone + std::fmt::Debug + Zero + Add<Output = Self> + Sub<Output = Self> + Send + Sync + 'static
{
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale(&self, c: Complex64) -> Self;
    /// Largest coefficient modulus.
    fn max_norm(&self) -> f64;
    /// Number of stored terms, used for support caps.
    fn size(&self) -> usize {
        1
    }
}

impl SeriesCoeff for Complex64 {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn scale(&self, c: Complex64) -> Self {
        self * c
    }

    fn max_norm(&self) -> f64 {
        self.norm()
    }
}

impl SeriesCoeff for ComplexPoly {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn scale(&self, c: Complex64) -> Self {
        ComplexPoly::scale(self, &c)
    }

    fn max_norm(&self) -> f64 {
        self.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max)
    }

    fn size(&self) -> usize {
        self.len()
    }
}

/// `a_0 + a_1 t + … + a_N t^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

impl<T: SeriesCoeff> Series<T> {
    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![T::zero(); order + 1] }
    }

    /// Panics on an empty coefficient list.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        Series { coeffs }
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [T] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k).fold(T::zero(), |acc, i| acc + self.coeffs[i].mul_ref(&other.coeffs[k - i]))
            })
            .collect();
        Series { coeffs }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Series { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// `self += c·other`; panics if the orders differ.
    pub fn add_scaled(&mut self, other: &Self, c: Complex64) {
        assert_eq!(self.order(), other.order(), "series order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            let sum = std::mem::replace(a, T::zero()) + b.scale(c);
            *a = sum;
        }
    }

    /// Multiplication by `t^j`, truncated.
    pub fn shift_t(&self, j: usize) -> Self {
        let n = self.order();
        let coeffs = (0..=n)
            .map(|k| if k >= j { self.coeffs[k - j].clone() } else { T::zero() })
            .collect();
        Series { coeffs }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let coeffs = (0..=order).map(|k| self.coeff(k)).collect();
        Series { coeffs }
    }

    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(SeriesCoeff::max_norm).fold(0.0, f64::max)
    }

    /// Per-order maximum deviation.
    pub fn deviations(&self, other: &Self) -> Result<Vec<f64>> {
        self.same_order(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a.clone() - b.clone()).max_norm())
            .collect())
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.deviations(other)?.into_iter().fold(0.0, f64::max))
    }
}

impl Series<Complex64> {
    /// `exp` of a scalar series.
    pub fn exp(&self) -> Self {
        exp_series_scalar(&self.coeffs)
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.norm() == 0.0 {
            return Err(Error::NotInvertible);
        }
        let n = self.order();
        let mut b = vec![Complex64::zero(); n + 1];
        b[0] = a0.inv();
        for k in 1..=n {
            let s: Complex64 = (1..=k).map(|i| self.coeffs[i] * b[k - i]).sum();
            b[k] = -s * b[0];
        }
        Ok(Series { coeffs: b })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inverse()?)
    }

    /// `Σ a_k t^k` at a numeric `t`.
    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, a| acc * t + a)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Series::constant(Complex64::new(1.0, 0.0), self.order());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul_unchecked(&base);
        }
        Ok(acc)
    }
}

/// Serialized as `[[re, im], …]` from order 0 upward.
impl serde::Serialize for Series<Complex64> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.coeffs.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Series<Complex64> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        if pairs.is_empty() {
            return Err(serde::de::Error::custom("empty series"));
        }
        Ok(Series { coeffs: pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect() })
    }
}

/// `exp(Σ_{k≥1} a_k t^k)`, ignoring `a_0`, via `n e_n = Σ k a_k e_{n-k}`.
/// The result starts from `start` instead of `1`, so `start·exp(...)` comes out directly.
pub fn exp_nilpotent<T: SeriesCoeff>(a: &[T], start: T) -> Vec<T> {
    let n = a.len().saturating_sub(1);
    let mut e = Vec::with_capacity(n + 1);
    e.push(start);
    for m in 1..=n {
        let mut acc = T::zero();
        for k in 1..=m {
            acc = acc + a[k].mul_ref(&e[m - k]).scale(Complex64::new(k as f64, 0.0));
        }
        e.push(acc.scale(Complex64::new(1.0 / m as f64, 0.0)));
    }
    e
}

/// `exp` of a scalar series given by its coefficients.
pub fn exp_series_scalar(a: &[Complex64]) -> Series<Complex64> {
    let a0 = a.first().copied().unwrap_or_default();
    Series::from_coeffs(exp_nilpotent(a, a0.exp()))
}

/// Determinant of a square matrix of series by Leibniz expansion.
pub fn series_det<T: SeriesCoeff>(m: &[Vec<Series<T>>]) -> Result<Series<T>> {
    let r = m.len();
    if r == 0 || r > 8 {
        return Err(Error::Unsupported(format!("determinant of a {r}x{r} matrix")));
    }
    if let Some(row) = m.iter().find(|row| row.len() != r) {
        return Err(Error::Dimension { expected: r, got: row.len() });
    }
    let n = m[0][0].order();
    for row in m {
        for s in row {
            if s.order() != n {
                return Err(Error::OrderMismatch(n, s.order()));
            }
        }
    }
    let mut total = Series::zero(n);
    for perm in itertools::Itertools::permutations(0..r, r) {
        let mut prod = m[0][perm[0]].clone();
        for (i, &j) in perm.iter().enumerate().skip(1) {
            prod = prod.mul_unchecked(&m[i][j]);
        }
        let sign = if permutation_is_odd(&perm) { -1.0 } else { 1.0 };
        total.add_scaled(&prod, Complex64::new(sign, 0.0));
    }
    Ok(total)
}

fn permutation_is_odd(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}
