use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Coeff, LaurentPoly};
use crate::error::{Error, Result};
use crate::rootsys::WeightVec;

/// An axis-aligned box of weights, bounds inclusive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl Window {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::Dimension { expected: lo.len(), got: hi.len() });
        }
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::Parse("window lower bound above upper bound".into()));
        }
        Ok(Window { lo, hi })
    }

    /// `[-radius, radius]` on every axis.
    pub fn symmetric(rank: usize, radius: i64) -> Self {
        Window { lo: vec![-radius; rank], hi: vec![radius; rank] }
    }

    pub fn rank(&self) -> usize {
        self.lo.len()
    }

    pub fn len(&self) -> usize {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(a, b)| (b - a + 1) as usize)
            .product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, w: &WeightVec) -> bool {
        w.0.len() == self.rank()
            && w.0
                .iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(x, (a, b))| a <= x && x <= b)
    }

    fn index_of(&self, w: &WeightVec) -> Option<usize> {
        if !self.contains(w) {
            return None;
        }
        let mut idx = 0;
        for ((x, a), b) in w.0.iter().zip(&self.lo).zip(&self.hi) {
            idx = idx * (b - a + 1) as usize + (x - a) as usize;
        }
        Some(idx)
    }

    fn point_at(&self, mut idx: usize) -> WeightVec {
        let mut coords = vec![0; self.rank()];
        for k in (0..self.rank()).rev() {
            let span = (self.hi[k] - self.lo[k] + 1) as usize;
            coords[k] = self.lo[k] + (idx % span) as i64;
            idx /= span;
        }
        WeightVec(coords)
    }

    /// Lattice points in row-major order.
    pub fn points(&self) -> impl Iterator<Item = WeightVec> + '_ {
        (0..self.len()).map(|i| self.point_at(i))
    }

    /// All `2^r` corners.
    pub fn corners(&self) -> Vec<WeightVec> {
        let r = self.rank();
        (0..1usize << r)
            .map(|mask| {
                WeightVec(
                    (0..r)
                        .map(|k| if mask >> k & 1 == 1 { self.hi[k] } else { self.lo[k] })
                        .collect(),
                )
            })
            .collect()
    }

    /// Shrinks every side by `m`.
    pub fn shrink(&self, m: i64) -> Option<Window> {
        Window::new(
            self.lo.iter().map(|x| x + m).collect(),
            self.hi.iter().map(|x| x - m).collect(),
        )
        .ok()
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.lo.iter().zip(&self.hi).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}:{b}")?;
        }
        Ok(())
    }
}

impl FromStr for Window {
    type Err = Error;

    /// `a:b,c:d,…`, one range per axis.
    fn from_str(s: &str) -> Result<Self> {
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for part in s.split(',') {
            let (a, b) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("window axis `{part}` lacks ':'")))?;
            let parse = |x: &str| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad window bound `{x}`")))
            };
            lo.push(parse(a)?);
            hi.push(parse(b)?);
        }
        Window::new(lo, hi)
    }
}

/// A truncation of an element of `R^{-∞}(T)` to a [`Window`], stored densely.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowedMultiplicity<C> {
    window: Window,
    values: Vec<C>,
}

impl<C: Coeff> WindowedMultiplicity<C> {
    pub fn zeros(window: Window) -> Self {
        let values = vec![C::zero(); window.len()];
        WindowedMultiplicity { window, values }
    }

    /// Restriction of a Laurent polynomial to the window.
    pub fn from_poly(p: &LaurentPoly<C>, window: Window) -> Self {
        let mut m = Self::zeros(window);
        for (w, c) in p.terms() {
            m.add_at(w, c.clone());
        }
        m
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn get(&self, w: &WeightVec) -> Option<&C> {
        self.window.index_of(w).map(|i| &self.values[i])
    }

    /// Adds `c` at `w`; returns false when `w` lies outside the window.
    pub fn add_at(&mut self, w: &WeightVec, c: C) -> bool {
        match self.window.index_of(w) {
            Some(i) => {
                let v = std::mem::replace(&mut self.values[i], C::zero());
                self.values[i] = v + c;
                true
            }
            None => false,
        }
    }

    pub fn set(&mut self, w: &WeightVec, c: C) -> bool {
        match self.window.index_of(w) {
            Some(i) => {
                self.values[i] = c;
                true
            }
            None => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (WeightVec, &C)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, c)| (self.window.point_at(i), c))
    }

    /// Entries that are not negligible.
    pub fn nonzero(&self) -> impl Iterator<Item = (WeightVec, &C)> + '_ {
        self.iter().filter(|(_, c)| !c.is_negligible())
    }

    pub fn to_poly(&self) -> LaurentPoly<C> {
        LaurentPoly::from_terms(self.nonzero().map(|(w, c)| (w, c.clone())))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.window != other.window {
            return Err(Error::WindowMismatch);
        }
        Ok(WindowedMultiplicity {
            window: self.window.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.window != other.window {
            return Err(Error::WindowMismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a.to_complex() - b.to_complex()).norm())
            .fold(0.0, f64::max))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Coeff::is_negligible)
    }

    /// Restriction to a sub-window.
    pub fn restrict(&self, window: Window) -> Self {
        let mut m = Self::zeros(window);
        for (w, c) in self.iter() {
            m.set(&w, c.clone());
        }
        m
    }

    /// `Σ_μ m(μ) f̂(-μ)`, the pairing with a character.
    pub fn pair_with(&self, f: &LaurentPoly<C>) -> C {
        let mut acc = C::zero();
        for (w, c) in f.terms() {
            if let Some(m) = self.get(&w.neg()) {
                acc = acc + m.clone() * c.clone();
            }
        }
        acc
    }
}
