use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::coeff::Coeff;
use crate::rootsys::{WeightVec, WeylElement};

/// An element of `ℂR(T) = ℂ[Λ]`: finitely many weights with nonzero
/// coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<C> {
    terms: BTreeMap<WeightVec, C>,
}

pub type ComplexPoly = LaurentPoly<Complex64>;

impl<C: Coeff> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn monomial(w: WeightVec, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn constant(rank: usize, c: C) -> Self {
        Self::monomial(WeightVec::zero(rank), c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (WeightVec, C)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    /// Adds `c e^w`, dropping the entry if it becomes negligible.
    pub fn add_term(&mut self, w: WeightVec, c: C) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                if !c.is_negligible() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_negligible() {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    pub fn coeff(&self, w: &WeightVec) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeightVec, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (WeightVec, C)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &WeightVec> {
        self.terms.keys()
    }

    pub fn constant_term(&self) -> C {
        self.terms
            .iter()
            .find(|(w, _)| w.is_zero())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(C::zero)
    }

    /// True when the only weight present is `0`.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(WeightVec::is_zero)
    }

    pub fn scale(&self, s: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c.clone() * s.clone())))
    }

    /// Multiplication by `e^w`.
    pub fn shift(&self, w: &WeightVec) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k.add(w), c.clone())).collect(),
        }
    }

    /// `w·p` with `w·e^λ = e^{wλ}`.
    pub fn act(&self, w: &WeylElement) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (w.act_weight(k), c.clone()))
                .collect(),
        }
    }

    /// `p(u⁻¹)`, i.e. `e^λ ↦ e^{-λ}`.
    pub fn dual(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k.neg(), c.clone())).collect(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    pub fn to_complex(&self) -> ComplexPoly {
        self.map_coeffs(Coeff::to_complex)
    }

    pub fn sum_of_coefficients(&self) -> C {
        self.terms.values().cloned().fold(C::zero(), |a, b| a + b)
    }

    pub fn pow(&self, n: u32, rank: usize) -> Self {
        let mut acc = Self::constant(rank, C::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut m: f64 = 0.0;
        for (w, c) in &self.terms {
            m = m.max((c.to_complex() - other.coeff(w).to_complex()).norm());
        }
        for (w, c) in &other.terms {
            if !self.terms.contains_key(w) {
                m = m.max(c.to_complex().norm());
            }
        }
        m
    }
}

impl<C: Coeff> Zero for LaurentPoly<C> {
    fn zero() -> Self {
        LaurentPoly::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coeff> Add for LaurentPoly<C> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl<C: Coeff> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn add(self, rhs: Self) -> LaurentPoly<C> {
        self.clone() + rhs.clone()
    }
}

impl<C: Coeff> Sub for LaurentPoly<C> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for (w, c) in rhs.terms {
            self.add_term(w, -c);
        }
        self
    }
}

impl<C: Coeff> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        self.clone() - rhs.clone()
    }
}

impl<C: Coeff> Neg for LaurentPoly<C> {
    type Output = Self;

    fn neg(self) -> Self {
        LaurentPoly { terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect() }
    }
}

impl<C: Coeff> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        let (small, large) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = LaurentPoly::zero();
        for (a, ca) in &small.terms {
            for (b, cb) in &large.terms {
                out.add_term(a.add(b), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Mul for LaurentPoly<C> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    w: Vec<i64>,
    re: Value,
    #[serde(default)]
    im: Value,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

impl<C: Coeff> Serialize for LaurentPoly<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| {
                let (re, im) = c.to_json();
                TermJson { w: w.0.clone(), re, im }
            })
            .collect();
        PolyJson { terms }.serialize(s)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for LaurentPoly<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let rank = raw.terms.first().map(|t| t.w.len());
        let mut p = LaurentPoly::zero();
        for t in raw.terms {
            if Some(t.w.len()) != rank {
                return Err(D::Error::custom("weights of differing rank"));
            }
            let c = C::from_json(&t.re, &t.im)
                .ok_or_else(|| D::Error::custom("bad coefficient"))?;
            p.add_term(WeightVec(t.w), c);
        }
        Ok(p)
    }
}
