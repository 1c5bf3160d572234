use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::charring::{ComplexPoly, LaurentPoly};
use crate::error::{Error, Result};
use crate::rootsys::{WeightVec, WeylElement};
use crate::PRUNE_TOL;

/// A `ℂ[[t]]`-point of `T_ℂ`: `g_t = exp(base)·exp(Σ_{k≥1} t^k plus[k])`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusJet {
    pub base: Vec<Complex64>,
    /// `plus[0]` is always zero.
    pub plus: Vec<Vec<Complex64>>,
}

impl TorusJet {
    /// The jet with no plus-part.
    pub fn constant(base: Vec<Complex64>, order: usize) -> Self {
        let r = base.len();
        TorusJet { base, plus: vec![vec![Complex64::zero(); r]; order + 1] }
    }

    pub fn rank(&self) -> usize {
        self.base.len()
    }

    pub fn order(&self) -> usize {
        self.plus.len() - 1
    }

    /// Logarithmic coordinates `base + Σ plus_k t^k` at a numeric `t`.
    pub fn point_at(&self, t: Complex64) -> Vec<Complex64> {
        let mut out = self.base.clone();
        let mut tk = Complex64::new(1.0, 0.0);
        for xi in self.plus.iter().skip(1) {
            tk *= t;
            for (o, x) in out.iter_mut().zip(xi) {
                *o += x * tk;
            }
        }
        out
    }

    /// Largest plus-part coefficient.
    pub fn plus_norm(&self) -> f64 {
        self.plus
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `w·g_t`, acting on base and plus-part.
    pub fn act(&self, w: &WeylElement) -> Self {
        TorusJet {
            base: w.act_complex(&self.base),
            plus: self.plus.iter().map(|xi| w.act_complex(xi)).collect(),
        }
    }
}

/// `v_t = Σ_j t^j v_j` with `v_j ∈ 𝔱_ℂ ⊗ ℂR(T)`, stored as weight ↦ coweight vector.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorFieldSeries {
    rank: usize,
    orders: Vec<BTreeMap<WeightVec, Vec<Complex64>>>,
}

fn negligible(c: &[Complex64]) -> bool {
    c.iter().all(|z| z.norm() < PRUNE_TOL)
}

impl VectorFieldSeries {
    pub fn zero(rank: usize, order: usize) -> Self {
        VectorFieldSeries { rank, orders: vec![BTreeMap::new(); order + 1] }
    }

    /// The constant field `c` at `t`-order 0.
    pub fn constant(c: Vec<Complex64>, order: usize) -> Self {
        let mut v = Self::zero(c.len(), order);
        v.add_term(0, WeightVec::zero(c.len()), c);
        v
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Highest stored `t`-order.
    pub fn order(&self) -> usize {
        self.orders.len() - 1
    }

    pub fn orders(&self) -> &[BTreeMap<WeightVec, Vec<Complex64>>] {
        &self.orders
    }

    /// Adds `t^j e^λ ⊗ c`, growing the order if needed.
    pub fn add_term(&mut self, j: usize, lambda: WeightVec, c: Vec<Complex64>) {
        assert_eq!(lambda.rank(), self.rank, "weight rank");
        assert_eq!(c.len(), self.rank, "vector rank");
        if self.orders.len() <= j {
            self.orders.resize(j + 1, BTreeMap::new());
        }
        let entry = self.orders[j]
            .entry(lambda.clone())
            .or_insert_with(|| vec![Complex64::zero(); self.rank]);
        for (a, b) in entry.iter_mut().zip(&c) {
            *a += b;
        }
        if negligible(entry) {
            self.orders[j].remove(&lambda);
        }
    }

    pub fn get(&self, j: usize, lambda: &WeightVec) -> Option<&Vec<Complex64>> {
        self.orders.get(j).and_then(|m| m.get(lambda))
    }

    pub fn is_zero(&self) -> bool {
        self.orders.iter().all(BTreeMap::is_empty)
    }

    /// All weights occurring at orders `≤ n`, sorted.
    pub fn support_up_to(&self, n: usize) -> Vec<WeightVec> {
        let mut all: Vec<WeightVec> = self
            .orders
            .iter()
            .take(n + 1)
            .flat_map(|m| m.keys().cloned())
            .collect();
        all.sort();
        all.dedup();
        all
    }

    pub fn support_size(&self) -> usize {
        self.orders.iter().map(BTreeMap::len).sum()
    }

    /// Component `m` of `v_j` as a Laurent polynomial.
    pub fn component(&self, j: usize, m: usize) -> ComplexPoly {
        match self.orders.get(j) {
            Some(map) => LaurentPoly::from_terms(map.iter().map(|(w, c)| (w.clone(), c[m]))),
            None => LaurentPoly::zero(),
        }
    }

    /// Builds `v_j` from its components.
    pub fn set_order_from_components(&mut self, j: usize, comps: &[ComplexPoly]) {
        assert_eq!(comps.len(), self.rank, "component count");
        for (m, p) in comps.iter().enumerate() {
            for (w, c) in p.terms() {
                let mut vec = vec![Complex64::zero(); self.rank];
                vec[m] = *c;
                self.add_term(j, w.clone(), vec);
            }
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = Self::zero(self.rank, self.order());
        for (j, m) in self.orders.iter().enumerate() {
            for (w, c) in m {
                out.add_term(j, w.clone(), c.iter().map(|z| z * s).collect());
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::Dimension { expected: self.rank, got: other.rank });
        }
        let mut out = self.clone();
        for (j, m) in other.orders.iter().enumerate() {
            for (w, c) in m {
                out.add_term(j, w.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// `(w·v)(u) = w·v(w⁻¹u)`, i.e. `e^λ ⊗ c ↦ e^{wλ} ⊗ wc`.
    pub fn act(&self, w: &WeylElement) -> Self {
        let mut out = Self::zero(self.rank, self.order());
        for (j, m) in self.orders.iter().enumerate() {
            for (lam, c) in m {
                out.add_term(j, w.act_weight(lam), w.act_complex(c));
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        let n = self.orders.len().max(other.orders.len());
        let zero = vec![Complex64::zero(); self.rank];
        for j in 0..n {
            let keys: Vec<&WeightVec> = self
                .orders
                .get(j)
                .into_iter()
                .chain(other.orders.get(j))
                .flat_map(BTreeMap::keys)
                .collect();
            for k in keys {
                let a = self.get(j, k).unwrap_or(&zero);
                let b = other.get(j, k).unwrap_or(&zero);
                for (x, y) in a.iter().zip(b) {
                    worst = worst.max((x - y).norm());
                }
            }
        }
        worst
    }

    /// `max_w |w·v − v|`.
    pub fn weyl_invariance_defect(&self, weyl: &[WeylElement]) -> f64 {
        weyl.iter()
            .map(|w| self.act(w).max_abs_diff(self))
            .fold(0.0, f64::max)
    }

    /// `|W|⁻¹ Σ_w w·v`.
    pub fn weyl_symmetrize(&self, weyl: &[WeylElement]) -> Self {
        let mut acc = Self::zero(self.rank, self.order());
        for w in weyl {
            acc = acc.add(&self.act(w)).expect("same rank");
        }
        acc.scale(Complex64::new(1.0 / weyl.len() as f64, 0.0))
    }
}

#[derive(Serialize, Deserialize)]
struct FieldTermJson {
    w: Vec<i64>,
    vec: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct FieldJson {
    orders: Vec<Vec<FieldTermJson>>,
}

impl Serialize for VectorFieldSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let orders = self
            .orders
            .iter()
            .map(|m| {
                m.iter()
                    .map(|(w, c)| FieldTermJson {
                        w: w.0.clone(),
                        vec: c.iter().map(|z| [z.re, z.im]).collect(),
                    })
                    .collect()
            })
            .collect();
        FieldJson { orders }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for VectorFieldSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = FieldJson::deserialize(d)?;
        let rank = raw.orders.iter().flatten().next().map_or(0, |t| t.w.len());
        let mut v = VectorFieldSeries::zero(rank, raw.orders.len().saturating_sub(1));
        for (j, terms) in raw.orders.into_iter().enumerate() {
            for t in terms {
                if t.w.len() != rank || t.vec.len() != rank {
                    return Err(D::Error::custom("field entries of differing rank"));
                }
                let c = t.vec.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
                v.add_term(j, WeightVec(t.w), c);
            }
        }
        Ok(v)
    }
}

impl VectorFieldSeries {
    /// Re-labels the rank of a field parsed from JSON with no entries.
    pub fn with_rank(self, rank: usize) -> Result<Self> {
        if self.is_zero() {
            return Ok(VectorFieldSeries::zero(rank, self.order()));
        }
        if self.rank != rank {
            return Err(Error::Dimension { expected: rank, got: self.rank });
        }
        Ok(self)
    }
}
