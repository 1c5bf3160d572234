use std::collections::BTreeMap;

use num_traits::Zero;

use crate::charring::{Coeff, LaurentPoly, Window, WindowedMultiplicity};
use crate::error::{Error, Result};
use crate::rootsys::{CoweightVec, Rat, RootDatum, WeightVec};

/// Data of an isolated localization point `Z_β`.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointContribution<C> {
    pub beta: CoweightVec,
    /// Net phase weight at `Z_β`.
    pub mu0: WeightVec,
    /// Normal weights `α_j`, each with `⟨α_j, β⟩ ≠ 0`.
    pub normal_weights: Vec<WeightVec>,
    /// Weights of the twisting bundle at `Z_β`.
    pub e_weights: LaurentPoly<C>,
    pub sign: i64,
}

impl<C: Coeff> FixedPointContribution<C> {
    /// A point contribution `sign·e^{mu0}`.
    pub fn point(beta: CoweightVec, mu0: WeightVec, sign: i64) -> Self {
        let rank = mu0.rank();
        FixedPointContribution {
            beta,
            mu0,
            normal_weights: Vec::new(),
            e_weights: LaurentPoly::constant(rank, C::one()),
            sign,
        }
    }

    fn check_polarized(&self) -> Result<()> {
        for a in &self.normal_weights {
            if a.pair(&self.beta.0).is_zero() {
                return Err(Error::Unpolarized(a.0.clone()));
            }
        }
        Ok(())
    }

    /// `c_β` with support in `{μ : ⟨μ,β⟩ ≥ c_β}`.
    pub fn half_space_bound(&self) -> Result<Rat> {
        self.check_polarized()?;
        let b = &self.beta.0;
        let e_min = self
            .e_weights
            .support()
            .map(|w| w.pair(b))
            .min()
            .unwrap_or_else(Rat::zero);
        let positive: Rat = self
            .normal_weights
            .iter()
            .map(|a| a.pair(b))
            .filter(|x| *x > Rat::zero())
            .sum();
        Ok(self.mu0.pair(b) + e_min + positive)
    }

    /// Whether the half-space reaches the window.
    pub fn meets(&self, window: &Window) -> Result<bool> {
        if self.beta.0.iter().all(Zero::is_zero) {
            return Ok(true);
        }
        let c = self.half_space_bound()?;
        Ok(window_max(window, &self.beta) >= c)
    }

    /// The level-`ℓ` translate by `η ∈ Π`: `β + ℓη`, phases shifted by `B_ℓη`.
    pub fn translate(&self, eta: &[i64], d: &RootDatum) -> Self {
        let shift = d.level_times(eta);
        FixedPointContribution {
            beta: CoweightVec(
                self.beta
                    .0
                    .iter()
                    .zip(&shift)
                    .map(|(b, &s)| b + Rat::from_integer(s))
                    .collect(),
            ),
            mu0: self.mu0.add(&d.level_flat(eta)),
            normal_weights: self.normal_weights.clone(),
            e_weights: self.e_weights.clone(),
            sign: self.sign,
        }
    }
}

/// `max_{μ∈window} ⟨μ, β⟩`, attained at a corner.
fn window_max(window: &Window, beta: &CoweightVec) -> Rat {
    window
        .corners()
        .iter()
        .map(|c| c.pair(&beta.0))
        .max()
        .expect("windows have corners")
}

/// `sign·e^{mu0}·E·Π_j (1 − e^{−α_j})⁻¹`, each factor expanded in the
/// direction where `⟨·,β⟩` grows, truncated to the window.
pub fn nonabelian_contribution<C: Coeff>(
    c: &FixedPointContribution<C>,
    window: &Window,
) -> Result<WindowedMultiplicity<C>> {
    let bound = c.half_space_bound()?;
    let b = &c.beta.0;
    let top = window_max(window, &c.beta);
    let sign = C::from_i64(c.sign);
    let mut acc: BTreeMap<WeightVec, C> = BTreeMap::new();
    for (w, e) in c.e_weights.terms() {
        let mu = c.mu0.add(w);
        let coeff = sign.clone() * e.clone();
        *acc.entry(mu).or_insert_with(C::zero) = coeff;
    }
    for a in &c.normal_weights {
        let along = a.pair(b);
        // (1 − e^{−α})⁻¹ = Σ e^{−nα} if ⟨α,β⟩ < 0, else −e^{α} Σ e^{nα}.
        let (step, offset, factor) = if along < Rat::zero() {
            (a.neg(), WeightVec::zero(a.rank()), C::one())
        } else {
            (a.clone(), a.clone(), -C::one())
        };
        let mut next: BTreeMap<WeightVec, C> = BTreeMap::new();
        for (mu, coeff) in acc {
            let mut point = mu.add(&offset);
            let value = coeff * factor.clone();
            while point.pair(b) <= top {
                let slot = next.entry(point.clone()).or_insert_with(C::zero);
                *slot = slot.clone() + value.clone();
                point = point.add(&step);
            }
        }
        acc = next;
    }
    let mut out = WindowedMultiplicity::zeros(window.clone());
    for (mu, coeff) in acc {
        if coeff.is_negligible() {
            continue;
        }
        if mu.pair(b) < bound {
            return Err(Error::NonAdmissible(format!("term at {:?} outside its half-space", mu.0)));
        }
        out.add_at(&mu, coeff);
    }
    Ok(out)
}

/// Result of a localization sum.
#[derive(Clone, Debug, PartialEq)]
pub struct NonabelianSum<C> {
    pub multiplicity: WindowedMultiplicity<C>,
    pub used: usize,
    pub skipped: usize,
}

/// Pointwise sum over the contributions whose half-space meets the window.
pub fn nonabelian_sum<C: Coeff>(cs: &[FixedPointContribution<C>], window: &Window) -> Result<NonabelianSum<C>> {
    let mut multiplicity = WindowedMultiplicity::zeros(window.clone());
    let (mut used, mut skipped) = (0, 0);
    for c in cs {
        if c.meets(window)? {
            multiplicity = multiplicity.add(&nonabelian_contribution(c, window)?)?;
            used += 1;
        } else {
            skipped += 1;
        }
    }
    Ok(NonabelianSum { multiplicity, used, skipped })
}

/// Largest `∞`-norm shell examined before a family is declared non-admissible.
pub const MAX_SHELLS: i64 = 4096;

fn shell(rank: usize, s: i64) -> impl Iterator<Item = Vec<i64>> {
    Window::symmetric(rank, s)
        .points()
        .filter(move |p| p.0.iter().map(|x| x.abs()).max().unwrap_or(0) == s)
        .map(|p| p.0)
        .collect::<Vec<_>>()
        .into_iter()
}

fn to_f64(r: &Rat) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

fn quad_f64(m: &[Vec<f64>], x: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (i, row) in m.iter().enumerate() {
        for (j, y) in row.iter().enumerate() {
            acc += x[i] * y * x[j];
        }
    }
    acc.max(0.0).sqrt()
}

/// Last shell that can reach the window, for the basic norm `|·|` and its dual `|·|_*`.
///
/// Along the orbit `β = β₀ + ℓη` and `μ₀ − Bβ` is constant, so
/// `c_β ≥ |β|² − K|β|` with `K = |μ₀ − Bβ₀|_* + max_E |e|_*`. A member reaches
/// the window only if `c_β ≤ R|β|`, `R` the largest dual norm of a corner,
/// hence only if `|β| ≤ R + K`. With `|ℓη| ≥ √m·|η|_∞`, `m ≥ 1/tr((ℓBℓ)⁻¹)`,
/// no shell past `(R + K + |β₀|)/√m` contributes.
fn last_shell<C: Coeff>(base: &FixedPointContribution<C>, d: &RootDatum, window: &Window) -> i64 {
    let b: Vec<Vec<f64>> = d.basic_gram.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    let b_inv: Vec<Vec<f64>> = d.basic_gram_inverse().iter().map(|r| r.iter().map(to_f64).collect()).collect();
    let dual = |mu: &[f64]| quad_f64(&b_inv, mu);
    let beta0: Vec<f64> = base.beta.0.iter().map(to_f64).collect();
    let offset: Vec<f64> = (0..d.rank)
        .map(|i| base.mu0.0[i] as f64 - (0..d.rank).map(|j| b[i][j] * beta0[j]).sum::<f64>())
        .collect();
    let e_max = base
        .e_weights
        .support()
        .map(|w| dual(&w.0.iter().map(|&x| x as f64).collect::<Vec<_>>()))
        .fold(0.0, f64::max);
    let r = window
        .corners()
        .iter()
        .map(|c| dual(&c.0.iter().map(|&x| x as f64).collect::<Vec<_>>()))
        .fold(0.0, f64::max);
    let trace: f64 = (0..d.rank).map(|i| b_inv[i][i] / (d.level_of[i] * d.level_of[i]) as f64).sum();
    let reach = r + dual(&offset) + e_max + quad_f64(&b, &beta0);
    // One extra shell absorbs rounding in the float bound.
    (reach * trace.sqrt()).floor() as i64 + 1
}

/// Sum over the full `Π`-orbits of finitely many contributions.
///
/// Every shell `|η|_∞ = s` up to a norm bound past which no translate can
/// reach the window is added; see [`last_shell`].
pub fn orbit_sum<C: Coeff>(
    families: &[FixedPointContribution<C>],
    d: &RootDatum,
    window: &Window,
) -> Result<NonabelianSum<C>> {
    let mut total = NonabelianSum {
        multiplicity: WindowedMultiplicity::zeros(window.clone()),
        used: 0,
        skipped: 0,
    };
    for base in families {
        let last = last_shell(base, d, window);
        if !(0..=MAX_SHELLS).contains(&last) {
            return Err(Error::NonAdmissible(format!("orbit sum needs {last} shells")));
        }
        for s in 0..=last {
            let members: Vec<FixedPointContribution<C>> = shell(d.rank, s).map(|eta| base.translate(&eta, d)).collect();
            let part = nonabelian_sum(&members, window)?;
            total.multiplicity = total.multiplicity.add(&part.multiplicity)?;
            total.used += part.used;
            total.skipped += part.skipped;
        }
    }
    Ok(total)
}
