//! Both sides of the deformed Poisson summation identity
//!
//! `Σ_{η∈Π} ⟨f, Φ_t(·)^{ℓη}⟩ = |T_ℓ|⁻¹ Σ_{g∈T_ℓ} f(g_t) / det(1 + tℓ⁻¹dv_t)(g_t)`,
//!
//! computed independently: the left side by expanding characters and taking
//! constant terms, the right side by solving for the jets `g_t`.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::charring::{evaluate_at_jet, ComplexPoly, LaurentPoly};
use crate::error::{Error, Result};
use crate::jetcalc::{exp_nilpotent, flow_jacobian_det, solve_fixed_point, Series, VectorFieldSeries};
use crate::rootsys::{RootDatum, WeightVec};
use crate::tlevel::enumerate_tlevel;
use crate::{PRUNE_TOL, TWO_PI_I};

/// Cap on the number of candidate weights examined for the left side.
pub const DEFAULT_CANDIDATE_CAP: usize = 5_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct PoissonReport {
    pub order: usize,
    pub deviations: Vec<f64>,
    pub max_deviation: f64,
    pub lhs: Series<Complex64>,
    pub rhs: Series<Complex64>,
    pub eta_count: usize,
    pub tol: f64,
    pub passed: bool,
}

/// `Φ_t(u)^{ℓη} = u^{ℓη}·exp(2πi t η·v_t(u))` as a series with character
/// coefficients, multiplied by `start`.
pub fn twisted_multiplier(
    v: &VectorFieldSeries,
    eta: &[i64],
    d: &RootDatum,
    n: usize,
    start: &ComplexPoly,
) -> Series<ComplexPoly> {
    let mut a = vec![ComplexPoly::zero(); n + 1];
    for j in 0..n.min(v.order() + 1) {
        let terms = v.orders()[j]
            .iter()
            .map(|(lam, c)| (lam.clone(), TWO_PI_I * d.basic_pair_int_complex(eta, c)));
        a[j + 1] = LaurentPoly::from_terms(terms);
    }
    let start = start.shift(&d.level_flat(eta));
    Series::from_coeffs(exp_nilpotent(&a, start))
}

/// Contribution of a single `η` to the left side.
pub fn lhs_term(v: &VectorFieldSeries, f: &ComplexPoly, eta: &[i64], d: &RootDatum, n: usize) -> Series<Complex64> {
    let s = twisted_multiplier(v, eta, d, n, f);
    Series::from_coeffs(s.coeffs().iter().map(LaurentPoly::constant_term).collect())
}

/// `N`-fold sumset of `supp(v) ∪ {0}`.
fn sumset(v: &VectorFieldSeries, n: usize, rank: usize, cap: usize) -> Result<BTreeSet<WeightVec>> {
    let mut base: BTreeSet<WeightVec> = v.support_up_to(n).into_iter().collect();
    base.insert(WeightVec::zero(rank));
    let mut acc = BTreeSet::from([WeightVec::zero(rank)]);
    for _ in 0..n {
        let mut next = BTreeSet::new();
        for a in &acc {
            for b in &base {
                next.insert(a.add(b));
            }
        }
        if next.len() > cap {
            return Err(Error::CapExceeded { what: "sumset", size: next.len() as u128, cap: cap as u128 });
        }
        acc = next;
    }
    Ok(acc)
}

/// Every `η` with `ℓη ∈ −(supp f + S_N)`, sorted.
pub fn lhs_candidates(v: &VectorFieldSeries, f: &ComplexPoly, d: &RootDatum, n: usize) -> Result<Vec<Vec<i64>>> {
    let s = sumset(v, n, d.rank, DEFAULT_CANDIDATE_CAP)?;
    let total = s.len().saturating_mul(f.len());
    if total > DEFAULT_CANDIDATE_CAP {
        return Err(Error::CapExceeded {
            what: "Poisson candidates",
            size: total as u128,
            cap: DEFAULT_CANDIDATE_CAP as u128,
        });
    }
    let mut out = BTreeSet::new();
    for mu in f.support() {
        for w in &s {
            let xi = d.level_sharp(&mu.add(w).neg());
            if xi.is_integral() {
                out.insert(xi.0.iter().map(|x| x.to_integer()).collect::<Vec<i64>>());
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn check_inputs(v: &VectorFieldSeries, f: &ComplexPoly, d: &RootDatum) -> Result<()> {
    if !v.is_zero() {
        d.check_dim(v.rank())?;
    }
    if let Some(w) = f.support().next() {
        d.check_dim(w.rank())?;
    }
    Ok(())
}

fn sum_in_order(terms: Vec<Series<Complex64>>, n: usize) -> Series<Complex64> {
    let mut acc = Series::zero(n);
    for t in &terms {
        acc.add_scaled(t, Complex64::new(1.0, 0.0));
    }
    acc
}

/// Left side and the number of `η` with a nonzero contribution.
pub fn poisson_lhs(v: &VectorFieldSeries, f: &ComplexPoly, d: &RootDatum, n: usize) -> Result<(Series<Complex64>, usize)> {
    check_inputs(v, f, d)?;
    let cands = lhs_candidates(v, f, d, n)?;
    let terms: Vec<Series<Complex64>> = cands.par_iter().map(|eta| lhs_term(v, f, eta, d, n)).collect();
    let count = terms.iter().filter(|t| t.max_norm() > PRUNE_TOL).count();
    Ok((sum_in_order(terms, n), count))
}

/// Left side summed over every `η` in the box `|η_i| ≤ radius`.
pub fn poisson_lhs_box(v: &VectorFieldSeries, f: &ComplexPoly, d: &RootDatum, n: usize, radius: i64) -> Result<Series<Complex64>> {
    check_inputs(v, f, d)?;
    let win = crate::charring::Window::symmetric(d.rank, radius);
    let etas: Vec<Vec<i64>> = win.points().map(|w| w.0).collect();
    let terms = etas.par_iter().map(|eta| lhs_term(v, f, eta, d, n)).collect();
    Ok(sum_in_order(terms, n))
}

/// Right side: average over `T_ℓ` of `f(g_t) / det`.
pub fn poisson_rhs(v: &VectorFieldSeries, f: &ComplexPoly, d: &RootDatum, n: usize) -> Result<Series<Complex64>> {
    check_inputs(v, f, d)?;
    let elems = enumerate_tlevel(d)?;
    let terms: Vec<Series<Complex64>> = elems
        .par_iter()
        .map(|g| {
            let jet = solve_fixed_point(v, &g.to_complex(), d, n)?;
            let det = flow_jacobian_det(v, &jet, d)?;
            evaluate_at_jet(f, &jet, n).div(&det)
        })
        .collect::<Result<_>>()?;
    let total = sum_in_order(terms, n);
    Ok(total.scale(Complex64::new(1.0 / elems.len() as f64, 0.0)))
}

pub fn poisson_check(v: &VectorFieldSeries, f: &ComplexPoly, d: &RootDatum, n: usize, tol: f64) -> Result<PoissonReport> {
    let (lhs, eta_count) = poisson_lhs(v, f, d, n)?;
    let rhs = poisson_rhs(v, f, d, n)?;
    let deviations = lhs.deviations(&rhs)?;
    let max_deviation = deviations.iter().copied().fold(0.0, f64::max);
    Ok(PoissonReport {
        order: n,
        deviations,
        max_deviation,
        lhs,
        rhs,
        eta_count,
        tol,
        passed: max_deviation < tol,
    })
}
