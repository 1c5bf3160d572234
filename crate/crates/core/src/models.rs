//! Reference models: the coadjoint-orbit toy (a discrete affine Weyl orbit)
//! and the Verlinde model, each with an independent oracle.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::charring::{evaluate_at_point, weyl_denominator, Window, WindowedMultiplicity};
use crate::error::{Error, Result};
use crate::jetcalc::{TorusJet, VectorFieldSeries};
use crate::locindex::{
    assemble_fixed_point_index, integrand_eval, orbit_sum, pair_with_character, FixedPointContribution,
    FixedPointData, FixedPointDatum, IntegrandDatum, Mode,
};
use crate::rootsys::{LieSpec, Rat, RootDatum, WeightVec};
use crate::tlevel::{regular_orbit_reps, tlevel_order};

/// `Σ_{η∈Π} Σ_{w∈W} (−1)^{l(w)} e^{w(λ+ρ) + ℓη}` restricted to the window,
/// by direct enumeration of the lattice points that land in it.
pub fn coadjoint_toy_index(d: &RootDatum, lambda: &WeightVec, window: &Window) -> Result<WindowedMultiplicity<i64>> {
    d.check_dim(lambda.rank())?;
    d.check_dim(window.rank())?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.0.clone()));
    }
    let shifted = lambda.add(&d.rho);
    let mut out = WindowedMultiplicity::zeros(window.clone());
    for w in d.weyl_group()? {
        let p = w.act_weight(&shifted);
        // η ranges over B_ℓ⁻¹(window − p), bounded by its corners.
        let images: Vec<Vec<Rat>> = window.corners().iter().map(|c| d.level_sharp(&c.sub(&p)).0).collect();
        let lo: Vec<i64> = (0..d.rank)
            .map(|i| images.iter().map(|x| x[i]).min().expect("corners").floor().to_integer())
            .collect();
        let hi: Vec<i64> = (0..d.rank)
            .map(|i| images.iter().map(|x| x[i]).max().expect("corners").ceil().to_integer())
            .collect();
        for eta in Window::new(lo, hi)?.points() {
            let mu = p.add(&d.level_flat(&eta.0));
            out.add_at(&mu, w.sign);
        }
    }
    Ok(out)
}

/// One point contribution per Weyl element, at `β = (w(λ+ρ))^♯` for the basic
/// form; their level-`ℓ` Π-orbits make up the toy.
pub fn toy_contributions(d: &RootDatum, lambda: &WeightVec) -> Result<Vec<FixedPointContribution<i64>>> {
    let shifted = lambda.add(&d.rho);
    Ok(d
        .weyl_group()?
        .iter()
        .map(|w| {
            let mu = w.act_weight(&shifted);
            FixedPointContribution::point(d.basic_sharp(&mu), mu, w.sign)
        })
        .collect())
}

/// The toy computed through the localization sum over Π-orbits.
pub fn coadjoint_toy_via_localization(
    d: &RootDatum,
    lambda: &WeightVec,
    window: &Window,
) -> Result<WindowedMultiplicity<i64>> {
    d.check_dim(lambda.rank())?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.0.clone()));
    }
    Ok(orbit_sum(&toy_contributions(d, lambda)?, d, window)?.multiplicity)
}

/// `Σ_w (−1)^{l(w)} g^{w(λ+ρ)}`.
pub fn weyl_numerator_at(d: &RootDatum, lambda: &WeightVec, xi: &[Complex64]) -> Result<Complex64> {
    let num = crate::charring::weyl_numerator::<i64>(lambda, d)?;
    Ok(evaluate_at_point(&num.to_complex(), xi))
}

/// Level-`k` genus-`h` Verlinde problem for a simple group.
#[derive(Clone, Debug)]
pub struct VerlindeParams {
    /// The group at level `ℓ = k + h^∨`.
    pub datum: RootDatum,
    pub k: i64,
    pub genus: i64,
}

impl VerlindeParams {
    /// `kind`/`rank` name a simple factor, e.g. `('A', 1)`.
    pub fn new(kind: char, rank: usize, k: i64, genus: i64) -> Result<Self> {
        if k < 0 {
            return Err(Error::Unsupported(format!("negative level {k}")));
        }
        if genus < 1 {
            return Err(Error::Unsupported(format!("genus {genus} < 1")));
        }
        let probe = crate::rootsys::build_root_datum(&LieSpec::simple(kind, rank, 1)?)?;
        let level = k + probe.dual_coxeter[0];
        let datum = crate::rootsys::build_root_datum(&LieSpec::simple(kind, rank, level)?)?;
        Ok(VerlindeParams { datum, k, genus })
    }

    /// Reads the simple factor from a group string; its level suffix is ignored.
    pub fn from_group(group: &str, k: i64, genus: i64) -> Result<Self> {
        let spec: LieSpec = group.parse()?;
        if spec.factors.len() != 1 {
            return Err(Error::Unsupported(format!("Verlinde model needs a simple group, got {group}")));
        }
        let f = &spec.factors[0];
        Self::new(f.kind, f.rank, k, genus)
    }

    pub fn level(&self) -> i64 {
        self.datum.level_of[0]
    }
}

/// `|T_ℓ| / (J J̄)` raised to `h − 1`, written with denominators over all roots.
pub fn verlinde_integrand(p: &VerlindeParams) -> IntegrandDatum {
    let d = &p.datum;
    IntegrandDatum {
        numerator: crate::charring::LaurentPoly::constant(d.rank, Complex64::new(tlevel_order(d) as f64, 0.0)),
        denominators: d.roots().into_iter().map(|a| (a, 1)).collect(),
        exponent: p.genus - 1,
    }
}

/// Integrand for the `J`-twisted assembly: pairing its mode-`G`
/// distribution with `1` gives the same sum.
pub fn verlinde_integrand_twisted(p: &VerlindeParams) -> IntegrandDatum {
    let d = &p.datum;
    let h = p.genus;
    let sign = if d.num_positive_roots().is_multiple_of(2) { 1.0 } else { -1.0 };
    let scale = (tlevel_order(d) as f64).powi(h as i32);
    let mut denominators: Vec<(WeightVec, i64)> = d.positive_roots.iter().map(|a| (a.clone(), h)).collect();
    denominators.extend(d.positive_roots.iter().map(|a| (a.neg(), h - 1)));
    IntegrandDatum {
        numerator: crate::charring::LaurentPoly::monomial(d.rho.neg(), Complex64::new(sign * scale, 0.0)),
        denominators,
        exponent: 1,
    }
}

fn verlinde_data(p: &VerlindeParams, integrand: IntegrandDatum) -> Result<FixedPointData> {
    Ok(FixedPointData {
        points: regular_orbit_reps(&p.datum)?
            .into_iter()
            .map(|(g, _)| FixedPointDatum { rep: g.xi, integrand: integrand.clone() })
            .collect(),
    })
}

fn ensure_integral(value: Complex64) -> Result<Complex64> {
    if value.im.abs() > 1e-9 || (value.re - value.re.round()).abs() > 1e-6 {
        return Err(Error::NotIntegral { value: format!("{value}") });
    }
    Ok(value)
}

/// Sum of the Verlinde integrand over `T_ℓ^reg/W`.
pub fn verlinde_fixed_point(p: &VerlindeParams) -> Result<Complex64> {
    let integrand = verlinde_integrand(p);
    let reps = regular_orbit_reps(&p.datum)?;
    let terms: Vec<Complex64> = reps
        .par_iter()
        .map(|(g, _)| {
            let jet = TorusJet::constant(g.to_complex(), 0);
            Ok(integrand_eval(&integrand, &jet, 0)?.coeff(0))
        })
        .collect::<Result<_>>()?;
    ensure_integral(terms.into_iter().sum())
}

/// The same number through mode-`G` assembly with `v = 0`, paired with `1`.
pub fn verlinde_assembled(p: &VerlindeParams) -> Result<Complex64> {
    let d = &p.datum;
    let data = verlinde_data(p, verlinde_integrand_twisted(p))?;
    let v = VectorFieldSeries::zero(d.rank, 0);
    let dist = assemble_fixed_point_index(&data, &v, d, 0, Mode::G)?;
    let one = crate::charring::LaurentPoly::constant(d.rank, Complex64::new(1.0, 0.0));
    ensure_integral(pair_with_character(&dist, &one).coeff(0))
}

/// `((k+2)/2)^{h−1} Σ_{j=1}^{k+1} sin(jπ/(k+2))^{2−2h}`, for `SU(2)` only.
pub fn verlinde_trig_oracle(p: &VerlindeParams) -> Result<f64> {
    let f = &p.datum.spec.factors[0];
    if f.kind != 'A' || f.rank != 1 {
        return Err(Error::Unsupported("trigonometric oracle is for A1 only".into()));
    }
    let m = (p.k + 2) as f64;
    let h = p.genus as i32;
    let sum: f64 = (1..=p.k + 1)
        .map(|j| (j as f64 * std::f64::consts::PI / m).sin().powi(2 - 2 * h))
        .sum();
    Ok((m / 2.0).powi(h - 1) * sum)
}

#[derive(Clone, Debug, Serialize)]
pub struct VerlindeReport {
    pub level: i64,
    pub genus: i64,
    pub value: f64,
    pub assembled: f64,
    pub oracle: Option<f64>,
    pub deviation: Option<f64>,
}

pub fn verlinde_report(p: &VerlindeParams, with_oracle: bool) -> Result<VerlindeReport> {
    let value = verlinde_fixed_point(p)?.re;
    let assembled = verlinde_assembled(p)?.re;
    let oracle = if with_oracle { Some(verlinde_trig_oracle(p)?) } else { None };
    Ok(VerlindeReport {
        level: p.k,
        genus: p.genus,
        value: value.round(),
        assembled: assembled.round(),
        oracle,
        deviation: oracle.map(|o| (o - value).abs()),
    })
}

/// `J(g)` at a plain point, used by tests of the twisted assembly.
pub fn denominator_at(d: &RootDatum, xi: &[Complex64]) -> Result<Complex64> {
    Ok(evaluate_at_point(&weyl_denominator::<i64>(d)?.to_complex(), xi))
}
