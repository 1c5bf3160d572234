//! Localization bookkeeping for isolated fixed-point data, and assembly and
//! verification of fixed-point index distributions supported on `T_ℓ^reg`.

mod nonabelian;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use nonabelian::{
    nonabelian_contribution, nonabelian_sum, orbit_sum, FixedPointContribution, NonabelianSum, MAX_SHELLS,
};

use crate::charring::{
    evaluate_at_jet, rat_from_json, weyl_denominator, Coeff, ComplexPoly, LaurentPoly, WindowedMultiplicity,
};
use crate::error::{Error, Result};
use crate::jetcalc::{flow_jacobian_det, solve_fixed_point, Series, TorusJet, VectorFieldSeries};
use crate::poisson::twisted_multiplier;
use crate::rootsys::{CoweightVec, RootDatum, WeightVec};
use crate::tlevel::{tlevel_order, TLevelElement};

/// Tolerance below which a denominator is treated as vanishing.
pub const POLE_TOL: f64 = 1e-9;

/// `(numerator / Π_α (1 − e^{−α})^{mult})^{exponent}`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegrandDatum {
    pub numerator: ComplexPoly,
    pub denominators: Vec<(WeightVec, i64)>,
    pub exponent: i64,
}

impl IntegrandDatum {
    pub fn one(rank: usize) -> Self {
        IntegrandDatum {
            numerator: LaurentPoly::constant(rank, Complex64::new(1.0, 0.0)),
            denominators: Vec::new(),
            exponent: 1,
        }
    }
}

/// Substitutes the jet into the integrand.
pub fn integrand_eval(integrand: &IntegrandDatum, jet: &TorusJet, n: usize) -> Result<Series<Complex64>> {
    let mut value = evaluate_at_jet(&integrand.numerator, jet, n);
    for (alpha, mult) in &integrand.denominators {
        let factor = LaurentPoly::from_terms([
            (WeightVec::zero(alpha.rank()), Complex64::new(1.0, 0.0)),
            (alpha.neg(), Complex64::new(-1.0, 0.0)),
        ]);
        let den = evaluate_at_jet(&factor, jet, n);
        if den.coeff(0).norm() < POLE_TOL {
            return Err(Error::Pole(alpha.0.clone()));
        }
        value = value.mul(&den.pow(-mult)?)?;
    }
    value.pow(integrand.exponent).map_err(|_| Error::Pole(Vec::new()))
}

/// A regular orbit representative and its integrand.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointDatum {
    pub rep: CoweightVec,
    pub integrand: IntegrandDatum,
}

/// `{"points":[{"rep","numerator","denoms":[{"w","mult"}],"exp"}]}`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct FixedPointData {
    pub points: Vec<FixedPointDatum>,
}

#[derive(Serialize, Deserialize)]
struct DenomJson {
    w: Vec<i64>,
    mult: i64,
}

#[derive(Serialize, Deserialize)]
struct PointJson {
    rep: Vec<Value>,
    numerator: ComplexPoly,
    denoms: Vec<DenomJson>,
    exp: i64,
}

#[derive(Serialize, Deserialize)]
struct DataJson {
    points: Vec<PointJson>,
}

impl Serialize for FixedPointData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let points = self
            .points
            .iter()
            .map(|p| PointJson {
                rep: p.rep.0.iter().map(|x| Value::String(x.to_string())).collect(),
                numerator: p.integrand.numerator.clone(),
                denoms: p
                    .integrand
                    .denominators
                    .iter()
                    .map(|(w, m)| DenomJson { w: w.0.clone(), mult: *m })
                    .collect(),
                exp: p.integrand.exponent,
            })
            .collect();
        DataJson { points }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FixedPointData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DataJson::deserialize(d)?;
        let mut points = Vec::new();
        for p in raw.points {
            let rep = p
                .rep
                .iter()
                .map(rat_from_json)
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| serde::de::Error::custom("bad rational in rep"))?;
            points.push(FixedPointDatum {
                rep: CoweightVec(rep),
                integrand: IntegrandDatum {
                    numerator: p.numerator,
                    denominators: p.denoms.into_iter().map(|x| (WeightVec(x.w), x.mult)).collect(),
                    exponent: p.exp,
                },
            });
        }
        Ok(FixedPointData { points })
    }
}

/// Assembly mode: atoms on `T` with alternating signs, or one atom per orbit
/// with the `J`-twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    T,
    G,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" | "t" => Ok(Mode::T),
            "G" | "g" => Ok(Mode::G),
            _ => Err(Error::Parse(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub jet: TorusJet,
    pub coeff: Series<Complex64>,
}

/// `Σ_atoms c(t)·δ_{g_t}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltaJetDistribution {
    pub order: usize,
    pub atoms: Vec<Atom>,
}

fn canonical_rep(g: &CoweightVec, d: &RootDatum) -> Result<TLevelElement> {
    let elem = TLevelElement::new(g.clone(), d)?;
    if !elem.is_regular(d) {
        return Err(Error::NotRegular(g.to_string()));
    }
    Ok(elem)
}

/// Builds the fixed-point index distribution from regular orbit data.
///
/// In mode `T` every `w·g` gets its own solved jet and coefficient
/// `(−1)^{l(w)} c(g_t)`; in mode `G`, `v` must be `W`-invariant and the
/// single atom carries `(−1)^{|R₊|} J(g_t) c(g_t)`.
pub fn assemble_fixed_point_index(
    data: &FixedPointData,
    v: &VectorFieldSeries,
    d: &RootDatum,
    n: usize,
    mode: Mode,
) -> Result<DeltaJetDistribution> {
    if !v.is_zero() {
        d.check_dim(v.rank())?;
    }
    let weyl = d.weyl_group()?;
    if mode == Mode::G {
        let defect = v.weyl_invariance_defect(weyl);
        if defect > 1e-12 {
            return Err(Error::NotWeylInvariant(defect));
        }
    }
    let order = tlevel_order(d) as f64;
    let j: ComplexPoly = weyl_denominator::<i64>(d)?.to_complex();
    let pos_sign = if d.num_positive_roots().is_multiple_of(2) { 1.0 } else { -1.0 };
    let per_point: Vec<Vec<Atom>> = data
        .points
        .par_iter()
        .map(|p| -> Result<Vec<Atom>> {
            let rep = canonical_rep(&p.rep, d)?;
            let jet = solve_fixed_point(v, &rep.to_complex(), d, n)?;
            let det = flow_jacobian_det(v, &jet, d)?;
            let value = integrand_eval(&p.integrand, &jet, n)?;
            let coeff = value.div(&det)?.scale(Complex64::new(1.0 / order, 0.0));
            match mode {
                Mode::G => {
                    let twist = evaluate_at_jet(&j, &jet, n).scale(Complex64::new(pos_sign, 0.0));
                    Ok(vec![Atom { coeff: coeff.mul(&twist)?, jet }])
                }
                Mode::T => weyl
                    .iter()
                    .map(|w| {
                        let moved = rep.act(w);
                        let jet = solve_fixed_point(v, &moved.to_complex(), d, n)?;
                        Ok(Atom { jet, coeff: coeff.scale(Complex64::new(w.sign as f64, 0.0)) })
                    })
                    .collect(),
            }
        })
        .collect::<Result<_>>()?;
    Ok(DeltaJetDistribution { order: n, atoms: per_point.into_iter().flatten().collect() })
}

/// `Σ_atoms c(t)·f(g_t)`.
pub fn pair_with_character(dist: &DeltaJetDistribution, f: &ComplexPoly) -> Series<Complex64> {
    let n = dist.order;
    let mut acc = Series::zero(n);
    for a in &dist.atoms {
        let value = evaluate_at_jet(f, &a.jet, n).mul_unchecked(&a.coeff);
        acc.add_scaled(&value, Complex64::new(1.0, 0.0));
    }
    acc
}

/// Default panel radius for the twisted-invariance check.
pub const PANEL_RADIUS: i64 = 3;

/// Max over the panel `{e^λ : |λ_i| ≤ 3}` of
/// `|⟨dist, f·Φ_t(·)^{ℓη}⟩ − ⟨dist, f⟩|`, through the distribution's order.
pub fn check_twisted_invariance(
    dist: &DeltaJetDistribution,
    v: &VectorFieldSeries,
    d: &RootDatum,
    eta: &[i64],
) -> Result<f64> {
    d.check_dim(eta.len())?;
    let n = dist.order;
    let one = LaurentPoly::constant(d.rank, Complex64::new(1.0, 0.0));
    let multiplier = twisted_multiplier(v, eta, d, n, &one);
    // Multiplier at each atom as a scalar series.
    let at_atoms: Vec<Series<Complex64>> = dist
        .atoms
        .iter()
        .map(|a| {
            let mut s = Series::zero(n);
            for (k, mk) in multiplier.coeffs().iter().enumerate() {
                s.add_scaled(&evaluate_at_jet(mk, &a.jet, n).shift_t(k), Complex64::new(1.0, 0.0));
            }
            s
        })
        .collect();
    let panel = crate::charring::Window::symmetric(d.rank, PANEL_RADIUS);
    let mut worst: f64 = 0.0;
    for lam in panel.points() {
        let f = LaurentPoly::monomial(lam, Complex64::new(1.0, 0.0));
        let mut diff = Series::zero(n);
        for (a, m) in dist.atoms.iter().zip(&at_atoms) {
            let fa = evaluate_at_jet(&f, &a.jet, n).mul_unchecked(&a.coeff);
            let twisted = fa.mul_unchecked(m);
            diff.add_scaled(&twisted.sub(&fa)?, Complex64::new(1.0, 0.0));
        }
        worst = worst.max(diff.max_norm());
    }
    Ok(worst)
}

/// `max |m(wλ) − (−1)^{l(w)} m(λ)|` over every orbit that fits in the window.
pub fn check_weyl_antisymmetry_windowed<C: Coeff>(m: &WindowedMultiplicity<C>, d: &RootDatum) -> Result<f64> {
    let weyl = d.weyl_group()?;
    let window = m.window();
    let mut worst: f64 = 0.0;
    let mut any = false;
    for lam in window.points() {
        let images: Vec<(WeightVec, i64)> = weyl.iter().map(|w| (w.act_weight(&lam), w.sign)).collect();
        if !images.iter().all(|(p, _)| window.contains(p)) {
            continue;
        }
        any = true;
        let base = m.get(&lam).expect("in window").to_complex();
        for (p, s) in images {
            let val = m.get(&p).expect("in window").to_complex();
            worst = worst.max((val - base * s as f64).norm());
        }
    }
    if !any {
        return Err(Error::WindowTooSmall);
    }
    Ok(worst)
}

/// Atom-matching antisymmetry: the atom at `w·g` must carry `w·g_t⁺` and
/// coefficient `(−1)^{l(w)} c`. Missing partners count with their full size.
pub fn check_weyl_antisymmetry_distribution(dist: &DeltaJetDistribution, d: &RootDatum) -> Result<f64> {
    let weyl = d.weyl_group()?;
    let key = |base: &[Complex64]| -> Vec<i64> {
        base.iter().map(|z| ((z.re - z.re.floor()) * 1e9).round() as i64 % 1_000_000_000).collect()
    };
    let index: std::collections::HashMap<Vec<i64>, usize> =
        dist.atoms.iter().enumerate().map(|(i, a)| (key(&a.jet.base), i)).collect();
    let mut worst: f64 = 0.0;
    for a in &dist.atoms {
        for w in weyl {
            let moved = a.jet.act(w);
            let expected = a.coeff.scale(Complex64::new(w.sign as f64, 0.0));
            match index.get(&key(&moved.base)) {
                Some(&i) => {
                    let b = &dist.atoms[i];
                    worst = worst.max(b.coeff.max_abs_diff(&expected)?);
                    for (x, y) in b.jet.plus.iter().flatten().zip(moved.plus.iter().flatten()) {
                        worst = worst.max((x - y).norm());
                    }
                }
                None => worst = worst.max(expected.max_norm()),
            }
        }
    }
    Ok(worst)
}
