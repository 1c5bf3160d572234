//! A seeded sweep over the invariants of every module, sized to run in a
//! few seconds. Used by the `selftest` command.

use num_complex::Complex64;
use serde::Serialize;

use crate::charring::{dirac_induction, irreducible_character, weyl_denominator, weyl_dimension, Window, WindowedMultiplicity};
use crate::error::Result;
use crate::jetcalc::{composition_defect, fixed_point_residual, flow_jacobian_det, invert_flow, solve_fixed_point, DEFAULT_SUPPORT_CAP};
use crate::locindex::{
    assemble_fixed_point_index, check_twisted_invariance, check_weyl_antisymmetry_distribution, FixedPointData,
    FixedPointDatum, IntegrandDatum, Mode,
};
use crate::models::{coadjoint_toy_index, coadjoint_toy_via_localization, verlinde_fixed_point, verlinde_trig_oracle, VerlindeParams};
use crate::poisson::poisson_check;
use crate::random::{random_character, random_field, random_point, seeded, SparseShape};
use crate::rootsys::{RootDatum, WeightVec};
use crate::tlevel::{enumerate_tlevel, regular_orbit_reps};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Worst deviation or mismatch count observed.
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

fn check(name: &str, value: f64, limit: f64) -> CheckResult {
    CheckResult { name: name.into(), passed: value <= limit, value }
}

/// Data with the trivial integrand at every regular orbit representative.
pub fn unit_data(d: &RootDatum) -> Result<FixedPointData> {
    Ok(FixedPointData {
        points: regular_orbit_reps(d)?
            .into_iter()
            .map(|(g, _)| FixedPointDatum { rep: g.xi, integrand: IntegrandDatum::one(d.rank) })
            .collect(),
    })
}

fn characters() -> Result<f64> {
    let mut bad = 0.0;
    for s in ["A1", "A2"] {
        let d = RootDatum::from_str_spec(s)?;
        let j = weyl_denominator::<i64>(&d)?;
        for lam in Window::new(vec![0; d.rank], vec![2; d.rank])?.points() {
            let chi = irreducible_character::<i64>(&lam, &d)?;
            if chi.sum_of_coefficients() != weyl_dimension(&lam, &d).to_integer() {
                bad += 1.0;
            }
            let m = WindowedMultiplicity::from_poly(&(&chi * &j), Window::symmetric(d.rank, 8));
            let ind = dirac_induction(&m, &d)?;
            if ind.len() != 1 || ind.get(&lam) != Some(&1) {
                bad += 1.0;
            }
        }
    }
    Ok(bad)
}

fn tlevel_counts() -> Result<f64> {
    let mut bad = 0.0;
    for k in 0..=6i64 {
        let d = RootDatum::from_str_spec(&format!("A1*{}", k + 2))?;
        if enumerate_tlevel(&d)?.len() as i64 != 2 * (k + 2) || regular_orbit_reps(&d)?.len() as i64 != k + 1 {
            bad += 1.0;
        }
    }
    Ok(bad)
}

pub fn run_selftest(seed: u64) -> Result<SelftestReport> {
    let mut rng = seeded(seed);
    let shape = SparseShape::default();
    let mut checks = vec![check("characters", characters()?, 0.0), check("tlevel counts", tlevel_counts()?, 0.0)];

    let d2 = RootDatum::from_str_spec("A1*2")?;
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let v = random_field(&mut rng, 1, &shape);
        let f = random_character(&mut rng, 1, 3, 3);
        worst = worst.max(poisson_check(&v, &f, &d2, 3, 1e-8)?.max_deviation);
    }
    checks.push(check("poisson identity", worst, 1e-8));

    let (mut residual, mut inversion, mut det_const): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..3 {
        let v = random_field(&mut rng, 1, &shape);
        let psi = invert_flow(&v, &d2, 4, DEFAULT_SUPPORT_CAP)?;
        for _ in 0..4 {
            let xi = random_point(&mut rng, 1);
            inversion = inversion.max(composition_defect(&v, &psi, &xi, &d2, 4)?);
            let jet = solve_fixed_point(&v, &xi, &d2, 4)?;
            residual = residual.max(fixed_point_residual(&v, &jet, &d2)?);
            det_const = det_const.max((flow_jacobian_det(&v, &jet, &d2)?.coeff(0) - Complex64::new(1.0, 0.0)).norm());
        }
    }
    checks.push(check("fixed-point residual", residual, 1e-9));
    checks.push(check("flow inversion", inversion, 1e-9));
    checks.push(check("jacobian constant term", det_const, 0.0));

    let mut mismatches = 0.0;
    for l in 1..=3 {
        let d = RootDatum::from_str_spec(&format!("A1*{l}"))?;
        for lam in 0..=2 {
            let win = Window::symmetric(1, 8);
            let lam = WeightVec(vec![lam]);
            if coadjoint_toy_index(&d, &lam, &win)? != coadjoint_toy_via_localization(&d, &lam, &win)? {
                mismatches += 1.0;
            }
        }
    }
    checks.push(check("toy two-path equality", mismatches, 0.0));

    let mut verlinde: f64 = 0.0;
    for k in 0..=4 {
        for h in 1..=3 {
            let p = VerlindeParams::new('A', 1, k, h)?;
            let oracle = verlinde_trig_oracle(&p)?;
            verlinde = verlinde.max((verlinde_fixed_point(&p)?.re - oracle).abs() / oracle.max(1.0));
        }
    }
    checks.push(check("verlinde vs oracle", verlinde, 1e-6));

    let data = unit_data(&d2)?;
    let (mut twisted, mut anti): (f64, f64) = (0.0, 0.0);
    for _ in 0..2 {
        let v = random_field(&mut rng, 1, &shape);
        let dist = assemble_fixed_point_index(&data, &v, &d2, 3, Mode::T)?;
        twisted = twisted.max(check_twisted_invariance(&dist, &v, &d2, &[1])?);
        let sym = v.weyl_symmetrize(d2.weyl_group()?);
        let dist = assemble_fixed_point_index(&data, &sym, &d2, 3, Mode::T)?;
        anti = anti.max(check_weyl_antisymmetry_distribution(&dist, &d2)?);
    }
    checks.push(check("twisted invariance", twisted, 1e-8));
    checks.push(check("weyl antisymmetry", anti, 1e-9));

    let passed = checks.iter().all(|c| c.passed);
    Ok(SelftestReport { seed, passed, checks })
}
