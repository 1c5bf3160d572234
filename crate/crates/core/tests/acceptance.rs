//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::time::Instant;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use loopidx::charring::{
    dirac_induction, irreducible_character, weyl_denominator, weyl_dimension, weyl_numerator, LaurentPoly, Window,
    WindowedMultiplicity,
};
use loopidx::jetcalc::{
    composition_defect, evaluate_field_at_point, flow_jacobian_det, flow_numeric, invert_flow, second_order_closed_form,
    solve_fixed_point, VectorFieldSeries, DEFAULT_SUPPORT_CAP,
};
use loopidx::locindex::{
    assemble_fixed_point_index, check_twisted_invariance, check_weyl_antisymmetry_distribution, FixedPointData,
    FixedPointDatum, IntegrandDatum, Mode,
};
use loopidx::models::{
    coadjoint_toy_index, coadjoint_toy_via_localization, verlinde_fixed_point, verlinde_integrand, verlinde_trig_oracle,
    VerlindeParams,
};
use loopidx::poisson::poisson_check;
use loopidx::random::{random_character, random_field, random_point, random_torus_point, seeded, SparseShape};
use loopidx::rootsys::{CoweightVec, RootDatum, WeightVec};
use loopidx::tlevel::regular_orbit_reps;
use loopidx::Error;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn datum(s: &str) -> RootDatum {
    RootDatum::from_str_spec(s).unwrap()
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn poisson_suite() -> Outcome {
    let start = Instant::now();
    let shape = SparseShape::default();
    let mut worst: f64 = 0.0;
    let mut failed = 0;
    for (seed, group) in ["A1*1", "A1*2", "A1*3", "A2*1"].iter().enumerate() {
        let d = datum(group);
        let mut rng = seeded(1000 + seed as u64);
        for _ in 0..50 {
            let v = random_field(&mut rng, d.rank, &shape);
            assert!(v.support_size() <= 3);
            let f = random_character(&mut rng, d.rank, 3, 3);
            let r = poisson_check(&v, &f, &d, 4, 1e-8).unwrap();
            worst = worst.max(r.max_deviation);
            failed += usize::from(!r.passed);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    (failed == 0 && secs < 60.0, format!("200 pairs, {failed} failed, max deviation {worst:.2e}, {secs:.1} s"))
}

fn flow_inversion() -> Outcome {
    let shape = SparseShape::default();
    let mut rng = seeded(2000);
    let mut worst: f64 = 0.0;
    for (i, group) in ["A1*2", "A2*1"].iter().cycle().take(20).enumerate() {
        let d = datum(group);
        let v = random_field(&mut rng, d.rank, &shape);
        let psi = match invert_flow(&v, &d, 6, DEFAULT_SUPPORT_CAP) {
            Ok(p) => p,
            Err(e) => return (false, format!("field {i}: {e}")),
        };
        // Points of the compact torus: off it, |e^μ| grows with |μ| and the
        // large symbolic support of ψ cancels catastrophically in f64.
        for _ in 0..20 {
            let xi = random_torus_point(&mut rng, d.rank);
            worst = worst.max(composition_defect(&v, &psi, &xi, &d, 6).unwrap());
        }
    }
    (worst < 1e-9, format!("20 fields x 20 points of T, max deviation {worst:.2e}"))
}

fn order_two_closed_form() -> Outcome {
    let shape = SparseShape::default();
    let mut rng = seeded(3000);
    let mut worst: f64 = 0.0;
    for group in ["A1*1", "A1*2", "A1*3", "A2*1", "A2*2", "B2*2", "G2*1"] {
        let d = datum(group);
        for _ in 0..10 {
            let v = random_field(&mut rng, d.rank, &shape);
            let psi = invert_flow(&v, &d, 2, DEFAULT_SUPPORT_CAP).unwrap();
            for _ in 0..5 {
                let g = random_point(&mut rng, d.rank);
                let closed = second_order_closed_form(&v, &g, &d).unwrap();
                let jet = solve_fixed_point(&v, &g, &d, 3).unwrap();
                // The symbolic inverse field carries the same coefficient one order down.
                let symbolic = &evaluate_field_at_point(&psi, &g)[1];
                for m in 0..d.rank {
                    worst = worst.max((jet.plus[2][m] - closed[m]).norm());
                    worst = worst.max((symbolic[m] - closed[m]).norm());
                }
            }
        }
    }
    (worst < 1e-10, format!("350 inputs over 7 groups, max deviation {worst:.2e}"))
}

fn verlinde_endpoint() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for k in 0..=10 {
        for h in 1..=4 {
            let p = VerlindeParams::new('A', 1, k, h).unwrap();
            let value = verlinde_fixed_point(&p).unwrap();
            let oracle = verlinde_trig_oracle(&p).unwrap();
            let dev = (value.re - oracle).abs().max(value.im.abs()) / oracle.abs().max(1.0);
            worst = worst.max(dev);
            let rounded = value.re.round();
            if dev >= 1e-6 || rounded < 1.0 || (value.re - rounded).abs() > 1e-6 {
                bad.push((k, h));
            }
        }
    }
    let spot = |k, h| verlinde_fixed_point(&VerlindeParams::new('A', 1, k, h).unwrap()).unwrap().re.round();
    let (s1, s2) = (spot(1, 2), spot(2, 2));
    let secs = start.elapsed().as_secs_f64();
    let ok = bad.is_empty() && s1 == 4.0 && s2 == 10.0 && secs < 5.0;
    (ok, format!("k<=10, h<=4: max rel deviation {worst:.2e}, bad {bad:?}, spots {s1} {s2}, {secs:.2} s"))
}

fn two_path_localization() -> Outcome {
    let mut cases = 0;
    let mut mismatches = Vec::new();
    for l in 1..=3 {
        let d = datum(&format!("A1*{l}"));
        for lam in 0..=2 {
            let lam = WeightVec(vec![lam]);
            for radius in 1..=12 {
                let win = Window::symmetric(1, radius);
                let direct = coadjoint_toy_index(&d, &lam, &win).unwrap();
                let local = coadjoint_toy_via_localization(&d, &lam, &win).unwrap();
                cases += 1;
                if direct != local {
                    mismatches.push((l, lam.0[0], radius));
                }
            }
        }
    }
    (mismatches.is_empty(), format!("{cases} windows, mismatches {mismatches:?}"))
}

fn orbit_data(d: &RootDatum, integrand: &IntegrandDatum) -> FixedPointData {
    FixedPointData {
        points: regular_orbit_reps(d)
            .unwrap()
            .into_iter()
            .map(|(g, _)| FixedPointDatum { rep: g.xi, integrand: integrand.clone() })
            .collect(),
    }
}

fn antisymmetry_and_support() -> Outcome {
    let shape = SparseShape::default();
    let mut rng = seeded(6000);
    let mut worst: f64 = 0.0;
    let mut dists = 0;
    for (group, k) in [("A1*3", 1), ("A1*4", 2), ("A2*4", 1), ("B2*4", 1)] {
        let d = datum(group);
        let weyl = d.weyl_group().unwrap();
        // W-invariant integrands: the trivial one and the Verlinde one.
        let kind = group.chars().next().unwrap();
        let p = VerlindeParams::new(kind, d.rank, k, 2).unwrap();
        assert_eq!(p.datum.gram, d.gram);
        for integrand in [IntegrandDatum::one(d.rank), verlinde_integrand(&p)] {
            let data = orbit_data(&d, &integrand);
            for _ in 0..3 {
                let v = random_field(&mut rng, d.rank, &shape).weyl_symmetrize(weyl);
                let dist = assemble_fixed_point_index(&data, &v, &d, 4, Mode::T).unwrap();
                worst = worst.max(check_weyl_antisymmetry_distribution(&dist, &d).unwrap());
                dists += 1;
            }
        }
    }
    let d = datum("A1*2");
    let v = random_field(&mut rng, 1, &shape);
    let reject = |rep: &str| {
        let data = FixedPointData {
            points: vec![FixedPointDatum { rep: CoweightVec(vec![rep.parse().unwrap()]), integrand: IntegrandDatum::one(1) }],
        };
        assemble_fixed_point_index(&data, &v, &d, 4, Mode::T)
    };
    let wall = matches!(reject("0"), Err(Error::NotRegular(_))) && matches!(reject("1/2"), Err(Error::NotRegular(_)));
    let outside = matches!(reject("1/3"), Err(Error::NotInTLevel(_)));
    (
        worst < 1e-9 && wall && outside,
        format!("{dists} distributions, max deviation {worst:.2e}, wall points rejected {wall}, non-T_l rejected {outside}"),
    )
}

fn twisted_invariance() -> Outcome {
    let shape = SparseShape::default();
    let mut rng = seeded(7000);
    let d = datum("A1*2");
    let p = VerlindeParams::new('A', 1, 0, 2).unwrap();
    let data = orbit_data(&d, &verlinde_integrand(&p));
    let mut worst: f64 = 0.0;
    let mut control: f64 = f64::INFINITY;
    for i in 0..10 {
        let v = random_field(&mut rng, 1, &shape);
        let eta = [[-2, -1, 1, 2][i % 4]];
        let mut dist = assemble_fixed_point_index(&data, &v, &d, 4, Mode::T).unwrap();
        worst = worst.max(check_twisted_invariance(&dist, &v, &d, &eta).unwrap());
        // Move one atom off T_l and re-solve its jet there.
        let moved = vec![dist.atoms[0].jet.base[0] + c(0.1)];
        dist.atoms[0].jet = solve_fixed_point(&v, &moved, &d, 4).unwrap();
        control = control.min(check_twisted_invariance(&dist, &v, &d, &eta).unwrap());
    }
    (
        worst < 1e-8 && control >= 1e-8,
        format!("10 pairs, max deviation {worst:.2e}; corrupted control min deviation {control:.2e}"),
    )
}

fn fd_jacobian_det(v: &VectorFieldSeries, x: &[Complex64], t: f64, d: &RootDatum) -> Complex64 {
    let r = x.len();
    let h = 1e-5;
    let mut jac = vec![vec![Complex64::new(0.0, 0.0); r]; r];
    for i in 0..r {
        let mut plus = x.to_vec();
        let mut minus = x.to_vec();
        plus[i] += h;
        minus[i] -= h;
        let (fp, fm) = (flow_numeric(v, &plus, t, d), flow_numeric(v, &minus, t, d));
        for m in 0..r {
            jac[m][i] = (fp[m] - fm[m]) / (2.0 * h);
        }
    }
    match r {
        1 => jac[0][0],
        2 => jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0],
        _ => unreachable!("rank 1 or 2 only"),
    }
}

fn jacobian_oracle() -> Outcome {
    let shape = SparseShape::default();
    let mut rng = seeded(8000);
    let mut worst: f64 = 0.0;
    let mut worst_shift: f64 = 0.0;
    for group in ["A1*1", "A1*2", "A2*1", "A2*2"].iter().cycle().take(10) {
        let d = datum(group);
        let v = random_field(&mut rng, d.rank, &shape);
        let g = random_point(&mut rng, d.rank);
        let jet = solve_fixed_point(&v, &g, &d, 6).unwrap();
        let det = flow_jacobian_det(&v, &jet, &d).unwrap();
        for t in [1e-3, 1e-4] {
            let x = jet.point_at(c(t));
            let fd = fd_jacobian_det(&v, &x, t, &d);
            let series = det.eval(c(t));
            worst = worst.max((series - fd).norm() / fd.norm());
            // Absolute error scaled by t, so the identity part cannot hide it.
            worst_shift = worst_shift.max((series - fd).norm() / t);
        }
    }
    (
        worst < 1e-5,
        format!("10 fields, t in {{1e-3, 1e-4}}: max rel error {worst:.2e} (abs error / t: {worst_shift:.2e})"),
    )
}

fn bounding_window(p: &LaurentPoly<i64>, rank: usize) -> Window {
    let mut lo = vec![0; rank];
    let mut hi = vec![0; rank];
    for w in p.support() {
        for i in 0..rank {
            lo[i] = lo[i].min(w.0[i] - 1);
            hi[i] = hi[i].max(w.0[i] + 1);
        }
    }
    Window::new(lo, hi).unwrap()
}

fn character_ring() -> Outcome {
    let mut count = 0;
    let mut bad = Vec::new();
    for group in ["A1", "A2", "A3"] {
        let d = datum(group);
        let j = weyl_denominator::<i64>(&d).unwrap();
        for lam in Window::new(vec![0; d.rank], vec![4; d.rank]).unwrap().points() {
            count += 1;
            let ok = (|| -> Option<bool> {
                let chi = irreducible_character::<i64>(&lam, &d).ok()?;
                let product = &chi * &j;
                let exact = product == weyl_numerator::<i64>(&lam, &d).ok()?;
                let dim = weyl_dimension(&lam, &d).to_i64()? == chi.sum_of_coefficients();
                let win = bounding_window(&product, d.rank);
                let induced = dirac_induction(&WindowedMultiplicity::from_poly(&product, win), &d).ok()?;
                let identity = induced.len() == 1 && induced.get(&lam) == Some(&1);
                Some(exact && dim && identity)
            })();
            if ok != Some(true) {
                bad.push(format!("{group}{:?}", lam.0));
            }
        }
    }
    (bad.is_empty(), format!("{count} dominant weights, failures {bad:?}"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("poisson identity suite", poisson_suite),
        ("flow inversion", flow_inversion),
        ("order-2 closed form", order_two_closed_form),
        ("verlinde endpoint", verlinde_endpoint),
        ("two-path localization", two_path_localization),
        ("antisymmetry and regular support", antisymmetry_and_support),
        ("twisted invariance", twisted_invariance),
        ("jacobian oracle", jacobian_oracle),
        ("character-ring integrity", character_ring),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (ok, detail) = run();
        failures += usize::from(!ok);
        println!("{} {}. {name}: {detail}", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("acceptance: {}/9 passed", 9 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
