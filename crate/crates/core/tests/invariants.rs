use num_complex::Complex64;
use proptest::prelude::*;

use loopidx::charring::{irreducible_character, weyl_dimension, ComplexPoly, LaurentPoly};
use loopidx::jetcalc::{fixed_point_residual, solve_fixed_point, Series, TorusJet, VectorFieldSeries};
use loopidx::locindex::{FixedPointData, FixedPointDatum, IntegrandDatum};
use loopidx::poisson::poisson_check;
use loopidx::random::{random_character, random_field, random_point, seeded, SparseShape};
use loopidx::rootsys::{RootDatum, WeightVec};
use loopidx::tlevel::{enumerate_tlevel, is_regular, regular_orbit_reps, tlevel_order};

fn datum(s: &str) -> RootDatum {
    RootDatum::from_str_spec(s).unwrap()
}

fn group() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["A1*1", "A1*2", "A1*3", "A2*1", "A2*2", "B2*1", "A1*1+A1*2"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn poisson_identity_holds(g in group(), seed in any::<u64>()) {
        let d = datum(g);
        let mut rng = seeded(seed);
        let v = random_field(&mut rng, d.rank, &SparseShape::default());
        let f = random_character(&mut rng, d.rank, 3, 2);
        let r = poisson_check(&v, &f, &d, 3, 1e-8).unwrap();
        prop_assert!(r.passed, "deviation {}", r.max_deviation);
    }

    #[test]
    fn solved_jet_is_a_fixed_point(g in group(), seed in any::<u64>(), n in 0usize..7) {
        let d = datum(g);
        let mut rng = seeded(seed);
        let v = random_field(&mut rng, d.rank, &SparseShape::default());
        let xi = random_point(&mut rng, d.rank);
        let jet = solve_fixed_point(&v, &xi, &d, n).unwrap();
        prop_assert_eq!(jet.order(), n);
        prop_assert!(fixed_point_residual(&v, &jet, &d).unwrap() < 1e-9);
    }

    #[test]
    fn character_dimensions_multiply(a in 0i64..3, b in 0i64..3, c in 0i64..3, e in 0i64..3) {
        let d = datum("A2");
        let (l1, l2) = (WeightVec(vec![a, b]), WeightVec(vec![c, e]));
        let x = irreducible_character::<i64>(&l1, &d).unwrap();
        let y = irreducible_character::<i64>(&l2, &d).unwrap();
        let dim = |l: &WeightVec| weyl_dimension(l, &d).to_integer();
        prop_assert_eq!((&x * &y).sum_of_coefficients(), dim(&l1) * dim(&l2));
        // Characters are W-invariant.
        for w in d.weyl_group().unwrap() {
            prop_assert_eq!(x.act(w), x.clone());
        }
    }

    #[test]
    fn series_exp_inverts(re in prop::collection::vec(-1.0f64..1.0, 1..6), im in prop::collection::vec(-1.0f64..1.0, 1..6)) {
        let n = re.len().min(im.len());
        let mut coeffs: Vec<Complex64> = (0..n).map(|k| Complex64::new(re[k], im[k])).collect();
        coeffs[0] = Complex64::new(0.0, 0.0);
        let a = Series::from_coeffs(coeffs);
        let prod = a.exp().mul(&a.scale(Complex64::new(-1.0, 0.0)).exp()).unwrap();
        prop_assert!(prod.max_abs_diff(&Series::constant(Complex64::new(1.0, 0.0), n - 1)).unwrap() < 1e-12);
    }

    #[test]
    fn field_json_round_trips(g in group(), seed in any::<u64>()) {
        let d = datum(g);
        let v = random_field(&mut seeded(seed), d.rank, &SparseShape::default());
        let back: VectorFieldSeries = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn jet_and_poly_json_round_trip(seed in any::<u64>()) {
        let d = datum("A2*2");
        let mut rng = seeded(seed);
        let v = random_field(&mut rng, 2, &SparseShape::default());
        let jet = solve_fixed_point(&v, &random_point(&mut rng, 2), &d, 4).unwrap();
        let back: TorusJet = serde_json::from_str(&serde_json::to_string(&jet).unwrap()).unwrap();
        prop_assert_eq!(back, jet);
        let f = random_character(&mut rng, 2, 4, 3);
        let back: ComplexPoly = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn tlevel_partitions_into_free_orbits() {
    for g in ["A1*1", "A1*4", "A2*3", "A2*4", "B2*3", "G2*4", "A1*2+A1*3"] {
        let d = datum(g);
        let all = enumerate_tlevel(&d).unwrap();
        assert_eq!(all.len() as u128, tlevel_order(&d), "{g}");
        let regular = all.iter().filter(|e| is_regular(&e.xi, &d)).count();
        let orbits = regular_orbit_reps(&d).unwrap();
        assert_eq!(orbits.len() as u128 * d.weyl_order, regular as u128, "{g}");
    }
}

#[test]
fn fixed_point_data_round_trips() {
    let d = datum("A2*4");
    let mut integrand = IntegrandDatum::one(2);
    integrand.numerator = LaurentPoly::from_terms([(WeightVec(vec![1, -1]), Complex64::new(0.5, -2.0))]);
    integrand.denominators = vec![(WeightVec(vec![2, -1]), 2)];
    integrand.exponent = 3;
    let data = FixedPointData {
        points: regular_orbit_reps(&d)
            .unwrap()
            .into_iter()
            .map(|(g, _)| FixedPointDatum { rep: g.xi, integrand: integrand.clone() })
            .collect(),
    };
    let text = serde_json::to_string(&data).unwrap();
    let back: FixedPointData = serde_json::from_str(&text).unwrap();
    assert_eq!(back, data);
}
