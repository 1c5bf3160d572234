//! The character ring `ℂR(T)` as sparse Laurent polynomials, windowed
//! truncations of `R^{-∞}(T)`, Weyl antisymmetrization, irreducible
//! characters, Dirac induction and evaluation at torus jets.

mod coeff;
mod poly;
mod window;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;

pub use coeff::{parse_rat, rat_from_json, Coeff, GaussRat};
pub use poly::{ComplexPoly, LaurentPoly};
pub use window::{Window, WindowedMultiplicity};

use crate::error::{Error, Result};
use crate::jetcalc::{exp_series_scalar, Series, TorusJet};
use crate::rootsys::{Rat, RootDatum, WeightVec};
use crate::TWO_PI_I;

/// `Σ_w (-1)^{l(w)} w·p`.
pub fn weyl_antisymmetrize<C: Coeff>(p: &LaurentPoly<C>, d: &RootDatum) -> Result<LaurentPoly<C>> {
    let mut out = LaurentPoly::zero();
    for w in d.weyl_group()? {
        for (lam, c) in p.terms() {
            let c = if w.sign < 0 { -c.clone() } else { c.clone() };
            out.add_term(w.act_weight(lam), c);
        }
    }
    Ok(out)
}

/// `Σ_w (-1)^{l(w)} w·p` normalized by nothing; the symmetrizer counterpart.
pub fn weyl_symmetrize<C: Coeff>(p: &LaurentPoly<C>, d: &RootDatum) -> Result<LaurentPoly<C>> {
    let mut out = LaurentPoly::zero();
    for w in d.weyl_group()? {
        for (lam, c) in p.terms() {
            out.add_term(w.act_weight(lam), c.clone());
        }
    }
    Ok(out)
}

/// The Weyl denominator `J = Σ_w (-1)^{l(w)} e^{wρ}`.
pub fn weyl_denominator<C: Coeff>(d: &RootDatum) -> Result<LaurentPoly<C>> {
    weyl_antisymmetrize(&LaurentPoly::monomial(d.rho.clone(), C::one()), d)
}

/// `e^ρ Π_{α>0} (1 - e^{-α})`, the product form of `J`.
pub fn weyl_denominator_product<C: Coeff>(d: &RootDatum) -> LaurentPoly<C> {
    let mut acc = LaurentPoly::monomial(d.rho.clone(), C::one());
    for a in &d.positive_roots {
        let factor = LaurentPoly::from_terms([
            (WeightVec::zero(d.rank), C::one()),
            (a.neg(), -C::one()),
        ]);
        acc = &acc * &factor;
    }
    acc
}

/// `J̄ = Σ_w (-1)^{l(w)} e^{-wρ}`.
pub fn weyl_denominator_conjugate<C: Coeff>(d: &RootDatum) -> Result<LaurentPoly<C>> {
    Ok(weyl_denominator::<C>(d)?.dual())
}

/// The Weyl numerator `Σ_w (-1)^{l(w)} e^{w(λ+ρ)}`.
pub fn weyl_numerator<C: Coeff>(lambda: &WeightVec, d: &RootDatum) -> Result<LaurentPoly<C>> {
    weyl_antisymmetrize(&LaurentPoly::monomial(lambda.add(&d.rho), C::one()), d)
}

/// Weyl dimension formula `Π_{α>0} ⟨λ+ρ, α^∨⟩ / ⟨ρ, α^∨⟩`.
pub fn weyl_dimension(lambda: &WeightVec, d: &RootDatum) -> Rat {
    let shifted = lambda.add(&d.rho);
    d.positive_coroots
        .iter()
        .map(|c| Rat::new(shifted.pair_int(c), d.rho.pair_int(c)))
        .product()
}

fn grlex(w: &WeightVec) -> (i64, WeightVec) {
    (w.0.iter().sum(), w.clone())
}

/// Exact sparse division in `C[Λ]` under graded-lex order.
///
/// Fails with [`Error::NonzeroRemainder`] when `b` does not divide `a`.
pub fn exact_divide<C: Coeff>(a: &LaurentPoly<C>, b: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
    if b.is_empty() {
        return Err(Error::NonzeroRemainder);
    }
    if a.is_empty() {
        return Ok(LaurentPoly::zero());
    }
    let rank = b.support().next().map_or(0, WeightVec::rank);
    let bounds = |p: &LaurentPoly<C>, pick: fn(i64, i64) -> i64| -> Vec<i64> {
        (0..rank)
            .map(|k| p.support().map(|w| w.0[k]).reduce(pick).unwrap_or(0))
            .collect()
    };
    let lo: Vec<i64> = bounds(a, i64::min)
        .iter()
        .zip(bounds(b, i64::min))
        .map(|(x, y)| x - y)
        .collect();
    let hi: Vec<i64> = bounds(a, i64::max)
        .iter()
        .zip(bounds(b, i64::max))
        .map(|(x, y)| x - y)
        .collect();

    let (lead_b, lead_c) = b
        .terms()
        .max_by(|x, y| grlex(x.0).cmp(&grlex(y.0)))
        .map(|(w, c)| (w.clone(), c.clone()))
        .expect("nonempty");
    let mut rem: BTreeMap<(i64, WeightVec), C> =
        a.terms().map(|(w, c)| (grlex(w), c.clone())).collect();
    let mut quotient = LaurentPoly::zero();
    while let Some(((_, lead), c)) = rem.pop_last() {
        let qw = lead.sub(&lead_b);
        let in_box = qw.0.iter().enumerate().all(|(k, x)| lo[k] <= *x && *x <= hi[k]);
        if !in_box {
            return Err(Error::NonzeroRemainder);
        }
        let qc = c.exact_div(&lead_c).ok_or(Error::NonzeroRemainder)?;
        for (bw, bc) in b.terms() {
            if *bw == lead_b {
                continue;
            }
            let key = grlex(&qw.add(bw));
            let delta = qc.clone() * bc.clone();
            match rem.entry(key) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    if !delta.is_negligible() {
                        e.insert(-delta);
                    }
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let v = e.get().clone() - delta;
                    if v.is_negligible() {
                        e.remove();
                    } else {
                        e.insert(v);
                    }
                }
            }
        }
        quotient.add_term(qw, qc);
    }
    Ok(quotient)
}

/// Character of the irreducible representation with highest weight `λ`,
/// obtained as Weyl numerator divided by `J`.
pub fn irreducible_character<C: Coeff>(lambda: &WeightVec, d: &RootDatum) -> Result<LaurentPoly<C>> {
    d.check_dim(lambda.rank())?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.0.clone()));
    }
    let num = weyl_numerator::<C>(lambda, d)?;
    let den = weyl_denominator::<C>(d)?;
    let chi = exact_divide(&num, &den)?;
    let dim = weyl_dimension(lambda, d);
    debug_assert!(dim.is_integer());
    if chi.sum_of_coefficients() != C::from_i64(dim.to_integer()) {
        return Err(Error::NonzeroRemainder);
    }
    Ok(chi)
}

/// Dirac induction: `λ ↦ m(λ + ρ)` for dominant `λ` whose shifted orbit fits
/// in the window. Antisymmetry of `m` is checked on every orbit that fits.
pub fn dirac_induction<C: Coeff>(
    m: &WindowedMultiplicity<C>,
    d: &RootDatum,
) -> Result<BTreeMap<WeightVec, C>> {
    let weyl = d.weyl_group()?;
    let window = m.window();
    let mut out = BTreeMap::new();
    let mut any_orbit = false;
    for mu in window.points().filter(WeightVec::is_dominant) {
        let orbit: Vec<(WeightVec, i64)> = weyl.iter().map(|w| (w.act_weight(&mu), w.sign)).collect();
        if !orbit.iter().all(|(p, _)| window.contains(p)) {
            continue;
        }
        any_orbit = true;
        let base = m.get(&mu).cloned().unwrap_or_else(C::zero);
        for (p, s) in &orbit {
            let expect = if *s < 0 { -base.clone() } else { base.clone() };
            let got = m.get(p).cloned().unwrap_or_else(C::zero);
            if !(got - expect).is_negligible() {
                return Err(Error::NotAntisymmetric(p.0.clone()));
            }
        }
        let is_regular = mu.0.iter().all(|&x| x > 0);
        if is_regular && !base.is_negligible() {
            out.insert(mu.sub(&d.rho), base);
        }
    }
    if !any_orbit {
        return Err(Error::WindowTooSmall);
    }
    Ok(out)
}

/// Σ_λ p(λ) e^{2πi⟨λ,ξ₀⟩} exp(2πi Σ_k t^k ⟨λ,ξ_k⟩), truncated at `order`.
pub fn evaluate_at_jet<C: Coeff>(p: &LaurentPoly<C>, jet: &TorusJet, order: usize) -> Series<Complex64> {
    let mut acc = Series::zero(order);
    for (lam, c) in p.terms() {
        let s = character_at_jet(lam, jet, order);
        acc.add_scaled(&s, c.to_complex());
    }
    acc
}

/// `e^λ(g_t)` as a truncated series.
pub fn character_at_jet(lam: &WeightVec, jet: &TorusJet, order: usize) -> Series<Complex64> {
    let phase = (TWO_PI_I * lam.pair_complex(&jet.base)).exp();
    let exponent: Vec<Complex64> = (0..=order)
        .map(|k| match k {
            0 => Complex64::zero(),
            _ => jet
                .plus
                .get(k)
                .map_or(Complex64::zero(), |xi| TWO_PI_I * lam.pair_complex(xi)),
        })
        .collect();
    let mut s = exp_series_scalar(&exponent);
    for c in s.coeffs_mut() {
        *c *= phase;
    }
    s
}

/// Plain evaluation `p(exp ξ)`.
pub fn evaluate_at_point<C: Coeff>(p: &LaurentPoly<C>, xi: &[Complex64]) -> Complex64 {
    p.terms()
        .map(|(lam, c)| c.to_complex() * (TWO_PI_I * lam.pair_complex(xi)).exp())
        .sum()
}

/// Directional derivative `∂_X p` for a constant direction `X`.
pub fn directional_derivative(p: &ComplexPoly, x: &[Complex64]) -> ComplexPoly {
    LaurentPoly::from_terms(
        p.terms()
            .map(|(lam, c)| (lam.clone(), c * TWO_PI_I * lam.pair_complex(x))),
    )
}

/// `∂p/∂ξ_i` in coroot coordinates.
pub fn partial_derivative(p: &ComplexPoly, i: usize) -> ComplexPoly {
    LaurentPoly::from_terms(
        p.terms()
            .map(|(lam, c)| (lam.clone(), c * TWO_PI_I * lam.0[i] as f64)),
    )
}

/// Compare by graded-lex order (used for deterministic output).
pub fn grlex_cmp(a: &WeightVec, b: &WeightVec) -> Ordering {
    grlex(a).cmp(&grlex(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetcalc::TorusJet;
    use num_traits::One;

    fn datum(s: &str) -> RootDatum {
        RootDatum::from_str_spec(s).unwrap()
    }

    fn w(v: &[i64]) -> WeightVec {
        WeightVec(v.to_vec())
    }

    #[test]
    fn antisymmetrize_rank_one() {
        let d = datum("A1");
        let p = LaurentPoly::monomial(d.rho.clone(), 1i64);
        let a = weyl_antisymmetrize(&p, &d).unwrap();
        assert_eq!(a, LaurentPoly::from_terms([(w(&[1]), 1), (w(&[-1]), -1)]));
        let one = LaurentPoly::constant(1, 1i64);
        assert!(weyl_antisymmetrize(&one, &d).unwrap().is_empty());
    }

    #[test]
    fn a2_denominator_has_six_unit_terms() {
        let d = datum("A2");
        let j: LaurentPoly<i64> = weyl_denominator(&d).unwrap();
        assert_eq!(j.len(), 6);
        assert!(j.terms().all(|(_, c)| c.abs() == 1));
        // Brute-force: six W-images of ρ enumerated by hand.
        let expected = LaurentPoly::from_terms([
            (w(&[1, 1]), 1),
            (w(&[-1, 2]), -1),
            (w(&[2, -1]), -1),
            (w(&[-2, 1]), 1),
            (w(&[1, -2]), 1),
            (w(&[-1, -1]), -1),
        ]);
        assert_eq!(j, expected);
    }

    #[test]
    fn denominator_equals_product_form() {
        for s in ["A1", "A2", "A3", "B3", "C2", "G2", "A1+A2"] {
            let d = datum(s);
            let j: LaurentPoly<i64> = weyl_denominator(&d).unwrap();
            assert_eq!(j, weyl_denominator_product(&d), "{s}");
        }
        // Rank one: e^{α/2} - e^{-α/2} with α/2 = ω.
        let d = datum("A1");
        let j: LaurentPoly<i64> = weyl_denominator(&d).unwrap();
        assert_eq!(j, LaurentPoly::from_terms([(w(&[1]), 1), (w(&[-1]), -1)]));
    }

    #[test]
    fn denominator_is_antisymmetric() {
        let d = datum("B3");
        let j: LaurentPoly<i64> = weyl_denominator(&d).unwrap();
        for e in d.weyl_group().unwrap() {
            assert_eq!(j.act(e), j.scale(&e.sign));
        }
    }

    #[test]
    fn small_characters() {
        let d = datum("A1");
        let chi: LaurentPoly<i64> = irreducible_character(&w(&[2]), &d).unwrap();
        assert_eq!(chi, LaurentPoly::from_terms([(w(&[2]), 1), (w(&[0]), 1), (w(&[-2]), 1)]));
        let chi: LaurentPoly<i64> = irreducible_character(&w(&[0]), &d).unwrap();
        assert_eq!(chi, LaurentPoly::constant(1, 1));
        let d = datum("A2");
        let adj: LaurentPoly<i64> = irreducible_character(&d.rho, &d).unwrap();
        assert_eq!(adj.sum_of_coefficients(), 8);
        assert_eq!(adj.len(), 7);
        assert_eq!(adj.constant_term(), 2);
        assert!(irreducible_character::<i64>(&w(&[-1, 0]), &d).is_err());
    }

    #[test]
    fn division_detects_remainder() {
        let a = LaurentPoly::from_terms([(w(&[2]), 1i64), (w(&[0]), 1)]);
        let b = LaurentPoly::from_terms([(w(&[1]), 1i64), (w(&[-1]), -1)]);
        assert_eq!(exact_divide(&a, &b), Err(Error::NonzeroRemainder));
        let prod = &a * &b;
        assert_eq!(exact_divide(&prod, &b).unwrap(), a);
    }

    #[test]
    fn dirac_induction_examples() {
        let d = datum("A1");
        let win = Window::symmetric(1, 8);
        let num = |l: i64| weyl_numerator::<i64>(&w(&[l]), &d).unwrap();
        let m = WindowedMultiplicity::from_poly(&num(2), win.clone());
        let out = dirac_induction(&m, &d).unwrap();
        assert_eq!(out, BTreeMap::from([(w(&[2]), 1)]));

        let combo = num(0).scale(&3) - num(4);
        let m = WindowedMultiplicity::from_poly(&combo, win.clone());
        let out = dirac_induction(&m, &d).unwrap();
        assert_eq!(out, BTreeMap::from([(w(&[0]), 3), (w(&[4]), -1)]));

        let bad = WindowedMultiplicity::from_poly(&LaurentPoly::monomial(w(&[3]), 1i64), win);
        assert!(matches!(dirac_induction(&bad, &d), Err(Error::NotAntisymmetric(_))));
    }

    #[test]
    fn dirac_induction_recovers_adjoint_of_su3() {
        let d = datum("A2");
        let chi: LaurentPoly<i64> = irreducible_character(&d.rho, &d).unwrap();
        let j: LaurentPoly<i64> = weyl_denominator(&d).unwrap();
        let m = WindowedMultiplicity::from_poly(&(&chi * &j), Window::symmetric(2, 6));
        let out = dirac_induction(&m, &d).unwrap();
        assert_eq!(out, BTreeMap::from([(d.rho.clone(), 1)]));
    }

    #[test]
    fn tensor_products_decompose_positively() {
        for s in ["A1", "A2"] {
            let d = datum(s);
            let j: LaurentPoly<i64> = weyl_denominator(&d).unwrap();
            let weights: Vec<WeightVec> = if d.rank == 1 {
                (0..4).map(|k| w(&[k])).collect()
            } else {
                vec![w(&[1, 0]), w(&[0, 1]), w(&[1, 1]), w(&[2, 0])]
            };
            for a in &weights {
                for b in &weights {
                    let ca: LaurentPoly<i64> = irreducible_character(a, &d).unwrap();
                    let cb: LaurentPoly<i64> = irreducible_character(b, &d).unwrap();
                    let prod = &(&ca * &cb) * &j;
                    let m = WindowedMultiplicity::from_poly(&prod, Window::symmetric(d.rank, 12));
                    let out = dirac_induction(&m, &d).unwrap();
                    assert!(out.values().all(|&n| n > 0));
                    let total: i64 = out
                        .iter()
                        .map(|(l, n)| n * weyl_dimension(l, &d).to_integer())
                        .sum();
                    assert_eq!(
                        total,
                        weyl_dimension(a, &d).to_integer() * weyl_dimension(b, &d).to_integer()
                    );
                }
            }
        }
    }

    #[test]
    fn evaluate_constant_jet_and_linear_jet() {
        let lam = w(&[3]);
        let p = LaurentPoly::monomial(lam.clone(), Complex64::one());
        let base = vec![Complex64::new(0.1, 0.0)];
        let jet = TorusJet::constant(base.clone(), 4);
        let s = evaluate_at_jet(&p, &jet, 4);
        let expect = (TWO_PI_I * 0.3).exp();
        assert!((s.coeff(0) - expect).norm() < 1e-14);
        assert!((1..=4).all(|k| s.coeff(k).norm() < 1e-14));

        let xi1 = Complex64::new(0.2, -0.1);
        let mut jet = TorusJet::constant(vec![Complex64::zero()], 4);
        jet.plus[1] = vec![xi1];
        let s = evaluate_at_jet(&p, &jet, 4);
        let a = TWO_PI_I * 3.0 * xi1;
        let mut fact = 1.0;
        for k in 0..=4 {
            if k > 0 {
                fact *= k as f64;
            }
            assert!((s.coeff(k) - a.powi(k as i32) / fact).norm() < 1e-12);
        }
    }

    #[test]
    fn denominator_at_quarter_point() {
        let d = datum("A1");
        let j: LaurentPoly<i64> = weyl_denominator(&d).unwrap();
        let jet = TorusJet::constant(vec![Complex64::new(0.25, 0.0)], 2);
        let s = evaluate_at_jet(&j, &jet, 2);
        assert!((s.coeff(0) - Complex64::new(0.0, 2.0)).norm() < 1e-14);
    }

    #[test]
    fn commutation_relation_phase() {
        // u^{ℓη} = e^{2πi ℓξ·η}: the character of B_ℓ η at ξ.
        let d = datum("A2*3");
        let eta = [1, -2];
        let xi = [Complex64::new(0.13, 0.0), Complex64::new(-0.4, 0.0)];
        let p = LaurentPoly::monomial(d.level_flat(&eta), Complex64::one());
        let lhs = evaluate_at_point(&p, &xi);
        let mut dot = Complex64::zero();
        for i in 0..2 {
            for j in 0..2 {
                dot += xi[i] * (d.gram[i][j] * eta[j]) as f64;
            }
        }
        assert!((lhs - (TWO_PI_I * dot).exp()).norm() < 1e-13);
    }
}
