//! Truncated power series, torus jets, the fixed-point solver for
//! `g_t⁺ + tℓ⁻¹v_t(g·exp(g_t⁺)) = 0`, Jacobian determinants and the
//! symbolic inverse flow.

mod field;
mod series;

use num_complex::Complex64;
use num_traits::Zero;

pub use field::{TorusJet, VectorFieldSeries};
pub use series::{exp_nilpotent, exp_series_scalar, series_det, Series, SeriesCoeff};

use crate::charring::{ComplexPoly, LaurentPoly};
use crate::error::{Error, Result};
use crate::rootsys::{RootDatum, WeightVec};
use crate::TWO_PI_I;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 6;
/// Largest supported truncation order.
pub const MAX_ORDER: usize = 12;
/// Default cap on the total number of terms of a symbolic inverse flow.
pub const DEFAULT_SUPPORT_CAP: usize = 200_000;

/// Series of coweight vectors, indexed `[order][coordinate]`.
pub type VecSeries<R> = Vec<Vec<R>>;

fn zero_vec_series<R: SeriesCoeff>(rank: usize, n: usize) -> VecSeries<R> {
    vec![vec![R::zero(); rank]; n + 1]
}

/// `2πi Σ_i λ_i z_i` for a vector with coefficients in `R`.
fn pair_weight<R: SeriesCoeff>(lam: &WeightVec, z: &[R]) -> R {
    let mut acc = R::zero();
    for (&l, x) in lam.0.iter().zip(z) {
        if l != 0 {
            acc = acc + x.scale(TWO_PI_I * l as f64);
        }
    }
    acc
}

/// `base(λ)·exp(2πi Σ_k t^k ⟨λ, plus_k⟩)` through order `n`.
fn character_series<R: SeriesCoeff>(lam: &WeightVec, plus: &[Vec<R>], base: R, n: usize) -> Vec<R> {
    let s: Vec<R> = (0..=n)
        .map(|k| match plus.get(k) {
            Some(z) if k > 0 => pair_weight(lam, z),
            _ => R::zero(),
        })
        .collect();
    exp_nilpotent(&s, base)
}

fn field_at<R: SeriesCoeff>(
    v: &VectorFieldSeries,
    plus: &[Vec<R>],
    base: &dyn Fn(&WeightVec) -> R,
    n: usize,
) -> VecSeries<R> {
    let rank = v.rank();
    let mut out = zero_vec_series(rank, n);
    for lam in v.support_up_to(n) {
        let x = character_series(&lam, plus, base(&lam), n);
        for j in 0..=n.min(v.order()) {
            if let Some(c) = v.get(j, &lam) {
                for k in j..=n {
                    for (m, cm) in c.iter().enumerate() {
                        if !cm.is_zero() {
                            let add = x[k - j].scale(*cm);
                            out[k][m] = std::mem::replace(&mut out[k][m], R::zero()) + add;
                        }
                    }
                }
            }
        }
    }
    out
}

fn check_jet(jet: &TorusJet, d: &RootDatum) -> Result<()> {
    d.check_dim(jet.rank())?;
    for xi in &jet.plus {
        d.check_dim(xi.len())?;
    }
    Ok(())
}

fn check_field(v: &VectorFieldSeries, d: &RootDatum) -> Result<()> {
    if v.is_zero() {
        return Ok(());
    }
    d.check_dim(v.rank())
}

/// `e^λ` at the base point `exp(ξ₀)`.
fn numeric_base(xi0: &[Complex64]) -> impl Fn(&WeightVec) -> Complex64 + '_ {
    move |lam| (TWO_PI_I * lam.pair_complex(xi0)).exp()
}

/// `Σ_j t^j v_j(g_t)` through order `n`.
pub fn evaluate_field_at_jet(v: &VectorFieldSeries, jet: &TorusJet, n: usize) -> VecSeries<Complex64> {
    let base = numeric_base(&jet.base);
    field_at(v, &jet.plus, &base, n)
}

/// Shared recursion: `plus_k = −ℓ⁻¹ [t^{k−1}] v_t(base·exp(plus))` for `k = 1..=n_plus`.
fn solve_plus<R: SeriesCoeff>(
    v: &VectorFieldSeries,
    d: &RootDatum,
    base: &dyn Fn(&WeightVec) -> R,
    n_plus: usize,
    cap: Option<usize>,
) -> Result<VecSeries<R>> {
    let rank = d.rank;
    let lams = v.support_up_to(n_plus);
    // Per weight: exponent coefficients s and character series x = base·exp(s).
    let mut s: Vec<Vec<R>> = vec![vec![R::zero()]; lams.len()];
    let mut x: Vec<Vec<R>> = lams.iter().map(|l| vec![base(l)]).collect();
    let mut plus = zero_vec_series::<R>(rank, n_plus);
    let inv_level: Vec<Complex64> = d
        .level_of
        .iter()
        .map(|&l| Complex64::new(-1.0 / l as f64, 0.0))
        .collect();
    for k in 1..=n_plus {
        let m = k - 1;
        if m >= 1 {
            for (idx, lam) in lams.iter().enumerate() {
                s[idx].push(pair_weight(lam, &plus[m]));
                let mut acc = R::zero();
                for i in 1..=m {
                    acc = acc + s[idx][i].mul_ref(&x[idx][m - i]).scale(Complex64::new(i as f64, 0.0));
                }
                x[idx].push(acc.scale(Complex64::new(1.0 / m as f64, 0.0)));
            }
        }
        let mut coeff = vec![R::zero(); rank];
        for j in 0..=m.min(v.order()) {
            for (idx, lam) in lams.iter().enumerate() {
                if let Some(c) = v.get(j, lam) {
                    for (i, ci) in c.iter().enumerate() {
                        if !ci.is_zero() {
                            let add = x[idx][m - j].scale(*ci);
                            coeff[i] = std::mem::replace(&mut coeff[i], R::zero()) + add;
                        }
                    }
                }
            }
        }
        for (i, ci) in coeff.into_iter().enumerate() {
            plus[k][i] = ci.scale(inv_level[i]);
        }
        if let Some(cap) = cap {
            let size: usize = plus[k].iter().map(SeriesCoeff::size).sum();
            if size > cap {
                return Err(Error::SupportOverflow(size));
            }
        }
    }
    Ok(plus)
}

/// The unique jet `g_t` with base `g = exp(ξ₀)` and `Φ_t(g_t) = g` through order `n`.
pub fn solve_fixed_point(v: &VectorFieldSeries, xi0: &[Complex64], d: &RootDatum, n: usize) -> Result<TorusJet> {
    d.check_dim(xi0.len())?;
    check_field(v, d)?;
    let base = numeric_base(xi0);
    let plus = solve_plus(v, d, &base, n, None)?;
    Ok(TorusJet { base: xi0.to_vec(), plus })
}

/// Largest coefficient of `plus + tℓ⁻¹ v_t(g_t)` through the jet's order.
pub fn fixed_point_residual(v: &VectorFieldSeries, jet: &TorusJet, d: &RootDatum) -> Result<f64> {
    check_jet(jet, d)?;
    let moved = apply_flow(v, jet, d)?;
    Ok(moved.plus_norm())
}

/// `Φ_t` on jets: `plus' = plus + tℓ⁻¹ v_t(g_t)`.
pub fn apply_flow(v: &VectorFieldSeries, jet: &TorusJet, d: &RootDatum) -> Result<TorusJet> {
    check_jet(jet, d)?;
    check_field(v, d)?;
    let n = jet.order();
    let ev = evaluate_field_at_jet(v, jet, n);
    let mut out = jet.clone();
    for k in 1..=n {
        let scaled = d.level_inverse_complex(&ev[k - 1]);
        for (o, z) in out.plus[k].iter_mut().zip(scaled) {
            *o += z;
        }
    }
    Ok(out)
}

/// `Ψ_t` on jets: `plus' = plus + tψ_t(g_t)`.
pub fn apply_inverse_flow(psi: &VectorFieldSeries, jet: &TorusJet, d: &RootDatum) -> Result<TorusJet> {
    check_jet(jet, d)?;
    check_field(psi, d)?;
    let n = jet.order();
    let ev = evaluate_field_at_jet(psi, jet, n);
    let mut out = jet.clone();
    for k in 1..=n {
        for (o, z) in out.plus[k].iter_mut().zip(&ev[k - 1]) {
            *o += z;
        }
    }
    Ok(out)
}

/// `det(1 + tℓ⁻¹ dv_t)` at the jet, through the jet's order.
pub fn flow_jacobian_det(v: &VectorFieldSeries, jet: &TorusJet, d: &RootDatum) -> Result<Series<Complex64>> {
    check_jet(jet, d)?;
    check_field(v, d)?;
    let n = jet.order();
    let r = d.rank;
    let base = numeric_base(&jet.base);
    // M[m][i] = Σ_j t^j Σ_λ v_j(λ)_m 2πi λ_i e^λ(g_t)
    let mut mat = vec![vec![vec![Complex64::zero(); n + 1]; r]; r];
    for lam in v.support_up_to(n) {
        let x = character_series(&lam, &jet.plus, base(&lam), n);
        for j in 0..=n.min(v.order()) {
            let Some(c) = v.get(j, &lam) else { continue };
            for (m, cm) in c.iter().enumerate() {
                for (i, &li) in lam.0.iter().enumerate() {
                    if li == 0 || cm.is_zero() {
                        continue;
                    }
                    let f = cm * TWO_PI_I * li as f64;
                    for k in j..=n {
                        mat[m][i][k] += f * x[k - j];
                    }
                }
            }
        }
    }
    let entries: Vec<Vec<Series<Complex64>>> = (0..r)
        .map(|m| {
            (0..r)
                .map(|i| {
                    let mut coeffs = vec![Complex64::zero(); n + 1];
                    if m == i {
                        coeffs[0] = Complex64::new(1.0, 0.0);
                    }
                    let inv = 1.0 / d.level_of[m] as f64;
                    for k in 1..=n {
                        coeffs[k] += mat[m][i][k - 1] * inv;
                    }
                    Series::from_coeffs(coeffs)
                })
                .collect()
        })
        .collect();
    series_det(&entries)
}

/// Symbolic `ψ_t` with `Φ_t∘Ψ_t = Id` through order `n`, where `Ψ_t(u) = u·exp(tψ_t(u))`.
/// Returns `ψ_0..ψ_n`.
pub fn invert_flow(v: &VectorFieldSeries, d: &RootDatum, n: usize, cap: usize) -> Result<VectorFieldSeries> {
    check_field(v, d)?;
    let rank = d.rank;
    let base = |lam: &WeightVec| LaurentPoly::monomial(lam.clone(), Complex64::new(1.0, 0.0));
    let plus: VecSeries<ComplexPoly> = solve_plus(v, d, &base, n + 1, Some(cap))?;
    let mut psi = VectorFieldSeries::zero(rank, n);
    for k in 0..=n {
        psi.set_order_from_components(k, &plus[k + 1]);
    }
    Ok(psi)
}

/// The order-2 plus-part coefficient in closed form:
/// `−(ℓ⁻¹v_1(g) − ℓ⁻¹∂_{ℓ⁻¹v_0(g)} v_0(g))`.
pub fn second_order_closed_form(v: &VectorFieldSeries, xi0: &[Complex64], d: &RootDatum) -> Result<Vec<Complex64>> {
    d.check_dim(xi0.len())?;
    check_field(v, d)?;
    let base = numeric_base(xi0);
    let eval = |j: usize| -> Vec<Complex64> {
        let mut out = vec![Complex64::zero(); d.rank];
        if let Some(m) = v.orders().get(j) {
            for (lam, c) in m {
                let e = base(lam);
                for (o, ci) in out.iter_mut().zip(c) {
                    *o += ci * e;
                }
            }
        }
        out
    };
    let u0 = d.level_inverse_complex(&eval(0));
    let u1 = d.level_inverse_complex(&eval(1));
    // ∂_X v_0(g) = Σ_λ v_0(λ) 2πi⟨λ,X⟩ e^λ(g)
    let mut deriv = vec![Complex64::zero(); d.rank];
    if let Some(m) = v.orders().first() {
        for (lam, c) in m {
            let f = TWO_PI_I * lam.pair_complex(&u0) * base(lam);
            for (o, ci) in deriv.iter_mut().zip(c) {
                *o += ci * f;
            }
        }
    }
    let deriv = d.level_inverse_complex(&deriv);
    Ok(u1.iter().zip(&deriv).map(|(a, b)| -(a - b)).collect())
}

/// Evaluates a symbolic field at a plain point `exp(ξ)`, order by order.
pub fn evaluate_field_at_point(v: &VectorFieldSeries, xi: &[Complex64]) -> VecSeries<Complex64> {
    let base = numeric_base(xi);
    let mut out = zero_vec_series(v.rank(), v.order());
    for (j, m) in v.orders().iter().enumerate() {
        for (lam, c) in m {
            let e = base(lam);
            for (o, ci) in out[j].iter_mut().zip(c) {
                *o += ci * e;
            }
        }
    }
    out
}

/// `max(|Φ_t∘Ψ_t(u) − u|, |Ψ_t∘Φ_t(u) − u|)` over plus-part coefficients through order `n`.
pub fn composition_defect(
    v: &VectorFieldSeries,
    psi: &VectorFieldSeries,
    xi0: &[Complex64],
    d: &RootDatum,
    n: usize,
) -> Result<f64> {
    let start = TorusJet::constant(xi0.to_vec(), n);
    let phi_psi = apply_flow(v, &apply_inverse_flow(psi, &start, d)?, d)?;
    let psi_phi = apply_inverse_flow(psi, &apply_flow(v, &start, d)?, d)?;
    Ok(phi_psi.plus_norm().max(psi_phi.plus_norm()))
}

/// `ξ + tℓ⁻¹ Σ_j t^j v_j(exp ξ)` at numeric `t`: the flow in logarithmic coordinates.
pub fn flow_numeric(v: &VectorFieldSeries, xi: &[Complex64], t: f64, d: &RootDatum) -> Vec<Complex64> {
    let vals = evaluate_field_at_point(v, xi);
    let mut step = vec![Complex64::zero(); xi.len()];
    let mut tj = t;
    for vj in &vals {
        for (s, z) in step.iter_mut().zip(vj) {
            *s += z * tj;
        }
        tj *= t;
    }
    let step = d.level_inverse_complex(&step);
    xi.iter().zip(step).map(|(a, b)| a + b).collect()
}
