use std::collections::HashMap;

use num_complex::Complex64;

use super::linalg::{identity, mat_mul_int, mat_vec_int};
use super::{Rat, RootDatum, WeightVec};
use crate::error::{Error, Result};

pub const DEFAULT_WEYL_CAP: u128 = 1_000_000;

/// An element of the Weyl group, stored by its action on both lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// Action on fundamental-weight coordinates.
    pub matrix: Vec<Vec<i64>>,
    /// Action on coroot coordinates, `(matrixᵀ)⁻¹`.
    pub coweight_matrix: Vec<Vec<i64>>,
    pub length: usize,
    pub sign: i64,
}

impl WeylElement {
    pub fn act_weight(&self, w: &WeightVec) -> WeightVec {
        WeightVec(mat_vec_int(&self.matrix, &w.0))
    }

    /// `w⁻¹ λ`, using `w⁻¹ = (coweight_matrix)ᵀ` on weights.
    pub fn act_weight_inverse(&self, w: &WeightVec) -> WeightVec {
        let r = w.0.len();
        WeightVec(
            (0..r)
                .map(|i| (0..r).map(|k| self.coweight_matrix[k][i] * w.0[k]).sum())
                .collect(),
        )
    }

    pub fn act_coweight_int(&self, xi: &[i64]) -> Vec<i64> {
        mat_vec_int(&self.coweight_matrix, xi)
    }

    pub fn act_coweight(&self, xi: &[Rat]) -> Vec<Rat> {
        self.coweight_matrix
            .iter()
            .map(|row| row.iter().zip(xi).map(|(&a, b)| b * a).sum())
            .collect()
    }

    pub fn act_complex(&self, xi: &[Complex64]) -> Vec<Complex64> {
        self.coweight_matrix
            .iter()
            .map(|row| row.iter().zip(xi).map(|(&a, b)| b * a as f64).sum())
            .collect()
    }

    /// `w⁻¹ ξ` on coweights, `w⁻¹ = matrixᵀ` there.
    pub fn act_complex_inverse(&self, xi: &[Complex64]) -> Vec<Complex64> {
        let r = xi.len();
        (0..r)
            .map(|i| (0..r).map(|k| xi[k] * self.matrix[k][i] as f64).sum())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }
}

/// The full Weyl group generated by simple reflections, sorted
/// lexicographically by weight matrix.
pub fn weyl_elements(d: &RootDatum, cap: u128) -> Result<Vec<WeylElement>> {
    if d.weyl_order > cap {
        return Err(Error::CapExceeded { what: "Weyl group", size: d.weyl_order, cap });
    }
    let r = d.rank;
    let reflections: Vec<(Vec<Vec<i64>>, Vec<Vec<i64>>)> = (0..r)
        .map(|i| {
            let alpha = d.simple_root(i);
            // s_i λ = λ - λ_i α_i ; s_i ξ = ξ - ⟨α_i, ξ⟩ α_i^∨.
            let mut on_weights = identity(r);
            let mut on_coweights = identity(r);
            for k in 0..r {
                on_weights[k][i] -= alpha.0[k];
                on_coweights[i][k] -= alpha.0[k];
            }
            (on_weights, on_coweights)
        })
        .collect();

    let mut index: HashMap<Vec<Vec<i64>>, usize> = HashMap::new();
    let mut elems = vec![WeylElement {
        matrix: identity(r),
        coweight_matrix: identity(r),
        length: 0,
        sign: 1,
    }];
    index.insert(identity(r), 0);
    let mut k = 0;
    while k < elems.len() {
        for (sw, sc) in &reflections {
            let m = mat_mul_int(sw, &elems[k].matrix);
            if index.contains_key(&m) {
                continue;
            }
            let length = elems[k].length + 1;
            let c = mat_mul_int(sc, &elems[k].coweight_matrix);
            index.insert(m.clone(), elems.len());
            elems.push(WeylElement {
                matrix: m,
                coweight_matrix: c,
                length,
                sign: if length % 2 == 0 { 1 } else { -1 },
            });
        }
        k += 1;
    }
    debug_assert_eq!(elems.len() as u128, d.weyl_order);
    elems.sort_by(|a, b| a.matrix.cmp(&b.matrix));
    Ok(elems)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{determinant, CoweightVec};

    fn group(s: &str) -> (RootDatum, Vec<WeylElement>) {
        let d = RootDatum::from_str_spec(s).unwrap();
        let w = weyl_elements(&d, DEFAULT_WEYL_CAP).unwrap();
        (d, w)
    }

    #[test]
    fn a1_has_identity_and_reflection() {
        let (_, w) = group("A1");
        assert_eq!(w.len(), 2);
        let s = w.iter().find(|e| e.length == 1).unwrap();
        assert_eq!(s.matrix, vec![vec![-1]]);
        assert!(w.iter().any(|e| e.length == 0));
    }

    #[test]
    fn a2_signs_cancel_and_longest_has_length_three() {
        let (_, w) = group("A2");
        assert_eq!(w.len(), 6);
        assert_eq!(w.iter().map(|e| e.sign).sum::<i64>(), 0);
        assert_eq!(w.iter().map(|e| e.length).max(), Some(3));
    }

    #[test]
    fn orders_match_factorial_oracle() {
        for n in 1..=5usize {
            let (_, w) = group(&format!("A{n}"));
            let fact: usize = (1..=n + 1).product();
            assert_eq!(w.len(), fact);
        }
        assert_eq!(group("B3").1.len(), 48);
        assert_eq!(group("C2").1.len(), 8);
        assert_eq!(group("D4").1.len(), 192);
        assert_eq!(group("G2").1.len(), 12);
        assert_eq!(group("A1+A2").1.len(), 12);
    }

    #[test]
    fn cap_is_enforced() {
        let d = RootDatum::from_str_spec("A3").unwrap();
        assert!(matches!(
            weyl_elements(&d, 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn simple_reflection_negates_its_root() {
        let d = RootDatum::from_str_spec("G2").unwrap();
        let w = weyl_elements(&d, DEFAULT_WEYL_CAP).unwrap();
        for i in 0..d.rank {
            let a = d.simple_root(i);
            let s = w
                .iter()
                .filter(|e| e.length == 1)
                .find(|e| e.act_weight(&a) == a.neg())
                .expect("some reflection negates α_i");
            assert_eq!(s.sign, -1);
        }
    }

    #[test]
    fn sign_is_determinant_and_roots_are_permuted() {
        for s in ["A3", "B3", "C2", "G2"] {
            let (d, w) = group(s);
            let mut roots = d.roots();
            roots.sort();
            for e in &w {
                assert_eq!(determinant(&e.matrix).to_integer(), e.sign, "{s}");
                let mut image: Vec<_> = roots.iter().map(|r| e.act_weight(r)).collect();
                image.sort();
                assert_eq!(image, roots, "{s}");
            }
        }
    }

    #[test]
    fn action_preserves_pairing_and_form() {
        let (d, w) = group("B3*2");
        let lam = WeightVec(vec![3, -1, 2]);
        let xi = vec![Rat::new(1, 3), Rat::new(-2, 5), Rat::from_integer(4)];
        let base = lam.pair(&xi);
        let xic = CoweightVec(xi.clone());
        let norm = crate::rootsys::inner_product(&xic, &xic, &d).unwrap();
        for e in &w {
            let wl = e.act_weight(&lam);
            let wx = CoweightVec(e.act_coweight(&xi));
            assert_eq!(wl.pair(&wx.0), base);
            assert_eq!(crate::rootsys::inner_product(&wx, &wx, &d).unwrap(), norm);
            assert_eq!(e.act_weight_inverse(&wl), lam);
        }
    }
}
