//! Root systems, lattices and Weyl groups for products of simple simply
//! connected compact Lie groups.
//!
//! Coordinates are fixed once for the whole crate:
//!
//! * weights (elements of `Λ`) are integer vectors in the basis of
//!   fundamental weights `ω_i`;
//! * coweights (elements of `𝔱`) are vectors in the basis of simple coroots
//!   `α_i^∨`, so `Π` is exactly the integer vectors;
//! * the pairing `⟨λ, ξ⟩` is the dot product of coordinate vectors.
//!
//! The Cartan matrix is `C[i][j] = ⟨α_j, α_i^∨⟩`, so the simple root `α_j`
//! has fundamental-weight coordinates given by column `j` of `C`.
//!
//! The basic inner product on each simple factor is normalized so that the
//! short coroots have squared length 2. On coroot coordinates it is the
//! integer matrix `B[i][j] = C[i][j] · d_j` with `d_j = |α_j^∨|² / 2`.
//! [`RootDatum::gram`] is the same form scaled by the level of each factor.

mod linalg;
mod weyl;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use linalg::{determinant, inverse};
pub use weyl::{weyl_elements, WeylElement, DEFAULT_WEYL_CAP};

pub type Rat = Rational64;

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVec(pub Vec<i64>);

impl WeightVec {
    pub fn zero(rank: usize) -> Self {
        WeightVec(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn add(&self, other: &WeightVec) -> WeightVec {
        WeightVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &WeightVec) -> WeightVec {
        WeightVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> WeightVec {
        WeightVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> WeightVec {
        WeightVec(self.0.iter().map(|a| a * k).collect())
    }

    /// `⟨λ, ξ⟩` for a rational coweight.
    pub fn pair(&self, xi: &[Rat]) -> Rat {
        self.0
            .iter()
            .zip(xi)
            .map(|(&a, b)| Rat::from_integer(a) * b)
            .sum()
    }

    /// `⟨λ, ξ⟩` for a complex coweight.
    pub fn pair_complex(&self, xi: &[Complex64]) -> Complex64 {
        self.0
            .iter()
            .zip(xi)
            .map(|(&a, b)| b * a as f64)
            .sum()
    }

    pub fn pair_int(&self, xi: &[i64]) -> i64 {
        self.0.iter().zip(xi).map(|(a, b)| a * b).sum()
    }
}

impl From<Vec<i64>> for WeightVec {
    fn from(v: Vec<i64>) -> Self {
        WeightVec(v)
    }
}

/// A rational coweight in simple-coroot coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoweightVec(pub Vec<Rat>);

impl CoweightVec {
    pub fn zero(rank: usize) -> Self {
        CoweightVec(vec![Rat::zero(); rank])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        CoweightVec(v.iter().map(|&x| Rat::from_integer(x)).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.0
            .iter()
            .map(|x| Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0))
            .collect()
    }

    /// Reduce each coordinate into `[0, 1)`.
    pub fn fractional(&self) -> CoweightVec {
        CoweightVec(self.0.iter().map(|x| x - x.floor()).collect())
    }

    pub fn add(&self, other: &CoweightVec) -> CoweightVec {
        CoweightVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for CoweightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// One simple factor: a Cartan type letter and a rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimpleFactor {
    pub kind: char,
    pub rank: usize,
}

impl SimpleFactor {
    fn validate(&self) -> Result<()> {
        let ok = match self.kind {
            'A' => self.rank >= 1,
            'B' | 'C' => self.rank >= 2,
            'D' => self.rank >= 3,
            'G' => self.rank == 2,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedType { kind: self.kind, rank: self.rank })
        }
    }
}

/// Group type and levels, e.g. `A1*2+A2*3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSpec {
    pub factors: Vec<SimpleFactor>,
    pub levels: Vec<i64>,
}

impl LieSpec {
    pub fn new(factors: Vec<SimpleFactor>, levels: Vec<i64>) -> Result<Self> {
        let spec = LieSpec { factors, levels };
        spec.validate()?;
        Ok(spec)
    }

    pub fn simple(kind: char, rank: usize, level: i64) -> Result<Self> {
        Self::new(vec![SimpleFactor { kind, rank }], vec![level])
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Error::GroupSpec(self.to_string(), m.to_string());
        if self.factors.is_empty() {
            return Err(bad("no factors"));
        }
        if self.levels.len() != self.factors.len() {
            return Err(bad("one level per factor is required"));
        }
        if self.levels.iter().any(|&l| l <= 0) {
            return Err(bad("levels must be positive"));
        }
        self.factors.iter().try_for_each(SimpleFactor::validate)
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }
}

impl fmt::Display for LieSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (fac, l)) in self.factors.iter().zip(&self.levels).enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{}{}*{}", fac.kind, fac.rank, l)?;
        }
        Ok(())
    }
}

impl FromStr for LieSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::GroupSpec(s.to_string(), m.to_string());
        let mut factors = Vec::new();
        let mut levels = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            let (ty, level) = match part.split_once('*') {
                Some((ty, level)) => {
                    let level: i64 = level.trim().parse().map_err(|_| bad("bad level"))?;
                    (ty.trim(), level)
                }
                None => (part, 1),
            };
            let mut chars = ty.chars();
            let kind = chars
                .next()
                .ok_or_else(|| bad("empty factor"))?
                .to_ascii_uppercase();
            let rank: usize = chars.as_str().parse().map_err(|_| bad("bad rank"))?;
            factors.push(SimpleFactor { kind, rank });
            levels.push(level);
        }
        LieSpec::new(factors, levels)
    }
}

/// Cartan data, positive roots, inner products and levels.
#[derive(Debug)]
pub struct RootDatum {
    pub spec: LieSpec,
    pub rank: usize,
    /// `C[i][j] = ⟨α_j, α_i^∨⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// Factor index of every coordinate.
    pub factor_of: Vec<usize>,
    /// Level of the factor owning every coordinate.
    pub level_of: Vec<i64>,
    /// `d_j = |α_j^∨|² / 2` under the basic inner product.
    pub coroot_half_norms: Vec<i64>,
    /// Unscaled basic inner product on coroot coordinates.
    pub basic_gram: Vec<Vec<i64>>,
    /// Basic inner product scaled by `ℓ` on every factor.
    pub gram: Vec<Vec<i64>>,
    /// Positive roots in fundamental-weight coordinates, sorted by height.
    pub positive_roots: Vec<WeightVec>,
    /// Same roots in simple-root coordinates.
    pub positive_roots_simple: Vec<Vec<i64>>,
    /// Coroots of the positive roots, in coroot coordinates.
    pub positive_coroots: Vec<Vec<i64>>,
    pub rho: WeightVec,
    pub dual_coxeter: Vec<i64>,
    pub weyl_order: u128,
    gram_inverse: Vec<Vec<Rat>>,
    basic_gram_inverse: Vec<Vec<Rat>>,
    weyl: OnceLock<std::result::Result<Vec<WeylElement>, Error>>,
}

impl Clone for RootDatum {
    fn clone(&self) -> Self {
        build_root_datum(&self.spec).expect("spec was valid")
    }
}

fn cartan_block(kind: char, n: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    let mut c = linalg::identity(n);
    for row in c.iter_mut() {
        for x in row.iter_mut() {
            *x *= 2;
        }
    }
    let chain = |c: &mut Vec<Vec<i64>>, upto: usize| {
        for i in 0..upto.saturating_sub(1) {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    };
    let mut d = vec![1; n];
    match kind {
        'A' => chain(&mut c, n),
        'B' => {
            chain(&mut c, n);
            // α_n is the short root: ⟨α_{n-1}, α_n^∨⟩ = -2.
            c[n - 1][n - 2] = -2;
            d[n - 1] = 2;
        }
        'C' => {
            chain(&mut c, n);
            // α_n is the long root: ⟨α_n, α_{n-1}^∨⟩ = -2.
            c[n - 2][n - 1] = -2;
            for x in d.iter_mut().take(n - 1) {
                *x = 2;
            }
        }
        'D' => {
            chain(&mut c, n - 1);
            c[n - 3][n - 1] = -1;
            c[n - 1][n - 3] = -1;
        }
        'G' => {
            // α_1 short, α_2 long.
            c[0][1] = -3;
            c[1][0] = -1;
            d[0] = 3;
        }
        _ => unreachable!("validated"),
    }
    (c, d)
}

fn dual_coxeter_number(f: &SimpleFactor) -> i64 {
    let n = f.rank as i64;
    match f.kind {
        'A' => n + 1,
        'B' => 2 * n - 1,
        'C' => n + 1,
        'D' => 2 * n - 2,
        'G' => 4,
        _ => unreachable!("validated"),
    }
}

fn weyl_order_of(f: &SimpleFactor) -> u128 {
    let n = f.rank as u128;
    let fact: u128 = (1..=n).product();
    match f.kind {
        'A' => fact * (n + 1),
        'B' | 'C' => fact << n,
        'D' => fact << (n - 1),
        'G' => 12,
        _ => unreachable!("validated"),
    }
}

/// Positive roots via root strings, in simple-root coordinates.
fn enumerate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    use std::collections::BTreeSet;
    let r = cartan.len();
    let to_fund = |c: &[i64]| linalg::mat_vec_int(cartan, c);
    let mut roots: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut seen: BTreeSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut k = 0;
    while k < roots.len() {
        let beta = roots[k].clone();
        let fund = to_fund(&beta);
        for i in 0..r {
            let mut p = 0;
            loop {
                let mut down = beta.clone();
                down[i] -= p + 1;
                if seen.contains(&down) {
                    p += 1;
                } else {
                    break;
                }
            }
            let q = p - fund[i];
            if q > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if seen.insert(up.clone()) {
                    roots.push(up);
                }
            }
        }
        k += 1;
    }
    roots.sort_by_key(|c| (c.iter().sum::<i64>(), c.clone()));
    roots
}

/// Builds the root datum for a validated spec.
pub fn build_root_datum(spec: &LieSpec) -> Result<RootDatum> {
    spec.validate()?;
    let rank = spec.rank();
    let mut cartan = vec![vec![0i64; rank]; rank];
    let mut d = vec![1i64; rank];
    let mut factor_of = Vec::with_capacity(rank);
    let mut level_of = Vec::with_capacity(rank);
    let mut offset = 0;
    for (fi, (f, &l)) in spec.factors.iter().zip(&spec.levels).enumerate() {
        let (c, dd) = cartan_block(f.kind, f.rank);
        for i in 0..f.rank {
            for j in 0..f.rank {
                cartan[offset + i][offset + j] = c[i][j];
            }
            d[offset + i] = dd[i];
            factor_of.push(fi);
            level_of.push(l);
        }
        offset += f.rank;
    }
    let basic_gram: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|j| cartan[i][j] * d[j]).collect())
        .collect();
    let gram: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|j| basic_gram[i][j] * level_of[i]).collect())
        .collect();

    let simple = enumerate_positive_roots(&cartan);
    let positive_roots = simple
        .iter()
        .map(|c| WeightVec(linalg::mat_vec_int(&cartan, c)))
        .collect();
    // (α_i, α_j) = C[i][j] / d_i; coroot of α = Σ c_i (|α_i|²/|α|²) α_i^∨.
    let q: Vec<Vec<Rat>> = (0..rank)
        .map(|i| (0..rank).map(|j| Rat::new(cartan[i][j], d[i])).collect())
        .collect();
    let positive_coroots = simple
        .iter()
        .map(|c| {
            let cr: Vec<Rat> = c.iter().map(|&x| Rat::from_integer(x)).collect();
            let norm: Rat = linalg::mat_vec_rat(&q, &cr)
                .iter()
                .zip(&cr)
                .map(|(a, b)| a * b)
                .sum();
            (0..rank)
                .map(|i| {
                    let x = cr[i] * Rat::new(2, d[i]) / norm;
                    debug_assert!(x.is_integer());
                    x.to_integer()
                })
                .collect()
        })
        .collect();

    let gram_inverse = inverse(&gram).expect("gram is positive definite");
    let basic_gram_inverse = inverse(&basic_gram).expect("gram is positive definite");
    Ok(RootDatum {
        spec: spec.clone(),
        rank,
        cartan,
        factor_of,
        level_of,
        coroot_half_norms: d,
        basic_gram,
        gram,
        positive_roots,
        positive_roots_simple: simple,
        positive_coroots,
        rho: WeightVec(vec![1; rank]),
        dual_coxeter: spec.factors.iter().map(dual_coxeter_number).collect(),
        weyl_order: spec.factors.iter().map(weyl_order_of).product(),
        gram_inverse,
        basic_gram_inverse,
        weyl: OnceLock::new(),
    })
}

/// `aᵀ B b` with the level-scaled form.
pub fn inner_product(a: &CoweightVec, b: &CoweightVec, d: &RootDatum) -> Result<Rat> {
    d.check_dim(a.0.len())?;
    d.check_dim(b.0.len())?;
    Ok(bilinear(&d.gram, &a.0, &b.0))
}

fn bilinear(m: &[Vec<i64>], a: &[Rat], b: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (i, row) in m.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x != 0 {
                acc += a[i] * b[j] * x;
            }
        }
    }
    acc
}

impl RootDatum {
    pub fn from_str_spec(s: &str) -> Result<Self> {
        build_root_datum(&s.parse()?)
    }

    pub fn check_dim(&self, got: usize) -> Result<()> {
        if got == self.rank {
            Ok(())
        } else {
            Err(Error::Dimension { expected: self.rank, got })
        }
    }

    /// Simple root `α_i` in fundamental-weight coordinates.
    pub fn simple_root(&self, i: usize) -> WeightVec {
        WeightVec((0..self.rank).map(|k| self.cartan[k][i]).collect())
    }

    /// All roots, positive first then their negatives.
    pub fn roots(&self) -> Vec<WeightVec> {
        let mut all = self.positive_roots.clone();
        all.extend(self.positive_roots.iter().map(WeightVec::neg));
        all
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn basic_inner_product(&self, a: &CoweightVec, b: &CoweightVec) -> Rat {
        bilinear(&self.basic_gram, &a.0, &b.0)
    }

    /// `ℓ ξ` transported to a weight: `B_ℓ ξ` in fundamental coordinates.
    pub fn level_flat(&self, eta: &[i64]) -> WeightVec {
        WeightVec(linalg::mat_vec_int(&self.gram, eta))
    }

    /// `ξ ↦ ξ♭` under the unscaled basic form, on integer coweights.
    pub fn basic_flat(&self, eta: &[i64]) -> WeightVec {
        WeightVec(linalg::mat_vec_int(&self.basic_gram, eta))
    }

    /// Coweight `ξ` with `B_ℓ ξ = μ`.
    pub fn level_sharp(&self, mu: &WeightVec) -> CoweightVec {
        let m: Vec<Rat> = mu.0.iter().map(|&x| Rat::from_integer(x)).collect();
        CoweightVec(linalg::mat_vec_rat(&self.gram_inverse, &m))
    }

    /// Coweight `ξ` with `B ξ = μ` for the basic form.
    pub fn basic_sharp(&self, mu: &WeightVec) -> CoweightVec {
        let m: Vec<Rat> = mu.0.iter().map(|&x| Rat::from_integer(x)).collect();
        CoweightVec(linalg::mat_vec_rat(&self.basic_gram_inverse, &m))
    }

    /// `B⁻¹` for the unscaled basic form.
    pub fn basic_gram_inverse(&self) -> &[Vec<Rat>] {
        &self.basic_gram_inverse
    }

    pub fn gram_inverse(&self) -> &[Vec<Rat>] {
        &self.gram_inverse
    }

    /// `η ⋅ ζ` for the basic form on complex coweights with `η` integral.
    pub fn basic_pair_int_complex(&self, eta: &[i64], z: &[Complex64]) -> Complex64 {
        let flat = self.basic_flat(eta);
        flat.pair_complex(z)
    }

    /// Multiply every coroot coordinate by `1/ℓ` of its factor.
    pub fn level_inverse_complex(&self, z: &[Complex64]) -> Vec<Complex64> {
        z.iter()
            .zip(&self.level_of)
            .map(|(x, &l)| x / l as f64)
            .collect()
    }

    pub fn level_inverse(&self, xi: &CoweightVec) -> CoweightVec {
        CoweightVec(
            xi.0.iter()
                .zip(&self.level_of)
                .map(|(x, &l)| x / l)
                .collect(),
        )
    }

    pub fn level_times(&self, eta: &[i64]) -> Vec<i64> {
        eta.iter().zip(&self.level_of).map(|(x, l)| x * l).collect()
    }

    /// The Weyl group, computed once and cached.
    pub fn weyl_group(&self) -> Result<&[WeylElement]> {
        self.weyl
            .get_or_init(|| weyl_elements(self, DEFAULT_WEYL_CAP))
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    /// `|Λ/Π|` per factor multiplied out, i.e. the determinant of the Cartan matrix.
    pub fn fundamental_group_order(&self) -> i64 {
        determinant(&self.cartan).to_integer()
    }

    /// Norm `|ξ|` for the level-scaled form.
    pub fn norm_f64(&self, xi: &CoweightVec) -> f64 {
        bilinear(&self.gram, &xi.0, &xi.0)
            .to_f64()
            .unwrap_or(f64::NAN)
            .max(0.0)
            .sqrt()
    }

    /// Dual norm of a weight for the level-scaled form.
    pub fn dual_norm_f64(&self, mu: &WeightVec) -> f64 {
        let xi = self.level_sharp(mu);
        mu.pair(&xi.0).to_f64().unwrap_or(f64::NAN).max(0.0).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        RootDatum::from_str_spec(s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let s: LieSpec = "A1*2+A1*3".parse().unwrap();
        assert_eq!(s.to_string(), "A1*2+A1*3");
        assert_eq!(s.rank(), 2);
        let s: LieSpec = "g2".parse().unwrap();
        assert_eq!(s.to_string(), "G2*1");
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!("A0*1".parse::<LieSpec>().is_err());
        assert!("A1*0".parse::<LieSpec>().is_err());
        assert!("A1*-2".parse::<LieSpec>().is_err());
        assert!("E8*1".parse::<LieSpec>().is_err());
        assert!("G3*1".parse::<LieSpec>().is_err());
        assert!("X".parse::<LieSpec>().is_err());
        assert!(LieSpec::new(vec![SimpleFactor { kind: 'A', rank: 1 }], vec![]).is_err());
    }

    #[test]
    fn a1_gram_rho_and_coxeter() {
        let d = datum("A1*1");
        assert_eq!(d.gram, vec![vec![2]]);
        assert_eq!(d.rho, WeightVec(vec![1]));
        assert_eq!(d.dual_coxeter, vec![2]);
    }

    #[test]
    fn a2_gram() {
        assert_eq!(datum("A2*1").gram, vec![vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn product_gram_is_block_scaled() {
        assert_eq!(datum("A1*1+A1*2").gram, vec![vec![2, 0], vec![0, 4]]);
    }

    #[test]
    fn su3_trace_form_matches_gram() {
        // Coroots of su(3) as diagonal matrices diag(1,-1,0), diag(0,1,-1) times i;
        // -Tr(XY)/(4π²) on ξ = 2πi·H gives Tr(H1 H2).
        let h = [[1.0, -1.0, 0.0], [0.0, 1.0, -1.0]];
        let d = datum("A2*1");
        for i in 0..2 {
            for j in 0..2 {
                let tr: f64 = (0..3).map(|k| h[i][k] * h[j][k]).sum();
                assert_eq!(tr, d.gram[i][j] as f64);
            }
        }
    }

    #[test]
    fn inner_product_examples() {
        let d = datum("A1*1");
        let a = CoweightVec::from_ints(&[1]);
        assert_eq!(inner_product(&a, &a, &d).unwrap(), Rat::from_integer(2));
        let d = datum("A2*1");
        let a1 = CoweightVec::from_ints(&[1, 0]);
        let a2 = CoweightVec::from_ints(&[0, 1]);
        assert_eq!(inner_product(&a1, &a2, &d).unwrap(), Rat::from_integer(-1));
        assert_eq!(
            inner_product(&CoweightVec::zero(2), &a2, &d).unwrap(),
            Rat::zero()
        );
        assert!(inner_product(&CoweightVec::zero(1), &a2, &d).is_err());
    }

    #[test]
    fn root_counts() {
        for (s, n) in [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("B3", 9),
            ("C2", 4),
            ("C3", 9),
            ("D4", 12),
            ("G2", 6),
        ] {
            assert_eq!(datum(s).positive_roots.len(), n, "{s}");
        }
    }

    #[test]
    fn rho_is_half_sum_of_positive_roots() {
        for s in ["A1", "A3", "B3", "C2", "D4", "G2", "A1*2+A2*3"] {
            let d = datum(s);
            let sum = d
                .positive_roots
                .iter()
                .fold(WeightVec::zero(d.rank), |a, b| a.add(b));
            assert_eq!(sum, d.rho.scale(2), "{s}");
        }
    }

    #[test]
    fn gram_is_integral_symmetric_positive_definite() {
        for s in ["A1*3", "A4*2", "B3*2", "C2*1", "C3*5", "D4*1", "G2*2", "A1*2+G2*3"] {
            let d = datum(s);
            for i in 0..d.rank {
                for j in 0..d.rank {
                    assert_eq!(d.gram[i][j], d.gram[j][i], "{s}");
                }
                // Sylvester's criterion on leading minors.
                let minor: Vec<Vec<i64>> =
                    d.gram[..=i].iter().map(|r| r[..=i].to_vec()).collect();
                assert!(determinant(&minor) > Rat::zero(), "{s}");
            }
        }
    }

    #[test]
    fn short_coroots_have_square_length_two() {
        for s in ["A3", "B3", "C3", "D4", "G2"] {
            let d = datum(s);
            let lengths: Vec<Rat> = d
                .positive_coroots
                .iter()
                .map(|c| {
                    let c = CoweightVec::from_ints(c);
                    d.basic_inner_product(&c, &c)
                })
                .collect();
            let min = lengths.iter().min().unwrap();
            assert_eq!(*min, Rat::from_integer(2), "{s}");
        }
    }

    #[test]
    fn coroots_pair_to_two_with_their_roots() {
        for s in ["A3", "B3", "C3", "D4", "G2"] {
            let d = datum(s);
            for (a, c) in d.positive_roots.iter().zip(&d.positive_coroots) {
                assert_eq!(a.pair_int(c), 2, "{s}");
            }
        }
    }

    #[test]
    fn rho_pairs_to_one_with_simple_coroots() {
        let d = datum("B3*1");
        for i in 0..d.rank {
            let mut e = vec![0; d.rank];
            e[i] = 1;
            assert_eq!(d.rho.pair_int(&e), 1);
        }
    }

    #[test]
    fn dual_coxeter_from_highest_coroot() {
        // h^∨ = 1 + ⟨ρ, θ^∨⟩ for the highest root θ.
        for s in ["A1", "A4", "B3", "C3", "D5", "G2"] {
            let d = datum(s);
            let theta = d.positive_roots.len() - 1;
            let hv = 1 + d.rho.pair_int(&d.positive_coroots[theta]);
            assert_eq!(hv, d.dual_coxeter[0], "{s}");
        }
    }

    #[test]
    fn sharp_inverts_flat() {
        let d = datum("G2*3");
        let mu = WeightVec(vec![3, -2]);
        let xi = d.level_sharp(&mu);
        let back: Vec<Rat> = d
            .gram
            .iter()
            .map(|row| row.iter().zip(&xi.0).map(|(a, b)| b * *a).sum())
            .collect();
        assert_eq!(back, vec![Rat::from_integer(3), Rat::from_integer(-2)]);
    }
}
