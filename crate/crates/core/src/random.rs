//! Seeded generators for sparse fields and test characters.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::charring::{ComplexPoly, LaurentPoly};
use crate::jetcalc::VectorFieldSeries;
use crate::rootsys::WeightVec;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of random sparse data.
#[derive(Clone, Debug)]
pub struct SparseShape {
    /// Number of terms is drawn from `1..=max_terms`.
    pub max_terms: usize,
    /// Weight coordinates lie in `[-radius, radius]`.
    pub radius: i64,
    /// Real and imaginary parts lie in `[-scale, scale]`.
    pub scale: f64,
    /// Highest `t`-order of a field term.
    pub max_order: usize,
}

impl Default for SparseShape {
    fn default() -> Self {
        SparseShape { max_terms: 3, radius: 2, scale: 0.3, max_order: 1 }
    }
}

fn weight(rng: &mut impl Rng, rank: usize, radius: i64) -> WeightVec {
    WeightVec((0..rank).map(|_| rng.gen_range(-radius..=radius)).collect())
}

fn complex(rng: &mut impl Rng, scale: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-scale..=scale), rng.gen_range(-scale..=scale))
}

/// A field with at most `max_terms` (order, weight) entries.
pub fn random_field(rng: &mut impl Rng, rank: usize, shape: &SparseShape) -> VectorFieldSeries {
    let mut v = VectorFieldSeries::zero(rank, shape.max_order);
    let terms = rng.gen_range(1..=shape.max_terms);
    for _ in 0..terms {
        let j = rng.gen_range(0..=shape.max_order);
        let lam = weight(rng, rank, shape.radius);
        let c = (0..rank).map(|_| complex(rng, shape.scale)).collect();
        v.add_term(j, lam, c);
    }
    v
}

/// A test character with at most `max_terms` terms and unit-size coefficients.
pub fn random_character(rng: &mut impl Rng, rank: usize, max_terms: usize, radius: i64) -> ComplexPoly {
    let terms = rng.gen_range(1..=max_terms);
    LaurentPoly::from_terms((0..terms).map(|_| (weight(rng, rank, radius), complex(rng, 1.0))))
}

/// A point of `T_ℂ` with a small imaginary part.
pub fn random_point(rng: &mut impl Rng, rank: usize) -> Vec<Complex64> {
    (0..rank)
        .map(|_| Complex64::new(rng.gen_range(0.0..1.0), rng.gen_range(-0.2..0.2)))
        .collect()
}

/// A point of the compact torus `T`.
pub fn random_torus_point(rng: &mut impl Rng, rank: usize) -> Vec<Complex64> {
    (0..rank).map(|_| Complex64::new(rng.gen_range(0.0..1.0), 0.0)).collect()
}
