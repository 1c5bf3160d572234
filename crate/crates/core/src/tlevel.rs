//! The finite subgroup `T_ℓ = ℓ⁻¹Λ/Π ⊂ T`, its regular part and the
//! Weyl orbits on it. Elements are stored as coroot coordinates reduced
//! into `[0,1)^r`.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{CoweightVec, Rat, RootDatum, WeylElement};

/// Default cap on `|T_ℓ|`.
pub const DEFAULT_TLEVEL_CAP: u128 = 10_000_000;

/// A class in `T_ℓ`, by its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TLevelElement {
    pub xi: CoweightVec,
}

impl TLevelElement {
    /// Reduces `xi` to the canonical cell; fails if `xi ∉ ℓ⁻¹Λ`.
    pub fn new(xi: CoweightVec, d: &RootDatum) -> Result<Self> {
        d.check_dim(xi.0.len())?;
        if !in_level_lattice(&xi, d) {
            return Err(Error::NotInTLevel(xi.to_string()));
        }
        Ok(TLevelElement { xi: xi.fractional() })
    }

    pub fn is_regular(&self, d: &RootDatum) -> bool {
        is_regular(&self.xi, d)
    }

    /// `w·g` reduced to the canonical cell.
    pub fn act(&self, w: &WeylElement) -> Self {
        TLevelElement { xi: CoweightVec(w.act_coweight(&self.xi.0)).fractional() }
    }

    pub fn to_complex(&self) -> Vec<num_complex::Complex64> {
        self.xi.to_complex()
    }
}

/// `ℓξ` pairs integrally with `Π`, i.e. `B_ℓ ξ ∈ Λ`.
pub fn in_level_lattice(xi: &CoweightVec, d: &RootDatum) -> bool {
    d.gram.iter().all(|row| {
        row.iter()
            .zip(&xi.0)
            .map(|(&g, x)| x * g)
            .sum::<Rat>()
            .is_integer()
    })
}

/// True iff `⟨α, ξ⟩ ∉ ℤ` for every root `α`.
pub fn is_regular(xi: &CoweightVec, d: &RootDatum) -> bool {
    d.positive_roots.iter().all(|a| !a.pair(&xi.0).is_integer())
}

/// `|T_ℓ| = [ℓ⁻¹Λ : Π] = det B_ℓ`.
pub fn tlevel_order(d: &RootDatum) -> u128 {
    crate::rootsys::determinant(&d.gram).to_integer().unsigned_abs() as u128
}

pub fn enumerate_tlevel(d: &RootDatum) -> Result<Vec<TLevelElement>> {
    enumerate_tlevel_capped(d, DEFAULT_TLEVEL_CAP)
}

/// All of `T_ℓ`, sorted, as the subgroup of `(ℚ/ℤ)^r` generated by the
/// columns of `B_ℓ⁻¹`.
pub fn enumerate_tlevel_capped(d: &RootDatum, cap: u128) -> Result<Vec<TLevelElement>> {
    let order = tlevel_order(d);
    if order > cap {
        return Err(Error::CapExceeded { what: "T_l", size: order, cap });
    }
    let r = d.rank;
    let inv = d.gram_inverse();
    let gens: Vec<CoweightVec> = (0..r)
        .map(|j| CoweightVec((0..r).map(|i| inv[i][j]).collect()).fractional())
        .collect();
    let zero = CoweightVec::zero(r);
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.add(g).fractional();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    debug_assert_eq!(seen.len() as u128, order);
    Ok(seen.into_iter().map(|xi| TLevelElement { xi }).collect())
}

/// One lexicographically minimal representative per `W`-orbit of `T_ℓ^reg`,
/// with orbit sizes.
pub fn regular_orbit_reps(d: &RootDatum) -> Result<Vec<(TLevelElement, usize)>> {
    let elems = enumerate_tlevel(d)?;
    let weyl = d.weyl_group()?;
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for g in elems {
        if !g.is_regular(d) || seen.contains(&g) {
            continue;
        }
        let orbit: BTreeSet<TLevelElement> = weyl.iter().map(|w| g.act(w)).collect();
        if orbit.len() as u128 != d.weyl_order {
            return Err(Error::NonFreeOrbit { size: orbit.len(), weyl: d.weyl_order as usize });
        }
        debug_assert_eq!(orbit.first(), Some(&g));
        let size = orbit.len();
        seen.extend(orbit);
        reps.push((g, size));
    }
    Ok(reps)
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitJson {
    pub rep: Vec<String>,
    pub size: usize,
}

/// `{"order","regular","orbits":[{"rep","size"}]}`.
#[derive(Clone, Debug, Serialize)]
pub struct TLevelReport {
    pub order: u128,
    pub regular: usize,
    pub orbits: Vec<OrbitJson>,
}

pub fn tlevel_report(d: &RootDatum) -> Result<TLevelReport> {
    let elems = enumerate_tlevel(d)?;
    let regular = elems.iter().filter(|g| g.is_regular(d)).count();
    let orbits = regular_orbit_reps(d)?
        .into_iter()
        .map(|(g, size)| OrbitJson { rep: g.xi.0.iter().map(ToString::to_string).collect(), size })
        .collect();
    Ok(TLevelReport { order: elems.len() as u128, regular, orbits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn datum(s: &str) -> RootDatum {
        RootDatum::from_str_spec(s).unwrap()
    }

    fn q(p: i64, d: i64) -> Rat {
        Rat::new(p, d)
    }

    /// Independent count: reduce `B_ℓ⁻¹μ` mod 1 over a box of weights.
    fn brute_force(d: &RootDatum, radius: i64) -> BTreeSet<CoweightVec> {
        let win = crate::charring::Window::symmetric(d.rank, radius);
        win.points().map(|mu| d.level_sharp(&mu).fractional()).collect()
    }

    #[test]
    fn rank_one_level_two() {
        let d = datum("A1*2");
        let t = enumerate_tlevel(&d).unwrap();
        let xs: Vec<Rat> = t.iter().map(|g| g.xi.0[0]).collect();
        assert_eq!(xs, vec![q(0, 1), q(1, 4), q(1, 2), q(3, 4)]);
        let regular: Vec<bool> = t.iter().map(|g| g.is_regular(&d)).collect();
        assert_eq!(regular, vec![false, true, false, true]);
        let reps = regular_orbit_reps(&d).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].0.xi.0, vec![q(1, 4)]);
        assert_eq!(reps[0].1, 2);
    }

    #[test]
    fn rank_one_orders_and_primary_counts() {
        for l in 1..=12 {
            let d = datum(&format!("A1*{l}"));
            assert_eq!(enumerate_tlevel(&d).unwrap().len() as i64, 2 * l);
        }
        assert_eq!(enumerate_tlevel(&datum("A1")).unwrap().len(), 2);
        assert!(regular_orbit_reps(&datum("A1")).unwrap().is_empty());
        for k in 0..=10 {
            let d = datum(&format!("A1*{}", k + 2));
            assert_eq!(regular_orbit_reps(&d).unwrap().len() as i64, k + 1);
        }
        let reps: Vec<Rat> = regular_orbit_reps(&datum("A1*4"))
            .unwrap()
            .into_iter()
            .map(|(g, _)| g.xi.0[0])
            .collect();
        assert_eq!(reps, vec![q(1, 8), q(1, 4), q(3, 8)]);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for s in ["A2", "A2*2", "A3", "B2", "C2*2", "G2", "D4", "A1*2+A1*3"] {
            let d = datum(s);
            let t: BTreeSet<CoweightVec> = enumerate_tlevel(&d).unwrap().into_iter().map(|g| g.xi).collect();
            assert_eq!(t, brute_force(&d, 8), "{s}");
            assert_eq!(t.len() as u128, tlevel_order(&d));
            assert!(t.contains(&CoweightVec::zero(d.rank)));
        }
    }

    #[test]
    fn simply_laced_order_is_level_power_times_center() {
        for (s, l) in [("A2", 1i64), ("A2*3", 3), ("A3*2", 2), ("D4*2", 2)] {
            let d = datum(s);
            let expect = l.pow(d.rank as u32) * d.fundamental_group_order();
            assert_eq!(tlevel_order(&d) as i64, expect);
        }
    }

    #[test]
    fn weyl_preserves_regular_set() {
        let d = datum("A2*4");
        let weyl = d.weyl_group().unwrap();
        for g in enumerate_tlevel(&d).unwrap() {
            for w in weyl {
                assert_eq!(g.act(w).is_regular(&d), g.is_regular(&d));
            }
        }
        let total: usize = regular_orbit_reps(&d).unwrap().iter().map(|(_, s)| s).sum();
        let regular = enumerate_tlevel(&d).unwrap().iter().filter(|g| g.is_regular(&d)).count();
        assert_eq!(total, regular);
    }

    #[test]
    fn membership() {
        let d = datum("A1*2");
        assert!(TLevelElement::new(CoweightVec(vec![q(5, 4)]), &d).is_ok());
        assert!(matches!(
            TLevelElement::new(CoweightVec(vec![q(1, 3)]), &d),
            Err(Error::NotInTLevel(_))
        ));
        assert!(!is_regular(&CoweightVec(vec![q(1, 2)]), &d));
    }

    #[test]
    fn cap_is_enforced() {
        let d = datum("A2*50");
        assert!(matches!(enumerate_tlevel_capped(&d, 100), Err(Error::CapExceeded { .. })));
    }
}
