//! The Morse side: orbit points of a closed-chamber base point, their
//! indices, Betti censuses, and the cross-check against the coinvariant
//! presentation.
//!
//! The index of an orbit point p is the multiplicity-weighted number of
//! reflection hyperplanes separating it from the base chamber, skipping
//! roots α with α/2 also a root. Because the height direction can be taken
//! anywhere inside the chamber, a hyperplane is crossed exactly when
//! α(p) < 0; α(p) = 0 counts as no crossing, which forces index 0 for every
//! point fixed by the stabilizer. The census runs over the distinct orbit
//! points (the critical set); counting each group element instead, so that
//! every point repeats by the stabilizer order, is available behind
//! [`OrbitCounting::WithStabilizerRepetition`] for comparison.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::coinv::Coinvariants;
use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::rootsys::RootSystem;
use crate::weyl::WeylGroup;

/// How the Betti census counts coincident orbit points.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrbitCounting {
    /// One contribution per distinct point of the orbit (the default).
    Distinct,
    /// One contribution per group element; every distinct point is weighted
    /// by the stabilizer order.
    WithStabilizerRepetition,
}

/// One distinct point of the orbit.
#[derive(Clone, Debug)]
pub struct OrbitPoint {
    /// Simple-root values (γ_1(p), …, γ_l(p)).
    pub values: Vec<Rat>,
    /// α(p) for every positive root, in root order.
    pub root_values: Vec<Rat>,
    /// Index (into the enumeration) of the earliest element mapping the base
    /// point here.
    pub representative: usize,
    /// Morse index d(p).
    pub index: usize,
}

/// Orbit, indices and Betti census of one base point.
#[derive(Clone, Debug)]
pub struct MorseProfile {
    x0: Vec<Rat>,
    points: Vec<OrbitPoint>,
    betti: Vec<u64>,
    stabilizer_order: usize,
    counting: OrbitCounting,
}

impl MorseProfile {
    /// Computes the profile with distinct-point counting.
    pub fn compute(rs: &RootSystem, weyl: &WeylGroup, x0: &[Rat]) -> Result<Self> {
        Self::compute_with(rs, weyl, x0, OrbitCounting::Distinct)
    }

    pub fn compute_with(
        rs: &RootSystem,
        weyl: &WeylGroup,
        x0: &[Rat],
        counting: OrbitCounting,
    ) -> Result<Self> {
        if rs.multiplicities().is_none() {
            return Err(Error::InvalidInput(
                "attach root multiplicities before computing Morse data".into(),
            ));
        }
        if x0.len() != rs.rank() {
            return Err(Error::InvalidInput(format!(
                "x0 has {} coordinates, rank is {}",
                x0.len(),
                rs.rank()
            )));
        }
        if let Some(j) = x0.iter().position(|v| v.is_negative()) {
            return Err(Error::InvalidInput(format!(
                "x0 is outside the closed positive chamber: γ_{}(x0) < 0",
                j + 1
            )));
        }
        // distinct orbit points; enumeration order makes the first hit the
        // minimal (length, word) representative
        let mut seen: BTreeMap<Vec<Rat>, usize> = BTreeMap::new();
        for i in 0..weyl.order() {
            let values = weyl.apply_to_point_values(i, x0);
            seen.entry(values).or_insert(i);
        }
        let stab = weyl.stabilizer(x0)?;
        if seen.len() * stab.order() != weyl.order() {
            return Err(Error::Inconsistency(
                "orbit size times stabilizer order must equal the group order".into(),
            ));
        }
        let mut points = Vec::with_capacity(seen.len());
        for (values, representative) in seen {
            let root_values: Vec<Rat> = rs
                .positive_roots()
                .iter()
                .map(|a| {
                    let mut acc = Rat::zero();
                    for (c, v) in a.iter().zip(&values) {
                        if *c != 0 {
                            acc += v * crate::rat::rat_int(*c);
                        }
                    }
                    acc
                })
                .collect();
            let index = index_from_root_values(rs, &root_values)?;
            points.push(OrbitPoint {
                values,
                root_values,
                representative,
                index,
            });
        }
        points.sort_by(|a, b| (a.index, &a.values).cmp(&(b.index, &b.values)));
        let max_index = points.iter().map(|p| p.index).max().unwrap_or(0);
        let mut betti = vec![0u64; max_index + 1];
        let weight = match counting {
            OrbitCounting::Distinct => 1,
            OrbitCounting::WithStabilizerRepetition => stab.order() as u64,
        };
        for p in &points {
            betti[p.index] += weight;
        }
        Ok(MorseProfile {
            x0: x0.to_vec(),
            points,
            betti,
            stabilizer_order: stab.order(),
            counting,
        })
    }

    pub fn x0(&self) -> &[Rat] {
        &self.x0
    }

    pub fn points(&self) -> &[OrbitPoint] {
        &self.points
    }

    pub fn orbit_size(&self) -> usize {
        self.points.len()
    }

    pub fn stabilizer_order(&self) -> usize {
        self.stabilizer_order
    }

    pub fn counting(&self) -> OrbitCounting {
        self.counting
    }

    /// Betti vector; index k holds the count of orbit points of index k.
    pub fn betti(&self) -> &[u64] {
        &self.betti
    }

    /// Sum of the census (the Euler characteristic of the orbit).
    pub fn total(&self) -> u64 {
        self.betti.iter().sum()
    }
}

/// Morse index from the root-value vector of an orbit point:
/// the sum of m_α over positive roots α with α/2 not a root and α(p) < 0.
pub fn index_from_root_values(rs: &RootSystem, root_values: &[Rat]) -> Result<usize> {
    let table = rs.multiplicities().ok_or_else(|| {
        Error::InvalidInput("attach root multiplicities before computing Morse data".into())
    })?;
    let mut index = 0usize;
    for (i, a) in rs.positive_roots().iter().enumerate() {
        if rs.half_is_root(a) {
            continue;
        }
        if root_values[i].is_negative() {
            index += table.of(i) as usize;
        }
    }
    Ok(index)
}

/// Outcome of the two-pipeline comparison for one base point.
#[derive(Clone, Debug)]
pub struct AgreementReport {
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    /// Morse census Σ_p t^{d(p)}, as coefficients.
    pub morse_series: Vec<u64>,
    /// Stabilizer-invariant quotient series Q, before stretching.
    pub quotient_series: Vec<u64>,
    /// Q(t^m): the quotient series with degrees scaled by the common
    /// multiplicity.
    pub stretched_series: Vec<u64>,
    pub series_match: bool,
    /// Σ census = orbit size = |W| / |W_{x0}|.
    pub euler_ok: bool,
}

impl AgreementReport {
    pub fn pass(&self) -> bool {
        self.series_match && self.euler_ok
    }
}

/// Runs both pipelines for one base point and compares: the Morse census of
/// W·x0 must equal the stabilizer-invariant series of the coinvariant
/// algebra with degrees stretched by the common multiplicity m.
///
/// Requires uniform multiplicities m ∈ {2, 4, 8}; anything else is outside
/// the hypothesis of the presentation and is rejected.
pub fn verify_coinvariant_agreement(
    rs: &RootSystem,
    weyl: &WeylGroup,
    coinv: &Coinvariants,
    x0: &[Rat],
) -> Result<AgreementReport> {
    let table = rs.multiplicities().ok_or_else(|| {
        Error::InvalidInput("attach root multiplicities before verifying".into())
    })?;
    if !table.coinvariant_regime() {
        return Err(Error::InvalidInput(format!(
            "the coinvariant presentation requires equal root multiplicities \
             m ∈ {{2, 4, 8}} (in particular all at least 2); got {:?}",
            table.values()
        )));
    }
    let m = table.uniform().expect("regime implies uniform") as usize;
    let profile = MorseProfile::compute(rs, weyl, x0)?;
    let stab = weyl.stabilizer(x0)?;
    let quotient = coinv.invariant_quotient_series(&stab)?;
    let mut stretched = vec![0u64; (quotient.len() - 1) * m + 1];
    for (k, &c) in quotient.iter().enumerate() {
        stretched[k * m] = c;
    }
    let last = stretched.iter().rposition(|&c| c != 0).map_or(0, |p| p + 1);
    stretched.truncate(last.max(1));
    let series_match = equal_ignoring_trailing_zeros(profile.betti(), &stretched);
    let euler_ok = profile.total() as usize == profile.orbit_size()
        && profile.orbit_size() * stab.order() == weyl.order();
    Ok(AgreementReport {
        orbit_size: profile.orbit_size(),
        stabilizer_order: stab.order(),
        morse_series: profile.betti().to_vec(),
        quotient_series: quotient,
        stretched_series: stretched,
        series_match,
        euler_ok,
    })
}

fn equal_ignoring_trailing_zeros(a: &[u64], b: &[u64]) -> bool {
    let strip = |v: &[u64]| {
        let end = v.iter().rposition(|&c| c != 0).map_or(0, |p| p + 1);
        v[..end].to_vec()
    };
    strip(a) == strip(b)
}

/// A pair of reflection-related orbit points with adjacent indices.
#[derive(Clone, Debug)]
pub struct IndexGapViolation {
    pub point: usize,
    pub partner: usize,
    pub root: Vec<i64>,
    pub indices: (usize, usize),
}

/// Scan of all reflection-related pairs of orbit points.
#[derive(Clone, Debug)]
pub struct PerfectnessReport {
    /// Whether all multiplicities are at least 2 (the hypothesis under which
    /// no adjacent pair may occur).
    pub hypothesis_met: bool,
    pub pairs_checked: usize,
    pub violations: Vec<IndexGapViolation>,
}

impl PerfectnessReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that no two orbit points related by a reflection have indices
/// differing by exactly 1. With all multiplicities at least 2 this must come
/// out empty; with some multiplicity 1 adjacent pairs may legitimately
/// appear and are reported.
pub fn perfectness_witness(
    rs: &RootSystem,
    weyl: &WeylGroup,
    x0: &[Rat],
) -> Result<PerfectnessReport> {
    let table = rs.multiplicities().ok_or_else(|| {
        Error::InvalidInput("attach root multiplicities before the perfectness scan".into())
    })?;
    let hypothesis_met = table.min_value() >= 2;
    let profile = MorseProfile::compute(rs, weyl, x0)?;
    let position: BTreeMap<&[Rat], usize> = profile
        .points()
        .iter()
        .enumerate()
        .map(|(i, p)| (p.values.as_slice(), i))
        .collect();
    let mut violations = Vec::new();
    let mut pairs_checked = 0usize;
    for (i, p) in profile.points().iter().enumerate() {
        for root in rs.positive_roots() {
            let reflected = rs
                .reflection_matrix(root)?
                .transpose()
                .apply_rat(&p.values);
            let j = *position
                .get(reflected.as_slice())
                .ok_or_else(|| Error::Inconsistency("orbit not closed under reflection".into()))?;
            if j <= i {
                continue; // unordered pairs once; j == i means the point is fixed
            }
            pairs_checked += 1;
            let q = &profile.points()[j];
            if p.index.abs_diff(q.index) == 1 {
                violations.push(IndexGapViolation {
                    point: i,
                    partner: j,
                    root: root.clone(),
                    indices: (p.index, q.index),
                });
            }
        }
    }
    Ok(PerfectnessReport {
        hypothesis_met,
        pairs_checked,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use crate::rootsys::{Family, MultiplicitySpec};
    use std::collections::BTreeMap as Map;

    fn system(f: Family, l: usize, m: u32) -> (RootSystem, WeylGroup) {
        let rs = RootSystem::new(f, l)
            .unwrap()
            .with_multiplicities(&MultiplicitySpec::Uniform(m))
            .unwrap();
        let w = WeylGroup::enumerate(&rs).unwrap();
        (rs, w)
    }

    fn ones(l: usize) -> Vec<Rat> {
        vec![rat_int(1); l]
    }

    #[test]
    fn orbit_point_counts() {
        let (rs, w) = system(Family::A, 2, 2);
        // origin: a single point of index 0
        let zero = vec![rat_int(0); 2];
        let profile = MorseProfile::compute(&rs, &w, &zero).unwrap();
        assert_eq!(profile.orbit_size(), 1);
        assert_eq!(profile.betti(), &[1]);
        // regular point: six points
        let profile = MorseProfile::compute(&rs, &w, &ones(2)).unwrap();
        assert_eq!(profile.orbit_size(), 6);

        // B2 on the first wall: 8 / |<s1>| = 4 points
        let (rs, w) = system(Family::B, 2, 2);
        let wall = vec![rat_int(0), rat_int(1)];
        let profile = MorseProfile::compute(&rs, &w, &wall).unwrap();
        assert_eq!(profile.orbit_size(), 4);
        assert_eq!(profile.stabilizer_order(), 2);
    }

    #[test]
    fn regular_indices_scale_lengths() {
        for m in [2u32, 4, 8] {
            let (rs, w) = system(Family::A, 2, m);
            let profile = MorseProfile::compute(&rs, &w, &ones(2)).unwrap();
            // base point itself has index 0
            assert_eq!(profile.points()[0].index, 0);
            for p in profile.points() {
                let l = w.element(p.representative).length();
                assert_eq!(p.index, m as usize * l);
            }
            // the antipodal point crosses every hyperplane
            let top = profile.points().last().unwrap();
            assert_eq!(top.representative, w.longest_index());
            assert_eq!(top.index, m as usize * rs.num_positive_roots());
        }
    }

    #[test]
    fn betti_censuses() {
        let (rs, w) = system(Family::A, 2, 2);
        let profile = MorseProfile::compute(&rs, &w, &ones(2)).unwrap();
        assert_eq!(profile.betti(), &[1, 0, 2, 0, 2, 0, 1]);
        assert_eq!(profile.total(), 6);

        let (rs, w) = system(Family::A, 2, 8);
        let profile = MorseProfile::compute(&rs, &w, &ones(2)).unwrap();
        let mut expected = [0u64; 25];
        for (k, c) in [(0usize, 1u64), (8, 2), (16, 2), (24, 1)] {
            expected[k] = c;
        }
        assert_eq!(profile.betti(), &expected[..]);
    }

    #[test]
    fn regular_census_is_palindromic() {
        // w -> w0·w complements the crossing set, so b_k = b_{D−k}
        for (f, l) in [(Family::A, 3), (Family::B, 3), (Family::G, 2)] {
            let (rs, w) = system(f, l, 2);
            let x0: Vec<Rat> = vec![rat_int(1); l];
            let profile = MorseProfile::compute(&rs, &w, &x0).unwrap();
            let b = profile.betti();
            let d = b.len() - 1;
            for k in 0..=d {
                assert_eq!(b[k], b[d - k], "{f}{l} degree {k}");
            }
        }
    }

    #[test]
    fn rank_one_sphere() {
        let (rs, w) = system(Family::A, 1, 2);
        let profile = MorseProfile::compute(&rs, &w, &[rat_int(1)]).unwrap();
        assert_eq!(profile.betti(), &[1, 0, 1]);
    }

    #[test]
    fn repetition_counting_restores_group_order() {
        let (rs, w) = system(Family::B, 2, 2);
        let wall = vec![rat_int(0), rat_int(1)];
        let distinct = MorseProfile::compute(&rs, &w, &wall).unwrap();
        assert_eq!(distinct.total(), 4);
        let repeated =
            MorseProfile::compute_with(&rs, &w, &wall, OrbitCounting::WithStabilizerRepetition)
                .unwrap();
        assert_eq!(repeated.total(), 8);
        assert_eq!(repeated.orbit_size(), 4);
    }

    #[test]
    fn agreement_on_small_cases() {
        let (rs, w) = system(Family::A, 2, 2);
        let coinv = Coinvariants::new(&rs, &w);
        let report = verify_coinvariant_agreement(&rs, &w, &coinv, &ones(2)).unwrap();
        assert!(report.pass());
        assert_eq!(report.morse_series, vec![1, 0, 2, 0, 2, 0, 1]);
        assert_eq!(report.stretched_series, vec![1, 0, 2, 0, 2, 0, 1]);

        // m = 4 regime
        let (rs4, w4) = system(Family::A, 2, 4);
        let coinv4 = Coinvariants::new(&rs4, &w4);
        let report = verify_coinvariant_agreement(&rs4, &w4, &coinv4, &ones(2)).unwrap();
        assert!(report.pass());

        // B2 on a wall: four classes in degrees 0, 2, 4, 6
        let (rs, w) = system(Family::B, 2, 2);
        let coinv = Coinvariants::new(&rs, &w);
        let wall = vec![rat_int(0), rat_int(1)];
        let report = verify_coinvariant_agreement(&rs, &w, &coinv, &wall).unwrap();
        assert!(report.pass());
        assert_eq!(report.orbit_size, 4);
        assert_eq!(report.morse_series, vec![1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn regime_hypothesis_is_enforced() {
        // m = 3 is outside {2, 4, 8}
        let (rs, w) = system(Family::A, 2, 3);
        let coinv = Coinvariants::new(&rs, &w);
        let err = verify_coinvariant_agreement(&rs, &w, &coinv, &ones(2)).unwrap_err();
        assert!(err.to_string().contains("2, 4, 8"), "{err}");

        // non-uniform table is outside too
        let mut rs = RootSystem::new(Family::B, 2).unwrap();
        rs.attach_multiplicities(&MultiplicitySpec::Table(Map::from([
            (vec![1i64, 0], 2u32),
            (vec![0i64, 1], 4u32),
        ])))
        .unwrap();
        let w = WeylGroup::enumerate(&rs).unwrap();
        let coinv = Coinvariants::new(&rs, &w);
        assert!(verify_coinvariant_agreement(&rs, &w, &coinv, &ones(2)).is_err());
    }

    #[test]
    fn perfectness_scan() {
        // uniform m = 2: no adjacent indices anywhere
        let (rs, w) = system(Family::B, 2, 2);
        let report = perfectness_witness(&rs, &w, &ones(2)).unwrap();
        assert!(report.hypothesis_met);
        assert!(report.pass());
        assert!(report.pairs_checked > 0);

        // non-uniform but all ≥ 2 still passes
        let mut rs = RootSystem::new(Family::B, 2).unwrap();
        rs.attach_multiplicities(&MultiplicitySpec::Table(Map::from([
            (vec![1i64, 0], 2u32),
            (vec![0i64, 1], 3u32),
        ])))
        .unwrap();
        let w = WeylGroup::enumerate(&rs).unwrap();
        let report = perfectness_witness(&rs, &w, &ones(2)).unwrap();
        assert!(report.hypothesis_met);
        assert!(report.pass());

        // uniform m = 1 demonstrates adjacent pairs, outside the hypothesis
        let (rs, w) = system(Family::B, 2, 1);
        let report = perfectness_witness(&rs, &w, &ones(2)).unwrap();
        assert!(!report.hypothesis_met);
        assert!(!report.pass());

        // single-point orbit: vacuously clean
        let (rs, w) = system(Family::B, 2, 1);
        let zero = vec![rat_int(0); 2];
        let report = perfectness_witness(&rs, &w, &zero).unwrap();
        assert!(report.pass());
        assert_eq!(report.pairs_checked, 0);
    }

    #[test]
    fn half_root_exclusion_for_non_reduced_data() {
        // BC-type rank 1: positive roots α and 2α; only α counts toward the
        // index, carrying the combined weight
        let text = r#"{
            "rank": 1,
            "gram": [["1"]],
            "positive_roots": [[1], [2]],
            "multiplicities": {"table": {"1": 3, "2": 1}}
        }"#;
        let rs = RootSystem::from_json(text).unwrap();
        let w = WeylGroup::enumerate(&rs).unwrap();
        let profile = MorseProfile::compute(&rs, &w, &[rat(1, 1)]).unwrap();
        assert_eq!(profile.orbit_size(), 2);
        // antipode crosses ker α once; 2α is skipped, so the index is 3
        assert_eq!(profile.betti(), &[1, 0, 0, 1]);
    }

    #[test]
    fn input_validation() {
        let (rs, w) = system(Family::A, 2, 2);
        assert!(MorseProfile::compute(&rs, &w, &[rat_int(1)]).is_err());
        assert!(MorseProfile::compute(&rs, &w, &[rat_int(-1), rat_int(1)]).is_err());
        let bare = RootSystem::new(Family::A, 2).unwrap();
        let wb = WeylGroup::enumerate(&bare).unwrap();
        assert!(MorseProfile::compute(&bare, &wb, &ones(2)).is_err());
    }
}
