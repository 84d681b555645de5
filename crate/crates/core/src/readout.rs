//! Bright/dark fluorescence readout.
//!
//! An ion in `|g⟩` scatters photons (bright, outcome `true`); an ion in
//! `|e⟩` stays dark. The phonon mode is never observed: projections act on
//! the atomic bit only and marginalize over `n`.

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::{shot_rng, SimRng};
use crate::state::HybridState;

/// Probabilities below this are treated as impossible outcomes.
const ZERO_PROBABILITY: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotRecord {
    pub shot: u64,
    /// Run seed this shot's stream was derived from.
    pub seed: u64,
    /// Per-ion outcome, `true` = bright (ground).
    pub bright: Vec<bool>,
}

impl ShotRecord {
    /// Outcome string such as `"10"` (`1` = bright), ion 0 first.
    pub fn pattern(&self) -> String {
        pattern_string(&self.bright)
    }
}

fn pattern_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Detector model: each reported outcome is flipped with probability
/// `detection_error`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detector {
    pub detection_error: f64,
}

impl Default for Detector {
    fn default() -> Self {
        Detector {
            detection_error: 0.0,
        }
    }
}

impl Detector {
    pub fn new(detection_error: f64) -> Result<Detector> {
        if !(0.0..=0.5).contains(&detection_error) {
            return Err(Error::InvalidParameter(format!(
                "detection error must lie in [0, 0.5], got {detection_error}"
            )));
        }
        Ok(Detector { detection_error })
    }
}

/// `P_bright` for `ion`: total weight with that ion in `|g⟩`.
pub fn bright_probability(state: &HybridState, ion: usize) -> Result<f64> {
    let spec = state.spec();
    spec.check_ion(ion)?;
    let mask = spec.ion_mask(ion);
    Ok(state
        .atomic_distribution()
        .iter()
        .enumerate()
        .filter(|(bits, _)| bits & mask == 0)
        .map(|(_, p)| p)
        .sum())
}

pub fn dark_probability(state: &HybridState, ion: usize) -> Result<f64> {
    let spec = state.spec();
    spec.check_ion(ion)?;
    let mask = spec.ion_mask(ion);
    Ok(state
        .atomic_distribution()
        .iter()
        .enumerate()
        .filter(|(bits, _)| bits & mask != 0)
        .map(|(_, p)| p)
        .sum())
}

/// Exact joint distribution over outcome patterns (`"1"` = bright).
pub fn outcome_distribution(state: &HybridState) -> BTreeMap<String, f64> {
    let spec = state.spec();
    let mut dist = BTreeMap::new();
    for (bits, p) in state.atomic_distribution().into_iter().enumerate() {
        let outcome: Vec<bool> = (0..spec.n_ions)
            .map(|ion| bits & spec.ion_mask(ion) == 0)
            .collect();
        *dist.entry(pattern_string(&outcome)).or_insert(0.0) += p;
    }
    dist
}

/// Projects `ion` onto bright (`true`) or dark and renormalizes.
fn project(state: &mut HybridState, ion: usize, bright: bool, probability: f64) -> Result<()> {
    if probability < ZERO_PROBABILITY {
        return Err(Error::ZeroProbability(probability));
    }
    let spec = state.spec().clone();
    let mask = spec.ion_mask(ion);
    let scale = 1.0 / probability.sqrt();
    for (flat, a) in state.amps_mut().iter_mut().enumerate() {
        let (bits, _) = spec.unflatten(flat);
        let is_ground = bits & mask == 0;
        if is_ground == bright {
            *a *= scale;
        } else {
            *a = num_complex::Complex64::new(0.0, 0.0);
        }
    }
    Ok(())
}

/// Measures every ion in index order with the supplied generator, collapsing
/// after each projection. Returns the reported outcomes and the collapsed state.
pub fn measure_chain_with(
    state: &HybridState,
    rng: &mut SimRng,
    detector: &Detector,
) -> Result<(Vec<bool>, HybridState)> {
    let mut collapsed = state.clone();
    let n_ions = state.spec().n_ions;
    let mut reported = Vec::with_capacity(n_ions);
    for ion in 0..n_ions {
        let p_bright = bright_probability(&collapsed, ion)?.clamp(0.0, 1.0);
        let bright = rng.gen::<f64>() < p_bright;
        let p = if bright { p_bright } else { 1.0 - p_bright };
        project(&mut collapsed, ion, bright, p)?;
        let flipped = detector.detection_error > 0.0 && rng.gen::<f64>() < detector.detection_error;
        reported.push(bright != flipped);
    }
    Ok((reported, collapsed))
}

/// One shot on the substream `(seed, shot)`.
pub fn measure_chain(
    state: &HybridState,
    seed: u64,
    shot: u64,
) -> Result<(ShotRecord, HybridState)> {
    let mut rng = shot_rng(seed, shot);
    let (bright, collapsed) = measure_chain_with(state, &mut rng, &Detector::default())?;
    Ok((ShotRecord { shot, seed, bright }, collapsed))
}

/// `shots` independent preparations and measurements of `state`.
pub fn sample_shots(
    state: &HybridState,
    seed: u64,
    shots: u64,
    detector: &Detector,
) -> Result<Vec<ShotRecord>> {
    (0..shots)
        .map(|shot| {
            let mut rng = shot_rng(seed, shot);
            let (bright, _) = measure_chain_with(state, &mut rng, detector)?;
            Ok(ShotRecord { shot, seed, bright })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternEstimate {
    pub pattern: String,
    pub count: u64,
    pub frequency: f64,
    /// Binomial standard error `√(p̂(1−p̂)/n)`.
    pub std_error: f64,
}

/// Frequency and binomial standard error for every observed pattern,
/// sorted by pattern.
pub fn estimate_probabilities(records: &[ShotRecord]) -> Result<Vec<PatternEstimate>> {
    if records.is_empty() {
        return Err(Error::NoShots);
    }
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for r in records {
        *counts.entry(r.pattern()).or_insert(0) += 1;
    }
    let n = records.len() as f64;
    Ok(counts
        .into_iter()
        .map(|(pattern, count)| {
            let p = count as f64 / n;
            PatternEstimate {
                pattern,
                count,
                frequency: p,
                std_error: (p * (1.0 - p) / n).sqrt(),
            }
        })
        .collect())
}

/// Per-ion bright frequency.
pub fn bright_frequencies(records: &[ShotRecord]) -> Result<Vec<f64>> {
    let first = records.first().ok_or(Error::NoShots)?;
    let n = records.len() as f64;
    Ok((0..first.bright.len())
        .map(|ion| records.iter().filter(|r| r.bright[ion]).count() as f64 / n)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::ChainSpec;
    use num_complex::Complex64;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bell() -> HybridState {
        let h = FRAC_1_SQRT_2;
        HybridState::from_atomic(
            ChainSpec::new(2, 2).unwrap(),
            &[c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)],
            0,
        )
        .unwrap()
    }

    #[test]
    fn bright_probability_examples() {
        let spec = ChainSpec::new(1, 2).unwrap();
        let g = HybridState::new_ground(spec.clone()).unwrap();
        assert_eq!(bright_probability(&g, 0).unwrap(), 1.0);
        let plus = HybridState::from_atomic(spec, &[c(1.0, 0.0), c(1.0, 0.0)], 0).unwrap();
        assert!((bright_probability(&plus, 0).unwrap() - 0.5).abs() < 1e-15);
        for ion in 0..2 {
            assert!((bright_probability(&bell(), ion).unwrap() - 0.5).abs() < 1e-15);
        }
        assert!(bright_probability(&g, 1).is_err());
    }

    #[test]
    fn excited_ion_is_always_dark() {
        let e = HybridState::basis(ChainSpec::new(1, 3).unwrap(), 1, 2).unwrap();
        for shot in 0..50 {
            let (rec, _) = measure_chain(&e, 9, shot).unwrap();
            assert_eq!(rec.bright, vec![false]);
        }
    }

    #[test]
    fn product_state_gives_fixed_pattern() {
        let ge = HybridState::basis(ChainSpec::new(2, 2).unwrap(), 0b01, 0).unwrap();
        let records = sample_shots(&ge, 3, 200, &Detector::default()).unwrap();
        assert!(records.iter().all(|r| r.pattern() == "10"));
    }

    #[test]
    fn collapse_is_idempotent() {
        let s = bell();
        for shot in 0..20 {
            let (rec, collapsed) = measure_chain(&s, 1, shot).unwrap();
            assert!((collapsed.norm_sqr() - 1.0).abs() < 1e-12);
            for again in 0..5 {
                let (rec2, _) = measure_chain(&collapsed, 100 + again, shot).unwrap();
                assert_eq!(rec2.bright, rec.bright);
            }
        }
    }

    #[test]
    fn measurement_is_seed_deterministic() {
        let a = sample_shots(&bell(), 42, 100, &Detector::default()).unwrap();
        let b = sample_shots(&bell(), 42, 100, &Detector::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn estimates_need_shots() {
        assert_eq!(estimate_probabilities(&[]), Err(Error::NoShots));
    }

    #[test]
    fn identical_records_have_zero_error() {
        let records: Vec<ShotRecord> = (0..10)
            .map(|shot| ShotRecord {
                shot,
                seed: 0,
                bright: vec![true, false],
            })
            .collect();
        let est = estimate_probabilities(&records).unwrap();
        assert_eq!(est.len(), 1);
        assert_eq!(est[0].frequency, 1.0);
        assert_eq!(est[0].std_error, 0.0);
    }

    #[test]
    fn detector_flips_outcomes() {
        let g = HybridState::new_ground(ChainSpec::new(1, 2).unwrap()).unwrap();
        let det = Detector::new(0.1).unwrap();
        let records = sample_shots(&g, 5, 20_000, &det).unwrap();
        let dark = records.iter().filter(|r| !r.bright[0]).count() as f64 / 20_000.0;
        // 3σ band for p = 0.1 at 2e4 shots.
        assert!((dark - 0.1).abs() < 3.0 * (0.1f64 * 0.9 / 2e4).sqrt());
        assert!(Detector::new(0.7).is_err());
    }

    #[test]
    fn bright_plus_dark_is_one() {
        let s = HybridState::normalized(
            ChainSpec::new(2, 2).unwrap(),
            (0..8)
                .map(|k| c(k as f64 * 0.1, 0.3 - k as f64 * 0.05))
                .collect(),
        )
        .unwrap();
        for ion in 0..2 {
            let total = bright_probability(&s, ion).unwrap() + dark_probability(&s, ion).unwrap();
            assert!((total - 1.0).abs() < 1e-12);
        }
        let dist = outcome_distribution(&s);
        assert!((dist.values().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
