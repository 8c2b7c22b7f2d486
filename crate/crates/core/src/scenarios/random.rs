//! Seeded random games in each regime, with base values inside the region
//! where the matching construction applies.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{build_spec, TypeRow};
use crate::analysis::{verify_mediator, VerificationReport};
use crate::equilibrium::{enumerate_pure_bne, naive_best_response, NaiveVariant};
use crate::error::{Error, Result};
use crate::game::{validate_game, GameSpec, ValidatedGame};
use crate::mediators::{m3_violations, mediator_amazon, mediator_m3, mediator_no_amazon, mediator_nplayer};
use crate::rational::{min_q, q, qi, Q};
use crate::segments::{SegmentClass, SegmentStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceProfile {
    /// Jointly complete information, no outside competitor.
    JciNoA,
    /// Jointly complete information with the outside competitor.
    JciA,
    /// Segments whose top good is at most 3/2 times the runner-up.
    NojciS1,
    /// Segments whose top good is more than 3/2 times the runner-up.
    NojciS2,
    NojciMixed,
    /// Three or four sellers, jointly complete information, no outside
    /// competitor; base values are the best pure equilibrium.
    Nplayer,
}

impl InstanceProfile {
    pub const ALL: [InstanceProfile; 6] = [
        InstanceProfile::JciNoA,
        InstanceProfile::JciA,
        InstanceProfile::NojciS1,
        InstanceProfile::NojciS2,
        InstanceProfile::NojciMixed,
        InstanceProfile::Nplayer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InstanceProfile::JciNoA => "jci_noA",
            InstanceProfile::JciA => "jci_A",
            InstanceProfile::NojciS1 => "nojci_S1",
            InstanceProfile::NojciS2 => "nojci_S2",
            InstanceProfile::NojciMixed => "nojci_mixed",
            InstanceProfile::Nplayer => "nplayer",
        }
    }
}

impl fmt::Display for InstanceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InstanceProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InstanceProfile::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::RegimeViolated(format!("unknown instance profile {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomInstance {
    pub profile: InstanceProfile,
    pub seed: u64,
    /// Base values are stored in the game.
    pub game: GameSpec,
}

impl RandomInstance {
    pub fn values(&self) -> &[Q] {
        &self.game.base_values
    }

    pub fn validated(&self) -> Result<ValidatedGame> {
        validate_game(&self.game)
    }
}

/// A rational in `[0, 1)` on a grid of twelfths.
fn fraction(rng: &mut ChaCha8Rng) -> Q {
    q(rng.gen_range(0..12), 12)
}

fn normalize(weights: &[u32]) -> Vec<Q> {
    let total: u32 = weights.iter().sum();
    weights.iter().map(|&w| q(w.into(), total.into())).collect()
}

fn good_names(count: usize) -> Vec<String> {
    (0..count).map(|g| format!("g{g}")).collect()
}

/// Types are all (row cell, column cell) pairs, so the pooled data pins
/// down the type.
fn jci_spec(rng: &mut ChaCha8Rng, amazon: bool) -> GameSpec {
    let rows_cells = rng.gen_range(2..=3);
    let col_cells = rng.gen_range(2..=3);
    let goods = good_names(rng.gen_range(2..=3));
    let weights: Vec<u32> = (0..rows_cells * col_cells).map(|_| rng.gen_range(1..=9)).collect();
    let prior = normalize(&weights);
    let mut rows = Vec::new();
    for r in 0..rows_cells {
        for c in 0..col_cells {
            let good = goods.choose(rng).expect("goods").clone();
            rows.push(TypeRow::new(format!("t{r}{c}"), good, prior[r * col_cells + c].clone()));
        }
    }
    let row_partition = (0..rows_cells)
        .map(|r| (0..col_cells).map(|c| format!("t{r}{c}")).collect())
        .collect();
    let col_partition = (0..col_cells)
        .map(|c| (0..rows_cells).map(|r| format!("t{r}{c}")).collect())
        .collect();
    build_spec(&rows, vec![row_partition, col_partition], amazon)
}

/// Values inside the region where the jointly-complete constructions apply:
/// the stronger value below its benchmark utility and the weaker one under
/// the welfare cap.
fn jci_values(rng: &mut ChaCha8Rng, game: &ValidatedGame) -> Result<Vec<Q>> {
    let informed = rng.gen_range(0..2);
    let naive = naive_best_response(game, informed, NaiveVariant::Jci)?;
    let v_i = &naive.alpha_i * fraction(rng);
    let cap = if game.amazon() {
        Q::one() - qi(2) * &v_i
    } else {
        Q::one() - &v_i
    };
    let v_j = min_q(&v_i, &cap) * fraction(rng);
    let mut values = vec![Q::zero(); 2];
    values[informed] = v_i;
    values[1 - informed] = v_j;
    Ok(values)
}

/// Integer weights for (top, runner-up, optional third) in one segment.
fn segment_weights(rng: &mut ChaCha8Rng, class: SegmentClass) -> Vec<u32> {
    let (top, second) = match class {
        SegmentClass::Balanced => {
            let second = rng.gen_range(4..=8);
            (rng.gen_range(second..=second * 3 / 2), second)
        }
        SegmentClass::Dominant => {
            let second = rng.gen_range(1..=4);
            (rng.gen_range(second * 3 / 2 + 1..=second * 4 + 2), second)
        }
    };
    let mut out = vec![top, second];
    if rng.gen_bool(0.5) {
        out.push(rng.gen_range(1..=second));
    }
    out
}

/// Segments known to one seller; the other sees a random coarsening.
fn segmented_spec(rng: &mut ChaCha8Rng, profile: InstanceProfile) -> GameSpec {
    let count = rng.gen_range(2..=3);
    let mut classes: Vec<SegmentClass> = (0..count)
        .map(|_| match profile {
            InstanceProfile::NojciS1 => SegmentClass::Balanced,
            InstanceProfile::NojciS2 => SegmentClass::Dominant,
            _ => {
                if rng.gen_bool(0.5) {
                    SegmentClass::Balanced
                } else {
                    SegmentClass::Dominant
                }
            }
        })
        .collect();
    if profile == InstanceProfile::NojciMixed {
        classes[0] = SegmentClass::Balanced;
        classes[1] = SegmentClass::Dominant;
    }
    let pool = good_names(rng.gen_range(3..=4));
    let seg_weights: Vec<u32> = (0..count).map(|_| rng.gen_range(1..=5)).collect();
    let seg_prob = normalize(&seg_weights);
    let mut rows = Vec::new();
    let mut segments = Vec::new();
    for (k, class) in classes.iter().enumerate() {
        let weights = segment_weights(rng, *class);
        let goods: Vec<&String> = pool.choose_multiple(rng, weights.len()).collect();
        let within = normalize(&weights);
        let mut names = Vec::new();
        for (idx, (g, p)) in goods.iter().zip(&within).enumerate() {
            let name = format!("s{k}_{idx}");
            rows.push(TypeRow::new(name.clone(), (*g).clone(), &seg_prob[k] * p));
            names.push(name);
        }
        segments.push(names);
    }
    let fine: Vec<Vec<String>> = segments.clone();
    let mut coarse: Vec<Vec<String>> = Vec::new();
    for seg in segments {
        match coarse.choose_mut(rng) {
            Some(cell) if rng.gen_bool(0.5) => cell.extend(seg),
            _ => coarse.push(seg),
        }
    }
    let partitions = if rng.gen_bool(0.5) {
        vec![fine, coarse]
    } else {
        vec![coarse, fine]
    };
    build_spec(&rows, partitions, true)
}

/// Values under the per-class sufficient conditions of the combined
/// segment mediator.
fn segmented_values(rng: &mut ChaCha8Rng, game: &ValidatedGame) -> Result<Vec<Q>> {
    let stats = SegmentStats::of(game);
    let informed = rng.gen_range(0..2);
    let balanced = !stats.balanced_mass.is_zero();
    let dominant = !stats.dominant_mass.is_zero();
    let mut cap_i: Option<Q> = None;
    let tighten = |cap: &mut Option<Q>, c: Q| {
        *cap = Some(match cap.take() {
            Some(x) if x <= c => x,
            _ => c,
        });
    };
    if balanced {
        tighten(&mut cap_i, &stats.balanced_top / qi(2));
    }
    if dominant {
        let alpha = naive_best_response(game, informed, NaiveVariant::NoJciDominant)?.alpha_i;
        let pool = &stats.dominant_top / qi(3);
        tighten(&mut cap_i, if alpha > pool { alpha } else { pool });
    }
    let v_i = cap_i.unwrap_or_else(Q::zero) * fraction(rng);
    let mut cap_j = Some(v_i.clone());
    if balanced {
        tighten(&mut cap_j, (&stats.balanced_top + &stats.balanced_second) / qi(2) - &v_i);
    }
    if dominant && v_i > &stats.dominant_top / qi(3) {
        tighten(&mut cap_j, &stats.dominant_top / qi(2) - &v_i);
    }
    let v_j = cap_j.unwrap_or_else(Q::zero) * fraction(rng);
    let mut values = vec![Q::zero(); 2];
    values[informed] = v_i;
    values[1 - informed] = v_j;
    let violated = m3_violations(game, &values)?;
    if !violated.is_empty() {
        // The caps above are the sufficient conditions themselves, so this
        // signals a drift between the two.
        return Err(Error::InfeasibleBaseValues { violated });
    }
    Ok(values)
}

/// Sellers see one bit each of a random subset of at most 8 bit strings.
fn nplayer_spec(rng: &mut ChaCha8Rng, n: usize) -> GameSpec {
    let mut all: Vec<usize> = (0..1usize << n).collect();
    all.shuffle(rng);
    let mut types: Vec<usize> = all.into_iter().take(8).collect();
    types.sort_unstable();
    let goods = good_names(rng.gen_range(2..=3));
    let weights: Vec<u32> = types.iter().map(|_| rng.gen_range(1..=9)).collect();
    let prior = normalize(&weights);
    let name = |t: usize| format!("{t:0n$b}");
    let rows: Vec<TypeRow> = types
        .iter()
        .zip(&prior)
        .map(|(&t, p)| TypeRow::new(name(t), goods.choose(rng).expect("goods").clone(), p.clone()))
        .collect();
    let partitions = (0..n)
        .map(|k| {
            let bit = n - 1 - k;
            (0..2)
                .map(|b| types.iter().filter(|&&t| (t >> bit) & 1 == b).map(|&t| name(t)).collect::<Vec<_>>())
                .filter(|cell: &Vec<String>| !cell.is_empty())
                .collect()
        })
        .collect();
    build_spec(&rows, partitions, false)
}

fn finish(profile: InstanceProfile, seed: u64, mut spec: GameSpec, values: Vec<Q>) -> RandomInstance {
    spec.base_values = values;
    RandomInstance {
        profile,
        seed,
        game: spec,
    }
}

/// Deterministic in `(seed, profile)`.
pub fn random_instance(seed: u64, profile: InstanceProfile) -> Result<RandomInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match profile {
        InstanceProfile::JciNoA | InstanceProfile::JciA => {
            let spec = jci_spec(&mut rng, profile == InstanceProfile::JciA);
            let values = jci_values(&mut rng, &validate_game(&spec)?)?;
            Ok(finish(profile, seed, spec, values))
        }
        InstanceProfile::NojciS1 | InstanceProfile::NojciS2 | InstanceProfile::NojciMixed => {
            let spec = segmented_spec(&mut rng, profile);
            let values = segmented_values(&mut rng, &validate_game(&spec)?)?;
            Ok(finish(profile, seed, spec, values))
        }
        InstanceProfile::Nplayer => {
            let n = rng.gen_range(3..=4);
            random_nplayer_instance(seed, n)
        }
    }
}

/// Base values are the utilities of the best pure equilibrium.
pub fn random_nplayer_instance(seed: u64, n: usize) -> Result<RandomInstance> {
    if !(3..=8).contains(&n) {
        return Err(Error::RegimeViolated("n-seller instances need 3 to 8 sellers".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 56));
    let spec = nplayer_spec(&mut rng, n);
    let best = enumerate_pure_bne(&validate_game(&spec)?)?
        .into_iter()
        .next()
        .ok_or(Error::NoPureBne)?;
    Ok(finish(InstanceProfile::Nplayer, seed, spec, best.utilities))
}

/// Builds the construction that matches the instance's regime and verifies
/// it against the stored base values.
pub fn certify_instance(instance: &RandomInstance) -> Result<VerificationReport> {
    let game = instance.validated()?;
    let values = instance.values();
    let mediator = match instance.profile {
        InstanceProfile::JciNoA => mediator_no_amazon(&game, values)?,
        InstanceProfile::JciA => mediator_amazon(&game, values)?,
        InstanceProfile::NojciS1 | InstanceProfile::NojciS2 | InstanceProfile::NojciMixed => {
            mediator_m3(&game, values)?
        }
        InstanceProfile::Nplayer => {
            let best = enumerate_pure_bne(&game)?.into_iter().next().ok_or(Error::NoPureBne)?;
            mediator_nplayer(&game, &best.profile())?
        }
    };
    verify_mediator(&game, &mediator, values)
}

/// Guarantees the construction should meet on this instance; empty when
/// all hold.
pub fn instance_failures(instance: &RandomInstance, report: &VerificationReport) -> Vec<String> {
    let mut out = Vec::new();
    if !report.ic.is_equilibrium {
        out.push(format!("not IC (max gain {})", report.ic.max_gain));
    }
    if !report.ir() {
        out.push("not IR".to_string());
    }
    let values = instance.values();
    match instance.profile {
        InstanceProfile::JciNoA | InstanceProfile::Nplayer => {
            if !report.welfare.is_one() {
                out.push(format!("welfare {} != 1", report.welfare));
            }
        }
        InstanceProfile::JciA => {
            let top = values.iter().max().cloned().unwrap_or_else(Q::zero);
            let target = min_q(&q(2, 3), &(Q::one() - top)).clone();
            if report.welfare != target {
                out.push(format!("welfare {} != {}", report.welfare, target));
            }
        }
        InstanceProfile::NojciS1 => {
            if !report.ratio.is_one() {
                out.push(format!("ratio {} != 1", report.ratio));
            }
        }
        InstanceProfile::NojciS2 | InstanceProfile::NojciMixed => {
            if report.ratio < q(3, 4) {
                out.push(format!("ratio {} < 3/4", report.ratio));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub seed: u64,
    pub reasons: Vec<String>,
    pub instance: Option<RandomInstance>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub profile: InstanceProfile,
    pub total: usize,
    pub passed: usize,
    pub failures: Vec<SweepFailure>,
}

/// Generates and certifies one instance per seed in parallel; failures are
/// reported in seed order.
pub fn sweep(profile: InstanceProfile, seeds: std::ops::Range<u64>) -> SweepSummary {
    let outcomes: Vec<Option<SweepFailure>> = seeds
        .clone()
        .into_par_iter()
        .map(|seed| {
            let instance = match random_instance(seed, profile) {
                Ok(i) => i,
                Err(e) => {
                    return Some(SweepFailure {
                        seed,
                        reasons: vec![format!("generation failed: {e}")],
                        instance: None,
                    })
                }
            };
            let reasons = match certify_instance(&instance) {
                Ok(report) => instance_failures(&instance, &report),
                Err(e) => vec![e.to_string()],
            };
            (!reasons.is_empty()).then_some(SweepFailure {
                seed,
                reasons,
                instance: Some(instance),
            })
        })
        .collect();
    let total = outcomes.len();
    let failures: Vec<SweepFailure> = outcomes.into_iter().flatten().collect();
    SweepSummary {
        profile,
        total,
        passed: total - failures.len(),
        failures,
    }
}
