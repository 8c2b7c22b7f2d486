//! Segments (the finest jointly available information) and their top-two
//! good statistics.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::game::ValidatedGame;
use crate::rational::{serde_q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentTable {
    /// Types in each segment, ordered by their smallest member.
    pub segments: Vec<Vec<usize>>,
    pub membership: Vec<usize>,
    /// Cell tuple shared by the types of each segment.
    pub cells: Vec<Vec<usize>>,
    pub jointly_complete: bool,
}

pub fn build_segments(game: &ValidatedGame) -> SegmentTable {
    let mut by_cells: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut segments: Vec<Vec<usize>> = Vec::new();
    let mut cells = Vec::new();
    let mut membership = vec![0; game.num_types()];
    for ty in 0..game.num_types() {
        let key = game.cell_tuple(ty);
        let idx = *by_cells.entry(key.clone()).or_insert_with(|| {
            segments.push(Vec::new());
            cells.push(key);
            segments.len() - 1
        });
        segments[idx].push(ty);
        membership[ty] = idx;
    }
    let jointly_complete = segments.iter().all(|s| s.len() == 1);
    SegmentTable {
        segments,
        membership,
        cells,
        jointly_complete,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SegmentClass {
    /// Top good at most 3/2 times as likely as the runner-up.
    Balanced,
    /// Top good more than 3/2 times as likely as the runner-up.
    Dominant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentInfo {
    pub types: Vec<usize>,
    #[serde(with = "serde_q")]
    pub prob: Q,
    pub top_good: usize,
    pub second_good: Option<usize>,
    #[serde(with = "serde_q")]
    pub top_weight: Q,
    #[serde(with = "serde_q")]
    pub second_weight: Q,
    pub class: SegmentClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentStats {
    pub table: SegmentTable,
    pub segments: Vec<SegmentInfo>,
    #[serde(with = "serde_q")]
    pub top_total: Q,
    #[serde(with = "serde_q")]
    pub second_total: Q,
    #[serde(with = "serde_q")]
    pub balanced_mass: Q,
    #[serde(with = "serde_q")]
    pub dominant_mass: Q,
    /// Top and second weights conditional on the balanced class.
    #[serde(with = "serde_q")]
    pub balanced_top: Q,
    #[serde(with = "serde_q")]
    pub balanced_second: Q,
    /// Top and second weights conditional on the dominant class.
    #[serde(with = "serde_q")]
    pub dominant_top: Q,
    #[serde(with = "serde_q")]
    pub dominant_second: Q,
}

fn classify(top: &Q, second: &Q) -> SegmentClass {
    if top * Q::from_integer(2.into()) <= second * Q::from_integer(3.into()) {
        SegmentClass::Balanced
    } else {
        SegmentClass::Dominant
    }
}

pub fn segment_stats(table: &SegmentTable, game: &ValidatedGame) -> SegmentStats {
    let goods = game.num_goods();
    let mut infos = Vec::with_capacity(table.segments.len());
    for seg in &table.segments {
        let prob: Q = seg.iter().map(|&t| game.prior(t)).sum();
        let mut weight = vec![Q::zero(); goods];
        if prob.is_positive() {
            for &t in seg {
                weight[game.desired(t)] += game.prior(t) / &prob;
            }
        }
        // Argmax with the lowest index winning ties; a zero-probability
        // segment falls back to the desired good of its first type.
        let top_good = if prob.is_positive() {
            argmax(&weight, None)
        } else {
            game.desired(seg[0])
        };
        let second_good = (goods > 1).then(|| argmax(&weight, Some(top_good)));
        let top_weight = weight[top_good].clone();
        let second_weight = second_good.map(|g| weight[g].clone()).unwrap_or_default();
        let class = classify(&top_weight, &second_weight);
        infos.push(SegmentInfo {
            types: seg.clone(),
            prob,
            top_good,
            second_good,
            top_weight,
            second_weight,
            class,
        });
    }

    let mut top_total = Q::zero();
    let mut second_total = Q::zero();
    let mut mass = [Q::zero(), Q::zero()];
    let mut top_by = [Q::zero(), Q::zero()];
    let mut second_by = [Q::zero(), Q::zero()];
    for info in &infos {
        let k = match info.class {
            SegmentClass::Balanced => 0,
            SegmentClass::Dominant => 1,
        };
        top_total += &info.top_weight * &info.prob;
        second_total += &info.second_weight * &info.prob;
        mass[k] += &info.prob;
        top_by[k] += &info.top_weight * &info.prob;
        second_by[k] += &info.second_weight * &info.prob;
    }
    let cond = |x: &Q, m: &Q| if m.is_positive() { x / m } else { Q::zero() };
    SegmentStats {
        table: table.clone(),
        balanced_top: cond(&top_by[0], &mass[0]),
        balanced_second: cond(&second_by[0], &mass[0]),
        dominant_top: cond(&top_by[1], &mass[1]),
        dominant_second: cond(&second_by[1], &mass[1]),
        balanced_mass: mass[0].clone(),
        dominant_mass: mass[1].clone(),
        segments: infos,
        top_total,
        second_total,
    }
}

/// Index of the largest weight, lowest index on ties, skipping `exclude`.
pub(crate) fn argmax(weights: &[Q], exclude: Option<usize>) -> usize {
    let mut best: Option<usize> = None;
    for (g, w) in weights.iter().enumerate() {
        if Some(g) == exclude {
            continue;
        }
        match best {
            Some(b) if weights[b] >= *w => {}
            _ => best = Some(g),
        }
    }
    best.expect("at least one candidate")
}

impl SegmentStats {
    pub fn of(game: &ValidatedGame) -> Self {
        segment_stats(&build_segments(game), game)
    }

    /// The top good of the segment containing `ty`.
    pub fn top_good_of(&self, ty: usize) -> usize {
        self.segments[self.table.membership[ty]].top_good
    }

    pub fn info_of(&self, ty: usize) -> &SegmentInfo {
        &self.segments[self.table.membership[ty]]
    }

    /// Segments with positive probability.
    pub fn live(&self) -> impl Iterator<Item = (usize, &SegmentInfo)> {
        self.segments.iter().enumerate().filter(|(_, s)| s.prob.is_positive())
    }

    /// Types lying in segments of the given class.
    pub fn types_in(&self, class: SegmentClass) -> Vec<usize> {
        let mut types: Vec<usize> = self
            .segments
            .iter()
            .filter(|s| s.class == class)
            .flat_map(|s| s.types.iter().copied())
            .collect();
        types.sort_unstable();
        types
    }
}
