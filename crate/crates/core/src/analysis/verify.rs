//! Welfare benchmark and end-to-end certification of a mediator.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::engine::expected_utilities;
use crate::equilibrium::{check_bne, BneVerdict};
use crate::error::{Error, Result};
use crate::game::ValidatedGame;
use crate::mediators::{induced_game, MediatorSpec};
use crate::rational::{fmt_q, serde_q, serde_q_vec, Q};
use crate::segments::build_segments;

/// Welfare of one action tuple at one type: each correct regular player
/// gets `1 / (#correct + amazon)`.
fn tuple_welfare(actions: &[usize], desired: usize, amazon: bool) -> Q {
    let correct = actions.iter().filter(|&&g| g == desired).count();
    if correct == 0 {
        return Q::zero();
    }
    let total = correct + usize::from(amazon);
    Q::new(correct.into(), total.into())
}

/// Best welfare of any mediator, ignoring incentives: per segment, the best
/// deterministic action tuple.
///
/// Goods nobody in a segment desires are interchangeable, so candidates are
/// the desired goods plus one undesired good when one exists.
pub fn opt_benchmark(game: &ValidatedGame) -> Q {
    let n = game.num_players();
    let mut total = Q::zero();
    for seg in build_segments(game).segments {
        let live: Vec<usize> = seg.into_iter().filter(|&t| game.prior(t).is_positive()).collect();
        if live.is_empty() {
            continue;
        }
        let mut candidates: Vec<usize> = live.iter().map(|&t| game.desired(t)).collect();
        candidates.sort_unstable();
        candidates.dedup();
        if let Some(spare) = (0..game.num_goods()).find(|g| !candidates.contains(g)) {
            candidates.push(spare);
        }
        let mut best = Q::zero();
        let mut index = vec![0usize; n];
        loop {
            let actions: Vec<usize> = index.iter().map(|&k| candidates[k]).collect();
            let value: Q = live
                .iter()
                .map(|&t| game.prior(t) * tuple_welfare(&actions, game.desired(t), game.amazon()))
                .sum();
            if value > best {
                best = value;
            }
            // Odometer increment over candidate tuples.
            let mut pos = 0;
            while pos < n {
                index[pos] += 1;
                if index[pos] < candidates.len() {
                    break;
                }
                index[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
        total += best;
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub label: String,
    pub ic: BneVerdict,
    /// Obedient utilities after transfers.
    #[serde(with = "serde_q_vec")]
    pub utilities: Vec<Q>,
    #[serde(with = "serde_q_vec")]
    pub ir_slacks: Vec<Q>,
    #[serde(with = "serde_q")]
    pub welfare: Q,
    #[serde(with = "serde_q")]
    pub opt: Q,
    #[serde(with = "serde_q")]
    pub ratio: Q,
    pub fully_revealing_to: Vec<usize>,
}

impl VerificationReport {
    pub fn ir(&self) -> bool {
        self.ir_slacks.iter().all(|s| !s.is_negative())
    }

    pub fn certified(&self) -> bool {
        self.ic.is_equilibrium && self.ir()
    }
}

/// Players whose recommendation is the desired good at every
/// positive-probability type.
pub fn fully_revealing_to(game: &ValidatedGame, mediator: &MediatorSpec) -> Vec<usize> {
    (0..game.num_players())
        .filter(|&p| {
            game.support().all(|t| {
                mediator
                    .table
                    .get(&game.cell_tuple(t))
                    .is_some_and(|l| l.support().all(|rec| rec[p] == game.desired(t)))
            })
        })
        .collect()
}

pub fn verify_mediator(game: &ValidatedGame, mediator: &MediatorSpec, values: &[Q]) -> Result<VerificationReport> {
    if values.len() != game.num_players() {
        return Err(Error::BaseValueCount {
            expected: game.num_players(),
            found: values.len(),
        });
    }
    let induced = induced_game(game, mediator)?;
    let ic = check_bne(game, &induced.obedient, Some(mediator))?;
    let raw = expected_utilities(game, &induced.obedient, Some(mediator))?;
    let utilities: Vec<Q> = raw
        .iter()
        .zip(mediator.transfer_adjustments(game.num_players()))
        .map(|(u, t)| u + t)
        .collect();
    let ir_slacks = utilities.iter().zip(values).map(|(u, v)| u - v).collect();
    let welfare: Q = raw.iter().sum();
    let opt = opt_benchmark(game);
    let ratio = if opt.is_zero() { Q::one() } else { &welfare / &opt };
    Ok(VerificationReport {
        label: mediator.label.clone(),
        ic,
        utilities,
        ir_slacks,
        welfare,
        opt,
        ratio,
        fully_revealing_to: fully_revealing_to(game, mediator),
    })
}

/// Fixed-layout text rendering; players are numbered from 1.
pub fn render_report(report: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "mediator      {}", report.label);
    let _ = writeln!(
        out,
        "ic            {} (max gain {}{})",
        report.ic.is_equilibrium,
        fmt_q(&report.ic.max_gain),
        report
            .ic
            .worst_deviator
            .map(|p| format!(", player {}", p + 1))
            .unwrap_or_default()
    );
    let _ = writeln!(out, "ir            {}", report.ir());
    let _ = writeln!(out, "{:<6}{:>16}{:>16}", "player", "utility", "ir slack");
    for (k, (u, s)) in report.utilities.iter().zip(&report.ir_slacks).enumerate() {
        let _ = writeln!(out, "{:<6}{:>16}{:>16}", k + 1, fmt_q(u), fmt_q(s));
    }
    let _ = writeln!(out, "welfare       {}", fmt_q(&report.welfare));
    let _ = writeln!(out, "opt           {}", fmt_q(&report.opt));
    let _ = writeln!(out, "ratio         {}", fmt_q(&report.ratio));
    let revealing: Vec<String> = report.fully_revealing_to.iter().map(|p| (p + 1).to_string()).collect();
    let _ = writeln!(
        out,
        "revealing to  {}",
        if revealing.is_empty() { "-".to_string() } else { revealing.join(",") }
    );
    out
}
