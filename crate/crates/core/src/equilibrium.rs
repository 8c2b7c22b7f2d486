//! Best responses, equilibrium certification, the benchmark response of an
//! uninformed rival, and pure-strategy equilibrium search.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{expected_utilities, interim_rows, reachable_messages, utilities_of_plays, Play};
use crate::error::{Error, Result};
use crate::game::ValidatedGame;
use crate::mediators::MediatorSpec;
use crate::rational::{serde_q, Lottery, Q};
use crate::segments::{SegmentClass, SegmentStats};
use crate::strategy::{InfoSet, Strategy, StrategyProfile};

/// Environment variable overriding the pure-equilibrium enumeration budget.
pub const BUDGET_ENV: &str = "DATASHARE_BNE_BUDGET";
pub const DEFAULT_BUDGET: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BneVerdict {
    pub is_equilibrium: bool,
    pub worst_deviator: Option<usize>,
    /// Largest interim gain from a unilateral deviation.
    #[serde(with = "serde_q")]
    pub max_gain: Q,
}

fn argmax_lowest(values: &[Q]) -> usize {
    crate::segments::argmax(values, None)
}

/// Best response of `player` when the others act per `plays`
/// (`plays[player]` is ignored). Returns the strategy and its ex-ante value.
pub fn best_response_to(
    game: &ValidatedGame,
    plays: &[Play<'_>],
    player: usize,
    mediator: Option<&MediatorSpec>,
) -> Result<(Strategy, Q)> {
    let rows = interim_rows(game, plays, player, mediator)?;
    let fallback = argmax_lowest(&game.good_mass());
    let mut strategy = Strategy::new();
    for cell in 0..game.partition(player).num_cells() {
        strategy.set(InfoSet::cell(cell), Lottery::certain(fallback));
    }
    if let Some(m) = mediator {
        for info in reachable_messages(game, m, player) {
            strategy.set(info, Lottery::certain(fallback));
        }
    }
    let mut value = Q::zero();
    for (info, row) in &rows {
        let best = argmax_lowest(&row.values);
        value += &row.values[best];
        strategy.set(*info, Lottery::certain(best));
    }
    Ok((strategy, value))
}

pub fn best_response(
    game: &ValidatedGame,
    profile: &[Strategy],
    player: usize,
    mediator: Option<&MediatorSpec>,
) -> Result<(Strategy, Q)> {
    let plays: Vec<Play<'_>> = profile.iter().map(Play::Follow).collect();
    best_response_to(game, &plays, player, mediator)
}

/// Conditional expected payoff of each good at one information set.
pub fn interim_values(
    game: &ValidatedGame,
    profile: &[Strategy],
    player: usize,
    info: InfoSet,
    mediator: Option<&MediatorSpec>,
) -> Result<Vec<Q>> {
    let plays: Vec<Play<'_>> = profile.iter().map(Play::Follow).collect();
    let rows = interim_rows(game, &plays, player, mediator)?;
    let row = rows.get(&info).ok_or(Error::UnreachableInformationSet {
        player,
        cell: info.cell,
        message: info.message,
    })?;
    Ok(row.values.iter().map(|v| v / &row.mass).collect())
}

pub fn check_bne(game: &ValidatedGame, profile: &[Strategy], mediator: Option<&MediatorSpec>) -> Result<BneVerdict> {
    let plays: Vec<Play<'_>> = profile.iter().map(Play::Follow).collect();
    check_plays(game, &plays, mediator)
}

fn check_plays(game: &ValidatedGame, plays: &[Play<'_>], mediator: Option<&MediatorSpec>) -> Result<BneVerdict> {
    let mut max_gain = Q::zero();
    let mut worst = None;
    for player in 0..game.num_players() {
        for row in interim_rows(game, plays, player, mediator)?.values() {
            let best = &row.values[argmax_lowest(&row.values)];
            let gain = (best - &row.current) / &row.mass;
            if gain > max_gain {
                max_gain = gain;
                worst = Some(player);
            }
        }
    }
    Ok(BneVerdict {
        is_equilibrium: max_gain.is_zero(),
        worst_deviator: worst,
        max_gain,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NaiveVariant {
    /// Rival always offers the desired good; requires jointly complete
    /// information.
    Jci,
    /// Rival offers the top good of each segment.
    NoJci,
    /// As `NoJci`, conditional on the segments where the top good is more
    /// than 3/2 times as likely as the runner-up.
    NoJciDominant,
}

/// The responder's best reply to an informed rival, with the values that
/// parameterize the mixing mediators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaiveBestResponse {
    pub variant: NaiveVariant,
    pub informed: usize,
    pub responder: usize,
    pub strategy: Strategy,
    /// Probability of a correct offer under `Jci`; expected utility otherwise.
    #[serde(with = "serde_q")]
    pub alpha_j: Q,
    /// Expected utility of the informed player in the hypothetical.
    #[serde(with = "serde_q")]
    pub alpha_i: Q,
    #[serde(with = "serde_q")]
    pub utility_j: Q,
    #[serde(with = "serde_q")]
    pub utility_i: Q,
}

pub fn naive_best_response(game: &ValidatedGame, informed: usize, variant: NaiveVariant) -> Result<NaiveBestResponse> {
    let mismatch = |reason: &str| Error::VariantMismatch {
        variant: format!("{variant:?}"),
        reason: reason.to_string(),
    };
    if game.num_players() != 2 || informed > 1 {
        return Err(mismatch("defined for two regular players"));
    }
    let responder = 1 - informed;
    let stats = SegmentStats::of(game);
    let conditioned;
    let (game, stats) = match variant {
        NaiveVariant::Jci => {
            if !stats.table.jointly_complete {
                return Err(mismatch("information is not jointly complete"));
            }
            (game, stats)
        }
        NaiveVariant::NoJci => (game, stats),
        NaiveVariant::NoJciDominant => {
            let types = stats.types_in(SegmentClass::Dominant);
            conditioned = game
                .condition_on(&types)
                .ok_or_else(|| mismatch("dominant-top segments have zero probability"))?;
            let stats = SegmentStats::of(&conditioned);
            (&conditioned, stats)
        }
    };
    let rival_goods: Vec<usize> = match variant {
        NaiveVariant::Jci => game.desired_all().to_vec(),
        _ => (0..game.num_types()).map(|t| stats.top_good_of(t)).collect(),
    };
    let mut plays = vec![Play::Absent; 2];
    plays[informed] = Play::ByType(&rival_goods);
    let (strategy, _) = best_response_to(game, &plays, responder, None)?;
    plays[responder] = Play::Follow(&strategy);
    let utils = utilities_of_plays(game, &plays, None)?;
    let alpha_j = match variant {
        NaiveVariant::Jci => game
            .support()
            .filter(|&t| strategy.pure_action(&InfoSet::cell(game.partition(responder).cell_of[t])) == Some(game.desired(t)))
            .map(|t| game.prior(t))
            .sum(),
        _ => utils[responder].clone(),
    };
    Ok(NaiveBestResponse {
        variant,
        informed,
        responder,
        strategy,
        alpha_j,
        alpha_i: utils[informed].clone(),
        utility_j: utils[responder].clone(),
        utility_i: utils[informed].clone(),
    })
}

/// A pure, cell-measurable profile: `actions[player][cell]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PureBne {
    pub actions: Vec<Vec<usize>>,
    #[serde(with = "crate::rational::serde_q_vec")]
    pub utilities: Vec<Q>,
    #[serde(with = "serde_q")]
    pub welfare: Q,
}

impl PureBne {
    pub fn profile(&self) -> StrategyProfile {
        self.actions.iter().map(|a| Strategy::pure_by_cell(a)).collect()
    }
}

fn pure_profile(actions: &[Vec<usize>]) -> StrategyProfile {
    actions.iter().map(|a| Strategy::pure_by_cell(a)).collect()
}

pub fn enumeration_budget() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// All pure-strategy equilibria of the unmediated game, by welfare
/// (descending) and then by profile order.
pub fn enumerate_pure_bne(game: &ValidatedGame) -> Result<Vec<PureBne>> {
    enumerate_pure_bne_within(game, enumeration_budget())
}

pub fn enumerate_pure_bne_within(game: &ValidatedGame, budget: u64) -> Result<Vec<PureBne>> {
    let goods = game.num_goods();
    let slots: Vec<(usize, usize)> = (0..game.num_players())
        .flat_map(|p| (0..game.partition(p).num_cells()).map(move |c| (p, c)))
        .collect();
    let total = BigUint::from(goods).pow(slots.len() as u32);
    let count = match total.to_u64() {
        Some(c) if c <= budget => c,
        _ => {
            return Err(Error::BudgetExceeded {
                needed: total.to_string(),
                budget,
            })
        }
    };
    let decode = |mut index: u64| -> Vec<Vec<usize>> {
        let mut actions: Vec<Vec<usize>> = (0..game.num_players())
            .map(|p| vec![0; game.partition(p).num_cells()])
            .collect();
        for &(p, c) in slots.iter().rev() {
            actions[p][c] = (index % goods as u64) as usize;
            index /= goods as u64;
        }
        actions
    };
    let found: Vec<Result<Option<PureBne>>> = (0..count)
        .into_par_iter()
        .map(|index| {
            let actions = decode(index);
            let profile = pure_profile(&actions);
            if !check_bne(game, &profile, None)?.is_equilibrium {
                return Ok(None);
            }
            let utilities = expected_utilities(game, &profile, None)?;
            let welfare = utilities.iter().sum();
            Ok(Some(PureBne {
                actions,
                utilities,
                welfare,
            }))
        })
        .collect();
    let mut out = Vec::new();
    for item in found {
        if let Some(bne) = item? {
            out.push(bne);
        }
    }
    // Stable sort keeps profile order among equal welfare.
    out.sort_by(|a, b| b.welfare.cmp(&a.welfare));
    Ok(out)
}

/// A pure equilibrium found by better-response dynamics.
///
/// The ex-ante game is a congestion game over (type, good) resources, so
/// strict improvements cannot cycle and the dynamics terminate.
pub fn pure_bne_by_dynamics(game: &ValidatedGame) -> Result<PureBne> {
    const MAX_STEPS: usize = 100_000;
    let mut actions: Vec<Vec<usize>> = (0..game.num_players())
        .map(|p| {
            game.partition(p)
                .cells
                .iter()
                .map(|cell| {
                    let mut mass = vec![Q::zero(); game.num_goods()];
                    for &t in cell {
                        mass[game.desired(t)] += game.prior(t);
                    }
                    argmax_lowest(&mass)
                })
                .collect()
        })
        .collect();
    for _ in 0..MAX_STEPS {
        let profile = pure_profile(&actions);
        let plays: Vec<Play<'_>> = profile.iter().map(Play::Follow).collect();
        let mut improved = false;
        'players: for player in 0..game.num_players() {
            for (info, row) in interim_rows(game, &plays, player, None)? {
                let best = argmax_lowest(&row.values);
                if row.values[best] > row.current {
                    actions[player][info.cell] = best;
                    improved = true;
                    break 'players;
                }
            }
        }
        if !improved {
            let utilities = expected_utilities(game, &profile, None)?;
            let welfare = utilities.iter().sum();
            return Ok(PureBne {
                actions,
                utilities,
                welfare,
            });
        }
    }
    Err(Error::NoPureBne)
}
