//! Exact expected utilities.
//!
//! A play is evaluated state by state, where a state is a realized type
//! together with the mediator's recommendation tuple. Within a state the
//! players randomize independently, so each player's payoff is the
//! probability of offering the desired good times the expected share
//! `1 / (1 + #other correct offers + amazon)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::game::ValidatedGame;
use crate::mediators::MediatorSpec;
use crate::rational::Q;
use crate::strategy::{InfoSet, Strategy};

/// How one regular player acts in an evaluation.
#[derive(Debug, Clone, Copy)]
pub enum Play<'a> {
    Follow(&'a Strategy),
    /// A type-measurable pure action, e.g. always the desired good.
    ByType(&'a [usize]),
    /// Never offers the desired good. Stands in for the player whose best
    /// response is being computed.
    Absent,
}

#[derive(Debug, Clone)]
pub(crate) struct State {
    pub ty: usize,
    pub message: Option<Vec<usize>>,
    pub prob: Q,
}

impl State {
    pub fn info(&self, game: &ValidatedGame, player: usize) -> InfoSet {
        InfoSet {
            cell: game.partition(player).cell_of[self.ty],
            message: self.message.as_ref().map(|m| m[player]),
        }
    }
}

/// All positive-probability states of the (possibly mediated) game.
pub(crate) fn states(game: &ValidatedGame, mediator: Option<&MediatorSpec>) -> Result<Vec<State>> {
    let mut out = Vec::new();
    for ty in game.support() {
        let prior = game.prior(ty);
        match mediator {
            None => out.push(State {
                ty,
                message: None,
                prob: prior.clone(),
            }),
            Some(m) => {
                let key = game.cell_tuple(ty);
                let lottery = m.table.get(&key).ok_or_else(|| Error::MissingCell(key.clone()))?;
                for (rec, w) in lottery.iter() {
                    if rec.len() != game.num_players() || rec.iter().any(|&g| g >= game.num_goods()) {
                        return Err(Error::InvalidMediator {
                            cells: key.clone(),
                            reason: format!("recommendation {rec:?} is not a tuple of goods"),
                        });
                    }
                    out.push(State {
                        ty,
                        message: Some(rec.clone()),
                        prob: prior * w,
                    });
                }
            }
        }
    }
    Ok(out)
}

fn check_players(game: &ValidatedGame, found: usize) -> Result<()> {
    if found != game.num_players() {
        return Err(Error::PlayerCountMismatch {
            expected: game.num_players(),
            found,
        });
    }
    Ok(())
}

/// Probability that `player` offers the desired good in `state`.
fn correct_prob(game: &ValidatedGame, play: &Play<'_>, player: usize, state: &State) -> Result<Q> {
    let target = game.desired(state.ty);
    Ok(match play {
        Play::ByType(goods) => {
            if goods[state.ty] == target {
                Q::one()
            } else {
                Q::zero()
            }
        }
        Play::Follow(strategy) => strategy.lookup(player, &state.info(game, player))?.prob(&target),
        Play::Absent => Q::zero(),
    })
}

/// Expected share of a correct offer for `player`, given the other
/// players' independent probabilities of being correct.
pub(crate) fn share(correct: &[Q], player: usize, amazon: bool) -> Q {
    // dist[k] = P(exactly k other players are correct)
    let mut dist = vec![Q::one()];
    for (k, p) in correct.iter().enumerate() {
        if k == player || p.is_zero() {
            continue;
        }
        let q = Q::one() - p;
        let mut next = vec![Q::zero(); dist.len() + 1];
        for (c, w) in dist.iter().enumerate() {
            if !q.is_zero() {
                next[c] += w * &q;
            }
            next[c + 1] += w * p;
        }
        dist = next;
    }
    let base = 1 + usize::from(amazon);
    dist.iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(c, w)| w / Q::from_integer((base + c).into()))
        .sum()
}

/// Per-state probabilities of a correct offer, one row per state.
pub(crate) fn correct_table(game: &ValidatedGame, plays: &[Play<'_>], states: &[State]) -> Result<Vec<Vec<Q>>> {
    check_players(game, plays.len())?;
    states
        .iter()
        .map(|s| {
            plays
                .iter()
                .enumerate()
                .map(|(p, play)| correct_prob(game, play, p, s))
                .collect()
        })
        .collect()
}

/// Ex-ante utilities of the regular players, before any transfer.
pub fn utilities_of_plays(
    game: &ValidatedGame,
    plays: &[Play<'_>],
    mediator: Option<&MediatorSpec>,
) -> Result<Vec<Q>> {
    let states = states(game, mediator)?;
    let table = correct_table(game, plays, &states)?;
    let mut utils = vec![Q::zero(); plays.len()];
    for (s, row) in states.iter().zip(&table) {
        for (i, u) in utils.iter_mut().enumerate() {
            if !row[i].is_zero() {
                *u += &s.prob * &row[i] * share(row, i, game.amazon());
            }
        }
    }
    Ok(utils)
}

/// Ex-ante utilities under a strategy profile, before any transfer.
pub fn expected_utilities(
    game: &ValidatedGame,
    profile: &[Strategy],
    mediator: Option<&MediatorSpec>,
) -> Result<Vec<Q>> {
    let plays: Vec<Play<'_>> = profile.iter().map(Play::Follow).collect();
    utilities_of_plays(game, &plays, mediator)
}

/// Utilities conditional on each type, indexed `[type][player]`. Types with
/// zero prior get the utilities they would receive if realized.
pub fn type_utilities(
    game: &ValidatedGame,
    profile: &[Strategy],
    mediator: Option<&MediatorSpec>,
) -> Result<Vec<Vec<Q>>> {
    let n = game.num_players();
    let plays: Vec<Play<'_>> = profile.iter().map(Play::Follow).collect();
    check_players(game, plays.len())?;
    let mut out = vec![vec![Q::zero(); n]; game.num_types()];
    for ty in 0..game.num_types() {
        let messages: Vec<(Option<Vec<usize>>, Q)> = match mediator {
            None => vec![(None, Q::one())],
            Some(m) => {
                let key = game.cell_tuple(ty);
                let lottery = m.table.get(&key).ok_or(Error::MissingCell(key))?;
                lottery.iter().map(|(r, w)| (Some(r.clone()), w.clone())).collect()
            }
        };
        for (message, w) in messages {
            let state = State {
                ty,
                message,
                prob: w,
            };
            let row: Vec<Q> = plays
                .iter()
                .enumerate()
                .map(|(p, play)| correct_prob(game, play, p, &state))
                .collect::<Result<_>>()?;
            for i in 0..n {
                if !row[i].is_zero() {
                    out[ty][i] += &state.prob * &row[i] * share(&row, i, game.amazon());
                }
            }
        }
    }
    Ok(out)
}

/// Conditional-on-information-set view of one player's decision problem.
#[derive(Debug, Clone)]
pub(crate) struct InterimRow {
    /// Unconditional probability of the information set.
    pub mass: Q,
    /// Unconditional expected payoff contribution of each good.
    pub values: Vec<Q>,
    /// Unconditional contribution of the player's current play, if known.
    pub current: Q,
}

/// Interim rows for `player`; `plays[player]` only affects `current`.
pub(crate) fn interim_rows(
    game: &ValidatedGame,
    plays: &[Play<'_>],
    player: usize,
    mediator: Option<&MediatorSpec>,
) -> Result<BTreeMap<InfoSet, InterimRow>> {
    let states = states(game, mediator)?;
    let table = correct_table(game, plays, &states)?;
    let mut rows: BTreeMap<InfoSet, InterimRow> = BTreeMap::new();
    for (s, row) in states.iter().zip(&table) {
        let info = s.info(game, player);
        let entry = rows.entry(info).or_insert_with(|| InterimRow {
            mass: Q::zero(),
            values: vec![Q::zero(); game.num_goods()],
            current: Q::zero(),
        });
        entry.mass += &s.prob;
        let gain = &s.prob * share(row, player, game.amazon());
        if !row[player].is_zero() {
            entry.current += &gain * &row[player];
        }
        entry.values[game.desired(s.ty)] += gain;
    }
    Ok(rows)
}

/// Messages each player can receive from `mediator`, grouped by cell.
pub(crate) fn reachable_messages(game: &ValidatedGame, mediator: &MediatorSpec, player: usize) -> Vec<InfoSet> {
    let mut out: Vec<InfoSet> = mediator
        .table
        .iter()
        .flat_map(|(cells, lottery)| {
            lottery
                .support()
                .filter(|rec| rec.len() == game.num_players())
                .map(|rec| InfoSet::with_message(cells[player], rec[player]))
                .collect::<Vec<_>>()
        })
        .filter(|info| info.cell < game.partition(player).num_cells())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Welfare of a recommendation lottery: the sum of utilities.
pub fn welfare(utilities: &[Q]) -> Q {
    utilities.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{validate_game, GameSpec};
    use crate::rational::q;

    fn intro(amazon: bool) -> ValidatedGame {
        let spec = GameSpec {
            types: ["00", "01", "10", "11"].iter().map(|s| s.to_string()).collect(),
            goods: vec!["g0".into(), "g1".into()],
            desired: [("00", "g0"), ("01", "g1"), ("10", "g1"), ("11", "g0")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            prior: [("00", q(11, 20)), ("01", q(5, 20)), ("10", q(3, 20)), ("11", q(1, 20))]
                .into_iter()
                .map(|(a, p)| (a.to_string(), p))
                .collect(),
            partitions: vec![
                vec![vec!["00".into(), "01".into()], vec!["10".into(), "11".into()]],
                vec![vec!["00".into(), "10".into()], vec!["01".into(), "11".into()]],
            ],
            amazon,
            base_values: vec![],
        };
        validate_game(&spec).unwrap()
    }

    fn dominant() -> Vec<Strategy> {
        vec![Strategy::pure_by_cell(&[0, 1]), Strategy::pure_by_cell(&[0, 1])]
    }

    #[test]
    fn intro_dominant_profile_without_amazon() {
        let u = expected_utilities(&intro(false), &dominant(), None).unwrap();
        assert_eq!(u, vec![q(17, 40), q(21, 40)]);
    }

    #[test]
    fn intro_dominant_profile_with_amazon() {
        let u = expected_utilities(&intro(true), &dominant(), None).unwrap();
        assert_eq!(u, vec![q(31, 120), q(37, 120)]);
    }

    #[test]
    fn always_correct_pair_splits_evenly() {
        let game = intro(false);
        let desired = game.desired_all().to_vec();
        let u = utilities_of_plays(&game, &[Play::ByType(&desired), Play::ByType(&desired)], None).unwrap();
        assert_eq!(u, vec![q(1, 2), q(1, 2)]);
    }

    #[test]
    fn share_matches_hand_computation() {
        // Two others correct with probability 1/2 each, with an amazon:
        // 1/4 * 1/2 + 1/2 * 1/3 + 1/4 * 1/4.
        let s = share(&[q(1, 2), q(1, 2), q(1, 2)], 0, true);
        assert_eq!(s, q(1, 8) + q(1, 6) + q(1, 16));
    }

    #[test]
    fn missing_strategy_entry_is_reported() {
        let profile = vec![Strategy::pure_by_cell(&[0]), Strategy::pure_by_cell(&[0, 1])];
        assert!(matches!(
            expected_utilities(&intro(false), &profile, None),
            Err(Error::ProfileIncomplete { player: 0, cell: 1, .. })
        ));
        assert!(matches!(
            expected_utilities(&intro(false), &profile[..1], None),
            Err(Error::PlayerCountMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn type_utilities_average_to_expected() {
        let game = intro(true);
        let per_type = type_utilities(&game, &dominant(), None).unwrap();
        let u = expected_utilities(&game, &dominant(), None).unwrap();
        for i in 0..2 {
            let avg: Q = (0..4).map(|t| game.prior(t) * &per_type[t][i]).sum();
            assert_eq!(avg, u[i]);
        }
    }
}
