//! Mediators as explicit recommendation tables, and the games they induce.

mod jci;
mod nplayer;
mod segmented;
mod transfer;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::ValidatedGame;
use crate::rational::{fmt_q, serde_q, Lottery, Q};
use crate::segments::build_segments;
use crate::strategy::{InfoSet, Strategy, StrategyProfile};

pub use jci::{amazon_threshold, mediator_amazon, mediator_no_amazon, no_amazon_threshold};
pub use nplayer::{full_revelation, mediator_nplayer, reveal_on_miss};
pub use segmented::{
    m1_top_role_probability, m1_violations, m2_pooling_probability, m2_violations, m3_violations,
    mediator_m1, mediator_m2, mediator_m3,
};
pub use transfer::transfer_mediator;

/// A side payment made when both players opt in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transfer {
    pub payer: usize,
    pub payee: usize,
    #[serde(with = "serde_q")]
    pub amount: Q,
}

/// For every joint cell (one cell index per regular player), a lottery
/// over recommendation tuples (one good index per regular player).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MediatorFile", into = "MediatorFile")]
pub struct MediatorSpec {
    pub label: String,
    pub table: BTreeMap<Vec<usize>, Lottery<Vec<usize>>>,
    pub transfer: Option<Transfer>,
}

#[derive(Serialize, Deserialize)]
struct MediatorFile {
    label: String,
    table: Vec<CellEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    transfer: Option<Transfer>,
}

#[derive(Serialize, Deserialize)]
struct CellEntry {
    cells: Vec<usize>,
    outcomes: Vec<Outcome>,
}

#[derive(Serialize, Deserialize)]
struct Outcome {
    recommendation: Vec<usize>,
    #[serde(with = "serde_q")]
    prob: Q,
}

impl From<MediatorSpec> for MediatorFile {
    fn from(m: MediatorSpec) -> Self {
        MediatorFile {
            label: m.label,
            table: m
                .table
                .into_iter()
                .map(|(cells, lottery)| CellEntry {
                    cells,
                    outcomes: lottery
                        .iter()
                        .map(|(r, p)| Outcome {
                            recommendation: r.clone(),
                            prob: p.clone(),
                        })
                        .collect(),
                })
                .collect(),
            transfer: m.transfer,
        }
    }
}

impl TryFrom<MediatorFile> for MediatorSpec {
    type Error = Error;

    fn try_from(file: MediatorFile) -> Result<Self> {
        let mut table = BTreeMap::new();
        for entry in file.table {
            let lottery = Lottery::from_weights(entry.outcomes.into_iter().map(|o| (o.recommendation, o.prob)));
            lottery.validate().map_err(|reason| Error::InvalidMediator {
                cells: entry.cells.clone(),
                reason,
            })?;
            if table.insert(entry.cells.clone(), lottery).is_some() {
                return Err(Error::InvalidMediator {
                    cells: entry.cells,
                    reason: "duplicate joint cell".into(),
                });
            }
        }
        if let Some(t) = &file.transfer {
            if t.amount.is_negative() {
                return Err(Error::InvalidMediator {
                    cells: vec![],
                    reason: format!("negative transfer {}", fmt_q(&t.amount)),
                });
            }
        }
        Ok(MediatorSpec {
            label: file.label,
            table,
            transfer: file.transfer,
        })
    }
}

impl MediatorSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("mediator serializes")
    }

    /// Checks the table against a game: every positive-probability joint
    /// cell is covered and every recommendation names goods of the game.
    pub fn validate_for(&self, game: &ValidatedGame) -> Result<()> {
        for ty in game.support() {
            let key = game.cell_tuple(ty);
            if !self.table.contains_key(&key) {
                return Err(Error::MissingCell(key));
            }
        }
        for (cells, lottery) in &self.table {
            lottery.validate().map_err(|reason| Error::InvalidMediator {
                cells: cells.clone(),
                reason,
            })?;
            for rec in lottery.support() {
                if rec.len() != game.num_players() || rec.iter().any(|&g| g >= game.num_goods()) {
                    return Err(Error::InvalidMediator {
                        cells: cells.clone(),
                        reason: format!("recommendation {rec:?} is not a tuple of goods"),
                    });
                }
            }
        }
        if let Some(t) = &self.transfer {
            if t.amount.is_negative() || t.payer >= game.num_players() || t.payee >= game.num_players() {
                return Err(Error::InvalidMediator {
                    cells: vec![],
                    reason: "malformed transfer".into(),
                });
            }
        }
        Ok(())
    }

    /// Net monetary position of each player under the transfer.
    pub fn transfer_adjustments(&self, players: usize) -> Vec<Q> {
        let mut adj = vec![Q::zero(); players];
        if let Some(t) = &self.transfer {
            adj[t.payee] += &t.amount;
            adj[t.payer] -= &t.amount;
        }
        adj
    }
}

/// The game played when everyone opts into a mediator.
#[derive(Debug, Clone)]
pub struct MediatedGame {
    pub game: ValidatedGame,
    pub mediator: MediatorSpec,
    /// Positive-probability information sets of each player, with their
    /// probabilities.
    pub info_sets: Vec<BTreeMap<InfoSet, Q>>,
    pub obedient: StrategyProfile,
}

pub fn induced_game(game: &ValidatedGame, mediator: &MediatorSpec) -> Result<MediatedGame> {
    mediator.validate_for(game)?;
    let n = game.num_players();
    let mut info_sets = vec![BTreeMap::new(); n];
    for ty in game.support() {
        let key = game.cell_tuple(ty);
        for (rec, w) in mediator.table[&key].iter() {
            for p in 0..n {
                let info = InfoSet::with_message(key[p], rec[p]);
                *info_sets[p].entry(info).or_insert_with(Q::zero) += game.prior(ty) * w;
            }
        }
    }
    Ok(MediatedGame {
        game: game.clone(),
        mediator: mediator.clone(),
        info_sets,
        obedient: obedient_profile(game, mediator),
    })
}

/// Every player plays exactly the recommended good.
pub fn obedient_profile(game: &ValidatedGame, mediator: &MediatorSpec) -> StrategyProfile {
    (0..game.num_players())
        .map(|p| {
            let mut s = Strategy::new();
            let infos: BTreeSet<InfoSet> = mediator
                .table
                .iter()
                .flat_map(|(cells, lottery)| lottery.support().map(move |rec| InfoSet::with_message(cells[p], rec[p])))
                .collect();
            for info in infos {
                s.set(info, Lottery::certain(info.message.expect("mediated")));
            }
            s
        })
        .collect()
}

/// Joint cells that occur for some type, in segment order.
pub(crate) fn joint_cells(game: &ValidatedGame) -> Vec<(Vec<usize>, Vec<usize>)> {
    let table = build_segments(game);
    table.cells.into_iter().zip(table.segments).collect()
}

/// Sends the same message to everyone, conveying nothing.
pub fn null_mediator(game: &ValidatedGame) -> MediatorSpec {
    let rec = vec![0; game.num_players()];
    MediatorSpec {
        label: "null".into(),
        table: joint_cells(game)
            .into_iter()
            .map(|(cells, _)| (cells, Lottery::certain(rec.clone())))
            .collect(),
        transfer: None,
    }
}

/// Recommends the actions of a cell-measurable profile, and nothing more.
pub fn profile_mediator(game: &ValidatedGame, profile: &[Strategy]) -> Result<MediatorSpec> {
    if profile.len() != game.num_players() {
        return Err(Error::PlayerCountMismatch {
            expected: game.num_players(),
            found: profile.len(),
        });
    }
    let mut table = BTreeMap::new();
    for (cells, _) in joint_cells(game) {
        let parts: Vec<Lottery<usize>> = profile
            .iter()
            .enumerate()
            .map(|(p, s)| s.lookup(p, &InfoSet::cell(cells[p])).cloned())
            .collect::<Result<_>>()?;
        table.insert(cells, Lottery::product(&parts));
    }
    Ok(MediatorSpec {
        label: "equilibrium".into(),
        table,
        transfer: None,
    })
}

/// The player with the larger base value; the first player on ties.
pub fn informed_player(values: &[Q]) -> usize {
    let mut best = 0;
    for (k, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = k;
        }
    }
    best
}

pub(crate) fn require_two(game: &ValidatedGame, values: &[Q]) -> Result<()> {
    if game.num_players() != 2 {
        return Err(Error::PreconditionViolated("construction is defined for two regular players".into()));
    }
    if values.len() != 2 {
        return Err(Error::BaseValueCount {
            expected: 2,
            found: values.len(),
        });
    }
    Ok(())
}

/// A recommendation pair with `informed` getting `a` and the other `b`.
pub(crate) fn pair(informed: usize, a: usize, b: usize) -> Vec<usize> {
    if informed == 0 {
        vec![a, b]
    } else {
        vec![b, a]
    }
}
