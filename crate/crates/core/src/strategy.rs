//! Behavioral strategies keyed by information set.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{Lottery, Q};

/// What a player knows: its partition cell and, in a mediated game, the
/// good recommended to that player.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InfoSet {
    pub cell: usize,
    pub message: Option<usize>,
}

impl InfoSet {
    pub fn cell(cell: usize) -> Self {
        Self { cell, message: None }
    }

    pub fn with_message(cell: usize, message: usize) -> Self {
        Self {
            cell,
            message: Some(message),
        }
    }
}

/// One player's strategy. An entry keyed by `(cell, None)` also answers
/// for every message received in that cell unless a more specific entry
/// exists, so unmediated strategies can be evaluated in mediated games.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Strategy {
    actions: BTreeMap<InfoSet, Lottery<usize>>,
}

impl Strategy {
    pub fn new() -> Self {
        Self::default()
    }

    /// A pure strategy that ignores messages: `goods[c]` in cell `c`.
    pub fn pure_by_cell(goods: &[usize]) -> Self {
        let mut s = Self::new();
        for (cell, &g) in goods.iter().enumerate() {
            s.set(InfoSet::cell(cell), Lottery::certain(g));
        }
        s
    }

    pub fn set(&mut self, info: InfoSet, action: Lottery<usize>) {
        self.actions.insert(info, action);
    }

    pub fn get(&self, info: &InfoSet) -> Option<&Lottery<usize>> {
        self.actions
            .get(info)
            .or_else(|| self.actions.get(&InfoSet::cell(info.cell)))
    }

    pub fn lookup(&self, player: usize, info: &InfoSet) -> Result<&Lottery<usize>> {
        self.get(info).ok_or(Error::ProfileIncomplete {
            player,
            cell: info.cell,
            message: info.message,
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&InfoSet, &Lottery<usize>)> {
        self.actions.iter()
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    /// The good played with certainty at `info`, if the action is pure.
    pub fn pure_action(&self, info: &InfoSet) -> Option<usize> {
        let lottery = self.get(info)?;
        (lottery.len() == 1).then(|| *lottery.support().next().unwrap())
    }
}

pub type StrategyProfile = Vec<Strategy>;

/// Serializable form of a strategy, used by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyEntry {
    pub cell: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<usize>,
    pub action: Vec<ActionWeight>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionWeight {
    pub good: usize,
    #[serde(with = "crate::rational::serde_q")]
    pub prob: Q,
}

impl Serialize for Strategy {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<StrategyEntry> = self
            .actions
            .iter()
            .map(|(info, lottery)| StrategyEntry {
                cell: info.cell,
                message: info.message,
                action: lottery
                    .iter()
                    .map(|(g, p)| ActionWeight {
                        good: *g,
                        prob: p.clone(),
                    })
                    .collect(),
            })
            .collect();
        entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Strategy {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<StrategyEntry>::deserialize(d)?;
        let mut strategy = Strategy::new();
        for e in entries {
            let lottery = Lottery::from_weights(e.action.into_iter().map(|a| (a.good, a.prob)));
            lottery.validate().map_err(serde::de::Error::custom)?;
            strategy.set(
                InfoSet {
                    cell: e.cell,
                    message: e.message,
                },
                lottery,
            );
        }
        Ok(strategy)
    }
}
