//! Game specifications and their validated, index-based form.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, serde_q_vec, Q};

/// The on-disk description of a game. Identifiers are free-form strings;
/// probabilities and base values are exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameSpec {
    pub types: Vec<String>,
    pub goods: Vec<String>,
    pub desired: BTreeMap<String, String>,
    #[serde(with = "serde_q_map")]
    pub prior: BTreeMap<String, Q>,
    /// One partition per regular player; each cell lists type identifiers.
    pub partitions: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    pub amazon: bool,
    /// Empty means every base value is zero.
    #[serde(default, with = "serde_q_vec")]
    pub base_values: Vec<Q>,
}

mod serde_q_map {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::rational::{fmt_q, parse_q, Q};

    pub fn serialize<S: Serializer>(map: &BTreeMap<String, Q>, s: S) -> Result<S::Ok, S::Error> {
        let texts: BTreeMap<&str, String> = map.iter().map(|(k, v)| (k.as_str(), fmt_q(v))).collect();
        texts.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, Q>, D::Error> {
        let texts = BTreeMap::<String, String>::deserialize(d)?;
        texts
            .into_iter()
            .map(|(k, v)| parse_q(&v).map(|q| (k, q)).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl GameSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("game spec serializes")
    }
}

/// A player's partition in index form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub cells: Vec<Vec<usize>>,
    pub cell_of: Vec<usize>,
}

impl Partition {
    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }
}

/// A game whose invariants have been checked. Types, goods and cells are
/// referred to by their position in the originating [`GameSpec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedGame {
    spec: GameSpec,
    desired: Vec<usize>,
    prior: Vec<Q>,
    partitions: Vec<Partition>,
    base_values: Vec<Q>,
}

pub fn validate_game(raw: &GameSpec) -> Result<ValidatedGame> {
    if raw.types.is_empty() || raw.goods.is_empty() {
        return Err(Error::EmptyGame);
    }
    let mut type_index = HashMap::new();
    for (idx, ty) in raw.types.iter().enumerate() {
        if type_index.insert(ty.as_str(), idx).is_some() {
            return Err(Error::UnknownType(ty.clone()));
        }
    }
    let mut good_index = HashMap::new();
    for (idx, good) in raw.goods.iter().enumerate() {
        if good_index.insert(good.as_str(), idx).is_some() {
            return Err(Error::DuplicateGood(good.clone()));
        }
    }

    for key in raw.desired.keys().chain(raw.prior.keys()) {
        if !type_index.contains_key(key.as_str()) {
            return Err(Error::UnknownType(key.clone()));
        }
    }
    let mut desired = Vec::with_capacity(raw.types.len());
    let mut prior = Vec::with_capacity(raw.types.len());
    for ty in &raw.types {
        let good = raw.desired.get(ty).ok_or_else(|| Error::MissingEntry {
            field: "desired",
            ty: ty.clone(),
        })?;
        let good = *good_index.get(good.as_str()).ok_or_else(|| Error::UnknownGood {
            ty: ty.clone(),
            good: good.clone(),
        })?;
        desired.push(good);
        let p = raw.prior.get(ty).ok_or_else(|| Error::MissingEntry {
            field: "prior",
            ty: ty.clone(),
        })?;
        if p.is_negative() {
            return Err(Error::NegativePrior { ty: ty.clone() });
        }
        prior.push(p.clone());
    }
    let sum: Q = prior.iter().sum();
    if !sum.is_one() {
        return Err(Error::PriorNotNormalized { sum: fmt_q(&sum) });
    }

    if raw.partitions.len() < 2 {
        return Err(Error::TooFewPlayers(raw.partitions.len()));
    }
    let mut partitions = Vec::with_capacity(raw.partitions.len());
    for (player, cells) in raw.partitions.iter().enumerate() {
        let covering = |reason: String| Error::PartitionNotCovering { player, reason };
        let mut cell_of = vec![usize::MAX; raw.types.len()];
        let mut index_cells = Vec::with_capacity(cells.len());
        for (c, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(covering(format!("cell {c} is empty")));
            }
            let mut members = Vec::with_capacity(cell.len());
            for ty in cell {
                let t = *type_index
                    .get(ty.as_str())
                    .ok_or_else(|| covering(format!("unknown type {ty:?}")))?;
                if cell_of[t] != usize::MAX {
                    return Err(covering(format!("type {ty:?} appears twice")));
                }
                cell_of[t] = c;
                members.push(t);
            }
            members.sort_unstable();
            index_cells.push(members);
        }
        if let Some(t) = cell_of.iter().position(|&c| c == usize::MAX) {
            return Err(covering(format!("type {:?} is not covered", raw.types[t])));
        }
        partitions.push(Partition {
            cells: index_cells,
            cell_of,
        });
    }

    let n = partitions.len();
    let base_values = if raw.base_values.is_empty() {
        vec![Q::zero(); n]
    } else if raw.base_values.len() != n {
        return Err(Error::BaseValueCount {
            expected: n,
            found: raw.base_values.len(),
        });
    } else {
        raw.base_values.clone()
    };
    for (player, v) in base_values.iter().enumerate() {
        if v.is_negative() || *v > Q::one() {
            return Err(Error::BaseValueOutOfRange {
                player,
                value: fmt_q(v),
            });
        }
    }

    Ok(ValidatedGame {
        spec: raw.clone(),
        desired,
        prior,
        partitions,
        base_values,
    })
}

impl ValidatedGame {
    pub fn spec(&self) -> &GameSpec {
        &self.spec
    }

    pub fn num_types(&self) -> usize {
        self.desired.len()
    }

    pub fn num_goods(&self) -> usize {
        self.spec.goods.len()
    }

    pub fn num_players(&self) -> usize {
        self.partitions.len()
    }

    pub fn amazon(&self) -> bool {
        self.spec.amazon
    }

    pub fn type_name(&self, ty: usize) -> &str {
        &self.spec.types[ty]
    }

    pub fn good_name(&self, good: usize) -> &str {
        &self.spec.goods[good]
    }

    pub fn desired(&self, ty: usize) -> usize {
        self.desired[ty]
    }

    pub fn desired_all(&self) -> &[usize] {
        &self.desired
    }

    pub fn prior(&self, ty: usize) -> &Q {
        &self.prior[ty]
    }

    pub fn priors(&self) -> &[Q] {
        &self.prior
    }

    pub fn partition(&self, player: usize) -> &Partition {
        &self.partitions[player]
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn base_values(&self) -> &[Q] {
        &self.base_values
    }

    /// The tuple of cells, one per player, that contains `ty`.
    pub fn cell_tuple(&self, ty: usize) -> Vec<usize> {
        self.partitions.iter().map(|p| p.cell_of[ty]).collect()
    }

    /// Types with positive prior probability.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_types()).filter(move |&t| self.prior[t].is_positive())
    }

    /// Unconditional probability that each good is the desired one.
    pub fn good_mass(&self) -> Vec<Q> {
        let mut mass = vec![Q::zero(); self.num_goods()];
        for t in 0..self.num_types() {
            mass[self.desired[t]] += &self.prior[t];
        }
        mass
    }

    pub fn with_base_values(&self, values: &[Q]) -> Result<Self> {
        let mut spec = self.spec.clone();
        spec.base_values = values.to_vec();
        validate_game(&spec)
    }

    pub fn with_amazon(&self, amazon: bool) -> Self {
        let mut game = self.clone();
        game.spec.amazon = amazon;
        game
    }

    /// The same game with the prior restricted to `types` and renormalized.
    /// Returns `None` when the restriction has zero probability.
    pub fn condition_on(&self, types: &[usize]) -> Option<Self> {
        let mass: Q = types.iter().map(|&t| &self.prior[t]).sum();
        if !mass.is_positive() {
            return None;
        }
        let mut keep = vec![false; self.num_types()];
        for &t in types {
            keep[t] = true;
        }
        let mut game = self.clone();
        for t in 0..self.num_types() {
            let p = if keep[t] {
                &self.prior[t] / &mass
            } else {
                Q::zero()
            };
            game.spec.prior.insert(self.spec.types[t].clone(), p.clone());
            game.prior[t] = p;
        }
        Some(game)
    }

    /// The same game with the prior replaced by `prior` (indexed by type).
    pub fn with_prior(&self, prior: &[Q]) -> Result<Self> {
        let mut spec = self.spec.clone();
        for (t, p) in prior.iter().enumerate() {
            spec.prior.insert(spec.types[t].clone(), p.clone());
        }
        validate_game(&spec)
    }
}
