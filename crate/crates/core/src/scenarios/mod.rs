//! Worked examples and random instances.
//!
//! Every scenario rebuilds its games from parameters, runs the relevant
//! mediators through [`verify_mediator`](crate::analysis::verify_mediator)
//! and records each claimed relation with the exact values it was judged on.

mod comparison;
mod intro;
mod nplayer;
mod random;
mod tightness;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analysis::{render_report, VerificationReport};
use crate::error::Result;
use crate::game::{validate_game, GameSpec, ValidatedGame};
use crate::engine::expected_utilities;
use crate::equilibrium::check_bne;
use crate::mediators::{joint_cells, obedient_profile, MediatorSpec};
use crate::rational::{fmt_q, Lottery, Q};

pub use comparison::{sharing_comparison, sharing_comparison_with, segment_sharing, SharingSetting};
pub use intro::{intro_example, intro_game};
pub use nplayer::nplayer_claim;
pub use random::{
    certify_instance, instance_failures, random_instance, random_nplayer_instance, sweep, InstanceProfile,
    RandomInstance, SweepFailure, SweepSummary,
};
pub use tightness::{example_ic, example_ir};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeled<T> {
    pub label: String,
    pub value: T,
}

impl<T> Labeled<T> {
    pub fn new(label: impl Into<String>, value: T) -> Self {
        Labeled {
            label: label.into(),
            value,
        }
    }
}

/// One checked relation and the exact quantities it was decided on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub relation: String,
    pub observed: BTreeMap<String, String>,
    pub pass: bool,
}

impl Claim {
    pub fn new(id: impl Into<String>, relation: impl Into<String>, pass: bool, observed: &[(&str, &Q)]) -> Self {
        Claim {
            id: id.into(),
            relation: relation.into(),
            observed: observed.iter().map(|(k, v)| (k.to_string(), fmt_q(v))).collect(),
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub name: String,
    pub parameters: BTreeMap<String, String>,
    pub games: Vec<Labeled<GameSpec>>,
    pub mediators: Vec<Labeled<MediatorSpec>>,
    pub reports: Vec<Labeled<VerificationReport>>,
    pub claims: Vec<Claim>,
}

impl ScenarioResult {
    fn new(name: &str, parameters: &[(&str, &Q)]) -> Self {
        ScenarioResult {
            name: name.to_string(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), fmt_q(v))).collect(),
            games: Vec::new(),
            mediators: Vec::new(),
            reports: Vec::new(),
            claims: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn failed_claims(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.pass)
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn report(&self, label: &str) -> Option<&VerificationReport> {
        self.reports.iter().find(|r| r.label == label).map(|r| &r.value)
    }

    fn record(&mut self, label: impl Into<String>, mediator: MediatorSpec, report: VerificationReport) {
        let label = label.into();
        self.mediators.push(Labeled::new(label.clone(), mediator));
        self.reports.push(Labeled::new(label, report));
    }

    fn check(&mut self, id: impl Into<String>, relation: impl Into<String>, pass: bool, observed: &[(&str, &Q)]) {
        self.claims.push(Claim::new(id, relation, pass, observed));
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario {}", self.name);
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for r in &self.reports {
            let _ = writeln!(out, "\n[{}]", r.label);
            out.push_str(&render_report(&r.value));
        }
        let _ = writeln!(out, "\nclaims");
        for c in &self.claims {
            let observed: Vec<String> = c.observed.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(
                out,
                "  {:<4} {:<44} {}  [{}]",
                if c.pass { "pass" } else { "FAIL" },
                c.id,
                c.relation,
                observed.join(", ")
            );
        }
        out
    }
}

/// A type row used by the builders: identifier, desired good, probability.
#[derive(Debug, Clone)]
pub(crate) struct TypeRow {
    pub name: String,
    pub good: String,
    pub prob: Q,
}

impl TypeRow {
    pub fn new(name: impl Into<String>, good: impl Into<String>, prob: Q) -> Self {
        TypeRow {
            name: name.into(),
            good: good.into(),
            prob,
        }
    }
}

/// Goods are listed in order of first appearance.
pub(crate) fn build_spec(rows: &[TypeRow], partitions: Vec<Vec<Vec<String>>>, amazon: bool) -> GameSpec {
    let mut goods: Vec<String> = Vec::new();
    for r in rows {
        if !goods.contains(&r.good) {
            goods.push(r.good.clone());
        }
    }
    GameSpec {
        types: rows.iter().map(|r| r.name.clone()).collect(),
        goods,
        desired: rows.iter().map(|r| (r.name.clone(), r.good.clone())).collect(),
        prior: rows.iter().map(|r| (r.name.clone(), r.prob.clone())).collect(),
        partitions,
        amazon,
        base_values: Vec::new(),
    }
}

pub(crate) fn build_game(rows: &[TypeRow], partitions: Vec<Vec<Vec<String>>>, amazon: bool) -> Result<ValidatedGame> {
    validate_game(&build_spec(rows, partitions, amazon))
}

/// Every deterministic mediator that reveals the segment and recommends one
/// pair of goods per segment, drawn from `candidates(segment types)`, kept
/// when obedience is an equilibrium. Returned with their welfare, in
/// enumeration order.
pub(crate) fn ic_segment_tables(
    game: &ValidatedGame,
    candidates: impl Fn(&[usize]) -> Vec<usize>,
) -> Result<Vec<(Q, MediatorSpec)>> {
    let choices: Vec<(Vec<usize>, Vec<Vec<usize>>)> = joint_cells(game)
        .into_iter()
        .map(|(cells, types)| {
            let goods = candidates(&types);
            let pairs = goods.iter().flat_map(|&a| goods.iter().map(move |&b| vec![a, b])).collect();
            (cells, pairs)
        })
        .collect();
    let mut index = vec![0usize; choices.len()];
    let mut out = Vec::new();
    loop {
        let table = MediatorSpec {
            label: "segment_table".into(),
            table: choices
                .iter()
                .zip(&index)
                .map(|((cells, pairs), &k)| (cells.clone(), Lottery::certain(pairs[k].clone())))
                .collect(),
            transfer: None,
        };
        let obedient = obedient_profile(game, &table);
        if check_bne(game, &obedient, Some(&table))?.is_equilibrium {
            let welfare: Q = expected_utilities(game, &obedient, Some(&table))?.into_iter().sum();
            out.push((welfare, table));
        }
        let mut pos = 0;
        while pos < index.len() {
            index[pos] += 1;
            if index[pos] < choices[pos].1.len() {
                break;
            }
            index[pos] = 0;
            pos += 1;
        }
        if pos == index.len() {
            return Ok(out);
        }
    }
}

pub(crate) fn names(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}
