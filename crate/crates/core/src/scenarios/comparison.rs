//! Two settings where the outside competitor flips whether sharing data
//! pays, each also in a mirrored form that makes the sellers symmetric.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{build_game, ic_segment_tables, Labeled, ScenarioResult, TypeRow};
use crate::analysis::{verify_mediator, VerificationReport};
use crate::equilibrium::pure_bne_by_dynamics;
use crate::error::{Error, Result};
use crate::game::ValidatedGame;
use crate::mediators::{joint_cells, profile_mediator, MediatorSpec};
use crate::rational::{q, qi, Lottery, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SharingSetting {
    /// Full sharing is optimal only when the outside competitor is present.
    WithAmazon,
    /// Full sharing is optimal only when it is absent.
    WithoutAmazon,
}

impl fmt::Display for SharingSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SharingSetting::WithAmazon => "with_amazon",
            SharingSetting::WithoutAmazon => "without_amazon",
        })
    }
}

impl FromStr for SharingSetting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "with_amazon" => Ok(SharingSetting::WithAmazon),
            "without_amazon" => Ok(SharingSetting::WithoutAmazon),
            other => Err(Error::RegimeViolated(format!(
                "unknown setting {other:?} (expected with_amazon or without_amazon)"
            ))),
        }
    }
}

impl SharingSetting {
    /// Midpoints of the admissible regions.
    pub fn default_params(self) -> Vec<Q> {
        match self {
            SharingSetting::WithAmazon => vec![q(1, 8), q(7, 8)],
            SharingSetting::WithoutAmazon => vec![q(42, 85), q(24, 85), q(19, 85)],
        }
    }
}

/// Reveals the segment to both sellers, who then play the welfare-best pure
/// equilibrium of the segment; ties are split evenly.
pub fn segment_sharing(game: &ValidatedGame) -> Result<MediatorSpec> {
    if game.num_players() != 2 {
        return Err(Error::PreconditionViolated("segment sharing is defined for two regular players".into()));
    }
    let goods = game.num_goods();
    let mut table = std::collections::BTreeMap::new();
    for (cells, types) in joint_cells(game) {
        let payoff = |own: usize, other: usize| -> Q {
            types
                .iter()
                .filter(|&&t| game.desired(t) == own)
                .map(|&t| {
                    let sellers = 1 + usize::from(other == own) + usize::from(game.amazon());
                    game.prior(t) / Q::from_integer(sellers.into())
                })
                .sum()
        };
        let mut best: Option<Q> = None;
        let mut winners = Vec::new();
        for a in 0..goods {
            for b in 0..goods {
                let (ua, ub) = (payoff(a, b), payoff(b, a));
                let stable = (0..goods).all(|d| payoff(d, b) <= ua && payoff(d, a) <= ub);
                if !stable {
                    continue;
                }
                let w = ua + ub;
                match &best {
                    Some(x) if w < *x => {}
                    Some(x) if w == *x => winners.push(vec![a, b]),
                    _ => {
                        best = Some(w);
                        winners = vec![vec![a, b]];
                    }
                }
            }
        }
        if winners.is_empty() {
            return Err(Error::NoPureBne);
        }
        let share = Q::one() / Q::from_integer(winners.len().into());
        table.insert(cells, Lottery::from_weights(winners.into_iter().map(|w| (w, share.clone()))));
    }
    Ok(MediatorSpec {
        label: "segment_sharing".into(),
        table,
        transfer: None,
    })
}

struct Construction {
    rows: Vec<TypeRow>,
    first: Vec<Vec<String>>,
    second: Vec<Vec<String>>,
}

impl Construction {
    fn game(&self, amazon: bool) -> Result<ValidatedGame> {
        build_game(&self.rows, vec![self.first.clone(), self.second.clone()], amazon)
    }

    /// A second copy on fresh goods with the sellers' information swapped;
    /// both copies are equally likely and each seller knows which copy
    /// was drawn.
    fn mirrored(&self) -> Construction {
        let tag = |s: &String| format!("{s}_m");
        let half = q(1, 2);
        let mut rows: Vec<TypeRow> = self
            .rows
            .iter()
            .map(|r| TypeRow::new(r.name.clone(), r.good.clone(), &r.prob * &half))
            .collect();
        rows.extend(self.rows.iter().map(|r| TypeRow::new(tag(&r.name), tag(&r.good), &r.prob * &half)));
        let copy = |cells: &[Vec<String>]| -> Vec<Vec<String>> { cells.iter().map(|c| c.iter().map(tag).collect()).collect() };
        let mut first = self.first.clone();
        first.extend(copy(&self.second));
        let mut second = self.second.clone();
        second.extend(copy(&self.first));
        Construction { rows, first, second }
    }
}

fn cells(groups: &[&[&str]]) -> Vec<Vec<String>> {
    groups.iter().map(|g| g.iter().map(|s| s.to_string()).collect()).collect()
}

/// Segment `a` wants `g1`; segment `b` wants `g1` or `g2`. The first seller
/// learns the segment, the second nothing.
fn pooling_construction(params: &[Q]) -> Result<Construction> {
    let [low, high] = params else {
        return Err(Error::RegimeViolated("expected Pr[g1 | b] and Pr[g2 | b]".into()));
    };
    if !(low + high).is_one() || !low.is_positive() || *high <= qi(3) * low {
        return Err(Error::RegimeViolated("need Pr[g2 | b] > 3 Pr[g1 | b] > 0 summing to 1".into()));
    }
    let half = q(1, 2);
    Ok(Construction {
        rows: vec![
            TypeRow::new("a", "g1", half.clone()),
            TypeRow::new("b1", "g1", &half * low),
            TypeRow::new("b2", "g2", &half * high),
        ],
        first: cells(&[&["a"], &["b1", "b2"]]),
        second: cells(&[&["a", "b1", "b2"]]),
    })
}

/// Segments `s1` (wants `g1`), `s2` (wants `g3`) and a mixed segment `s3`.
/// Each seller can single out one pure segment and confuses the other with
/// the mixed one.
fn separating_construction(params: &[Q]) -> Result<Construction> {
    let [f1, f2, f3] = params else {
        return Err(Error::RegimeViolated("expected three mixed-segment weights".into()));
    };
    let in_band = qi(3) * f2 < qi(2) * f1 && *f1 < qi(2) * f2;
    let ordered = f2 > f3 && qi(3) * f3 > *f1;
    if !(f1 + f2 + f3).is_one() || !in_band || !ordered {
        return Err(Error::RegimeViolated(
            "need 3/2 f2 < f1 < 2 f2 and f2 > f3 > f1/3, summing to 1".into(),
        ));
    }
    let third = q(1, 3);
    Ok(Construction {
        rows: vec![
            TypeRow::new("s1", "g1", third.clone()),
            TypeRow::new("s2", "g3", third.clone()),
            TypeRow::new("s3_1", "g1", &third * f1),
            TypeRow::new("s3_2", "g2", &third * f2),
            TypeRow::new("s3_3", "g3", &third * f3),
        ],
        first: cells(&[&["s1"], &["s2", "s3_1", "s3_2", "s3_3"]]),
        second: cells(&[&["s2"], &["s1", "s3_1", "s3_2", "s3_3"]]),
    })
}

struct Outcome {
    game: ValidatedGame,
    none: VerificationReport,
    full: VerificationReport,
}

fn evaluate(out: &mut ScenarioResult, label: &str, game: &ValidatedGame) -> Result<Outcome> {
    out.games.push(Labeled::new(label, game.spec().clone()));
    let unmediated = pure_bne_by_dynamics(game)?;
    let values = unmediated.utilities.clone();
    let mut none = profile_mediator(game, &unmediated.profile())?;
    none.label = "no_sharing".into();
    let none_report = verify_mediator(game, &none, &values)?;
    let full = segment_sharing(game)?;
    let full_report = verify_mediator(game, &full, &values)?;
    out.record(format!("{label}/no_sharing"), none, none_report.clone());
    out.record(format!("{label}/full_sharing"), full, full_report.clone());
    Ok(Outcome {
        game: game.clone(),
        none: none_report,
        full: full_report,
    })
}

/// `winner` must be IC, strictly beat `loser` and reach `benchmark`.
fn ordering(
    out: &mut ScenarioResult,
    prefix: &str,
    winner: (&str, &VerificationReport),
    loser: (&str, &VerificationReport),
    benchmark: (&str, &Q),
) {
    let (wn, w) = winner;
    let (ln, l) = loser;
    let (bn, b) = benchmark;
    out.check(
        format!("{prefix}/{wn}_beats_{ln}"),
        format!("W({wn}) > W({ln})"),
        w.ic.is_equilibrium && w.welfare > l.welfare,
        &[(wn, &w.welfare), (ln, &l.welfare)],
    );
    out.check(
        format!("{prefix}/{wn}_optimal"),
        format!("W({wn}) = {bn}"),
        w.welfare == *b,
        &[(wn, &w.welfare), (bn, b)],
    );
}

fn all_equal(values: &[Q]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}

pub fn sharing_comparison(which: SharingSetting) -> Result<ScenarioResult> {
    sharing_comparison_with(which, &which.default_params())
}

pub fn sharing_comparison_with(which: SharingSetting, params: &[Q]) -> Result<ScenarioResult> {
    let base = match which {
        SharingSetting::WithAmazon => pooling_construction(params)?,
        SharingSetting::WithoutAmazon => separating_construction(params)?,
    };
    let named: Vec<(String, &Q)> = params.iter().enumerate().map(|(k, p)| (format!("p{}", k + 1), p)).collect();
    let named: Vec<(&str, &Q)> = named.iter().map(|(k, p)| (k.as_str(), *p)).collect();
    let mut out = ScenarioResult::new(&format!("sharing_comparison_{which}"), &named);

    let mirrored = base.mirrored();
    for (variant, construction) in [("base", &base), ("mirrored", &mirrored)] {
        let with = evaluate(&mut out, &format!("{variant}/amazon"), &construction.game(true)?)?;
        let without = evaluate(&mut out, &format!("{variant}/no_amazon"), &construction.game(false)?)?;
        match which {
            SharingSetting::WithAmazon => {
                ordering(
                    &mut out,
                    &format!("{variant}/amazon"),
                    ("full_sharing", &with.full),
                    ("no_sharing", &with.none),
                    ("opt", &with.full.opt),
                );
                ordering(
                    &mut out,
                    &format!("{variant}/no_amazon"),
                    ("no_sharing", &without.none),
                    ("full_sharing", &without.full),
                    ("opt", &without.none.opt),
                );
            }
            SharingSetting::WithoutAmazon => {
                ordering(
                    &mut out,
                    &format!("{variant}/no_amazon"),
                    ("full_sharing", &without.full),
                    ("no_sharing", &without.none),
                    ("opt", &without.full.opt),
                );
                // Separating on the mixed segment would do better but is
                // not an equilibrium, so the benchmark is the best IC table.
                let desired = |types: &[usize]| {
                    let mut goods: Vec<usize> = types.iter().map(|&t| with.game.desired(t)).collect();
                    goods.sort_unstable();
                    goods.dedup();
                    goods
                };
                let best_ic = ic_segment_tables(&with.game, desired)?
                    .into_iter()
                    .map(|(w, _)| w)
                    .max()
                    .unwrap_or_else(Q::zero);
                ordering(
                    &mut out,
                    &format!("{variant}/amazon"),
                    ("no_sharing", &with.none),
                    ("full_sharing", &with.full),
                    ("best_ic_table", &best_ic),
                );
                let (f1, f2, f3) = (&params[0], &params[1], &params[2]);
                let full_target = (qi(2) + f1 + f2) / qi(3);
                out.check(
                    format!("{variant}/no_amazon/full_sharing_welfare"),
                    "W = (2 + f1 + f2) / 3",
                    without.full.welfare == full_target,
                    &[("welfare", &without.full.welfare), ("target", &full_target)],
                );
                let none_mixed = (f1 + f3) / qi(2);
                let pooled = qi(2) * f1 / qi(3);
                let none_target = (q(4, 3) + &none_mixed) / qi(3);
                out.check(
                    format!("{variant}/amazon/mixed_segment_comparison"),
                    "no sharing W = (4/3 + (f1 + f3)/2) / 3 and 2/3 f1 < (f1 + f3)/2",
                    with.none.welfare == none_target && pooled < none_mixed,
                    &[("welfare", &with.none.welfare), ("pooled", &pooled), ("separated", &none_mixed)],
                );
            }
        }
        if variant == "mirrored" {
            for (env, o) in [("amazon", &with), ("no_amazon", &without)] {
                out.check(
                    format!("mirrored/{env}/symmetric_utilities"),
                    "equal utilities under no sharing and under full sharing",
                    all_equal(&o.none.utilities) && all_equal(&o.full.utilities),
                    &[
                        ("none_1", &o.none.utilities[0]),
                        ("none_2", &o.none.utilities[1]),
                        ("full_1", &o.full.utilities[0]),
                        ("full_2", &o.full.utilities[1]),
                    ],
                );
            }
            let (env, winner) = match which {
                SharingSetting::WithAmazon => ("amazon", &with.full),
                SharingSetting::WithoutAmazon => ("no_amazon", &without.full),
            };
            let least = winner.ir_slacks.iter().min().cloned().unwrap_or_else(Q::zero);
            out.check(
                format!("mirrored/{env}/full_sharing_ir"),
                "full sharing is IR against no sharing",
                winner.ir(),
                &[("min_ir_slack", &least)],
            );
        }
    }
    Ok(out)
}
