//! Mediators for games where pooled data only reveals a segment.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::{informed_player, pair, require_two, MediatorSpec};
use crate::equilibrium::{naive_best_response, NaiveBestResponse, NaiveVariant};
use crate::error::{Error, Result};
use crate::game::ValidatedGame;
use crate::rational::{fmt_q, qi, Lottery, Q};
use crate::segments::{SegmentClass, SegmentInfo, SegmentStats};
use crate::strategy::InfoSet;

/// Probability that the stronger player takes the top-good role in a
/// separating mediator. Clamped at 0 when that value is below half the
/// runner-up weight.
pub fn m1_top_role_probability(informed_value: &Q, top: &Q, second: &Q) -> Q {
    if top == second {
        return Q::zero();
    }
    let p = (qi(2) * informed_value - second) / (top - second);
    if p.is_negative() {
        Q::zero()
    } else {
        p
    }
}

/// Probability of pooling on the top good in the partial-revelation branch.
pub fn m2_pooling_probability(informed_value: &Q, top: &Q, alpha_i: &Q) -> Q {
    (qi(3) * alpha_i - qi(3) * informed_value) / (qi(3) * alpha_i - top)
}

fn relation(holds: bool, text: String) -> Option<String> {
    (!holds).then_some(text)
}

/// Conditions under which separation on every segment is IR.
pub fn m1_violations(values: &[Q], top: &Q, second: &Q) -> Vec<String> {
    let i = informed_player(values);
    let sum: Q = values.iter().sum();
    let bound = (top + second) / qi(2);
    let cap = top / qi(2);
    [
        relation(sum <= bound, format!("v1 + v2 = {} exceeds (top + second) / 2 = {}", fmt_q(&sum), fmt_q(&bound))),
        relation(values[i] <= cap, format!("max v = {} exceeds top / 2 = {}", fmt_q(&values[i]), fmt_q(&cap))),
    ]
    .into_iter()
    .flatten()
    .collect()
}

/// Conditions under which pooling mixed with partial revelation is IR.
/// Pooling alone needs nothing once the larger value is at most top / 3.
pub fn m2_violations(values: &[Q], top: &Q, alpha_i: &Q) -> Vec<String> {
    let i = informed_player(values);
    let j = 1 - i;
    if values[i] <= top / qi(3) {
        return Vec::new();
    }
    let rest = top / qi(2) - &values[i];
    [
        relation(
            values[i] <= *alpha_i,
            format!("max v = {} exceeds benchmark utility {}", fmt_q(&values[i]), fmt_q(alpha_i)),
        ),
        relation(
            values[j] <= rest,
            format!("min v = {} exceeds top / 2 - max v = {}", fmt_q(&values[j]), fmt_q(&rest)),
        ),
    ]
    .into_iter()
    .flatten()
    .collect()
}

fn separating(info: &SegmentInfo, informed: usize, top_role: &Q) -> Lottery<Vec<usize>> {
    let g1 = info.top_good;
    let g2 = info.second_good.unwrap_or(g1);
    Lottery::mix(top_role, pair(informed, g1, g2), pair(informed, g2, g1))
}

fn pooling_or_reveal(info: &SegmentInfo, informed: usize, pool: &Q, fallback: usize) -> Lottery<Vec<usize>> {
    let g1 = info.top_good;
    Lottery::mix(pool, vec![g1, g1], pair(informed, g1, fallback))
}

fn responder_good(naive: &NaiveBestResponse, cells: &[usize]) -> usize {
    naive
        .strategy
        .pure_action(&InfoSet::cell(cells[naive.responder]))
        .expect("benchmark response is pure")
}

fn require_amazon(game: &ValidatedGame) -> Result<()> {
    if !game.amazon() {
        return Err(Error::PreconditionViolated("segment mediators assume an Amazon".into()));
    }
    Ok(())
}

fn require_class(stats: &SegmentStats, class: SegmentClass) -> Result<()> {
    if let Some((k, s)) = stats.live().find(|(_, s)| s.class != class) {
        return Err(Error::PreconditionViolated(format!(
            "segment {k} has top weight {} and runner-up {}, not in class {class:?}",
            fmt_q(&s.top_weight),
            fmt_q(&s.second_weight)
        )));
    }
    Ok(())
}

/// How a segment is handled; zero-probability segments follow the class
/// that carries mass so pure-class games reproduce the single mediators.
fn dispatch_class(stats: &SegmentStats, info: &SegmentInfo) -> SegmentClass {
    if info.prob.is_positive() {
        info.class
    } else if stats.balanced_mass.is_zero() {
        SegmentClass::Dominant
    } else {
        SegmentClass::Balanced
    }
}

/// Separating mediator for games where no segment has a dominant top good.
pub fn mediator_m1(game: &ValidatedGame, values: &[Q]) -> Result<MediatorSpec> {
    require_two(game, values)?;
    require_amazon(game)?;
    let stats = SegmentStats::of(game);
    require_class(&stats, SegmentClass::Balanced)?;
    let violated = m1_violations(values, &stats.top_total, &stats.second_total);
    if !violated.is_empty() {
        return Err(Error::InfeasibleBaseValues { violated });
    }
    Ok(MediatorSpec {
        label: "m1".into(),
        table: balanced_table(&stats, values, &stats.top_total, &stats.second_total, |_| true),
        transfer: None,
    })
}

fn balanced_table(
    stats: &SegmentStats,
    values: &[Q],
    top: &Q,
    second: &Q,
    include: impl Fn(&SegmentInfo) -> bool,
) -> BTreeMap<Vec<usize>, Lottery<Vec<usize>>> {
    // Equal aggregate weights: player 1 always takes the top role.
    let (informed, top_role) = if top == second {
        (0, Q::from_integer(1.into()))
    } else {
        let i = informed_player(values);
        (i, m1_top_role_probability(&values[i], top, second))
    };
    stats
        .segments
        .iter()
        .zip(&stats.table.cells)
        .filter(|(info, _)| include(info))
        .map(|(info, cells)| (cells.clone(), separating(info, informed, &top_role)))
        .collect()
}

fn dominant_table(
    stats: &SegmentStats,
    values: &[Q],
    top: &Q,
    naive: Option<&NaiveBestResponse>,
    include: impl Fn(&SegmentInfo) -> bool,
) -> BTreeMap<Vec<usize>, Lottery<Vec<usize>>> {
    let i = informed_player(values);
    let pool = match naive {
        Some(n) if values[i] > top / qi(3) => Some((m2_pooling_probability(&values[i], top, &n.alpha_i), n)),
        _ => None,
    };
    stats
        .segments
        .iter()
        .zip(&stats.table.cells)
        .filter(|(info, _)| include(info))
        .map(|(info, cells)| {
            let lottery = match &pool {
                None => Lottery::certain(vec![info.top_good, info.top_good]),
                Some((p, n)) => pooling_or_reveal(info, i, p, responder_good(n, cells)),
            };
            (cells.clone(), lottery)
        })
        .collect()
}

/// Pooling on the top good, mixed with revealing everything to the stronger
/// player while the other plays the benchmark response.
pub fn mediator_m2(game: &ValidatedGame, values: &[Q]) -> Result<MediatorSpec> {
    require_two(game, values)?;
    require_amazon(game)?;
    let stats = SegmentStats::of(game);
    require_class(&stats, SegmentClass::Dominant)?;
    let top = &stats.top_total;
    let i = informed_player(values);
    let naive = if values[i] > top / qi(3) {
        Some(naive_best_response(game, i, NaiveVariant::NoJci)?)
    } else {
        None
    };
    let alpha_i = naive.as_ref().map(|n| n.alpha_i.clone()).unwrap_or_default();
    let violated = m2_violations(values, top, &alpha_i);
    if !violated.is_empty() {
        return Err(Error::InfeasibleBaseValues { violated });
    }
    Ok(MediatorSpec {
        label: "m2".into(),
        table: dominant_table(&stats, values, top, naive.as_ref(), |_| true),
        transfer: None,
    })
}

fn dominant_naive(game: &ValidatedGame, stats: &SegmentStats, values: &[Q]) -> Result<Option<NaiveBestResponse>> {
    let i = informed_player(values);
    if stats.dominant_mass.is_zero() || values[i] <= &stats.dominant_top / qi(3) {
        return Ok(None);
    }
    naive_best_response(game, i, NaiveVariant::NoJciDominant).map(Some)
}

/// Violated sufficient conditions for the combined mediator, checked per
/// class that carries probability.
pub fn m3_violations(game: &ValidatedGame, values: &[Q]) -> Result<Vec<String>> {
    require_two(game, values)?;
    let stats = SegmentStats::of(game);
    let mut out = Vec::new();
    if stats.balanced_mass.is_positive() {
        out.extend(
            m1_violations(values, &stats.balanced_top, &stats.balanced_second)
                .into_iter()
                .map(|v| format!("balanced segments: {v}")),
        );
    }
    if stats.dominant_mass.is_positive() {
        let naive = dominant_naive(game, &stats, values)?;
        let alpha_i = naive.map(|n| n.alpha_i).unwrap_or_default();
        out.extend(
            m2_violations(values, &stats.dominant_top, &alpha_i)
                .into_iter()
                .map(|v| format!("dominant segments: {v}")),
        );
    }
    Ok(out)
}

/// Separation on balanced segments and pooling-or-revelation on the
/// others, each parameterized by its class-conditional weights.
pub fn mediator_m3(game: &ValidatedGame, values: &[Q]) -> Result<MediatorSpec> {
    require_two(game, values)?;
    require_amazon(game)?;
    let violated = m3_violations(game, values)?;
    if !violated.is_empty() {
        return Err(Error::InfeasibleBaseValues { violated });
    }
    let stats = SegmentStats::of(game);
    let naive = dominant_naive(game, &stats, values)?;
    let mut table = balanced_table(&stats, values, &stats.balanced_top, &stats.balanced_second, |s| {
        dispatch_class(&stats, s) == SegmentClass::Balanced
    });
    table.extend(dominant_table(&stats, values, &stats.dominant_top, naive.as_ref(), |s| {
        dispatch_class(&stats, s) == SegmentClass::Dominant
    }));
    Ok(MediatorSpec {
        label: "m3".into(),
        table,
        transfer: None,
    })
}
