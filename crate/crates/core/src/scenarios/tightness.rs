//! Instances where no mediator beats the segment guarantees by much.

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{build_game, ic_segment_tables, Labeled, ScenarioResult, TypeRow};
use crate::analysis::{opt_benchmark, verify_mediator};
use crate::error::{Error, Result};
use crate::game::ValidatedGame;
use crate::mediators::{mediator_m2, mediator_m3};
use crate::rational::{q, qi, Q};
use crate::segments::{SegmentClass, SegmentStats};

/// `ceil(1/eps) + 1` equally likely segments, each with its own top good and
/// a shared runner-up good that is `eps` times as likely. The first seller
/// learns the segment, the second learns nothing.
fn ir_game(eps: &Q) -> Result<ValidatedGame> {
    let count = (Q::one() / eps).ceil().to_integer().to_usize().expect("small segment count") + 1;
    let seg = q(1, count as i64);
    let top = Q::one() / (Q::one() + eps);
    let second = eps / (Q::one() + eps);
    let mut rows = Vec::new();
    let mut informed = Vec::new();
    for k in 0..count {
        rows.push(TypeRow::new(format!("s{k}_top"), format!("top{k}"), &seg * &top));
        rows.push(TypeRow::new(format!("s{k}_common"), "common", &seg * &second));
        informed.push(vec![format!("s{k}_top"), format!("s{k}_common")]);
    }
    let everything = vec![rows.iter().map(|r| r.name.clone()).collect()];
    build_game(&rows, vec![informed, everything], true)
}

pub fn example_ir(eps: &Q) -> Result<ScenarioResult> {
    if !eps.is_positive() || *eps >= Q::one() {
        return Err(Error::RegimeViolated("eps must lie in (0, 1)".into()));
    }
    let game = ir_game(eps)?;
    let mut out = ScenarioResult::new("example_ir", &[("eps", eps)]);
    out.games.push(Labeled::new("segments", game.spec().clone()));
    let stats = SegmentStats::of(&game);
    let top = stats.top_total.clone();
    let values = [&top / qi(2), Q::zero()];

    let weights_ok = stats.live().all(|(_, s)| s.top_weight == &s.second_weight / eps);
    out.check(
        "segment_weights",
        "top weight = runner-up weight / eps in every segment",
        weights_ok,
        &[("top_total", &top), ("second_total", &stats.second_total)],
    );
    let opt = opt_benchmark(&game);
    let pooling = qi(2) * &top / qi(3);
    out.check("opt_is_pooling", "OPT = 2/3 * top", opt == pooling, &[("opt", &opt), ("pooling", &pooling)]);

    // The plain pooling-or-reveal mediator applies while every segment is
    // dominated by its top good; the combined one covers the rest.
    let mediator = if stats.live().all(|(_, s)| s.class == SegmentClass::Dominant) {
        mediator_m2(&game, &values)?
    } else {
        mediator_m3(&game, &values)?
    };
    let report = verify_mediator(&game, &mediator, &values)?;
    out.check(
        "mediator_certified",
        "IR and IC",
        report.certified(),
        &[("ic_gain", &report.ic.max_gain), ("ir_slack_1", &report.ir_slacks[0])],
    );
    let separated = (&top + &stats.second_total) / qi(2);
    out.check(
        "welfare_is_separation",
        "W = (top + runner-up) / 2",
        report.welfare == separated,
        &[("welfare", &report.welfare)],
    );
    let expected = (Q::one() + eps) * q(3, 4);
    out.check(
        "ratio",
        "W / OPT = (1 + eps) * 3/4",
        report.ratio == expected,
        &[("ratio", &report.ratio), ("expected", &expected)],
    );
    out.record(mediator.label.clone(), mediator, report);
    Ok(out)
}

/// Two equally likely segments with four distinct goods; both sellers learn
/// the segment. Each segment's top good is `3/2 + eps` times as likely as
/// its runner-up.
fn ic_game(eps: &Q) -> Result<ValidatedGame> {
    let second = Q::one() / (q(5, 2) + eps);
    let top = (q(3, 2) + eps) * &second;
    let half = q(1, 2);
    let rows = [
        TypeRow::new("s0_top", "a0", &half * &top),
        TypeRow::new("s0_second", "b0", &half * &second),
        TypeRow::new("s1_top", "a1", &half * &top),
        TypeRow::new("s1_second", "b1", &half * &second),
    ];
    let cells = vec![
        vec!["s0_top".to_string(), "s0_second".to_string()],
        vec!["s1_top".to_string(), "s1_second".to_string()],
    ];
    build_game(&rows, vec![cells.clone(), cells], true)
}

pub fn example_ic(eps: &Q) -> Result<ScenarioResult> {
    if !eps.is_positive() {
        return Err(Error::RegimeViolated("eps must be positive".into()));
    }
    let game = ic_game(eps)?;
    let mut out = ScenarioResult::new("example_ic", &[("eps", eps)]);
    out.games.push(Labeled::new("distinct_goods", game.spec().clone()));
    let stats = SegmentStats::of(&game);
    let opt = opt_benchmark(&game);
    let separated = (&stats.top_total + &stats.second_total) / qi(2);
    out.check("opt_is_separation", "OPT = (top + runner-up) / 2", opt == separated, &[("opt", &opt)]);

    let runner_up: Vec<usize> = stats.live().filter_map(|(_, s)| s.second_good).collect();
    let all_goods: Vec<usize> = (0..game.num_goods()).collect();
    let tables = ic_segment_tables(&game, |_| all_goods.clone())?;
    let ic_count = tables.len();
    let uses_runner_up = tables.iter().any(|(_, t)| {
        t.table
            .values()
            .flat_map(|l| l.support())
            .any(|rec| rec.iter().any(|g| runner_up.contains(g)))
    });
    let best = tables.into_iter().reduce(|a, b| if b.0 > a.0 { b } else { a });
    let ic_tables = Q::from_integer(ic_count.into());
    out.check(
        "ic_never_uses_runner_up",
        "no IC table recommends a runner-up good",
        !uses_runner_up,
        &[("ic_tables", &ic_tables)],
    );
    let (welfare, mut table) = best.ok_or_else(|| Error::PreconditionViolated("no IC table found".into()))?;
    table.label = "best_ic".into();
    let pooling = qi(2) * &stats.top_total / qi(3);
    out.check("best_ic_is_pooling", "best IC W = 2/3 * top", welfare == pooling, &[("welfare", &welfare)]);
    let zeros = vec![Q::zero(); 2];
    let report = verify_mediator(&game, &table, &zeros)?;
    let expected = (qi(2) + qi(4) * eps / qi(3)) / (q(5, 2) + eps);
    out.check(
        "ratio",
        "best IC W / OPT = (2 + 4 eps/3) / (5/2 + eps)",
        report.ratio == expected,
        &[("ratio", &report.ratio), ("expected", &expected)],
    );
    out.record("best_ic", table, report);
    Ok(out)
}
