//! The two-seller, four-type example with a missed consumer type.

use num_traits::{One, Signed};

use super::{build_game, names, Labeled, ScenarioResult, TypeRow};
use crate::analysis::verify_mediator;
use crate::engine::expected_utilities;
use crate::equilibrium::check_bne;
use crate::error::{Error, Result};
use crate::game::ValidatedGame;
use crate::mediators::{full_revelation, mediator_amazon, mediator_no_amazon, profile_mediator, reveal_on_miss};
use crate::rational::{max_q, min_q, q, qi, Q};
use crate::strategy::Strategy;

/// Types `00, 01, 10, 11` with probabilities `alpha, beta, gamma, delta`.
/// The row seller sees the first digit and the column seller the second;
/// types `00` and `11` want `g0`, the others `g1`.
pub fn intro_game(alpha: &Q, beta: &Q, gamma: &Q, delta: &Q, amazon: bool) -> Result<ValidatedGame> {
    let rows = [
        TypeRow::new("00", "g0", alpha.clone()),
        TypeRow::new("01", "g1", beta.clone()),
        TypeRow::new("10", "g1", gamma.clone()),
        TypeRow::new("11", "g0", delta.clone()),
    ];
    let partitions = vec![
        vec![names(&["00", "01"]), names(&["10", "11"])],
        vec![names(&["00", "10"]), names(&["01", "11"])],
    ];
    build_game(&rows, partitions, amazon)
}

fn check_regime(alpha: &Q, beta: &Q, gamma: &Q, delta: &Q) -> Result<()> {
    let sum = alpha + beta + gamma + delta;
    if !sum.is_one() {
        return Err(Error::RegimeViolated(format!("probabilities sum to {sum}")));
    }
    let two = qi(2);
    let ordered = *alpha > &two * beta && &two * beta >= &two * gamma && &two * gamma > qi(4) * delta;
    if !ordered || delta.is_negative() {
        return Err(Error::RegimeViolated(
            "need alpha > 2 beta >= 2 gamma > 4 delta >= 0 so both sellers have dominant strategies".into(),
        ));
    }
    Ok(())
}

pub fn intro_example(alpha: &Q, beta: &Q, gamma: &Q, delta: &Q, amazon: bool) -> Result<ScenarioResult> {
    check_regime(alpha, beta, gamma, delta)?;
    let game = intro_game(alpha, beta, gamma, delta, amazon)?;
    let mut out = ScenarioResult::new(
        if amazon { "intro_amazon" } else { "intro" },
        &[("alpha", alpha), ("beta", beta), ("gamma", gamma), ("delta", delta)],
    );
    out.games.push(Labeled::new("intro", game.spec().clone()));

    // Each seller offers the more likely good in each cell.
    let profile = vec![Strategy::pure_by_cell(&[0, 1]), Strategy::pure_by_cell(&[0, 1])];
    let verdict = check_bne(&game, &profile, None)?;
    out.check(
        "dominant_profile_is_equilibrium",
        "max deviation gain = 0",
        verdict.is_equilibrium,
        &[("max_gain", &verdict.max_gain)],
    );
    let eq = expected_utilities(&game, &profile, None)?;
    let expected = if amazon {
        [alpha / qi(3) + gamma / qi(2), alpha / qi(3) + beta / qi(2)]
    } else {
        [alpha / qi(2) + gamma, alpha / qi(2) + beta]
    };
    out.check(
        "equilibrium_payoffs",
        if amazon {
            "u = (alpha/3 + gamma/2, alpha/3 + beta/2)"
        } else {
            "u = (alpha/2 + gamma, alpha/2 + beta)"
        },
        eq[..] == expected[..],
        &[("u1", &eq[0]), ("u2", &eq[1])],
    );

    let m = profile_mediator(&game, &profile)?;
    let report = verify_mediator(&game, &m, &eq)?;
    out.record("equilibrium", m, report);

    let m = reveal_on_miss(&game, &profile)?;
    let report = verify_mediator(&game, &m, &eq)?;
    let share = if amazon { delta / qi(3) } else { delta / qi(2) };
    let gains: Vec<Q> = report.utilities.iter().zip(&eq).map(|(u, e)| u - e).collect();
    out.check(
        "missed_type_gain",
        if amazon {
            "certified and each gain = delta/3"
        } else {
            "certified and each gain = delta/2"
        },
        report.certified() && gains.iter().all(|g| *g == share),
        &[("gain1", &gains[0]), ("gain2", &gains[1])],
    );
    out.record("reveal_on_miss", m, report);

    let m = full_revelation(&game)?;
    let report = verify_mediator(&game, &m, &eq)?;
    let each = if amazon { q(1, 3) } else { q(1, 2) };
    out.check(
        "full_sharing_payoffs",
        if amazon { "u = (1/3, 1/3)" } else { "u = (1/2, 1/2)" },
        report.utilities.iter().all(|u| *u == each),
        &[("u1", &report.utilities[0]), ("u2", &report.utilities[1])],
    );
    if amazon {
        out.check(
            "full_sharing_optimal",
            "opt = 2/3 and ratio = 1",
            report.opt == q(2, 3) && report.ratio.is_one(),
            &[("opt", &report.opt), ("ratio", &report.ratio)],
        );
        if beta == gamma {
            out.check(
                "full_sharing_beats_equilibrium",
                "1/3 > alpha/3 + beta/2",
                eq.iter().all(|u| *u < each),
                &[("u1", &eq[0]), ("u2", &eq[1])],
            );
        }
    } else {
        let column = &report.ir_slacks[1];
        let threshold = alpha / qi(2) + beta;
        out.check(
            "full_sharing_column_slack",
            "column slack < 0 iff alpha/2 + beta > 1/2",
            column.is_negative() == (threshold > q(1, 2)),
            &[("column_slack", column), ("alpha/2+beta", &threshold)],
        );
    }
    out.record("full_sharing", m, report);

    let m = if amazon {
        mediator_amazon(&game, &eq)?
    } else {
        mediator_no_amazon(&game, &eq)?
    };
    let report = verify_mediator(&game, &m, &eq)?;
    let target = if amazon {
        min_q(&q(2, 3), &(Q::one() - max_q(&eq[0], &eq[1]))).clone()
    } else {
        Q::one()
    };
    out.check(
        "constructed_mediator",
        if amazon {
            "certified and W = min(2/3, 1 - max v)"
        } else {
            "certified and W = 1"
        },
        report.certified() && report.welfare == target,
        &[("welfare", &report.welfare), ("target", &target)],
    );
    out.record(if amazon { "amazon" } else { "no_amazon" }, m, report);
    Ok(out)
}
