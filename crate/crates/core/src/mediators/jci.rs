//! Optimal mediators under jointly complete information.

use num_traits::{One, Zero};

use super::{informed_player, joint_cells, pair, require_two, MediatorSpec};
use crate::analysis::feasibility;
use crate::equilibrium::{naive_best_response, NaiveVariant};
use crate::error::{Error, Result};
use crate::game::ValidatedGame;
use crate::rational::{clamp_unit, qi, Lottery, Q};
use crate::strategy::InfoSet;

/// Probability of full sharing in the no-Amazon mixing branch.
pub fn no_amazon_threshold(informed_value: &Q, alpha_j: &Q) -> Result<Q> {
    if alpha_j.is_one() {
        return Err(Error::DegenerateAlpha);
    }
    Ok((qi(2) - qi(2) * informed_value - alpha_j) / (Q::one() - alpha_j))
}

/// Probability of full sharing in the Amazon mixing branch.
pub fn amazon_threshold(informed_value: &Q, alpha_j: &Q) -> Result<Q> {
    if alpha_j.is_one() {
        return Err(Error::DegenerateAlpha);
    }
    Ok((qi(3) - qi(6) * informed_value - alpha_j) / (Q::one() - alpha_j))
}

fn build(game: &ValidatedGame, values: &[Q], amazon: bool) -> Result<MediatorSpec> {
    require_two(game, values)?;
    let verdict = feasibility(game, values)?;
    if !verdict.necessary_conditions_pass {
        return Err(Error::InfeasibleBaseValues {
            violated: verdict.violated(),
        });
    }
    let informed = informed_player(values);
    let v_i = &values[informed];
    let cutoff = if amazon { Q::new(1.into(), 3.into()) } else { Q::new(1.into(), 2.into()) };
    let label = if amazon { "amazon" } else { "no_amazon" };

    let mut table = std::collections::BTreeMap::new();
    if *v_i <= cutoff {
        for (cells, types) in joint_cells(game) {
            let g = game.desired(types[0]);
            table.insert(cells, Lottery::certain(vec![g, g]));
        }
    } else {
        let naive = naive_best_response(game, informed, NaiveVariant::Jci)?;
        let raw = if amazon {
            amazon_threshold(v_i, &naive.alpha_j)?
        } else {
            no_amazon_threshold(v_i, &naive.alpha_j)?
        };
        // Feasibility keeps the threshold in [0, 1]; clamping only absorbs
        // the exact boundary.
        debug_assert!(raw >= Q::zero() && raw <= Q::one(), "threshold {raw} outside [0, 1]");
        let share_all = clamp_unit(raw);
        let responder = naive.responder;
        for (cells, types) in joint_cells(game) {
            let g = game.desired(types[0]);
            let fallback = naive
                .strategy
                .pure_action(&InfoSet::cell(cells[responder]))
                .expect("benchmark response is pure");
            table.insert(cells, Lottery::mix(&share_all, vec![g, g], pair(informed, g, fallback)));
        }
    }
    Ok(MediatorSpec {
        label: label.into(),
        table,
        transfer: None,
    })
}

/// Optimal mediator without an Amazon: full sharing when the larger base
/// value is at most 1/2, otherwise full information to the stronger player
/// and a mixture of full sharing and the benchmark response for the other.
pub fn mediator_no_amazon(game: &ValidatedGame, values: &[Q]) -> Result<MediatorSpec> {
    if game.amazon() {
        return Err(Error::PreconditionViolated("game has an Amazon".into()));
    }
    build(game, values, false)
}

/// Optimal mediator with an Amazon; the cutoff for full sharing is 1/3.
pub fn mediator_amazon(game: &ValidatedGame, values: &[Q]) -> Result<MediatorSpec> {
    if !game.amazon() {
        return Err(Error::PreconditionViolated("game has no Amazon".into()));
    }
    build(game, values, true)
}
