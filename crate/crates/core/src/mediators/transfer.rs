//! Full sharing paid for with a side payment.

use num_traits::{Signed, Zero};

use super::{informed_player, joint_cells, require_two, MediatorSpec, Transfer};
use crate::error::{Error, Result};
use crate::game::ValidatedGame;
use crate::rational::{fmt_q, max_q, qi, Lottery, Q};
use crate::segments::SegmentStats;

/// Pools both players on the best available guess and has the weaker player
/// pay the stronger one whatever the stronger base value exceeds the pooled share.
pub fn transfer_mediator(game: &ValidatedGame, values: &[Q]) -> Result<MediatorSpec> {
    require_two(game, values)?;
    if !game.amazon() {
        return Err(Error::PreconditionViolated("transfers are analysed with an Amazon".into()));
    }
    let stats = SegmentStats::of(game);
    let share = if stats.table.jointly_complete {
        Q::new(1.into(), 3.into())
    } else {
        if let Some((k, _)) = stats
            .live()
            .find(|(_, s)| s.top_weight <= &s.second_weight * qi(3))
        {
            return Err(Error::PreconditionViolated(format!(
                "segment {k} does not have a top good more than three times as likely as the runner-up"
            )));
        }
        &stats.top_total / qi(3)
    };
    let sum: Q = values.iter().sum();
    let bound = &share * qi(2);
    if sum > bound {
        return Err(Error::InfeasibleBaseValues {
            violated: vec![format!("v1 + v2 = {} exceeds {}", fmt_q(&sum), fmt_q(&bound))],
        });
    }
    let i = informed_player(values);
    let amount = max_q(&(&values[i] - &share), &Q::zero()).clone();
    let table = joint_cells(game)
        .into_iter()
        .zip(&stats.segments)
        .map(|((cells, _), info)| (cells, Lottery::certain(vec![info.top_good, info.top_good])))
        .collect();
    Ok(MediatorSpec {
        label: "transfer".into(),
        table,
        transfer: amount.is_positive().then(|| Transfer {
            payer: 1 - i,
            payee: i,
            amount,
        }),
    })
}
