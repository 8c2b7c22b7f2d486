//! Necessary conditions on base values under jointly complete information.

use serde::{Deserialize, Serialize};

use crate::equilibrium::{naive_best_response, NaiveVariant};
use crate::error::{Error, Result};
use crate::game::ValidatedGame;
use crate::mediators::informed_player;
use crate::rational::{fmt_q, qi, Q};
use crate::segments::build_segments;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityVerdict {
    pub amazon: bool,
    /// Player with the larger base value.
    pub informed: usize,
    pub conditions: Vec<ConditionCheck>,
    /// Every necessary condition holds. Sufficiency is shown by building
    /// the mediator.
    pub necessary_conditions_pass: bool,
}

impl FeasibilityVerdict {
    pub fn violated(&self) -> Vec<String> {
        self.conditions
            .iter()
            .filter(|c| !c.holds)
            .map(|c| format!("{} ({})", c.name, c.detail))
            .collect()
    }
}

fn check(name: &str, lhs: &Q, rhs: &Q) -> ConditionCheck {
    ConditionCheck {
        name: name.to_string(),
        holds: lhs <= rhs,
        detail: format!("{} <= {}", fmt_q(lhs), fmt_q(rhs)),
    }
}

pub fn feasibility(game: &ValidatedGame, values: &[Q]) -> Result<FeasibilityVerdict> {
    if game.num_players() != 2 {
        return Err(Error::PreconditionViolated("feasibility is defined for two regular players".into()));
    }
    if values.len() != 2 {
        return Err(Error::BaseValueCount {
            expected: 2,
            found: values.len(),
        });
    }
    let i = informed_player(values);
    let j = 1 - i;
    let mut conditions = Vec::new();
    if game.amazon() {
        let cap = qi(1) - qi(2) * &values[i];
        conditions.push(check("weaker value <= 1 - 2 * stronger value", &values[j], &cap));
    } else {
        let sum: Q = values.iter().sum();
        conditions.push(check("v1 + v2 <= 1", &sum, &qi(1)));
    }
    if build_segments(game).jointly_complete {
        let naive = naive_best_response(game, i, NaiveVariant::Jci)?;
        conditions.push(check(
            "stronger value <= its utility against the benchmark response",
            &values[i],
            &naive.alpha_i,
        ));
    } else {
        conditions.push(ConditionCheck {
            name: "jointly complete information".into(),
            holds: false,
            detail: "some segment holds several types".into(),
        });
    }
    let pass = conditions.iter().all(|c| c.holds);
    Ok(FeasibilityVerdict {
        amazon: game.amazon(),
        informed: i,
        conditions,
        necessary_conditions_pass: pass,
    })
}
