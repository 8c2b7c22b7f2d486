//! Closed-form optimum of the welfare program with an Amazon.
//!
//! Variables are the probabilities that only the stronger player, only the
//! weaker player, or both are recommended the desired good.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mediators::informed_player;
use crate::rational::{fmt_q, q, qi, serde_q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpSolution {
    pub informed: usize,
    #[serde(with = "serde_q")]
    pub beta_i: Q,
    #[serde(with = "serde_q")]
    pub beta_j: Q,
    #[serde(with = "serde_q")]
    pub beta: Q,
    #[serde(with = "serde_q")]
    pub value: Q,
}

pub fn lp_objective(beta_i: &Q, beta_j: &Q, beta: &Q) -> Q {
    (beta_i + beta_j) / qi(2) + qi(2) * beta / qi(3)
}

pub fn lp_opt(values: &[Q]) -> Result<LpSolution> {
    if values.len() != 2 {
        return Err(Error::BaseValueCount {
            expected: 2,
            found: values.len(),
        });
    }
    let i = informed_player(values);
    let (v_i, v_j) = (&values[i], &values[1 - i]);
    let infeasible = || Error::LpInfeasible {
        v1: fmt_q(&values[0]),
        v2: fmt_q(&values[1]),
    };
    if *v_i > q(1, 2) || *v_j > qi(1) - qi(2) * v_i {
        return Err(infeasible());
    }
    let (beta_i, beta) = if *v_i <= q(1, 3) {
        (Q::zero(), qi(1))
    } else {
        (qi(6) * v_i - qi(2), qi(3) - qi(6) * v_i)
    };
    let beta_j = Q::zero();
    let value = lp_objective(&beta_i, &beta_j, &beta);
    Ok(LpSolution {
        informed: i,
        beta_i,
        beta_j,
        beta,
        value,
    })
}
