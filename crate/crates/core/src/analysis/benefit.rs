//! Whether mediation strictly helps, and the two comparison inequalities
//! behind the Amazon feasibility bound.

use serde::{Deserialize, Serialize};

use crate::engine::{expected_utilities, utilities_of_plays, Play};
use crate::equilibrium::{best_response_to, enumerate_pure_bne, PureBne};
use crate::error::{Error, Result};
use crate::game::ValidatedGame;
use crate::mediators::{mediator_amazon, mediator_nplayer, obedient_profile, MediatorSpec};
use crate::rational::{fmt_q, serde_q, serde_q_vec, Q};
use crate::segments::build_segments;

use super::verify_mediator;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenefitVerdict {
    pub benefit: bool,
    /// Equilibria the witness was compared against.
    pub equilibria: Vec<PureBne>,
    pub witness: Option<MediatorSpec>,
    #[serde(with = "crate::rational::serde_q_opt")]
    pub witness_welfare: Option<Q>,
}

/// Under jointly complete information, decides whether some IR, IC mediator
/// beats the unmediated outcome.
///
/// Without an Amazon the benchmark is the best pure equilibrium; with one,
/// the witness must beat every pure equilibrium when built from its
/// utilities.
pub fn strict_benefit(game: &ValidatedGame) -> Result<BenefitVerdict> {
    if !build_segments(game).jointly_complete {
        return Err(Error::PreconditionViolated("information is not jointly complete".into()));
    }
    let equilibria = enumerate_pure_bne(game)?;
    let best = equilibria.first().ok_or(Error::NoPureBne)?.clone();
    if !game.amazon() {
        let witness = mediator_nplayer(game, &best.profile())?;
        let report = verify_mediator(game, &witness, &best.utilities)?;
        let benefit = report.certified() && report.welfare > best.welfare;
        return Ok(BenefitVerdict {
            benefit,
            equilibria,
            witness_welfare: benefit.then(|| report.welfare.clone()),
            witness: benefit.then_some(witness),
        });
    }
    if game.num_players() != 2 {
        return Err(Error::PreconditionViolated("the Amazon comparison is defined for two regular players".into()));
    }
    let mut benefit = true;
    let mut first = None;
    for e in &equilibria {
        let m = mediator_amazon(game, &e.utilities)?;
        let report = verify_mediator(game, &m, &e.utilities)?;
        if !(report.certified() && report.welfare > e.welfare) {
            benefit = false;
        }
        if first.is_none() {
            first = Some((m, report.welfare));
        }
    }
    let (witness, welfare) = first.expect("at least one equilibrium");
    Ok(BenefitVerdict {
        benefit,
        equilibria,
        witness: benefit.then_some(witness),
        witness_welfare: benefit.then_some(welfare),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheck {
    /// Player given full information in the hypothetical.
    pub informed: usize,
    #[serde(with = "serde_q_vec")]
    pub hypothetical: Vec<Q>,
    #[serde(with = "serde_q_vec")]
    pub obedient: Vec<Q>,
    /// Obedient minus hypothetical utility of the other player.
    #[serde(with = "serde_q")]
    pub responder_slack: Q,
    /// Hypothetical minus obedient welfare.
    #[serde(with = "serde_q")]
    pub welfare_slack: Q,
    pub responder_worse_off: bool,
    pub welfare_higher: bool,
}

/// For each choice of the informed player: that player always offers the desired
/// good while the other best-responds to its own cell and message. The
/// other player should be no better off, and welfare no lower, than under
/// obedience.
pub fn lemma_checks(game: &ValidatedGame, mediator: &MediatorSpec) -> Result<Vec<LemmaCheck>> {
    if game.num_players() != 2 || !game.amazon() || !build_segments(game).jointly_complete {
        return Err(Error::PreconditionViolated(
            "comparison needs two players, an Amazon and jointly complete information".into(),
        ));
    }
    let obedient = expected_utilities(game, &obedient_profile(game, mediator), Some(mediator))?;
    let welfare: Q = obedient.iter().sum();
    let desired = game.desired_all().to_vec();
    let mut out = Vec::new();
    for informed in 0..2 {
        let responder = 1 - informed;
        let mut plays = vec![Play::Absent; 2];
        plays[informed] = Play::ByType(&desired);
        let (reply, _) = best_response_to(game, &plays, responder, Some(mediator))?;
        plays[responder] = Play::Follow(&reply);
        let hypothetical = utilities_of_plays(game, &plays, Some(mediator))?;
        let responder_slack = &obedient[responder] - &hypothetical[responder];
        let welfare_slack = hypothetical.iter().sum::<Q>() - &welfare;
        out.push(LemmaCheck {
            informed,
            responder_worse_off: responder_slack >= Q::default(),
            welfare_higher: welfare_slack >= Q::default(),
            hypothetical,
            obedient: obedient.clone(),
            responder_slack,
            welfare_slack,
        });
    }
    Ok(out)
}

impl LemmaCheck {
    pub fn holds(&self) -> bool {
        self.responder_worse_off && self.welfare_higher
    }

    pub fn summary(&self) -> String {
        format!(
            "informed {}: responder slack {}, welfare slack {}",
            self.informed + 1,
            fmt_q(&self.responder_slack),
            fmt_q(&self.welfare_slack)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{validate_game, GameSpec};
    use crate::mediators::{full_revelation, profile_mediator};
    use crate::rational::q;
    use num_traits::Zero;

    fn intro(prior: [&str; 4], amazon: bool) -> ValidatedGame {
        let text = format!(
            r#"{{"types":["00","01","10","11"],"goods":["g0","g1"],
                "desired":{{"00":"g0","01":"g1","10":"g1","11":"g0"}},
                "prior":{{"00":"{}","01":"{}","10":"{}","11":"{}"}},
                "partitions":[[["00","01"],["10","11"]],[["00","10"],["01","11"]]],
                "amazon":{amazon}}}"#,
            prior[0], prior[1], prior[2], prior[3]
        );
        validate_game(&GameSpec::from_json(&text).unwrap()).unwrap()
    }

    #[test]
    fn missed_type_makes_sharing_pay() {
        let v = strict_benefit(&intro(["11/20", "1/4", "3/20", "1/20"], false)).unwrap();
        assert!(v.benefit);
        assert_eq!(v.witness_welfare, Some(q(1, 1)));
    }

    #[test]
    fn no_missed_type_without_amazon() {
        let v = strict_benefit(&intro(["1/2", "1/4", "1/4", "0"], false)).unwrap();
        assert!(!v.benefit);
        assert!(strict_benefit(&intro(["1/2", "1/4", "1/4", "0"], true)).unwrap().benefit);
    }

    #[test]
    fn full_sharing_makes_the_responder_comparison_tight() {
        let game = intro(["11/20", "1/4", "3/20", "1/20"], true);
        for c in lemma_checks(&game, &full_revelation(&game).unwrap()).unwrap() {
            assert!(c.holds());
            assert_eq!(c.responder_slack, Q::zero());
        }
    }

    #[test]
    fn equilibrium_mediator_satisfies_both() {
        let game = intro(["11/20", "1/4", "3/20", "1/20"], true);
        let e = crate::equilibrium::pure_bne_by_dynamics(&game).unwrap();
        let m = profile_mediator(&game, &e.profile()).unwrap();
        let checks = lemma_checks(&game, &m).unwrap();
        assert!(checks.iter().all(LemmaCheck::holds), "{checks:?}");
    }
}
