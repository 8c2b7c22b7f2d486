//! Mediators built from an unmediated equilibrium, and full revelation.

use std::collections::BTreeMap;

use super::{joint_cells, MediatorSpec};
use crate::equilibrium::check_bne;
use crate::error::{Error, Result};
use crate::game::ValidatedGame;
use crate::rational::{fmt_q, Lottery};
use crate::segments::build_segments;
use crate::strategy::{InfoSet, Strategy};

fn require_jci(game: &ValidatedGame) -> Result<()> {
    if !build_segments(game).jointly_complete {
        return Err(Error::PreconditionViolated("information is not jointly complete".into()));
    }
    Ok(())
}

/// Recommends the desired good to every player.
pub fn full_revelation(game: &ValidatedGame) -> Result<MediatorSpec> {
    require_jci(game)?;
    let n = game.num_players();
    Ok(MediatorSpec {
        label: "full_sharing".into(),
        table: joint_cells(game)
            .into_iter()
            .map(|(cells, types)| (cells, Lottery::certain(vec![game.desired(types[0]); n])))
            .collect(),
        transfer: None,
    })
}

/// Draws the profile's actions and, whenever nobody would offer the desired
/// good, recommends it to everyone instead.
pub fn reveal_on_miss(game: &ValidatedGame, profile: &[Strategy]) -> Result<MediatorSpec> {
    require_jci(game)?;
    if profile.len() != game.num_players() {
        return Err(Error::PlayerCountMismatch {
            expected: game.num_players(),
            found: profile.len(),
        });
    }
    let n = game.num_players();
    let mut table = BTreeMap::new();
    for (cells, types) in joint_cells(game) {
        let desired = game.desired(types[0]);
        let parts: Vec<Lottery<usize>> = profile
            .iter()
            .enumerate()
            .map(|(p, s)| s.lookup(p, &InfoSet::cell(cells[p])).cloned())
            .collect::<Result<_>>()?;
        let joint = Lottery::product(&parts);
        let lottery = joint.map(|actions| {
            if actions.contains(&desired) {
                actions.clone()
            } else {
                vec![desired; n]
            }
        });
        table.insert(cells, lottery);
    }
    Ok(MediatorSpec {
        label: "reveal_on_miss".into(),
        table,
        transfer: None,
    })
}

/// The optimal mediator for any number of players without an Amazon,
/// anchored at an equilibrium of the unmediated game.
pub fn mediator_nplayer(game: &ValidatedGame, equilibrium: &[Strategy]) -> Result<MediatorSpec> {
    if game.amazon() {
        return Err(Error::PreconditionViolated("game has an Amazon".into()));
    }
    require_jci(game)?;
    let verdict = check_bne(game, equilibrium, None)?;
    if !verdict.is_equilibrium {
        return Err(Error::NotABne {
            max_gain: fmt_q(&verdict.max_gain),
        });
    }
    let mut m = reveal_on_miss(game, equilibrium)?;
    m.label = "nplayer".into();
    Ok(m)
}
