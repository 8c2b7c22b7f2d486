//! Full revelation with many sellers and an outside competitor.

use num_traits::One;

use super::{build_game, Labeled, ScenarioResult, TypeRow};
use crate::analysis::verify_mediator;
use crate::error::{Error, Result};
use crate::game::ValidatedGame;
use crate::mediators::{full_revelation, mediator_amazon};
use crate::rational::{q, Q};

/// Types are bit strings of length `n`, seller `k` sees bit `k`, and each
/// type wants the good indexed by its number of ones. Uniform prior.
fn bit_game(n: usize) -> Result<ValidatedGame> {
    let count = 1usize << n;
    let name = |t: usize| format!("{t:0n$b}");
    let rows: Vec<TypeRow> = (0..count)
        .map(|t| TypeRow::new(name(t), format!("g{}", t.count_ones()), q(1, count as i64)))
        .collect();
    let partitions = (0..n)
        .map(|k| {
            let bit = n - 1 - k;
            (0..2)
                .map(|b| (0..count).filter(|t| (t >> bit) & 1 == b).map(name).collect())
                .collect()
        })
        .collect();
    build_game(&rows, partitions, true)
}

pub fn nplayer_claim(n: usize, values: &[Q]) -> Result<ScenarioResult> {
    if n < 2 {
        return Err(Error::TooFewPlayers(n));
    }
    if n > 8 {
        return Err(Error::RegimeViolated("at most 8 sellers (2^n types)".into()));
    }
    if values.len() != n {
        return Err(Error::BaseValueCount {
            expected: n,
            found: values.len(),
        });
    }
    let game = bit_game(n)?;
    let bound = Q::one() / Q::from_integer((n + 1).into());
    let mut named: Vec<(String, &Q)> = vec![("bound".to_string(), &bound)];
    named.extend(values.iter().enumerate().map(|(k, v)| (format!("v{}", k + 1), v)));
    let named: Vec<(&str, &Q)> = named.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    let mut out = ScenarioResult::new(&format!("nplayer_{n}"), &named);
    out.games.push(Labeled::new("bits", game.spec().clone()));

    let m = full_revelation(&game)?;
    let report = verify_mediator(&game, &m, values)?;
    let within = values.iter().all(|v| *v <= bound);
    out.check(
        "full_revelation_ic",
        "obedience is an equilibrium",
        report.ic.is_equilibrium,
        &[("max_gain", &report.ic.max_gain)],
    );
    out.check(
        "full_revelation_optimal",
        "W = OPT = n/(n+1)",
        report.welfare == report.opt && report.welfare == Q::one() - &bound,
        &[("welfare", &report.welfare), ("opt", &report.opt)],
    );
    out.check(
        "ir_iff_bound",
        "IR iff every v_i <= 1/(n+1)",
        report.ir() == within,
        &[("bound", &bound), ("utility", &report.utilities[0])],
    );
    if n == 2 && within {
        let two = mediator_amazon(&game, values)?;
        out.check(
            "two_seller_reduction",
            "the two-seller mediator equals full revelation",
            two.table == m.table,
            &[("bound", &bound)],
        );
    }
    out.record("full_sharing", m, report);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_sellers() {
        let r = nplayer_claim(3, &[q(1, 5), q(1, 5), q(1, 5)]).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        assert!(r.reports[0].value.certified());
        let r = nplayer_claim(3, &[q(3, 10), q(1, 10), q(1, 10)]).unwrap();
        assert!(r.passed());
        assert!(r.reports[0].value.ir_slacks[0] < Q::from_integer(0.into()));
    }

    #[test]
    fn two_sellers_match_the_constructed_mediator() {
        let r = nplayer_claim(2, &[q(1, 4), q(1, 3)]).unwrap();
        assert!(r.claim("two_seller_reduction").unwrap().pass);
    }
}
