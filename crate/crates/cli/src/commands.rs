use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use datashare::analysis::{feasibility, opt_benchmark, render_report, verify_mediator};
use datashare::equilibrium::enumerate_pure_bne_within;
use datashare::mediators::{
    full_revelation, mediator_amazon, mediator_m1, mediator_m2, mediator_m3, mediator_no_amazon, mediator_nplayer,
    null_mediator, profile_mediator, transfer_mediator, MediatorSpec,
};
use datashare::equilibrium::enumerate_pure_bne;
use datashare::rational::{fmt_q, q};
use datashare::scenarios::{
    example_ic, example_ir, intro_example, nplayer_claim, segment_sharing, sharing_comparison_with, sweep,
    ScenarioResult,
};
use datashare::segments::SegmentStats;
use datashare::{validate_game, Error, GameSpec, ValidatedGame, Q};
use serde::Serialize;

use crate::{CliError, Outcome, ScenarioName, Values, ValuesArg, Verb};

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_game(path: &Path) -> Result<ValidatedGame, CliError> {
    Ok(validate_game(&GameSpec::from_json(&read(path)?)?)?)
}

fn values_for(game: &ValidatedGame, arg: ValuesArg) -> Result<Vec<Q>, CliError> {
    let values = arg.values.map(|v| v.0).unwrap_or_else(|| game.base_values().to_vec());
    if values.len() != game.num_players() {
        return Err(Error::BaseValueCount {
            expected: game.num_players(),
            found: values.len(),
        }
        .into());
    }
    Ok(values)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn build_mediator(game: &ValidatedGame, label: &str, values: &[Q]) -> Result<MediatorSpec, CliError> {
    let m = match label {
        "amazon" => mediator_amazon(game, values)?,
        "no_amazon" => mediator_no_amazon(game, values)?,
        "m1" => mediator_m1(game, values)?,
        "m2" => mediator_m2(game, values)?,
        "m3" => mediator_m3(game, values)?,
        "transfer" => transfer_mediator(game, values)?,
        "full_sharing" => full_revelation(game)?,
        "null" => null_mediator(game),
        "segment_sharing" => segment_sharing(game)?,
        "nplayer" | "equilibrium" => {
            let best = enumerate_pure_bne(game)?.into_iter().next().ok_or(Error::NoPureBne)?;
            if label == "nplayer" {
                mediator_nplayer(game, &best.profile())?
            } else {
                profile_mediator(game, &best.profile())?
            }
        }
        path => MediatorSpec::from_json(&read(Path::new(path))?)?,
    };
    Ok(m)
}

fn scenario(which: ScenarioName) -> Result<ScenarioResult, CliError> {
    let intro_params = |params: Option<Values>| -> Result<Vec<Q>, CliError> {
        let p = params.map(|v| v.0).unwrap_or_else(|| vec![q(11, 20), q(5, 20), q(3, 20), q(1, 20)]);
        if p.len() != 4 {
            return Err(Error::RegimeViolated("intro takes alpha,beta,gamma,delta".into()).into());
        }
        Ok(p)
    };
    let result = match which {
        ScenarioName::Intro { params, amazon } => {
            let p = intro_params(params)?;
            intro_example(&p[0], &p[1], &p[2], &p[3], amazon)?
        }
        ScenarioName::IntroAmazon { params } => {
            let p = intro_params(params)?;
            intro_example(&p[0], &p[1], &p[2], &p[3], true)?
        }
        ScenarioName::ExampleIr { eps } => example_ir(&eps)?,
        ScenarioName::ExampleIc { eps } => example_ic(&eps)?,
        ScenarioName::SharingComparison { which, params } => {
            let params = params.map(|v| v.0).unwrap_or_else(|| which.default_params());
            sharing_comparison_with(which, &params)?
        }
        ScenarioName::Nplayer { n, values } => {
            let values = values.map(|v| v.0).unwrap_or_else(|| vec![q(1, n as i64 + 1); n]);
            nplayer_claim(n, &values)?
        }
    };
    Ok(result)
}

pub(crate) fn run(verb: Verb) -> Result<Outcome, CliError> {
    match verb {
        Verb::Validate(arg) => {
            let game = load_game(&arg.game)?;
            let text = format!(
                "valid: {} types, {} goods, {} players, amazon {}\n",
                game.num_types(),
                game.num_goods(),
                game.num_players(),
                game.amazon()
            );
            Ok(Outcome {
                text,
                json: to_json(&serde_json::json!({
                    "valid": true,
                    "types": game.num_types(),
                    "goods": game.num_goods(),
                    "players": game.num_players(),
                    "amazon": game.amazon(),
                })),
                ok: true,
            })
        }
        Verb::Segments(arg) => {
            let game = load_game(&arg.game)?;
            let stats = SegmentStats::of(&game);
            let mut text = format!("jointly complete: {}\n", stats.table.jointly_complete);
            for (k, s) in stats.segments.iter().enumerate() {
                let names: Vec<&str> = s.types.iter().map(|&t| game.type_name(t)).collect();
                let second = s.second_good.map(|g| game.good_name(g)).unwrap_or("-");
                let _ = writeln!(
                    text,
                    "segment {k} [{}] prob {} top {} ({}) second {} ({}) {:?}",
                    names.join(","),
                    fmt_q(&s.prob),
                    game.good_name(s.top_good),
                    fmt_q(&s.top_weight),
                    second,
                    fmt_q(&s.second_weight),
                    s.class
                );
            }
            Ok(Outcome {
                text,
                json: to_json(&stats),
                ok: true,
            })
        }
        Verb::Feasible { game, values } => {
            let game = load_game(&game.game)?;
            let values = values_for(&game, values)?;
            let verdict = feasibility(&game, &values)?;
            let mut text = format!("feasible: {}\n", verdict.necessary_conditions_pass);
            for c in &verdict.conditions {
                let _ = writeln!(text, "  {:<5} {} ({})", c.holds, c.name, c.detail);
            }
            Ok(Outcome {
                text,
                json: to_json(&verdict),
                ok: verdict.necessary_conditions_pass,
            })
        }
        Verb::Mediate { game, mediator, values } => {
            let game = load_game(&game.game)?;
            let values = values_for(&game, values)?;
            let m = build_mediator(&game, &mediator, &values)?;
            let json = m.to_json();
            Ok(Outcome {
                text: format!("{json}\n"),
                json,
                ok: true,
            })
        }
        Verb::Verify { game, mediator, values } => {
            let game = load_game(&game.game)?;
            let values = values_for(&game, values)?;
            let m = build_mediator(&game, &mediator, &values)?;
            let report = verify_mediator(&game, &m, &values)?;
            Ok(Outcome {
                text: render_report(&report),
                json: to_json(&report),
                ok: report.certified(),
            })
        }
        Verb::Opt(arg) => {
            let game = load_game(&arg.game)?;
            let opt = opt_benchmark(&game);
            Ok(Outcome {
                text: format!("opt {}\n", fmt_q(&opt)),
                json: to_json(&serde_json::json!({ "opt": fmt_q(&opt) })),
                ok: true,
            })
        }
        Verb::Bne { game, budget } => {
            let game = load_game(&game.game)?;
            let found = enumerate_pure_bne_within(&game, budget)?;
            let mut text = format!("{} pure equilibria\n", found.len());
            for b in &found {
                let utilities: Vec<String> = b.utilities.iter().map(fmt_q).collect();
                let _ = writeln!(
                    text,
                    "  welfare {:<10} utilities ({}) actions {:?}",
                    fmt_q(&b.welfare),
                    utilities.join(", "),
                    b.actions
                );
            }
            Ok(Outcome {
                text,
                json: to_json(&found),
                ok: true,
            })
        }
        Verb::Scenario { which } => {
            let result = scenario(which)?;
            Ok(Outcome {
                text: result.render_text(),
                json: to_json(&result),
                ok: result.passed(),
            })
        }
        Verb::Sweep {
            profile,
            seed,
            count,
            out_dir,
        } => {
            let summary = sweep(profile, seed..seed.saturating_add(count));
            if let Some(dir) = &out_dir {
                fs::create_dir_all(dir).map_err(|source| CliError::Io {
                    path: dir.clone(),
                    source,
                })?;
                for f in &summary.failures {
                    if let Some(inst) = &f.instance {
                        let path = dir.join(format!("{profile}_{}.json", f.seed));
                        fs::write(&path, inst.game.to_json()).map_err(|source| CliError::Io { path, source })?;
                    }
                }
            }
            let mut text = format!("{profile}: {}/{} passed\n", summary.passed, summary.total);
            for f in &summary.failures {
                let _ = writeln!(text, "  seed {}: {}", f.seed, f.reasons.join("; "));
            }
            Ok(Outcome {
                text,
                json: to_json(&summary),
                ok: summary.failures.is_empty(),
            })
        }
    }
}
