//! Worked examples for each public operation, checked against the
//! enumeration oracles in `support`.

mod support;

use datashare::analysis::{feasibility, lemma_checks, lp_opt, opt_benchmark, strict_benefit, verify_mediator};
use datashare::engine::expected_utilities;
use datashare::equilibrium::{
    best_response, check_bne, enumerate_pure_bne, naive_best_response, pure_bne_by_dynamics, NaiveVariant,
};
use datashare::mediators::{
    amazon_threshold, full_revelation, induced_game, m1_top_role_probability, m2_pooling_probability, mediator_amazon,
    mediator_m1, mediator_m2, mediator_m3, mediator_no_amazon, mediator_nplayer, null_mediator, profile_mediator,
    transfer_mediator, MediatorSpec,
};
use datashare::rational::{q, qi};
use datashare::scenarios::{
    example_ic, example_ir, intro_example, nplayer_claim, random_instance, sharing_comparison_with, InstanceProfile,
    SharingSetting,
};
use datashare::segments::{build_segments, SegmentClass, SegmentStats};
use datashare::strategy::{InfoSet, Strategy};
use datashare::{validate_game, Error, GameSpec, Lottery, Q, ValidatedGame};
use num_traits::{One, Zero};
use support::*;

fn intro_prior() -> [Q; 4] {
    [q(11, 20), q(5, 20), q(3, 20), q(1, 20)]
}

fn intro(amazon: bool) -> ValidatedGame {
    validate_game(&intro_spec(intro_prior(), amazon)).unwrap()
}

fn dominant() -> Vec<Vec<usize>> {
    vec![vec![0, 1], vec![0, 1]]
}

fn profile(actions: &[Vec<usize>]) -> Vec<Strategy> {
    actions.iter().map(|a| Strategy::pure_by_cell(a)).collect()
}

/// One seller sees the type, the other nothing; `k` equally likely types
/// each wanting a different good.
fn one_sided(k: usize, amazon: bool) -> ValidatedGame {
    let types: Vec<String> = (0..k).map(|t| format!("t{t}")).collect();
    let spec = GameSpec {
        types: types.clone(),
        goods: (0..k).map(|t| format!("g{t}")).collect(),
        desired: (0..k).map(|t| (format!("t{t}"), format!("g{t}"))).collect(),
        prior: types.iter().map(|t| (t.clone(), q(1, k as i64))).collect(),
        partitions: vec![types.iter().map(|t| vec![t.clone()]).collect(), vec![types.clone()]],
        amazon,
        base_values: Vec::new(),
    };
    validate_game(&spec).unwrap()
}

fn ir_game(eps: Q) -> ValidatedGame {
    let r = example_ir(&eps).unwrap();
    validate_game(&r.games[0].value).unwrap()
}

/// Mass of types where both sellers are told the desired good.
fn both_right_mass(game: &ValidatedGame, m: &MediatorSpec) -> Q {
    game.support()
        .map(|t| {
            let g = game.desired(t);
            game.prior(t) * m.table[&game.cell_tuple(t)].prob(&vec![g, g])
        })
        .sum()
}

// ---- game model ----

#[test]
fn validation_cases() {
    assert!(validate_game(&intro_spec(intro_prior(), false)).is_ok());
    let spec = GameSpec::from_json(
        r#"{"types":["a","b","c"],"goods":["g"],"desired":{"a":"g","b":"g","c":"g"},
            "prior":{"a":"1/2","b":"1/2","c":"1/4"},"partitions":[[["a","b","c"]],[["a","b","c"]]]}"#,
    )
    .unwrap();
    assert!(matches!(validate_game(&spec), Err(Error::PriorNotNormalized { .. })));
    let single = GameSpec::from_json(
        r#"{"types":["w"],"goods":["g"],"desired":{"w":"g"},"prior":{"w":"1"},"partitions":[[["w"]],[["w"]]]}"#,
    )
    .unwrap();
    let game = validate_game(&single).unwrap();
    let seg = build_segments(&game);
    assert_eq!(seg.segments, vec![vec![0]]);
    let stats = SegmentStats::of(&game);
    assert_eq!(stats.segments[0].top_weight, Q::one());
    assert_eq!(stats.segments[0].second_weight, Q::zero());
}

#[test]
fn segment_structure() {
    let seg = build_segments(&intro(false));
    assert_eq!(seg.segments.len(), 4);
    assert!(seg.jointly_complete);

    let r = sharing_comparison_with(SharingSetting::WithAmazon, &[q(1, 5), q(4, 5)]).unwrap();
    let game = validate_game(&r.games[0].value).unwrap();
    let seg = build_segments(&game);
    assert!(!seg.jointly_complete);
    let goods: Vec<Vec<&str>> = seg
        .segments
        .iter()
        .map(|s| {
            let mut g: Vec<&str> = s.iter().map(|&t| game.good_name(game.desired(t))).collect();
            g.dedup();
            g
        })
        .collect();
    assert_eq!(goods, vec![vec!["g1"], vec!["g1", "g2"]]);

    // Within-segment weights: top = runner-up / eps.
    let stats = SegmentStats::of(&ir_game(q(1, 4)));
    for s in &stats.segments {
        assert_eq!(s.top_weight, q(4, 5));
        assert_eq!(s.second_weight, q(1, 5));
        assert_eq!(s.class, SegmentClass::Dominant);
    }

    // 3/5 <= 3/2 * 2/5, so the segment is balanced.
    let spec = GameSpec::from_json(
        r#"{"types":["a","b"],"goods":["x","y"],"desired":{"a":"x","b":"y"},
            "prior":{"a":"3/5","b":"2/5"},"partitions":[[["a","b"]],[["a","b"]]]}"#,
    )
    .unwrap();
    let stats = SegmentStats::of(&validate_game(&spec).unwrap());
    assert_eq!(stats.segments[0].class, SegmentClass::Balanced);
}

#[test]
fn expected_utilities_match_enumeration() {
    for (amazon, want) in [(false, [q(17, 40), q(21, 40)]), (true, [q(31, 120), q(37, 120)])] {
        let game = intro(amazon);
        let got = expected_utilities(&game, &profile(&dominant()), None).unwrap();
        assert_eq!(got, pure_utilities(game.spec(), &dominant()));
        assert_eq!(got, want.to_vec());
    }
    let game = intro(false);
    let m = full_revelation(&game).unwrap();
    let got = expected_utilities(&game, &datashare::mediators::obedient_profile(&game, &m), Some(&m)).unwrap();
    assert_eq!(got, vec![q(1, 2), q(1, 2)]);
    assert_eq!(got, obedient_utilities(game.spec(), &m));
}

// ---- strategy engine ----

#[test]
fn best_response_in_the_intro_game() {
    let game = intro(false);
    let (row, _) = best_response(&game, &profile(&dominant()), 0, None).unwrap();
    assert_eq!(row.pure_action(&InfoSet::cell(0)), Some(0));
    assert_eq!(row.pure_action(&InfoSet::cell(1)), Some(1));
}

#[test]
fn separating_game_best_response_pools_on_the_common_good() {
    // Pooling construction without Amazon: player 1 plays the segment's top
    // good; player 2's best reply is g1 everywhere.
    let r = sharing_comparison_with(SharingSetting::WithAmazon, &[q(1, 5), q(4, 5)]).unwrap();
    let spec = r.games.iter().find(|g| g.label == "base/no_amazon").unwrap().value.clone();
    let game = validate_game(&spec).unwrap();
    let g1 = spec.goods.iter().position(|g| g == "g1").unwrap();
    let g2 = spec.goods.iter().position(|g| g == "g2").unwrap();
    let tops = vec![g1, g2];
    let (reply, _) = best_response(&game, &[Strategy::pure_by_cell(&tops), Strategy::pure_by_cell(&[0])], 1, None).unwrap();
    assert_eq!(reply.pure_action(&InfoSet::cell(0)), Some(g1));
    let oracle_best = (0..spec.goods.len())
        .max_by_key(|&g| pure_utilities(&spec, &[tops.clone(), vec![g]])[1].clone())
        .unwrap();
    assert_eq!(oracle_best, g1);
}

#[test]
fn bne_checks() {
    let game = intro(false);
    let v = check_bne(&game, &profile(&dominant()), None).unwrap();
    assert!(v.is_equilibrium);
    assert!(v.max_gain.is_zero());

    let swapped = vec![vec![1, 0], vec![0, 1]];
    let v = check_bne(&game, &profile(&swapped), None).unwrap();
    assert!(!v.is_equilibrium);
    assert!(!pure_is_equilibrium(game.spec(), &swapped));
    // Largest conditional gain from changing the offer in one cell, by
    // enumeration.
    let spec = game.spec();
    let raw = raw(spec);
    let base = pure_utilities(spec, &swapped);
    let mut gain = Q::zero();
    for p in 0..2 {
        for c in 0..2 {
            let mass: Q = (0..4).filter(|&t| raw.cell_of[p][t] == c).map(|t| raw.prior[t].clone()).sum();
            for g in 0..2 {
                let mut dev = swapped.clone();
                dev[p][c] = g;
                gain = gain.max((&pure_utilities(spec, &dev)[p] - &base[p]) / &mass);
            }
        }
    }
    assert_eq!(v.max_gain, gain);
}

#[test]
fn naive_best_responses() {
    let game = one_sided(3, false);
    // The rival is always right; the uninformed seller picks the likeliest
    // good and is right a third of the time.
    let naive = naive_best_response(&game, 0, NaiveVariant::Jci).unwrap();
    assert_eq!(naive.alpha_j, q(1, 3));

    let game = ir_game(q(1, 4));
    let naive = naive_best_response(&game, 0, NaiveVariant::NoJci).unwrap();
    let common = game.spec().goods.iter().position(|g| g == "common").unwrap();
    assert_eq!(naive.strategy.pure_action(&InfoSet::cell(0)), Some(common));
    let stats = SegmentStats::of(&game);
    let tops: Vec<usize> = stats.segments.iter().map(|s| s.top_good).collect();
    let oracle = (0..game.num_goods())
        .max_by_key(|&g| pure_utilities(game.spec(), &[tops.clone(), vec![g]])[1].clone())
        .unwrap();
    assert_eq!(oracle, common);
    assert_eq!(naive.alpha_j, pure_utilities(game.spec(), &[tops, vec![common]])[1]);
}

#[test]
fn pure_equilibria_match_exhaustive_scan() {
    for amazon in [false, true] {
        let game = intro(amazon);
        let found = enumerate_pure_bne(&game).unwrap();
        let mut oracle = Vec::new();
        for code in 0..16usize {
            let actions = vec![vec![code & 1, (code >> 1) & 1], vec![(code >> 2) & 1, (code >> 3) & 1]];
            if pure_is_equilibrium(game.spec(), &actions) {
                oracle.push(actions);
            }
        }
        let mut listed: Vec<Vec<Vec<usize>>> = found.iter().map(|b| b.actions.clone()).collect();
        listed.sort();
        oracle.sort();
        assert_eq!(listed, oracle);
        for b in &found {
            assert_eq!(b.utilities, pure_utilities(game.spec(), &b.actions));
        }
        if !amazon {
            let dom = found.iter().find(|b| b.actions == dominant()).unwrap();
            assert_eq!(dom.utilities, vec![q(17, 40), q(21, 40)]);
        }
    }
    let single = GameSpec::from_json(
        r#"{"types":["w"],"goods":["g","h"],"desired":{"w":"g"},"prior":{"w":"1"},"partitions":[[["w"]],[["w"]]]}"#,
    )
    .unwrap();
    let found = enumerate_pure_bne(&validate_game(&single).unwrap()).unwrap();
    assert_eq!(found.len(), 1);
    assert_eq!(found[0].actions, vec![vec![0], vec![0]]);
}

#[test]
fn mixed_segment_seller_fixes_on_its_exclusive_good() {
    let r = sharing_comparison_with(SharingSetting::WithoutAmazon, &[q(42, 85), q(24, 85), q(19, 85)]).unwrap();
    for label in ["base/no_amazon", "base/amazon"] {
        let spec = r.games.iter().find(|g| g.label == label).unwrap().value.clone();
        let game = validate_game(&spec).unwrap();
        let g3 = spec.goods.iter().position(|g| g == "g3").unwrap();
        let bne = pure_bne_by_dynamics(&game).unwrap();
        assert_eq!(bne.actions[0][1], g3, "{label}");
        assert!(pure_is_equilibrium(&spec, &bne.actions));
    }
}

// ---- mediators ----

#[test]
fn no_amazon_mediator() {
    let game = intro(false);
    let m = mediator_no_amazon(&game, &[q(2, 5), q(2, 5)]).unwrap();
    assert_eq!(m, full_revelation(&game).map(|mut f| {
        f.label = m.label.clone();
        f
    }).unwrap());

    // Five equally likely goods: the uninformed seller is right 1/5 of the time.
    let game = one_sided(5, false);
    let values = [q(3, 5), Q::zero()];
    let m = mediator_no_amazon(&game, &values).unwrap();
    assert_eq!(both_right_mass(&game, &m), q(3, 4) + q(1, 4) * q(1, 5));
    let u = obedient_utilities(game.spec(), &m);
    assert_eq!(u, vec![q(3, 5), q(2, 5)]);
    assert!(obedience_gain(game.spec(), &m) <= Q::zero());
}

#[test]
fn amazon_mediator() {
    let game = intro(true);
    let m = mediator_amazon(&game, &[q(3, 10), q(1, 5)]).unwrap();
    assert_eq!(obedient_utilities(game.spec(), &m), vec![q(1, 3), q(1, 3)]);

    let game = one_sided(10, true);
    let values = [q(2, 5), Q::zero()];
    let m = mediator_amazon(&game, &values).unwrap();
    assert_eq!(both_right_mass(&game, &m), q(3, 5));
    let u = obedient_utilities(game.spec(), &m);
    assert_eq!(u.iter().sum::<Q>(), q(3, 5));
    assert_eq!(u[0], q(2, 5));
    assert!(obedience_gain(game.spec(), &m) <= Q::zero());

    // At the upper boundary the sharing weight would be negative.
    assert!(amazon_threshold(&q(1, 2), &q(1, 10)).unwrap() < Q::zero());
}

#[test]
fn segment_mediator_probabilities() {
    assert_eq!(m1_top_role_probability(&q(27, 100), &q(3, 5), &q(2, 5)), q(7, 10));
    assert_eq!(m1_top_role_probability(&q(1, 5), &q(3, 5), &q(2, 5)), Q::zero());
    assert_eq!(m2_pooling_probability(&q(1, 4), &q(3, 5), &q(1, 4)), Q::zero());
}

#[test]
fn m2_on_the_tightness_instance() {
    let game = ir_game(q(1, 4));
    let stats = SegmentStats::of(&game);
    let values = [&stats.top_total / qi(2), Q::zero()];
    assert_eq!(values[0], q(2, 5));
    let m = mediator_m2(&game, &values).unwrap();
    let common = game.spec().goods.iter().position(|g| g == "common").unwrap();
    for (cells, lottery) in &m.table {
        let top = stats.segments[cells[0]].top_good;
        assert_eq!(*lottery, Lottery::certain(vec![top, common]));
    }
    assert_eq!(obedient_utilities(game.spec(), &m).iter().sum::<Q>(), q(1, 2));
    assert!(obedience_gain(game.spec(), &m) <= Q::zero());
}

#[test]
fn combined_mediator_reduces_to_its_parts() {
    for (profile, seed) in [(InstanceProfile::NojciS1, 3), (InstanceProfile::NojciS2, 4)] {
        let inst = random_instance(seed, profile).unwrap();
        let game = inst.validated().unwrap();
        let m3 = mediator_m3(&game, inst.values()).unwrap();
        let part = if profile == InstanceProfile::NojciS1 {
            mediator_m1(&game, inst.values()).unwrap()
        } else {
            mediator_m2(&game, inst.values()).unwrap()
        };
        assert_eq!(m3.table, part.table, "{profile}");
    }
    let inst = random_instance(5, InstanceProfile::NojciMixed).unwrap();
    let game = inst.validated().unwrap();
    let m3 = mediator_m3(&game, inst.values()).unwrap();
    assert!(obedience_gain(game.spec(), &m3) <= Q::zero());
    let u = obedient_utilities(game.spec(), &m3);
    assert!(u.iter().zip(inst.values()).all(|(u, v)| u >= v));
}

#[test]
fn nplayer_mediator() {
    let game = intro(false);
    let m = mediator_nplayer(&game, &profile(&dominant())).unwrap();
    let base = pure_utilities(game.spec(), &dominant());
    let u = obedient_utilities(game.spec(), &m);
    assert_eq!(&u[0] - &base[0], q(1, 40));
    assert_eq!(&u[1] - &base[1], q(1, 40));
    let eq = profile_mediator(&game, &profile(&dominant())).unwrap();
    let changed: Vec<&Vec<usize>> = m.table.keys().filter(|k| m.table[*k] != eq.table[*k]).collect();
    assert_eq!(changed, vec![&vec![1, 1]]);

    // A seller who is always right leaves nothing to fix.
    let game = one_sided(3, false);
    let e = profile(&[vec![0, 1, 2], vec![0]]);
    let m = mediator_nplayer(&game, &e).unwrap();
    assert_eq!(m.table, profile_mediator(&game, &e).unwrap().table);
}

#[test]
fn transfer_mediator_examples() {
    let game = intro(true);
    let values = [q(2, 5), q(1, 5)];
    let m = transfer_mediator(&game, &values).unwrap();
    assert_eq!(m.transfer.as_ref().unwrap().amount, q(1, 15));
    let report = verify_mediator(&game, &m, &values).unwrap();
    assert_eq!(report.utilities, vec![q(2, 5), q(4, 15)]);
    let m = transfer_mediator(&game, &[q(1, 3), q(1, 3)]).unwrap();
    assert!(m.transfer.is_none());

    // Segments with top weight 9/10.
    let spec = GameSpec::from_json(
        r#"{"types":["a","b","c","d"],"goods":["x","y","z"],
            "desired":{"a":"x","b":"z","c":"y","d":"z"},
            "prior":{"a":"9/20","b":"1/20","c":"9/20","d":"1/20"},
            "partitions":[[["a","b"],["c","d"]],[["a","b"],["c","d"]]],"amazon":true}"#,
    )
    .unwrap();
    let game = validate_game(&spec).unwrap();
    let m = transfer_mediator(&game, &[q(2, 5), q(1, 5)]).unwrap();
    assert_eq!(m.transfer.unwrap().amount, q(1, 10));
}

#[test]
fn induced_information_sets() {
    let game = intro(false);
    let induced = induced_game(&game, &null_mediator(&game)).unwrap();
    for p in 0..2 {
        assert_eq!(induced.info_sets[p].len(), game.partition(p).num_cells());
    }
    let induced = induced_game(&game, &full_revelation(&game).unwrap()).unwrap();
    for p in 0..2 {
        assert_eq!(induced.info_sets[p].len(), 4);
    }
}

// ---- analysis ----

#[test]
fn feasibility_cases() {
    let v = feasibility(&intro(false), &[q(3, 5), q(1, 2)]).unwrap();
    assert!(!v.necessary_conditions_pass);
    let v = feasibility(&intro(true), &[q(2, 5), q(1, 4)]).unwrap();
    assert!(!v.necessary_conditions_pass);
    let v = feasibility(&intro(true), &[q(31, 120), q(37, 120)]).unwrap();
    assert!(v.necessary_conditions_pass);
}

#[test]
fn lp_cases_against_vertex_enumeration() {
    let s = lp_opt(&[q(3, 10), q(3, 10)]).unwrap();
    assert_eq!((s.value.clone(), s.beta.clone()), (q(2, 3), Q::one()));
    let s = lp_opt(&[q(2, 5), q(1, 10)]).unwrap();
    assert_eq!((s.value.clone(), s.beta.clone(), s.beta_i.clone(), s.beta_j.clone()), (q(3, 5), q(3, 5), q(2, 5), Q::zero()));
    assert_eq!(lp_opt(&[q(1, 3), q(1, 3)]).unwrap().value, q(2, 3));
    for v in [[q(3, 10), q(3, 10)], [q(2, 5), q(1, 10)], [q(1, 3), q(1, 3)]] {
        assert_eq!(Some(lp_opt(&v).unwrap().value), lp_by_vertices(&v[0], &v[1]));
    }
}

#[test]
fn opt_benchmarks() {
    assert_eq!(opt_benchmark(&intro(true)), q(2, 3));
    assert_eq!(opt_benchmark(&intro(false)), Q::one());
    let game = ir_game(q(1, 4));
    assert_eq!(opt_benchmark(&game), q(8, 15));
    assert_eq!(opt(game.spec()), q(8, 15));
}

#[test]
fn verification_reports() {
    let inst = random_instance(1, InstanceProfile::JciA).unwrap();
    let game = inst.validated().unwrap();
    let m = mediator_amazon(&game, inst.values()).unwrap();
    let r = verify_mediator(&game, &m, inst.values()).unwrap();
    assert!(r.certified());
    assert_eq!(r.ic.is_equilibrium, obedience_gain(game.spec(), &m) <= Q::zero());
    let top = inst.values().iter().max().unwrap();
    if *top > q(1, 3) {
        assert_eq!(r.welfare, Q::one() - top);
    }

    let game = ir_game(q(1, 4));
    let m = mediator_m2(&game, &[q(2, 5), Q::zero()]).unwrap();
    assert_eq!(verify_mediator(&game, &m, &[q(2, 5), Q::zero()]).unwrap().ratio, q(15, 16));

    // Recommending the equilibrium itself is IC and exactly IR.
    let game = intro(false);
    let eq = profile_mediator(&game, &profile(&dominant())).unwrap();
    let r = verify_mediator(&game, &eq, &[q(17, 40), q(21, 40)]).unwrap();
    assert!(r.ic.is_equilibrium);
    assert!(r.ir_slacks.iter().all(Zero::is_zero));
}

#[test]
fn strict_benefit_cases() {
    let v = strict_benefit(&intro(false)).unwrap();
    assert!(v.benefit);
    let witness = v.witness.unwrap();
    let base = pure_utilities(intro(false).spec(), &dominant());
    let u = obedient_utilities(intro(false).spec(), &witness);
    assert_eq!(&u[0] - &base[0], q(1, 40));

    let flat = [q(1, 2), q(1, 4), q(1, 4), Q::zero()];
    let no = strict_benefit(&validate_game(&intro_spec(flat.clone(), false)).unwrap()).unwrap();
    assert!(!no.benefit);
    let yes = strict_benefit(&validate_game(&intro_spec(flat, true)).unwrap()).unwrap();
    assert!(yes.benefit);
}

#[test]
fn lemma_check_cases() {
    let inst = random_instance(1, InstanceProfile::JciA).unwrap();
    let game = inst.validated().unwrap();
    let m = mediator_amazon(&game, inst.values()).unwrap();
    assert!(lemma_checks(&game, &m).unwrap().iter().all(|c| c.holds()));

    let game = intro(true);
    let full = full_revelation(&game).unwrap();
    for c in lemma_checks(&game, &full).unwrap() {
        assert!(c.responder_slack.is_zero());
    }
    let checks = lemma_checks(&game, &null_mediator(&game)).unwrap();
    assert_eq!(checks.len(), 2);
}

// ---- scenarios ----

#[test]
fn scenario_examples() {
    let [a, b, c, d] = intro_prior();
    let r = intro_example(&a, &b, &c, &d, false).unwrap();
    assert!(r.passed());
    assert_eq!(r.report("equilibrium").unwrap().utilities, vec![q(17, 40), q(21, 40)]);
    let r = intro_example(&a, &b, &c, &d, true).unwrap();
    assert!(r.passed());
    assert_eq!(r.report("equilibrium").unwrap().utilities, vec![q(31, 120), q(37, 120)]);

    let ratios: Vec<Q> = [q(1, 2), q(1, 4), q(1, 10), q(1, 100)]
        .iter()
        .map(|e| example_ir(e).unwrap().reports[0].value.ratio.clone())
        .collect();
    assert!(ratios.windows(2).all(|w| w[0] >= w[1]));
    assert!(ratios.iter().all(|r| *r > q(3, 4)));
    assert_eq!(example_ic(&q(1, 2)).unwrap().reports[0].value.ratio, q(8, 9));

    assert!(nplayer_claim(3, &[q(1, 5), q(1, 5), q(1, 5)]).unwrap().reports[0].value.certified());
    assert!(!nplayer_claim(3, &[q(3, 10), q(1, 10), q(1, 10)]).unwrap().reports[0].value.ir());
}

#[test]
fn random_instances_are_deterministic() {
    for p in InstanceProfile::ALL {
        let a = random_instance(7, p).unwrap();
        let b = random_instance(7, p).unwrap();
        assert_eq!(a.game.to_json(), b.game.to_json());
    }
    let inst = random_instance(2, InstanceProfile::NojciS2).unwrap();
    let stats = SegmentStats::of(&inst.validated().unwrap());
    assert!(stats.live().all(|(_, s)| &s.top_weight * qi(2) > &s.second_weight * qi(3)));
}
