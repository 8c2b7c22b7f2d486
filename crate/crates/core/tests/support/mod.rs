//! Independent reference computations for the integration tests.
//!
//! Everything here works from the raw JSON-level structures and plain
//! enumeration, sharing no code with the engine beyond the data types.

#![allow(dead_code)]

use std::collections::BTreeMap;

use datashare::mediators::MediatorSpec;
use datashare::rational::q;
use datashare::{GameSpec, Q};
use num_traits::{One, Signed, Zero};

/// Index form of a game spec, rebuilt by hand.
pub struct Raw {
    pub desired: Vec<usize>,
    pub prior: Vec<Q>,
    /// `cell_of[player][type]`.
    pub cell_of: Vec<Vec<usize>>,
    pub goods: usize,
    pub amazon: bool,
}

pub fn raw(spec: &GameSpec) -> Raw {
    let type_pos = |name: &str| spec.types.iter().position(|t| t == name).expect("known type");
    let desired = spec
        .types
        .iter()
        .map(|t| spec.goods.iter().position(|g| *g == spec.desired[t]).expect("known good"))
        .collect();
    let prior = spec.types.iter().map(|t| spec.prior[t].clone()).collect();
    let cell_of = spec
        .partitions
        .iter()
        .map(|cells| {
            let mut of = vec![usize::MAX; spec.types.len()];
            for (c, cell) in cells.iter().enumerate() {
                for t in cell {
                    of[type_pos(t)] = c;
                }
            }
            of
        })
        .collect();
    Raw {
        desired,
        prior,
        cell_of,
        goods: spec.goods.len(),
        amazon: spec.amazon,
    }
}

impl Raw {
    pub fn players(&self) -> usize {
        self.cell_of.len()
    }

    pub fn types(&self) -> usize {
        self.desired.len()
    }

    pub fn cells(&self, t: usize) -> Vec<usize> {
        self.cell_of.iter().map(|of| of[t]).collect()
    }

    /// Payoff to each seller when `offers` are made to type `t`, weighted
    /// by nothing.
    pub fn split(&self, t: usize, offers: &[usize]) -> Vec<Q> {
        let right = offers.iter().filter(|&&g| g == self.desired[t]).count();
        let sellers = right + usize::from(self.amazon);
        offers
            .iter()
            .map(|&g| {
                if g == self.desired[t] {
                    q(1, sellers as i64)
                } else {
                    Q::zero()
                }
            })
            .collect()
    }
}

/// Expected utilities when each seller plays `actions[player][cell]`.
pub fn pure_utilities(spec: &GameSpec, actions: &[Vec<usize>]) -> Vec<Q> {
    let r = raw(spec);
    let mut out = vec![Q::zero(); r.players()];
    for t in 0..r.types() {
        let offers: Vec<usize> = (0..r.players()).map(|p| actions[p][r.cell_of[p][t]]).collect();
        for (p, s) in r.split(t, &offers).into_iter().enumerate() {
            out[p] += &r.prior[t] * s;
        }
    }
    out
}

/// Whether `actions` is a pure equilibrium, by trying every single-cell
/// deviation.
pub fn pure_is_equilibrium(spec: &GameSpec, actions: &[Vec<usize>]) -> bool {
    let base = pure_utilities(spec, actions);
    let goods = spec.goods.len();
    for p in 0..actions.len() {
        for c in 0..actions[p].len() {
            for g in 0..goods {
                let mut dev = actions.to_vec();
                dev[p][c] = g;
                if pure_utilities(spec, &dev)[p] > base[p] {
                    return false;
                }
            }
        }
    }
    true
}

/// Obedient utilities under a mediator, before transfers.
pub fn obedient_utilities(spec: &GameSpec, mediator: &MediatorSpec) -> Vec<Q> {
    let r = raw(spec);
    let mut out = vec![Q::zero(); r.players()];
    for t in 0..r.types() {
        let lottery = &mediator.table[&r.cells(t)];
        for (rec, p_rec) in lottery.iter() {
            for (p, s) in r.split(t, rec).into_iter().enumerate() {
                out[p] += &r.prior[t] * p_rec * s;
            }
        }
    }
    out
}

/// Largest conditional gain any seller gets by disobeying at some (cell,
/// recommendation) pair.
pub fn obedience_gain(spec: &GameSpec, mediator: &MediatorSpec) -> Q {
    let r = raw(spec);
    // (player, cell, recommended good) -> mass and value of each good.
    let mut interim: BTreeMap<(usize, usize, usize), (Q, Vec<Q>)> = BTreeMap::new();
    for t in 0..r.types() {
        let lottery = &mediator.table[&r.cells(t)];
        for (rec, p_rec) in lottery.iter() {
            let weight = &r.prior[t] * p_rec;
            if weight.is_zero() {
                continue;
            }
            for p in 0..r.players() {
                let entry = interim
                    .entry((p, r.cell_of[p][t], rec[p]))
                    .or_insert_with(|| (Q::zero(), vec![Q::zero(); r.goods]));
                entry.0 += &weight;
                for (g, slot) in entry.1.iter_mut().enumerate() {
                    let mut offers = rec.clone();
                    offers[p] = g;
                    *slot += &weight * &r.split(t, &offers)[p];
                }
            }
        }
    }
    interim
        .iter()
        .map(|(&(_, _, obeyed), (mass, values))| (values.iter().max().unwrap() - &values[obeyed]) / mass)
        .max()
        .unwrap_or_else(Q::zero)
}

/// OPT by enumerating every offer tuple over all goods for every joint cell.
pub fn opt(spec: &GameSpec) -> Q {
    let r = raw(spec);
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for t in 0..r.types() {
        groups.entry(r.cells(t)).or_default().push(t);
    }
    let n = r.players();
    let total_tuples = r.goods.pow(n as u32);
    groups
        .values()
        .map(|types| {
            (0..total_tuples)
                .map(|mut code| {
                    let offers: Vec<usize> = (0..n)
                        .map(|_| {
                            let g = code % r.goods;
                            code /= r.goods;
                            g
                        })
                        .collect();
                    types
                        .iter()
                        .map(|&t| &r.prior[t] * r.split(t, &offers).into_iter().sum::<Q>())
                        .sum::<Q>()
                })
                .max()
                .unwrap()
        })
        .sum()
}

/// Solves a 3x3 system by Gaussian elimination; `None` when singular.
fn solve3(mut a: [[Q; 4]; 3]) -> Option<[Q; 3]> {
    for col in 0..3 {
        let pivot = (col..3).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        for r in 0..3 {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for k in col..4 {
                    let d = &f * &a[col][k];
                    a[r][k] -= d;
                }
            }
        }
    }
    Some([&a[0][3] / &a[0][0], &a[1][3] / &a[1][1], &a[2][3] / &a[2][2]])
}

/// Optimum of the three-variable welfare program by enumerating vertices:
/// variables (only seller 1 right, only seller 2 right, both right).
/// `None` when infeasible.
pub fn lp_by_vertices(v1: &Q, v2: &Q) -> Option<Q> {
    let z = Q::zero;
    let o = Q::one;
    let half = q(1, 2);
    let third = q(1, 3);
    // Each row: coefficients and right-hand side of `row . x >= rhs`.
    let rows: Vec<([Q; 3], Q)> = vec![
        ([half.clone(), z(), third.clone()], v1.clone()),
        ([z(), half.clone(), third.clone()], v2.clone()),
        ([o(), z(), z()], z()),
        ([z(), o(), z()], z()),
        ([z(), z(), o()], z()),
        ([-o(), -o(), -o()], -o()),
    ];
    let feasible = |x: &[Q; 3]| {
        rows.iter().all(|(c, rhs)| {
            let lhs: Q = c.iter().zip(x).map(|(a, b)| a * b).sum();
            !(lhs - rhs).is_negative()
        })
    };
    let objective = |x: &[Q; 3]| (&x[0] + &x[1]) / Q::from_integer(2.into()) + &x[2] * q(2, 3);
    let mut best: Option<Q> = None;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            for k in j + 1..rows.len() {
                let sys = [i, j, k].map(|r| {
                    let (c, rhs) = &rows[r];
                    [c[0].clone(), c[1].clone(), c[2].clone(), rhs.clone()]
                });
                if let Some(x) = solve3(sys) {
                    if feasible(&x) {
                        let val = objective(&x);
                        if best.as_ref().is_none_or(|b| val > *b) {
                            best = Some(val);
                        }
                    }
                }
            }
        }
    }
    best
}

pub fn intro_spec(prior: [Q; 4], amazon: bool) -> GameSpec {
    let text = format!(
        r#"{{"types":["00","01","10","11"],"goods":["g0","g1"],
            "desired":{{"00":"g0","01":"g1","10":"g1","11":"g0"}},
            "prior":{{"00":"{}","01":"{}","10":"{}","11":"{}"}},
            "partitions":[[["00","01"],["10","11"]],[["00","10"],["01","11"]]],
            "amazon":{amazon}}}"#,
        prior[0], prior[1], prior[2], prior[3]
    );
    GameSpec::from_json(&text).unwrap()
}
