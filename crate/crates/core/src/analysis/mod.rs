//! Feasibility of base values, the welfare program, the welfare benchmark
//! and mediator certification.

mod benefit;
mod feasibility;
mod lp;
mod verify;

pub use benefit::{lemma_checks, strict_benefit, BenefitVerdict, LemmaCheck};
pub use feasibility::{feasibility, ConditionCheck, FeasibilityVerdict};
pub use lp::{lp_objective, lp_opt, LpSolution};
pub use verify::{fully_revealing_to, opt_benchmark, render_report, verify_mediator, VerificationReport};
