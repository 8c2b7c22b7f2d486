//! Exact rationals and finitely supported distributions.
//!
//! Rationals cross every serialization boundary as `"p/q"` strings (or a
//! bare integer when the denominator is 1), never as floats.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Q = BigRational;

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn parse_q(text: &str) -> Result<Q> {
    let trimmed = text.trim();
    let bad = || Error::InvalidRational(text.to_string());
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(num, den))
}

/// Canonical text form: reduced `p/q`, or `p` for integers.
pub fn fmt_q(value: &Q) -> String {
    value.to_string()
}

pub fn max_q<'a>(a: &'a Q, b: &'a Q) -> &'a Q {
    if a >= b {
        a
    } else {
        b
    }
}

pub fn min_q<'a>(a: &'a Q, b: &'a Q) -> &'a Q {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn clamp_unit(value: Q) -> Q {
    if value.is_negative() {
        Q::zero()
    } else if value > Q::one() {
        Q::one()
    } else {
        value
    }
}

/// Lossy conversion for display only.
pub fn approx(value: &Q) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter for a single rational stored as a string.
pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let text = String::deserialize(d)?;
        parse_q(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Q>`.
pub mod serde_q_vec {
    use super::*;

    pub fn serialize<S: Serializer>(values: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let texts: Vec<String> = values.iter().map(fmt_q).collect();
        texts.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_q(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter for `Option<Q>`.
pub mod serde_q_opt {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        value.as_ref().map(fmt_q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_q(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// A finitely supported probability distribution with exact weights.
///
/// Outcomes are kept sorted and merged, so two lotteries describing the
/// same distribution compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lottery<T: Ord> {
    outcomes: Vec<(T, Q)>,
}

impl<T: Ord + Clone> Lottery<T> {
    pub fn certain(outcome: T) -> Self {
        Self {
            outcomes: vec![(outcome, Q::one())],
        }
    }

    /// `a` with probability `p`, `b` otherwise.
    pub fn mix(p: &Q, a: T, b: T) -> Self {
        Self::from_weights(vec![(a, p.clone()), (b, Q::one() - p)])
    }

    /// Merges duplicate outcomes and drops zero weights. Does not check
    /// normalization; see [`Lottery::validate`].
    pub fn from_weights(weights: impl IntoIterator<Item = (T, Q)>) -> Self {
        let mut outcomes: Vec<(T, Q)> = weights.into_iter().collect();
        outcomes.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(T, Q)> = Vec::with_capacity(outcomes.len());
        for (outcome, weight) in outcomes {
            match merged.last_mut() {
                Some((last, w)) if *last == outcome => *w += weight,
                _ => merged.push((outcome, weight)),
            }
        }
        merged.retain(|(_, w)| !w.is_zero());
        Self { outcomes: merged }
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.outcomes.iter().any(|(_, w)| w.is_negative()) {
            return Err("negative weight".into());
        }
        let total: Q = self.outcomes.iter().map(|(_, w)| w).sum();
        if !total.is_one() {
            return Err(format!("weights sum to {total}"));
        }
        Ok(())
    }

    pub fn prob(&self, outcome: &T) -> Q {
        self.outcomes
            .binary_search_by(|(o, _)| o.cmp(outcome))
            .map(|idx| self.outcomes[idx].1.clone())
            .unwrap_or_else(|_| Q::zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &Q)> {
        self.outcomes.iter().map(|(o, w)| (o, w))
    }

    pub fn support(&self) -> impl Iterator<Item = &T> {
        self.outcomes.iter().map(|(o, _)| o)
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn map<U: Ord + Clone>(&self, f: impl Fn(&T) -> U) -> Lottery<U> {
        Lottery::from_weights(self.outcomes.iter().map(|(o, w)| (f(o), w.clone())))
    }

    /// Product of independent lotteries, one per coordinate.
    pub fn product(parts: &[Lottery<T>]) -> Lottery<Vec<T>> {
        let mut acc: Vec<(Vec<T>, Q)> = vec![(Vec::new(), Q::one())];
        for part in parts {
            let mut next = Vec::with_capacity(acc.len() * part.len());
            for (prefix, w) in &acc {
                for (o, p) in part.iter() {
                    let mut tuple = prefix.clone();
                    tuple.push(o.clone());
                    next.push((tuple, w * p));
                }
            }
            acc = next;
        }
        Lottery::from_weights(acc)
    }
}

impl<T: Ord + Clone + fmt::Display> fmt::Display for Lottery<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .outcomes
            .iter()
            .map(|(o, w)| format!("{o}@{w}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
