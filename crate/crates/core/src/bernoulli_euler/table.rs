//! Index → value tables of Bernoulli numbers, Euler numbers and `ζ(2n)/π^{2n}`,
//! optionally recomputed by every alternative route.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use serde::{Deserialize, Serialize};

use super::{
    bernoulli_number, bernoulli_via_moment, euler_number, euler_via, zeta_even_ratio, BernoulliVariant, EulerVariant,
    ZetaVariant,
};
use crate::error::{invalid, Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NumberKind {
    Bernoulli,
    Euler,
    ZetaEvenRatio,
}

impl NumberKind {
    pub const ALL: [NumberKind; 3] = [NumberKind::Bernoulli, NumberKind::Euler, NumberKind::ZetaEvenRatio];

    pub fn as_str(self) -> &'static str {
        match self {
            NumberKind::Bernoulli => "bernoulli",
            NumberKind::Euler => "euler",
            NumberKind::ZetaEvenRatio => "zeta-even-ratio",
        }
    }

    /// Names accepted by `variant` for this kind.
    pub fn variants(self) -> Vec<&'static str> {
        match self {
            NumberKind::Bernoulli => BernoulliVariant::ALL.iter().map(|v| v.as_str()).collect(),
            NumberKind::Euler => EulerVariant::ALL.iter().map(|v| v.as_str()).collect(),
            NumberKind::ZetaEvenRatio => ZetaVariant::ALL.iter().map(|v| v.as_str()).collect(),
        }
    }
}

impl fmt::Display for NumberKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NumberKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|k| k.as_str() == s).ok_or_else(|| invalid(format!("unknown number kind `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberRow {
    pub index: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub value: Rational,
    /// Value by every alternative route (cross-check only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub routes: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub agree: Option<bool>,
}

fn value_by(kind: NumberKind, index: usize, variant: Option<&str>) -> Result<Rational> {
    let half = index / 2;
    Ok(match (kind, variant) {
        (NumberKind::Bernoulli, None) => bernoulli_number(index),
        // B_0, B_1 have no moment route
        (NumberKind::Bernoulli, Some(_)) if index < 2 => bernoulli_number(index),
        (NumberKind::Bernoulli, Some(v)) => bernoulli_via_moment(half, v.parse()?)?,
        (NumberKind::Euler, None) => Rational::from_integer(euler_number(index)),
        (NumberKind::Euler, Some(v)) => {
            let v: EulerVariant = v.parse()?;
            if index == 0 && v == EulerVariant::Recurrence {
                Rational::from_integer(euler_number(0))
            } else {
                Rational::from_integer(euler_via(half, v)?)
            }
        }
        (NumberKind::ZetaEvenRatio, v) => {
            zeta_even_ratio(half, v.map(str::parse).transpose()?.unwrap_or(ZetaVariant::Bernoulli))?
        }
    })
}

fn indices(kind: NumberKind, n_max: usize) -> Vec<usize> {
    match kind {
        // zero Bernoulli numbers at odd index > 1 are omitted
        NumberKind::Bernoulli => (0..=n_max).filter(|&k| k == 1 || k % 2 == 0).collect(),
        NumberKind::Euler => (0..=n_max).step_by(2).collect(),
        NumberKind::ZetaEvenRatio => (2..=n_max).step_by(2).collect(),
    }
}

/// Nonzero values up to index `n_max`. With `cross_check`, each row also
/// carries the value from every variant and whether they all agree with
/// `value`.
pub fn number_table(kind: NumberKind, n_max: usize, variant: Option<&str>, cross_check: bool) -> Result<Vec<NumberRow>> {
    if let Some(v) = variant {
        if !kind.variants().contains(&v) {
            return Err(invalid(format!("unknown {kind} variant `{v}` (expected one of {})", kind.variants().join(", "))));
        }
    }
    indices(kind, n_max)
        .into_iter()
        .map(|index| {
            let value = value_by(kind, index, variant)?;
            let mut row = NumberRow { index, value, routes: None, agree: None };
            if cross_check {
                let mut routes = BTreeMap::new();
                let mut agree = row.value == value_by(kind, index, None)?;
                for v in kind.variants() {
                    let other = value_by(kind, index, Some(v))?;
                    agree &= other == row.value;
                    routes.insert(v.to_string(), other.to_string());
                }
                row.routes = Some(routes);
                row.agree = Some(agree);
            }
            Ok(row)
        })
        .collect()
}

/// True unless a cross-checked row disagrees.
pub fn table_agrees(rows: &[NumberRow]) -> bool {
    rows.iter().all(|r| r.agree != Some(false))
}
