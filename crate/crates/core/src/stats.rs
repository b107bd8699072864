//! Z statistic of a rule's support against `minsup`, and the one-sample
//! Z test that decides whether a rule is statistically interesting.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `(support - minsup) / sqrt(minsup * (1 - minsup) / n)`.
pub fn z_statistic<T: Scalar>(support: T, minsup: T, n: usize) -> Result<T> {
    check_minsup(minsup)?;
    if n == 0 {
        return Err(Error::Config("n must be positive".into()));
    }
    let se = (minsup * (T::one() - minsup) / T::from_count(n)).sqrt();
    Ok((support - minsup) / se)
}

pub(crate) fn check_minsup<T: Scalar>(minsup: T) -> Result<()> {
    if minsup > T::zero() && minsup < T::one() {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "minsup must lie in (0, 1), got {minsup}"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tail {
    Two,
    Right,
    Left,
}

impl FromStr for Tail {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two" => Ok(Tail::Two),
            "right" => Ok(Tail::Right),
            "left" => Ok(Tail::Left),
            _ => Err(Error::Config(format!(
                "unknown tail '{s}' (expected two, right or left)"
            ))),
        }
    }
}

impl fmt::Display for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tail::Two => "two",
            Tail::Right => "right",
            Tail::Left => "left",
        })
    }
}

/// Significance levels with tabulated critical values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Significance {
    #[serde(rename = "0.01")]
    OnePercent,
    #[serde(rename = "0.05")]
    FivePercent,
    #[serde(rename = "0.10")]
    TenPercent,
}

impl Significance {
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        const EPS: f64 = 1e-9;
        if (alpha - 0.01).abs() < EPS {
            Ok(Significance::OnePercent)
        } else if (alpha - 0.05).abs() < EPS {
            Ok(Significance::FivePercent)
        } else if (alpha - 0.10).abs() < EPS {
            Ok(Significance::TenPercent)
        } else {
            Err(Error::Config(format!(
                "no tabulated critical value for alpha = {alpha}; use 0.01, 0.05, 0.10 or an explicit z_alpha"
            )))
        }
    }

    pub fn alpha(self) -> f64 {
        match self {
            Significance::OnePercent => 0.01,
            Significance::FivePercent => 0.05,
            Significance::TenPercent => 0.10,
        }
    }
}

/// Tabulated critical value of Z. Left-tailed values are negative.
pub fn critical_value<T: Scalar>(alpha: Significance, tail: Tail) -> T {
    use Significance::*;
    let z = match (tail, alpha) {
        (Tail::Two, OnePercent) => 2.58,
        (Tail::Two, FivePercent) => 1.96,
        (Tail::Two, TenPercent) => 1.645,
        (Tail::Right, OnePercent) => 2.33,
        (Tail::Right, FivePercent) => 1.645,
        (Tail::Right, TenPercent) => 1.28,
        (Tail::Left, OnePercent) => -2.33,
        (Tail::Left, FivePercent) => -1.645,
        (Tail::Left, TenPercent) => -1.28,
    };
    T::lit(z)
}

/// Where the rejection threshold comes from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", rename_all = "lowercase")]
pub enum Threshold<T> {
    Table(Significance),
    Explicit(T),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ZTestConfig<T> {
    pub minsup: T,
    pub threshold: Threshold<T>,
    pub tail: Tail,
}

impl<T: Scalar> Default for ZTestConfig<T> {
    fn default() -> Self {
        ZTestConfig {
            minsup: T::lit(0.1),
            threshold: Threshold::Table(Significance::FivePercent),
            tail: Tail::Right,
        }
    }
}

impl<T: Scalar> ZTestConfig<T> {
    pub fn validate(&self) -> Result<()> {
        check_minsup(self.minsup)?;
        if let Threshold::Explicit(z) = self.threshold {
            if !(z > T::zero() && z.is_finite()) {
                return Err(Error::Config(format!(
                    "explicit z_alpha must be positive, got {z}"
                )));
            }
        }
        Ok(())
    }

    /// The resolved critical value for this configuration.
    pub fn z_alpha(&self) -> T {
        match self.threshold {
            Threshold::Table(alpha) => critical_value(alpha, self.tail),
            Threshold::Explicit(z) => match self.tail {
                Tail::Left => -z.abs(),
                _ => z,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ZResult<T> {
    pub z: T,
    pub z_alpha: T,
    pub reject_null: bool,
}

/// Rejecting the null marks the rule statistically interesting.
pub fn hypothesis_test<T: Scalar>(z: T, cfg: &ZTestConfig<T>) -> ZResult<T> {
    let z_alpha = cfg.z_alpha();
    let reject_null = match cfg.tail {
        Tail::Two => z.abs() > z_alpha.abs(),
        Tail::Right => z > z_alpha,
        Tail::Left => z < -z_alpha.abs(),
    };
    ZResult {
        z,
        z_alpha,
        reject_null,
    }
}
