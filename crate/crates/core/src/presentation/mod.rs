//! The parabolic presentation: a catalog of relations among the `D`, `D'`,
//! `E`, `F` symbols, their instantiation over concrete indices, and
//! evaluation in the RTT realization.

mod audit;
mod catalog;
mod expr;
mod identities;
mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::grading::Composition;

pub use audit::{is_supermonomial, levi_audit, pbw_audit, LeviReport, PbwReport};
pub use catalog::{build_relation, enumerate_instances};
pub use expr::{block_of, Expr, Gamma, Symbols};
pub use identities::{evaluate_series_identity, evaluate_series_instance, SeriesEnv, SeriesReport};
pub use verify::{evaluate_under_gamma, required_cap, verify, InstanceRecord, RelationTally, Summary};

macro_rules! relation_ids {
    ($($variant:ident => $name:literal),* $(,)?) => {
        /// Catalog identifiers.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum RelationId {
            $($variant),*
        }

        impl RelationId {
            pub const ALL: &'static [RelationId] = &[$(RelationId::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(RelationId::$variant => $name),*
                }
            }
        }

        impl FromStr for RelationId {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self, Error> {
                match s.trim() {
                    $($name => Ok(RelationId::$variant),)*
                    other => Err(Error::UnknownRelation(other.to_string())),
                }
            }
        }
    };
}

relation_ids! {
    R7_1 => "R7.1", R7_2 => "R7.2", R7_3 => "R7.3", R7_4 => "R7.4",
    R7_5 => "R7.5", R7_6 => "R7.6", R7_7 => "R7.7", R7_8 => "R7.8",
    R7_9 => "R7.9", R7_10 => "R7.10", R7_11 => "R7.11", R7_12 => "R7.12",
    R7_13 => "R7.13", R7_14 => "R7.14", R7_15 => "R7.15", R7_16 => "R7.16",
    SerreE => "SERRE-E", SerreF => "SERRE-F",
    R3_11 => "R3.11",
    R5_1 => "R5.1", R5_2 => "R5.2", R5_3 => "R5.3", R5_4 => "R5.4", R5_5 => "R5.5",
    R5_6 => "R5.6", R5_7 => "R5.7", R5_8 => "R5.8", R5_9 => "R5.9",
    R6_1a => "R6.1a", R6_1b => "R6.1b", R6_1c => "R6.1c", R6_1d => "R6.1d",
    R6_2a => "R6.2a", R6_2b => "R6.2b", R6_2c => "R6.2c", R6_2d => "R6.2d",
    R6_3a => "R6.3a", R6_3b => "R6.3b", R6_3c => "R6.3c", R6_3d => "R6.3d",
    R6_3e => "R6.3e", R6_3f => "R6.3f", R6_3g => "R6.3g", R6_3h => "R6.3h",
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Coefficient,
    Series,
}

impl RelationId {
    pub fn form(self) -> Form {
        use RelationId::*;
        match self {
            R7_1 | R7_2 | R7_3 | R7_4 | R7_5 | R7_6 | R7_7 | R7_8 | R7_9 | R7_10 | R7_11 | R7_12 | R7_13 | R7_14
            | R7_15 | R7_16 | SerreE | SerreF => Form::Coefficient,
            _ => Form::Series,
        }
    }

    /// The defining relations of the presentation, `R7.1`–`R7.16`.
    pub fn defining() -> impl Iterator<Item = RelationId> {
        Self::ALL[..16].iter().copied()
    }

    /// Parses a comma-separated list; `all` expands to every catalog entry.
    pub fn parse_list(text: &str) -> Result<Vec<RelationId>, Error> {
        if text.trim() == "all" {
            return Ok(Self::ALL.to_vec());
        }
        text.split(',').map(str::parse).collect()
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One admissible choice of block indices, entry indices and degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationInstance {
    pub id: RelationId,
    pub config: Composition,
    pub indices: Vec<(&'static str, usize)>,
    pub degrees: Vec<(&'static str, usize)>,
    pub form: Form,
    /// Per-variable cap of the certified window for series-form checks.
    pub window: Option<u8>,
}

impl RelationInstance {
    /// Value of a bound index or degree.
    pub fn get(&self, name: &str) -> usize {
        self.indices
            .iter()
            .chain(&self.degrees)
            .find(|(n, _)| *n == name)
            .map(|&(_, v)| v)
            .unwrap_or_else(|| panic!("{} has no variable `{name}`", self.id))
    }

    pub fn key(&self) -> String {
        let ix = self.indices.iter().map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(",");
        let dg = self.degrees.iter().map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(",");
        if dg.is_empty() {
            format!("{} {ix}", self.id)
        } else {
            format!("{} {ix} {dg}", self.id)
        }
    }

    pub(crate) fn index_map(&self) -> BTreeMap<String, usize> {
        self.indices.iter().map(|(n, v)| (n.to_string(), *v)).collect()
    }

    pub(crate) fn degree_map(&self) -> BTreeMap<String, usize> {
        self.degrees.iter().map(|(n, v)| (n.to_string(), *v)).collect()
    }
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

#[cfg(test)]
mod tests;
