//! Batch evaluation of catalog instances with deterministic, streamed
//! reporting.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freealg::AlgebraElement;
use crate::gauss::{decompose, GaussFactors};
use crate::grading::Composition;
use crate::rtt::YangianContext;

use super::catalog::{build_relation, enumerate_instances};
use super::expr::Gamma;
use super::identities::{env_shape, evaluate_series_instance};
use super::{Form, RelationId, RelationInstance};

/// `Γ(LHS − RHS)` in normal form for a coefficient-form instance.
pub fn evaluate_under_gamma(inst: &RelationInstance, gamma: &Gamma<'_>) -> Result<AlgebraElement> {
    let expr = build_relation(inst)?;
    gamma.eval(&expr)
}

/// Smallest Gauss cap that evaluates every given instance exactly.
pub fn required_cap(instances: &[RelationInstance]) -> Result<u8> {
    let mut cap = 1usize;
    for inst in instances {
        let need = match inst.form {
            Form::Coefficient => build_relation(inst)?.max_degree(),
            Form::Series => env_shape(inst.id, inst.window.unwrap_or(0)).1 as usize,
        };
        cap = cap.max(need);
    }
    u8::try_from(cap).map_err(|_| Error::Config(format!("required cap {cap} too large")))
}

/// One line of a verification report.
#[derive(Debug, Clone, Serialize)]
pub struct InstanceRecord {
    pub relation: String,
    pub seq: String,
    pub mu: String,
    pub indices: BTreeMap<String, usize>,
    pub degrees: BTreeMap<String, usize>,
    pub form: Form,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<u8>,
    pub residual_is_zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct RelationTally {
    pub instances: usize,
    pub failures: usize,
    /// Why the relation was not run on this configuration, if it was not.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub seq: String,
    pub mu: String,
    pub max_degree: usize,
    pub cap: u8,
    pub instances: usize,
    pub failures: usize,
    pub relations: BTreeMap<String, RelationTally>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

const SHOWN_SERIES_TERMS: usize = 3;

fn evaluate(
    inst: &RelationInstance,
    ctx: &YangianContext,
    factors: &GaussFactors,
    gamma: &Gamma<'_>,
) -> InstanceRecord {
    let residual = match inst.form {
        Form::Coefficient => evaluate_under_gamma(inst, gamma).map(|r| (!r.is_zero()).then(|| r.to_string())),
        Form::Series => evaluate_series_instance(inst, ctx, factors).map(|terms| {
            (!terms.is_empty()).then(|| {
                let shown: Vec<String> =
                    terms.iter().take(SHOWN_SERIES_TERMS).map(|(e, c)| format!("{e:?}: {c}")).collect();
                let more = terms.len().saturating_sub(SHOWN_SERIES_TERMS);
                if more > 0 {
                    format!("{}; {more} more", shown.join("; "))
                } else {
                    shown.join("; ")
                }
            })
        }),
    };
    let residual = residual.unwrap_or_else(|e| Some(format!("error: {e}")));
    InstanceRecord {
        relation: inst.id.to_string(),
        seq: inst.config.seq().to_string(),
        mu: inst.config.parts_string(),
        indices: inst.index_map(),
        degrees: inst.degree_map(),
        form: inst.form,
        window: inst.window,
        residual_is_zero: residual.is_none(),
        residual,
    }
}

const CHUNK: usize = 64;

/// Runs every instance of `ids` on `mu` with degrees (or series window) up
/// to `max_degree`. Records reach `sink` in enumeration order; evaluation
/// inside a chunk runs on the current rayon pool. Series identities stated
/// for a different number of blocks are skipped and noted in the summary.
pub fn verify(
    ctx: &YangianContext,
    mu: &Composition,
    ids: &[RelationId],
    max_degree: usize,
    mut sink: impl FnMut(&InstanceRecord),
) -> Result<Summary> {
    let mut relations = BTreeMap::new();
    let mut instances = Vec::new();
    for &id in ids {
        match enumerate_instances(id, mu, max_degree) {
            Ok(list) => {
                relations.insert(id.to_string(), RelationTally { instances: list.len(), ..Default::default() });
                instances.extend(list);
            }
            Err(Error::Config(why)) if id.form() == Form::Series => {
                relations.insert(id.to_string(), RelationTally { skipped: Some(why), ..Default::default() });
            }
            Err(e) => return Err(e),
        }
    }
    let cap = required_cap(&instances)?;
    let factors = decompose(ctx, mu, cap)?;
    let gamma = Gamma::new(ctx, &factors);
    let mut failures = 0;
    for chunk in instances.chunks(CHUNK) {
        let records: Vec<InstanceRecord> = chunk.par_iter().map(|inst| evaluate(inst, ctx, &factors, &gamma)).collect();
        for rec in &records {
            if !rec.residual_is_zero {
                failures += 1;
                relations.get_mut(&rec.relation).expect("tallied above").failures += 1;
            }
            sink(rec);
        }
    }
    Ok(Summary {
        seq: mu.seq().to_string(),
        mu: mu.parts_string(),
        max_degree,
        cap,
        instances: instances.len(),
        failures,
        relations,
    })
}
