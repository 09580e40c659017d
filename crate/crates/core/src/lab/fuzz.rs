use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{random_table_ring, structural_specs};
use super::{run_suite, Status};
use crate::error::{Error, Result};
use crate::order::Conrad;
use crate::ring::{ElementId, Limits, RingSpec};
use crate::structure::Flags;

const CHUNK: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Modular,
    Product,
    Matrix,
    RandomTable,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Modular, Family::Product, Family::Matrix, Family::RandomTable];

    pub fn name(self) -> &'static str {
        match self {
            Family::Modular => "modular",
            Family::Product => "product",
            Family::Matrix => "matrix",
            Family::RandomTable => "random-table",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub max_order: usize,
    pub families: Vec<Family>,
    pub seed: u64,
    /// Upper bound on the number of rings checked.
    pub budget: usize,
    /// How many random tables to draw when that family is enabled.
    pub random_tables: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            max_order: 16,
            families: Family::ALL.to_vec(),
            seed: 0,
            budget: 10_000,
            random_tables: 100,
        }
    }
}

impl FuzzConfig {
    fn validate(&self, limits: &Limits) -> Result<FuzzConfig> {
        if self.max_order == 0 || self.max_order > limits.order_cap {
            return Err(Error::InvalidConfig(format!(
                "max_order must be in 1..={}, got {}",
                limits.order_cap, self.max_order
            )));
        }
        if self.budget == 0 {
            return Err(Error::InvalidConfig("budget must be at least 1".into()));
        }
        if self.families.is_empty() {
            return Err(Error::InvalidConfig("no families selected".into()));
        }
        let mut families = self.families.clone();
        families.sort();
        families.dedup();
        Ok(FuzzConfig { families, ..self.clone() })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerdictCounts {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzFailure {
    pub spec: RingSpec,
    pub theorem: &'static str,
    pub witness: Vec<ElementId>,
    pub label: String,
    /// Every hypothesis held, so the failure contradicts the theorem.
    pub red_alert: bool,
}

/// How the checked rings fall across the classification flags.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Taxonomy {
    pub semiprime: usize,
    pub reduced: usize,
    pub abelian: usize,
    pub rickart_star: usize,
    pub pq_baer_star: usize,
    pub two_invertible: usize,
    pub pq_baer_not_rickart: usize,
    pub abelian_pq_baer_not_rickart: usize,
    /// Rings where the relation is a partial order and some pair without a
    /// common upper bound still has a greatest lower bound.
    pub meet_without_cub: usize,
}

impl Taxonomy {
    fn record(&mut self, f: &Flags, meet_without_cub: bool) {
        let bump = |c: &mut usize, b: bool| *c += b as usize;
        bump(&mut self.semiprime, f.is_semiprime);
        bump(&mut self.reduced, f.is_reduced);
        bump(&mut self.abelian, f.is_abelian);
        bump(&mut self.rickart_star, f.is_rickart_star);
        bump(&mut self.pq_baer_star, f.is_pq_baer_star);
        bump(&mut self.two_invertible, f.is_two_invertible);
        let odd = f.is_pq_baer_star && !f.is_rickart_star;
        bump(&mut self.pq_baer_not_rickart, odd);
        bump(&mut self.abelian_pq_baer_not_rickart, odd && f.is_abelian);
        bump(&mut self.meet_without_cub, meet_without_cub);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub config: FuzzConfig,
    pub rings_checked: usize,
    pub verdict_counts: BTreeMap<&'static str, VerdictCounts>,
    pub failures: Vec<FuzzFailure>,
    pub red_alert: Option<FuzzFailure>,
    pub halted: bool,
    pub taxonomy: Taxonomy,
    /// Random candidates discarded by table validation.
    pub rejected_candidates: usize,
}

enum Item {
    Structural(RingSpec),
    Random(u64),
}

struct Outcome {
    spec: RingSpec,
    label: String,
    verdicts: Vec<super::TheoremVerdict>,
    flags: Flags,
    meet_without_cub: bool,
    rejected: usize,
}

fn evaluate(item: &Item, config: &FuzzConfig, limits: &Limits) -> Result<Option<Outcome>> {
    let (spec, rejected) = match item {
        Item::Structural(s) => (s.clone(), 0),
        Item::Random(i) => match random_table_ring(config.seed, *i, config.max_order) {
            Some(t) => (RingSpec::Table(t.spec), t.rejected),
            None => return Ok(None),
        },
    };
    let ring = spec.realize(limits)?;
    let verdicts = run_suite(&ring);
    let c = Conrad::new(&ring);
    let meet_without_cub = c.diagnostics().is_partial_order()
        && c.ids().any(|a| c.ids().any(|b| !c.cub(a, b) && c.glb(a, b).is_some()));
    let flags = c.classification().flags.clone();
    let label = ring.label().to_string();
    Ok(Some(Outcome { spec, label, verdicts, flags, meet_without_cub, rejected }))
}

/// Generate rings from the configuration, run the full suite on each, and
/// aggregate. Stops at the first failure under satisfied hypotheses.
pub fn fuzz(config: &FuzzConfig, limits: &Limits) -> Result<FuzzReport> {
    let config = config.validate(limits)?;
    let mut items: Vec<Item> = structural_specs(config.max_order, &config.families)
        .into_iter()
        .map(Item::Structural)
        .collect();
    if config.families.contains(&Family::RandomTable) {
        items.extend((0..config.random_tables as u64).map(Item::Random));
    }
    items.truncate(config.budget);

    let mut report = FuzzReport {
        config: config.clone(),
        rings_checked: 0,
        verdict_counts: BTreeMap::new(),
        failures: Vec::new(),
        red_alert: None,
        halted: false,
        taxonomy: Taxonomy::default(),
        rejected_candidates: 0,
    };
    'chunks: for chunk in items.chunks(CHUNK) {
        let outcomes: Vec<Result<Option<Outcome>>> =
            chunk.par_iter().map(|item| evaluate(item, &config, limits)).collect();
        for outcome in outcomes {
            let Some(o) = outcome? else { continue };
            report.rings_checked += 1;
            report.rejected_candidates += o.rejected;
            report.taxonomy.record(&o.flags, o.meet_without_cub);
            for v in &o.verdicts {
                let counts = report.verdict_counts.entry(v.theorem).or_default();
                match v.status {
                    Status::Pass => counts.pass += 1,
                    Status::Skipped => counts.skipped += 1,
                    Status::Fail => counts.fail += 1,
                }
                if v.status != Status::Fail {
                    continue;
                }
                let failure = FuzzFailure {
                    spec: o.spec.clone(),
                    theorem: v.theorem,
                    witness: v.witness.clone().unwrap_or_default(),
                    label: o.label.clone(),
                    red_alert: v.is_red_alert(),
                };
                if failure.red_alert && report.red_alert.is_none() {
                    report.red_alert = Some(failure.clone());
                }
                report.failures.push(failure);
            }
            if report.red_alert.is_some() {
                report.halted = true;
                break 'chunks;
            }
        }
    }
    Ok(report)
}
