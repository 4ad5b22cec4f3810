//! Measurement sweeps comparing `D(T)` with `cfc(T)` over random trees or a
//! named family. Each tree yields one [`SweepRecord`]; records come back in
//! tree order no matter how the work was scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decompose::{depth, min_depth, TieBreak};
use crate::error::{Error, Result};
use crate::exact::cfc_exact;
use crate::families::{generate, random_tree, Family, FamilySpec};
use crate::graph::{ceil_log2, Tree};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_MAX_N: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordStatus {
    Ok,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub v: u32,
    pub tree_id: String,
    pub n: usize,
    pub delta: usize,
    pub status: RecordStatus,
    pub cfc: Option<u32>,
    #[serde(rename = "D")]
    pub min_depth: u32,
    pub d_default: u32,
    pub ratio: Option<f64>,
    /// `D < 2·cfc`
    pub conjecture_holds: Option<bool>,
    /// `cfc ≥ ⌈log₂ n⌉`
    pub lb_ok: Option<bool>,
    pub edges: Vec<(usize, usize)>,
}

impl SweepRecord {
    pub fn tree(&self) -> Result<Tree> {
        Tree::new(self.n, self.edges.clone())
    }
}

/// Which trees a sweep visits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepSource {
    /// `count` uniform random trees with `n` drawn from `n_min..=n_max`
    Random {
        count: usize,
        n_min: usize,
        n_max: usize,
        seed: u64,
    },
    /// one tree per parameter value `k` in `k_min..=k_max`
    Family {
        family: Family,
        k_min: usize,
        k_max: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub source: SweepSource,
    pub budget: u64,
    /// trees larger than this are refused
    pub max_n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub v: u32,
    pub records: usize,
    pub budget_exceeded: usize,
    pub min_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
    pub violations: Vec<SweepRecord>,
}

/// The trees a sweep will measure, with their ids.
pub fn sweep_trees(source: &SweepSource) -> Result<Vec<(String, Tree)>> {
    match *source {
        SweepSource::Random {
            count,
            n_min,
            n_max,
            seed,
        } => {
            if n_min < 2 || n_min > n_max {
                return Err(Error::BadParams(format!("bad n range [{n_min}, {n_max}]")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..count)
                .map(|i| {
                    let n = rng.gen_range(n_min..=n_max);
                    let tree_seed: u64 = rng.gen();
                    (format!("random:{seed}:{i}:{tree_seed}"), random_tree(n, tree_seed))
                })
                .collect())
        }
        SweepSource::Family { family, k_min, k_max } => {
            if family.arity() != 1 || family == Family::Random {
                return Err(Error::BadParams(format!("family {family} cannot be swept by one parameter")));
            }
            (k_min..=k_max)
                .map(|k| Ok((format!("{family}:{k}"), generate(&FamilySpec::new(family, &[k]))?)))
                .collect()
        }
    }
}

/// Measures one tree.
pub fn measure(tree_id: String, tree: &Tree, budget: u64) -> Result<SweepRecord> {
    let d_default = depth(tree, TieBreak::LowestEdgeIndex);
    let d_min = min_depth(tree)?;
    let (status, cfc) = match cfc_exact(tree, budget) {
        Ok(r) => (RecordStatus::Ok, Some(r.value)),
        Err(Error::BudgetExceeded { .. }) => (RecordStatus::BudgetExceeded, None),
        Err(e) => return Err(e),
    };
    Ok(SweepRecord {
        v: SCHEMA_VERSION,
        tree_id,
        n: tree.n(),
        delta: tree.max_degree(),
        status,
        cfc,
        min_depth: d_min,
        d_default,
        ratio: cfc.map(|c| f64::from(d_min) / f64::from(c)),
        conjecture_holds: cfc.map(|c| d_min < 2 * c),
        lb_ok: cfc.map(|c| c >= ceil_log2(tree.n())),
        edges: tree.edges().to_vec(),
    })
}

/// Runs the sweep in parallel. Fails if any record breaks the proved lower
/// bound, since that means a solver bug.
pub fn run_sweep(config: &SweepConfig) -> Result<(Vec<SweepRecord>, SweepSummary)> {
    let trees = sweep_trees(&config.source)?;
    if let Some((_, t)) = trees.iter().find(|(_, t)| t.n() > config.max_n) {
        return Err(Error::TooLarge {
            what: "sweep tree size",
            got: t.n(),
            limit: config.max_n,
        });
    }
    let records = trees
        .into_par_iter()
        .map(|(id, tree)| measure(id, &tree, config.budget))
        .collect::<Result<Vec<_>>>()?;
    if let Some(bad) = records.iter().find(|r| r.lb_ok == Some(false)) {
        return Err(Error::Invariant(format!(
            "cfc below ⌈log₂ n⌉ on {} (edges {:?})",
            bad.tree_id, bad.edges
        )));
    }
    let summary = summarize(&records);
    Ok((records, summary))
}

pub fn summarize(records: &[SweepRecord]) -> SweepSummary {
    let ratios = records.iter().filter_map(|r| r.ratio);
    SweepSummary {
        v: SCHEMA_VERSION,
        records: records.len(),
        budget_exceeded: records
            .iter()
            .filter(|r| r.status == RecordStatus::BudgetExceeded)
            .count(),
        min_ratio: ratios.clone().reduce(f64::min),
        max_ratio: ratios.reduce(f64::max),
        violations: records
            .iter()
            .filter(|r| r.conjecture_holds == Some(false))
            .cloned()
            .collect(),
    }
}

/// JSON-lines report, one record per line.
pub fn to_jsonl(records: &[SweepRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn from_jsonl(text: &str) -> Result<Vec<SweepRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::DEFAULT_BUDGET;

    #[test]
    fn random_sweep_is_deterministic() {
        let config = SweepConfig {
            source: SweepSource::Random {
                count: 12,
                n_min: 4,
                n_max: 9,
                seed: 7,
            },
            budget: DEFAULT_BUDGET,
            max_n: DEFAULT_MAX_N,
        };
        let (a, sa) = run_sweep(&config).unwrap();
        let (b, _) = run_sweep(&config).unwrap();
        assert_eq!(to_jsonl(&a), to_jsonl(&b));
        assert_eq!(a.len(), 12);
        assert_eq!(sa.records, 12);
        assert!(a.iter().all(|r| r.lb_ok == Some(true)));
        assert_eq!(from_jsonl(&to_jsonl(&a)).unwrap(), a);
    }

    #[test]
    fn path_family_sweep() {
        let config = SweepConfig {
            source: SweepSource::Family {
                family: Family::Path,
                k_min: 2,
                k_max: 9,
            },
            budget: DEFAULT_BUDGET,
            max_n: DEFAULT_MAX_N,
        };
        let (records, summary) = run_sweep(&config).unwrap();
        for r in &records {
            let expected = ceil_log2(r.n);
            assert_eq!((r.cfc, r.min_depth), (Some(expected), expected));
        }
        assert_eq!(summary.max_ratio, Some(1.0));
    }

    #[test]
    fn refuses_large_trees() {
        let config = SweepConfig {
            source: SweepSource::Random {
                count: 1,
                n_min: 20,
                n_max: 20,
                seed: 0,
            },
            budget: DEFAULT_BUDGET,
            max_n: DEFAULT_MAX_N,
        };
        assert!(matches!(run_sweep(&config), Err(Error::TooLarge { .. })));
    }
}
