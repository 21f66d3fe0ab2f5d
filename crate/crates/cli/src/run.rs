//! Method dispatch from resolved `(G, H)` pairs to records.

use std::time::Instant;

use rayon::prelude::*;

use perfcode::lattice::LATTICE_CAP;
use perfcode::oracle::{brute_subgroup_survey, oracle_decide};
use perfcode::perfect::{
    auto_check, check_double_coset, check_elementwise, check_via_sylow2,
    find_inverse_closed_transversal, first_witness, Evidence, Verdict,
};
use perfcode::{Error, Subgroup};

use crate::dsl::{BuiltGroup, GroupSpec, ParseError, Resolved, SubgroupSpec};
use crate::record::{EvidenceRecord, VerdictRecord};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Engine(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Engine(Error::CapExceeded { .. }) => 3,
            CliError::Engine(Error::BudgetExhausted(_)) => 4,
            CliError::Failed(_) => 5,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Method {
    Auto,
    Elementwise,
    Doublecoset,
    Transversal,
    Sylow,
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Elementwise => "elementwise",
            Method::Doublecoset => "doublecoset",
            Method::Transversal => "transversal",
            Method::Sylow => "sylow",
            Method::Oracle => "oracle",
        }
    }
}

/// Limits shared by every command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order accepted, and the order cap for lattices.
    pub max_order: usize,
    /// Node budget for transversal search.
    pub budget: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_order: perfcode::group::DEFAULT_ELEMENT_CAP,
            budget: perfcode::perfect::DEFAULT_BUDGET,
        }
    }
}

fn transversal_verdict(g: &Subgroup, h: &Subgroup, budget: u64) -> perfcode::Result<Verdict> {
    let trace = vec![perfcode::perfect::ReductionStep::Shortcut {
        name: "transversal-search".into(),
    }];
    match find_inverse_closed_transversal(g, h, budget)? {
        Some(l) => Ok(Verdict::positive(Evidence::Transversal(l), trace)),
        None => match first_witness(g, h)? {
            Some(a) => Ok(Verdict::negative(a, trace)),
            None => Err(Error::ConditionViolated(
                "search found no transversal and the scan no witness".into(),
            )),
        },
    }
}

/// Decides one pair with `method`; `wall_time` is filled only if `timing`.
pub fn decide(
    spec: &str,
    r: &Resolved,
    g: &Subgroup,
    method: Method,
    caps: Caps,
    timing: bool,
) -> CliResult<VerdictRecord> {
    let h = &r.subgroup;
    let start = Instant::now();
    let mut rec = match method {
        Method::Oracle => {
            let v = oracle_decide(g, h)?;
            VerdictRecord::with_evidence(
                spec,
                &r.description,
                g,
                h,
                "oracle",
                v,
                vec!["oracle".into()],
                EvidenceRecord::Oracle,
            )
        }
        _ => {
            let v = match method {
                Method::Auto => auto_check(g, h)?,
                Method::Elementwise => check_elementwise(g, h)?,
                Method::Doublecoset => check_double_coset(g, h)?,
                Method::Transversal => transversal_verdict(g, h, caps.budget)?,
                Method::Sylow => check_via_sylow2(g, h)?,
                Method::Oracle => unreachable!(),
            };
            VerdictRecord::new(spec, &r.description, g, h, method.name(), &v)
        }
    };
    if timing {
        rec.wall_time = Some(start.elapsed().as_secs_f64());
    }
    Ok(rec)
}

/// Parses and builds `group`, refusing groups above `caps.max_order`.
pub fn build_group(group: &str, caps: Caps) -> CliResult<BuiltGroup> {
    let spec: GroupSpec = group.parse()?;
    let b = spec.build()?;
    if b.group.order() > caps.max_order {
        return Err(Error::CapExceeded {
            what: format!("|{}| = {}", b.spec, b.group.order()),
            cap: caps.max_order,
        }
        .into());
    }
    Ok(b)
}

pub fn resolve(b: &BuiltGroup, subgroup: &str) -> CliResult<Vec<Resolved>> {
    let s: SubgroupSpec = subgroup.parse()?;
    Ok(s.resolve(b)?)
}

/// One record per resolved subgroup, in resolution order.
pub fn check(
    group: &str,
    subgroup: &str,
    method: Method,
    caps: Caps,
    timing: bool,
    cache: Option<&crate::cache::Cache>,
) -> CliResult<Vec<VerdictRecord>> {
    let b = build_group(group, caps)?;
    let spec = b.spec.to_string();
    let g = b.group.whole();
    let pairs = resolve(&b, subgroup)?;
    pairs
        .par_iter()
        .map(|r| match cache {
            Some(c) => c.get_or_compute(&spec, r, &g, method, caps, timing),
            None => decide(&spec, r, &g, method, caps, timing),
        })
        .collect()
}

/// Every subgroup of `group`, decided by `auto_check` and the oracle; a
/// disagreement is an error.
pub fn survey(group: &str, caps: Caps, timing: bool) -> CliResult<Vec<VerdictRecord>> {
    let b = build_group(group, caps)?;
    let spec = b.spec.to_string();
    let g = b.group.whole();
    let start = Instant::now();
    let rows = brute_subgroup_survey(&g, caps.max_order.min(LATTICE_CAP))?;
    let elapsed = start.elapsed().as_secs_f64();
    rows.par_iter()
        .enumerate()
        .map(|(i, (h, oracle))| {
            let v = auto_check(&g, h)?;
            let mut rec = VerdictRecord::new(&spec, &format!("all[{i}]"), &g, h, "auto+oracle", &v);
            rec.trace.push(format!("oracle={oracle}"));
            if timing {
                rec.wall_time = Some(elapsed / rows.len() as f64);
            }
            Ok(rec)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let e: CliError = "sym:".parse::<GroupSpec>().unwrap_err().into();
        assert_eq!(e.exit_code(), 2);
        assert_eq!(CliError::from(Error::BudgetExhausted(3)).exit_code(), 4);
        let caps = Caps {
            max_order: 10,
            ..Caps::default()
        };
        assert_eq!(build_group("sym:4", caps).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn methods_agree_on_small_pairs() {
        for (g, s) in [
            ("sym:4", "all"),
            ("quaternion:16", "all"),
            ("psl2:7", "all-maximal"),
        ] {
            let base = check(g, s, Method::Elementwise, Caps::default(), false, None).unwrap();
            for m in [
                Method::Auto,
                Method::Doublecoset,
                Method::Transversal,
                Method::Sylow,
                Method::Oracle,
            ] {
                let other = check(g, s, m, Caps::default(), false, None).unwrap();
                let a: Vec<bool> = base.iter().map(|r| r.is_perfect_code).collect();
                let b: Vec<bool> = other.iter().map(|r| r.is_perfect_code).collect();
                assert_eq!(a, b, "{g} {s} {m:?}");
            }
        }
    }
}
