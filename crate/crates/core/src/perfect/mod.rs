//! Deciding whether a subgroup is a perfect code, with certificates.
//!
//! A subgroup `H <= G` is a perfect code exactly when it has an
//! inverse-closed left transversal, exactly when every `a` with `a^2` in `H`
//! and `|H : H cap H^a|` odd has an involution (or the identity) in `aH`.
//! Negative verdicts always carry the canonically first such `a` that fails.

mod criteria;
mod local;
mod reduction;
mod transversal;

use std::fmt;

pub use criteria::{check_double_coset, check_elementwise, first_witness, is_witness};
pub use local::{
    check_2group_local, check_cyclic_2subgroup, check_dihedral_sylow_context,
    check_quaternion_2subgroup, evaluate_semidirect_conditions, shortcut_elementary_abelian,
    SemidirectReport,
};
pub use reduction::{
    auto_check, check_via_sylow2, diamond_converse_check, diamond_lift, lift_through_normal,
    split_reduction, LiftStatus,
};
pub use transversal::{find_inverse_closed_transversal, validate_transversal, DEFAULT_BUDGET};

use crate::error::{Error, Result};
use crate::subgroup::Subgroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// An inverse-closed left transversal, as ambient indices.
    Transversal(Vec<u32>),
    /// An element `a` with `a^2` in `H`, `|H : H cap H^a|` odd and no
    /// involution or identity in `aH`.
    Witness(u32),
    /// A positive answer by a named argument.
    Shortcut {
        name: String,
        params: Vec<(String, String)>,
    },
}

impl Evidence {
    pub fn shortcut(name: &str) -> Self {
        Evidence::Shortcut {
            name: name.to_string(),
            params: Vec::new(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum ReductionStep {
    /// `Q` Sylow in `H`, `N = N_G(Q)`, `P` Sylow in `N`.
    Sylow2 {
        q: Subgroup,
        n: Subgroup,
        p: Subgroup,
    },
    Quotient {
        n: Subgroup,
    },
    Diamond {
        k: Subgroup,
    },
    Split {
        k: Subgroup,
    },
    Shortcut {
        name: String,
    },
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionStep::Sylow2 { q, n, p } => {
                write!(
                    f,
                    "sylow2(|Q|={}, |N|={}, |P|={})",
                    q.order(),
                    n.order(),
                    p.order()
                )
            }
            ReductionStep::Quotient { n } => write!(f, "quotient(|N|={})", n.order()),
            ReductionStep::Diamond { k } => write!(f, "diamond(|K|={})", k.order()),
            ReductionStep::Split { k } => write!(f, "split(|K|={})", k.order()),
            ReductionStep::Shortcut { name } => write!(f, "{name}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub is_perfect_code: bool,
    pub evidence: Evidence,
    pub trace: Vec<ReductionStep>,
}

impl Verdict {
    pub fn positive(evidence: Evidence, trace: Vec<ReductionStep>) -> Self {
        Verdict {
            is_perfect_code: true,
            evidence,
            trace,
        }
    }

    pub fn negative(witness: u32, trace: Vec<ReductionStep>) -> Self {
        Verdict {
            is_perfect_code: false,
            evidence: Evidence::Witness(witness),
            trace,
        }
    }
}

/// A negative verdict for `(g, h)` carrying the canonical first witness.
/// Errors if the elementwise scan finds none, which would mean the caller's
/// reasoning disagrees with the definition.
pub(crate) fn expand_negative(
    g: &Subgroup,
    h: &Subgroup,
    trace: Vec<ReductionStep>,
) -> Result<Verdict> {
    match first_witness(g, h)? {
        Some(a) => Ok(Verdict::negative(a, trace)),
        None => Err(Error::ConditionViolated(
            "a shortcut reported failure but the elementwise scan found no witness".into(),
        )),
    }
}

/// Whether the evidence of `v` is valid for `(g, h)`.
pub fn validate_verdict(g: &Subgroup, h: &Subgroup, v: &Verdict) -> Result<bool> {
    Ok(match &v.evidence {
        Evidence::Transversal(l) => v.is_perfect_code && validate_transversal(g, h, l)?,
        Evidence::Witness(a) => !v.is_perfect_code && is_witness(g, h, *a)?,
        Evidence::Shortcut { .. } => v.is_perfect_code,
    })
}
