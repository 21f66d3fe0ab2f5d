//! Reductions that move the question to a smaller group.
//!
//! `H` is a perfect code of `G` iff a Sylow 2-subgroup `Q` of `H` is, and a
//! 2-subgroup `Q` only interacts with cosets in `N_G(Q)`, whose Sylow
//! 2-subgroups all contain `Q` and are conjugate under an action fixing `Q`.

use super::criteria::check_elementwise;
use super::local::{first_local_failure, is_dihedral_type, shortcut_elementary_abelian};
use super::{expand_negative, validate_transversal, Evidence, ReductionStep, Verdict};
use crate::error::{Error, Result};
use crate::iso::{classify_subgroup, exists_overgroup_of_type, IsoKind};
use crate::quotient::quotient;
use crate::structure::{normalizer, sylow2};
use crate::subgroup::Subgroup;

/// Decides a 2-subgroup `q` of the 2-group `p`, naming the criterion used.
fn decide_two_group(p: &Subgroup, q: &Subgroup) -> Result<(bool, &'static str)> {
    let q_type = classify_subgroup(q)?;
    Ok(match q_type.kind() {
        IsoKind::Cyclic if q.order() > 1 => {
            let k =
                exists_overgroup_of_type(p, q, &[IsoKind::Cyclic, IsoKind::GeneralizedQuaternion])?;
            (k.is_none(), "cyclic-overgroups")
        }
        IsoKind::GeneralizedQuaternion => {
            let k = exists_overgroup_of_type(p, q, &[IsoKind::GeneralizedQuaternion])?;
            (k.is_none(), "quaternion-overgroups")
        }
        _ if q.order() == 1 => (true, "trivial"),
        _ if is_dihedral_type(&classify_subgroup(p)?.canonical()) => (true, "dihedral-sylow"),
        _ => (first_local_failure(p, q)?.is_none(), "local-complements"),
    })
}

/// Reduces to `Q` in `P`, with `Q` Sylow in `H` and `P` Sylow in `N_G(Q)`.
pub fn check_via_sylow2(g: &Subgroup, h: &Subgroup) -> Result<Verdict> {
    h.require_in(g)?;
    let q = sylow2(h);
    if q.order() == 1 {
        let name = "odd-order";
        return Ok(Verdict::positive(
            Evidence::shortcut(name),
            vec![ReductionStep::Shortcut { name: name.into() }],
        ));
    }
    let n = normalizer(g, &q)?;
    let p = sylow2(&n);
    let (perfect, name) = decide_two_group(&p, &q)?;
    let trace = vec![
        ReductionStep::Sylow2 { q, n, p },
        ReductionStep::Shortcut { name: name.into() },
    ];
    if perfect {
        Ok(Verdict::positive(Evidence::shortcut(name), trace))
    } else {
        expand_negative(g, h, trace)
    }
}

/// The default pipeline: elementary abelian Sylow shortcut, then the Sylow
/// reduction, falling back to the elementwise scan if a step hits a cap.
pub fn auto_check(g: &Subgroup, h: &Subgroup) -> Result<Verdict> {
    h.require_in(g)?;
    if let Some(v) = shortcut_elementary_abelian(g) {
        return Ok(v);
    }
    match check_via_sylow2(g, h) {
        Err(Error::CapExceeded { .. }) => check_elementwise(g, h),
        other => other,
    }
}

fn product_is_group(h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    if !h.same_ambient(k) {
        return Err(Error::NotSubgroup("H and K lie in different groups".into()));
    }
    let hk = h.join(k);
    let i = h.intersection(k);
    if hk.order() * i.order() != h.order() * k.order() {
        return Err(Error::ProductNotGroup);
    }
    Ok(hk)
}

/// Lifts an inverse-closed transversal of `H cap K` in `K` to one of `H` in
/// `HK`; returns `HK` and the transversal.
pub fn diamond_lift(h: &Subgroup, k: &Subgroup, l: &[u32]) -> Result<(Subgroup, Vec<u32>)> {
    let hk = product_is_group(h, k)?;
    let i = h.intersection(k);
    if !validate_transversal(k, &i, l)? {
        return Err(Error::InvalidTransversal(
            "not an inverse-closed transversal of H cap K in K".into(),
        ));
    }
    // kH = k'H iff k^-1 k' lies in H cap K, so the same set works upstairs
    if !validate_transversal(&hk, h, l)? {
        return Err(Error::InvalidTransversal(
            "lift is not a transversal of H in HK".into(),
        ));
    }
    Ok((hk, l.to_vec()))
}

/// With `HK` a group and `|H|_2 = |H cap K|_2`, returns whether
/// `H cap K` is a perfect code of `K` and whether `H` is one of `HK`; the
/// two agree.
pub fn diamond_converse_check(h: &Subgroup, k: &Subgroup) -> Result<(bool, bool)> {
    let hk = product_is_group(h, k)?;
    let i = h.intersection(k);
    let two = |n: usize| 1usize << n.trailing_zeros();
    if two(h.order()) != two(i.order()) {
        return Err(Error::PreconditionViolated(
            "|H|_2 differs from |H cap K|_2".into(),
        ));
    }
    Ok((
        check_elementwise(k, &i)?.is_perfect_code,
        check_elementwise(&hk, h)?.is_perfect_code,
    ))
}

/// Decides `M` in `G` through `G/K`, where `K <= M` is normal in `G` and has
/// the complement `c`.
pub fn split_reduction(g: &Subgroup, m: &Subgroup, k: &Subgroup, c: &Subgroup) -> Result<Verdict> {
    m.require_in(g)?;
    k.require_in(m)?;
    c.require_in(g)?;
    if !k.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    if k.intersection(c).order() != 1 || k.order() * c.order() != g.order() {
        return Err(Error::NotComplement(format!(
            "|K| = {}, |C| = {}, |G| = {}",
            k.order(),
            c.order(),
            g.order()
        )));
    }
    let (target, epi) = quotient(g, k)?;
    let image = epi.image_subgroup(m)?;
    let below = check_elementwise(&target.whole(), &image)?;
    let trace = vec![
        ReductionStep::Split { k: k.clone() },
        ReductionStep::Quotient { n: k.clone() },
    ];
    if below.is_perfect_code {
        Ok(Verdict::positive(
            Evidence::shortcut("split-quotient"),
            trace,
        ))
    } else {
        expand_negative(g, m, trace)
    }
}

/// Outcome of passing through a normal subgroup `N <= H`.
#[derive(Debug, Clone)]
pub enum LiftStatus {
    /// `H/N` is a perfect code of `G/N` and `N` one of `G`.
    Positive(Verdict),
    /// `H/N` is not a perfect code of `G/N`, so neither is `H` of `G`.
    Negative(Verdict),
    /// `H/N` is a perfect code but `N` is not, which decides nothing.
    Inconclusive,
}

pub fn lift_through_normal(g: &Subgroup, n: &Subgroup, h: &Subgroup) -> Result<LiftStatus> {
    h.require_in(g)?;
    n.require_in(h)?;
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let (target, epi) = quotient(g, n)?;
    let image = epi.image_subgroup(h)?;
    let trace = vec![ReductionStep::Quotient { n: n.clone() }];
    if !auto_check(&target.whole(), &image)?.is_perfect_code {
        return Ok(LiftStatus::Negative(expand_negative(g, h, trace)?));
    }
    if auto_check(g, n)?.is_perfect_code {
        Ok(LiftStatus::Positive(Verdict::positive(
            Evidence::shortcut("normal-lift"),
            trace,
        )))
    } else {
        Ok(LiftStatus::Inconclusive)
    }
}
