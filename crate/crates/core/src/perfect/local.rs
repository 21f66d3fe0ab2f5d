//! Criteria for 2-subgroups that only look at the normalizer.
//!
//! For a 2-subgroup `H`, the elements `a` with `a^2` in `H` and odd
//! `|H : H cap H^a|` that matter can be taken in `N_G(H)`, so `H` is a perfect
//! code iff every coset `aH` with `a` in `N_G(H) \ H`, `a^2` in `H` holds an
//! involution. The cyclic, quaternion and dihedral-Sylow criteria specialise
//! this to a search for index-2 overgroups of a given type.

use fixedbitset::FixedBitSet;

use super::{expand_negative, Evidence, ReductionStep, Verdict};
use crate::error::{Error, Result};
use crate::iso::{classify_subgroup, exists_overgroup_of_type, IsoKind, IsoType};
use crate::structure::{normalizer, sylow2};
use crate::subgroup::Subgroup;

fn require_two_group(h: &Subgroup) -> Result<()> {
    if (h.order() as u64).is_power_of_two() {
        Ok(())
    } else {
        Err(Error::NotTwoGroup(h.order()))
    }
}

fn coset_has_involution(h: &Subgroup, a: u32) -> bool {
    let amb = h.ambient();
    h.members()
        .iter()
        .any(|&x| amb.is_involution(amb.mul(a, x)))
}

/// The first `a` in `N_G(H) \ H` (canonical order) with `a^2` in `H` and no
/// involution in `aH`. Such an `a` is itself a witness since `H^a = H`.
pub(crate) fn first_local_failure(g: &Subgroup, h: &Subgroup) -> Result<Option<u32>> {
    let amb = g.ambient();
    let n = normalizer(g, h)?;
    let mut covered = FixedBitSet::with_capacity(amb.order());
    for &a in n.members() {
        if h.contains(a) || covered.contains(a as usize) {
            continue;
        }
        for &x in h.members() {
            covered.insert(amb.mul(a, x) as usize);
        }
        if h.contains(amb.mul(a, a)) && !coset_has_involution(h, a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

fn finish(
    g: &Subgroup,
    h: &Subgroup,
    name: &str,
    perfect: bool,
    params: Vec<(String, String)>,
) -> Result<Verdict> {
    let trace = vec![ReductionStep::Shortcut { name: name.into() }];
    if perfect {
        Ok(Verdict::positive(
            Evidence::Shortcut {
                name: name.into(),
                params,
            },
            trace,
        ))
    } else {
        expand_negative(g, h, trace)
    }
}

/// Decides a 2-subgroup from the cosets of `H` in its normalizer.
pub fn check_2group_local(g: &Subgroup, h: &Subgroup) -> Result<Verdict> {
    h.require_in(g)?;
    require_two_group(h)?;
    let fail = first_local_failure(g, h)?;
    finish(g, h, "local-complements", fail.is_none(), Vec::new())
}

/// A nontrivial cyclic 2-subgroup is a perfect code iff no overgroup with
/// index 2 is cyclic or generalized quaternion.
pub fn check_cyclic_2subgroup(g: &Subgroup, h: &Subgroup) -> Result<Verdict> {
    h.require_in(g)?;
    if h.order() < 2
        || !(h.order() as u64).is_power_of_two()
        || classify_subgroup(h)?.kind() != IsoKind::Cyclic
    {
        return Err(Error::NotCyclicTwoGroup);
    }
    let k = exists_overgroup_of_type(g, h, &[IsoKind::Cyclic, IsoKind::GeneralizedQuaternion])?;
    finish(
        g,
        h,
        "cyclic-overgroups",
        k.is_none(),
        vec![("order".into(), h.order().to_string())],
    )
}

/// A generalized quaternion subgroup is a perfect code iff no overgroup with
/// index 2 is generalized quaternion.
pub fn check_quaternion_2subgroup(g: &Subgroup, h: &Subgroup) -> Result<Verdict> {
    h.require_in(g)?;
    if !(h.order() as u64).is_power_of_two()
        || classify_subgroup(h)?.kind() != IsoKind::GeneralizedQuaternion
    {
        return Err(Error::NotQuaternion);
    }
    let k = exists_overgroup_of_type(g, h, &[IsoKind::GeneralizedQuaternion])?;
    finish(
        g,
        h,
        "quaternion-overgroups",
        k.is_none(),
        vec![("order".into(), h.order().to_string())],
    )
}

/// Whether a 2-group is dihedral of order at least 4, counting `C2^2`.
pub(crate) fn is_dihedral_type(t: &IsoType) -> bool {
    matches!(t, IsoType::Dihedral(n) if *n >= 8)
        || *t == (IsoType::ElementaryAbelian { p: 2, k: 2 })
}

/// When `G` has dihedral Sylow 2-subgroups, a 2-subgroup `H` fails exactly
/// when it lies strictly between `1` and a cyclic 2-subgroup.
pub fn check_dihedral_sylow_context(g: &Subgroup, h: &Subgroup) -> Result<Verdict> {
    h.require_in(g)?;
    let sylow = classify_subgroup(&sylow2(g))?.canonical();
    if !is_dihedral_type(&sylow) {
        return Err(Error::PreconditionViolated(format!(
            "Sylow 2-subgroup is {sylow}, not dihedral"
        )));
    }
    if !(h.order() as u64).is_power_of_two() {
        return Err(Error::PreconditionViolated(format!(
            "order {} is not a power of 2",
            h.order()
        )));
    }
    let params = vec![("sylow".into(), sylow.to_string())];
    if h.order() == 1 || classify_subgroup(h)?.kind() != IsoKind::Cyclic {
        return finish(g, h, "dihedral-sylow", true, params);
    }
    let k = exists_overgroup_of_type(g, h, &[IsoKind::Cyclic])?;
    finish(g, h, "dihedral-sylow", k.is_none(), params)
}

/// Every subgroup is a perfect code when the Sylow 2-subgroups are
/// elementary abelian (including trivial).
pub fn shortcut_elementary_abelian(g: &Subgroup) -> Option<Verdict> {
    let p = sylow2(g);
    let amb = g.ambient();
    if p.members().iter().all(|&x| x == 0 || amb.is_involution(x)) {
        let name = "elementary-abelian-sylow";
        let params = vec![("sylow-order".to_string(), p.order().to_string())];
        Some(Verdict::positive(
            Evidence::Shortcut {
                name: name.into(),
                params,
            },
            vec![ReductionStep::Shortcut { name: name.into() }],
        ))
    } else {
        None
    }
}

/// The four conditions for `aH` to contain an involution when
/// `H = <x> : <y>` with `|x| = 2^n`, `n >= 2`, `|y| = 2`, next to a direct
/// search of `aH`. Conditions whose hypothesis fails hold vacuously.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectReport {
    pub h_type: IsoType,
    pub xa_type: IsoType,
    /// `a^2` in `<x>`.
    pub square_in_cyclic: bool,
    /// `<x, a>` cyclic forces `H` dihedral and `a^y = a^-1`.
    pub cyclic_case: bool,
    /// `H = C_{2^n} x C_2` with `<x, a>` quaternion forces `[a, y] = a^2`.
    pub abelian_quaternion_case: bool,
    /// `H` dihedral with `<x, a>` quaternion forces `[a, y]` in `<x^2>`.
    pub dihedral_quaternion_case: bool,
    pub predicted: bool,
    pub direct: bool,
}

pub fn evaluate_semidirect_conditions(
    h: &Subgroup,
    x: u32,
    y: u32,
    a: u32,
) -> Result<SemidirectReport> {
    let amb = h.ambient();
    let bad = |m: &str| Err(Error::BadDecomposition(m.into()));
    if !h.contains(x) || !h.contains(y) {
        return bad("x and y must lie in H");
    }
    let xo = amb.element_order(x);
    if !xo.is_power_of_two() || xo < 4 {
        return bad("x must have order 2^n with n >= 2");
    }
    let cx = Subgroup::generated(amb, &[x]);
    if !amb.is_involution(y) || cx.contains(y) {
        return bad("y must be an involution outside <x>");
    }
    if !cx.contains(amb.conj(x, y)) || h.order() as u64 != 2 * xo {
        return bad("H must be <x> : <y>");
    }
    if h.contains(a) || !h.contains(amb.mul(a, a)) {
        return Err(Error::PreconditionViolated(
            "need a outside H with a^2 in H".into(),
        ));
    }
    if h.generators().iter().any(|&s| !h.contains(amb.conj(s, a))) {
        return Err(Error::PreconditionViolated("a must normalize H".into()));
    }
    let order = 2 * xo;
    let h_type = classify_subgroup(h)?;
    let xa_type = classify_subgroup(&cx.extend(a))?;
    let dihedral = h_type == IsoType::Dihedral(order);
    let abelian = h_type == IsoType::Abelian(vec![xo, 2]);
    let quaternion = xa_type == IsoType::GeneralizedQuaternion(order);
    let comm = amb.commutator(a, y);

    let square_in_cyclic = cx.contains(amb.mul(a, a));
    let cyclic_case =
        xa_type != IsoType::Cyclic(order) || (dihedral && amb.conj(a, y) == amb.inv(a));
    let abelian_quaternion_case = !(abelian && quaternion) || comm == amb.mul(a, a);
    let x2 = Subgroup::generated(amb, &[amb.mul(x, x)]);
    let dihedral_quaternion_case = !(dihedral && quaternion) || x2.contains(comm);
    let predicted =
        square_in_cyclic && cyclic_case && abelian_quaternion_case && dihedral_quaternion_case;
    Ok(SemidirectReport {
        h_type,
        xa_type,
        square_in_cyclic,
        cyclic_case,
        abelian_quaternion_case,
        dihedral_quaternion_case,
        predicted,
        direct: coset_has_involution(h, a),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::small::{cyclic, dihedral, quaternion};

    #[test]
    fn cyclic_inside_c8() {
        let c8 = cyclic(8).unwrap();
        let g = c8.whole();
        let h = Subgroup::generated(&c8, &[c8.pow(1, 4)]);
        assert!(!check_cyclic_2subgroup(&g, &h).unwrap().is_perfect_code);
        assert!(!check_2group_local(&g, &h).unwrap().is_perfect_code);
    }

    #[test]
    fn quaternion_in_itself() {
        let q = quaternion(16).unwrap();
        let g = q.whole();
        assert!(check_quaternion_2subgroup(&g, &g).unwrap().is_perfect_code);
        assert_eq!(
            check_quaternion_2subgroup(&g, &Subgroup::trivial(&q)).unwrap_err(),
            Error::NotQuaternion
        );
    }

    #[test]
    fn dihedral_context() {
        let d = dihedral(16).unwrap();
        let g = d.whole();
        let r = (1..16u32).find(|&i| d.element_order(i) == 8).unwrap();
        let c2 = Subgroup::generated(&d, &[d.pow(r, 4)]);
        assert!(
            !check_dihedral_sylow_context(&g, &c2)
                .unwrap()
                .is_perfect_code
        );
        let refl = Subgroup::generated(
            &d,
            &[(1..16u32)
                .find(|&i| d.is_involution(i) && !Subgroup::generated(&d, &[r]).contains(i))
                .unwrap()],
        );
        assert!(
            check_dihedral_sylow_context(&g, &refl)
                .unwrap()
                .is_perfect_code
        );
        let q = quaternion(8).unwrap();
        assert!(matches!(
            check_dihedral_sylow_context(&q.whole(), &Subgroup::trivial(&q)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn elementary_abelian_shortcut() {
        let c2 = cyclic(6).unwrap();
        assert!(shortcut_elementary_abelian(&c2.whole()).is_some());
        let c4 = cyclic(4).unwrap();
        assert!(shortcut_elementary_abelian(&c4.whole()).is_none());
    }
}
