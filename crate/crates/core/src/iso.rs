//! Isomorphism types of small groups: 2-group recognition and an explicit
//! isomorphism search.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::structure::normalizer;
use crate::subgroup::Subgroup;

/// Largest order `is_isomorphic` accepts.
pub const ISO_CAP: usize = 512;

/// Recognized isomorphism type. Orders are group orders, so `Dihedral(8)` is
/// the symmetry group of a square.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IsoType {
    Cyclic(u64),
    Dihedral(u64),
    GeneralizedQuaternion(u64),
    Semidihedral(u64),
    Modular(u64),
    ElementaryAbelian {
        p: u64,
        k: u32,
    },
    /// Abelian, neither cyclic nor elementary abelian; invariants descending.
    Abelian(Vec<u64>),
    NamedSmall(String),
    Fingerprint {
        order: u64,
        spectrum: Vec<(u64, u64)>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IsoKind {
    Cyclic,
    Dihedral,
    GeneralizedQuaternion,
    Semidihedral,
    Modular,
    ElementaryAbelian,
    Abelian,
    NamedSmall,
    Fingerprint,
}

impl IsoType {
    pub fn kind(&self) -> IsoKind {
        match self {
            IsoType::Cyclic(_) => IsoKind::Cyclic,
            IsoType::Dihedral(_) => IsoKind::Dihedral,
            IsoType::GeneralizedQuaternion(_) => IsoKind::GeneralizedQuaternion,
            IsoType::Semidihedral(_) => IsoKind::Semidihedral,
            IsoType::Modular(_) => IsoKind::Modular,
            IsoType::ElementaryAbelian { .. } => IsoKind::ElementaryAbelian,
            IsoType::Abelian(_) => IsoKind::Abelian,
            IsoType::NamedSmall(_) => IsoKind::NamedSmall,
            IsoType::Fingerprint { .. } => IsoKind::Fingerprint,
        }
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            IsoType::Cyclic(n)
            | IsoType::Dihedral(n)
            | IsoType::GeneralizedQuaternion(n)
            | IsoType::Semidihedral(n)
            | IsoType::Modular(n) => Some(*n),
            IsoType::ElementaryAbelian { p, k } => Some(p.pow(*k)),
            IsoType::Abelian(v) => Some(v.iter().product()),
            IsoType::NamedSmall(_) => None,
            IsoType::Fingerprint { order, .. } => Some(*order),
        }
    }

    /// Identifies the degenerate names: `D4 = C2^2`, `D2 = C2`, `C_p^1 = C_p`.
    pub fn canonical(self) -> IsoType {
        match self {
            IsoType::Dihedral(4) => IsoType::ElementaryAbelian { p: 2, k: 2 },
            IsoType::Dihedral(2) => IsoType::Cyclic(2),
            IsoType::Dihedral(1) => IsoType::Cyclic(1),
            IsoType::ElementaryAbelian { p, k: 1 } => IsoType::Cyclic(p),
            IsoType::ElementaryAbelian { k: 0, .. } => IsoType::Cyclic(1),
            other => other,
        }
    }
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoType::Cyclic(n) => write!(f, "C{n}"),
            IsoType::Dihedral(n) => write!(f, "D{n}"),
            IsoType::GeneralizedQuaternion(n) => write!(f, "Q{n}"),
            IsoType::Semidihedral(n) => write!(f, "SD{n}"),
            IsoType::Modular(n) => write!(f, "M{n}"),
            IsoType::ElementaryAbelian { p, k } => write!(f, "C{p}^{k}"),
            IsoType::Abelian(v) => {
                let parts: Vec<String> = v.iter().map(|n| format!("C{n}")).collect();
                write!(f, "{}", parts.join("x"))
            }
            IsoType::NamedSmall(s) => write!(f, "{s}"),
            IsoType::Fingerprint { order, spectrum } => {
                let parts: Vec<String> = spectrum.iter().map(|(o, c)| format!("{o}:{c}")).collect();
                write!(f, "fingerprint({order};{})", parts.join(","))
            }
        }
    }
}

/// Sorted `(element order, count)` pairs.
pub fn order_spectrum(g: &FiniteGroup) -> Vec<(u64, u64)> {
    let mut counts = std::collections::BTreeMap::new();
    for &o in g.orders() {
        *counts.entry(o as u64).or_insert(0u64) += 1;
    }
    counts.into_iter().collect()
}

pub fn is_abelian(g: &FiniteGroup) -> bool {
    let gens = g.generator_indices();
    gens.iter()
        .all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

pub fn classify_2group(p: &FiniteGroup) -> Result<IsoType> {
    let n = p.order() as u64;
    if !n.is_power_of_two() {
        return Err(Error::NotTwoGroup(n as usize));
    }
    if n == 1 {
        return Ok(IsoType::Cyclic(1));
    }
    let spectrum = order_spectrum(p);
    let max_order = spectrum.last().map(|&(o, _)| o).unwrap_or(1);
    if max_order == n {
        return Ok(IsoType::Cyclic(n));
    }
    let involutions = spectrum
        .iter()
        .find(|&&(o, _)| o == 2)
        .map(|&(_, c)| c)
        .unwrap_or(0);
    if max_order == 2 {
        return Ok(IsoType::ElementaryAbelian {
            p: 2,
            k: n.trailing_zeros(),
        });
    }
    if is_abelian(p) {
        return Ok(IsoType::Abelian(abelian_invariants(&spectrum)));
    }
    if max_order == n / 2 {
        if involutions == 1 {
            return Ok(IsoType::GeneralizedQuaternion(n));
        }
        if involutions == n / 2 + 1 {
            return Ok(IsoType::Dihedral(n));
        }
        if n >= 16 && involutions == n / 4 + 1 {
            return Ok(IsoType::Semidihedral(n));
        }
        if n >= 16 && involutions == 3 {
            return Ok(IsoType::Modular(n));
        }
    }
    Ok(IsoType::Fingerprint { order: n, spectrum })
}

/// Invariants of an abelian 2-group from how many elements have order dividing `2^i`.
fn abelian_invariants(spectrum: &[(u64, u64)]) -> Vec<u64> {
    let max_exp = spectrum
        .last()
        .map(|&(o, _)| o.trailing_zeros())
        .unwrap_or(0);
    let rank_at = |i: u32| -> u32 {
        let c: u64 = spectrum
            .iter()
            .filter(|&&(o, _)| o.trailing_zeros() <= i)
            .map(|&(_, c)| c)
            .sum();
        c.trailing_zeros()
    };
    // r[i] = number of cyclic factors of order >= 2^i
    let r: Vec<u32> = (0..=max_exp + 1)
        .map(|i| {
            if i == 0 {
                0
            } else {
                rank_at(i) - rank_at(i - 1)
            }
        })
        .collect();
    let mut out = Vec::new();
    for i in (1..=max_exp).rev() {
        let cnt = r[i as usize] - r.get(i as usize + 1).copied().unwrap_or(0);
        for _ in 0..cnt {
            out.push(1u64 << i);
        }
    }
    out
}

pub fn classify_subgroup(h: &Subgroup) -> Result<IsoType> {
    classify_2group(h.as_group())
}

/// Greedy generating set favouring high element orders.
fn search_generators(a: &FiniteGroup) -> Vec<u32> {
    let mut order: Vec<u32> = (1..a.order() as u32).collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(a.element_order(x)), x));
    let mut gens = Vec::new();
    let mut cur = Subgroup::trivial(a);
    for x in order {
        if cur.order() == a.order() {
            break;
        }
        if !cur.contains(x) {
            gens.push(x);
            cur = Subgroup::generated(a, &gens);
        }
    }
    gens
}

/// Extends `imgs` along the Cayley graph of `gens`; checks it is a
/// well-defined injective homomorphism on the generated subgroup.
fn consistent(a: &FiniteGroup, b: &FiniteGroup, gens: &[u32], imgs: &[u32]) -> Option<usize> {
    let mut map = vec![u32::MAX; a.order()];
    let mut used = FixedBitSet::with_capacity(b.order());
    map[0] = 0;
    used.insert(0);
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = a.mul(x, s);
            let z = b.mul(map[x as usize], t);
            if map[y as usize] == u32::MAX {
                if used.put(z as usize) {
                    return None;
                }
                map[y as usize] = z;
                queue.push(y);
            } else if map[y as usize] != z {
                return None;
            }
        }
    }
    Some(queue.len())
}

pub fn is_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> Result<bool> {
    for g in [a, b] {
        if g.order() > ISO_CAP {
            return Err(Error::CapExceeded {
                what: "isomorphism test order".into(),
                cap: ISO_CAP,
            });
        }
    }
    if a.order() != b.order() || order_spectrum(a) != order_spectrum(b) {
        return Ok(false);
    }
    a.build_table();
    b.build_table();
    let gens = search_generators(a);
    let mut imgs = Vec::with_capacity(gens.len());
    Ok(assign(a, b, &gens, &mut imgs))
}

fn assign(a: &FiniteGroup, b: &FiniteGroup, gens: &[u32], imgs: &mut Vec<u32>) -> bool {
    let i = imgs.len();
    if i == gens.len() {
        return consistent(a, b, gens, imgs) == Some(a.order());
    }
    let want = a.element_order(gens[i]);
    for c in 1..b.order() as u32 {
        if b.element_order(c) != want {
            continue;
        }
        imgs.push(c);
        if consistent(a, b, &gens[..=i], imgs).is_some() && assign(a, b, gens, imgs) {
            return true;
        }
        imgs.pop();
    }
    false
}

/// First `K = <H, a>` with `a` in `N_G(H) \ H`, `a^2` in `H`, whose type is
/// one of `kinds`; candidate cosets `aH` are visited in canonical order.
pub fn exists_overgroup_of_type(
    g: &Subgroup,
    h: &Subgroup,
    kinds: &[IsoKind],
) -> Result<Option<Subgroup>> {
    h.require_in(g)?;
    if !(h.order() as u64).is_power_of_two() {
        return Err(Error::NotTwoGroup(h.order()));
    }
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
        // a^2 in H is constant on the coset aH since a normalizes H.
        if !h.contains(amb.mul(a, a)) {
            continue;
        }
        let k = h.extend(a);
        if kinds.contains(&classify_subgroup(&k)?.kind()) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn gen(n: usize, cycles: &[&[&[u32]]]) -> FiniteGroup {
        let gens: Vec<Permutation> = cycles
            .iter()
            .map(|c| Permutation::from_cycles(n, c).unwrap())
            .collect();
        FiniteGroup::generate(&gens).unwrap()
    }

    #[test]
    fn small_classifications() {
        let klein = gen(4, &[&[&[0, 1], &[2, 3]], &[&[0, 2], &[1, 3]]]);
        assert_eq!(
            classify_2group(&klein).unwrap(),
            IsoType::ElementaryAbelian { p: 2, k: 2 }
        );
        let c4 = gen(4, &[&[&[0, 1, 2, 3]]]);
        assert_eq!(classify_2group(&c4).unwrap(), IsoType::Cyclic(4));
        let d8 = gen(4, &[&[&[0, 1, 2, 3]], &[&[1, 3]]]);
        assert_eq!(classify_2group(&d8).unwrap(), IsoType::Dihedral(8));
        let c4c2 = gen(6, &[&[&[0, 1, 2, 3]], &[&[4, 5]]]);
        assert_eq!(
            classify_2group(&c4c2).unwrap(),
            IsoType::Abelian(vec![4, 2])
        );
        let s3 = gen(3, &[&[&[0, 1]], &[&[0, 1, 2]]]);
        assert_eq!(classify_2group(&s3), Err(Error::NotTwoGroup(6)));
    }

    #[test]
    fn isomorphism_search() {
        let c4 = gen(4, &[&[&[0, 1, 2, 3]]]);
        let klein = gen(4, &[&[&[0, 1], &[2, 3]], &[&[0, 2], &[1, 3]]]);
        assert!(!is_isomorphic(&c4, &klein).unwrap());
        let s3a = gen(3, &[&[&[0, 1]], &[&[0, 1, 2]]]);
        let s3b = gen(
            6,
            &[&[&[0, 1], &[2, 3], &[4, 5]], &[&[0, 2, 4], &[1, 5, 3]]],
        );
        assert_eq!(s3b.order(), 6);
        assert!(is_isomorphic(&s3a, &s3b).unwrap());
        let c6 = gen(5, &[&[&[0, 1, 2], &[3, 4]]]);
        assert!(!is_isomorphic(&s3a, &c6).unwrap());
    }

    #[test]
    fn canonical_names() {
        assert_eq!(
            IsoType::Dihedral(4).canonical(),
            IsoType::ElementaryAbelian { p: 2, k: 2 }
        );
        assert_eq!(
            IsoType::ElementaryAbelian { p: 2, k: 1 }.canonical(),
            IsoType::Cyclic(2)
        );
        assert_eq!(IsoType::Semidihedral(16).to_string(), "SD16");
    }
}
