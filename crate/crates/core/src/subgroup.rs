//! Subgroups as sorted index sets into a shared ambient group.

use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

struct SubData {
    ambient: FiniteGroup,
    members: Vec<u32>,
    mask: FixedBitSet,
    gens: OnceLock<Vec<u32>>,
    group: OnceLock<FiniteGroup>,
}

/// A subgroup of a materialized ambient group. Indices refer to the ambient
/// canonical order; `members` is sorted, so it is also canonical.
#[derive(Clone)]
pub struct Subgroup(Arc<SubData>);

/// Closure of `gens` under right multiplication, seeded with `seed` if given.
pub(crate) fn closure_mask(
    ambient: &FiniteGroup,
    gens: &[u32],
    seed: Option<&FixedBitSet>,
) -> FixedBitSet {
    let n = ambient.order();
    let mut mask = FixedBitSet::with_capacity(n);
    let mut queue: Vec<u32> = Vec::new();
    match seed {
        Some(s) => {
            mask.union_with(s);
            queue.extend(s.ones().map(|i| i as u32));
        }
        None => {
            mask.insert(0);
            queue.push(0);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &g in gens {
            let y = ambient.mul(x, g);
            if !mask.put(y as usize) {
                queue.push(y);
            }
        }
    }
    mask
}

impl Subgroup {
    fn build(ambient: &FiniteGroup, mask: FixedBitSet, gens: Option<Vec<u32>>) -> Self {
        let members: Vec<u32> = mask.ones().map(|i| i as u32).collect();
        let gens_cell = OnceLock::new();
        if let Some(g) = gens {
            let _ = gens_cell.set(g);
        }
        Subgroup(Arc::new(SubData {
            ambient: ambient.clone(),
            members,
            mask,
            gens: gens_cell,
            group: OnceLock::new(),
        }))
    }

    pub fn whole(ambient: &FiniteGroup) -> Self {
        let mut mask = FixedBitSet::with_capacity(ambient.order());
        mask.insert_range(..);
        Self::build(ambient, mask, Some(ambient.generator_indices()))
    }

    pub fn trivial(ambient: &FiniteGroup) -> Self {
        let mut mask = FixedBitSet::with_capacity(ambient.order());
        mask.insert(0);
        Self::build(ambient, mask, Some(Vec::new()))
    }

    /// The subgroup generated by the given ambient indices.
    pub fn generated(ambient: &FiniteGroup, gens: &[u32]) -> Self {
        let gens: Vec<u32> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mask = closure_mask(ambient, &gens, None);
        Self::build(ambient, mask, Some(gens))
    }

    pub fn from_permutations(ambient: &FiniteGroup, perms: &[Permutation]) -> Result<Self> {
        let idx = perms
            .iter()
            .map(|p| ambient.index_of_perm(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::generated(ambient, &idx))
    }

    /// Trusted: `mask` must already be a subgroup.
    pub(crate) fn from_mask(ambient: &FiniteGroup, mask: FixedBitSet) -> Self {
        Self::build(ambient, mask, None)
    }

    /// Checked: verifies that `members` is closed under products.
    pub fn from_members(ambient: &FiniteGroup, members: &[u32]) -> Result<Self> {
        let mut mask = FixedBitSet::with_capacity(ambient.order());
        for &m in members {
            if m as usize >= ambient.order() {
                return Err(Error::ElementOutsideGroup);
            }
            mask.insert(m as usize);
        }
        if !mask.contains(0) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        let s = Self::from_mask(ambient, mask);
        let gens = s.generators().to_vec();
        for &x in s.members() {
            for &g in &gens {
                if !s.contains(ambient.mul(x, g)) {
                    return Err(Error::NotSubgroup("not closed under products".into()));
                }
            }
        }
        Ok(s)
    }

    pub fn ambient(&self) -> &FiniteGroup {
        &self.0.ambient
    }

    pub fn order(&self) -> usize {
        self.0.members.len()
    }

    pub fn members(&self) -> &[u32] {
        &self.0.members
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.0.mask
    }

    pub fn contains(&self, i: u32) -> bool {
        self.0.mask.contains(i as usize)
    }

    pub fn contains_perm(&self, x: &Permutation) -> bool {
        self.0
            .ambient
            .index_of(x.images())
            .is_some_and(|i| self.contains(i))
    }

    /// Position of an ambient index inside this subgroup's canonical order.
    pub fn position(&self, i: u32) -> Option<usize> {
        self.0.members.binary_search(&i).ok()
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.0.ambient.order()
    }

    /// A small generating set, greedily chosen in canonical order unless the
    /// subgroup was built from explicit generators.
    pub fn generators(&self) -> &[u32] {
        self.0.gens.get_or_init(|| {
            let amb = &self.0.ambient;
            let mut gens = Vec::new();
            let mut cur = closure_mask(amb, &[], None);
            let mut count = 1;
            for &m in &self.0.members {
                if count == self.order() {
                    break;
                }
                if !cur.contains(m as usize) {
                    gens.push(m);
                    cur = closure_mask(amb, &gens, Some(&cur));
                    count = cur.count_ones(..);
                }
            }
            gens
        })
    }

    /// This subgroup as a standalone group; its canonical order matches `members`.
    pub fn as_group(&self) -> &FiniteGroup {
        self.0.group.get_or_init(|| {
            let amb = &self.0.ambient;
            if self.is_whole() {
                return amb.clone();
            }
            let d = amb.degree();
            let mut flat = Vec::with_capacity(self.order() * d);
            for &m in &self.0.members {
                flat.extend_from_slice(amb.element(m));
            }
            let mut gens: Vec<Permutation> =
                self.generators().iter().map(|&g| amb.perm(g)).collect();
            if gens.is_empty() {
                gens.push(Permutation::identity(d));
            }
            FiniteGroup::from_sorted_flat(d, gens, flat)
        })
    }

    pub fn same_ambient(&self, other: &Subgroup) -> bool {
        self.0.ambient.ptr_eq(&other.0.ambient)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.same_ambient(other) && self.0.mask.is_subset(&other.0.mask)
    }

    /// Errors unless `self <= g` in the same ambient.
    pub fn require_in(&self, g: &Subgroup) -> Result<()> {
        if !self.same_ambient(g) {
            return Err(Error::NotSubgroup("different ambient groups".into()));
        }
        if !self.0.mask.is_subset(&g.0.mask) {
            return Err(Error::NotSubgroup(
                "not contained in the ambient subgroup".into(),
            ));
        }
        Ok(())
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        assert!(self.same_ambient(other));
        let mut m = self.0.mask.clone();
        m.intersect_with(&other.0.mask);
        Subgroup::from_mask(&self.0.ambient, m)
    }

    pub fn join(&self, other: &Subgroup) -> Subgroup {
        assert!(self.same_ambient(other));
        let mut gens = self.generators().to_vec();
        gens.extend_from_slice(other.generators());
        Subgroup::generated(&self.0.ambient, &gens)
    }

    /// `self` together with one more element.
    pub fn extend(&self, x: u32) -> Subgroup {
        let mut gens = self.generators().to_vec();
        gens.push(x);
        let amb = &self.0.ambient;
        let mask = closure_mask(amb, &gens, Some(&self.0.mask));
        Subgroup::build(amb, mask, Some(gens))
    }

    /// `[g : self]` for an overgroup `g`.
    pub fn index_in(&self, g: &Subgroup) -> usize {
        g.order() / self.order()
    }

    /// Whether every element of `g` normalizes `self`.
    pub fn is_normal_in(&self, g: &Subgroup) -> bool {
        let amb = &self.0.ambient;
        g.generators().iter().all(|&x| {
            self.generators()
                .iter()
                .all(|&h| self.contains(amb.conj(h, x)))
        })
    }

    pub fn permutations(&self) -> Vec<Permutation> {
        self.0
            .members
            .iter()
            .map(|&i| self.0.ambient.perm(i))
            .collect()
    }

    /// The same element set inside another ambient group containing it.
    pub fn transport(&self, ambient: &FiniteGroup) -> Result<Subgroup> {
        let perms: Vec<Permutation> = self
            .generators()
            .iter()
            .map(|&g| self.0.ambient.perm(g))
            .collect();
        let s = Subgroup::from_permutations(ambient, &perms)?;
        debug_assert_eq!(s.order(), self.order());
        Ok(s)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_ambient(other) && self.0.mask == other.0.mask
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subgroup(order {} in {})",
            self.order(),
            self.0.ambient.order()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> FiniteGroup {
        let t = Permutation::from_cycles(n, &[&[0, 1]]).unwrap();
        let c: Vec<u32> = (0..n as u32).collect();
        let c = Permutation::from_cycles(n, &[&c]).unwrap();
        FiniteGroup::generate(&[t, c]).unwrap()
    }

    #[test]
    fn generated_subgroups() {
        let g = sym(4);
        let h =
            Subgroup::from_permutations(&g, &[Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap()])
                .unwrap();
        assert_eq!(h.order(), 3);
        assert!(!h.is_normal_in(&g.whole()));
        let v = Subgroup::from_permutations(
            &g,
            &[
                Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(v.order(), 4);
        assert!(v.is_normal_in(&g.whole()));
        assert_eq!(v.join(&h).order(), 12);
        assert_eq!(v.intersection(&h).order(), 1);
        assert_eq!(v.as_group().order(), 4);
    }

    #[test]
    fn from_members_rejects_non_closed() {
        let g = sym(3);
        let t = g.index_of(&[1, 0, 2]).unwrap();
        let u = g.index_of(&[0, 2, 1]).unwrap();
        assert!(Subgroup::from_members(&g, &[0, t, u]).is_err());
        assert!(Subgroup::from_members(&g, &[0, t]).is_ok());
    }

    #[test]
    fn small_generating_sets() {
        let g = sym(5);
        let w = g.whole();
        let s = Subgroup::from_mask(&g, w.mask().clone());
        let gens = s.generators();
        // each greedy generator at least doubles the closure
        assert!(1usize << gens.len() <= 120);
        assert_eq!(Subgroup::generated(&g, gens).order(), 120);
    }
}
