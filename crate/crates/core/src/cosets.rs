//! Coset and double-coset decompositions.

use crate::error::{Error, Result};
use crate::subgroup::Subgroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Cosets of `subgroup` partitioning an overgroup. Representatives are the
/// canonical-least member of each coset, and cosets are listed in order of
/// their representatives.
#[derive(Debug, Clone)]
pub struct CosetDecomposition {
    pub subgroup: Subgroup,
    pub side: Side,
    pub reps: Vec<u32>,
    pub cosets: Vec<Vec<u32>>,
    label: Vec<u32>,
}

impl CosetDecomposition {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Coset number of an ambient index, if it lies in the overgroup.
    pub fn coset_of(&self, i: u32) -> Option<usize> {
        match self.label[i as usize] {
            u32::MAX => None,
            c => Some(c as usize),
        }
    }
}

fn decompose(g: &Subgroup, h: &Subgroup, side: Side) -> Result<CosetDecomposition> {
    h.require_in(g)?;
    let amb = g.ambient();
    let mut label = vec![u32::MAX; amb.order()];
    let mut reps = Vec::with_capacity(g.order() / h.order());
    let mut cosets = Vec::with_capacity(g.order() / h.order());
    for &a in g.members() {
        if label[a as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        let mut members: Vec<u32> = h
            .members()
            .iter()
            .map(|&x| match side {
                Side::Left => amb.mul(a, x),
                Side::Right => amb.mul(x, a),
            })
            .collect();
        members.sort_unstable();
        for &m in &members {
            label[m as usize] = id;
        }
        reps.push(a);
        cosets.push(members);
    }
    Ok(CosetDecomposition {
        subgroup: h.clone(),
        side,
        reps,
        cosets,
        label,
    })
}

/// Left cosets `aH` of `h` in `g`.
pub fn left_cosets(g: &Subgroup, h: &Subgroup) -> Result<CosetDecomposition> {
    decompose(g, h, Side::Left)
}

/// Right cosets `Ha` of `h` in `g`.
pub fn right_cosets(g: &Subgroup, h: &Subgroup) -> Result<CosetDecomposition> {
    decompose(g, h, Side::Right)
}

/// The set `HaH`, sorted.
pub fn double_coset(h: &Subgroup, a: u32) -> Result<Vec<u32>> {
    let amb = h.ambient();
    if a as usize >= amb.order() {
        return Err(Error::ElementOutsideGroup);
    }
    let mut seen = fixedbitset::FixedBitSet::with_capacity(amb.order());
    for &x in h.members() {
        let xa = amb.mul(x, a);
        for &y in h.members() {
            seen.insert(amb.mul(xa, y) as usize);
        }
    }
    Ok(seen.ones().map(|i| i as u32).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::perm::Permutation;

    fn s3() -> FiniteGroup {
        FiniteGroup::generate(&[
            Permutation::from_cycles(3, &[&[0, 1]]).unwrap(),
            Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn cosets_partition() {
        let g = s3();
        let h =
            Subgroup::from_permutations(&g, &[Permutation::from_cycles(3, &[&[0, 1]]).unwrap()])
                .unwrap();
        for side in [Side::Left, Side::Right] {
            let d = decompose(&g.whole(), &h, side).unwrap();
            assert_eq!(d.len(), 3);
            let mut all: Vec<u32> = d.cosets.concat();
            all.sort_unstable();
            assert_eq!(all, (0..6).collect::<Vec<_>>());
            for (r, c) in d.reps.iter().zip(&d.cosets) {
                assert_eq!(c.len(), 2);
                assert_eq!(c[0], *r);
            }
        }
        assert_eq!(left_cosets(&g.whole(), &g.whole()).unwrap().len(), 1);
    }

    #[test]
    fn double_cosets() {
        let g = s3();
        let h =
            Subgroup::from_permutations(&g, &[Permutation::from_cycles(3, &[&[0, 1]]).unwrap()])
                .unwrap();
        assert_eq!(double_coset(&h, 0).unwrap(), h.members());
        let a = g.index_of(&[0, 2, 1]).unwrap();
        assert_eq!(double_coset(&h, a).unwrap().len(), 4);
        let n =
            Subgroup::from_permutations(&g, &[Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap()])
                .unwrap();
        let t = g.index_of(&[1, 0, 2]).unwrap();
        let lc = left_cosets(&g.whole(), &n).unwrap();
        assert_eq!(
            double_coset(&n, t).unwrap(),
            lc.cosets[lc.coset_of(t).unwrap()]
        );
    }
}
