//! Normalizers, centralizers, cores, Sylow 2-subgroups and conjugacy.
//!
//! All of these are brute-force filters over the elements of the overgroup.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::cosets::right_cosets;
use crate::error::{Error, Result};
use crate::perm::two_part;
use crate::subgroup::Subgroup;

fn filter(g: &Subgroup, pred: impl Fn(u32) -> bool + Sync) -> Subgroup {
    let keep: Vec<u32> = g
        .members()
        .par_iter()
        .copied()
        .filter(|&x| pred(x))
        .collect();
    let mut mask = FixedBitSet::with_capacity(g.ambient().order());
    for x in keep {
        mask.insert(x as usize);
    }
    Subgroup::from_mask(g.ambient(), mask)
}

/// `{x in g : h^x = h}`.
pub fn normalizer(g: &Subgroup, h: &Subgroup) -> Result<Subgroup> {
    h.require_in(g)?;
    let amb = g.ambient();
    let gens = h.generators();
    Ok(filter(g, |x| {
        gens.iter().all(|&s| h.contains(amb.conj(s, x)))
    }))
}

pub fn centralizer(g: &Subgroup, x: u32) -> Result<Subgroup> {
    if !g.contains(x) {
        return Err(Error::ElementOutsideGroup);
    }
    let amb = g.ambient();
    Ok(filter(g, |y| amb.mul(x, y) == amb.mul(y, x)))
}

/// Largest normal subgroup of `g` contained in `h`.
pub fn core(g: &Subgroup, h: &Subgroup) -> Result<Subgroup> {
    let rc = right_cosets(g, h)?;
    let amb = g.ambient();
    // x lies in h^r iff r x r^-1 lies in h; h^r depends only on the right coset hr.
    let invs: Vec<u32> = rc.reps.iter().map(|&r| amb.inv(r)).collect();
    Ok(filter(h, |x| {
        invs.iter().all(|&ri| h.contains(amb.conj(x, ri)))
    }))
}

pub fn is_normal(g: &Subgroup, h: &Subgroup) -> Result<bool> {
    h.require_in(g)?;
    Ok(h.is_normal_in(g))
}

/// Whether `x^(2^k)` lies in `p` for some k.
fn two_power_into(amb: &crate::group::FiniteGroup, x: u32, p: &Subgroup) -> bool {
    let mut y = x;
    let bound = 64 - (amb.element_order(x)).leading_zeros() + 1;
    for _ in 0..=bound {
        if p.contains(y) {
            return true;
        }
        y = amb.mul(y, y);
    }
    false
}

/// A Sylow 2-subgroup of `g` by normalizer ascent.
pub fn sylow2(g: &Subgroup) -> Subgroup {
    let amb = g.ambient();
    let target = two_part(g.order() as u64) as usize;
    if target == 1 {
        return Subgroup::trivial(amb);
    }
    // Start from a 2-element of largest order, canonical-least among those.
    let mut best: Option<(u64, u32)> = None;
    for &x in g.members() {
        let o = amb.element_order(x);
        if o.is_power_of_two() && best.is_none_or(|(bo, _)| o > bo) {
            best = Some((o, x));
        }
    }
    let mut gens = vec![best.expect("even order has an involution").1];
    let mut p = Subgroup::generated(amb, &gens);
    while p.order() < target {
        let n = normalizer(g, &p).expect("p <= g");
        let x = n
            .members()
            .iter()
            .copied()
            .find(|&x| !p.contains(x) && two_power_into(amb, x, &p))
            .expect("a proper 2-subgroup has even index in its normalizer");
        gens.push(x);
        p = p.extend(x);
    }
    p
}

/// Conjugacy class of `x` under `g`, sorted.
pub fn conjugacy_class(g: &Subgroup, x: u32) -> Vec<u32> {
    let amb = g.ambient();
    let mut seen = FixedBitSet::with_capacity(amb.order());
    seen.insert(x as usize);
    let mut queue = vec![x];
    let mut head = 0;
    while head < queue.len() {
        let y = queue[head];
        head += 1;
        for &s in g.generators() {
            let z = amb.conj(y, s);
            if !seen.put(z as usize) {
                queue.push(z);
            }
        }
    }
    queue.sort_unstable();
    queue
}

/// Elements of `g` fixing `point`.
pub fn point_stabilizer(g: &Subgroup, point: u32) -> Subgroup {
    let amb = g.ambient();
    filter(g, |x| amb.element(x)[point as usize] == point)
}

/// Elements of `g` mapping the set `points` onto itself.
pub fn setwise_stabilizer(g: &Subgroup, points: &[u32]) -> Subgroup {
    let amb = g.ambient();
    filter(g, |x| {
        points
            .iter()
            .all(|&p| points.contains(&amb.element(x)[p as usize]))
    })
}

pub fn involutions(g: &Subgroup) -> Vec<u32> {
    let amb = g.ambient();
    g.members()
        .iter()
        .copied()
        .filter(|&x| amb.is_involution(x))
        .collect()
}

/// Whether `n` has a complement in `g`, for `n` normal of index 2.
pub fn is_split_index2(g: &Subgroup, n: &Subgroup) -> Result<bool> {
    n.require_in(g)?;
    let idx = g.order() / n.order();
    if idx != 2 {
        return Err(Error::IndexNotTwo(idx));
    }
    let amb = g.ambient();
    Ok(g.members()
        .iter()
        .any(|&x| !n.contains(x) && amb.is_involution(x)))
}

/// Whether some element of `g` conjugates `a` onto `b`.
pub fn are_conjugate(g: &Subgroup, a: &Subgroup, b: &Subgroup) -> bool {
    if a.order() != b.order() {
        return false;
    }
    let amb = g.ambient();
    let gens = a.generators();
    g.members()
        .iter()
        .any(|&x| gens.iter().all(|&s| b.contains(amb.conj(s, x))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::perm::Permutation;

    fn sym(n: usize) -> FiniteGroup {
        let c: Vec<u32> = (0..n as u32).collect();
        FiniteGroup::generate(&[
            Permutation::from_cycles(n, &[&[0, 1]]).unwrap(),
            Permutation::from_cycles(n, &[&c]).unwrap(),
        ])
        .unwrap()
    }

    fn brute_normalizer(g: &Subgroup, h: &Subgroup) -> Vec<u32> {
        let amb = g.ambient();
        g.members()
            .iter()
            .copied()
            .filter(|&x| h.members().iter().all(|&y| h.contains(amb.conj(y, x))))
            .collect()
    }

    #[test]
    fn s3_normalizer_and_core() {
        let g = sym(3);
        let w = g.whole();
        let h =
            Subgroup::from_permutations(&g, &[Permutation::from_cycles(3, &[&[0, 1]]).unwrap()])
                .unwrap();
        assert_eq!(normalizer(&w, &h).unwrap(), h);
        assert_eq!(core(&w, &h).unwrap().order(), 1);
        let x = g.index_of(&[1, 0, 2]).unwrap();
        assert_eq!(centralizer(&w, x).unwrap(), h);
        assert_eq!(centralizer(&w, 0).unwrap(), w);
    }

    #[test]
    fn sylow_orders() {
        for n in 2..=6 {
            let g = sym(n);
            let p = sylow2(&g.whole());
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(p.order() as u64, two_part(fact));
        }
    }

    #[test]
    fn normalizer_matches_definition_on_s4() {
        let g = sym(4);
        let w = g.whole();
        for x in 0..g.order() as u32 {
            for y in [0u32, 3, 7, 11] {
                let h = Subgroup::generated(&g, &[x, y]);
                let n = normalizer(&w, &h).unwrap();
                assert_eq!(n.members(), brute_normalizer(&w, &h).as_slice());
            }
        }
    }

    #[test]
    fn split_index_two() {
        let g = sym(3);
        let a3 =
            Subgroup::from_permutations(&g, &[Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap()])
                .unwrap();
        assert!(is_split_index2(&g.whole(), &a3).unwrap());
        let c4 = FiniteGroup::generate(&[Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap()])
            .unwrap();
        let c2 = Subgroup::from_permutations(
            &c4,
            &[Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap()],
        )
        .unwrap();
        assert!(!is_split_index2(&c4.whole(), &c2).unwrap());
        assert_eq!(
            is_split_index2(&g.whole(), &Subgroup::trivial(&g)),
            Err(Error::IndexNotTwo(6))
        );
    }
}
