use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::{Evidence, ReductionStep, Verdict};
use crate::error::{Error, Result};
use crate::subgroup::Subgroup;

/// `|H : H cap H^a|`, counting `x` in `H` with `a x a^-1` in `H`.
fn conjugate_index(h: &Subgroup, a: u32) -> usize {
    let amb = h.ambient();
    let ai = amb.inv(a);
    let inter = h
        .members()
        .iter()
        .filter(|&&x| h.contains(amb.conj(x, ai)))
        .count();
    h.order() / inter
}

/// Whether `aH` contains an element squaring to the identity.
fn coset_has_square_root_of_one(h: &Subgroup, a: u32) -> bool {
    let amb = h.ambient();
    h.members().iter().any(|&x| {
        let b = amb.mul(a, x);
        amb.mul(b, b) == 0
    })
}

/// Whether `a` is a criterion witness against `h` being a perfect code of `g`.
pub fn is_witness(g: &Subgroup, h: &Subgroup, a: u32) -> Result<bool> {
    h.require_in(g)?;
    if !g.contains(a) {
        return Err(Error::ElementOutsideGroup);
    }
    let amb = g.ambient();
    Ok(h.contains(amb.mul(a, a))
        && conjugate_index(h, a) % 2 == 1
        && !coset_has_square_root_of_one(h, a))
}

/// The canonically first witness in `g`, if any.
pub fn first_witness(g: &Subgroup, h: &Subgroup) -> Result<Option<u32>> {
    h.require_in(g)?;
    let amb = g.ambient();
    Ok(g.members().par_iter().copied().find_first(|&a| {
        h.contains(amb.mul(a, a))
            && !coset_has_square_root_of_one(h, a)
            && conjugate_index(h, a) % 2 == 1
    }))
}

/// Scans every element of `g` in canonical order.
pub fn check_elementwise(g: &Subgroup, h: &Subgroup) -> Result<Verdict> {
    let trace = vec![ReductionStep::Shortcut {
        name: "elementwise".into(),
    }];
    Ok(match first_witness(g, h)? {
        Some(a) => Verdict::negative(a, trace),
        None => Verdict::positive(Evidence::shortcut("criterion-c"), trace),
    })
}

/// `HaH` as a bitset over the ambient group.
fn double_coset_mask(h: &Subgroup, a: u32) -> FixedBitSet {
    let amb = h.ambient();
    let gens = h.generators();
    let mut mask = FixedBitSet::with_capacity(amb.order());
    mask.insert(a as usize);
    let mut queue = vec![a];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in gens {
            for y in [amb.mul(s, x), amb.mul(x, s)] {
                if !mask.put(y as usize) {
                    queue.push(y);
                }
            }
        }
    }
    mask
}

/// Scans double cosets `HaH`: the hypothesis `HaH = Ha^-1H` with odd
/// `|H : H cap H^a|` and the conclusion are both constant on `HaH`, since
/// conjugating by `h` in `H` carries an involution of `aH` into `haH`.
pub fn check_double_coset(g: &Subgroup, h: &Subgroup) -> Result<Verdict> {
    h.require_in(g)?;
    let amb = g.ambient();
    let mut seen = FixedBitSet::with_capacity(amb.order());
    let mut failed = false;
    for &a in g.members() {
        if seen.contains(a as usize) {
            continue;
        }
        let d = double_coset_mask(h, a);
        seen.union_with(&d);
        let self_inverse = d.contains(amb.inv(a) as usize);
        if self_inverse && conjugate_index(h, a) % 2 == 1 && !coset_has_square_root_of_one(h, a) {
            failed = true;
            break;
        }
    }
    let trace = vec![ReductionStep::Shortcut {
        name: "double-coset".into(),
    }];
    if failed {
        // the double-coset representative need not square into H, so report
        // the elementwise witness instead
        super::expand_negative(g, h, trace)
    } else {
        Ok(Verdict::positive(Evidence::shortcut("criterion-d"), trace))
    }
}
