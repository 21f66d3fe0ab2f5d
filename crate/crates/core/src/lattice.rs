//! Complete subgroup lattices of small groups.
//!
//! Every subgroup is generated by cyclic subgroups of prime-power order, so
//! closing the set of such cyclic subgroups under joins with one more seed
//! reaches every subgroup.

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashSet;

use crate::cosets::double_coset;
use crate::error::{Error, Result};
use crate::perm::gcd;
use crate::subgroup::{closure_mask, Subgroup};

/// Largest group order accepted by the lattice routines.
pub const LATTICE_CAP: usize = 10_000;

fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n % d == 0).expect("n >= 2");
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

/// All subgroups of `g`, sorted by order and then by member list.
pub fn all_subgroups(g: &Subgroup, order_cap: usize) -> Result<Vec<Subgroup>> {
    let cap = order_cap.min(LATTICE_CAP);
    if g.order() > cap {
        return Err(Error::CapExceeded {
            what: "subgroup lattice group order".into(),
            cap,
        });
    }
    let l = g.as_group();
    l.build_table();
    let n = l.order();

    // One generator per cyclic subgroup of prime-power order.
    let mut covered = FixedBitSet::with_capacity(n);
    let mut seeds = Vec::new();
    for x in 1..n as u32 {
        let o = l.element_order(x);
        if covered.contains(x as usize) || !is_prime_power(o) {
            continue;
        }
        seeds.push(x);
        let mut y = x;
        for k in 1..=o {
            if gcd(k, o) == 1 {
                covered.insert(y as usize);
            }
            y = l.mul(y, x);
        }
    }

    let trivial = closure_mask(l, &[], None);
    let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
    let mut list: Vec<(FixedBitSet, Vec<u32>)> = Vec::new();
    seen.insert(trivial.clone());
    list.push((trivial, Vec::new()));
    let mut head = 0;
    while head < list.len() {
        let (mask, gens) = list[head].clone();
        head += 1;
        for &c in &seeds {
            if mask.contains(c as usize) {
                continue;
            }
            let mut ng = gens.clone();
            ng.push(c);
            let m = closure_mask(l, &ng, Some(&mask));
            if seen.insert(m.clone()) {
                list.push((m, ng));
            }
        }
    }

    let amb = g.ambient();
    let local_to_amb = g.members();
    let mut out: Vec<Subgroup> = list
        .into_iter()
        .map(|(mask, _)| {
            let mut am = FixedBitSet::with_capacity(amb.order());
            for i in mask.ones() {
                am.insert(local_to_amb[i] as usize);
            }
            Subgroup::from_mask(amb, am)
        })
        .collect();
    out.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.members().cmp(b.members()))
    });
    Ok(out)
}

/// Maximal proper subgroups of `g`, in the order of `all_subgroups`.
pub fn maximal_subgroups(g: &Subgroup) -> Result<Vec<Subgroup>> {
    let all = all_subgroups(g, LATTICE_CAP)?;
    let proper: Vec<&Subgroup> = all.iter().filter(|s| s.order() < g.order()).collect();
    Ok(proper
        .iter()
        .filter(|s| {
            !proper
                .iter()
                .any(|t| t.order() > s.order() && s.is_subgroup_of(t))
        })
        .map(|s| (*s).clone())
        .collect())
}

/// Whether `m` is a maximal subgroup of `g`; one join per double coset `MxM`.
pub fn is_maximal(g: &Subgroup, m: &Subgroup) -> Result<bool> {
    m.require_in(g)?;
    if m.order() == g.order() {
        return Ok(false);
    }
    let mut done = m.mask().clone();
    for &x in g.members() {
        if done.contains(x as usize) {
            continue;
        }
        if m.extend(x).order() != g.order() {
            return Ok(false);
        }
        for y in double_coset(m, x)? {
            done.insert(y as usize);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::perm::Permutation;

    fn gen(n: usize, cycles: &[&[&[u32]]]) -> FiniteGroup {
        let gens: Vec<Permutation> = cycles
            .iter()
            .map(|c| Permutation::from_cycles(n, c).unwrap())
            .collect();
        FiniteGroup::generate(&gens).unwrap()
    }

    #[test]
    fn cyclic_six() {
        let c6 = gen(5, &[&[&[0, 1, 2], &[3, 4]]]);
        let orders: Vec<usize> = all_subgroups(&c6.whole(), LATTICE_CAP)
            .unwrap()
            .iter()
            .map(|s| s.order())
            .collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
    }

    #[test]
    fn sym4_lattice() {
        let s4 = gen(4, &[&[&[0, 1]], &[&[0, 1, 2, 3]]]);
        let all = all_subgroups(&s4.whole(), LATTICE_CAP).unwrap();
        assert_eq!(all.len(), 30);
        let mut maxes: Vec<usize> = maximal_subgroups(&s4.whole())
            .unwrap()
            .iter()
            .map(|s| s.order())
            .collect();
        maxes.sort_unstable();
        maxes.dedup();
        assert_eq!(maxes, vec![6, 8, 12]);
        for m in maximal_subgroups(&s4.whole()).unwrap() {
            assert!(is_maximal(&s4.whole(), &m).unwrap());
        }
        assert!(!is_maximal(&s4.whole(), &Subgroup::trivial(&s4)).unwrap());
    }

    #[test]
    fn lattice_of_a_proper_subgroup() {
        let s4 = gen(4, &[&[&[0, 1]], &[&[0, 1, 2, 3]]]);
        let d8 = Subgroup::from_permutations(
            &s4,
            &[
                Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[1, 3]]).unwrap(),
            ],
        )
        .unwrap();
        let subs = all_subgroups(&d8, LATTICE_CAP).unwrap();
        assert_eq!(subs.len(), 10);
        assert!(subs.iter().all(|s| s.is_subgroup_of(&d8)));
    }
}
