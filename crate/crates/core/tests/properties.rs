//! Structural laws of perfect codes checked against the elementwise scan.

mod common;

use std::sync::OnceLock;

use perfcode::lattice::all_subgroups;
use perfcode::perfect::{auto_check, check_elementwise};
use perfcode::products::{direct_product, semidirect_product, wreath_s};
use perfcode::quotient::quotient;
use perfcode::small::{alt, cyclic, dihedral, elemab, quaternion, sym};
use perfcode::{FiniteGroup, Permutation, Subgroup};
use proptest::prelude::*;

struct Entry {
    group: FiniteGroup,
    subs: Vec<Subgroup>,
    verdict: Vec<bool>,
}

fn corpus() -> &'static [Entry] {
    static CELL: OnceLock<Vec<Entry>> = OnceLock::new();
    CELL.get_or_init(|| {
        common::corpus()
            .into_iter()
            .filter(|(_, g)| g.order() <= 64)
            .map(|(_, group)| {
                let g = group.whole();
                let subs = all_subgroups(&g, 200).unwrap();
                let verdict = subs
                    .iter()
                    .map(|h| check_elementwise(&g, h).unwrap().is_perfect_code)
                    .collect();
                Entry {
                    group,
                    subs,
                    verdict,
                }
            })
            .collect()
    })
}

fn pc(g: &Subgroup, h: &Subgroup) -> bool {
    check_elementwise(g, h).unwrap().is_perfect_code
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn perfect_codes_stay_perfect_in_intermediate_groups(gi in any::<usize>(), hi in any::<usize>(), mi in any::<usize>()) {
        let entry = &corpus()[gi % corpus().len()];
        let k = hi % entry.subs.len();
        let h = &entry.subs[k];
        let over: Vec<&Subgroup> = entry.subs.iter().filter(|m| h.is_subgroup_of(m)).collect();
        let m = over[mi % over.len()];
        if entry.verdict[k] {
            prop_assert!(pc(m, h));
        }
    }

    #[test]
    fn perfect_codes_pass_to_quotients(gi in any::<usize>(), hi in any::<usize>(), ni in any::<usize>()) {
        let entry = &corpus()[gi % corpus().len()];
        let g = entry.group.whole();
        let k = hi % entry.subs.len();
        let h = &entry.subs[k];
        let normals: Vec<&Subgroup> = entry.subs.iter().filter(|n| n.is_subgroup_of(h) && n.is_normal_in(&g)).collect();
        let n = normals[ni % normals.len()];
        let (q, epi) = quotient(&g, n).unwrap();
        let image = epi.image_subgroup(h).unwrap();
        if entry.verdict[k] {
            prop_assert!(pc(&q.whole(), &image));
        }
        prop_assert_eq!(auto_check(&q.whole(), &image).unwrap().is_perfect_code, pc(&q.whole(), &image));
    }

    #[test]
    fn direct_products_factor(ai in 0usize..6, bi in 0usize..6, qi in any::<usize>(), li in any::<usize>()) {
        let small = small_factors();
        let (a, b) = (&small[ai], &small[bi]);
        let (asubs, bsubs) = (all_subgroups(&a.whole(), 64).unwrap(), all_subgroups(&b.whole(), 64).unwrap());
        let q = &asubs[qi % asubs.len()];
        let l = &bsubs[li % bsubs.len()];
        let d = direct_product(a, b).unwrap();
        let ql = d.product_subgroup(&q.permutations(), &l.permutations()).unwrap();
        let both = pc(&a.whole(), q) && pc(&b.whole(), l);
        prop_assert_eq!(pc(&d.group.whole(), &ql), both);
    }
}

fn small_factors() -> Vec<FiniteGroup> {
    vec![
        sym(3).unwrap(),
        cyclic(4).unwrap(),
        dihedral(8).unwrap(),
        quaternion(8).unwrap(),
        alt(4).unwrap(),
        elemab(2, 2).unwrap(),
    ]
}

#[test]
fn odd_order_subgroups_are_perfect_codes() {
    for entry in corpus() {
        for (h, &v) in entry.subs.iter().zip(&entry.verdict) {
            if h.order() % 2 == 1 {
                assert!(v);
            }
        }
    }
}

fn cycle_power(g: &FiniteGroup, k: i64) -> Vec<Permutation> {
    vec![g.generators()[0].pow(k)]
}

/// `(N, K, action)` triples with cyclic `K`.
fn semidirect_inputs() -> Vec<(FiniteGroup, FiniteGroup, Vec<Vec<Permutation>>)> {
    let c4 = cyclic(4).unwrap();
    let c8 = cyclic(8).unwrap();
    let c5 = cyclic(5).unwrap();
    let c3sq = elemab(3, 2).unwrap();
    let inv3: Vec<Permutation> = c3sq.generators().iter().map(|x| x.inverse()).collect();
    let v4 = elemab(2, 2).unwrap();
    let (a, b) = (v4.generators()[0].clone(), v4.generators()[1].clone());
    let rot = vec![b.clone(), a.compose(&b)];
    vec![
        (c4.clone(), cyclic(2).unwrap(), vec![cycle_power(&c4, 3)]),
        (c8.clone(), cyclic(2).unwrap(), vec![cycle_power(&c8, 3)]),
        (c8.clone(), cyclic(2).unwrap(), vec![cycle_power(&c8, 5)]),
        (c8.clone(), cyclic(2).unwrap(), vec![cycle_power(&c8, 7)]),
        (c5.clone(), cyclic(4).unwrap(), vec![cycle_power(&c5, 2)]),
        (c3sq, cyclic(2).unwrap(), vec![inv3]),
        (v4, cyclic(3).unwrap(), vec![rot]),
    ]
}

#[test]
fn semidirect_products_respect_invariant_subgroups() {
    for (n, k, action) in semidirect_inputs() {
        let sd = semidirect_product(&n, &k, &action).unwrap();
        let g = sd.group.whole();
        let amb = &sd.group;
        for q in all_subgroups(&sd.normal, 200).unwrap() {
            let invariant = sd
                .complement
                .generators()
                .iter()
                .all(|&c| q.generators().iter().all(|&x| q.contains(amb.conj(x, c))));
            if !invariant {
                continue;
            }
            let qk = q.join(&sd.complement);
            if pc(&sd.normal, &q) {
                assert!(pc(&g, &qk), "|N| = {}, |Q| = {}", n.order(), q.order());
            }
        }
    }
}

/// The converse fails: the centre of `C4` is not a perfect code, but with
/// the inverting `C2` on top it becomes a Klein subgroup of `D8`, which is.
#[test]
fn semidirect_converse_fails_for_the_centre_of_c4() {
    let c4 = cyclic(4).unwrap();
    let sd = semidirect_product(&c4, &cyclic(2).unwrap(), &[cycle_power(&c4, 3)]).unwrap();
    let amb = &sd.group;
    let r = sd.normal.generators()[0];
    let centre = Subgroup::generated(amb, &[amb.mul(r, r)]);
    assert!(!pc(&sd.normal, &centre));
    assert!(pc(&amb.whole(), &centre.join(&sd.complement)));
}

#[test]
fn wreath_lifts_perfect_codes() {
    for h in small_factors() {
        let w = wreath_s(&h, 2).unwrap();
        let g = w.group.whole();
        for q in all_subgroups(&h.whole(), 64).unwrap() {
            if pc(&h.whole(), &q) {
                let lifted = w.lift(&q.permutations()).unwrap();
                assert!(pc(&g, &lifted), "|H| = {}, |Q| = {}", h.order(), q.order());
            }
        }
    }
}

#[test]
fn wreath_square_of_small_two_part_subgroups() {
    for h in [
        sym(3).unwrap(),
        dihedral(10).unwrap(),
        alt(4).unwrap(),
        sym(4).unwrap(),
    ] {
        let w = wreath_s(&h, 2).unwrap();
        let g = w.group.whole();
        for q in all_subgroups(&h.whole(), 64).unwrap() {
            if q.order() % 4 != 0 {
                let lifted = w.lift(&q.permutations()).unwrap();
                assert!(auto_check(&g, &lifted).unwrap().is_perfect_code);
                assert!(pc(&g, &lifted));
            }
        }
    }
}
