#![allow(dead_code)]

use perfcode::linear::{psl2, sl2};
use perfcode::small::{alt, elemab, small2group, sym};
use perfcode::{FiniteGroup, IsoType};

/// Every 2-group of order at most `max` that `small2group` names.
pub fn library_2groups(max: u64) -> Vec<(String, FiniteGroup)> {
    let mut tags = Vec::new();
    let mut n = 2;
    while n <= max {
        tags.push(IsoType::Cyclic(n));
        if n >= 8 {
            tags.push(IsoType::Dihedral(n));
            tags.push(IsoType::GeneralizedQuaternion(n));
        }
        if n >= 16 {
            tags.push(IsoType::Semidihedral(n));
            tags.push(IsoType::Modular(n));
        }
        if n >= 4 {
            tags.push(IsoType::ElementaryAbelian {
                p: 2,
                k: n.trailing_zeros(),
            });
        }
        n *= 2;
    }
    for inv in [
        vec![4, 2],
        vec![4, 4],
        vec![8, 2],
        vec![4, 2, 2],
        vec![8, 4],
        vec![16, 2],
        vec![4, 4, 2],
        vec![8, 2, 2],
        vec![4, 2, 2, 2],
    ] {
        if inv.iter().product::<u64>() <= max {
            tags.push(IsoType::Abelian(inv));
        }
    }
    tags.into_iter()
        .map(|t| (t.to_string(), small2group(&t).unwrap()))
        .collect()
}

/// The equivalence corpus: small symmetric and alternating groups, library
/// 2-groups up to order 64, SL2(3), SL2(5), PSL2(7) and elementary abelians.
pub fn corpus() -> Vec<(String, FiniteGroup)> {
    let mut out = Vec::new();
    for n in 2..=5 {
        out.push((format!("S{n}"), sym(n).unwrap()));
    }
    for n in 3..=5 {
        out.push((format!("A{n}"), alt(n).unwrap()));
    }
    out.extend(library_2groups(64));
    out.push(("SL2(3)".into(), sl2(3).unwrap()));
    out.push(("SL2(5)".into(), sl2(5).unwrap()));
    out.push(("PSL2(7)".into(), psl2(7).unwrap()));
    out.push(("C3^2".into(), elemab(3, 2).unwrap()));
    out.push(("C5^2".into(), elemab(5, 2).unwrap()));
    out
}

/// Checks a negative witness from the definitions, on permutations.
pub fn witness_holds(h: &perfcode::Subgroup, a: u32) -> bool {
    let amb = h.ambient();
    let pa = amb.perm(a);
    let pai = pa.inverse();
    if !h.contains_perm(&pa.compose(&pa)) {
        return false;
    }
    let hs = h.permutations();
    let meet = hs
        .iter()
        .filter(|x| h.contains_perm(&pa.compose(x).compose(&pai)))
        .count();
    let odd_index = (hs.len() / meet) % 2 == 1;
    let id = perfcode::Permutation::identity(amb.degree());
    let clean = hs.iter().all(|x| {
        let b = pa.compose(x);
        b.compose(&b) != id
    });
    odd_index && clean
}
