//! Named groups used by the cross-checking experiments.

use perfcode::linear::{psl2, sl2};
use perfcode::small::{alt, elemab, small2group, sym};
use perfcode::{FiniteGroup, IsoType, Result};

/// Every 2-group of order at most `max` that `small2group` can build.
pub fn library_2groups(max: u64) -> Result<Vec<(String, FiniteGroup)>> {
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
    let invariants: [&[u64]; 12] = [
        &[4, 2],
        &[4, 4],
        &[8, 2],
        &[4, 2, 2],
        &[8, 4],
        &[16, 2],
        &[4, 4, 2],
        &[8, 2, 2],
        &[4, 2, 2, 2],
        &[32, 2],
        &[16, 4],
        &[8, 8],
    ];
    for inv in invariants {
        if inv.iter().product::<u64>() <= max {
            tags.push(IsoType::Abelian(inv.to_vec()));
        }
    }
    tags.into_iter()
        .map(|t| Ok((t.to_string(), small2group(&t)?)))
        .collect()
}

/// Small symmetric and alternating groups, library 2-groups up to order 64,
/// `SL_2(3)`, `SL_2(5)`, `PSL_2(7)` and two odd elementary abelian groups.
pub fn equivalence_corpus() -> Result<Vec<(String, FiniteGroup)>> {
    let mut out = Vec::new();
    for n in 2..=5 {
        out.push((format!("S{n}"), sym(n)?));
    }
    for n in 3..=5 {
        out.push((format!("A{n}"), alt(n)?));
    }
    out.extend(library_2groups(64)?);
    out.push(("SL2(3)".into(), sl2(3)?));
    out.push(("SL2(5)".into(), sl2(5)?));
    out.push(("PSL2(7)".into(), psl2(7)?));
    out.push(("C3^2".into(), elemab(3, 2)?));
    out.push(("C5^2".into(), elemab(5, 2)?));
    Ok(out)
}
