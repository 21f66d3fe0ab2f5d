//! Standard small groups: symmetric, alternating, cyclic, dihedral and the
//! 2-groups `C_m : C_2` given by `y x = x^k y`, `y^2 = x^c`.

use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::group::FiniteGroup;
use crate::iso::IsoType;
use crate::perm::Permutation;

fn group(n: usize, gens: Vec<Permutation>) -> FiniteGroup {
    let gens = if gens.is_empty() {
        vec![Permutation::identity(n)]
    } else {
        gens
    };
    FiniteGroup::generate(&gens).expect("standard generators")
}

pub fn sym(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::BadParameters("sym needs n >= 1".into()));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[&[0, 1]])?);
        let c: Vec<u32> = (0..n as u32).collect();
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[&c])?);
        }
    }
    Ok(group(n, gens))
}

pub fn alt(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::BadParameters("alt needs n >= 1".into()));
    }
    let gens = (2..n as u32)
        .map(|i| Permutation::from_cycles(n, &[&[0, 1, i]]))
        .collect::<Result<Vec<_>>>()?;
    Ok(group(n, gens))
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::BadParameters("cyclic needs n >= 1".into()));
    }
    let c: Vec<u32> = (0..n as u32).collect();
    Ok(group(n, vec![Permutation::from_cycles(n, &[&c])?]))
}

/// The dihedral group of the given order (order 4 is the Klein group).
pub fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 2 || order % 2 != 0 {
        return Err(Error::BadParameters(format!(
            "dihedral order must be even, got {order}"
        )));
    }
    let n = order / 2;
    match n {
        1 => cyclic(2),
        2 => Ok(group(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1], &[2, 3]])?,
                Permutation::from_cycles(4, &[&[0, 2], &[1, 3]])?,
            ],
        )),
        _ => {
            let c: Vec<u32> = (0..n as u32).collect();
            let refl: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
            Ok(group(
                n,
                vec![
                    Permutation::from_cycles(n, &[&c])?,
                    Permutation::from_images(refl)?,
                ],
            ))
        }
    }
}

/// `C_p^k` on `p k` points.
pub fn elemab(p: u64, k: u32) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    abelian(&vec![p; k as usize])
}

/// Direct product of cyclic groups of the given orders, on disjoint cycles.
pub fn abelian(orders: &[u64]) -> Result<FiniteGroup> {
    let n: usize = orders.iter().map(|&o| o as usize).sum::<usize>().max(1);
    let mut gens = Vec::new();
    let mut start = 0u32;
    for &o in orders {
        let c: Vec<u32> = (start..start + o as u32).collect();
        if o >= 2 {
            gens.push(Permutation::from_cycles(n, &[&c])?);
        }
        start += o as u32;
    }
    Ok(group(n, gens))
}

/// Regular representation of `<x, y | x^m, y x = x^k y, y^2 = x^c>` on the
/// points `x^i y^j <-> i + m j`.
pub fn metacyclic_2m(m: u64, k: u64, c: u64) -> Result<FiniteGroup> {
    if m < 2 || (k * k) % m != 1 % m || (c * k) % m != c % m {
        return Err(Error::BadParameters(format!(
            "inconsistent relations m={m} k={k} c={c}"
        )));
    }
    let point = |i: u64, j: u64| (i % m + m * j) as u32;
    // right multiplication by x and by y
    let mut rx = Vec::with_capacity(2 * m as usize);
    let mut ry = Vec::with_capacity(2 * m as usize);
    for j in 0..2u64 {
        for i in 0..m {
            // x^i y^j x = x^(i + k^j) y^j
            rx.push(point(i + if j == 0 { 1 } else { k }, j));
            // x^i y^j y = x^i y^(j+1), with y^2 = x^c
            ry.push(if j == 0 { point(i, 1) } else { point(i + c, 0) });
        }
    }
    let g = FiniteGroup::generate(&[Permutation::from_images(rx)?, Permutation::from_images(ry)?])?;
    if g.order() as u64 != 2 * m {
        return Err(Error::BadParameters("relations collapse the group".into()));
    }
    Ok(g)
}

fn two_power_at_least(order: u64, min: u64) -> Result<u64> {
    if !order.is_power_of_two() || order < min {
        return Err(Error::BadTag(format!(
            "order {order} must be a power of 2 at least {min}"
        )));
    }
    Ok(order)
}

pub fn quaternion(order: u64) -> Result<FiniteGroup> {
    let n = two_power_at_least(order, 8)?;
    metacyclic_2m(n / 2, n / 2 - 1, n / 4)
}

pub fn semidihedral(order: u64) -> Result<FiniteGroup> {
    let n = two_power_at_least(order, 16)?;
    metacyclic_2m(n / 2, n / 4 - 1, 0)
}

pub fn modular(order: u64) -> Result<FiniteGroup> {
    let n = two_power_at_least(order, 16)?;
    metacyclic_2m(n / 2, n / 4 + 1, 0)
}

/// A permutation group of the given isomorphism type.
pub fn small2group(tag: &IsoType) -> Result<FiniteGroup> {
    let bad = || Error::BadTag(tag.to_string());
    match tag {
        IsoType::Cyclic(n) => cyclic(*n as usize),
        IsoType::Dihedral(n) => dihedral(*n as usize).map_err(|_| bad()),
        IsoType::GeneralizedQuaternion(n) => quaternion(*n),
        IsoType::Semidihedral(n) => semidihedral(*n),
        IsoType::Modular(n) => modular(*n),
        IsoType::ElementaryAbelian { p, k } => elemab(*p, *k),
        IsoType::Abelian(v) if v.iter().all(|&o| o >= 1) => abelian(v),
        IsoType::NamedSmall(name) => match name.as_str() {
            "A4" => alt(4),
            "S4" => sym(4),
            "A5" => alt(5),
            _ => Err(bad()),
        },
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::classify_2group;

    #[test]
    fn orders() {
        assert_eq!(sym(4).unwrap().order(), 24);
        assert_eq!(alt(5).unwrap().order(), 60);
        assert_eq!(alt(2).unwrap().order(), 1);
        assert_eq!(dihedral(8).unwrap().order(), 8);
        assert_eq!(dihedral(4).unwrap().order(), 4);
        assert_eq!(elemab(3, 2).unwrap().order(), 9);
    }

    #[test]
    fn two_groups_classify_as_built() {
        let tags = [
            IsoType::Dihedral(8),
            IsoType::Dihedral(32),
            IsoType::GeneralizedQuaternion(8),
            IsoType::GeneralizedQuaternion(32),
            IsoType::Semidihedral(16),
            IsoType::Semidihedral(64),
            IsoType::Modular(16),
            IsoType::Modular(32),
            IsoType::Cyclic(16),
            IsoType::ElementaryAbelian { p: 2, k: 4 },
            IsoType::Abelian(vec![4, 4, 2]),
        ];
        for t in tags {
            let g = small2group(&t).unwrap();
            assert_eq!(classify_2group(&g).unwrap(), t, "{t}");
        }
    }

    #[test]
    fn involution_counts() {
        let d8 = small2group(&IsoType::Dihedral(8)).unwrap();
        assert_eq!((1..8).filter(|&i| d8.is_involution(i)).count(), 5);
        let q16 = small2group(&IsoType::GeneralizedQuaternion(16)).unwrap();
        assert_eq!((1..16).filter(|&i| q16.is_involution(i)).count(), 1);
        assert!(matches!(
            small2group(&IsoType::Semidihedral(8)),
            Err(Error::BadTag(_))
        ));
    }
}
