//! The maximal subgroups of `PSL_2(q)` and `PGL_2(q)` by family, their
//! existence conditions and the isomorphism type of their Sylow 2-subgroups.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{is_prime, prime_power, FiniteField};
use crate::group::FiniteGroup;
use crate::iso::{classify_subgroup, is_isomorphic, IsoType};
use crate::linear::{pgl2, point_perm, psl2, sl2_generators, Mat2};
use crate::perm::{gcd, two_part};
use crate::small::{alt, sym};
use crate::structure::{normalizer, point_stabilizer, setwise_stabilizer, sylow2};
use crate::subgroup::Subgroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Psl,
    Pgl,
}

/// A row of the maximal-subgroup tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MaximalTag {
    /// Stabilizer of a projective point.
    Borel,
    /// Dihedral normalizer of the split torus.
    DMinus,
    /// Dihedral normalizer of the non-split torus.
    DPlus,
    /// `PGL_2(q0)` over a subfield.
    SubfieldPgl(u64),
    /// `PSL_2(q0)` over a subfield.
    SubfieldPsl(u64),
    /// `PSL_2(q)` itself, as a subgroup of `PGL_2(q)`.
    Socle,
    A4,
    S4,
    A5,
}

impl fmt::Display for MaximalTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaximalTag::Borel => write!(f, "borel"),
            MaximalTag::DMinus => write!(f, "d-1"),
            MaximalTag::DPlus => write!(f, "d+1"),
            MaximalTag::SubfieldPgl(q0) => write!(f, "pgl2:{q0}"),
            MaximalTag::SubfieldPsl(q0) => write!(f, "psl2:{q0}"),
            MaximalTag::Socle => write!(f, "psl"),
            MaximalTag::A4 => write!(f, "a4"),
            MaximalTag::S4 => write!(f, "s4"),
            MaximalTag::A5 => write!(f, "a5"),
        }
    }
}

impl FromStr for MaximalTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let sub = |rest: &str| {
            rest.parse::<u64>()
                .map_err(|_| Error::BadTag(s.to_string()))
        };
        Ok(match s {
            "borel" => MaximalTag::Borel,
            "d-1" => MaximalTag::DMinus,
            "d+1" => MaximalTag::DPlus,
            "psl" => MaximalTag::Socle,
            "a4" => MaximalTag::A4,
            "s4" => MaximalTag::S4,
            "a5" => MaximalTag::A5,
            _ => {
                if let Some(rest) = s.strip_prefix("pgl2:") {
                    MaximalTag::SubfieldPgl(sub(rest)?)
                } else if let Some(rest) = s.strip_prefix("psl2:") {
                    MaximalTag::SubfieldPsl(sub(rest)?)
                } else {
                    return Err(Error::BadTag(s.to_string()));
                }
            }
        })
    }
}

/// Subfield orders `q0` with `q = q0^r`, `r` prime.
fn prime_subfields(q: u64) -> Vec<(u64, u32)> {
    let Some((p, f)) = prime_power(q) else {
        return Vec::new();
    };
    (1..=f.max(1))
        .filter(|&f0| f % f0 == 0 && is_prime((f / f0) as u64))
        .map(|f0| (p.pow(f0), f / f0))
        .collect()
}

/// Whether the row exists (as a maximal subgroup) for this `q`.
pub fn row_condition(family: Family, q: u64, tag: MaximalTag) -> bool {
    let Some((p, f)) = prime_power(q) else {
        return false;
    };
    if q < 4 {
        return false;
    }
    if p == 2 {
        // even characteristic: PSL = PGL and only the three geometric rows are tabulated
        return matches!(
            tag,
            MaximalTag::Borel | MaximalTag::DMinus | MaximalTag::DPlus
        );
    }
    if q < 5 {
        return false;
    }
    let subfield_degree = |q0: u64| {
        prime_subfields(q)
            .into_iter()
            .find(|&(s, _)| s == q0)
            .map(|(_, r)| r)
    };
    match family {
        Family::Psl => match tag {
            MaximalTag::Borel => true,
            MaximalTag::DMinus => q >= 13,
            MaximalTag::DPlus => q != 7 && q != 9,
            MaximalTag::SubfieldPgl(q0) => subfield_degree(q0) == Some(2),
            MaximalTag::SubfieldPsl(q0) => subfield_degree(q0).is_some_and(|r| r % 2 == 1),
            MaximalTag::A5 => {
                (f == 1 && matches!(p % 10, 1 | 9)) || (f == 2 && matches!(p % 10, 3 | 7))
            }
            MaximalTag::A4 => f == 1 && matches!(p % 40, 3 | 37 | 5 | 13 | 27),
            MaximalTag::S4 => f == 1 && matches!(p % 8, 1 | 7),
            MaximalTag::Socle => false,
        },
        Family::Pgl => match tag {
            MaximalTag::Borel | MaximalTag::DPlus | MaximalTag::Socle => true,
            MaximalTag::DMinus => q > 5,
            MaximalTag::SubfieldPgl(q0) => subfield_degree(q0).is_some(),
            MaximalTag::S4 => matches!(q % 8, 3 | 5),
            _ => false,
        },
    }
}

/// All rows whose condition holds, in table order.
pub fn table_rows(family: Family, q: u64) -> Vec<MaximalTag> {
    let mut cands = vec![MaximalTag::Borel, MaximalTag::DMinus, MaximalTag::DPlus];
    for (q0, _) in prime_subfields(q) {
        cands.push(MaximalTag::SubfieldPgl(q0));
        cands.push(MaximalTag::SubfieldPsl(q0));
    }
    cands.extend([
        MaximalTag::Socle,
        MaximalTag::A5,
        MaximalTag::A4,
        MaximalTag::S4,
    ]);
    cands
        .into_iter()
        .filter(|&t| row_condition(family, q, t))
        .collect()
}

fn dihedral_or_klein(order: u64) -> IsoType {
    IsoType::Dihedral(order).canonical()
}

/// The Sylow 2-subgroup type of a row, per the table.
///
/// The `A5` row lists `D8`; `A5` has Klein four Sylow 2-subgroups, and that
/// is what is returned here.
pub fn expected_sylow2(family: Family, q: u64, tag: MaximalTag) -> Result<IsoType> {
    let (p, f) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let t = two_part;
    let dm = |q0: u64| if q0 % 4 == 1 { t(q0 - 1) } else { t(q0 + 1) };
    if p == 2 {
        return Ok(match tag {
            MaximalTag::Borel => IsoType::ElementaryAbelian { p: 2, k: f }.canonical(),
            MaximalTag::DMinus | MaximalTag::DPlus => IsoType::Cyclic(2),
            _ => {
                return Err(Error::ConditionViolated(format!(
                    "{tag} is not tabulated for even q"
                )))
            }
        });
    }
    Ok(match (family, tag) {
        (Family::Psl, MaximalTag::Borel) => IsoType::Cyclic(t(q - 1) / 2),
        (Family::Psl, MaximalTag::DMinus) => {
            if q % 4 == 1 {
                dihedral_or_klein(t(q - 1))
            } else {
                IsoType::Cyclic(2)
            }
        }
        (Family::Psl, MaximalTag::DPlus) => {
            if q % 4 == 3 {
                dihedral_or_klein(t(q + 1))
            } else {
                IsoType::Cyclic(2)
            }
        }
        (_, MaximalTag::SubfieldPgl(q0)) => dihedral_or_klein(2 * dm(q0)),
        (_, MaximalTag::SubfieldPsl(q0)) => dihedral_or_klein(dm(q0)),
        (_, MaximalTag::A5) | (_, MaximalTag::A4) => dihedral_or_klein(4),
        (_, MaximalTag::S4) => IsoType::Dihedral(8),
        (Family::Pgl, MaximalTag::Borel) => IsoType::Cyclic(t(q - 1)),
        (Family::Pgl, MaximalTag::DMinus) => dihedral_or_klein(2 * t(q - 1)),
        (Family::Pgl, MaximalTag::DPlus) => dihedral_or_klein(2 * t(q + 1)),
        (_, MaximalTag::Socle) => dihedral_or_klein(dm(q)),
    }
    .canonical())
}

/// The order of the row's subgroup.
pub fn expected_order(family: Family, q: u64, tag: MaximalTag) -> u64 {
    let d = if family == Family::Psl {
        gcd(2, q - 1)
    } else {
        1
    };
    let psl = |q0: u64| q0 * (q0 * q0 - 1) / gcd(2, q0 - 1);
    match tag {
        MaximalTag::Borel => q * (q - 1) / d,
        MaximalTag::DMinus => 2 * (q - 1) / d,
        MaximalTag::DPlus => 2 * (q + 1) / d,
        MaximalTag::SubfieldPgl(q0) => q0 * (q0 * q0 - 1),
        MaximalTag::SubfieldPsl(q0) => psl(q0),
        MaximalTag::Socle => psl(q),
        MaximalTag::A4 => 12,
        MaximalTag::S4 => 24,
        MaximalTag::A5 => 60,
    }
}

fn subfield_generators(k: &FiniteField, q0: u64, with_diagonal: bool) -> Result<Vec<Mat2>> {
    let z0 = k.subfield_zeta(q0 as u32)?;
    let (_, f0) = prime_power(q0).ok_or(Error::NotPrimePower(q0))?;
    let mut out = Vec::new();
    for i in 0..f0 as u64 {
        let t = k.pow(z0, i);
        out.push(Mat2::new(1, 0, t, 1));
        out.push(Mat2::new(1, t, 0, 1));
    }
    if with_diagonal {
        out.push(Mat2::new(z0, 0, 0, 1));
    }
    Ok(out)
}

fn from_matrices(x: &Subgroup, k: &FiniteField, ms: &[Mat2]) -> Result<Subgroup> {
    let perms: Vec<_> = ms.iter().map(|m| point_perm(k, m)).collect();
    let s = Subgroup::from_permutations(x.ambient(), &perms)?;
    if !s.is_subgroup_of(x) {
        return Err(Error::SearchFailed(
            "subfield subgroup escapes the ambient family".into(),
        ));
    }
    Ok(s)
}

/// `<a, b>` for an involution `a` and the least element `b` of order 3 with
/// `ab` of order `k`; confirmed against the named group.
fn polyhedral(x: &Subgroup, k_order: u64, reference: &FiniteGroup) -> Result<Subgroup> {
    let amb = x.ambient();
    let b = x
        .members()
        .iter()
        .copied()
        .find(|&y| amb.element_order(y) == 3)
        .ok_or_else(|| Error::SearchFailed("no element of order 3".into()))?;
    for &a in x.members() {
        if !amb.is_involution(a) || amb.element_order(amb.mul(a, b)) != k_order {
            continue;
        }
        let h = Subgroup::generated(amb, &[a, b]);
        if h.order() == reference.order() && is_isomorphic(h.as_group(), reference)? {
            return Ok(h);
        }
    }
    Err(Error::SearchFailed(format!(
        "no subgroup isomorphic to a group of order {}",
        reference.order()
    )))
}

/// The subgroup of row `tag` inside `x`, which must be the `PSL_2(q)` or
/// `PGL_2(q)` (per `family`) of a group acting on the projective line.
/// The row condition is not checked here.
pub fn construct_row(
    x: &Subgroup,
    k: &FiniteField,
    family: Family,
    tag: MaximalTag,
) -> Result<Subgroup> {
    let q = k.q() as u64;
    let h = match tag {
        MaximalTag::Borel => point_stabilizer(x, 0),
        MaximalTag::DMinus => setwise_stabilizer(x, &[0, 1]),
        MaximalTag::DPlus => {
            let o = if family == Family::Psl {
                (q + 1) / gcd(2, q - 1)
            } else {
                q + 1
            };
            let amb = x.ambient();
            let t = x
                .members()
                .iter()
                .copied()
                .find(|&y| amb.element_order(y) == o)
                .ok_or_else(|| Error::SearchFailed(format!("no element of order {o}")))?;
            normalizer(x, &Subgroup::generated(amb, &[t]))?
        }
        MaximalTag::SubfieldPgl(q0) => from_matrices(x, k, &subfield_generators(k, q0, true)?)?,
        MaximalTag::SubfieldPsl(q0) => from_matrices(x, k, &subfield_generators(k, q0, false)?)?,
        MaximalTag::Socle => from_matrices(x, k, &sl2_generators(k))?,
        MaximalTag::A4 => polyhedral(x, 3, &alt(4)?)?,
        MaximalTag::S4 => polyhedral(x, 4, &sym(4)?)?,
        MaximalTag::A5 => polyhedral(x, 5, &alt(5)?)?,
    };
    let want = expected_order(family, q, tag);
    if h.order() as u64 != want {
        return Err(Error::SearchFailed(format!(
            "{tag} has order {} instead of {want}",
            h.order()
        )));
    }
    Ok(h)
}

fn checked(family: Family, q: u64, tag: MaximalTag) -> Result<()> {
    if !row_condition(family, q, tag) {
        let name = if family == Family::Psl { "PSL" } else { "PGL" };
        return Err(Error::ConditionViolated(format!(
            "row {tag} is not maximal in {name}_2({q})"
        )));
    }
    Ok(())
}

pub fn psl2_maximal(q: u64, tag: MaximalTag) -> Result<Subgroup> {
    checked(Family::Psl, q, tag)?;
    let g = psl2(q)?;
    construct_row(
        &g.whole(),
        &FiniteField::of_order(q as u32)?,
        Family::Psl,
        tag,
    )
}

pub fn pgl2_maximal(q: u64, tag: MaximalTag) -> Result<Subgroup> {
    checked(Family::Pgl, q, tag)?;
    let g = pgl2(q)?;
    construct_row(
        &g.whole(),
        &FiniteField::of_order(q as u32)?,
        Family::Pgl,
        tag,
    )
}

/// The Sylow 2-subgroup type of a constructed row.
pub fn observed_sylow2(h: &Subgroup) -> Result<IsoType> {
    Ok(classify_subgroup(&sylow2(h))?.canonical())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tag_round_trip() {
        for t in [
            MaximalTag::Borel,
            MaximalTag::DMinus,
            MaximalTag::SubfieldPgl(5),
            MaximalTag::A5,
        ] {
            assert_eq!(t.to_string().parse::<MaximalTag>().unwrap(), t);
        }
        assert!("d0".parse::<MaximalTag>().is_err());
    }

    #[test]
    fn listed_rows() {
        use MaximalTag::*;
        assert_eq!(table_rows(Family::Psl, 7), vec![Borel, S4]);
        assert_eq!(table_rows(Family::Psl, 9), vec![Borel, SubfieldPgl(3), A5]);
        assert_eq!(
            table_rows(Family::Psl, 27),
            vec![Borel, DMinus, DPlus, SubfieldPsl(3)]
        );
        assert_eq!(table_rows(Family::Pgl, 5), vec![Borel, DPlus, Socle, S4]);
        assert_eq!(table_rows(Family::Psl, 8), vec![Borel, DMinus, DPlus]);
    }

    #[test]
    fn small_rows() {
        let m = psl2_maximal(13, MaximalTag::DMinus).unwrap();
        assert_eq!(m.order(), 12);
        assert_eq!(
            observed_sylow2(&m).unwrap(),
            IsoType::ElementaryAbelian { p: 2, k: 2 }
        );
        assert_eq!(psl2_maximal(7, MaximalTag::S4).unwrap().order(), 24);
        let b = pgl2_maximal(7, MaximalTag::Borel).unwrap();
        assert_eq!(b.order(), 42);
        assert_eq!(observed_sylow2(&b).unwrap(), IsoType::Cyclic(2));
        assert!(matches!(
            psl2_maximal(7, MaximalTag::DPlus),
            Err(Error::ConditionViolated(_))
        ));
    }
}
