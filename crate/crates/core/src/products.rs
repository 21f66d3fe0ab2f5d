//! Direct, semidirect and wreath products as permutation groups.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, DEFAULT_ELEMENT_CAP};
use crate::perm::Permutation;
use crate::subgroup::Subgroup;

/// `A x B` acting on the disjoint union of the two domains.
#[derive(Debug, Clone)]
pub struct DirectProduct {
    pub group: FiniteGroup,
    pub left: Subgroup,
    pub right: Subgroup,
    left_degree: usize,
}

impl DirectProduct {
    pub fn embed_left(&self, x: &Permutation) -> Permutation {
        x.shifted(0, self.group.degree())
    }

    pub fn embed_right(&self, y: &Permutation) -> Permutation {
        y.shifted(self.left_degree, self.group.degree())
    }

    /// The pair `(x, y)`.
    pub fn pair(&self, x: &Permutation, y: &Permutation) -> Permutation {
        self.embed_left(x).compose(&self.embed_right(y))
    }

    /// `Q x L` for subgroups given by generators of each factor.
    pub fn product_subgroup(&self, q: &[Permutation], l: &[Permutation]) -> Result<Subgroup> {
        let mut gens: Vec<Permutation> = q.iter().map(|x| self.embed_left(x)).collect();
        gens.extend(l.iter().map(|y| self.embed_right(y)));
        Subgroup::from_permutations(&self.group, &gens)
    }
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<DirectProduct> {
    let (da, db) = (a.degree(), b.degree());
    let total = da + db;
    let lg: Vec<Permutation> = a.generators().iter().map(|x| x.shifted(0, total)).collect();
    let rg: Vec<Permutation> = b
        .generators()
        .iter()
        .map(|y| y.shifted(da, total))
        .collect();
    let cap = DEFAULT_ELEMENT_CAP;
    if a.order().saturating_mul(b.order()) > cap {
        return Err(Error::CapExceeded {
            what: "direct product order".into(),
            cap,
        });
    }
    let group = FiniteGroup::generate(&[lg.clone(), rg.clone()].concat())?;
    let left = Subgroup::from_permutations(&group, &lg)?;
    let right = Subgroup::from_permutations(&group, &rg)?;
    Ok(DirectProduct {
        group,
        left,
        right,
        left_degree: da,
    })
}

/// `N : K` with its recorded normal subgroup and complement.
#[derive(Debug, Clone)]
pub struct SemidirectProduct {
    pub group: FiniteGroup,
    pub normal: Subgroup,
    pub complement: Subgroup,
}

/// Extends generator images to a map on all of `n`, if it is an automorphism.
fn extend_automorphism(n: &FiniteGroup, images: &[u32]) -> Result<Vec<u32>> {
    let gens = n.generator_indices();
    let mut map = vec![u32::MAX; n.order()];
    let mut used = vec![false; n.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = n.mul(x, s);
            let z = n.mul(map[x as usize], t);
            if map[y as usize] == u32::MAX {
                if used[z as usize] {
                    return Err(Error::ActionInvalid(
                        "generator images are not injective".into(),
                    ));
                }
                used[z as usize] = true;
                map[y as usize] = z;
                queue.push(y);
            } else if map[y as usize] != z {
                return Err(Error::ActionInvalid(
                    "generator images violate a relation of N".into(),
                ));
            }
        }
    }
    Ok(map)
}

/// `action[i]` lists the images of `n.generators()` under the automorphism
/// attached to `k.generators()[i]`; `n^k = action(k)(n)`.
pub fn semidirect_product(
    n: &FiniteGroup,
    k: &FiniteGroup,
    action: &[Vec<Permutation>],
) -> Result<SemidirectProduct> {
    if action.len() != k.generators().len() {
        return Err(Error::ActionInvalid(
            "one automorphism per generator of K is required".into(),
        ));
    }
    let nn = n.order();
    let ngens = n.generator_indices();
    let mut normal_gens = Vec::new();
    for &s in &ngens {
        let mut v: Vec<u32> = (0..nn as u32).map(|x| n.mul(x, s)).collect();
        v.extend((0..k.degree() as u32).map(|p| nn as u32 + p));
        normal_gens.push(Permutation::from_images(v)?);
    }
    let mut comp_gens = Vec::new();
    for (kg, imgs) in k.generators().iter().zip(action) {
        if imgs.len() != ngens.len() {
            return Err(Error::ActionInvalid(
                "wrong number of generator images".into(),
            ));
        }
        let idx = imgs
            .iter()
            .map(|p| {
                n.index_of_perm(p)
                    .map_err(|_| Error::ActionInvalid("image outside N".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let sigma = extend_automorphism(n, &idx)?;
        let mut v = sigma;
        v.extend(kg.images().iter().map(|&p| nn as u32 + p));
        comp_gens.push(Permutation::from_images(v)?);
    }
    let expected = nn * k.order();
    let group = FiniteGroup::generate_with_cap(
        &[normal_gens.clone(), comp_gens.clone()].concat(),
        expected,
    )
    .map_err(|_| Error::ActionInvalid("action is not a homomorphism K -> Aut(N)".into()))?;
    if group.order() != expected {
        return Err(Error::ActionInvalid(
            "action is not a homomorphism K -> Aut(N)".into(),
        ));
    }
    let normal = Subgroup::from_permutations(&group, &normal_gens)?;
    let complement = Subgroup::from_permutations(&group, &comp_gens)?;
    Ok(SemidirectProduct {
        group,
        normal,
        complement,
    })
}

/// `H wr S_t` acting imprimitively on `t` copies of the domain of `H`.
#[derive(Debug, Clone)]
pub struct Wreath {
    pub group: FiniteGroup,
    pub base_degree: usize,
    pub t: usize,
}

impl Wreath {
    /// `x` acting on block `b` only.
    pub fn on_block(&self, x: &Permutation, b: usize) -> Permutation {
        x.shifted(b * self.base_degree, self.base_degree * self.t)
    }

    /// Permutes blocks by `sigma`, a permutation of `0..t`.
    pub fn block_permutation(&self, sigma: &Permutation) -> Permutation {
        let d = self.base_degree;
        let mut v = vec![0u32; d * self.t];
        for b in 0..self.t {
            for i in 0..d {
                v[b * d + i] = (sigma.apply(b as u32) as usize * d + i) as u32;
            }
        }
        Permutation::from_images(v).expect("block permutation")
    }

    pub fn top_generators(&self) -> Vec<Permutation> {
        top_generators(self.base_degree, self.t)
    }

    /// `Q wr S_t` for `Q` given by generators inside the base factor.
    pub fn lift(&self, q: &[Permutation]) -> Result<Subgroup> {
        let mut gens: Vec<Permutation> = q.iter().map(|x| self.on_block(x, 0)).collect();
        gens.extend(self.top_generators());
        Subgroup::from_permutations(&self.group, &gens)
    }

    /// The base group `H^t`.
    pub fn base(&self, h: &FiniteGroup) -> Result<Subgroup> {
        let gens: Vec<Permutation> = (0..self.t)
            .flat_map(|b| h.generators().iter().map(move |x| (x, b)))
            .map(|(x, b)| self.on_block(x, b))
            .collect();
        Subgroup::from_permutations(&self.group, &gens)
    }
}

fn top_generators(d: usize, t: usize) -> Vec<Permutation> {
    let swap = |sigma: Vec<u32>| {
        let mut v = vec![0u32; d * t];
        for b in 0..t {
            for i in 0..d {
                v[b * d + i] = (sigma[b] as usize * d + i) as u32;
            }
        }
        Permutation::from_images(v).expect("block permutation")
    };
    let mut out = Vec::new();
    if t >= 2 {
        let mut s: Vec<u32> = (0..t as u32).collect();
        s.swap(0, 1);
        out.push(swap(s));
    }
    if t >= 3 {
        out.push(swap((0..t as u32).map(|b| (b + 1) % t as u32).collect()));
    }
    out
}

pub fn wreath_s(h: &FiniteGroup, t: usize) -> Result<Wreath> {
    if t == 0 {
        return Err(Error::BadParameters("wreath needs t >= 1".into()));
    }
    let d = h.degree();
    let total = d * t;
    let mut gens: Vec<Permutation> = h.generators().iter().map(|x| x.shifted(0, total)).collect();
    gens.extend(top_generators(d, t));
    let expected = (h.order() as u128).pow(t as u32) * (1..=t as u128).product::<u128>();
    if expected > DEFAULT_ELEMENT_CAP as u128 {
        return Err(Error::CapExceeded {
            what: "wreath product order".into(),
            cap: DEFAULT_ELEMENT_CAP,
        });
    }
    let group = FiniteGroup::generate(&gens)?;
    debug_assert_eq!(group.order() as u128, expected);
    Ok(Wreath {
        group,
        base_degree: d,
        t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize) -> FiniteGroup {
        let c: Vec<u32> = (0..n as u32).collect();
        FiniteGroup::generate(&[Permutation::from_cycles(n, &[&c]).unwrap()]).unwrap()
    }

    #[test]
    fn klein_as_direct_product() {
        let d = direct_product(&cyc(2), &cyc(2)).unwrap();
        assert_eq!(d.group.order(), 4);
        assert!((1..4).all(|i| d.group.is_involution(i)));
    }

    #[test]
    fn dihedral_as_semidirect_product() {
        let n = cyc(4);
        let k = cyc(2);
        let x = n.generators()[0].clone();
        let sp = semidirect_product(&n, &k, &[vec![x.inverse()]]).unwrap();
        assert_eq!(sp.group.order(), 8);
        let inv = (1..8).filter(|&i| sp.group.is_involution(i)).count();
        assert_eq!(inv, 5);
        assert!(sp.normal.is_normal_in(&sp.group.whole()));
        assert_eq!(sp.normal.intersection(&sp.complement).order(), 1);
    }

    #[test]
    fn invalid_actions_are_rejected() {
        let n = cyc(4);
        let x = n.generators()[0].clone();
        // x -> x^2 is not injective
        assert!(matches!(
            semidirect_product(&n, &cyc(2), &[vec![x.pow(2)]]),
            Err(Error::ActionInvalid(_))
        ));
        // inversion has order 2, so it cannot be attached to a generator of order 3
        assert!(matches!(
            semidirect_product(&n, &cyc(3), &[vec![x.inverse()]]),
            Err(Error::ActionInvalid(_))
        ));
    }

    #[test]
    fn wreath_orders() {
        let s3 = FiniteGroup::generate(&[
            Permutation::from_cycles(3, &[&[0, 1]]).unwrap(),
            Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
        ])
        .unwrap();
        let w = wreath_s(&s3, 2).unwrap();
        assert_eq!(w.group.order(), 72);
        assert_eq!(w.group.degree(), 6);
        assert_eq!(wreath_s(&cyc(2), 3).unwrap().group.order(), 48);
        assert_eq!(w.base(&s3).unwrap().order(), 36);
        let q = [Permutation::from_cycles(3, &[&[0, 1]]).unwrap()];
        assert_eq!(w.lift(&q).unwrap().order(), 8);
    }
}
