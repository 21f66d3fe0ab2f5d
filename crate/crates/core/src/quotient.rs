//! Quotients by normal subgroups via the action on right cosets.

use crate::cosets::{right_cosets, CosetDecomposition};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;
use crate::subgroup::Subgroup;

/// The natural map `G -> G/N`.
#[derive(Debug, Clone)]
pub struct Epimorphism {
    source: Subgroup,
    kernel: Subgroup,
    target: FiniteGroup,
    cosets: CosetDecomposition,
    coset_image: Vec<u32>,
}

impl Epimorphism {
    pub fn source(&self) -> &Subgroup {
        &self.source
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    /// Image of an ambient index lying in the source.
    pub fn image(&self, x: u32) -> Result<u32> {
        let c = self.cosets.coset_of(x).ok_or(Error::ElementOutsideGroup)?;
        Ok(self.coset_image[c])
    }

    pub fn image_subgroup(&self, h: &Subgroup) -> Result<Subgroup> {
        h.require_in(&self.source)?;
        let gens = h
            .generators()
            .iter()
            .map(|&x| self.image(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subgroup::generated(&self.target, &gens))
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage(&self, k: &Subgroup) -> Result<Subgroup> {
        if !k.ambient().ptr_eq(&self.target) {
            return Err(Error::NotSubgroup("not a subgroup of the quotient".into()));
        }
        let members: Vec<u32> = self
            .source
            .members()
            .iter()
            .copied()
            .filter(|&x| k.contains(self.image(x).expect("source element")))
            .collect();
        let mut mask = fixedbitset::FixedBitSet::with_capacity(self.source.ambient().order());
        for m in members {
            mask.insert(m as usize);
        }
        Ok(Subgroup::from_mask(self.source.ambient(), mask))
    }
}

/// `G/N` as the permutation group induced on right cosets of `N`.
pub fn quotient(g: &Subgroup, n: &Subgroup) -> Result<(FiniteGroup, Epimorphism)> {
    n.require_in(g)?;
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let amb = g.ambient();
    let rc = right_cosets(g, n)?;
    let k = rc.len();
    let gens: Vec<u32> = if g.generators().is_empty() {
        vec![0]
    } else {
        g.generators().to_vec()
    };
    let images: Vec<Permutation> = gens
        .iter()
        .map(|&s| {
            let v: Vec<u32> = rc
                .reps
                .iter()
                .map(|&r| rc.coset_of(amb.mul(r, s)).expect("closed") as u32)
                .collect();
            Permutation::from_images(v).expect("coset action is a bijection")
        })
        .collect();
    let target = FiniteGroup::generate(&images)?;
    let img_idx: Vec<u32> = images
        .iter()
        .map(|p| target.index_of_perm(p).expect("generator"))
        .collect();
    let mut coset_image = vec![u32::MAX; k];
    coset_image[rc.coset_of(0).expect("identity")] = 0;
    let mut queue = vec![rc.coset_of(0).expect("identity")];
    let mut head = 0;
    while head < queue.len() {
        let c = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(&img_idx) {
            let d = rc.coset_of(amb.mul(rc.reps[c], s)).expect("closed");
            if coset_image[d] == u32::MAX {
                coset_image[d] = target.mul(coset_image[c], t);
                queue.push(d);
            }
        }
    }
    debug_assert!(coset_image.iter().all(|&x| x != u32::MAX));
    let epi = Epimorphism {
        source: g.clone(),
        kernel: n.clone(),
        target: target.clone(),
        cosets: rc,
        coset_image,
    };
    Ok((target, epi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym4() -> FiniteGroup {
        FiniteGroup::generate(&[
            Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
            Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn s4_mod_klein_is_s3() {
        let g = sym4();
        let v = Subgroup::from_permutations(
            &g,
            &[
                Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
            ],
        )
        .unwrap();
        let (q, epi) = quotient(&g.whole(), &v).unwrap();
        assert_eq!(q.order(), 6);
        let kernel: Vec<u32> = (0..24).filter(|&x| epi.image(x).unwrap() == 0).collect();
        assert_eq!(kernel, v.members());
        for a in 0..24 {
            for b in 0..24 {
                assert_eq!(
                    epi.image(g.mul(a, b)).unwrap(),
                    q.mul(epi.image(a).unwrap(), epi.image(b).unwrap())
                );
            }
        }
        assert_eq!(epi.preimage(&Subgroup::trivial(&q)).unwrap(), v);
    }

    #[test]
    fn trivial_and_whole_kernels() {
        let g = sym4();
        assert_eq!(quotient(&g.whole(), &g.whole()).unwrap().0.order(), 1);
        assert_eq!(
            quotient(&g.whole(), &Subgroup::trivial(&g))
                .unwrap()
                .0
                .order(),
            24
        );
        let h =
            Subgroup::from_permutations(&g, &[Permutation::from_cycles(4, &[&[0, 1]]).unwrap()])
                .unwrap();
        assert_eq!(quotient(&g.whole(), &h).unwrap_err(), Error::NotNormal);
    }
}
