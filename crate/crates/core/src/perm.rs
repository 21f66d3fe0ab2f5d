//! Permutations of `{0, ..., n-1}` stored as dense image arrays.
//!
//! Products follow the right-action convention: `a * b` applies `a` first,
//! so `x^y = y^-1 x y` and `[x, y] = x^-1 y^-1 x y`.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Trusted constructor for image arrays already known to be bijections.
    pub(crate) fn from_slice_unchecked(images: &[u32]) -> Self {
        Permutation {
            images: images.into(),
        }
    }

    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let a = a as usize;
                if a >= n || touched[a] {
                    return Err(Error::InvalidPermutation(format!("bad cycle {cycle:?}")));
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// `y^-1 self y`.
    pub fn conjugate_by(&self, y: &Permutation) -> Permutation {
        y.inverse().compose(self).compose(y)
    }

    /// `self^-1 y^-1 self y`.
    pub fn commutator(&self, y: &Permutation) -> Permutation {
        self.inverse()
            .compose(&y.inverse())
            .compose(self)
            .compose(y)
    }

    pub fn order(&self) -> u64 {
        cycle_lcm(&self.images)
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i as u32);
                i = self.images[i] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Acts on `offset..offset+degree` inside `{0, ..., total-1}`, fixing the rest.
    pub fn shifted(&self, offset: usize, total: usize) -> Permutation {
        assert!(offset + self.degree() <= total);
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &v) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + v;
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }
}

/// Least m >= 1 with `x^m` the identity.
pub fn element_order(x: &Permutation) -> u64 {
    x.order()
}

pub(crate) fn cycle_lcm(images: &[u32]) -> u64 {
    let n = images.len();
    let mut seen = smallvec::SmallVec::<[bool; 128]>::from_elem(false, n);
    let mut acc = 1u64;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            len += 1;
            i = images[i] as usize;
        }
        acc = lcm(acc, len);
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Largest power of 2 dividing `n` (`n_2`).
pub fn two_part(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    1 << n.trailing_zeros()
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_by_cycle_type() {
        assert_eq!(Permutation::identity(4).order(), 1);
        assert_eq!(Permutation::from_cycles(3, &[&[0, 1]]).unwrap().order(), 2);
        assert_eq!(
            Permutation::from_cycles(5, &[&[0, 1, 2], &[3, 4]])
                .unwrap()
                .order(),
            6
        );
    }

    #[test]
    fn right_action_convention() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!((&a * &b).apply(0), 2);
        let x = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(x.conjugate_by(&a), a.inverse().compose(&x).compose(&a));
        assert_eq!(
            x.commutator(&a),
            x.inverse().compose(&a.inverse()).compose(&x).compose(&a)
        );
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn display_cycles() {
        let x = Permutation::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(x.to_string(), "(0 1 2)(3 4)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn two_parts() {
        assert_eq!(two_part(48), 16);
        assert_eq!(two_part(15), 1);
    }
}
