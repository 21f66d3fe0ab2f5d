//! Materialized permutation groups.
//!
//! Every group is closed eagerly and frozen on creation. Elements are kept in
//! canonical order (lexicographic on image arrays) so the identity is index 0
//! and every scan over indices is deterministic.

use std::fmt;
use std::hash::BuildHasher;
use std::sync::{Arc, OnceLock};

use hashbrown::HashTable;
use rayon::prelude::*;
use rustc_hash::FxBuildHasher;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::perm::{cycle_lcm, Permutation};
use crate::subgroup::Subgroup;

pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;
/// Groups up to this order get a dense multiplication table on request.
pub const TABLE_CAP: usize = 2600;

type Buf = SmallVec<[u32; 64]>;

fn hash_slice(s: &[u32]) -> u64 {
    FxBuildHasher.hash_one(s)
}

/// Flat element storage with slice lookup.
struct Store {
    degree: usize,
    flat: Vec<u32>,
    lookup: HashTable<u32>,
}

impl Store {
    fn new(degree: usize) -> Self {
        Store {
            degree,
            flat: Vec::new(),
            lookup: HashTable::new(),
        }
    }

    fn len(&self) -> usize {
        if self.degree == 0 {
            return self.lookup.len();
        }
        self.flat.len() / self.degree
    }

    fn get(&self, i: u32) -> &[u32] {
        let d = self.degree;
        &self.flat[i as usize * d..(i as usize + 1) * d]
    }

    fn find(&self, s: &[u32]) -> Option<u32> {
        let d = self.degree;
        let flat = &self.flat;
        self.lookup
            .find(hash_slice(s), |&i| {
                &flat[i as usize * d..(i as usize + 1) * d] == s
            })
            .copied()
    }

    /// Returns the index and whether it was new.
    fn insert(&mut self, s: &[u32]) -> (u32, bool) {
        if let Some(i) = self.find(s) {
            return (i, false);
        }
        let i = self.len() as u32;
        self.flat.extend_from_slice(s);
        let d = self.degree;
        let flat = &self.flat;
        self.lookup.insert_unique(hash_slice(s), i, |&j| {
            hash_slice(&flat[j as usize * d..(j as usize + 1) * d])
        });
        (i, true)
    }
}

struct GroupData {
    generators: Vec<Permutation>,
    store: Store,
    inverses: Vec<u32>,
    orders: OnceLock<Vec<u32>>,
    table: OnceLock<Vec<u16>>,
}

/// A finite permutation group with all elements materialized.
///
/// Cloning is cheap; clones share storage.
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl FiniteGroup {
    pub fn generate(generators: &[Permutation]) -> Result<Self> {
        Self::generate_with_cap(generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn generate_with_cap(generators: &[Permutation], cap: usize) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptyGenerators)?;
        let degree = first.degree();
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut store = Store::new(degree);
        let id: Vec<u32> = (0..degree as u32).collect();
        store.insert(&id);
        let mut buf: Buf = SmallVec::from_elem(0, degree);
        let mut next = 0u32;
        while (next as usize) < store.len() {
            for g in generators {
                let x = store.get(next);
                for (k, &p) in x.iter().enumerate() {
                    buf[k] = g.images()[p as usize];
                }
                let (_, fresh) = store.insert(&buf);
                if fresh && store.len() > cap {
                    return Err(Error::CapExceeded {
                        what: "group order".into(),
                        cap,
                    });
                }
            }
            next += 1;
        }
        Ok(Self::finish(degree, generators.to_vec(), store.flat))
    }

    /// Builds a group from an unsorted flat list of its elements.
    fn finish(degree: usize, generators: Vec<Permutation>, flat: Vec<u32>) -> Self {
        let n = if degree == 0 { 1 } else { flat.len() / degree };
        let mut order: Vec<u32> = (0..n as u32).collect();
        let slice = |i: u32| &flat[i as usize * degree..(i as usize + 1) * degree];
        order.sort_unstable_by(|&a, &b| slice(a).cmp(slice(b)));
        let mut sorted = Vec::with_capacity(flat.len());
        for &i in &order {
            sorted.extend_from_slice(slice(i));
        }
        Self::from_sorted_flat(degree, generators, sorted)
    }

    /// `flat` must hold a closed set of permutations in canonical order.
    pub(crate) fn from_sorted_flat(
        degree: usize,
        generators: Vec<Permutation>,
        flat: Vec<u32>,
    ) -> Self {
        let mut store = Store::new(degree);
        let n = if degree == 0 { 1 } else { flat.len() / degree };
        store.flat = flat;
        for i in 0..n as u32 {
            let h = hash_slice(store.get(i));
            let d = degree;
            let fl = &store.flat;
            store.lookup.insert_unique(h, i, |&j| {
                hash_slice(&fl[j as usize * d..(j as usize + 1) * d])
            });
        }
        let mut inverses = vec![0u32; n];
        let mut buf: Buf = SmallVec::from_elem(0, degree);
        for (i, slot) in inverses.iter_mut().enumerate() {
            let x = store.get(i as u32);
            for (k, &p) in x.iter().enumerate() {
                buf[p as usize] = k as u32;
            }
            *slot = store.find(&buf).expect("group not closed under inverses");
        }
        FiniteGroup(Arc::new(GroupData {
            generators,
            store,
            inverses,
            orders: OnceLock::new(),
            table: OnceLock::new(),
        }))
    }

    pub fn degree(&self) -> usize {
        self.0.store.degree
    }

    pub fn order(&self) -> usize {
        self.0.inverses.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.0.generators
    }

    pub fn generator_indices(&self) -> Vec<u32> {
        self.0
            .generators
            .iter()
            .map(|g| self.index_of(g.images()).expect("generator in group"))
            .collect()
    }

    pub fn element(&self, i: u32) -> &[u32] {
        self.0.store.get(i)
    }

    pub fn perm(&self, i: u32) -> Permutation {
        Permutation::from_slice_unchecked(self.element(i))
    }

    pub fn index_of(&self, images: &[u32]) -> Option<u32> {
        if images.len() != self.degree() {
            return None;
        }
        self.0.store.find(images)
    }

    pub fn index_of_perm(&self, x: &Permutation) -> Result<u32> {
        if x.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: x.degree(),
            });
        }
        self.index_of(x.images()).ok_or(Error::ElementOutsideGroup)
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.index_of(x.images()).is_some()
    }

    pub fn ptr_eq(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Same degree and same element set.
    pub fn same_elements(&self, other: &FiniteGroup) -> bool {
        self.ptr_eq(other)
            || (self.degree() == other.degree() && self.0.store.flat == other.0.store.flat)
    }

    /// `i` then `j`.
    pub fn mul(&self, i: u32, j: u32) -> u32 {
        if let Some(t) = self.0.table.get() {
            return t[i as usize * self.order() + j as usize] as u32;
        }
        self.mul_slow(i, j)
    }

    fn mul_slow(&self, i: u32, j: u32) -> u32 {
        let a = self.element(i);
        let b = self.element(j);
        let buf: Buf = a.iter().map(|&p| b[p as usize]).collect();
        self.0.store.find(&buf).expect("group not closed")
    }

    pub fn inv(&self, i: u32) -> u32 {
        self.0.inverses[i as usize]
    }

    pub fn pow(&self, i: u32, e: i64) -> u32 {
        let mut base = if e < 0 { self.inv(i) } else { i };
        let mut e = e.unsigned_abs();
        let mut acc = 0u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `g^-1 x g`.
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `x^-1 y^-1 x y`.
    pub fn commutator(&self, x: u32, y: u32) -> u32 {
        let a = self.mul(self.inv(x), self.inv(y));
        self.mul(self.mul(a, x), y)
    }

    pub fn element_order(&self, i: u32) -> u64 {
        self.orders()[i as usize] as u64
    }

    pub fn orders(&self) -> &[u32] {
        self.0.orders.get_or_init(|| {
            (0..self.order() as u32)
                .into_par_iter()
                .map(|i| cycle_lcm(self.element(i)) as u32)
                .collect()
        })
    }

    pub fn is_involution(&self, i: u32) -> bool {
        i != 0 && self.mul(i, i) == 0
    }

    /// Fills the dense multiplication table when the order allows it.
    pub fn build_table(&self) -> bool {
        let n = self.order();
        if n > TABLE_CAP {
            return false;
        }
        self.0.table.get_or_init(|| {
            let rows: Vec<Vec<u16>> = (0..n as u32)
                .into_par_iter()
                .map(|i| (0..n as u32).map(|j| self.mul_slow(i, j) as u16).collect())
                .collect();
            rows.concat()
        });
        true
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::whole(self)
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteGroup(degree {}, order {})",
            self.degree(),
            self.order()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn sym3_closure() {
        let g = FiniteGroup::generate(&[p(3, &[&[0, 1]]), p(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.element(0), &[0, 1, 2]);
        for i in 0..6 {
            assert_eq!(g.mul(i, g.inv(i)), 0);
        }
        for w in 1..6u32 {
            assert!(g.element(w - 1) < g.element(w));
        }
    }

    #[test]
    fn identity_generator() {
        let g = FiniteGroup::generate(&[Permutation::identity(4)]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn cap_and_degree_errors() {
        let gens = [p(5, &[&[0, 1]]), p(5, &[&[0, 1, 2, 3, 4]])];
        assert!(matches!(
            FiniteGroup::generate_with_cap(&gens, 100),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            FiniteGroup::generate(&[p(3, &[&[0, 1]]), p(4, &[&[0, 1]])]),
            Err(Error::DegreeMismatch { .. })
        ));
        assert_eq!(
            FiniteGroup::generate(&[]).unwrap_err(),
            Error::EmptyGenerators
        );
    }

    #[test]
    fn table_agrees_with_slow_product() {
        let g = FiniteGroup::generate(&[p(4, &[&[0, 1]]), p(4, &[&[0, 1, 2, 3]])]).unwrap();
        let slow: Vec<u32> = (0..24)
            .flat_map(|i| (0..24).map(move |j| (i, j)))
            .map(|(i, j)| g.mul(i, j))
            .collect();
        assert!(g.build_table());
        let fast: Vec<u32> = (0..24)
            .flat_map(|i| (0..24).map(move |j| (i, j)))
            .map(|(i, j)| g.mul(i, j))
            .collect();
        assert_eq!(slow, fast);
    }
}
