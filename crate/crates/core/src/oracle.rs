//! Cayley graphs and an independent decision procedure used to cross-check
//! the perfect-code engine.
//!
//! The oracle shares nothing with `perfect` beyond group arithmetic: it
//! labels right cosets itself and searches for an inverse-closed right
//! transversal, which is the same as an inverse-closed left one because
//! inversion swaps `aH` and `Ha^-1`.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::all_subgroups;
use crate::perfect::{auto_check, validate_transversal};
use crate::subgroup::Subgroup;

/// Largest index `oracle_decide` accepts.
pub const ORACLE_INDEX_CAP: usize = 4096;

/// Node limit for the oracle's backtracking.
const ORACLE_NODES: u64 = 20_000_000;

/// `Cay(G, S)` with edges `{g, s g}`; `S` is inverse-closed and avoids `e`.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    group: Subgroup,
    connection: Vec<u32>,
}

impl CayleyGraph {
    pub fn new(group: &Subgroup, connection: &[u32]) -> Result<Self> {
        let amb = group.ambient();
        let mut s = connection.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.iter().any(|&x| x == 0 || !group.contains(x)) {
            return Err(Error::BadSubset);
        }
        if s.iter().any(|&x| s.binary_search(&amb.inv(x)).is_err()) {
            return Err(Error::BadSubset);
        }
        Ok(CayleyGraph {
            group: group.clone(),
            connection: s,
        })
    }

    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    pub fn connection(&self) -> &[u32] {
        &self.connection
    }

    pub fn degree(&self) -> usize {
        self.connection.len()
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        let amb = self.group.ambient();
        self.connection.iter().map(move |&s| amb.mul(s, v))
    }

    /// Each edge once as `(u, v)` with `u < v`, sorted; vertices are ambient
    /// indices.
    pub fn edge_list(&self) -> Vec<(u32, u32)> {
        let mut edges: Vec<(u32, u32)> = self
            .group
            .members()
            .iter()
            .flat_map(|&v| {
                self.neighbors(v)
                    .filter(move |&w| v < w)
                    .map(move |w| (v, w))
            })
            .collect();
        edges.sort_unstable();
        edges
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeCheckReport {
    /// No two code vertices are adjacent.
    pub independent: bool,
    /// Number of code vertices in each closed neighbourhood, per vertex.
    pub domination: BTreeMap<u32, u32>,
    pub verdict: bool,
}

/// Checks the definition directly: `C` is independent and every vertex
/// outside `C` has exactly one neighbour in `C`.
pub fn is_perfect_code_in_graph(graph: &CayleyGraph, code: &[u32]) -> Result<CodeCheckReport> {
    let g = graph.group();
    let amb = g.ambient();
    if code.iter().any(|&c| !g.contains(c)) {
        return Err(Error::BadSubset);
    }
    let mut in_code = FixedBitSet::with_capacity(amb.order());
    for &c in code {
        in_code.insert(c as usize);
    }
    let mut independent = true;
    let mut domination = BTreeMap::new();
    for &v in g.members() {
        let mut count = u32::from(in_code.contains(v as usize));
        for w in graph.neighbors(v) {
            if in_code.contains(w as usize) {
                count += 1;
                if in_code.contains(v as usize) {
                    independent = false;
                }
            }
        }
        domination.insert(v, count);
    }
    let verdict = independent && domination.values().all(|&c| c == 1);
    Ok(CodeCheckReport {
        independent,
        domination,
        verdict,
    })
}

/// `L \ {e}` after replacing the representative of `H` by `e`; `H` is then a
/// perfect code of `Cay(G, S)` for the returned `S`.
pub fn connection_set_from_transversal(g: &Subgroup, h: &Subgroup, l: &[u32]) -> Result<Vec<u32>> {
    if !validate_transversal(g, h, l)? {
        return Err(Error::InvalidTransversal(
            "not an inverse-closed left transversal".into(),
        ));
    }
    // the representative of H is its own inverse, so swapping it for e keeps
    // the set inverse-closed
    let mut s: Vec<u32> = l.iter().copied().filter(|&b| !h.contains(b)).collect();
    s.sort_unstable();
    Ok(s)
}

struct RightCosets {
    label: Vec<u32>,
    count: usize,
    /// Per coset, its members.
    members: Vec<Vec<u32>>,
}

fn right_coset_labels(g: &Subgroup, h: &Subgroup) -> RightCosets {
    let amb = g.ambient();
    let mut label = vec![u32::MAX; amb.order()];
    let mut members = Vec::new();
    for &b in g.members() {
        if label[b as usize] != u32::MAX {
            continue;
        }
        let id = members.len() as u32;
        let coset: Vec<u32> = h.members().iter().map(|&x| amb.mul(x, b)).collect();
        for &c in &coset {
            label[c as usize] = id;
        }
        members.push(coset);
    }
    RightCosets {
        label,
        count: members.len(),
        members,
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

struct OracleSearch<'a> {
    /// Partner cosets of each coset, deduplicated; a self entry means the
    /// coset holds an element equal to its own inverse.
    partners: &'a [Vec<u32>],
    taken: Vec<bool>,
    nodes: u64,
}

impl OracleSearch<'_> {
    fn run(&mut self, comp: &[usize]) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > ORACLE_NODES {
            return Err(Error::BudgetExhausted(ORACLE_NODES));
        }
        let open: Vec<usize> = comp.iter().copied().filter(|&c| !self.taken[c]).collect();
        let Some(&first) = open.first() else {
            return Ok(true);
        };
        let self_paired = open.iter().any(|&c| self.partners[c].contains(&(c as u32)));
        if open.len() % 2 == 1 && !self_paired {
            return Ok(false);
        }
        for &p in &self.partners[first] {
            let p = p as usize;
            if self.taken[p] {
                continue;
            }
            self.taken[first] = true;
            self.taken[p] = true;
            if self.run(comp)? {
                return Ok(true);
            }
            self.taken[first] = false;
            self.taken[p] = false;
        }
        Ok(false)
    }
}

/// Whether `h` has an inverse-closed transversal in `g`, by a search written
/// independently of the main engine.
pub fn oracle_decide(g: &Subgroup, h: &Subgroup) -> Result<bool> {
    h.require_in(g)?;
    let index = g.order() / h.order();
    if index > ORACLE_INDEX_CAP {
        return Err(Error::CapExceeded {
            what: "oracle index".into(),
            cap: ORACLE_INDEX_CAP,
        });
    }
    let amb = g.ambient();
    let rc = right_coset_labels(g, h);
    let mut partners: Vec<Vec<u32>> = vec![Vec::new(); rc.count];
    let mut parent: Vec<usize> = (0..rc.count).collect();
    for (c, coset) in rc.members.iter().enumerate() {
        for &b in coset {
            let bi = amb.inv(b);
            let d = rc.label[bi as usize];
            if d as usize == c && bi != b {
                continue;
            }
            if !partners[c].contains(&d) {
                partners[c].push(d);
            }
            let (x, y) = (find(&mut parent, c), find(&mut parent, d as usize));
            parent[x] = y;
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in 0..rc.count {
        let r = find(&mut parent, c);
        comps.entry(r).or_default().push(c);
    }
    let mut search = OracleSearch {
        partners: &partners,
        taken: vec![false; rc.count],
        nodes: 0,
    };
    // H itself is represented by e
    search.taken[rc.label[0] as usize] = true;
    for comp in comps.values() {
        if !search.run(comp)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides every subgroup of `g` with both the oracle and `auto_check`;
/// any disagreement is an error.
pub fn brute_subgroup_survey(g: &Subgroup, order_cap: usize) -> Result<Vec<(Subgroup, bool)>> {
    let subs = all_subgroups(g, order_cap)?;
    subs.into_par_iter()
        .map(|h| {
            let expected = oracle_decide(g, &h)?;
            let got = auto_check(g, &h)?.is_perfect_code;
            if expected != got {
                return Err(Error::ConditionViolated(format!(
                    "engine says {got}, oracle says {expected} for a subgroup of order {}",
                    h.order()
                )));
            }
            Ok((h, expected))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perfect::{find_inverse_closed_transversal, DEFAULT_BUDGET};
    use crate::small::{cyclic, sym};

    #[test]
    fn cayley_validation() {
        let c4 = cyclic(4).unwrap();
        let g = c4.whole();
        assert_eq!(CayleyGraph::new(&g, &[0]).unwrap_err(), Error::BadSubset);
        let gen = c4.generator_indices()[0];
        assert_eq!(CayleyGraph::new(&g, &[gen]).unwrap_err(), Error::BadSubset);
        let cay = CayleyGraph::new(&g, &[gen, c4.inv(gen)]).unwrap();
        assert_eq!(cay.edge_list().len(), 4);
    }

    #[test]
    fn transversal_gives_perfect_code() {
        let s4 = sym(4).unwrap();
        let g = s4.whole();
        let t = (1..24u32).find(|&i| s4.is_involution(i)).unwrap();
        let h = Subgroup::generated(&s4, &[t]);
        let l = find_inverse_closed_transversal(&g, &h, DEFAULT_BUDGET)
            .unwrap()
            .unwrap();
        let s = connection_set_from_transversal(&g, &h, &l).unwrap();
        let cay = CayleyGraph::new(&g, &s).unwrap();
        assert!(is_perfect_code_in_graph(&cay, h.members()).unwrap().verdict);
    }

    #[test]
    fn survey_of_s4_agrees() {
        let s4 = sym(4).unwrap();
        let rows = brute_subgroup_survey(&s4.whole(), 24).unwrap();
        assert_eq!(rows.len(), 30);
    }
}
