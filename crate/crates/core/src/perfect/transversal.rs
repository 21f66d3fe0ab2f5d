//! Inverse-closed left transversals by matching on the partner graph.
//!
//! Distinct cosets `C_i, C_j` are partners when some `b` in `C_i` has `b^-1`
//! in `C_j`; a loop at `i` means `C_i` holds an involution (or is `H` itself). An
//! inverse-closed transversal is exactly a perfect matching that may use
//! loops. Components are unions `D cup D^-1` of double cosets: when
//! `D != D^-1` the component is bipartite and regular, so Hall's theorem
//! gives a matching; when `D = D^-1` loops are present at every vertex or at
//! none, and only the loopless case needs search.

use fixedbitset::FixedBitSet;

use crate::cosets::left_cosets;
use crate::error::{Error, Result};
use crate::subgroup::Subgroup;

/// Default node budget for the backtracking search.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

const NONE: u32 = u32::MAX;

struct PartnerGraph {
    /// `adj[i]` lists `(j, b)` sorted by `j`, with `b` the least element of
    /// `C_i` whose inverse lies in `C_j`.
    adj: Vec<Vec<(u32, u32)>>,
}

impl PartnerGraph {
    fn build(g: &Subgroup, h: &Subgroup) -> Result<Self> {
        let amb = g.ambient();
        let dec = left_cosets(g, h)?;
        let mut adj = Vec::with_capacity(dec.len());
        for coset in &dec.cosets {
            let mut row: Vec<(u32, u32)> = Vec::new();
            // coset members are sorted, so the first hit per partner is least
            for &b in coset {
                let bi = amb.inv(b);
                let j = dec.coset_of(bi).expect("inverse lies in g") as u32;
                // a loop needs b = b^-1; b^-1 in bH alone only says b^2 in H
                if j as usize == adj.len() && bi != b {
                    continue;
                }
                if !row.iter().any(|&(k, _)| k == j) {
                    row.push((j, b));
                }
            }
            row.sort_unstable();
            adj.push(row);
        }
        Ok(PartnerGraph { adj })
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    fn has_loop(&self, i: usize) -> bool {
        self.adj[i].iter().any(|&(j, _)| j as usize == i)
    }

    fn components(&self) -> Vec<Vec<u32>> {
        let n = self.len();
        let mut comp = vec![NONE; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != NONE {
                continue;
            }
            let id = out.len() as u32;
            comp[s] = id;
            let mut verts = vec![s as u32];
            let mut head = 0;
            while head < verts.len() {
                let v = verts[head] as usize;
                head += 1;
                for &(w, _) in &self.adj[v] {
                    if comp[w as usize] == NONE {
                        comp[w as usize] = id;
                        verts.push(w);
                    }
                }
            }
            verts.sort_unstable();
            out.push(verts);
        }
        out
    }
}

/// Two-colouring of a component, if it is bipartite.
fn two_colour(graph: &PartnerGraph, verts: &[u32], colour: &mut [u8]) -> bool {
    let start = verts[0] as usize;
    colour[start] = 0;
    let mut queue = vec![start];
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for &(w, _) in &graph.adj[v] {
            let w = w as usize;
            if colour[w] == u8::MAX {
                colour[w] = 1 - colour[v];
                queue.push(w);
            } else if colour[w] == colour[v] {
                return false;
            }
        }
    }
    true
}

/// Augmenting-path matching on a bipartite component. Returns false only if
/// no perfect matching exists, which regularity rules out.
fn bipartite_match(graph: &PartnerGraph, verts: &[u32], colour: &[u8], mate: &mut [u32]) -> bool {
    let n = mate.len();
    // parent[w] is the left vertex that reached right vertex w
    let mut parent = vec![NONE; n];
    let mut touched: Vec<u32> = Vec::new();
    for &u in verts {
        let u = u as usize;
        if colour[u] != 0 || mate[u] != NONE {
            continue;
        }
        for &w in &touched {
            parent[w as usize] = NONE;
        }
        touched.clear();
        let mut queue = vec![u as u32];
        let mut head = 0;
        let mut free_right = None;
        'bfs: while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &(w, _) in &graph.adj[x as usize] {
                if parent[w as usize] != NONE {
                    continue;
                }
                parent[w as usize] = x;
                touched.push(w);
                if mate[w as usize] == NONE {
                    free_right = Some(w);
                    break 'bfs;
                }
                queue.push(mate[w as usize]);
            }
        }
        let Some(mut w) = free_right else {
            return false;
        };
        loop {
            let x = parent[w as usize];
            let prev = mate[x as usize];
            mate[x as usize] = w;
            mate[w as usize] = x;
            if x as usize == u {
                break;
            }
            w = prev;
        }
    }
    true
}

struct Search<'a> {
    graph: &'a PartnerGraph,
    mate: &'a mut [u32],
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn options(&self, v: usize) -> impl Iterator<Item = u32> + '_ {
        self.graph.adj[v]
            .iter()
            .map(|&(w, _)| w)
            .filter(move |&w| self.mate[w as usize] == NONE)
    }

    fn solve(&mut self, verts: &[u32]) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted(self.budget));
        }
        let mut open = 0usize;
        let mut loop_capable = false;
        let mut best: Option<(usize, usize)> = None;
        for &v in verts {
            let v = v as usize;
            if self.mate[v] != NONE {
                continue;
            }
            open += 1;
            let mut count = 0;
            for w in self.options(v) {
                count += 1;
                loop_capable |= w as usize == v;
            }
            if count == 0 {
                return Ok(false);
            }
            if best.is_none_or(|(c, _)| count < c) {
                best = Some((count, v));
            }
        }
        let Some((_, v)) = best else { return Ok(true) };
        // every match covers two vertices except a loop
        if open % 2 == 1 && !loop_capable {
            return Ok(false);
        }
        let opts: Vec<u32> = self.options(v).collect();
        for w in opts {
            self.mate[v] = w;
            self.mate[w as usize] = v as u32;
            if self.solve(verts)? {
                return Ok(true);
            }
            self.mate[v] = NONE;
            self.mate[w as usize] = NONE;
        }
        Ok(false)
    }
}

/// An inverse-closed left transversal of `h` in `g`, listed in coset order
/// with `e` representing `H`; `None` when none exists.
pub fn find_inverse_closed_transversal(
    g: &Subgroup,
    h: &Subgroup,
    budget: u64,
) -> Result<Option<Vec<u32>>> {
    h.require_in(g)?;
    let amb = g.ambient();
    let graph = PartnerGraph::build(g, h)?;
    let n = graph.len();
    let mut mate = vec![NONE; n];
    let mut colour = vec![u8::MAX; n];
    let mut nodes = 0u64;
    for verts in graph.components() {
        let v0 = verts[0] as usize;
        if graph.has_loop(v0) && verts.iter().all(|&v| graph.has_loop(v as usize)) {
            for &v in &verts {
                mate[v as usize] = v;
            }
        } else if two_colour(&graph, &verts, &mut colour) {
            if !bipartite_match(&graph, &verts, &colour, &mut mate) {
                return Ok(None);
            }
        } else {
            let mut search = Search {
                graph: &graph,
                mate: &mut mate,
                nodes,
                budget,
            };
            let found = search.solve(&verts)?;
            nodes = search.nodes;
            if !found {
                return Ok(None);
            }
        }
    }
    let mut l = vec![NONE; n];
    for i in 0..n {
        if l[i] != NONE {
            continue;
        }
        let j = mate[i] as usize;
        let b = if i == 0 {
            0
        } else {
            graph.adj[i]
                .iter()
                .find(|&&(k, _)| k as usize == j)
                .expect("matched along an edge")
                .1
        };
        l[i] = b;
        l[j] = amb.inv(b);
    }
    Ok(Some(l))
}

/// Whether `l` meets every left coset of `h` in `g` exactly once and is
/// closed under inverses.
pub fn validate_transversal(g: &Subgroup, h: &Subgroup, l: &[u32]) -> Result<bool> {
    h.require_in(g)?;
    let amb = g.ambient();
    if l.len() * h.order() != g.order() || l.iter().any(|&b| !g.contains(b)) {
        return Ok(false);
    }
    let mut members = FixedBitSet::with_capacity(amb.order());
    let mut leaders = FixedBitSet::with_capacity(amb.order());
    for &b in l {
        if members.put(b as usize) {
            return Ok(false);
        }
        let leader = h
            .members()
            .iter()
            .map(|&x| amb.mul(b, x))
            .min()
            .expect("h is nonempty");
        if leaders.put(leader as usize) {
            return Ok(false);
        }
    }
    Ok(l.iter().all(|&b| members.contains(amb.inv(b) as usize)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::small::{cyclic, quaternion, sym};

    #[test]
    fn s3_transversal_of_c2() {
        let s3 = sym(3).unwrap();
        let g = s3.whole();
        let t = (1..6u32).find(|&i| s3.is_involution(i)).unwrap();
        let h = Subgroup::generated(&s3, &[t]);
        let l = find_inverse_closed_transversal(&g, &h, DEFAULT_BUDGET)
            .unwrap()
            .unwrap();
        assert_eq!(l[0], 0);
        assert!(validate_transversal(&g, &h, &l).unwrap());
    }

    #[test]
    fn c4_has_none_over_c2() {
        let c4 = cyclic(4).unwrap();
        let h = Subgroup::generated(&c4, &[c4.pow(1, 2)]);
        assert_eq!(
            find_inverse_closed_transversal(&c4.whole(), &h, DEFAULT_BUDGET).unwrap(),
            None
        );
    }

    #[test]
    fn center_of_q8_is_not_a_code() {
        let q = quaternion(8).unwrap();
        let z = (1..8u32).find(|&i| q.is_involution(i)).unwrap();
        let h = Subgroup::generated(&q, &[z]);
        assert_eq!(
            find_inverse_closed_transversal(&q.whole(), &h, DEFAULT_BUDGET).unwrap(),
            None
        );
    }

    #[test]
    fn validation_rejects_bad_sets() {
        let s3 = sym(3).unwrap();
        let g = s3.whole();
        let h = Subgroup::trivial(&s3);
        let all: Vec<u32> = (0..6).collect();
        assert!(validate_transversal(&g, &h, &all).unwrap());
        assert!(!validate_transversal(&g, &h, &[0, 1, 2, 3, 4, 4]).unwrap());
    }
}
