//! All decision paths agree on every subgroup of every corpus group, and
//! every certificate checks out against the graph definition.

mod common;

use perfcode::lattice::all_subgroups;
use perfcode::oracle::{
    connection_set_from_transversal, is_perfect_code_in_graph, oracle_decide, CayleyGraph,
};
use perfcode::perfect::{
    auto_check, check_double_coset, check_elementwise, check_via_sylow2,
    find_inverse_closed_transversal, is_witness, Evidence, DEFAULT_BUDGET,
};
use rayon::prelude::*;

#[test]
fn four_paths_agree_with_valid_certificates() {
    let corpus = common::corpus();
    let failures: Vec<String> = corpus
        .par_iter()
        .flat_map(|(name, grp)| {
            let g = grp.whole();
            let subs = all_subgroups(&g, 200).unwrap();
            subs.into_par_iter().filter_map(move |h| {
                let e = check_elementwise(&g, &h).unwrap();
                let d = check_double_coset(&g, &h).unwrap();
                let t = find_inverse_closed_transversal(&g, &h, DEFAULT_BUDGET).unwrap();
                let o = oracle_decide(&g, &h).unwrap();
                let s = check_via_sylow2(&g, &h).unwrap();
                let a = auto_check(&g, &h).unwrap();
                let want = e.is_perfect_code;
                let mut bad = want != d.is_perfect_code
                    || want != t.is_some()
                    || want != o
                    || want != s.is_perfect_code
                    || want != a.is_perfect_code;
                if let Some(l) = &t {
                    let conn = connection_set_from_transversal(&g, &h, l).unwrap();
                    let cay = CayleyGraph::new(&g, &conn).unwrap();
                    bad |= !is_perfect_code_in_graph(&cay, h.members()).unwrap().verdict;
                }
                for v in [&e, &d, &s, &a] {
                    if let Evidence::Witness(w) = v.evidence {
                        bad |= !is_witness(&g, &h, w).unwrap() || !common::witness_holds(&h, w);
                        bad |= Evidence::Witness(w) != e.evidence;
                    }
                }
                bad.then(|| format!("{name}: subgroup of order {}", h.order()))
            })
        })
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
}
