//! Every tabulated maximal subgroup is constructed with the stated order and
//! Sylow 2-subgroup type.

use perfcode::field::FiniteField;
use perfcode::lattice::is_maximal;
use perfcode::linear::{pgl2, psl2};
use perfcode::maximal::{
    construct_row, expected_order, expected_sylow2, observed_sylow2, table_rows, Family,
};

const QS: [u64; 12] = [5, 7, 8, 9, 11, 13, 17, 19, 23, 25, 27, 29];

#[test]
fn psl2_rows_match_sylow_column() {
    for q in QS {
        let g = psl2(q).unwrap();
        let k = FiniteField::of_order(q as u32).unwrap();
        for tag in table_rows(Family::Psl, q) {
            let h = construct_row(&g.whole(), &k, Family::Psl, tag).unwrap();
            assert_eq!(h.order() as u64, expected_order(Family::Psl, q, tag));
            assert_eq!(
                observed_sylow2(&h).unwrap(),
                expected_sylow2(Family::Psl, q, tag).unwrap(),
                "q={q} {tag}"
            );
        }
    }
}

#[test]
fn pgl2_rows_match_sylow_column() {
    for q in [5u64, 7, 9, 11, 13, 17, 19, 23, 25] {
        let g = pgl2(q).unwrap();
        let k = FiniteField::of_order(q as u32).unwrap();
        for tag in table_rows(Family::Pgl, q) {
            let h = construct_row(&g.whole(), &k, Family::Pgl, tag).unwrap();
            assert_eq!(
                observed_sylow2(&h).unwrap(),
                expected_sylow2(Family::Pgl, q, tag).unwrap(),
                "q={q} {tag}"
            );
        }
    }
}

#[test]
fn psl2_rows_are_maximal_for_small_q() {
    for q in [5u64, 7, 8, 9, 11, 13] {
        let g = psl2(q).unwrap();
        let k = FiniteField::of_order(q as u32).unwrap();
        for tag in table_rows(Family::Psl, q) {
            let h = construct_row(&g.whole(), &k, Family::Psl, tag).unwrap();
            assert!(is_maximal(&g.whole(), &h).unwrap(), "q={q} {tag}");
        }
    }
}
