//! Maximal-subgroup tables of `PSL_2(q)` and `PGL_2(q)`, rebuilt and
//! compared row by row with the expected order and Sylow 2-subgroup.

use rayon::prelude::*;
use serde::Serialize;

use perfcode::field::FiniteField;
use perfcode::lattice::is_maximal;
use perfcode::linear::{pgl2, psl2};
use perfcode::maximal::{
    construct_row, expected_order, expected_sylow2, observed_sylow2, table_rows, Family,
};

use crate::run::CliResult;

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub family: String,
    pub q: u64,
    pub tag: String,
    pub order: usize,
    pub expected_order: u64,
    pub sylow2: String,
    pub expected_sylow2: String,
    pub maximal: bool,
}

impl TableRow {
    /// Order and Sylow 2-subgroup agree with the table. Maximality is
    /// reported separately: the `PGL_2(q_0)` row of `PGL_2(q_0^2)` lies in
    /// `PSL_2(q)` and is not maximal, though the table lists it.
    pub fn matches(&self) -> bool {
        self.order as u64 == self.expected_order && self.sylow2 == self.expected_sylow2
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Psl => "PSL2",
        Family::Pgl => "PGL2",
    }
}

/// Rows for every `q` in `qs`; for even `q` the two families coincide and
/// only `PSL_2(q)` is listed.
pub fn tables(qs: &[u64]) -> CliResult<Vec<TableRow>> {
    let jobs: Vec<(u64, Family)> = qs
        .iter()
        .flat_map(|&q| {
            let fams: &[Family] = if q % 2 == 0 {
                &[Family::Psl]
            } else {
                &[Family::Psl, Family::Pgl]
            };
            fams.iter().map(move |&f| (q, f))
        })
        .collect();
    let parts: Vec<Vec<TableRow>> = jobs
        .par_iter()
        .map(|&(q, family)| -> CliResult<Vec<TableRow>> {
            let g = match family {
                Family::Psl => psl2(q)?,
                Family::Pgl => pgl2(q)?,
            };
            let gw = g.whole();
            let k = FiniteField::of_order(q as u32)?;
            table_rows(family, q)
                .into_par_iter()
                .map(|tag| {
                    let h = construct_row(&gw, &k, family, tag)?;
                    Ok(TableRow {
                        family: family_name(family).into(),
                        q,
                        tag: tag.to_string(),
                        order: h.order(),
                        expected_order: expected_order(family, q, tag),
                        sylow2: observed_sylow2(&h)?.to_string(),
                        expected_sylow2: expected_sylow2(family, q, tag)?.to_string(),
                        maximal: is_maximal(&gw, &h)?,
                    })
                })
                .collect()
        })
        .collect::<CliResult<_>>()?;
    Ok(parts.into_iter().flatten().collect())
}

pub fn render_markdown(rows: &[TableRow]) -> String {
    let mut out =
        String::from("| group | tag | order | expected | Sylow 2 | expected | maximal | match |\n");
    out.push_str("|---|---|---|---|---|---|---|---|\n");
    for r in rows {
        out.push_str(&format!(
            "| {}({}) | {} | {} | {} | {} | {} | {} | {} |\n",
            r.family,
            r.q,
            r.tag,
            r.order,
            r.expected_order,
            r.sylow2,
            r.expected_sylow2,
            r.maximal,
            if r.matches() { "yes" } else { "MISMATCH" }
        ));
    }
    out
}
