use std::collections::BTreeSet;

use rayon::prelude::*;

use super::automorphism::canonical_form;
use super::graph::Multigraph;
use crate::error::{Error, Result};

pub const MAX_ENUM_GENUS: usize = 4;

/// Multisets of size `k` drawn from `0..m`, as nondecreasing index lists.
fn multisets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(m, k, i, cur, out);
            cur.pop();
        }
    }
    rec(m, k, 0, &mut cur, &mut out);
    out
}

/// All stable graphs of genus `g` up to isomorphism, in canonical form, sorted
/// by vertex count and then canonical edge list. A stable graph of genus `g`
/// has at most `2g − 2` vertices and `3g − 3` edges.
pub fn enumerate_stable_graphs(g: usize) -> Result<Vec<Multigraph>> {
    if !(2..=MAX_ENUM_GENUS).contains(&g) {
        return Err(Error::SizeGuard(format!("enumeration supports genus 2..={MAX_ENUM_GENUS}")));
    }
    let mut found: BTreeSet<(usize, Vec<(usize, usize)>)> = BTreeSet::new();
    for n in 1..=2 * g - 2 {
        let e = n + g - 1;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        let batch: BTreeSet<(usize, Vec<(usize, usize)>)> = multisets(pairs.len(), e)
            .into_par_iter()
            .filter_map(|ms| {
                let edges: Vec<(usize, usize)> = ms.iter().map(|&i| pairs[i]).collect();
                let gr = Multigraph::new(n, edges).ok()?;
                gr.is_stable().then(|| (n, canonical_form(&gr)))
            })
            .collect();
        found.extend(batch);
    }
    found.into_iter().map(|(n, edges)| Multigraph::new(n, edges)).collect()
}
