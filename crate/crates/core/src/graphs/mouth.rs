use std::collections::BTreeMap;

use serde::Serialize;

use super::graph::Multigraph;

/// Two corners joined by three internally vertex-disjoint paths of equal
/// positive length. Arms are edge lists running from `corners.0` to `corners.1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mouth {
    pub corners: (usize, usize),
    pub arm_length: usize,
    pub arms: [Vec<usize>; 3],
}

/// Simple paths `u → v` (as edge lists with their interior vertices), keyed by length.
fn simple_paths(g: &Multigraph, u: usize, v: usize) -> BTreeMap<usize, Vec<(Vec<usize>, Vec<usize>)>> {
    let mut out: BTreeMap<usize, Vec<(Vec<usize>, Vec<usize>)>> = BTreeMap::new();
    let mut on_path = vec![false; g.num_vertices()];
    let mut edges = Vec::new();
    let mut inner = Vec::new();
    fn dfs(
        g: &Multigraph,
        at: usize,
        v: usize,
        on_path: &mut Vec<bool>,
        edges: &mut Vec<usize>,
        inner: &mut Vec<usize>,
        out: &mut BTreeMap<usize, Vec<(Vec<usize>, Vec<usize>)>>,
    ) {
        for (e, w) in g.incident(at) {
            if w == at || on_path[w] {
                continue;
            }
            edges.push(e);
            if w == v {
                out.entry(edges.len()).or_default().push((edges.clone(), inner.clone()));
            } else {
                on_path[w] = true;
                inner.push(w);
                dfs(g, w, v, on_path, edges, inner, out);
                inner.pop();
                on_path[w] = false;
            }
            edges.pop();
        }
    }
    on_path[u] = true;
    dfs(g, u, v, &mut on_path, &mut edges, &mut inner, &mut out);
    out
}

fn compatible(a: &(Vec<usize>, Vec<usize>), b: &(Vec<usize>, Vec<usize>)) -> bool {
    a.0.iter().all(|e| !b.0.contains(e)) && a.1.iter().all(|x| !b.1.contains(x))
}

/// One mouth for every corner pair and arm length that admits one, ordered
/// by corners and then length.
pub fn find_mouths(g: &Multigraph) -> Vec<Mouth> {
    let n = g.num_vertices();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            for (len, paths) in simple_paths(g, u, v) {
                'search: for i in 0..paths.len() {
                    for j in i + 1..paths.len() {
                        if !compatible(&paths[i], &paths[j]) {
                            continue;
                        }
                        for k in j + 1..paths.len() {
                            if compatible(&paths[i], &paths[k]) && compatible(&paths[j], &paths[k]) {
                                out.push(Mouth {
                                    corners: (u, v),
                                    arm_length: len,
                                    arms: [paths[i].0.clone(), paths[j].0.clone(), paths[k].0.clone()],
                                });
                                break 'search;
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn has_mouth(g: &Multigraph) -> bool {
    !find_mouths(g).is_empty()
}
