use std::collections::BTreeMap;

use serde::Serialize;

use super::graph::Multigraph;
use crate::action::FiniteGroup;
use crate::error::{Error, Result};

pub const MAX_AUT_VERTICES: usize = 12;
pub const MAX_AUT_ORDER: usize = 1 << 18;

/// Incidence-preserving pair of vertex and edge permutations. `flips[e]` is
/// set when edge `e` is carried onto its image against the reference
/// orientation; for loops this is a free choice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GraphAutomorphism {
    pub vertex_perm: Vec<usize>,
    pub edge_perm: Vec<usize>,
    pub flips: Vec<bool>,
}

impl GraphAutomorphism {
    pub fn identity(g: &Multigraph) -> Self {
        GraphAutomorphism {
            vertex_perm: (0..g.num_vertices()).collect(),
            edge_perm: (0..g.num_edges()).collect(),
            flips: vec![false; g.num_edges()],
        }
    }

    /// Checks that endpoints and orientations are carried consistently.
    pub fn is_valid_for(&self, g: &Multigraph) -> bool {
        let n = g.num_vertices();
        let m = g.num_edges();
        if self.vertex_perm.len() != n || self.edge_perm.len() != m || self.flips.len() != m {
            return false;
        }
        let mut hit_v = vec![false; n];
        let mut hit_e = vec![false; m];
        for &w in &self.vertex_perm {
            if w >= n || std::mem::replace(&mut hit_v[w], true) {
                return false;
            }
        }
        for (e, &f) in self.edge_perm.iter().enumerate() {
            if f >= m || std::mem::replace(&mut hit_e[f], true) {
                return false;
            }
            let (a, b) = g.edge(e);
            let (c, d) = g.edge(f);
            let (pa, pb) = (self.vertex_perm[a], self.vertex_perm[b]);
            let ok = if self.flips[e] { pa == d && pb == c } else { pa == c && pb == d };
            if !ok {
                return false;
            }
        }
        true
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        GraphAutomorphism {
            vertex_perm: other.vertex_perm.iter().map(|&v| self.vertex_perm[v]).collect(),
            edge_perm: other.edge_perm.iter().map(|&e| self.edge_perm[e]).collect(),
            flips: other.flips.iter().enumerate().map(|(e, &f)| f ^ self.flips[other.edge_perm[e]]).collect(),
        }
    }

    /// Image of the dart `(edge, forward)`.
    pub fn map_dart(&self, e: usize, forward: bool) -> (usize, bool) {
        (self.edge_perm[e], forward ^ self.flips[e])
    }
}

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations_of(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Vertex permutations preserving all edge multiplicities, found by
/// backtracking with degree and loop-count pruning.
pub fn vertex_automorphisms(g: &Multigraph) -> Result<Vec<Vec<usize>>> {
    let n = g.num_vertices();
    if n > MAX_AUT_VERTICES {
        return Err(Error::SizeGuard(format!("{n} vertices exceed the automorphism limit {MAX_AUT_VERTICES}")));
    }
    let mult: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| g.multiplicity(a, b)).collect()).collect();
    let sig: Vec<(usize, usize)> = (0..n).map(|v| (g.degree(v), mult[v][v])).collect();
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        v: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        mult: &[Vec<usize>],
        sig: &[(usize, usize)],
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = perm.len();
        if v == n {
            out.push(perm.clone());
            return;
        }
        for w in 0..n {
            if used[w] || sig[v] != sig[w] {
                continue;
            }
            if (0..v).any(|u| mult[u][v] != mult[perm[u]][w]) {
                continue;
            }
            perm[v] = w;
            used[w] = true;
            rec(v + 1, perm, used, mult, sig, out);
            used[w] = false;
        }
        perm[v] = usize::MAX;
    }
    rec(0, &mut perm, &mut used, &mult, &sig, &mut out);
    Ok(out)
}

/// All automorphisms. With `with_loop_flips` every loop may additionally be
/// reversed; without, loops keep their orientation, giving the group acting
/// on unoriented edges.
pub fn automorphisms(g: &Multigraph, with_loop_flips: bool) -> Result<Vec<GraphAutomorphism>> {
    let m = g.num_edges();
    // edge classes by unordered endpoint pair
    let mut classes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        classes.entry((a.min(b), a.max(b))).or_default().push(e);
    }
    let loops: Vec<usize> = (0..m).filter(|&e| g.is_loop(e)).collect();
    let flip_count = if with_loop_flips { 1usize << loops.len() } else { 1 };
    let mut out = Vec::new();
    for vp in vertex_automorphisms(g)? {
        let mut partial: Vec<Vec<usize>> = vec![vec![usize::MAX; m]];
        for (&(a, b), members) in &classes {
            let (pa, pb) = (vp[a], vp[b]);
            let target = &classes[&(pa.min(pb), pa.max(pb))];
            let perms = permutations_of(target);
            let mut next = Vec::with_capacity(partial.len() * perms.len());
            for base in &partial {
                for p in &perms {
                    let mut ep = base.clone();
                    for (i, &e) in members.iter().enumerate() {
                        ep[e] = p[i];
                    }
                    next.push(ep);
                }
            }
            if next.len() * flip_count + out.len() > MAX_AUT_ORDER {
                return Err(Error::SizeGuard(format!("automorphism group exceeds {MAX_AUT_ORDER} elements")));
            }
            partial = next;
        }
        for ep in partial {
            let base_flips: Vec<bool> = (0..m)
                .map(|e| {
                    let (a, _) = g.edge(e);
                    let (c, _) = g.edge(ep[e]);
                    !g.is_loop(e) && vp[a] != c
                })
                .collect();
            for mask in 0..flip_count {
                let mut flips = base_flips.clone();
                for (i, &e) in loops.iter().enumerate() {
                    flips[e] = mask >> i & 1 == 1;
                }
                out.push(GraphAutomorphism { vertex_perm: vp.clone(), edge_perm: ep.clone(), flips });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Automorphisms as a finite group, acting on vertices and darts.
pub fn automorphism_group(g: &Multigraph, with_loop_flips: bool) -> Result<(FiniteGroup, Vec<GraphAutomorphism>)> {
    let auts = automorphisms(g, with_loop_flips)?;
    let n = g.num_vertices();
    let perms: Vec<Vec<usize>> = auts
        .iter()
        .map(|a| {
            // dart (e, forward) sits at n + 2e, (e, backward) at n + 2e + 1
            let mut p = a.vertex_perm.clone();
            p.resize(n + 2 * g.num_edges(), 0);
            for e in 0..g.num_edges() {
                for forward in [true, false] {
                    let (f, d) = a.map_dart(e, forward);
                    p[n + 2 * e + (!forward) as usize] = n + 2 * f + (!d) as usize;
                }
            }
            p
        })
        .collect();
    Ok((FiniteGroup::from_permutations(&perms)?, auts))
}

/// Lexicographically least sorted edge list over all vertex relabelings.
pub fn canonical_form(g: &Multigraph) -> Vec<(usize, usize)> {
    let n = g.num_vertices();
    let mut best: Option<Vec<(usize, usize)>> = None;
    for p in permutations_of(&(0..n).collect::<Vec<_>>()) {
        let mut edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (p[a], p[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        if best.as_ref().is_none_or(|b| edges < *b) {
            best = Some(edges);
        }
    }
    best.unwrap_or_default()
}

pub fn is_isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    a.num_vertices() == b.num_vertices() && a.num_edges() == b.num_edges() && canonical_form(a) == canonical_form(b)
}
