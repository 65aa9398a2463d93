use serde::Serialize;

use super::automorphism::{automorphisms, is_isomorphic};
use super::graph::{genus2, GraphJson, Multigraph};
use super::lasso::{basis_orbit_closed, GeometricBasis, OrbitReport};
use super::mouth::{find_mouths, Mouth};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Decision {
    Contained,
    NotContained,
}

/// A mouth corner that is a leaf of `T` with `deg_G(v) − deg_T(v) ≤ 2`.
#[derive(Debug, Clone, Serialize)]
pub struct CornerWitness {
    pub mouth: Mouth,
    pub corner: usize,
    pub deg_graph: usize,
    pub deg_tree: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Genus2Case {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Method {
    /// Genus two: the graph is matched against the three stable graphs.
    Genus2 { case: Genus2Case },
    /// Genus at least three: the mouth and degree criterion.
    Criterion,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub graph: GraphJson,
    pub genus: usize,
    pub spanning_tree: Vec<usize>,
    pub mouths: Vec<Mouth>,
    pub decision: Decision,
    pub witness: Option<CornerWitness>,
    pub method: Method,
    /// Outcome of the mouth and degree criterion, also for genus two.
    pub criterion: Decision,
    /// Orbit of the lasso basis at vertex 0 under the automorphism group.
    pub orbit: OrbitReport,
    pub explanation: String,
}

/// Degree count of a corner: loops count twice in `deg_G`, `T` has no loops.
fn corner_data(g: &Multigraph, tree: &[usize], v: usize) -> (bool, usize, usize) {
    let deg_tree = g.degree_in(v, tree.iter().copied());
    (deg_tree == 1, g.degree(v), deg_tree)
}

pub fn genus2_case(g: &Multigraph) -> Option<Genus2Case> {
    [(genus2::dumbbell(), Genus2Case::A), (genus2::rose(), Genus2Case::B), (genus2::theta(), Genus2Case::C)]
        .into_iter()
        .find(|(h, _)| is_isomorphic(g, h))
        .map(|(_, c)| c)
}

/// Decides `Spec H_G ⊂ b^ℤ − λ` for the stable graph `g` with spanning tree `tree`.
pub fn classify_spectrum(g: &Multigraph, tree: &[usize]) -> Result<Classification> {
    let genus = g.check_stable()?;
    if !g.is_spanning_tree(tree) {
        return Err(Error::InvalidGraph(format!("{tree:?} is not a spanning tree")));
    }
    let mut tree = tree.to_vec();
    tree.sort_unstable();
    let mouths = find_mouths(g);
    let mut lines = Vec::new();
    let mut witness = None;
    for m in &mouths {
        for v in [m.corners.0, m.corners.1] {
            let (leaf, dg, dt) = corner_data(g, &tree, v);
            let id = g.id(v);
            if !leaf {
                lines.push(format!("corner {id}: not a tip of T (deg_T = {dt})"));
            } else if dg - dt <= 2 {
                lines.push(format!("corner {id}: tip of T with deg_G(v) − deg_T(v) = {dg} − {dt} = {} ≤ 2", dg - dt));
                if witness.is_none() {
                    witness = Some(CornerWitness { mouth: m.clone(), corner: v, deg_graph: dg, deg_tree: dt });
                }
            } else {
                lines.push(format!("corner {id}: tip of T but deg_G(v) − deg_T(v) = {dg} − {dt} = {} > 2", dg - dt));
            }
        }
    }
    let criterion = if witness.is_some() { Decision::NotContained } else { Decision::Contained };
    let auts = automorphisms(g, false)?;
    let orbit = basis_orbit_closed(g, &GeometricBasis::new(g, &tree, 0)?, &auts);
    let (method, decision) = if genus == 2 {
        let case = genus2_case(g).ok_or_else(|| Error::InvalidGraph("unrecognized genus-2 stable graph".into()))?;
        let d = if case == Genus2Case::C { Decision::NotContained } else { Decision::Contained };
        (Method::Genus2 { case }, d)
    } else {
        (Method::Criterion, criterion)
    };
    let mut explanation = match (&method, decision) {
        (Method::Genus2 { case: Genus2Case::C }, _) => {
            "genus 2, theta graph: an automorphism sends a lasso outside W±; norm-decreasing points give distinct eigenvalues whose mean leaves the lattice".to_string()
        }
        (Method::Genus2 { .. }, _) => "genus 2: Aut·W± = W±, so all σ share each eigenvalue".to_string(),
        (Method::Criterion, _) if mouths.is_empty() => "no mouth: Aut·W± = W± for every geometric basis".to_string(),
        (Method::Criterion, Decision::NotContained) => "a mouth corner is a tip of T with the degree condition".to_string(),
        (Method::Criterion, Decision::Contained) => "every mouth corner fails the tip or degree condition".to_string(),
    };
    if !lines.is_empty() {
        explanation.push_str("; ");
        explanation.push_str(&lines.join("; "));
    }
    Ok(Classification {
        graph: g.to_json_struct(),
        genus,
        spanning_tree: tree,
        mouths,
        decision,
        witness,
        method,
        criterion,
        orbit,
        explanation,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TreeScan {
    pub results: Vec<(Vec<usize>, Decision)>,
    pub tree_invariant: bool,
}

/// Classification for every spanning tree, and whether it depends on the tree.
pub fn classify_all_trees(g: &Multigraph) -> Result<TreeScan> {
    let mut results = Vec::new();
    for t in g.spanning_trees() {
        let c = classify_spectrum(g, &t)?;
        results.push((t, c.decision));
    }
    let tree_invariant = results.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(TreeScan { results, tree_invariant })
}
