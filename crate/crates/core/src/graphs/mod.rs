//! Stable multigraphs: automorphisms, lasso bases, mouths, the spectral
//! classification and enumeration by genus.

mod automorphism;
mod classify;
mod enumerate;
mod graph;
mod lasso;
mod mouth;

pub use automorphism::{
    automorphism_group, automorphisms, canonical_form, is_isomorphic, vertex_automorphisms, GraphAutomorphism,
    MAX_AUT_ORDER, MAX_AUT_VERTICES,
};
pub use classify::{
    classify_all_trees, classify_spectrum, genus2_case, Classification, CornerWitness, Decision, Genus2Case, Method,
    TreeScan,
};
pub use enumerate::{enumerate_stable_graphs, MAX_ENUM_GENUS};
pub use graph::{example_graph, genus2, GraphJson, Multigraph, VertexId};
pub use lasso::{
    basis_orbit_closed, conjugate_form, format_word, invert, reduce, tree_path, ConjugateForm, Dart, GeometricBasis,
    OrbitReport, OrbitWitness, Word,
};
pub use mouth::{find_mouths, has_mouth, Mouth};
