//! Normal-form coordinates of Schottky groups, the explicit genus-two
//! automorphism action and the search for norm-decreasing points.

mod family;
mod genus2;
mod search;
mod spectrum;
mod tuple;

pub use family::{
    epsilon_family, epsilon_report, epsilon_rows, family_csv, FamilyPoint, FamilyRow, CONJUGATE_STATUS, FAMILY_CSV_HEADER,
};
pub use genus2::{
    beta_map, composite_w, composite_w_display, critical_residual, eta_of_roots, fixed_points_of_w, sigma_action_genus2,
    solve_t_from_roots, t_line, vieta_check, RootOrder, SigmaAction, TSolution, VietaCheck,
};
pub use search::{
    act_genus2, compare_eigenvalues, search_csv, search_norm_decreasing, EigenPair, GridSpec, ImageTuple, Renormalization,
    SearchOutcome, SearchReport, SearchRow, Witness, SEARCH_CSV_HEADER,
};
pub use spectrum::{spectrum_table, SpectrumEntry, SpectrumTable};
pub use tuple::{generators_genus2, max_norm, GeneratorMatrices, SchottkyTuple, TupleRecord};
