//! Analytic solutions for states with a completely mixed qubit, the
//! n-qubit example families, and the verification campaigns built on them.

pub mod branches;
pub mod families;
pub mod quadrilateral;
pub mod theorem;

pub use branches::{svd_branch_solutions, svd_factors, BranchReport};
pub use families::{dicke4_state, ghz_overlap, ghz_state, w_state, wn_overlap, WnReport};
pub use quadrilateral::{
    balanced_nearest, balanced_overlap, quadrilateral_nearest, quadrilateral_overlap,
    sample_feasible_quadrilateral, QuadrilateralParams,
};
pub use theorem::{
    inverse_search, run_campaign, theorem_check, CampaignReport, InverseSearchReport, TheoremReport,
};
