//! Scenarios, parameter sweeps, impurity-parameter optimization and claim
//! verifiers.

pub mod claims;
pub mod optimize;
pub mod scenario;
pub mod sweep;

pub use claims::{
    entangled_kernel_scan, four_qubit_max_claim, monotone_profile_check, run_claim,
    six_qubit_claim, three_qubit_boundary_claim, three_qubit_middle_claim, transfer_law_report,
    verify_parity_rule, Claim, ClaimReport, TransferLaw, TransferRow, VerifyOptions, Witness,
};
pub use optimize::{
    maximize_concurrence, maximize_concurrence_with, Optimum, SearchOptions, TemperatureSearch,
};
pub use scenario::{all_pairs, default_j_grid, default_t_grid, linspace, CouplingRule, Scenario};
pub use sweep::{read_csv, run_sweep, CsvRecord, SweepResult, SweepRow};
