//! Generators for the hardness-reduction gadgets and the counterexample
//! corpus: SAT → Büchi, Hamiltonian-cycle → co-Büchi, space-bounded
//! Turing machine → weak, plus the strictness-witness mutators and the
//! figure transcriptions.

pub mod corpus;
pub mod hamcycle;
pub mod mutators;
pub mod sat;
pub mod tm;

pub use corpus::corpus;
pub use hamcycle::{eventually_constant_dcw, hamcycle_to_ncw, parse_graph, UGraph};
pub use mutators::{dbp_inflate, sd_break};
pub use sat::{assignment_pruning, hd_strategy_audit, parse_dimacs, sat_to_nbw, CnfFormula};
pub use tm::{corrupt_first_letter, parse_tm, tm_to_nww, TuringMachine};
