//! Toolkit for nondeterministic automata on infinite words.
//!
//! The crate models Büchi, co-Büchi and weak word automata and provides
//! the operations needed to place an automaton in the nondeterminism
//! hierarchy: deterministic ⊆ determinizable-by-pruning (DBP) ⊆
//! history-deterministic (HD) ⊆ semantically-deterministic (SD) ⊆
//! nondeterministic. On top of that sit exact probability measures of
//! languages under the uniform word distribution, almost-sure pruning
//! extraction, products with Markov decision processes, and generators
//! for the reduction gadgets (SAT, Hamiltonian cycle, space-bounded
//! Turing machines) used to probe the hierarchy's hardness.
//!
//! All probabilities are exact rationals; no floating point is used
//! anywhere in a result.

pub mod automata;
pub mod error;
pub mod game;
pub(crate) mod graph;
pub mod gadgets;
pub mod hierarchy;
pub mod langops;
pub mod limits;
pub mod mdp;
pub mod probability;
pub mod sddet;

pub use automata::{
    complete_automaton, format_lasso, is_deterministic, is_weak, lasso_membership,
    parse_automaton, parse_lasso, reachable_trim, scc_decomposition, serialize_automaton,
    Alphabet, Automaton, Kind, LassoWord, RunWitness, SccGraph, StateId,
};
pub use error::Error;
pub use hierarchy::{check_dbp, check_hd, check_sd, classify, prune_subsumed, Pruning};
pub use langops::{complement, contains, determinize_ncw, equivalent, is_empty, is_universal_state, state_equiv};
pub use limits::Limits;
pub use probability::{almost_dbp, cosafe_closure, good_prefix, measure, measure_deterministic, measure_gap, Rational};
pub use sddet::determinize_sd_nbw;

/// Letter position inside an [`Alphabet`].
pub type LetterId = usize;
