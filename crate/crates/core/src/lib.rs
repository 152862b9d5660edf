//! Free quandles realized inside free groups.
//!
//! Elements of the free quandle on `X` are the conjugates `w^-1 x w` of the
//! generators in the free group `F(X)`. On top of that representation the
//! crate enumerates bounded subquandle closures, computes free bases of
//! finitely generated subquandles, and certifies them with two independent
//! independence checkers.

pub mod basis;
pub mod cli;
pub mod conj_quandle;
pub mod error;
pub mod free_group;
pub mod independence;
pub mod record;
pub mod subquandle;
pub mod text;

pub use basis::{compute_s, compute_t, greedy_shrink, is_shrinkable, BasisReport, Method, ShrinkMove};
pub use conj_quandle::{verify_axioms, AxiomReport, OpKind, QuandleElement};
pub use error::{Error, Result};
pub use free_group::{Alphabet, Generator, Letter, Sign, Word};
pub use independence::{check_significant_factors, nielsen_independent, HallReport, NielsenReport};
pub use subquandle::{closure, ClosureSet, QuandleTerm};
pub use text::{parse_element, parse_word, ProblemFile};
