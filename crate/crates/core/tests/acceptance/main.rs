//! Acceptance criteria, algebraic invariants and CLI behaviour.
//!
//! Everything lives in one test binary so that a failing criterion does not
//! keep the remaining checks from running.

mod cli;
mod criteria;
mod properties;
