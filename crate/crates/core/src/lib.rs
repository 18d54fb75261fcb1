//! Exact offline list update.
//!
//! Given a list in some initial order and a sequence of requests, accessing the item at
//! position `i` costs `i` and every adjacent transposition costs 1. This crate computes
//! optimal service schedules restricted to one up-front permutation followed by moving
//! only the requested item ([`solver`]), referees them against unrestricted dynamic
//! programs ([`oracles`]), and compares classic online policies ([`online`]).
//!
//! ```
//! use listopt::model::{ItemList, RequestSequence};
//!
//! let list = ItemList::parse_csv("a,b,c").unwrap();
//! let sigma = RequestSequence::parse_csv(&list, "c,c,c").unwrap();
//! let schedule = listopt::solver::solve(&list.identity(), &sigma).unwrap();
//! assert_eq!(schedule.total, 5);
//! ```

pub mod cli;
pub mod error;
pub mod model;
pub mod online;
pub mod oracles;
pub mod solver;
pub mod table;
pub mod workbench;

pub use error::{Error, Result};
