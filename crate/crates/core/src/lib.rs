//! Real resolution graphs, plumbing reduction, quotient ledgers and line
//! arrangements for conjugation quotients of real algebraic surfaces.

pub mod arrangement;
pub mod catalog;
pub mod cli;
pub mod ledger;
pub mod plumbing;
pub mod resolution;
pub mod sf;
