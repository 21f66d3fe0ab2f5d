//! Command-line front end: the group DSL, verdict records, the verdict
//! cache, named experiments and the maximal-subgroup tables.

pub mod cache;
pub mod corpus;
pub mod dsl;
pub mod experiments;
pub mod record;
pub mod run;
pub mod tables;
