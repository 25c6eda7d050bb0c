//! Rank taxonomy, inversion strategies and description-vs-mapping
//! complexity accounting for a small catalog of functions.

pub mod catalog;
pub mod cfg;
pub mod complexity;
pub mod error;
pub mod funcs;
pub mod inversion;
pub mod ranking;
pub mod report;
mod search;
pub mod tables;
pub mod tsp;

pub use catalog::{demonstrate, Demonstration, FunctionDescriptor, FunctionId};
pub use cfg::{CyclePath, FlowGraph};
pub use complexity::{report as complexity_report, ComplexityReport, MappingParams, MappingSize};
pub use error::{Error, Result};
pub use inversion::Bracket;
pub use ranking::{
    classify, complexity_verdict, Category, CostLedger, RankProfile, SizeLedger, Verdict,
    TABLE_FEASIBILITY_LIMIT,
};
pub use search::probe_budget;
pub use tables::{MappingTable, OracleNotebook, View};
pub use tsp::{DistanceMatrix, Tour};
