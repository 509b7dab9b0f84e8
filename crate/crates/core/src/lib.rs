//! Distance-(d,k) coloring reconfiguration: validators, a brute-force
//! reachability oracle, gadget reductions and polynomial solvers.

pub mod coloring;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod reductions;
pub mod sliding_tokens;
pub mod solvers;

pub use coloring::{Color, Coloring, ListAssignment, ReconfigInstance, ReconfigSequence, Step};
pub use graph::{Distance, Graph, Vertex};
pub use oracle::{OracleBudget, OracleError};
