pub mod adversary;
pub mod bandit;
pub mod cycle_learner;
pub mod dmdp;
pub mod error;
pub mod experiment;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod marco_polo;
pub mod oracle;
pub mod polytope;
pub mod rewards;
