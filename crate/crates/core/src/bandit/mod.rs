//! The two bandit learners composed by the episodic algorithm, and the
//! regret-bound formulas used as reference ceilings.

pub mod bounds;
pub mod exp3;
pub mod hedge;

pub use bounds::{blo_bound, exp3_bound, cycle_learner_bound, episodic_bound, episodic_constant};
pub use exp3::Exp3;
pub use hedge::VertexHedge;
