//! Limit laws, distances to them, concentration bounds and convergence
//! conditions.

mod bounds;
mod conditions;
mod distance;
mod estimate;
mod targets;

pub use bounds::*;
pub use conditions::*;
pub use distance::*;
pub use estimate::*;
pub use targets::*;
