//! Exact representation theory, explicit modules and fundamental-form
//! machinery for checking order-two rigidity of rank-two compact Hermitian
//! symmetric spaces.

pub mod algebra;
pub mod bertini;
pub mod explicit;
pub mod forms;
pub mod linalg;
pub mod models;
pub mod pipeline;
pub mod rep;
pub mod symmetry;
pub mod weight;
