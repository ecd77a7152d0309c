pub mod betti_oracle;
pub mod error;
pub mod exactmath;
pub mod families;
pub mod graphs;
pub mod herzog_kuhl;
pub mod monomials;
pub mod rees;

pub use error::{Error, Result};
