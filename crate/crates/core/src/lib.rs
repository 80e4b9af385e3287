pub mod conway;
pub mod cosets;
pub mod distance;
pub mod duality;
pub mod error;
pub mod gf;
pub mod matgf;
mod poly_fp;
pub mod quantum;
pub mod subfield;
pub mod tracecode;

pub use error::{Error, Result};
pub use gf::{Elem, Field, FieldElement, SubfieldEmbedding};
pub use matgf::GfMatrix;
