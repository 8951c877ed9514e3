//! Exact construction, gluing, tilting and deformation of stability
//! conditions on derived categories of linearly oriented type-A quivers and
//! on the category of morphisms of such a category.

pub mod antype;
pub mod complex;
pub mod error;
pub mod family;
pub mod geometry;
pub mod gluing;
pub mod kernel_sampling;
pub mod linalg;
pub mod morphism;
pub mod projective;
pub mod rep;
pub mod scalar;
pub mod stability;
pub mod tilt;

pub use error::{Error, Result};
