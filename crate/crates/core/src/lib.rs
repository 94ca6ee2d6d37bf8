//! Chevalley groups from Dynkin quiver data with exact arithmetic.

pub mod chevalley_group;
pub mod error;
pub mod field;
pub mod hall_oracle;
pub mod lie_algebra;
pub mod matrix;
pub mod root_category;
pub mod root_data;

pub use error::{CategoryError, FieldError, GroupError, HallError, LieError, RootError};
pub use field::{FieldDescriptor, Scalar};
pub use root_data::{CartanType, RootDatum};
