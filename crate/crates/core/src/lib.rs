pub mod catalog;
pub mod cmat;
pub mod elliptic;
pub mod error;
pub mod sampling;
pub mod stencil;
pub mod boost;
pub mod verify;
pub mod transforms;
