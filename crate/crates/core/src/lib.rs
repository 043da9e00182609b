pub mod bernstein;
pub mod bits;
pub mod certify;
pub mod cli;
pub mod closure;
pub mod error;
pub mod matrix;
pub mod orders;
pub mod poly;
pub mod reliability;
pub mod roots;
pub mod verify;
mod serde_util;
