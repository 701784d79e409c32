// Parameter checks are written as `!(x > 0.0)` so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod special;
pub mod sum;
pub mod series;
pub mod quadrature;
pub mod ek;
pub mod kg;
pub mod verify;
