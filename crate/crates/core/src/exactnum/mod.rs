//! Exact arithmetic: rational polynomials, number fields, squares and CM conjugation.

pub mod cm;
pub mod factor;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod sqrt;
pub mod sturm;
