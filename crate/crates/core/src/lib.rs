//! Exact computations for bound quiver algebras, their module categories and
//! their bounded derived categories, with checks for cluster-tilting
//! subcategories and their periodic extensions.

pub mod exactlin;
pub mod quiveralg;
pub mod modcat;
pub mod derived;
pub mod tilting;
