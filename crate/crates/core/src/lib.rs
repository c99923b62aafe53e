//! Subposet vectors of finite posets as lattice points of generalized
//! permutohedra.
//!
//! Given a poset `P` and labelled subposet `Q = (q_1, ..., q_r)`, the vectors
//! `(sigma(q_1), ..., sigma(q_r))` over linear extensions `sigma` of `P` are
//! computed two ways: by brute force over extensions ([`poset`]) and as the
//! integer points of Minkowski sums of interval simplices ([`chainpoly`] for a
//! chain `Q`, [`complex`] for general `Q`, where one convex block per total
//! order of `Q` is translated and glued). [`vertices`] describes block
//! vertices through binary trees and rectangle subdivisions.
//!
//! All computation is exact integer or rational arithmetic. Ranks are taken in
//! the padded poset (`hat0` below everything, `hat1` above) unless stated
//! otherwise.

pub mod chainpoly;
pub mod complex;
pub mod error;
pub mod exact;
pub mod fuzz;
pub mod io;
pub mod poset;
pub mod svg;
pub mod vertices;

pub use chainpoly::{ChainData, GPerm, Witness};
pub use complex::{BlockComplex, Chamber};
pub use error::{Error, Result};
pub use poset::{build_poset, EnumerationLimit, LinearExtension, Poset, Subposet};
