//! Mertens functions of quadratic number fields: coefficient sieves, the
//! trivial-zero completion M_K*, zeros of the Dedekind zeta function, explicit
//! formula sums and logarithmic limiting distributions.

pub mod coeffs;
pub mod distribution;
pub mod error;
pub mod lvalues;
pub mod mstar;
pub mod oscillation;
pub mod quadfield;
pub mod special;
pub mod zeros;

pub use coeffs::CoeffTables;
pub use error::{Error, Result};
pub use mstar::{MStar, MStarEval};
pub use oscillation::{OscKind, OscSum};
pub use quadfield::{Character, FieldKind, QuadField};
pub use zeros::{ZeroRecord, ZeroSet};
