//! Exact computational tools for curve-surface incidence problems in
//! three-space: tangency orders along curves, local intersection
//! multiplicities, flecnodal points, Hilbert functions of ideal chains,
//! polynomial-method degree reduction, and rich-point censuses.
//!
//! The algebra is generic over [`Field`]; [`Fp`] (prime fields with a
//! runtime modulus) and [`Rational`] are provided, with the aliases below
//! for the common instantiations.

pub mod curves;
pub mod error;
pub mod field;
pub mod flecnode;
pub mod groebner;
pub mod hilbert;
pub mod incidence;
pub mod interpolate;
pub mod linalg;
pub mod mpoly;
pub mod multiplicity;
pub mod reduce;
pub mod tangency;
pub mod unipoly;

pub use error::{Error, Result};
pub use field::{Field, Fp, Rational, ALGEBRA_PRIME};
pub use linalg::Matrix;
pub use mpoly::{MPoly, Monomial};
pub use unipoly::{RootFinding, UniPoly};

pub type PolyFp = mpoly::MPoly<Fp>;
pub type PolyQ = mpoly::MPoly<Rational>;
pub type UniPolyFp = unipoly::UniPoly<Fp>;
pub type UniPolyQ = unipoly::UniPoly<Rational>;
pub type MatrixFp = linalg::Matrix<Fp>;
pub type MatrixQ = linalg::Matrix<Rational>;
pub type PointFp = curves::Point3<Fp>;
pub type PointQ = curves::Point3<Rational>;
pub type CurveFp = curves::RatCurve<Fp>;
pub type CurveQ = curves::RatCurve<Rational>;
