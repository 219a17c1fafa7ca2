//! Exact computations behind a hyperbolicity certificate for complements of
//! plane curves: Chern and Euler characteristic calculus for logarithmic jet
//! bundles, vanishing-threshold bounds, a meromorphic connection solver and
//! Seidenberg reduction of planar foliation singularities.

pub mod chern;
pub mod cli;
pub mod connection;
pub mod exactalg;
pub mod foliation;
pub mod jettower;
pub mod thresholds;

pub use exactalg::Rational;

pub type QPoly = exactalg::UniPoly<Rational>;
pub type QMultiPoly = exactalg::MultiPoly<Rational>;
pub type QRationalFunction = exactalg::RationalFunction<Rational>;
pub type SurfaceData = chern::Surface<Rational>;
pub type QDivisorClass = chern::DivisorClass<Rational>;
