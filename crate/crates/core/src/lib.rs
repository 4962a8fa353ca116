//! Exact computer algebra for `U_q(su(2))`, `Fun_q(SU(2))`, their Drinfeld
//! double (the q-Lorentz group) acting on the Podleś sphere, and the `q → 1`
//! limit onto the projective action of `SL(2, ℂ)` on the Riemann sphere.

pub mod coeff;
pub mod ncpoly;
pub mod hopf;
pub mod pairing;
pub mod double;
pub mod classical;
pub mod cli;
