//! Exact arithmetic: rationals, polynomials, rational functions, root
//! isolation, and a bisection driver for monotone float functions.

pub mod bisect;
pub mod linear;
pub mod poly;
pub mod rat;
pub mod ratfunc;
pub mod sturm;

pub use bisect::{bisect_monotone, Bracket};
pub use linear::solve_2x2;
pub use poly::{integrate_poly, Poly};
pub use rat::{format_rat, int, parse_rat, rat, Rat};
pub use ratfunc::{integrate_shifted_pole, RatFunc};
pub use sturm::{sturm_isolate, sturm_isolate_to, IsolatingInterval, Region, SturmChain};
