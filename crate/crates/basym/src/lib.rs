//! Exact multigraded commutative algebra over prime fields: Groebner bases
//! and syzygies, graded free resolutions, multi-Rees presentations, Stanley
//! decompositions of supports, and the asymptotic shape of Betti tables of
//! products of ideal powers, with an oracle that verifies predictions against
//! direct per-power computations.
//!
//! ```
//! use basym::report::{run, Command};
//! use basym::session::Session;
//!
//! let session = Session::parse(
//!     "grading Z^1; ring x:1 y:1; ideal I = x^2, x*y, y^2; window t=1..3 wcap=40;",
//! )?;
//! let out = run(&session, &Command::Verify { ell: Some(1) })?;
//! assert!(out.all_match);
//! # Ok::<(), basym::Error>(())
//! ```

pub mod error;
pub mod snf;
pub mod grading;
pub mod field;
pub mod monomial;
pub mod order;
pub mod ring;
pub mod poly;
pub mod freemod;
pub mod groebner;
pub mod homalg;
pub mod rees;
pub mod stanley;
pub mod asymptote;
pub mod session;
pub mod report;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use freemod::{FreeModule, ModElement, ModTerm};
pub use grading::{Degree, DegreeGroup, PositivityFunctional, Weight};
pub use monomial::Monomial;
pub use order::{ModuleExtension, ModuleOrder, MonomialOrder};
pub use poly::Polynomial;
pub use ring::Ring;
