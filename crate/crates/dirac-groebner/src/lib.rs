//! Exact constraint analysis of polynomial Lagrangian systems.
//!
//! Given a Lagrangian with rational coefficients, this crate computes the
//! canonical Hamiltonian by Gröbner-basis velocity elimination, completes
//! the set of Dirac constraints through the consistency conditions, and
//! separates the complete set into first and second classes — all in exact
//! rational arithmetic.
//!
//! The layers, bottom to top:
//!
//! - [`rational`], [`variable`], [`monomial`], [`order`], [`polynomial`]:
//!   sparse multivariate polynomials over `Q` with pluggable monomial
//!   orders, including block elimination orders.
//! - [`groebner`]: multivariate division, Buchberger's algorithm with
//!   reduced monic output, ideal and radical membership, elimination ideals.
//! - [`phasespace`]: momenta relations, Legendre transform, primary
//!   constraints, Poisson brackets, total Hamiltonian, equations of motion.
//! - [`dirac`]: the completion loop, the constraint bracket matrix with
//!   exact rank and null space modulo the constraint ideal, and the
//!   first/second class separation; [`dirac::analyze`] runs the whole
//!   pipeline.
//! - [`problem`], [`report`]: the text input format and the report
//!   renderers used by the command-line tool.
//!
//! See the crate examples for runnable walkthroughs of each layer.

pub mod dirac;
pub mod error;
pub mod groebner;
pub mod monomial;
pub mod order;
pub mod phasespace;
pub mod polynomial;
pub mod problem;
pub mod rational;
pub mod report;
pub mod variable;

pub use dirac::{
    analyze, AnalysisOptions, AnalysisReport, AnalysisStatus, BracketMatrix, Constraint,
    ConstraintClass, ConstraintOrigin, MultiplierCondition,
};
pub use error::{AnalysisError, ParseError};
pub use groebner::{normal_form, radical_member, s_polynomial, GroebnerBasis};
pub use monomial::Monomial;
pub use order::{BaseOrder, MonomialOrder};
pub use phasespace::{
    canonical_hamiltonian, equations_of_motion, momenta_relations, poisson_bracket,
    total_hamiltonian, HamiltonianSystem, LagrangianSystem,
};
pub use polynomial::Polynomial;
pub use problem::{parse_problem, ProblemFile};
pub use rational::Rational;
pub use variable::{VarId, VarKind, VariableTable};
