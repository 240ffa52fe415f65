//! Exact operator algebra for Dunkl-Dirac symmetries of dihedral groups in three dimensions.
//!
//! Scalars live in `Q(zeta_n)[kappa]`, spinor polynomials in
//! `Q(zeta_n)[kappa][x1, x2, x3] (x) Cl_3`. Operators are expression trees
//! evaluated on monomials with memoization; identities are decided exactly on
//! every monomial up to a degree bound.

pub mod clifford;
pub mod cyclotomic;
pub mod error;
pub mod kscalar;
pub mod poly;
pub mod rational;
pub mod dihedral;
pub mod dunkl;
pub mod operator;
pub mod parse;
pub mod symmetry;
pub mod report;
pub mod spectrum;
pub mod suite;
pub mod verify;

pub use clifford::{Blade, CliffordAlgebra, CliffordElt, Signature};
pub use cyclotomic::Cyclotomic;
pub use dihedral::{DihedralConfig, GroupElement, KappaMode};
pub use error::{Error, Result};
pub use kscalar::KScalar;
pub use operator::{operator_apply, Evaluator, OperatorExpr};
pub use parse::{parse_ast, parse_operator, parse_spinor_poly, Ast, ParseError};
pub use poly::{Monomial, SpinorPoly};
pub use rational::Rational;
pub use report::{format_spinor, SpectrumDocument, VerifyDocument};
pub use spectrum::{analyze_slice, joint_spectrum, SliceSpectrum, ladder_strings, realize_matrix, JointEigenvalue, LadderChain};
pub use suite::{run_suite, SuiteReport};
pub use symmetry::{OneIndexForm, SymmetryOperators};
pub use verify::{check_identity, CheckGroup, IdentityCheck, Verdict};
