//! Exact verification of operator identities on a truncated monomial basis.
//!
//! An identity `lhs = rhs` is checked on every spinor monomial `x^a (x) e_S`
//! with `|a| <= max_degree`. Because every operator commutes with right
//! Clifford multiplication, `(lhs - rhs)(x^a (x) e_S) = (lhs - rhs)(x^a (x) 1) e_S`
//! and `e_S` is invertible, so evaluating on `x^a (x) 1` decides all eight
//! blades at once. The reported counterexample is the first failing monomial
//! in graded-lexicographic order, paired with the scalar blade.

use std::time::Instant;

use rayon::prelude::*;

use crate::clifford::Blade;
use crate::error::Result;
use crate::operator::{Evaluator, OperatorExpr};
use crate::poly::{Monomial, SpinorPoly};

/// Named families of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckGroup {
    /// Commutators of the two-index symmetries.
    P1a,
    /// Conjugation of the two-index symmetries by the double-cover generators.
    P1b,
    /// Square of the three-index symmetry.
    P2,
    /// The `L`/`C` identity used to simplify that square.
    P2Aux,
    /// Commutation table of `O0, O+, O-` and `T0, T+, T-`.
    P3,
    /// Square of the three-index symmetry in the ladder basis and the `O+O-`, `O-O+` factorizations.
    P4,
    /// Ladder property of `L+, L-` and their product factorizations.
    P5,
    /// Double-cover group relations.
    Grp,
    /// Centralizer and anticommutation properties.
    Cen,
    /// Dunkl commutativity and agreement of the alternative definitions.
    Plumb,
}

impl CheckGroup {
    pub const ALL: [CheckGroup; 10] = [
        CheckGroup::Grp,
        CheckGroup::Cen,
        CheckGroup::P1a,
        CheckGroup::P1b,
        CheckGroup::P2,
        CheckGroup::P2Aux,
        CheckGroup::P3,
        CheckGroup::P4,
        CheckGroup::P5,
        CheckGroup::Plumb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckGroup::P1a => "P1a",
            CheckGroup::P1b => "P1b",
            CheckGroup::P2 => "P2",
            CheckGroup::P2Aux => "P2-aux",
            CheckGroup::P3 => "P3",
            CheckGroup::P4 => "P4",
            CheckGroup::P5 => "P5",
            CheckGroup::Grp => "GRP",
            CheckGroup::Cen => "CEN",
            CheckGroup::Plumb => "PLUMB",
        }
    }

    /// Case-insensitive lookup by [`CheckGroup::name`].
    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.name().eq_ignore_ascii_case(s.trim()))
    }
}

impl std::fmt::Display for CheckGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One identity `lhs = rhs` to be checked up to a degree bound.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: String,
    pub group: CheckGroup,
    pub lhs: OperatorExpr,
    pub rhs: OperatorExpr,
    pub max_degree: u32,
    /// When set, the check is reported as skipped with this reason.
    pub skip: Option<String>,
}

impl IdentityCheck {
    pub fn new(
        name: impl Into<String>,
        group: CheckGroup,
        lhs: OperatorExpr,
        rhs: OperatorExpr,
        max_degree: u32,
    ) -> Self {
        IdentityCheck {
            name: name.into(),
            group,
            lhs,
            rhs,
            max_degree,
            skip: None,
        }
    }

    /// `op = 0`.
    pub fn vanishes(name: impl Into<String>, group: CheckGroup, op: OperatorExpr, max_degree: u32) -> Self {
        Self::new(name, group, op, OperatorExpr::zero(), max_degree)
    }

    pub fn skipped(name: impl Into<String>, group: CheckGroup, reason: impl Into<String>) -> Self {
        IdentityCheck {
            skip: Some(reason.into()),
            ..Self::new(name, group, OperatorExpr::zero(), OperatorExpr::zero(), 0)
        }
    }
}

/// Witness of a failed identity: `(lhs - rhs)(x^monomial (x) blade) = difference`.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub monomial: Monomial,
    pub blade: Blade,
    pub difference: SpinorPoly,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Pass,
    Fail(Counterexample),
    Skipped(String),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail(_) => "fail",
            Verdict::Skipped(_) => "skipped",
        }
    }
}

/// `(lhs - rhs)(x^m (x) 1)`.
pub fn difference_at(ev: &Evaluator, lhs: &OperatorExpr, rhs: &OperatorExpr, m: Monomial) -> Result<SpinorPoly> {
    Ok(ev.eval_monomial(lhs, m)?.sub(&*ev.eval_monomial(rhs, m)?))
}

/// Decide `check` exactly. Degrees are scanned in increasing order, so a
/// failure carries a counterexample of minimal degree.
pub fn check_identity(ev: &Evaluator, check: &IdentityCheck) -> Result<Verdict> {
    if let Some(reason) = &check.skip {
        return Ok(Verdict::Skipped(reason.clone()));
    }
    for d in 0..=check.max_degree {
        let monomials = Monomial::of_degree(d);
        let diffs = monomials
            .par_iter()
            .map(|&m| difference_at(ev, &check.lhs, &check.rhs, m).map(|p| (m, p)))
            .collect::<Result<Vec<_>>>()?;
        if let Some((m, p)) = diffs.into_iter().find(|(_, p)| !p.is_zero()) {
            return Ok(Verdict::Fail(Counterexample {
                monomial: m,
                blade: Blade::SCALAR,
                difference: p,
            }));
        }
    }
    Ok(Verdict::Pass)
}

/// Verdict of one check together with its wall-clock time.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub group: CheckGroup,
    pub verdict: Verdict,
    pub millis: u64,
}

/// Run `checks` concurrently; outcomes keep the input order.
pub fn run_checks(ev: &Evaluator, checks: &[IdentityCheck]) -> Result<Vec<CheckOutcome>> {
    checks
        .par_iter()
        .map(|c| {
            let start = Instant::now();
            let verdict = check_identity(ev, c)?;
            Ok(CheckOutcome {
                name: c.name.clone(),
                group: c.group,
                verdict,
                millis: start.elapsed().as_millis() as u64,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(outcomes: &[CheckOutcome]) -> Self {
        let mut s = Summary::default();
        for o in outcomes {
            match o.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail(_) => s.fail += 1,
                Verdict::Skipped(_) => s.skipped += 1,
            }
        }
        s
    }
}
