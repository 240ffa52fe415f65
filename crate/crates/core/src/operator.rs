//! Formal operator expressions and their exact action on spinor polynomials.
//!
//! Every generator (coordinate multiplication, Dunkl operators, group
//! elements, left Clifford multiplication, central scalars) commutes with
//! right multiplication by Clifford elements. An operator is therefore fixed by
//! its values on the scalar monomials `x^a (x) 1`, and
//! `op(sum_a x^a (x) c_a) = sum_a op(x^a (x) 1) c_a`. The [`Evaluator`]
//! memoizes those values per expression node, so shared subexpressions are
//! evaluated once per monomial no matter how often they occur.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use dashmap::DashMap;

use crate::clifford::{Blade, CliffordElt};
use crate::dihedral::{DihedralConfig, GroupElement};
use crate::dunkl::dunkl_apply;
use crate::error::Result;
use crate::kscalar::KScalar;
use crate::poly::{Monomial, SpinorPoly};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug)]
pub enum OpKind {
    Identity,
    Zero,
    /// Multiplication by `x_i`.
    CoordMult(usize),
    /// Dunkl operator `D_i`.
    Dunkl(usize),
    /// `w (x) 1`.
    Group(GroupElement),
    /// `1 (x) c`, acting by left multiplication.
    CliffordLeft(CliffordElt),
    /// A central scalar times the identity.
    Scalar(KScalar),
    Sum(Vec<OperatorExpr>),
    /// `a b`: apply `b`, then `a`.
    Compose(OperatorExpr, OperatorExpr),
    Commutator(OperatorExpr, OperatorExpr),
    Anticommutator(OperatorExpr, OperatorExpr),
    Scale(KScalar, OperatorExpr),
    Neg(OperatorExpr),
}

#[derive(Debug)]
struct Node {
    id: u64,
    name: Option<String>,
    kind: OpKind,
}

/// Immutable, cheaply clonable operator expression tree.
#[derive(Clone, Debug)]
pub struct OperatorExpr(Arc<Node>);

impl OperatorExpr {
    pub fn new(kind: OpKind) -> Self {
        OperatorExpr(Arc::new(Node {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: None,
            kind,
        }))
    }

    /// Same operator with a display name; evaluation is unaffected.
    pub fn named(self, name: impl Into<String>) -> Self {
        let name = Some(name.into());
        match Arc::try_unwrap(self.0) {
            Ok(node) => OperatorExpr(Arc::new(Node { name, ..node })),
            Err(shared) => OperatorExpr(Arc::new(Node {
                id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
                name,
                kind: OpKind::Sum(vec![OperatorExpr(shared)]),
            })),
        }
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn name(&self) -> Option<&str> {
        self.0.name.as_deref()
    }

    pub fn kind(&self) -> &OpKind {
        &self.0.kind
    }

    pub fn identity() -> Self {
        Self::new(OpKind::Identity)
    }

    pub fn zero() -> Self {
        Self::new(OpKind::Zero)
    }

    pub fn coord(axis: usize) -> Self {
        assert!((1..=3).contains(&axis));
        Self::new(OpKind::CoordMult(axis))
    }

    pub fn dunkl(axis: usize) -> Self {
        assert!((1..=3).contains(&axis));
        Self::new(OpKind::Dunkl(axis))
    }

    pub fn group(g: GroupElement) -> Self {
        Self::new(OpKind::Group(g))
    }

    pub fn clifford_left(c: CliffordElt) -> Self {
        Self::new(OpKind::CliffordLeft(c))
    }

    pub fn scalar(s: KScalar) -> Self {
        Self::new(OpKind::Scalar(s))
    }

    pub fn sum(terms: impl IntoIterator<Item = OperatorExpr>) -> Self {
        Self::new(OpKind::Sum(terms.into_iter().collect()))
    }

    pub fn compose(a: &OperatorExpr, b: &OperatorExpr) -> Self {
        Self::new(OpKind::Compose(a.clone(), b.clone()))
    }

    /// Left-to-right product `f_0 f_1 ... f_k` (`f_k` acts first).
    pub fn product(factors: &[&OperatorExpr]) -> Self {
        let mut it = factors.iter().rev();
        let mut acc = (*it.next().expect("empty product")).clone();
        for f in it {
            acc = Self::compose(f, &acc);
        }
        acc
    }

    pub fn commutator(a: &OperatorExpr, b: &OperatorExpr) -> Self {
        Self::new(OpKind::Commutator(a.clone(), b.clone()))
    }

    pub fn anticommutator(a: &OperatorExpr, b: &OperatorExpr) -> Self {
        Self::new(OpKind::Anticommutator(a.clone(), b.clone()))
    }

    pub fn scale(s: KScalar, a: &OperatorExpr) -> Self {
        Self::new(OpKind::Scale(s, a.clone()))
    }

    pub fn pow(&self, k: u32) -> Self {
        match k {
            0 => Self::identity(),
            _ => {
                let mut acc = self.clone();
                for _ in 1..k {
                    acc = Self::compose(self, &acc);
                }
                acc
            }
        }
    }
}

impl Add for &OperatorExpr {
    type Output = OperatorExpr;
    fn add(self, rhs: &OperatorExpr) -> OperatorExpr {
        OperatorExpr::sum([self.clone(), rhs.clone()])
    }
}

impl Sub for &OperatorExpr {
    type Output = OperatorExpr;
    fn sub(self, rhs: &OperatorExpr) -> OperatorExpr {
        OperatorExpr::sum([self.clone(), -rhs])
    }
}

impl Neg for &OperatorExpr {
    type Output = OperatorExpr;
    fn neg(self) -> OperatorExpr {
        OperatorExpr::new(OpKind::Neg(self.clone()))
    }
}

impl Mul for &OperatorExpr {
    type Output = OperatorExpr;
    /// Composition: `(a * b) p = a (b p)`.
    fn mul(self, rhs: &OperatorExpr) -> OperatorExpr {
        OperatorExpr::compose(self, rhs)
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.name() {
            return f.write_str(n);
        }
        match self.kind() {
            OpKind::Identity => f.write_str("1"),
            OpKind::Zero => f.write_str("0"),
            OpKind::CoordMult(i) => write!(f, "x{i}"),
            OpKind::Dunkl(i) => write!(f, "D{i}"),
            OpKind::Group(g) => f.write_str(g.label()),
            OpKind::CliffordLeft(c) => write!(f, "<{c}>"),
            OpKind::Scalar(s) => write!(f, "({s})"),
            OpKind::Sum(v) => {
                f.write_str("(")?;
                for (i, t) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
            OpKind::Compose(a, b) => write!(f, "{a}*{b}"),
            OpKind::Commutator(a, b) => write!(f, "[{a}, {b}]"),
            OpKind::Anticommutator(a, b) => write!(f, "{{{a}, {b}}}"),
            OpKind::Scale(s, a) => write!(f, "({s})*{a}"),
            OpKind::Neg(a) => write!(f, "-{a}"),
        }
    }
}

/// Exact evaluation of operator expressions under one configuration.
///
/// Thread-safe: many threads may evaluate through one evaluator and share its
/// cache. Results do not depend on evaluation order.
pub struct Evaluator {
    cfg: DihedralConfig,
    cache: DashMap<(u64, Monomial), Arc<SpinorPoly>>,
}

impl Evaluator {
    pub fn new(cfg: &DihedralConfig) -> Self {
        Evaluator {
            cfg: cfg.clone(),
            cache: DashMap::new(),
        }
    }

    pub fn config(&self) -> &DihedralConfig {
        &self.cfg
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    pub fn clear_cache(&self) {
        self.cache.clear();
    }

    /// `op (x^m (x) 1)`.
    pub fn eval_monomial(&self, op: &OperatorExpr, m: Monomial) -> Result<Arc<SpinorPoly>> {
        let key = (op.id(), m);
        if let Some(hit) = self.cache.get(&key) {
            return Ok(hit.clone());
        }
        let value = Arc::new(self.compute(op, m)?);
        self.cache.insert(key, value.clone());
        Ok(value)
    }

    fn unit(&self, m: Monomial) -> SpinorPoly {
        SpinorPoly::basis(m, Blade::SCALAR, self.cfg.order())
    }

    fn compute(&self, op: &OperatorExpr, m: Monomial) -> Result<SpinorPoly> {
        Ok(match op.kind() {
            OpKind::Identity => self.unit(m),
            OpKind::Zero => SpinorPoly::zero(),
            OpKind::CoordMult(i) => self.unit(m.shifted(*i, true).unwrap()),
            OpKind::Dunkl(i) => dunkl_apply(&self.cfg, *i, &self.unit(m))?,
            OpKind::Group(g) => g.apply(&self.unit(m)),
            OpKind::CliffordLeft(c) => SpinorPoly::term(m, c.clone()),
            OpKind::Scalar(s) => SpinorPoly::term(m, CliffordElt::scalar(s.clone())),
            OpKind::Sum(terms) => {
                let mut acc = SpinorPoly::zero();
                for t in terms {
                    acc.add_assign(&*self.eval_monomial(t, m)?);
                }
                acc
            }
            OpKind::Compose(a, b) => {
                let inner = self.eval_monomial(b, m)?;
                self.apply(a, &inner)?
            }
            OpKind::Commutator(a, b) | OpKind::Anticommutator(a, b) => {
                let ab = self.apply(a, &*self.eval_monomial(b, m)?)?;
                let ba = self.apply(b, &*self.eval_monomial(a, m)?)?;
                if matches!(op.kind(), OpKind::Commutator(..)) {
                    ab.sub(&ba)
                } else {
                    ab.add(&ba)
                }
            }
            OpKind::Scale(s, a) => self.eval_monomial(a, m)?.scale_kscalar(s),
            OpKind::Neg(a) => self.eval_monomial(a, m)?.neg(),
        })
    }

    /// Exact image `op(p)`.
    pub fn apply(&self, op: &OperatorExpr, p: &SpinorPoly) -> Result<SpinorPoly> {
        let alg = self.cfg.clifford();
        let mut acc = SpinorPoly::zero();
        for (m, c) in p.terms() {
            let image = self.eval_monomial(op, *m)?;
            let mut blades = c.components();
            let single = match (blades.next(), blades.next()) {
                (Some((b, s)), None) => Some((b, s)),
                _ => None,
            };
            for (mm, d) in image.terms() {
                let term = match single {
                    Some((Blade::SCALAR, s)) => d.scale(s),
                    Some((b, s)) => alg.mul_blade_right(d, b).scale(s),
                    None => alg.mul(d, c),
                };
                acc.add_term(*mm, term);
            }
        }
        Ok(acc)
    }
}

/// One-shot evaluation without a persistent cache.
pub fn operator_apply(op: &OperatorExpr, p: &SpinorPoly, cfg: &DihedralConfig) -> Result<SpinorPoly> {
    Evaluator::new(cfg).apply(op, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Signature;
    use crate::cyclotomic::Cyclotomic;
    use crate::rational::Rational;

    fn cfg() -> DihedralConfig {
        DihedralConfig::new(3, Signature::Negative).unwrap()
    }

    #[test]
    fn identity_and_zero() {
        let cfg = cfg();
        let p = SpinorPoly::basis(Monomial::new(1, 2, 0), Blade::E13, cfg.order());
        assert_eq!(operator_apply(&OperatorExpr::identity(), &p, &cfg).unwrap(), p);
        assert!(operator_apply(&OperatorExpr::zero(), &p, &cfg).unwrap().is_zero());
    }

    #[test]
    fn clifford_left_multiplies_on_the_left() {
        let cfg = cfg();
        let n = cfg.order();
        let one = KScalar::from_int(n, 1);
        let e1 = OperatorExpr::clifford_left(CliffordElt::blade(Blade::E1, one.clone()));
        let p = SpinorPoly::basis(Monomial::var(2), Blade::E2, n);
        // e1 * e2 = e12 on the left; right multiplication would give -e12
        let want = SpinorPoly::basis(Monomial::var(2), Blade::E12, n);
        assert_eq!(operator_apply(&e1, &p, &cfg).unwrap(), want);
    }

    #[test]
    fn commutator_expansion() {
        let cfg = cfg();
        let ev = Evaluator::new(&cfg);
        let a = OperatorExpr::dunkl(1);
        let b = OperatorExpr::coord(2);
        let c = OperatorExpr::commutator(&a, &b);
        let c2 = &(&a * &b) - &(&b * &a);
        let ac = OperatorExpr::anticommutator(&a, &b);
        let ac2 = &(&a * &b) + &(&b * &a);
        for m in Monomial::up_to_degree(3) {
            assert_eq!(*ev.eval_monomial(&c, m).unwrap(), *ev.eval_monomial(&c2, m).unwrap());
            assert_eq!(*ev.eval_monomial(&ac, m).unwrap(), *ev.eval_monomial(&ac2, m).unwrap());
        }
    }

    #[test]
    fn linearity_and_scalars() {
        let cfg = cfg();
        let n = cfg.order();
        let ev = Evaluator::new(&cfg);
        let op = &OperatorExpr::dunkl(3) * &OperatorExpr::coord(1);
        let k = cfg.kappa(0).unwrap();
        let p = SpinorPoly::basis(Monomial::new(0, 1, 1), Blade::E23, n);
        let q = SpinorPoly::basis(Monomial::new(2, 0, 0), Blade::E1, n).scaled(&Cyclotomic::imag_unit(n));
        let lhs = ev.apply(&op, &p.add(&q.scale_kscalar(&k))).unwrap();
        let rhs = ev.apply(&op, &p).unwrap().add(&ev.apply(&op, &q).unwrap().scale_kscalar(&k));
        assert_eq!(lhs, rhs);

        let half = KScalar::rational(n, Rational::new(1, 2));
        let scaled = OperatorExpr::scale(half.clone(), &op);
        let via_scalar = &OperatorExpr::scalar(half.clone()) * &op;
        assert_eq!(ev.apply(&scaled, &p).unwrap(), ev.apply(&via_scalar, &p).unwrap());
        assert_eq!(ev.apply(&scaled, &p).unwrap(), ev.apply(&op, &p).unwrap().scale_kscalar(&half));
    }

    #[test]
    fn naming_keeps_semantics() {
        let cfg = cfg();
        let ev = Evaluator::new(&cfg);
        let base = OperatorExpr::dunkl(2);
        let shared = base.clone();
        let named = base.named("D2");
        assert_eq!(named.to_string(), "D2");
        let m = Monomial::new(1, 1, 0);
        assert_eq!(*ev.eval_monomial(&named, m).unwrap(), *ev.eval_monomial(&shared, m).unwrap());
        assert_eq!(OperatorExpr::coord(1).pow(3).to_string(), "x1*x1*x1");
    }
}
