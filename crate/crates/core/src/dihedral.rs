//! Root system, reflections and multiplicity function for `Z2 x D_2m` acting on R^3.

use std::fmt;
use std::sync::Arc;

use crate::clifford::{CliffordAlgebra, CliffordElt, Signature};
use crate::cyclotomic::{field_order_for, trig_value, Cyclotomic, Trig};
use crate::error::{Error, Result};
use crate::kscalar::KScalar;
use crate::poly::{Coefficient, Poly};
use crate::rational::Rational;

pub type Matrix3 = [[Cyclotomic; 3]; 3];

pub fn identity_matrix(order: u32) -> Matrix3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| Cyclotomic::from_int(order, (i == j) as i64))
    })
}

pub fn mat_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = &a[i][0] * &b[0][j];
            acc = &acc + &(&a[i][1] * &b[1][j]);
            &acc + &(&a[i][2] * &b[2][j])
        })
    })
}

pub fn transpose(a: &Matrix3) -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

pub fn determinant(a: &Matrix3) -> Cyclotomic {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        &(&a[r1][c1] * &a[r2][c2]) - &(&a[r1][c2] * &a[r2][c1])
    };
    let t0 = &a[0][0] * &minor(1, 2, 1, 2);
    let t1 = &a[0][1] * &minor(1, 2, 0, 2);
    let t2 = &a[0][2] * &minor(1, 2, 0, 1);
    &(&t0 - &t1) + &t2
}

pub fn apply_matrix(a: &Matrix3, v: &[Cyclotomic; 3]) -> [Cyclotomic; 3] {
    std::array::from_fn(|i| {
        let mut acc = &a[i][0] * &v[0];
        acc = &acc + &(&a[i][1] * &v[1]);
        &acc + &(&a[i][2] * &v[2])
    })
}

/// `x - 2 <x, a> a` for a unit vector `a`.
pub fn reflection_from_root(alpha: &[Cyclotomic; 3]) -> Matrix3 {
    let order = alpha[0].order();
    let two = Rational::from_int(2);
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let delta = Cyclotomic::from_int(order, (i == j) as i64);
            &delta - &(&alpha[i] * &alpha[j]).scale(&two)
        })
    })
}

/// Element of `W` (or any orthogonal map) acting on polynomials by
/// `(w f)(x) = f(w^-1 x)`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupElement {
    label: String,
    matrix: Matrix3,
    inverse: Matrix3,
}

impl GroupElement {
    /// Orthogonal matrix; the inverse is its transpose. Panics otherwise.
    pub fn orthogonal(label: impl Into<String>, matrix: Matrix3) -> Self {
        let inverse = transpose(&matrix);
        let order = matrix[0][0].order();
        assert!(
            mat_mul(&matrix, &inverse) == identity_matrix(order),
            "group element must be orthogonal"
        );
        GroupElement {
            label: label.into(),
            matrix,
            inverse,
        }
    }

    pub fn identity(order: u32) -> Self {
        Self::orthogonal("1", identity_matrix(order))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self) -> &Matrix3 {
        &self.matrix
    }

    /// The product `self * other` (`other` acts first).
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            label: format!("{}*{}", self.label, other.label),
            matrix: mat_mul(&self.matrix, &other.matrix),
            inverse: mat_mul(&other.inverse, &self.inverse),
        }
    }

    /// `(w f)(x) = f(w^-1 x)`; coefficients are untouched.
    pub fn apply<C: Coefficient>(&self, p: &Poly<C>) -> Poly<C> {
        p.substitute(&self.inverse)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({})", self.label)
    }
}

/// How the multiplicity function is represented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KappaMode {
    /// Indeterminates `kappa0, kappa1[, kappa2]`.
    Symbolic,
    /// Rational values, one per orbit parameter.
    Numeric(Vec<Rational>),
}

#[derive(Debug)]
struct Inner {
    m: u32,
    order: u32,
    arity: u8,
    signature: Signature,
    clifford: CliffordAlgebra,
    kappa_mode: KappaMode,
    roots: Vec<[Cyclotomic; 3]>,
    root_param: Vec<usize>,
    reflections: Vec<GroupElement>,
    root_vectors: Vec<CliffordElt>,
}

/// Everything fixed by a choice of `(m, eps, kappa)`. Cheap to clone.
#[derive(Debug, Clone)]
pub struct DihedralConfig {
    inner: Arc<Inner>,
}

impl DihedralConfig {
    /// Symbolic-kappa configuration.
    pub fn new(m: u32, signature: Signature) -> Result<Self> {
        Self::with_kappa(m, signature, KappaMode::Symbolic)
    }

    pub fn with_kappa(m: u32, signature: Signature, kappa_mode: KappaMode) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidOrder(m));
        }
        let order = field_order_for(m);
        let arity: u8 = if m % 2 == 0 { 3 } else { 2 };
        if let KappaMode::Numeric(v) = &kappa_mode {
            if v.len() < arity as usize {
                return Err(Error::UnboundParameter(v.len()));
            }
        }
        let zero = Cyclotomic::zero(order);
        let mut roots = vec![[zero.clone(), zero.clone(), Cyclotomic::one(order)]];
        let mut root_param = vec![0];
        for j in 1..=m as i64 {
            let s = trig_value(Trig::Sin, j, m, false);
            let c = trig_value(Trig::Cos, j, m, false);
            roots.push([s, -c, zero.clone()]);
            root_param.push(if m % 2 == 1 || j % 2 == 1 { 1 } else { 2 });
        }
        let reflections = roots
            .iter()
            .enumerate()
            .map(|(k, a)| GroupElement::orthogonal(format!("s{k}"), reflection_from_root(a)))
            .collect();
        let root_vectors = roots
            .iter()
            .map(|a| CliffordElt::from_vector(a.clone().map(KScalar::constant)))
            .collect();
        Ok(DihedralConfig {
            inner: Arc::new(Inner {
                m,
                order,
                arity,
                signature,
                clifford: CliffordAlgebra::new(signature),
                kappa_mode,
                roots,
                root_param,
                reflections,
                root_vectors,
            }),
        })
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    /// Order `n` of the coefficient field `Q(zeta_n)`.
    pub fn order(&self) -> u32 {
        self.inner.order
    }

    /// Number of kappa parameters: 2 for odd `m`, 3 for even `m`.
    pub fn arity(&self) -> u8 {
        self.inner.arity
    }

    pub fn signature(&self) -> Signature {
        self.inner.signature
    }

    pub fn epsilon(&self) -> i64 {
        self.inner.signature.value()
    }

    pub fn clifford(&self) -> &CliffordAlgebra {
        &self.inner.clifford
    }

    pub fn kappa_mode(&self) -> &KappaMode {
        &self.inner.kappa_mode
    }

    /// Same roots and signature, different kappa representation.
    pub fn with_kappa_mode(&self, mode: KappaMode) -> Result<Self> {
        Self::with_kappa(self.m(), self.signature(), mode)
    }

    /// Positive roots `alpha_0, alpha_1, ..., alpha_m`.
    pub fn roots(&self) -> &[[Cyclotomic; 3]] {
        &self.inner.roots
    }

    pub fn root(&self, k: usize) -> Result<&[Cyclotomic; 3]> {
        self.inner.roots.get(k).ok_or(Error::UnknownRoot(k))
    }

    /// `sum_j <alpha_k, xi_j> e_j`.
    pub fn root_vector(&self, k: usize) -> Result<&CliffordElt> {
        self.inner.root_vectors.get(k).ok_or(Error::UnknownRoot(k))
    }

    pub fn reflection(&self, k: usize) -> Result<&GroupElement> {
        self.inner.reflections.get(k).ok_or(Error::UnknownRoot(k))
    }

    /// Orbit parameter index of root `k`.
    pub fn kappa_param(&self, k: usize) -> Result<usize> {
        self.inner.root_param.get(k).copied().ok_or(Error::UnknownRoot(k))
    }

    /// `kappa(alpha_k)` as a scalar (indeterminate or constant).
    pub fn kappa(&self, k: usize) -> Result<KScalar> {
        let p = self.kappa_param(k)?;
        Ok(self.kappa_param_scalar(p))
    }

    pub fn kappa_param_scalar(&self, p: usize) -> KScalar {
        match &self.inner.kappa_mode {
            KappaMode::Symbolic => KScalar::var(p, self.arity(), self.order()),
            KappaMode::Numeric(v) => KScalar::rational(self.order(), v[p].clone()),
        }
    }

    /// Rows `(cos 2t, sin 2t, 0), (-sin 2t, cos 2t, 0), (0, 0, 1)` with `t = k pi / m`,
    /// a rotation by `-2t`. Index 0 gives the ordinary reflection.
    pub fn rotation_matrix(&self, k: usize) -> Result<GroupElement> {
        if k == 0 {
            return Ok(self.reflection(0)?.clone());
        }
        self.root(k)?;
        let m = self.m();
        let c = trig_value(Trig::Cos, k as i64, m, true);
        let s = trig_value(Trig::Sin, k as i64, m, true);
        let z = Cyclotomic::zero(self.order());
        let one = Cyclotomic::one(self.order());
        let mat = [
            [c.clone(), s.clone(), z.clone()],
            [-&s, c, z.clone()],
            [z.clone(), z, one],
        ];
        Ok(GroupElement::orthogonal(format!("r{k}"), mat))
    }

    pub fn scalar(&self, q: Rational) -> KScalar {
        KScalar::rational(self.order(), q)
    }

    pub fn int(&self, n: i64) -> KScalar {
        KScalar::from_int(self.order(), n)
    }

    pub fn imag_unit(&self) -> KScalar {
        KScalar::constant(Cyclotomic::imag_unit(self.order()))
    }

    /// Kappa values as `Option`s indexed by parameter, for specialization.
    pub fn kappa_values(&self) -> Option<Vec<Option<Rational>>> {
        match &self.inner.kappa_mode {
            KappaMode::Symbolic => None,
            KappaMode::Numeric(v) => Some(v.iter().cloned().map(Some).collect()),
        }
    }
}

impl fmt::Display for DihedralConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} eps={}", self.m(), self.signature())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Blade;
    use crate::poly::{Monomial, SpinorPoly};

    fn configs() -> Vec<DihedralConfig> {
        let mut v = Vec::new();
        for m in 3..=8 {
            for s in [Signature::Positive, Signature::Negative] {
                v.push(DihedralConfig::new(m, s).unwrap());
            }
        }
        v
    }

    fn dot(a: &[Cyclotomic; 3], b: &[Cyclotomic; 3]) -> Cyclotomic {
        let mut acc = &a[0] * &b[0];
        acc = &acc + &(&a[1] * &b[1]);
        &acc + &(&a[2] * &b[2])
    }

    #[test]
    fn rejects_small_orders() {
        assert_eq!(DihedralConfig::new(2, Signature::Positive).unwrap_err(), Error::InvalidOrder(2));
    }

    #[test]
    fn roots_are_unit_and_reflections_are_genuine() {
        for cfg in configs() {
            let n = cfg.order();
            let id = identity_matrix(n);
            for (k, a) in cfg.roots().iter().enumerate() {
                assert!(dot(a, a).is_one());
                let s = cfg.reflection(k).unwrap().matrix();
                assert_eq!(determinant(s), Cyclotomic::from_int(n, -1));
                assert_eq!(mat_mul(s, s), id);
                assert_eq!(apply_matrix(s, a), a.clone().map(|x| -x));
                // fixes a vector orthogonal to alpha
                let perp = [-&a[1], a[0].clone(), a[2].clone()];
                let perp = if a[2].is_zero() { perp } else { [Cyclotomic::one(n), Cyclotomic::zero(n), Cyclotomic::zero(n)] };
                assert!(dot(&perp, a).is_zero());
                assert_eq!(apply_matrix(s, &perp), perp);
            }
        }
    }

    #[test]
    fn named_reflections() {
        let cfg = DihedralConfig::new(3, Signature::Positive).unwrap();
        let n = cfg.order();
        let diag = |a: i64, b: i64, c: i64| -> Matrix3 {
            let mut m = identity_matrix(n);
            m[0][0] = Cyclotomic::from_int(n, a);
            m[1][1] = Cyclotomic::from_int(n, b);
            m[2][2] = Cyclotomic::from_int(n, c);
            m
        };
        assert_eq!(cfg.reflection(0).unwrap().matrix(), &diag(1, 1, -1));
        for m in 3..=7 {
            let cfg = DihedralConfig::new(m, Signature::Negative).unwrap();
            let nn = cfg.order();
            let mut want = identity_matrix(nn);
            want[1][1] = Cyclotomic::from_int(nn, -1);
            assert_eq!(cfg.reflection(m as usize).unwrap().matrix(), &want);
        }
    }

    #[test]
    fn rotation_variant() {
        for cfg in configs() {
            for k in 1..=cfg.m() as usize {
                let p = cfg.rotation_matrix(k).unwrap();
                assert!(determinant(p.matrix()).is_one());
            }
        }
    }

    #[test]
    fn kappa_orbits() {
        let odd = DihedralConfig::new(5, Signature::Positive).unwrap();
        assert_eq!(odd.arity(), 2);
        assert!((1..=5).all(|k| odd.kappa_param(k).unwrap() == 1));
        let even = DihedralConfig::new(6, Signature::Positive).unwrap();
        assert_eq!(even.arity(), 3);
        assert_eq!(even.kappa_param(0).unwrap(), 0);
        assert_eq!(even.kappa_param(3).unwrap(), 1);
        assert_eq!(even.kappa_param(4).unwrap(), 2);
        assert_eq!(even.kappa_param(7), Err(Error::UnknownRoot(7)));
    }

    #[test]
    fn group_action_on_variables() {
        let cfg = DihedralConfig::new(4, Signature::Positive).unwrap();
        let n = cfg.order();
        let one = || KScalar::from_int(n, 1);
        let s0 = cfg.reflection(0).unwrap();
        let x3 = SpinorPoly::basis(Monomial::var(3), Blade::SCALAR, n);
        assert_eq!(s0.apply(&x3), x3.neg());
        let x1e1 = SpinorPoly::term(Monomial::var(1), CliffordElt::blade(Blade::E1, one()));
        assert_eq!(s0.apply(&x1e1), x1e1);
        let sm = cfg.reflection(4).unwrap();
        let x2 = SpinorPoly::basis(Monomial::var(2), Blade::SCALAR, n);
        assert_eq!(sm.apply(&x2), x2.neg());
        // involution on a degree-3 polynomial
        let p = SpinorPoly::basis(Monomial::new(1, 2, 0), Blade::E12, n);
        for k in 0..=4 {
            let s = cfg.reflection(k).unwrap();
            assert_eq!(s.apply(&s.apply(&p)), p);
        }
        // composite acts as a homomorphism: (ab) f = a (b f)
        let a = cfg.reflection(1).unwrap();
        let b = cfg.reflection(4).unwrap();
        assert_eq!(a.compose(b).apply(&p), a.apply(&b.apply(&p)));
    }
}
