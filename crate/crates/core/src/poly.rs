//! Sparse polynomials in `x1, x2, x3` over an arbitrary coefficient module.
//!
//! [`SpinorPoly`] (Clifford coefficients) is the space every operator acts on;
//! [`ScalarPoly`] (field coefficients) is used for substitutions and divided
//! differences.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::clifford::{Blade, CliffordElt};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::kscalar::KScalar;
use crate::rational::Rational;

/// Exponent triple of `x1^a x2^b x3^c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(a: u16, b: u16, c: u16) -> Self {
        Monomial([a, b, c])
    }

    /// `x_axis`, `axis` in 1..=3.
    pub fn var(axis: usize) -> Self {
        let mut e = [0; 3];
        e[axis - 1] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, axis: usize) -> u16 {
        self.0[axis - 1]
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial([self.0[0] + other.0[0], self.0[1] + other.0[1], self.0[2] + other.0[2]])
    }

    pub fn shifted(&self, axis: usize, up: bool) -> Option<Self> {
        let mut e = self.0;
        let slot = &mut e[axis - 1];
        if up {
            *slot += 1;
        } else {
            *slot = slot.checked_sub(1)?;
        }
        Some(Monomial(e))
    }

    /// All monomials of total degree `d`, in graded-lex order (`x1^d` first).
    pub fn of_degree(d: u32) -> Vec<Monomial> {
        let d = d as u16;
        let mut out = Vec::new();
        for a in (0..=d).rev() {
            for b in (0..=d - a).rev() {
                out.push(Monomial([a, b, d - a - b]));
            }
        }
        out
    }

    /// All monomials of degree at most `d`.
    pub fn up_to_degree(d: u32) -> Vec<Monomial> {
        (0..=d).flat_map(Monomial::of_degree).collect()
    }
}

impl Ord for Monomial {
    /// Graded, then lexicographic with `x1 > x2 > x3`, so `x1^d` leads each degree.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coefficients a polynomial can carry: a module over the cyclotomic field.
pub trait Coefficient: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn scaled(&self, c: &Cyclotomic) -> Self;
    fn scaled_rational(&self, q: &Rational) -> Self;
    fn negated(&self) -> Self;
}

impl Coefficient for Cyclotomic {
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        self.add_assign_ref(other);
    }
    fn scaled(&self, c: &Cyclotomic) -> Self {
        self * c
    }
    fn scaled_rational(&self, q: &Rational) -> Self {
        self.scale(q)
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Coefficient for KScalar {
    fn is_zero(&self) -> bool {
        KScalar::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self = &*self + other;
    }
    fn scaled(&self, c: &Cyclotomic) -> Self {
        self.scale(c)
    }
    fn scaled_rational(&self, q: &Rational) -> Self {
        self.scale_rational(q)
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Coefficient for CliffordElt {
    fn is_zero(&self) -> bool {
        CliffordElt::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        CliffordElt::add_assign(self, other);
    }
    fn scaled(&self, c: &Cyclotomic) -> Self {
        self.map_coords(|k| k.scale(c))
    }
    fn scaled_rational(&self, q: &Rational) -> Self {
        self.map_coords(|k| k.scale_rational(q))
    }
    fn negated(&self) -> Self {
        -self
    }
}

/// Sparse map from monomials to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    terms: BTreeMap<Monomial, C>,
}

pub type SpinorPoly = Poly<CliffordElt>;
pub type ScalarPoly = Poly<Cyclotomic>;

impl<C> Default for Poly<C> {
    fn default() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coefficient> Poly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                v.add_assign(&c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(*m, c.negated());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negated())
    }

    pub fn scaled(&self, c: &Cyclotomic) -> Self {
        self.map(|x| x.scaled(c))
    }

    /// Apply `f` to every coefficient, dropping zeros.
    pub fn map(&self, mut f: impl FnMut(&C) -> C) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Poly { terms }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Multiply by `x_axis`.
    pub fn mul_coordinate(&self, axis: usize) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.shifted(axis, true).unwrap(), c.clone()))
                .collect(),
        }
    }

    /// Ordinary partial derivative in `x_axis`.
    pub fn partial(&self, axis: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(axis);
            if e == 0 {
                continue;
            }
            let k = Rational::from_int(e as i64);
            out.add_term(m.shifted(axis, false).unwrap(), c.scaled_rational(&k));
        }
        out
    }

    /// `f(M x)`: substitute `x_i -> sum_j M[i][j] x_j`.
    pub fn substitute(&self, matrix: &[[Cyclotomic; 3]; 3]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let image = substitute_monomial(m, matrix);
            for (mm, k) in image.terms() {
                out.add_term(*mm, c.scaled(k));
            }
        }
        out
    }

    /// Exact quotient by the linear form `l(x) = sum_i alpha_i x_i`.
    ///
    /// Eliminates the pivot variable (the highest-index axis with a nonzero
    /// component) from the top down; anything left without that variable is
    /// a genuine remainder and reported as `NonZeroRemainder { root }`.
    pub fn divide_by_linear_form(&self, alpha: &[Cyclotomic; 3], root: usize) -> Result<Self> {
        let pivot = (1..=3)
            .rev()
            .find(|&a| !alpha[a - 1].is_zero())
            .expect("linear form must be nonzero");
        let inv = alpha[pivot - 1].inverse().expect("nonzero pivot");
        // keyed by pivot exponent so the highest one is always processed next
        let mut work: BTreeMap<(u16, Monomial), C> =
            self.terms.iter().map(|(m, c)| ((m.exp(pivot), *m), c.clone())).collect();
        let mut quot = Self::zero();
        while let Some(((e, m), c)) = work.pop_last() {
            if e == 0 {
                return Err(Error::NonZeroRemainder { root });
            }
            let qm = m.shifted(pivot, false).unwrap();
            let qc = c.scaled(&inv);
            for axis in (1..=3).filter(|&a| a != pivot && !alpha[a - 1].is_zero()) {
                let tm = qm.shifted(axis, true).unwrap();
                let tc = qc.scaled(&alpha[axis - 1]).negated();
                let key = (tm.exp(pivot), tm);
                match work.get_mut(&key) {
                    Some(v) => {
                        v.add_assign(&tc);
                        if v.is_zero() {
                            work.remove(&key);
                        }
                    }
                    None => {
                        work.insert(key, tc);
                    }
                }
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }
}

/// `prod_i (sum_j M[i][j] x_j)^{e_i}` as a scalar polynomial.
pub fn substitute_monomial(m: &Monomial, matrix: &[[Cyclotomic; 3]; 3]) -> ScalarPoly {
    let order = matrix[0][0].order();
    let mut acc = ScalarPoly::term(Monomial::ONE, Cyclotomic::one(order));
    for axis in 1..=3 {
        let row = &matrix[axis - 1];
        for _ in 0..m.exp(axis) {
            let mut next = ScalarPoly::zero();
            for (mm, c) in acc.terms() {
                for (j, mij) in row.iter().enumerate() {
                    if !mij.is_zero() {
                        next.add_term(mm.shifted(j + 1, true).unwrap(), c * mij);
                    }
                }
            }
            acc = next;
        }
    }
    acc
}

impl SpinorPoly {
    /// `x^m (x) e_S` with unit coefficient.
    pub fn basis(m: Monomial, blade: Blade, order: u32) -> Self {
        Self::term(m, CliffordElt::blade(blade, KScalar::from_int(order, 1)))
    }

    /// Multiply every coefficient by a scalar from the kappa ring.
    pub fn scale_kscalar(&self, s: &KScalar) -> Self {
        self.map(|c| c.scale(s))
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "[{m}]({c})")?;
        }
        Ok(())
    }
}

impl<C: Coefficient + fmt::Display> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: u32 = 12;

    fn c(n: i64) -> Cyclotomic {
        Cyclotomic::from_int(N, n)
    }

    fn e3() -> [Cyclotomic; 3] {
        [c(0), c(0), c(1)]
    }

    #[test]
    fn graded_lex_order() {
        let d2 = Monomial::of_degree(2);
        let names: Vec<String> = d2.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["x1^2", "x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2"]);
        let mut sorted = d2.clone();
        sorted.sort();
        assert_eq!(sorted, d2);
        assert!(Monomial::ONE < Monomial::var(1));
        assert!(Monomial::var(3) < Monomial::new(2, 0, 0));
        assert_eq!(Monomial::up_to_degree(3).len(), 20);
    }

    #[test]
    fn monomial_division() {
        let f = ScalarPoly::term(Monomial::new(0, 0, 2), c(1));
        let q = f.divide_by_linear_form(&e3(), 0).unwrap();
        assert_eq!(q, ScalarPoly::term(Monomial::new(0, 0, 1), c(1)));

        let f = ScalarPoly::term(Monomial::new(1, 0, 1), c(2));
        let q = f.divide_by_linear_form(&e3(), 0).unwrap();
        assert_eq!(q, ScalarPoly::term(Monomial::new(1, 0, 0), c(2)));

        let f = ScalarPoly::term(Monomial::var(1), c(1));
        assert_eq!(f.divide_by_linear_form(&e3(), 0), Err(Error::NonZeroRemainder { root: 0 }));
    }

    #[test]
    fn division_by_mixed_form() {
        // (x1 + 2 x2)(x1 - x2 + x3) / (x1 + 2 x2)
        let l = [c(1), c(2), c(0)];
        let mut a = ScalarPoly::zero();
        a.add_term(Monomial::var(1), c(1));
        a.add_term(Monomial::var(2), c(2));
        let mut b = ScalarPoly::zero();
        b.add_term(Monomial::var(1), c(1));
        b.add_term(Monomial::var(2), c(-1));
        b.add_term(Monomial::var(3), c(1));
        let mut prod = ScalarPoly::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                prod.add_term(ma.mul(mb), ca * cb);
            }
        }
        assert_eq!(prod.divide_by_linear_form(&l, 1).unwrap(), b);
    }

    #[test]
    fn partial_and_shift() {
        let p = ScalarPoly::term(Monomial::new(3, 1, 0), Cyclotomic::from_rational(N, Rational::new(1, 2)));
        let d = p.partial(1);
        assert_eq!(d, ScalarPoly::term(Monomial::new(2, 1, 0), Cyclotomic::from_rational(N, Rational::new(3, 2))));
        assert!(p.partial(3).is_zero());
        assert_eq!(p.mul_coordinate(3).terms().next().unwrap().0, &Monomial::new(3, 1, 1));
    }

    #[test]
    fn substitution_swaps_variables() {
        let swap = [[c(0), c(1), c(0)], [c(1), c(0), c(0)], [c(0), c(0), c(1)]];
        let p = substitute_monomial(&Monomial::new(2, 0, 1), &swap);
        assert_eq!(p, ScalarPoly::term(Monomial::new(0, 2, 1), c(1)));
    }
}
