//! Exact arithmetic in the cyclotomic field Q(zeta_n).
//!
//! Elements are stored on the power basis `1, z, ..., z^(phi(n)-1)` and always
//! reduced modulo the n-th cyclotomic polynomial, so two elements are equal
//! exactly when their coefficient vectors are equal.
//!
//! Field data (the minimal polynomial and the reduced powers of `z`) is built
//! once per order and shared for the life of the process.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use num_integer::Integer;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rational::Rational;

type Coeffs = SmallVec<[Rational; 8]>;

/// Shared per-order data for Q(zeta_n).
pub struct CyclotomicField {
    order: u32,
    degree: usize,
    /// `Phi_n` coefficients, lowest degree first, monic.
    min_poly: Vec<i64>,
    /// `z^k` reduced onto the power basis for `k in 0..n`.
    powers: Vec<Coeffs>,
}

impl CyclotomicField {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Euler phi of the order: the dimension over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn min_poly(&self) -> &[i64] {
        &self.min_poly
    }

    fn build(order: u32) -> Self {
        let min_poly = cyclotomic_polynomial(order);
        let degree = min_poly.len() - 1;
        let n = order as usize;
        let mut powers: Vec<Coeffs> = Vec::with_capacity(n.max(2 * degree));
        let mut cur: Coeffs = SmallVec::from_elem(Rational::zero(), degree);
        cur[0] = Rational::one();
        for _ in 0..n.max(2 * degree) {
            powers.push(cur.clone());
            // multiply by z: shift up, then fold z^degree back with -Phi_n
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = Rational::zero();
            if !top.is_zero() {
                for (i, c) in cur.iter_mut().enumerate() {
                    let p = min_poly[i];
                    if p != 0 {
                        *c = &*c - &(&top * &Rational::from_int(p));
                    }
                }
            }
        }
        CyclotomicField {
            order,
            degree,
            min_poly,
            powers,
        }
    }
}

/// Integer coefficients of the n-th cyclotomic polynomial, lowest first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic order must be positive");
    // x^n - 1 divided by Phi_d for every proper divisor d of n
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            poly = div_monic(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &b) in den.iter().enumerate() {
                rem[k + i] -= c * b;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Order of the coefficient field used for dihedral order `m`: `lcm(4, 2m)`.
pub fn field_order_for(m: u32) -> u32 {
    4u32.lcm(&(2 * m))
}

/// The process-wide field descriptor for `Q(zeta_order)`.
pub fn field(order: u32) -> &'static CyclotomicField {
    static REGISTRY: OnceLock<Mutex<HashMap<u32, &'static CyclotomicField>>> = OnceLock::new();
    let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = reg.lock().expect("cyclotomic registry poisoned");
    guard
        .entry(order)
        .or_insert_with(|| Box::leak(Box::new(CyclotomicField::build(order))))
}

#[derive(Clone)]
pub struct Cyclotomic {
    field: &'static CyclotomicField,
    coeffs: Coeffs,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        let f = field(order);
        Cyclotomic {
            field: f,
            coeffs: SmallVec::from_elem(Rational::zero(), f.degree),
        }
    }

    pub fn from_rational(order: u32, q: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = q;
        z
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_rational(order, Rational::from_int(n))
    }

    /// `zeta_order^k` for any integer `k`.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let f = field(order);
        let idx = k.rem_euclid(order as i64) as usize;
        Cyclotomic {
            field: f,
            coeffs: f.powers[idx].clone(),
        }
    }

    /// The imaginary unit `zeta^(n/4)`. Requires `4 | order`.
    pub fn imag_unit(order: u32) -> Self {
        assert!(order % 4 == 0, "Q(zeta_{order}) does not contain i in this embedding");
        Self::zeta_pow(order, order as i64 / 4)
    }

    /// Build from power-basis coefficients, reducing if more than `phi(n)` are given.
    pub fn from_coeffs(order: u32, coeffs: &[Rational]) -> Self {
        let f = field(order);
        let mut out = Self::zero(order);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < f.degree {
                out.coeffs[k] = &out.coeffs[k] + c;
            } else {
                let row = &f.powers[k % f.order as usize];
                for (o, r) in out.coeffs.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *o = &*o + &(c * r);
                    }
                }
            }
        }
        out
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn field(&self) -> &'static CyclotomicField {
        self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// Some(q) when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field.order != other.field.order {
            Err(Error::OrderMismatch(self.field.order, other.field.order))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        Cyclotomic {
            field: self.field,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub(crate) fn add_assign_ref(&mut self, other: &Self) {
        debug_assert_eq!(self.field.order, other.field.order);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a = &*a + b;
            }
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let f = self.field;
        let d = f.degree;
        if let Some(q) = self.as_rational() {
            return other.scale(q);
        }
        if let Some(q) = other.as_rational() {
            return self.scale(q);
        }
        let mut wide: SmallVec<[Rational; 16]> = SmallVec::from_elem(Rational::zero(), 2 * d - 1);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] = &wide[i + j] + &(a * b);
                }
            }
        }
        let mut coeffs: Coeffs = wide[..d].iter().cloned().collect();
        for (k, c) in wide.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in coeffs.iter_mut().zip(&f.powers[k]) {
                if !r.is_zero() {
                    *o = &*o + &(c * r);
                }
            }
        }
        Cyclotomic { field: f, coeffs }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_one() {
            return self.clone();
        }
        Cyclotomic {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    ///
    /// Solves `self * y = 1` as a linear system over Q on the power basis.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return q.recip().map(|r| Self::from_rational(self.order(), r));
        }
        let d = self.field.degree;
        let order = self.order();
        // column j = self * z^j
        let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::zero(); d + 1]; d];
        for j in 0..d {
            let col = self.mul_unchecked(&Self::zeta_pow(order, j as i64));
            for (i, c) in col.coeffs.iter().enumerate() {
                rows[i][j] = c.clone();
            }
        }
        rows[0][d] = Rational::one();
        for col in 0..d {
            let piv = (col..d).find(|&r| !rows[r][col].is_zero())?;
            rows.swap(col, piv);
            let inv = rows[col][col].recip()?;
            for x in rows[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..d {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for c in col..=d {
                        let v = &rows[col][c] * &f;
                        rows[r][c] = &rows[r][c] - &v;
                    }
                }
            }
        }
        let coeffs: Coeffs = rows.into_iter().map(|r| r[d].clone()).collect();
        Some(Cyclotomic {
            field: self.field,
            coeffs,
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Image under `zeta_n -> exp(2 pi i / n)`.
    pub fn embed(&self) -> Complex64 {
        let n = self.field.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| Complex64::from_polar(c.to_f64(), 2.0 * std::f64::consts::PI * k as f64 / n))
            .sum()
    }
}

impl Add<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    /// Panics on order mismatch; see [`Cyclotomic::checked_add`].
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_add(rhs).unwrap()
    }
}

impl Sub<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_sub(rhs).unwrap()
    }
}

impl Mul<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_mul(rhs).unwrap()
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    /// `a + b*zeta12 + c*zeta12^2 ...`, zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.field.order;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let z = match k {
                0 => String::new(),
                1 => format!("zeta{n}"),
                _ => format!("zeta{n}^{k}"),
            };
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => f.write_str(&z)?,
                _ => write!(f, "{mag}*{z}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic<{}>({})", self.field.order, self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trig {
    Sin,
    Cos,
}

/// Exact `sin` or `cos` of `j*pi/m` (or `2*j*pi/m` when `double`) in
/// `Q(zeta_n)`, `n = lcm(4, 2m)`.
pub fn trig_value(kind: Trig, j: i64, m: u32, double: bool) -> Cyclotomic {
    let n = field_order_for(m);
    // angle = 2*pi*k/n
    let step = if double { n / m } else { n / (2 * m) };
    let k = j * step as i64;
    let zp = Cyclotomic::zeta_pow(n, k);
    let zm = Cyclotomic::zeta_pow(n, -k);
    let half = Rational::new(1, 2);
    match kind {
        Trig::Cos => (&zp + &zm).scale(&half),
        Trig::Sin => {
            // (z^k - z^-k) / (2i) = -(i/2)(z^k - z^-k)
            let i = Cyclotomic::imag_unit(n);
            (&(&zp - &zm) * &i).scale(&Rational::new(-1, 2))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(20).len() - 1, 8);
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let z = Cyclotomic::zeta_pow(4, 1);
        assert_eq!(&z * &z, Cyclotomic::from_int(4, -1));
    }

    #[test]
    fn additive_identity() {
        let z = Cyclotomic::zeta_pow(8, 1);
        assert_eq!(&z + &Cyclotomic::zero(8), z);
    }

    #[test]
    fn zeta12_fourth_power_is_primitive_cube_root() {
        let z2 = Cyclotomic::zeta_pow(12, 2);
        let p = &z2 * &z2;
        assert_eq!(p, Cyclotomic::zeta_pow(12, 4));
        let want = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!(close(p.embed(), want, 1e-12));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = Cyclotomic::one(8);
        let b = Cyclotomic::one(12);
        assert_eq!(a.checked_mul(&b), Err(Error::OrderMismatch(8, 12)));
        assert_eq!(a.checked_add(&b), Err(Error::OrderMismatch(8, 12)));
    }

    #[test]
    fn trig_exact_values() {
        let m = 4;
        assert!(trig_value(Trig::Cos, m as i64, m, true).is_one());
        assert!(trig_value(Trig::Sin, m as i64, m, false).is_zero());
        let s = trig_value(Trig::Sin, 1, 4, false);
        assert!((s.embed().re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(&s * &s, Cyclotomic::from_rational(8, Rational::new(1, 2)));
        let c72 = trig_value(Trig::Cos, 1, 5, true);
        assert!((c72.embed().re - 72f64.to_radians().cos()).abs() < 1e-12);
        assert!(c72.embed().im.abs() < 1e-12);
    }

    #[test]
    fn pythagoras_exact() {
        for m in 3..=12u32 {
            let n = field_order_for(m);
            for j in 0..=2 * m as i64 {
                for double in [false, true] {
                    let s = trig_value(Trig::Sin, j, m, double);
                    let c = trig_value(Trig::Cos, j, m, double);
                    assert!((&(&s * &s) + &(&c * &c)).is_one(), "m={m} j={j}");
                    let angle = j as f64 * std::f64::consts::PI / m as f64 * if double { 2.0 } else { 1.0 };
                    assert!(close(s.embed(), Complex64::new(angle.sin(), 0.0), 1e-12));
                    assert_eq!(s.order(), n);
                }
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        for m in [3u32, 4, 5, 6, 7] {
            let c = trig_value(Trig::Cos, 1, m, false);
            let inv = c.inverse().unwrap();
            assert!((&c * &inv).is_one());
        }
        assert!(Cyclotomic::zero(12).inverse().is_none());
    }

    fn element(order: u32) -> impl Strategy<Value = Cyclotomic> {
        let d = field(order).degree();
        proptest::collection::vec((-20i64..20, 1i64..6), d)
            .prop_map(move |v| {
                let cs: Vec<Rational> = v.into_iter().map(|(n, d)| Rational::new(n, d)).collect();
                Cyclotomic::from_coeffs(order, &cs)
            })
    }

    proptest! {
        #[test]
        fn embedding_is_a_ring_homomorphism(a in element(20), b in element(20)) {
            prop_assert!(close((&a * &b).embed(), a.embed() * b.embed(), 1e-9));
            prop_assert!(close((&a + &b).embed(), a.embed() + b.embed(), 1e-9));
        }

        #[test]
        fn canonical_equality_across_expression_orders(a in element(12), b in element(12), c in element(12)) {
            let left = &(&a * &b) + &(&a * &c);
            let right = &a * &(&c + &b);
            prop_assert_eq!(left, right);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn reduction_of_long_vectors(raw in proptest::collection::vec(-5i64..5, 0..30)) {
            let cs: Vec<Rational> = raw.iter().map(|&x| Rational::from_int(x)).collect();
            let x = Cyclotomic::from_coeffs(12, &cs);
            let want: Complex64 = raw.iter().enumerate()
                .map(|(k, &c)| Complex64::from_polar(c as f64, 2.0 * std::f64::consts::PI * k as f64 / 12.0))
                .sum();
            prop_assert!(close(x.embed(), want, 1e-9));
        }
    }
}
