//! Polynomials in the multiplicity parameters with cyclotomic coefficients.
//!
//! This is the scalar ring for all symbolic work: every operator identity is
//! checked with the kappa values left as indeterminates.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Maximum number of orbit parameters (kappa0, kappa1, kappa2).
pub const MAX_PARAMS: usize = 3;

/// Exponent vector over `(kappa0, kappa1, kappa2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct KappaMonomial(pub [u8; MAX_PARAMS]);

impl KappaMonomial {
    pub const ONE: KappaMonomial = KappaMonomial([0; MAX_PARAMS]);

    pub fn var(idx: usize) -> Self {
        let mut e = [0; MAX_PARAMS];
        e[idx] = 1;
        KappaMonomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a = a.checked_add(b).expect("kappa exponent overflow");
        }
        KappaMonomial(e)
    }

    /// Highest parameter index with a nonzero exponent, plus one.
    fn used_arity(&self) -> u8 {
        self.0.iter().rposition(|&e| e > 0).map_or(0, |i| i as u8 + 1)
    }
}

impl Ord for KappaMonomial {
    /// Graded, then kappa0 before kappa1 before kappa2.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for KappaMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KappaMonomial {
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
            write!(f, "kappa{i}")?;
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

/// Sparse polynomial in the kappa parameters.
///
/// `arity` is the number of parameters of the ring the value was built in;
/// `0` marks a constant that embeds into every arity.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct KScalar {
    arity: u8,
    terms: Vec<(KappaMonomial, Cyclotomic)>,
}

impl KScalar {
    pub fn zero() -> Self {
        KScalar::default()
    }

    pub fn constant(c: Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        KScalar {
            arity: 0,
            terms: vec![(KappaMonomial::ONE, c)],
        }
    }

    pub fn rational(order: u32, q: Rational) -> Self {
        Self::constant(Cyclotomic::from_rational(order, q))
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::rational(order, Rational::from_int(n))
    }

    /// The indeterminate `kappa{idx}` in a ring with `arity` parameters.
    pub fn var(idx: usize, arity: u8, order: u32) -> Self {
        assert!(idx < arity as usize && arity as usize <= MAX_PARAMS);
        KScalar {
            arity,
            terms: vec![(KappaMonomial::var(idx), Cyclotomic::one(order))],
        }
    }

    pub fn from_terms(arity: u8, terms: impl IntoIterator<Item = (KappaMonomial, Cyclotomic)>) -> Self {
        let mut map: BTreeMap<KappaMonomial, Cyclotomic> = BTreeMap::new();
        for (k, c) in terms {
            assert!(k.used_arity() <= arity, "monomial {k} outside arity {arity}");
            match map.get_mut(&k) {
                Some(v) => v.add_assign_ref(&c),
                None => {
                    map.insert(k, c);
                }
            }
        }
        let terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let arity = if terms.iter().all(|(k, _)| *k == KappaMonomial::ONE) {
            0
        } else {
            arity
        };
        KScalar { arity, terms }
    }

    pub fn arity(&self) -> u8 {
        self.arity
    }

    pub fn terms(&self) -> &[(KappaMonomial, Cyclotomic)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant term when the value has no kappa dependence.
    pub fn as_constant(&self) -> Option<Cyclotomic> {
        match self.terms.as_slice() {
            [] => None,
            [(k, c)] if *k == KappaMonomial::ONE => Some(c.clone()),
            _ => None,
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(k, _)| k.degree()).max().unwrap_or(0)
    }

    fn joint_arity(&self, other: &Self) -> Result<u8> {
        match (self.arity, other.arity) {
            (0, b) => Ok(b),
            (a, 0) => Ok(a),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::ArityMismatch(a, b)),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let arity = self.joint_arity(other)?;
        Ok(self.merge(other, arity, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let arity = self.joint_arity(other)?;
        Ok(self.merge(other, arity, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let arity = self.joint_arity(other)?;
        Ok(self.mul_unchecked(other, arity))
    }

    fn merge(&self, other: &Self, arity: u8, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::normalized(arity, out)
    }

    fn normalized(arity: u8, terms: Vec<(KappaMonomial, Cyclotomic)>) -> Self {
        let arity = if terms.iter().all(|(k, _)| *k == KappaMonomial::ONE) {
            0
        } else {
            arity
        };
        KScalar { arity, terms }
    }

    fn mul_unchecked(&self, other: &Self, arity: u8) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let [(k, c)] = self.terms.as_slice() {
            if *k == KappaMonomial::ONE {
                return other.scale(c);
            }
        }
        if let [(k, c)] = other.terms.as_slice() {
            if *k == KappaMonomial::ONE {
                return self.scale(c);
            }
        }
        let mut prods: Vec<(KappaMonomial, Cyclotomic)> =
            Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                prods.push((ka.mul(kb), ca * cb));
            }
        }
        prods.sort_by(|x, y| x.0.cmp(&y.0));
        let mut out: Vec<(KappaMonomial, Cyclotomic)> = Vec::with_capacity(prods.len());
        for (k, c) in prods {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => lc.add_assign_ref(&c),
                _ => out.push((k, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self::normalized(arity, out)
    }

    /// Multiply by a constant field element.
    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, x)| (*k, x * c))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        KScalar {
            arity: self.arity,
            terms,
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        KScalar {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, x)| (*k, x.scale(q))).collect(),
        }
    }

    /// Substitute rational values for the parameters.
    ///
    /// `values[i]` is the value of `kappa{i}`; a parameter that occurs in the
    /// polynomial with no value is an error. `order` fixes the field of the
    /// result when the polynomial is zero.
    pub fn specialize(&self, values: &[Option<Rational>], order: u32) -> Result<Cyclotomic> {
        let mut acc = Cyclotomic::zero(order);
        for (k, c) in &self.terms {
            let mut w = Rational::one();
            for (i, &e) in k.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = values
                    .get(i)
                    .and_then(|v| v.as_ref())
                    .ok_or(Error::UnboundParameter(i))?;
                for _ in 0..e {
                    w = &w * v;
                }
            }
            acc = acc.checked_add(&c.scale(&w))?;
        }
        Ok(acc)
    }

    /// Specialize to a `KScalar` constant (keeps the value in the scalar ring).
    pub fn specialize_scalar(&self, values: &[Option<Rational>], order: u32) -> Result<Self> {
        Ok(Self::constant(self.specialize(values, order)?))
    }
}

impl Add<&KScalar> for &KScalar {
    type Output = KScalar;
    /// Panics on arity mismatch; see [`KScalar::checked_add`].
    fn add(self, rhs: &KScalar) -> KScalar {
        self.checked_add(rhs).unwrap()
    }
}

impl Sub<&KScalar> for &KScalar {
    type Output = KScalar;
    fn sub(self, rhs: &KScalar) -> KScalar {
        self.checked_sub(rhs).unwrap()
    }
}

impl Mul<&KScalar> for &KScalar {
    type Output = KScalar;
    fn mul(self, rhs: &KScalar) -> KScalar {
        self.checked_mul(rhs).unwrap()
    }
}

impl Neg for &KScalar {
    type Output = KScalar;
    fn neg(self) -> KScalar {
        KScalar {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for KScalar {
    type Output = KScalar;
    fn neg(self) -> KScalar {
        -&self
    }
}

impl fmt::Display for KScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            let (neg, body) = match c.as_rational() {
                Some(q) => (q.is_negative(), q.abs().to_string()),
                None => (false, format!("({c})")),
            };
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if *k == KappaMonomial::ONE {
                if self.terms.len() == 1 && c.as_rational().is_none() {
                    write!(f, "{c}")?;
                } else {
                    f.write_str(&body)?;
                }
            } else if body == "1" {
                write!(f, "{k}")?;
            } else {
                write!(f, "{body}*{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for KScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KScalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{field_order_for, trig_value, Trig};
    use proptest::prelude::*;

    const N: u32 = 12;

    fn k(i: usize) -> KScalar {
        KScalar::var(i, 2, N)
    }

    #[test]
    fn product_of_parameters() {
        let p = &k(0) * &k(1);
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[0].0, KappaMonomial([1, 1, 0]));
        assert_eq!(p.to_string(), "kappa0*kappa1");
    }

    #[test]
    fn difference_of_squares() {
        let one = KScalar::from_int(N, 1);
        let p = &(&k(0) + &one) * &(&k(0) - &one);
        let want = &(&k(0) * &k(0)) - &one;
        assert_eq!(p, want);
        assert_eq!(p.to_string(), "-1 + kappa0^2");
    }

    #[test]
    fn trig_sum_gives_m_kappa1_for_odd_m() {
        for m in [3u32, 5, 7] {
            let n = field_order_for(m);
            let mut acc = KScalar::zero();
            for j in 1..=m as i64 {
                let s = trig_value(Trig::Sin, j, m, false);
                let term = KScalar::constant((&s * &s).scale(&Rational::from_int(2)));
                acc = &acc + &term;
            }
            let got = &acc * &KScalar::var(1, 2, n);
            assert_eq!(got, &KScalar::from_int(n, m as i64) * &KScalar::var(1, 2, n));
        }
    }

    #[test]
    fn arity_mismatch() {
        let a = KScalar::var(0, 2, N);
        let b = KScalar::var(0, 3, N);
        assert_eq!(a.checked_add(&b), Err(Error::ArityMismatch(2, 3)));
        // constants embed into any arity
        assert!(a.checked_mul(&KScalar::from_int(N, 3)).is_ok());
    }

    #[test]
    fn specialization() {
        let two = KScalar::from_int(N, 2);
        let s = &k(0) + &two;
        let v = s.specialize(&[Some(Rational::new(1, 2)), None], N).unwrap();
        assert_eq!(v, Cyclotomic::from_rational(N, Rational::new(5, 2)));

        let p = &k(0) * &k(1);
        let v = p.specialize(&[Some(Rational::zero()), Some(Rational::from_int(7))], N).unwrap();
        assert!(v.is_zero());

        let c = KScalar::constant(trig_value(Trig::Cos, 1, 3, true));
        let v = (&k(1) * &c).specialize(&[None, Some(Rational::from_int(3))], N).unwrap();
        assert_eq!(v, Cyclotomic::from_rational(N, Rational::new(-3, 2)));

        assert_eq!(p.specialize(&[Some(Rational::one())], N), Err(Error::UnboundParameter(1)));
    }

    fn scalar() -> impl Strategy<Value = KScalar> {
        proptest::collection::vec(((0u8..3, 0u8..3), (-6i64..6, 1i64..4), 0i64..12), 0..5).prop_map(|ts| {
            KScalar::from_terms(
                2,
                ts.into_iter().map(|((a, b), (n, d), z)| {
                    (
                        KappaMonomial([a, b, 0]),
                        Cyclotomic::zeta_pow(N, z).scale(&Rational::new(n, d)),
                    )
                }),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert!(a.terms().iter().all(|(_, c)| !c.is_zero()));
        }
    }
}
