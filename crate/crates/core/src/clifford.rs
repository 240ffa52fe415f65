//! The Clifford algebra on three generators with `e_j e_k + e_k e_j = 2 eps delta_jk`.
//!
//! The signature is not stored in elements. It lives in a [`CliffordAlgebra`]
//! context, and all products go through that context.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::kscalar::KScalar;

/// Sign of the generator squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Signature {
    Positive,
    Negative,
}

impl Signature {
    pub fn from_sign(s: i64) -> Option<Self> {
        match s {
            1 => Some(Signature::Positive),
            -1 => Some(Signature::Negative),
            _ => None,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Signature::Positive => 1,
            Signature::Negative => -1,
        }
    }

    /// `eps^k`
    pub fn pow(self, k: u32) -> i64 {
        if k % 2 == 0 {
            1
        } else {
            self.value()
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Signature::Positive => "+1",
            Signature::Negative => "-1",
        })
    }
}

/// Basis blade as a bitmask: bit 0 is `e1`, bit 1 `e2`, bit 2 `e3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Blade(u8);

impl Blade {
    pub const SCALAR: Blade = Blade(0);
    pub const E1: Blade = Blade(1);
    pub const E2: Blade = Blade(2);
    pub const E3: Blade = Blade(4);
    pub const E12: Blade = Blade(3);
    pub const E13: Blade = Blade(5);
    pub const E23: Blade = Blade(6);
    pub const E123: Blade = Blade(7);

    /// All blades in canonical order: grade first, then ascending indices.
    pub const CANONICAL: [Blade; 8] = [
        Blade::SCALAR,
        Blade::E1,
        Blade::E2,
        Blade::E3,
        Blade::E12,
        Blade::E13,
        Blade::E23,
        Blade::E123,
    ];

    pub fn from_mask(mask: u8) -> Self {
        assert!(mask < 8);
        Blade(mask)
    }

    /// Generator `e_axis`, `axis` in 1..=3.
    pub fn generator(axis: usize) -> Self {
        assert!((1..=3).contains(&axis));
        Blade(1 << (axis - 1))
    }

    /// Blade from a strictly ascending list of axes, `None` otherwise.
    pub fn from_axes(axes: &[usize]) -> Option<Self> {
        let mut mask = 0u8;
        let mut last = 0;
        for &a in axes {
            if !(1..=3).contains(&a) || a <= last {
                return None;
            }
            last = a;
            mask |= 1 << (a - 1);
        }
        Some(Blade(mask))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Position in [`Blade::CANONICAL`].
    pub fn canonical_position(self) -> usize {
        Blade::CANONICAL.iter().position(|&b| b == self).expect("all eight blades are listed")
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn axes(self) -> impl Iterator<Item = usize> {
        (1..=3).filter(move |a| self.0 & (1 << (a - 1)) != 0)
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        f.write_str("e")?;
        for a in self.axes() {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Product of two basis blades: `(sign, blade)` with `sign = (-1)^swaps * eps^|a & b|`.
pub fn blade_mul(a: Blade, b: Blade, sig: Signature) -> (i64, Blade) {
    // Moving each generator of b left past the larger generators of a.
    let mut swaps = 0;
    for j in 0..3 {
        if b.0 & (1 << j) != 0 {
            swaps += (a.0 >> (j + 1)).count_ones();
        }
    }
    let contractions = (a.0 & b.0).count_ones();
    let sign = if swaps % 2 == 0 { 1 } else { -1 } * sig.pow(contractions);
    (sign, Blade(a.0 ^ b.0))
}

/// Element of the Clifford algebra: one scalar per blade, indexed by mask.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CliffordElt {
    coords: [KScalar; 8],
}

impl CliffordElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(s: KScalar) -> Self {
        Self::blade(Blade::SCALAR, s)
    }

    pub fn blade(b: Blade, s: KScalar) -> Self {
        let mut e = Self::zero();
        e.coords[b.index()] = s;
        e
    }

    /// `v[0] e1 + v[1] e2 + v[2] e3`.
    pub fn from_vector(v: [KScalar; 3]) -> Self {
        let mut e = Self::zero();
        for (axis, c) in v.into_iter().enumerate() {
            e.coords[Blade::generator(axis + 1).index()] = c;
        }
        e
    }

    pub fn coord(&self, b: Blade) -> &KScalar {
        &self.coords[b.index()]
    }

    pub fn coord_mut(&mut self, b: Blade) -> &mut KScalar {
        &mut self.coords[b.index()]
    }

    pub fn coords(&self) -> &[KScalar; 8] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(KScalar::is_zero)
    }

    /// Nonzero components in canonical blade order.
    pub fn components(&self) -> impl Iterator<Item = (Blade, &KScalar)> {
        Blade::CANONICAL
            .into_iter()
            .map(move |b| (b, &self.coords[b.index()]))
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                *a = &*a + b;
            }
        }
    }

    pub fn scale(&self, s: &KScalar) -> Self {
        let mut out = Self::zero();
        if s.is_zero() {
            return out;
        }
        for (o, c) in out.coords.iter_mut().zip(&self.coords) {
            if !c.is_zero() {
                *o = c * s;
            }
        }
        out
    }

    pub fn map_coords(&self, mut f: impl FnMut(&KScalar) -> KScalar) -> Self {
        let mut out = Self::zero();
        for (o, c) in out.coords.iter_mut().zip(&self.coords) {
            if !c.is_zero() {
                *o = f(c);
            }
        }
        out
    }
}

impl Add<&CliffordElt> for &CliffordElt {
    type Output = CliffordElt;
    fn add(self, rhs: &CliffordElt) -> CliffordElt {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub<&CliffordElt> for &CliffordElt {
    type Output = CliffordElt;
    fn sub(self, rhs: &CliffordElt) -> CliffordElt {
        let mut out = self.clone();
        out.add_assign(&-rhs);
        out
    }
}

impl Neg for &CliffordElt {
    type Output = CliffordElt;
    fn neg(self) -> CliffordElt {
        self.map_coords(|c| -c)
    }
}

impl fmt::Display for CliffordElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (b, c) in self.components() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if b == Blade::SCALAR {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{b}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CliffordElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CliffordElt[{self}]")
    }
}

/// Multiplication context for a fixed signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliffordAlgebra {
    signature: Signature,
    table: [[(i8, u8); 8]; 8],
}

impl CliffordAlgebra {
    pub fn new(signature: Signature) -> Self {
        let mut table = [[(0i8, 0u8); 8]; 8];
        for (a, row) in table.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                let (s, p) = blade_mul(Blade(a as u8), Blade(b as u8), signature);
                *cell = (s as i8, p.0);
            }
        }
        CliffordAlgebra { signature, table }
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn mul(&self, a: &CliffordElt, b: &CliffordElt) -> CliffordElt {
        let mut out = CliffordElt::zero();
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (s, k) = self.table[i][j];
                let p = x * y;
                let slot = &mut out.coords[k as usize];
                *slot = if s > 0 { &*slot + &p } else { &*slot - &p };
            }
        }
        out
    }

    /// `a * e_S`: a signed permutation of coordinates.
    pub fn mul_blade_right(&self, a: &CliffordElt, b: Blade) -> CliffordElt {
        let mut out = CliffordElt::zero();
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (s, k) = self.table[i][b.index()];
            out.coords[k as usize] = if s > 0 { x.clone() } else { -x };
        }
        out
    }

    /// `e_S * a`.
    pub fn mul_blade_left(&self, b: Blade, a: &CliffordElt) -> CliffordElt {
        let mut out = CliffordElt::zero();
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (s, k) = self.table[b.index()][i];
            out.coords[k as usize] = if s > 0 { x.clone() } else { -x };
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{trig_value, Cyclotomic, Trig};
    use crate::rational::Rational;
    use proptest::prelude::*;

    const N: u32 = 12;

    /// Sign of a blade product by explicitly bubble-sorting the concatenated
    /// generator list and contracting equal neighbours.
    fn oracle(a: Blade, b: Blade, eps: i64) -> (i64, Blade) {
        let mut word: Vec<usize> = a.axes().chain(b.axes()).collect();
        let mut sign = 1;
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < word.len() {
                if word[i] > word[i + 1] {
                    word.swap(i, i + 1);
                    sign = -sign;
                    changed = true;
                } else if word[i] == word[i + 1] {
                    word.drain(i..i + 2);
                    sign *= eps;
                    changed = true;
                    continue;
                }
                i += 1;
            }
            if !changed {
                break;
            }
        }
        (sign, Blade::from_axes(&word).unwrap())
    }

    #[test]
    fn blade_products_match_oracle() {
        for sig in [Signature::Positive, Signature::Negative] {
            for a in Blade::CANONICAL {
                for b in Blade::CANONICAL {
                    assert_eq!(blade_mul(a, b, sig), oracle(a, b, sig.value()), "{a} * {b}");
                }
            }
        }
    }

    #[test]
    fn named_blade_products() {
        for sig in [Signature::Positive, Signature::Negative] {
            let eps = sig.value();
            assert_eq!(blade_mul(Blade::E1, Blade::E1, sig), (eps, Blade::SCALAR));
            assert_eq!(blade_mul(Blade::E12, Blade::E23, sig), (eps, Blade::E13));
            assert_eq!(blade_mul(Blade::E123, Blade::E123, sig), (-eps, Blade::SCALAR));
            assert_eq!(blade_mul(Blade::E12, Blade::E12, sig), (-1, Blade::SCALAR));
        }
    }

    fn one() -> KScalar {
        KScalar::from_int(N, 1)
    }

    #[test]
    fn anticommutation_relations() {
        for sig in [Signature::Positive, Signature::Negative] {
            let alg = CliffordAlgebra::new(sig);
            for j in 1..=3 {
                for k in 1..=3 {
                    let ej = CliffordElt::blade(Blade::generator(j), one());
                    let ek = CliffordElt::blade(Blade::generator(k), one());
                    let anti = &alg.mul(&ej, &ek) + &alg.mul(&ek, &ej);
                    let want = if j == k {
                        CliffordElt::scalar(KScalar::from_int(N, 2 * sig.value()))
                    } else {
                        CliffordElt::zero()
                    };
                    assert_eq!(anti, want);
                }
            }
        }
    }

    #[test]
    fn vector_squares() {
        for sig in [Signature::Positive, Signature::Negative] {
            let alg = CliffordAlgebra::new(sig);
            let v = CliffordElt::from_vector([one(), one(), KScalar::zero()]);
            assert_eq!(alg.mul(&v, &v), CliffordElt::scalar(KScalar::from_int(N, 2 * sig.value())));

            let unit = CliffordElt::scalar(one());
            assert_eq!(alg.mul(&unit, &v), v);

            let e12 = CliffordElt::blade(Blade::E12, one());
            assert_eq!(alg.mul(&e12, &e12), CliffordElt::scalar(KScalar::from_int(N, -1)));

            assert_eq!(
                CliffordElt::from_vector([KScalar::zero(), KScalar::zero(), one()]),
                CliffordElt::blade(Blade::E3, one())
            );
            assert!(CliffordElt::from_vector(Default::default()).is_zero());

            // alpha_1 for m = 4 is a unit vector
            let s = KScalar::constant(trig_value(Trig::Sin, 1, 4, false));
            let c = KScalar::constant(trig_value(Trig::Cos, 1, 4, false));
            let a1 = CliffordElt::from_vector([s, -c, KScalar::zero()]);
            assert_eq!(
                alg.mul(&a1, &a1),
                CliffordElt::scalar(KScalar::from_int(8, sig.value()))
            );
        }
    }

    fn element() -> impl Strategy<Value = CliffordElt> {
        proptest::collection::vec((-4i64..4, 0i64..12), 8).prop_map(|v| {
            let mut e = CliffordElt::zero();
            for (b, (n, z)) in Blade::CANONICAL.into_iter().zip(v) {
                *e.coord_mut(b) =
                    KScalar::constant(Cyclotomic::zeta_pow(N, z).scale(&Rational::from_int(n)));
            }
            e
        })
    }

    proptest! {
        #[test]
        fn associativity(a in element(), b in element(), c in element(), neg in any::<bool>()) {
            let alg = CliffordAlgebra::new(if neg { Signature::Negative } else { Signature::Positive });
            prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &c), alg.mul(&a, &alg.mul(&b, &c)));
        }

        #[test]
        fn blade_shortcuts_agree(a in element(), bi in 0usize..8, neg in any::<bool>()) {
            let alg = CliffordAlgebra::new(if neg { Signature::Negative } else { Signature::Positive });
            let b = Blade::CANONICAL[bi];
            let eb = CliffordElt::blade(b, one());
            prop_assert_eq!(alg.mul_blade_right(&a, b), alg.mul(&a, &eb));
            prop_assert_eq!(alg.mul_blade_left(b, &a), alg.mul(&eb, &a));
        }
    }
}
