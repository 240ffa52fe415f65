//! Dunkl operators and coordinate multiplication on spinor-valued polynomials.

use crate::dihedral::DihedralConfig;
use crate::error::{Error, Result};
use crate::poly::{Coefficient, Poly, SpinorPoly};

fn check_axis(axis: usize) -> Result<()> {
    if (1..=3).contains(&axis) {
        Ok(())
    } else {
        Err(Error::InvalidAxis(axis))
    }
}

/// `(f - s_k f) / <x, alpha_k>`, exact.
pub fn divided_difference<C: Coefficient>(
    cfg: &DihedralConfig,
    k: usize,
    f: &Poly<C>,
) -> Result<Poly<C>> {
    let alpha = cfg.root(k)?;
    let diff = f.sub(&cfg.reflection(k)?.apply(f));
    diff.divide_by_linear_form(alpha, k)
}

/// `D_axis f = d f / d x_axis + sum_k kappa(alpha_k) <alpha_k, xi_axis> (f - s_k f) / <x, alpha_k>`.
pub fn dunkl_apply(cfg: &DihedralConfig, axis: usize, p: &SpinorPoly) -> Result<SpinorPoly> {
    check_axis(axis)?;
    let mut out = p.partial(axis);
    for (k, alpha) in cfg.roots().iter().enumerate() {
        let component = &alpha[axis - 1];
        if component.is_zero() {
            continue;
        }
        let q = divided_difference(cfg, k, p)?;
        let weight = cfg.kappa(k)?.scale(component);
        out.add_assign(&q.scale_kscalar(&weight));
    }
    Ok(out)
}

/// Multiplication by `x_axis`.
pub fn multiply_by_coordinate(axis: usize, p: &SpinorPoly) -> Result<SpinorPoly> {
    check_axis(axis)?;
    Ok(p.mul_coordinate(axis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{Blade, CliffordElt, Signature};
    use crate::dihedral::KappaMode;
    use crate::kscalar::KScalar;
    use crate::poly::Monomial;
    use crate::rational::Rational;

    fn scalar_basis(cfg: &DihedralConfig, m: Monomial) -> SpinorPoly {
        SpinorPoly::basis(m, Blade::SCALAR, cfg.order())
    }

    #[test]
    fn constants_are_killed() {
        let cfg = DihedralConfig::new(5, Signature::Negative).unwrap();
        let one = scalar_basis(&cfg, Monomial::ONE);
        for j in 1..=3 {
            assert!(dunkl_apply(&cfg, j, &one).unwrap().is_zero());
        }
        assert_eq!(dunkl_apply(&cfg, 4, &one), Err(Error::InvalidAxis(4)));
    }

    #[test]
    fn d3_x3() {
        for m in 3..=6 {
            let cfg = DihedralConfig::new(m, Signature::Positive).unwrap();
            let n = cfg.order();
            let got = dunkl_apply(&cfg, 3, &scalar_basis(&cfg, Monomial::var(3))).unwrap();
            let want = &KScalar::from_int(n, 1) + &cfg.kappa(0).unwrap().scale_rational(&Rational::from_int(2));
            assert_eq!(got, SpinorPoly::term(Monomial::ONE, CliffordElt::scalar(want)));
        }
    }

    #[test]
    fn d1_x1_odd_m() {
        for m in [3u32, 5, 7] {
            let cfg = DihedralConfig::new(m, Signature::Negative).unwrap();
            let n = cfg.order();
            let got = dunkl_apply(&cfg, 1, &scalar_basis(&cfg, Monomial::var(1))).unwrap();
            let want = &KScalar::from_int(n, 1) + &cfg.kappa(1).unwrap().scale_rational(&Rational::from_int(m as i64));
            assert_eq!(got, SpinorPoly::term(Monomial::ONE, CliffordElt::scalar(want)));
        }
    }

    #[test]
    fn zero_kappa_is_partial_derivative() {
        let cfg = DihedralConfig::with_kappa(4, Signature::Positive, KappaMode::Numeric(vec![Rational::zero(); 3])).unwrap();
        for m in Monomial::up_to_degree(6) {
            let p = scalar_basis(&cfg, m);
            for j in 1..=3 {
                assert_eq!(dunkl_apply(&cfg, j, &p).unwrap(), p.partial(j));
            }
        }
    }

    #[test]
    fn coordinate_multiplication() {
        let cfg = DihedralConfig::new(3, Signature::Positive).unwrap();
        let n = cfg.order();
        let one = scalar_basis(&cfg, Monomial::ONE);
        assert_eq!(multiply_by_coordinate(1, &one).unwrap(), scalar_basis(&cfg, Monomial::var(1)));
        let x2 = scalar_basis(&cfg, Monomial::var(2));
        assert_eq!(multiply_by_coordinate(2, &x2).unwrap(), scalar_basis(&cfg, Monomial::new(0, 2, 0)));
        let x1e12 = SpinorPoly::basis(Monomial::var(1), Blade::E12, n);
        assert_eq!(multiply_by_coordinate(3, &x1e12).unwrap(), SpinorPoly::basis(Monomial::new(1, 0, 1), Blade::E12, n));
    }

    #[test]
    fn degree_contract() {
        let cfg = DihedralConfig::new(6, Signature::Negative).unwrap();
        for d in 1..=4 {
            for m in Monomial::of_degree(d) {
                let p = scalar_basis(&cfg, m);
                for j in 1..=3 {
                    assert!(dunkl_apply(&cfg, j, &p).unwrap().is_homogeneous_of(d - 1));
                    assert!(multiply_by_coordinate(j, &p).unwrap().is_homogeneous_of(d + 1));
                }
                for k in 0..=6 {
                    assert!(cfg.reflection(k).unwrap().apply(&p).is_homogeneous_of(d));
                }
            }
        }
    }
}
