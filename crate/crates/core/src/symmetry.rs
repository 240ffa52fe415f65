//! Constructors for the named operators of the dihedral Dunkl-Dirac symmetry algebra.
//!
//! All constructors return [`OperatorExpr`] trees. [`SymmetryOperators`]
//! builds the full family once per configuration so that identity checks share
//! nodes, and therefore share the evaluator cache.

use crate::clifford::{Blade, CliffordElt};
use crate::dihedral::{DihedralConfig, GroupElement};
use crate::error::{Error, Result};
use crate::kscalar::KScalar;
use crate::operator::OperatorExpr;
use crate::rational::Rational;

/// Definitions of a one-index symmetry.
///
/// Since `[D_k, x_j] = delta_kj + 2 sum_a kappa(a) <a, xi_k> <a, xi_j> s_a`, the
/// bracket form equals `eps` times the group sum. [`OneIndexForm::ScaledGroupSum`]
/// and [`OneIndexForm::Bracket`] therefore agree for both signatures, while
/// [`OneIndexForm::GroupSum`] differs from them by a sign when `eps = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OneIndexForm {
    /// `sum_k kappa(alpha_k) <alpha_k, xi_j> st_k`.
    GroupSum,
    /// `eps sum_k kappa(alpha_k) <alpha_k, xi_j> st_k`.
    ScaledGroupSum,
    /// `(eps/2)([Dirac, x_j] - e_j)`.
    Bracket,
}

/// Clifford factors on the right of the symmetry terms (`O_i e_j`) or on the left (`e_i O_j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

fn check_axis(axis: usize) -> Result<()> {
    if (1..=3).contains(&axis) {
        Ok(())
    } else {
        Err(Error::InvalidAxis(axis))
    }
}

/// Left multiplication by the product `e_{a1} e_{a2} ...` (in the given order).
pub fn clifford_word(cfg: &DihedralConfig, axes: &[usize]) -> OperatorExpr {
    let alg = cfg.clifford();
    let mut acc = CliffordElt::scalar(cfg.int(1));
    for &a in axes {
        acc = alg.mul(&acc, &CliffordElt::blade(Blade::generator(a), cfg.int(1)));
    }
    let name = axes.iter().map(|a| format!("e{a}")).collect::<Vec<_>>().join("*");
    OperatorExpr::clifford_left(acc).named(name)
}

fn scalar_op(s: KScalar, name: &str) -> OperatorExpr {
    OperatorExpr::scalar(s).named(name)
}

fn half(cfg: &DihedralConfig) -> KScalar {
    cfg.scalar(Rational::new(1, 2))
}

fn eps_half(cfg: &DihedralConfig) -> KScalar {
    cfg.scalar(Rational::new(cfg.epsilon(), 2))
}

/// `st = g (x) v` for a group element `g` and Clifford vector `v`.
pub fn sigma_tilde_from(g: GroupElement, v: &CliffordElt, name: impl Into<String>) -> OperatorExpr {
    let label = g.label().to_string();
    OperatorExpr::compose(
        &OperatorExpr::clifford_left(v.clone()),
        &OperatorExpr::group(g).named(label),
    )
    .named(name)
}

/// `st_k = s_k (x) sum_j <alpha_k, xi_j> e_j`.
pub fn make_sigma_tilde(cfg: &DihedralConfig, k: usize) -> Result<OperatorExpr> {
    let g = cfg.reflection(k)?.clone();
    Ok(sigma_tilde_from(g, cfg.root_vector(k)?, format!("st{k}")))
}

/// Same Clifford part as `st_k`, paired with [`DihedralConfig::rotation_matrix`].
pub fn make_sigma_tilde_rotation(cfg: &DihedralConfig, k: usize) -> Result<OperatorExpr> {
    let g = cfg.rotation_matrix(k)?;
    Ok(sigma_tilde_from(g, cfg.root_vector(k)?, format!("st{k}'")))
}

/// Dunkl-Dirac operator `D1 e1 + D2 e2 + D3 e3`.
pub fn make_dirac(cfg: &DihedralConfig) -> OperatorExpr {
    OperatorExpr::sum((1..=3).map(|i| &clifford_word(cfg, &[i]) * &OperatorExpr::dunkl(i)))
        .named("Dirac")
}

/// Vector variable `x1 e1 + x2 e2 + x3 e3`.
pub fn make_x(cfg: &DihedralConfig) -> OperatorExpr {
    OperatorExpr::sum((1..=3).map(|i| &clifford_word(cfg, &[i]) * &OperatorExpr::coord(i)))
        .named("X")
}

/// One-index symmetry `O_j`.
pub fn make_o_one(cfg: &DihedralConfig, j: usize, form: OneIndexForm) -> Result<OperatorExpr> {
    check_axis(j)?;
    let name = format!("O{j}");
    Ok(match form {
        OneIndexForm::GroupSum | OneIndexForm::ScaledGroupSum => {
            let scale = match form {
                OneIndexForm::ScaledGroupSum => cfg.int(cfg.epsilon()),
                _ => cfg.int(1),
            };
            let mut terms = Vec::new();
            for (k, alpha) in cfg.roots().iter().enumerate() {
                let c = &alpha[j - 1];
                if c.is_zero() {
                    continue;
                }
                let weight = &cfg.kappa(k)?.scale(c) * &scale;
                terms.push(OperatorExpr::scale(weight, &make_sigma_tilde(cfg, k)?));
            }
            OperatorExpr::sum(terms).named(name)
        }
        OneIndexForm::Bracket => {
            let bracket = OperatorExpr::commutator(&make_dirac(cfg), &OperatorExpr::coord(j));
            let inner = &bracket - &clifford_word(cfg, &[j]);
            OperatorExpr::scale(eps_half(cfg), &inner).named(name)
        }
    })
}

/// `L_ij = x_i D_j - x_j D_i`.
pub fn make_l(i: usize, j: usize) -> Result<OperatorExpr> {
    check_axis(i)?;
    check_axis(j)?;
    let xi_dj = &OperatorExpr::coord(i) * &OperatorExpr::dunkl(j);
    let xj_di = &OperatorExpr::coord(j) * &OperatorExpr::dunkl(i);
    Ok((&xi_dj - &xj_di).named(format!("L{i}{j}")))
}

/// `C_kl = [D_k, x_l]`.
pub fn make_c(k: usize, l: usize) -> Result<OperatorExpr> {
    check_axis(k)?;
    check_axis(l)?;
    Ok(OperatorExpr::commutator(&OperatorExpr::dunkl(k), &OperatorExpr::coord(l)).named(format!("C{k}{l}")))
}

/// Two-index symmetry from given one-index symmetries:
/// `L_ij + (eps/2) e_i e_j + O_i e_j - O_j e_i` (Left) or
/// `L_ij + (eps/2) e_i e_j + e_i O_j - e_j O_i` (Right).
pub fn o_two_from(
    cfg: &DihedralConfig,
    i: usize,
    j: usize,
    o_i: &OperatorExpr,
    o_j: &OperatorExpr,
    side: Side,
) -> Result<OperatorExpr> {
    if i == j {
        return Err(Error::DegenerateIndices(i));
    }
    let ei = clifford_word(cfg, &[i]);
    let ej = clifford_word(cfg, &[j]);
    let eij = OperatorExpr::scale(eps_half(cfg), &clifford_word(cfg, &[i, j]));
    let (a, b) = match side {
        Side::Left => (o_i * &ej, o_j * &ei),
        Side::Right => (&ei * o_j, &ej * o_i),
    };
    Ok(OperatorExpr::sum([make_l(i, j)?, eij, a, -&b]).named(format!("O{i}{j}")))
}

/// Two-index symmetry `O_ij` built on [`OneIndexForm::ScaledGroupSum`].
pub fn make_o_two(cfg: &DihedralConfig, i: usize, j: usize, side: Side) -> Result<OperatorExpr> {
    check_axis(i)?;
    check_axis(j)?;
    if i == j {
        return Err(Error::DegenerateIndices(i));
    }
    let o_i = make_o_one(cfg, i, OneIndexForm::ScaledGroupSum)?;
    let o_j = make_o_one(cfg, j, OneIndexForm::ScaledGroupSum)?;
    o_two_from(cfg, i, j, &o_i, &o_j, side)
}

/// Three-index symmetry from given one- and two-index symmetries
/// (`o` = `[O1, O2, O3]`, `pairs` = `[O12, O31, O23]`).
pub fn o123_from(
    cfg: &DihedralConfig,
    o: &[OperatorExpr; 3],
    pairs: &[OperatorExpr; 3],
    side: Side,
) -> OperatorExpr {
    let e = |axes: &[usize]| clifford_word(cfg, axes);
    let lead = OperatorExpr::scale(-eps_half(cfg), &e(&[1, 2, 3]));
    // (one-index symmetry, bivector) and (two-index symmetry, vector) pairings
    let singles = [(&o[0], e(&[2, 3])), (&o[1], e(&[3, 1])), (&o[2], e(&[1, 2]))];
    let doubles = [(&pairs[0], e(&[3])), (&pairs[1], e(&[2])), (&pairs[2], e(&[1]))];
    let mut terms = vec![lead];
    for (op, c) in singles {
        let t = match side {
            Side::Left => op * &c,
            Side::Right => &c * op,
        };
        terms.push(-&t);
    }
    for (op, c) in doubles {
        terms.push(match side {
            Side::Left => op * &c,
            Side::Right => &c * op,
        });
    }
    OperatorExpr::sum(terms).named("O123")
}

/// `O123` built from [`OneIndexForm::ScaledGroupSum`] and left-form `O_ij`.
pub fn make_o123(cfg: &DihedralConfig, side: Side) -> Result<OperatorExpr> {
    let o = [1, 2, 3].map(|j| make_o_one(cfg, j, OneIndexForm::ScaledGroupSum));
    let o = [o[0].clone()?, o[1].clone()?, o[2].clone()?];
    let pairs = [
        o_two_from(cfg, 1, 2, &o[0], &o[1], Side::Left)?,
        o_two_from(cfg, 3, 1, &o[2], &o[0], Side::Left)?,
        o_two_from(cfg, 2, 3, &o[1], &o[2], Side::Left)?,
    ];
    Ok(o123_from(cfg, &o, &pairs, side))
}

/// `O0, O+, O-`, `T0, T+, T-` and the ladder operators `L+, L-`.
#[derive(Debug, Clone)]
pub struct LadderBasis {
    pub o0: OperatorExpr,
    pub o_plus: OperatorExpr,
    pub o_minus: OperatorExpr,
    pub t0: OperatorExpr,
    pub t_plus: OperatorExpr,
    pub t_minus: OperatorExpr,
    pub l_plus: OperatorExpr,
    pub l_minus: OperatorExpr,
}

impl LadderBasis {
    /// From `O1, O2, O3` and `O12, O31, O23`.
    pub fn from_parts(cfg: &DihedralConfig, o: &[OperatorExpr; 3], pairs: &[OperatorExpr; 3]) -> Self {
        let i = cfg.imag_unit();
        let times_i = |op: &OperatorExpr| OperatorExpr::scale(i.clone(), op);
        let [o12, o31, o23] = pairs;
        let o0 = OperatorExpr::scale(-&i, o12).named("O0");
        let o_plus = (&times_i(o31) + o23).named("O+");
        let o_minus = (&times_i(o31) - o23).named("O-");
        let t0 = times_i(&o[2]).named("T0");
        let t_plus = (&o[0] + &times_i(&o[1])).named("T+");
        let t_minus = (&o[0] - &times_i(&o[1])).named("T-");
        let h = half(cfg);
        let l_plus = OperatorExpr::scale(h.clone(), &OperatorExpr::anticommutator(&o0, &o_plus)).named("L+");
        let l_minus = OperatorExpr::scale(h, &OperatorExpr::anticommutator(&o0, &o_minus)).named("L-");
        LadderBasis {
            o0,
            o_plus,
            o_minus,
            t0,
            t_plus,
            t_minus,
            l_plus,
            l_minus,
        }
    }

    pub fn get(&self, name: &str) -> Option<&OperatorExpr> {
        Some(match name {
            "O0" => &self.o0,
            "O+" => &self.o_plus,
            "O-" => &self.o_minus,
            "T0" => &self.t0,
            "T+" => &self.t_plus,
            "T-" => &self.t_minus,
            "L+" => &self.l_plus,
            "L-" => &self.l_minus,
            _ => return None,
        })
    }
}

pub fn make_ladder_basis(cfg: &DihedralConfig) -> Result<LadderBasis> {
    Ok(SymmetryOperators::new(cfg)?.ladder)
}

/// Every named operator for one configuration, with shared subtrees.
#[derive(Debug, Clone)]
pub struct SymmetryOperators {
    pub cfg: DihedralConfig,
    /// `st_0 .. st_m`.
    pub sigma_tilde: Vec<OperatorExpr>,
    pub dirac: OperatorExpr,
    pub x: OperatorExpr,
    /// `O1, O2, O3`.
    pub o: [OperatorExpr; 3],
    /// `O12, O31, O23` (left form).
    pub pairs: [OperatorExpr; 3],
    /// Left form.
    pub o123: OperatorExpr,
    pub ladder: LadderBasis,
}

impl SymmetryOperators {
    /// One-index symmetries from [`OneIndexForm::ScaledGroupSum`].
    pub fn new(cfg: &DihedralConfig) -> Result<Self> {
        Self::with_one_index_form(cfg, OneIndexForm::ScaledGroupSum)
    }

    /// Same family, with `O1, O2, O3` built from the given definition.
    pub fn with_one_index_form(cfg: &DihedralConfig, form: OneIndexForm) -> Result<Self> {
        let sigma_tilde = (0..=cfg.m() as usize)
            .map(|k| make_sigma_tilde(cfg, k))
            .collect::<Result<Vec<_>>>()?;
        let o = [
            make_o_one(cfg, 1, form)?,
            make_o_one(cfg, 2, form)?,
            make_o_one(cfg, 3, form)?,
        ];
        let pairs = [
            o_two_from(cfg, 1, 2, &o[0], &o[1], Side::Left)?,
            o_two_from(cfg, 3, 1, &o[2], &o[0], Side::Left)?,
            o_two_from(cfg, 2, 3, &o[1], &o[2], Side::Left)?,
        ];
        let o123 = o123_from(cfg, &o, &pairs, Side::Left);
        let ladder = LadderBasis::from_parts(cfg, &o, &pairs);
        Ok(SymmetryOperators {
            cfg: cfg.clone(),
            sigma_tilde,
            dirac: make_dirac(cfg),
            x: make_x(cfg),
            o,
            pairs,
            o123,
            ladder,
        })
    }

    /// `O_j`, `j` in 1..=3.
    pub fn one(&self, j: usize) -> &OperatorExpr {
        &self.o[j - 1]
    }

    /// `O12`, `O31` or `O23` by index pair; `None` for other pairs.
    pub fn pair(&self, i: usize, j: usize) -> Option<&OperatorExpr> {
        match (i, j) {
            (1, 2) => Some(&self.pairs[0]),
            (3, 1) => Some(&self.pairs[1]),
            (2, 3) => Some(&self.pairs[2]),
            _ => None,
        }
    }

    pub fn scalar(&self, q: Rational) -> OperatorExpr {
        scalar_op(self.cfg.scalar(q.clone()), &q.to_string())
    }

    pub fn eps(&self) -> KScalar {
        self.cfg.int(self.cfg.epsilon())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Signature;
    use crate::dihedral::KappaMode;
    use crate::operator::Evaluator;
    use crate::poly::{Monomial, SpinorPoly};

    fn unit(cfg: &DihedralConfig) -> SpinorPoly {
        SpinorPoly::basis(Monomial::ONE, Blade::SCALAR, cfg.order())
    }

    #[test]
    fn sigma_tilde_zero_on_one() {
        for s in [Signature::Positive, Signature::Negative] {
            let cfg = DihedralConfig::new(3, s).unwrap();
            let ev = Evaluator::new(&cfg);
            let st0 = make_sigma_tilde(&cfg, 0).unwrap();
            let got = ev.apply(&st0, &unit(&cfg)).unwrap();
            assert_eq!(got, SpinorPoly::basis(Monomial::ONE, Blade::E3, cfg.order()));
            assert_eq!(make_sigma_tilde(&cfg, 4).unwrap_err(), Error::UnknownRoot(4));
        }
    }

    #[test]
    fn dirac_and_x_on_constants() {
        let cfg = DihedralConfig::new(4, Signature::Negative).unwrap();
        let n = cfg.order();
        let ev = Evaluator::new(&cfg);
        assert!(ev.apply(&make_dirac(&cfg), &unit(&cfg)).unwrap().is_zero());
        let mut want = SpinorPoly::zero();
        for i in 1..=3 {
            want.add_assign(&SpinorPoly::basis(Monomial::var(i), Blade::generator(i), n));
        }
        assert_eq!(ev.apply(&make_x(&cfg), &unit(&cfg)).unwrap(), want);

        let x3 = SpinorPoly::basis(Monomial::var(3), Blade::SCALAR, n);
        let k = &cfg.int(1) + &cfg.kappa(0).unwrap().scale_rational(&Rational::from_int(2));
        let want = SpinorPoly::term(Monomial::ONE, CliffordElt::blade(Blade::E3, k));
        assert_eq!(ev.apply(&make_dirac(&cfg), &x3).unwrap(), want);
    }

    #[test]
    fn x_anticommutator_on_one() {
        for s in [Signature::Positive, Signature::Negative] {
            let cfg = DihedralConfig::new(3, s).unwrap();
            let ev = Evaluator::new(&cfg);
            let x = make_x(&cfg);
            let got = ev.apply(&OperatorExpr::anticommutator(&x, &x), &unit(&cfg)).unwrap();
            let mut want = SpinorPoly::zero();
            for i in 1..=3 {
                let mut e = [0u16; 3];
                e[i - 1] = 2;
                want.add_term(Monomial(e), CliffordElt::scalar(cfg.int(2 * cfg.epsilon())));
            }
            assert_eq!(got, want);
        }
    }

    #[test]
    fn o3_on_one() {
        let cfg = DihedralConfig::new(5, Signature::Negative).unwrap();
        let ev = Evaluator::new(&cfg);
        let o3 = make_o_one(&cfg, 3, OneIndexForm::GroupSum).unwrap();
        let want = SpinorPoly::term(Monomial::ONE, CliffordElt::blade(Blade::E3, cfg.kappa(0).unwrap()));
        assert_eq!(ev.apply(&o3, &unit(&cfg)).unwrap(), want);
    }

    #[test]
    fn bracket_form_is_eps_times_group_sum() {
        for s in [Signature::Positive, Signature::Negative] {
            let cfg = DihedralConfig::new(3, s).unwrap();
            let ev = Evaluator::new(&cfg);
            let eps_k0 = cfg.kappa(0).unwrap().scale_rational(&Rational::from_int(cfg.epsilon()));
            let want = SpinorPoly::term(Monomial::ONE, CliffordElt::blade(Blade::E3, eps_k0));
            for form in [OneIndexForm::ScaledGroupSum, OneIndexForm::Bracket] {
                let o3 = make_o_one(&cfg, 3, form).unwrap();
                assert_eq!(ev.apply(&o3, &unit(&cfg)).unwrap(), want);
            }
        }
    }

    #[test]
    fn zero_kappa_limits() {
        for s in [Signature::Positive, Signature::Negative] {
            let cfg = DihedralConfig::with_kappa(4, s, KappaMode::Numeric(vec![Rational::zero(); 3])).unwrap();
            let ev = Evaluator::new(&cfg);
            let ops = SymmetryOperators::new(&cfg).unwrap();
            let l12 = make_l(1, 2).unwrap();
            let e12 = OperatorExpr::scale(eps_half(&cfg), &clifford_word(&cfg, &[1, 2]));
            let free = &l12 + &e12;
            for m in Monomial::up_to_degree(3) {
                for j in 1..=3 {
                    assert!(ev.eval_monomial(ops.one(j), m).unwrap().is_zero());
                }
                assert!(ev.eval_monomial(&ops.ladder.t_plus, m).unwrap().is_zero());
                assert!(ev.eval_monomial(&ops.ladder.t_minus, m).unwrap().is_zero());
                assert_eq!(*ev.eval_monomial(&ops.pairs[0], m).unwrap(), *ev.eval_monomial(&free, m).unwrap());
            }
        }
    }

    #[test]
    fn degenerate_two_index() {
        let cfg = DihedralConfig::new(3, Signature::Positive).unwrap();
        assert_eq!(make_o_two(&cfg, 2, 2, Side::Left).unwrap_err(), Error::DegenerateIndices(2));
    }
}
