//! Matrix realizations of degree-preserving operators on homogeneous slices,
//! and numeric joint spectra and ladder chains built from them.
//!
//! The slice of degree `d` has basis `x^a (x) e_S` with `|a| = d`, monomials
//! in graded-lexicographic order crossed with blades in canonical order, so
//! its dimension is `8 (d+1)(d+2)/2`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::clifford::Blade;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::operator::{Evaluator, OperatorExpr};
use crate::poly::Monomial;
use crate::symmetry::SymmetryOperators;

/// Relative tolerance used to merge numerically equal eigenvalues.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Largest admissible Frobenius norm of `[O0, O123]`.
pub const COMMUTATOR_TOL: f64 = 1e-10;
/// Relative tolerance of the ladder check `O0 (L v) = (lambda +- 1) L v`.
pub const LADDER_TOL: f64 = 1e-8;

/// Exact matrix of an operator on one homogeneous slice.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRealization {
    pub name: String,
    pub degree: u32,
    pub basis: Vec<(Monomial, Blade)>,
    /// Row-major, `dim * dim` entries.
    pub entries: Vec<Cyclotomic>,
}

/// Basis of the degree-`d` slice.
pub fn slice_basis(d: u32) -> Vec<(Monomial, Blade)> {
    Monomial::of_degree(d)
        .into_iter()
        .flat_map(|m| Blade::CANONICAL.into_iter().map(move |b| (m, b)))
        .collect()
}

pub fn slice_dimension(d: u32) -> usize {
    8 * ((d + 1) * (d + 2) / 2) as usize
}

/// Exact matrix of `op` on the degree-`d` slice. Kappa must be numeric.
pub fn realize_matrix(ev: &Evaluator, op: &OperatorExpr, d: u32) -> Result<MatrixRealization> {
    let cfg = ev.config();
    if cfg.kappa_values().is_none() {
        return Err(Error::SymbolicKappa);
    }
    let name = op.name().map(str::to_string).unwrap_or_else(|| op.to_string());
    let basis = slice_basis(d);
    let dim = basis.len();
    let monomials = Monomial::of_degree(d);
    let index = |m: &Monomial, b: Blade| -> Option<usize> {
        let mi = monomials.binary_search(m).ok()?;
        Some(mi * 8 + b.canonical_position())
    };
    let alg = cfg.clifford();
    let columns = monomials
        .par_iter()
        .map(|&m| {
            let image = ev.eval_monomial(op, m)?;
            let mut cols = Vec::with_capacity(8);
            for b in Blade::CANONICAL {
                let mut col = vec![Cyclotomic::zero(cfg.order()); dim];
                for (mm, c) in image.terms() {
                    if mm.degree() != d {
                        return Err(Error::NotDegreePreserving(name.clone()));
                    }
                    let c = alg.mul_blade_right(c, b);
                    for (bb, s) in c.components() {
                        let row = index(mm, bb).expect("monomial of degree d");
                        col[row] = s.as_constant().ok_or(Error::SymbolicKappa)?;
                    }
                }
                cols.push(col);
            }
            Ok(cols)
        })
        .collect::<Result<Vec<_>>>()?;
    let columns: Vec<Vec<Cyclotomic>> = columns.into_iter().flatten().collect();
    let mut entries = vec![Cyclotomic::zero(cfg.order()); dim * dim];
    for (c, col) in columns.into_iter().enumerate() {
        for (r, v) in col.into_iter().enumerate() {
            entries[r * dim + c] = v;
        }
    }
    Ok(MatrixRealization {
        name,
        degree: d,
        basis,
        entries,
    })
}

impl MatrixRealization {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> &Cyclotomic {
        &self.entries[r * self.dim() + c]
    }

    /// Exact product `self * other` (apply `other` first).
    pub fn mul(&self, other: &MatrixRealization) -> MatrixRealization {
        let n = self.dim();
        assert_eq!(n, other.dim(), "dimension mismatch");
        let order = self.entries.first().map(Cyclotomic::order).unwrap_or(4);
        let mut entries = vec![Cyclotomic::zero(order); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.entry(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = other.entry(k, c);
                    if !b.is_zero() {
                        entries[r * n + c] = &entries[r * n + c] + &(a * b);
                    }
                }
            }
        }
        MatrixRealization {
            name: format!("{}*{}", self.name, other.name),
            degree: self.degree,
            basis: self.basis.clone(),
            entries,
        }
    }

    pub fn trace(&self) -> Cyclotomic {
        let order = self.entries.first().map(Cyclotomic::order).unwrap_or(4);
        (0..self.dim()).fold(Cyclotomic::zero(order), |acc, i| &acc + self.entry(i, i))
    }

    /// Float embedding.
    pub fn to_complex(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |r, c| self.entry(r, c).embed())
    }
}

/// Distinct eigenvalues of `a` with algebraic multiplicities, merged at
/// relative tolerance [`CLUSTER_TOL`] and sorted by real then imaginary part.
pub fn eigenvalue_clusters(a: &DMatrix<Complex64>) -> Vec<(Complex64, usize)> {
    if a.nrows() == 0 {
        return Vec::new();
    }
    let (_, t) = a.clone().schur().unpack();
    let mut values: Vec<Complex64> = (0..t.nrows()).map(|i| t[(i, i)]).collect();
    values.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    let mut clusters: Vec<(Complex64, usize, Complex64)> = Vec::new();
    for v in values {
        let tol = CLUSTER_TOL * v.norm().max(1.0);
        match clusters.iter_mut().find(|(c, _, _)| (c - v).norm() <= tol) {
            Some((c, n, sum)) => {
                *n += 1;
                *sum += v;
                *c = *sum / *n as f64;
            }
            None => clusters.push((v, 1, v)),
        }
    }
    let mut out: Vec<(Complex64, usize)> = clusters.into_iter().map(|(c, n, _)| (clean(c), n)).collect();
    out.sort_by(|x, y| x.0.re.total_cmp(&y.0.re).then(x.0.im.total_cmp(&y.0.im)));
    out
}

fn clean(z: Complex64) -> Complex64 {
    let tol = CLUSTER_TOL * z.norm().max(1.0);
    Complex64::new(
        if z.re.abs() <= tol { 0.0 } else { z.re },
        if z.im.abs() <= tol { 0.0 } else { z.im },
    )
}

/// Orthonormal basis (columns) of the numerical kernel of `a`.
fn null_space(a: &DMatrix<Complex64>, expected: usize) -> DMatrix<Complex64> {
    let n = a.ncols();
    let svd = a.clone().svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let take = expected.min(order.len());
    let mut out = DMatrix::zeros(n, take);
    for (col, &i) in order.iter().take(take).enumerate() {
        for r in 0..n {
            out[(r, col)] = v_t[(i, r)].conj();
        }
    }
    out
}

fn frobenius(a: &DMatrix<Complex64>) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// One eigenspace of `O0`: eigenvalue, orthonormal basis, algebraic multiplicity.
#[derive(Debug, Clone)]
pub struct Eigenspace {
    pub value: Complex64,
    pub basis: DMatrix<Complex64>,
}

/// Eigenspaces of a diagonalizable matrix. The returned bases span invariant
/// subspaces whose dimensions equal the algebraic multiplicities; the residual
/// `|| (A - lambda) V ||` is checked against the clustering tolerance.
pub fn eigenspaces(a: &DMatrix<Complex64>) -> Result<Vec<Eigenspace>> {
    let n = a.nrows();
    let scale = frobenius(a).max(1.0);
    let mut out = Vec::new();
    for (value, mult) in eigenvalue_clusters(a) {
        let shifted = a - DMatrix::<Complex64>::identity(n, n) * value;
        let basis = null_space(&shifted, mult);
        let residual = frobenius(&(&shifted * &basis));
        if residual > 1e3 * CLUSTER_TOL * scale {
            return Err(Error::NotSimultaneouslyDiagonalizable(residual));
        }
        out.push(Eigenspace { value, basis });
    }
    Ok(out)
}

/// `(O0 eigenvalue, O123 eigenvalue, multiplicity)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointEigenvalue {
    pub o0: Complex64,
    pub o123: Complex64,
    pub multiplicity: usize,
}

/// Joint spectrum of two commuting matrices: eigenspaces of `o0`, then the
/// eigenvalues of `o123` restricted to each of them.
pub fn joint_spectrum(o0: &MatrixRealization, o123: &MatrixRealization) -> Result<Vec<JointEigenvalue>> {
    let a = o0.to_complex();
    let b = o123.to_complex();
    let comm = frobenius(&(&a * &b - &b * &a));
    if comm > COMMUTATOR_TOL {
        return Err(Error::NotSimultaneouslyDiagonalizable(comm));
    }
    let mut out = Vec::new();
    for space in eigenspaces(&a)? {
        let v = &space.basis;
        let restricted = v.adjoint() * &b * v;
        for (value, mult) in eigenvalue_clusters(&restricted) {
            out.push(JointEigenvalue {
                o0: space.value,
                o123: value,
                multiplicity: mult,
            });
        }
    }
    Ok(out)
}

/// Direction of a ladder chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// Eigenvalues `values[0], values[0] +- 1, ...` linked by `L+` or `L-`;
/// `norms[k]` is the Frobenius norm of the ladder operator applied to an
/// orthonormal basis of the eigenspace of `values[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderChain {
    pub direction: Direction,
    pub values: Vec<Complex64>,
    pub norms: Vec<f64>,
}

/// Check the ladder property on every `O0` eigenspace and collect the chains.
pub fn ladder_strings(
    o0: &MatrixRealization,
    l_plus: &MatrixRealization,
    l_minus: &MatrixRealization,
) -> Result<Vec<LadderChain>> {
    let a = o0.to_complex();
    let spaces = eigenspaces(&a)?;
    let scale = frobenius(&a).max(1.0);
    let mut chains = Vec::new();
    for (dir, l) in [(Direction::Up, l_plus.to_complex()), (Direction::Down, l_minus.to_complex())] {
        let shift = if dir == Direction::Up { 1.0 } else { -1.0 };
        // successor index and norm for every eigenspace
        let mut next: Vec<Option<usize>> = vec![None; spaces.len()];
        let mut norms = vec![0.0; spaces.len()];
        for (i, s) in spaces.iter().enumerate() {
            let image = &l * &s.basis;
            let norm = frobenius(&image);
            norms[i] = norm;
            if norm <= LADDER_TOL * frobenius(&l).max(1.0) {
                continue;
            }
            let target = s.value + shift;
            let residual = frobenius(&(&a * &image - &image * target)) / norm;
            if residual > LADDER_TOL * scale {
                return Err(Error::LadderViolation {
                    from: s.value.re,
                    expected: target.re,
                    residual,
                });
            }
            let j = spaces
                .iter()
                .position(|t| (t.value - target).norm() <= CLUSTER_TOL * target.norm().max(1.0));
            match j {
                Some(j) => next[i] = Some(j),
                None => {
                    return Err(Error::LadderViolation {
                        from: s.value.re,
                        expected: target.re,
                        residual,
                    })
                }
            }
        }
        let mut has_pred = vec![false; spaces.len()];
        for j in next.iter().flatten() {
            has_pred[*j] = true;
        }
        for start in 0..spaces.len() {
            if has_pred[start] || next[start].is_none() {
                continue;
            }
            let mut values = vec![spaces[start].value];
            let mut ns = vec![norms[start]];
            let mut cur = start;
            while let Some(j) = next[cur] {
                values.push(spaces[j].value);
                ns.push(norms[j]);
                cur = j;
            }
            chains.push(LadderChain {
                direction: dir,
                values,
                norms: ns,
            });
        }
    }
    Ok(chains)
}

/// Largest deviation of consecutive chain values from a unit step.
pub fn max_spacing_error(chain: &LadderChain) -> f64 {
    let step = if chain.direction == Direction::Up { 1.0 } else { -1.0 };
    chain
        .values
        .windows(2)
        .map(|w| (w[1] - w[0] - step).norm())
        .fold(0.0, f64::max)
}

/// Joint spectrum of `(O0, O123)` and ladder chains on one slice.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceSpectrum {
    pub degree: u32,
    pub eigenpairs: Vec<JointEigenvalue>,
    pub chains: Vec<LadderChain>,
}

pub fn analyze_slice(ev: &Evaluator, ops: &SymmetryOperators, d: u32) -> Result<SliceSpectrum> {
    let l = &ops.ladder;
    let o0 = realize_matrix(ev, &l.o0, d)?;
    let o123 = realize_matrix(ev, &ops.o123, d)?;
    let lp = realize_matrix(ev, &l.l_plus, d)?;
    let lm = realize_matrix(ev, &l.l_minus, d)?;
    Ok(SliceSpectrum {
        degree: d,
        eigenpairs: joint_spectrum(&o0, &o123)?,
        chains: ladder_strings(&o0, &lp, &lm)?,
    })
}
