//! Serializable documents for verification reports and exact values.
//!
//! Exact scalars are written as lists of kappa terms; each term carries the
//! kappa exponent vector and the rational coordinates of its cyclotomic
//! coefficient on the power basis.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use crate::clifford::Blade;
use crate::dihedral::{DihedralConfig, KappaMode};
use crate::kscalar::KScalar;
use crate::poly::{Monomial, SpinorPoly};
use crate::spectrum::{Direction, SliceSpectrum};
use crate::suite::SuiteReport;
use crate::verify::Verdict;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KappaTermDoc {
    pub kappa: [u8; 3],
    pub field_order: u32,
    pub coeffs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpinorTermDoc {
    pub monomial: [u16; 3],
    pub blade: String,
    pub coefficient: Vec<KappaTermDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleDoc {
    pub monomial: [u16; 3],
    pub blade: String,
    pub difference: Vec<SpinorTermDoc>,
    pub difference_text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum KappaModeDoc {
    Symbolic(&'static str),
    Numeric(BTreeMap<String, String>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigDoc {
    pub m: u32,
    pub epsilon: i64,
    pub degree: u32,
    pub kappa_mode: KappaModeDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckDoc {
    pub name: String,
    pub group: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub millis: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryDoc {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyDocument {
    pub config: ConfigDoc,
    pub checks: Vec<CheckDoc>,
    pub summary: SummaryDoc,
}

pub fn kscalar_doc(s: &KScalar) -> Vec<KappaTermDoc> {
    s.terms()
        .iter()
        .map(|(k, c)| KappaTermDoc {
            kappa: k.0,
            field_order: c.order(),
            coeffs: c.coeffs().iter().map(|q| q.to_string()).collect(),
        })
        .collect()
}

pub fn spinor_doc(p: &SpinorPoly) -> Vec<SpinorTermDoc> {
    let mut out = Vec::new();
    for (m, c) in p.terms() {
        for (b, s) in c.components() {
            out.push(SpinorTermDoc {
                monomial: m.0,
                blade: b.to_string(),
                coefficient: kscalar_doc(s),
            });
        }
    }
    out
}

pub fn kappa_mode_doc(mode: &KappaMode) -> KappaModeDoc {
    match mode {
        KappaMode::Symbolic => KappaModeDoc::Symbolic("symbolic"),
        KappaMode::Numeric(v) => KappaModeDoc::Numeric(
            v.iter().enumerate().map(|(i, q)| (format!("kappa{i}"), q.to_string())).collect(),
        ),
    }
}

impl VerifyDocument {
    /// Document for `report`; timings are included only when `timings` is set.
    pub fn from_report(report: &SuiteReport, timings: bool) -> Self {
        let checks = report
            .checks
            .iter()
            .map(|c| {
                let (counterexample, reason) = match &c.verdict {
                    Verdict::Pass => (None, None),
                    Verdict::Fail(cx) => (
                        Some(CounterexampleDoc {
                            monomial: cx.monomial.0,
                            blade: cx.blade.to_string(),
                            difference: spinor_doc(&cx.difference),
                            difference_text: format_spinor(&cx.difference),
                        }),
                        None,
                    ),
                    Verdict::Skipped(r) => (None, Some(r.clone())),
                };
                CheckDoc {
                    name: c.name.clone(),
                    group: c.group.name().to_string(),
                    verdict: c.verdict.label().to_string(),
                    counterexample,
                    reason,
                    millis: timings.then_some(c.millis),
                }
            })
            .collect();
        VerifyDocument {
            config: ConfigDoc {
                m: report.m,
                epsilon: report.epsilon,
                degree: report.degree,
                kappa_mode: kappa_mode_doc(&report.kappa_mode),
            },
            checks,
            summary: SummaryDoc {
                pass: report.summary.pass,
                fail: report.summary.fail,
                skipped: report.summary.skipped,
            },
        }
    }
}

/// Round to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// A real number, or a complex one when the imaginary part is not negligible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum NumberDoc {
    Real(f64),
    Complex { re: f64, im: f64 },
}

impl NumberDoc {
    pub fn of(z: Complex64) -> Self {
        if z.im.abs() <= 1e-9 * z.norm().max(1.0) {
            NumberDoc::Real(sig12(z.re))
        } else {
            NumberDoc::Complex {
                re: sig12(z.re),
                im: sig12(z.im),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumConfigDoc {
    pub m: u32,
    pub epsilon: i64,
    pub kappa: KappaModeDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenpairDoc {
    pub o0: NumberDoc,
    pub o123: NumberDoc,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainDoc {
    pub direction: &'static str,
    pub values: Vec<NumberDoc>,
    pub norms: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumDocument {
    pub config: SpectrumConfigDoc,
    pub degree: u32,
    pub eigenpairs: Vec<EigenpairDoc>,
    pub chains: Vec<ChainDoc>,
}

impl SpectrumDocument {
    pub fn new(cfg: &DihedralConfig, s: &SliceSpectrum) -> Self {
        SpectrumDocument {
            config: SpectrumConfigDoc {
                m: cfg.m(),
                epsilon: cfg.epsilon(),
                kappa: kappa_mode_doc(cfg.kappa_mode()),
            },
            degree: s.degree,
            eigenpairs: s
                .eigenpairs
                .iter()
                .map(|e| EigenpairDoc {
                    o0: NumberDoc::of(e.o0),
                    o123: NumberDoc::of(e.o123),
                    multiplicity: e.multiplicity,
                })
                .collect(),
            chains: s
                .chains
                .iter()
                .map(|c| ChainDoc {
                    direction: match c.direction {
                        Direction::Up => "up",
                        Direction::Down => "down",
                    },
                    values: c.values.iter().map(|&z| NumberDoc::of(z)).collect(),
                    norms: c.norms.iter().map(|&x| sig12(x)).collect(),
                })
                .collect(),
        }
    }
}

fn factors(m: &Monomial, b: Blade) -> String {
    let mut parts = Vec::new();
    if *m != Monomial::ONE {
        parts.push(m.to_string());
    }
    if b != Blade::SCALAR {
        parts.push(b.to_string());
    }
    parts.join("*")
}

/// Human-readable form, e.g. `1 + 2*kappa0` or `-kappa0*e12 + (1 + 2*kappa0)*x1*e3`.
pub fn format_spinor(p: &SpinorPoly) -> String {
    let mut out = String::new();
    for (m, c) in p.terms() {
        for (b, s) in c.components() {
            let f = factors(m, b);
            let body = s.to_string();
            let (neg, body) = match body.strip_prefix('-') {
                Some(rest) if s.terms().len() == 1 => (true, rest.to_string()),
                _ => (false, body),
            };
            let term = if f.is_empty() {
                body
            } else if body == "1" {
                f
            } else if s.terms().len() == 1 && !body.contains(' ') {
                format!("{body}*{f}")
            } else {
                format!("({body})*{f}")
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let _ = write!(out, "{term}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::CliffordElt;
    use crate::rational::Rational;

    #[test]
    fn formatting() {
        let n = 12;
        let k = &KScalar::from_int(n, 1) + &KScalar::var(0, 2, n).scale_rational(&Rational::from_int(2));
        let p = SpinorPoly::term(Monomial::ONE, CliffordElt::scalar(k.clone()));
        assert_eq!(format_spinor(&p), "1 + 2*kappa0");
        let mut q = SpinorPoly::term(Monomial::var(1), CliffordElt::blade(Blade::E3, k));
        q.add_term(Monomial::ONE, CliffordElt::blade(Blade::E12, -&KScalar::var(0, 2, n)));
        assert_eq!(format_spinor(&q), "-kappa0*e12 + (1 + 2*kappa0)*x1*e3");
        assert_eq!(format_spinor(&SpinorPoly::zero()), "0");
    }

    #[test]
    fn significant_digits() {
        assert_eq!(sig12(0.1 + 0.2), 0.3);
        assert_eq!(sig12(-1.0 / 3.0), -0.333333333333);
        assert_eq!(sig12(0.0), 0.0);
        assert_eq!(NumberDoc::of(Complex64::new(0.5, 1e-14)), NumberDoc::Real(0.5));
    }

    #[test]
    fn kscalar_document() {
        let n = 4;
        let s = KScalar::var(1, 2, n).scale_rational(&Rational::new(-1, 2));
        let d = kscalar_doc(&s);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].kappa, [0, 1, 0]);
        assert_eq!(d[0].coeffs, vec!["-1/2".to_string(), "0".to_string()]);
    }
}
