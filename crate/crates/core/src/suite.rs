//! The catalogue of identities checked by the verifier.

use crate::dihedral::{DihedralConfig, KappaMode};
use crate::error::Result;
use crate::kscalar::KScalar;
use crate::operator::{Evaluator, OperatorExpr};
use crate::rational::Rational;
use crate::symmetry::{
    make_c, make_l, make_o123, make_o_one, make_o_two, make_sigma_tilde_rotation, OneIndexForm, Side,
    SymmetryOperators,
};
use crate::verify::{run_checks, CheckGroup, CheckOutcome, IdentityCheck, Summary};

type Op = OperatorExpr;

fn comm(a: &Op, b: &Op) -> Op {
    Op::commutator(a, b)
}

fn anti(a: &Op, b: &Op) -> Op {
    Op::anticommutator(a, b)
}

fn sq(a: &Op) -> Op {
    a * a
}

struct Builder<'a> {
    ops: &'a SymmetryOperators,
    degree: u32,
    out: Vec<IdentityCheck>,
}

impl Builder<'_> {
    fn cfg(&self) -> &DihedralConfig {
        &self.ops.cfg
    }

    fn eps(&self) -> KScalar {
        self.ops.eps()
    }

    fn scalar(&self, num: i64, den: i64) -> Op {
        Op::scalar(self.cfg().scalar(Rational::new(num, den)))
    }

    fn eps_times(&self, a: &Op) -> Op {
        Op::scale(self.eps(), a)
    }

    fn push(&mut self, name: impl Into<String>, group: CheckGroup, lhs: Op, rhs: Op) {
        self.out.push(IdentityCheck::new(name, group, lhs, rhs, self.degree));
    }

    fn zero(&mut self, name: impl Into<String>, group: CheckGroup, op: Op) {
        self.out.push(IdentityCheck::vanishes(name, group, op, self.degree));
    }

    fn try_push(&mut self, name: String, group: CheckGroup, build: impl FnOnce() -> Result<(Op, Op)>) {
        match build() {
            Ok((l, r)) => self.push(name, group, l, r),
            Err(e) => self.out.push(IdentityCheck::skipped(name, group, e.to_string())),
        }
    }

    fn grp(&mut self) {
        let m = self.cfg().m() as usize;
        let eps = self.cfg().epsilon();
        let st = &self.ops.sigma_tilde;
        for (j, s) in st.iter().enumerate() {
            self.push(format!("st{j}^2"), CheckGroup::Grp, sq(s), Op::scalar(self.eps()));
        }
        let s0m = &st[0] * &st[m];
        self.push(format!("(st0*st{m})^2"), CheckGroup::Grp, s0m.pow(2), self.scalar(-1, 1));
        let s1m = &st[1] * &st[m];
        let sign = if m % 2 == 0 { -1 } else { 1 } * eps.pow(m as u32);
        self.push(format!("(st1*st{m})^{m}"), CheckGroup::Grp, s1m.pow(m as u32), self.scalar(sign, 1));
    }

    fn cen(&mut self) {
        let ops = self.ops;
        let g = CheckGroup::Cen;
        for (k, s) in ops.sigma_tilde.iter().enumerate() {
            self.zero(format!("{{st{k},Dirac}}"), g, anti(s, &ops.dirac));
            self.zero(format!("{{st{k},X}}"), g, anti(s, &ops.x));
        }
        let pair_names = ["O12", "O31", "O23"];
        for (p, name) in ops.pairs.iter().zip(pair_names) {
            self.zero(format!("[{name},Dirac]"), g, comm(p, &ops.dirac));
            self.zero(format!("[{name},X]"), g, comm(p, &ops.x));
        }
        self.zero("[O123,Dirac]", g, comm(&ops.o123, &ops.dirac));
        self.zero("[O123,X]", g, comm(&ops.o123, &ops.x));
        self.zero("{O123,Dirac}", g, anti(&ops.o123, &ops.dirac));
        self.zero("{O123,X}", g, anti(&ops.o123, &ops.x));
        for (p, name) in ops.pairs.iter().zip(pair_names) {
            self.zero(format!("[O123,{name}]"), g, comm(&ops.o123, p));
        }
        for (k, s) in ops.sigma_tilde.iter().enumerate() {
            self.zero(format!("[O123,st{k}]"), g, comm(&ops.o123, s));
        }
    }

    fn p1a(&mut self) {
        let o = &self.ops.o;
        let [o12, o31, o23] = &self.ops.pairs;
        let o123 = &self.ops.o123;
        let int2 = self.cfg().int(2);
        let two = |a: &Op| Op::scale(int2.clone(), &(a * o123));
        let cases = [
            ("[O12,O31]", o12, o31, o23, &o[0], (&o[1], &o[2])),
            ("[O23,O12]", o23, o12, o31, &o[1], (&o[2], &o[0])),
            ("[O31,O23]", o31, o23, o12, &o[2], (&o[0], &o[1])),
        ];
        for (name, a, b, c, oi, (oj, ok)) in cases {
            let rhs = Op::sum([c.clone(), two(oi), self.eps_times(&comm(oj, ok))]);
            self.push(name, CheckGroup::P1a, comm(a, b), rhs);
        }
    }

    /// `st_j O = R st_j` for the three two-index symmetries, using `st` as given.
    fn conjugations(&mut self, j: usize, st: &Op, suffix: &str) {
        let [o12, o31, o23] = &self.ops.pairs;
        let g = CheckGroup::P1b;
        if j == 0 {
            self.push(format!("st0*O12{suffix}"), g, st * o12, o12 * st);
            self.push(format!("st0*O31{suffix}"), g, st * o31, &(-o31) * st);
            self.push(format!("st0*O23{suffix}"), g, st * o23, &(-o23) * st);
            return;
        }
        let cfg = self.cfg();
        let m = cfg.m();
        let c = KScalar::constant(crate::cyclotomic::trig_value(crate::cyclotomic::Trig::Cos, j as i64, m, true));
        let s = KScalar::constant(crate::cyclotomic::trig_value(crate::cyclotomic::Trig::Sin, j as i64, m, true));
        let r31 = &Op::scale(c.clone(), o31) + &Op::scale(s.clone(), o23);
        let r23 = &Op::scale(-&c, o31) + &Op::scale(s.clone(), o23);
        self.push(format!("st{j}*O12{suffix}"), g, st * o12, &(-o12) * st);
        self.push(format!("st{j}*O31{suffix}"), g, st * o31, &r31 * st);
        self.push(format!("st{j}*O23{suffix}"), g, st * o23, &r23 * st);
        if suffix.is_empty() {
            let r31 = &Op::scale(c.clone(), o31) - &Op::scale(s.clone(), o23);
            let r23 = -&(&Op::scale(s, o31) + &Op::scale(c, o23));
            self.push(format!("st{j}*O31-corrected"), g, st * o31, &r31 * st);
            self.push(format!("st{j}*O23-corrected"), g, st * o23, &r23 * st);
        }
    }

    fn p1b(&mut self) {
        let m = self.cfg().m() as usize;
        for j in 0..=m {
            let st = self.ops.sigma_tilde[j].clone();
            self.conjugations(j, &st, "");
        }
        for j in 1..=m {
            match make_sigma_tilde_rotation(self.cfg(), j) {
                Ok(st) => self.conjugations(j, &st, "-rotation-matrix"),
                Err(e) => self
                    .out
                    .push(IdentityCheck::skipped(format!("st{j}-rotation-matrix"), CheckGroup::P1b, e.to_string())),
            }
        }
    }

    fn p2(&mut self) {
        let ops = self.ops;
        let ones = Op::sum(ops.o.iter().map(sq));
        let twos = Op::sum(ops.pairs.iter().map(sq));
        let rhs = Op::sum([self.scalar(-self.cfg().epsilon(), 4), ones, self.eps_times(&twos)]);
        self.push("prop2.2-O123-square", CheckGroup::P2, sq(&ops.o123), rhs);
    }

    fn p2_aux(&mut self) {
        for i in 1..=3 {
            for j in 1..=3 {
                for k in 1..=3 {
                    for l in 1..=3 {
                        self.try_push(format!("LC-{i}{j}{k}{l}"), CheckGroup::P2Aux, || {
                            let lhs = Op::sum([
                                &make_l(i, j)? * &make_l(k, l)?,
                                &make_l(k, i)? * &make_l(j, l)?,
                                &make_l(j, k)? * &make_l(i, l)?,
                            ]);
                            let rhs = Op::sum([
                                &make_l(i, j)? * &make_c(k, l)?,
                                &make_l(k, i)? * &make_c(j, l)?,
                                &make_l(j, k)? * &make_c(i, l)?,
                            ]);
                            Ok((lhs, rhs))
                        });
                    }
                }
            }
        }
    }

    fn p3(&mut self) {
        let lb = &self.ops.ladder;
        let o123 = &self.ops.o123;
        let g = CheckGroup::P3;
        let rhs_plus = Op::sum([
            lb.o_plus.clone(),
            anti(o123, &lb.t_plus),
            self.eps_times(&comm(&lb.t0, &lb.t_plus)),
        ]);
        self.push("[O0,O+]", g, comm(&lb.o0, &lb.o_plus), rhs_plus);
        let rhs_minus = Op::sum([
            -&lb.o_minus,
            anti(o123, &lb.t_minus),
            -&self.eps_times(&comm(&lb.t0, &lb.t_minus)),
        ]);
        self.push("[O0,O-]", g, comm(&lb.o0, &lb.o_minus), rhs_minus);
        let third = Op::sum([
            Op::scale(self.cfg().int(2), &lb.o0),
            -&anti(o123, &lb.t0),
            self.eps_times(&comm(&lb.t_plus, &lb.t_minus)),
        ]);
        self.push("[O0,O+]=2O0-{O123,T0}+eps[T+,T-]", g, comm(&lb.o0, &lb.o_plus), third.clone());
        self.push("[O+,O-]", g, comm(&lb.o_plus, &lb.o_minus), third);
        let third = Op::sum([
            Op::scale(self.cfg().int(2), &lb.o0),
            Op::scale(self.cfg().int(-2), &anti(o123, &lb.t0)),
            self.eps_times(&comm(&lb.t_plus, &lb.t_minus)),
        ]);
        self.push("[O+,O-]-corrected", g, comm(&lb.o_plus, &lb.o_minus), third);

        let (t0, tp, tm) = (&lb.t0, &lb.t_plus, &lb.t_minus);
        let (o0, op, om) = (&lb.o0, &lb.o_plus, &lb.o_minus);
        let table = [
            ("T0O0=O0T0", t0 * o0, o0 * t0),
            ("T0O+=-O+T0", t0 * op, -&(op * t0)),
            ("T0O-=-O-T0", t0 * om, -&(om * t0)),
            ("T+O0=-O0T+", tp * o0, -&(o0 * tp)),
            ("T+O-=-O+T-", tp * om, -&(op * tm)),
            ("T-O+=O-T+", tm * op, om * tp),
            ("T-O+=-O-T+", tm * op, -&(om * tp)),
            ("T-O0=-O0T-", tm * o0, -&(o0 * tm)),
            ("T-T0=-T0T-", tm * t0, -&(t0 * tm)),
            ("T+T0=-T0T+", tp * t0, -&(t0 * tp)),
        ];
        for (name, lhs, rhs) in table {
            self.push(name, g, lhs, rhs);
        }
    }

    fn p4(&mut self) {
        let lb = &self.ops.ladder;
        let o = &self.ops.o;
        let [o12, o31, o23] = &self.ops.pairs;
        let o123 = &self.ops.o123;
        let g = CheckGroup::P4;
        let eps_quarter = self.scalar(-self.cfg().epsilon(), 4);
        let half = self.scalar(1, 2);
        let int2 = self.cfg().int(2);
        let two = |a: &Op| Op::scale(int2.clone(), a);

        let via_pm = Op::sum([
            eps_quarter.clone(),
            &lb.t_plus * &lb.t_minus,
            -&sq(&lb.t0),
            -&self.eps_times(&Op::sum([
                sq(&lb.o0),
                -&lb.o0,
                &lb.o_plus * &lb.o_minus,
                two(&(o123 * &lb.t0)),
            ])),
        ]);
        self.push("O123^2-via-O+O-", g, sq(o123), via_pm);
        let via_mp = Op::sum([
            eps_quarter,
            &lb.t_minus * &lb.t_plus,
            -&sq(&lb.t0),
            -&self.eps_times(&Op::sum([
                sq(&lb.o0),
                lb.o0.clone(),
                -&(&lb.o_minus * &lb.o_plus),
                -&two(&(o123 * &lb.t0)),
            ])),
        ]);
        self.push("O123^2-via-O-O+", g, sq(o123), via_mp);
        let via_mp = Op::sum([
            self.scalar(-self.cfg().epsilon(), 4),
            &lb.t_minus * &lb.t_plus,
            -&sq(&lb.t0),
            -&self.eps_times(&Op::sum([
                sq(&lb.o0),
                lb.o0.clone(),
                &lb.o_minus * &lb.o_plus,
                -&two(&(o123 * &lb.t0)),
            ])),
        ]);
        self.push("O123^2-via-O-O+-corrected", g, sq(o123), via_mp);

        let eps_o123 = self.eps_times(o123);
        let fac_pm = Op::sum([
            self.eps_times(&(&lb.t_plus * &lb.t_minus)),
            -&sq(&(&lb.o0 - &half)),
            -&self.eps_times(&sq(&(&eps_o123 + &lb.t0))),
        ]);
        self.push("O+O-", g, &lb.o_plus * &lb.o_minus, fac_pm);
        let fac_mp = Op::sum([
            self.eps_times(&(&lb.t_minus * &lb.t_plus)),
            -&sq(&(&lb.o0 + &half)),
            -&self.eps_times(&sq(&(&eps_o123 - &lb.t0))),
        ]);
        self.push("O-O+", g, &lb.o_minus * &lb.o_plus, fac_mp);

        self.push("O12^2=-O0^2", g, sq(o12), -&sq(&lb.o0));
        let tpm = comm(&lb.t_plus, &lb.t_minus);
        let rhs = Op::sum([
            -&(&lb.o_plus * &lb.o_minus),
            lb.o0.clone(),
            -&two(&(o123 * &lb.t0)),
            Op::scale(self.cfg().scalar(Rational::new(self.cfg().epsilon(), 2)), &tpm),
        ]);
        self.push("O31^2+O23^2", g, &sq(o31) + &sq(o23), rhs);
        self.push("O3^2=T0^2", g, sq(&o[2]), sq(&lb.t0));
        self.push("O3^2=-T0^2", g, sq(&o[2]), -&sq(&lb.t0));
        let rhs = &(&lb.t_plus * &lb.t_minus) - &Op::scale(self.cfg().scalar(Rational::new(1, 2)), &tpm);
        self.push("O1^2+O2^2", g, &sq(&o[0]) + &sq(&o[1]), rhs);
    }

    fn p5(&mut self) {
        let lb = &self.ops.ladder;
        let o123 = &self.ops.o123;
        let g = CheckGroup::P5;
        self.push("[O0,L+]=L+", g, comm(&lb.o0, &lb.l_plus), lb.l_plus.clone());
        self.push("[O0,L-]=-L-", g, comm(&lb.o0, &lb.l_minus), -&lb.l_minus);
        let half = self.scalar(1, 2);
        let eps_o123 = self.eps_times(o123);
        let a = sq(&(&lb.o0 - &half));
        let b = sq(&(&lb.o0 + &half));
        let left = &a + &self.eps_times(&sq(&(&eps_o123 + &lb.t0)));
        let right = &a - &self.eps_times(&(&lb.t_plus * &lb.t_minus));
        self.push("L+L-", g, &lb.l_plus * &lb.l_minus, -&(&left * &right));
        let left = &b + &self.eps_times(&sq(&(&eps_o123 - &lb.t0)));
        let right = &b - &self.eps_times(&(&lb.t_minus * &lb.t_plus));
        self.push("L-L+", g, &lb.l_minus * &lb.l_plus, -&(&left * &right));
    }

    fn plumb(&mut self) {
        let g = CheckGroup::Plumb;
        let cfg = self.cfg().clone();
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            self.zero(format!("[D{i},D{j}]"), g, comm(&Op::dunkl(i), &Op::dunkl(j)));
        }
        for j in 1..=3 {
            for (form, label) in [
                (OneIndexForm::GroupSum, "group-sum"),
                (OneIndexForm::ScaledGroupSum, "eps*group-sum"),
            ] {
                self.try_push(format!("O{j}:{label}=bracket"), g, || {
                    Ok((make_o_one(&cfg, j, form)?, make_o_one(&cfg, j, OneIndexForm::Bracket)?))
                });
            }
        }
        for (i, j) in [(1, 2), (3, 1), (2, 3)] {
            self.try_push(format!("O{i}{j}:left=right"), g, || {
                Ok((
                    make_o_two(&cfg, i, j, Side::Left)?,
                    make_o_two(&cfg, i, j, Side::Right)?,
                ))
            });
        }
        self.try_push("O123:left=right".into(), g, || {
            Ok((make_o123(&cfg, Side::Left)?, make_o123(&cfg, Side::Right)?))
        });
    }
}

/// All checks of the selected groups, in a fixed order.
pub fn build_checks(ops: &SymmetryOperators, groups: &[CheckGroup], degree: u32) -> Vec<IdentityCheck> {
    let mut b = Builder {
        ops,
        degree,
        out: Vec::new(),
    };
    for g in CheckGroup::ALL {
        if !groups.contains(&g) {
            continue;
        }
        match g {
            CheckGroup::Grp => b.grp(),
            CheckGroup::Cen => b.cen(),
            CheckGroup::P1a => b.p1a(),
            CheckGroup::P1b => b.p1b(),
            CheckGroup::P2 => b.p2(),
            CheckGroup::P2Aux => b.p2_aux(),
            CheckGroup::P3 => b.p3(),
            CheckGroup::P4 => b.p4(),
            CheckGroup::P5 => b.p5(),
            CheckGroup::Plumb => b.plumb(),
        }
    }
    b.out
}

/// Result of [`run_suite`].
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub m: u32,
    pub epsilon: i64,
    pub degree: u32,
    pub kappa_mode: KappaMode,
    pub checks: Vec<CheckOutcome>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn outcome(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }
}

/// Verify the selected groups for one configuration.
pub fn run_suite(cfg: &DihedralConfig, degree: u32, groups: &[CheckGroup]) -> Result<SuiteReport> {
    let ops = SymmetryOperators::new(cfg)?;
    let checks = build_checks(&ops, groups, degree);
    let ev = Evaluator::new(cfg);
    let outcomes = run_checks(&ev, &checks)?;
    Ok(SuiteReport {
        m: cfg.m(),
        epsilon: cfg.epsilon(),
        degree,
        kappa_mode: cfg.kappa_mode().clone(),
        summary: Summary::of(&outcomes),
        checks: outcomes,
    })
}
