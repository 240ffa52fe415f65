use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dunkl_bench::{checks, config};
use dunkl_core::verify::run_checks;
use dunkl_core::{parse_ast, CheckGroup, Evaluator, Monomial, OperatorExpr};
use std::hint::black_box;

fn group(c: &mut Criterion, name: &str, g: CheckGroup, degree: u32) {
    let mut grp = c.benchmark_group(name);
    grp.sample_size(10);
    for m in [3, 6] {
        for eps in [-1, 1] {
            let cfg = config(m, eps);
            let cs = checks(&cfg, g, degree);
            grp.bench_with_input(BenchmarkId::from_parameter(format!("m{m}_eps{eps:+}")), &cs, |b, cs| {
                b.iter(|| run_checks(&Evaluator::new(&cfg), cs).unwrap())
            });
        }
    }
    grp.finish();
}

fn group_relations(c: &mut Criterion) {
    group(c, "group_relations", CheckGroup::Grp, 2);
}

fn centralizer(c: &mut Criterion) {
    group(c, "centralizer", CheckGroup::Cen, 3);
}

fn three_index_square(c: &mut Criterion) {
    group(c, "three_index_square", CheckGroup::P2, 3);
}

fn dunkl_monomials(c: &mut Criterion) {
    let cfg = config(5, 1);
    let d = OperatorExpr::dunkl(1);
    c.bench_function("dunkl_degree6", |b| {
        b.iter(|| {
            let ev = Evaluator::new(&cfg);
            for m in Monomial::of_degree(6) {
                black_box(ev.eval_monomial(&d, m).unwrap());
            }
        })
    });
}

fn parser(c: &mut Criterion) {
    let text = "[O12, O31] - (O23 + 2*O1*O123 + [O2, O3]) + {O0, L+}*st1 - 1/2*x1*D2";
    c.bench_function("parse_operator", |b| b.iter(|| parse_ast(black_box(text)).unwrap()));
}

criterion_group!(benches, group_relations, centralizer, three_index_square, dunkl_monomials, parser);
criterion_main!(benches);
