use criterion::{black_box, criterion_group, criterion_main, Criterion};
use loopmod::central::{central_image, decompose, maximal_graded_subfields};
use loopmod::envelope::graded_envelope;
use loopmod::fixtures;
use loopmod::gmod::{graded_centralizer, is_graded_simple};
use loopmod::invars::brauer_invariant;
use loopmod::loopfun::{induce_default, loop_module};
use loopmod::Character;
use loopmod_bench::largest_instances;

fn pauli(c: &mut Criterion) {
    let w = fixtures::pauli_module();
    let v = fixtures::pauli_natural();
    let mut g = c.benchmark_group("pauli");
    g.bench_function("centralizer", |b| b.iter(|| black_box(graded_centralizer(&w))));
    g.bench_function("graded_simple", |b| b.iter(|| black_box(is_graded_simple(&w))));
    g.bench_function("brauer_invariant", |b| b.iter(|| black_box(brauer_invariant(&w).unwrap())));
    g.bench_function("envelope", |b| b.iter(|| black_box(graded_envelope(&v).unwrap())));
    g.finish();
}

fn corpus(c: &mut Criterion) {
    let mut g = c.benchmark_group("corpus");
    g.sample_size(10);
    for inst in largest_instances(2) {
        let w = &inst.module;
        let f = maximal_graded_subfields(w).unwrap().remove(0);
        let v = central_image(w, &f, Character::trivial()).unwrap().module;
        let tag = format!("dim{}-G{}", w.dim(), inst.group.order());
        g.bench_function(format!("centralizer/{tag}"), |b| b.iter(|| black_box(graded_centralizer(w))));
        g.bench_function(format!("subfields/{tag}"), |b| b.iter(|| black_box(maximal_graded_subfields(w).unwrap())));
        g.bench_function(format!("central_image/{tag}"), |b| {
            b.iter(|| black_box(central_image(w, &f, Character::trivial()).unwrap()))
        });
        g.bench_function(format!("decompose/{tag}"), |b| b.iter(|| black_box(decompose(w, &f).unwrap())));
        g.bench_function(format!("loop/{tag}"), |b| b.iter(|| black_box(loop_module(&v))));
        g.bench_function(format!("induce/{tag}"), |b| b.iter(|| black_box(induce_default(&v).unwrap())));
        g.bench_function(format!("envelope/{tag}"), |b| b.iter(|| black_box(graded_envelope(&v).unwrap())));
    }
    g.finish();
}

criterion_group!(benches, pauli, corpus);
criterion_main!(benches);
