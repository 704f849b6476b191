use std::hint::black_box;

use amalgam_core::ring::{all_homs, all_ideals, product};
use amalgam_core::semigroup::{truncated_basis_multiplicity, NumericalSemigroup, SemigroupIdeal};
use amalgam_core::spectrum::{check_spec_partition, prime_ideals};
use amalgam_core::{amalgamate, FiniteRing};
use criterion::{criterion_group, criterion_main, Criterion};

fn spectrum(c: &mut Criterion) {
    let b = product(
        &FiniteRing::zmod(4).unwrap(),
        &FiniteRing::poly_quot(2, &[0, 0, 1]).unwrap(),
    )
    .unwrap();
    c.bench_function("prime_ideals Z4 x F2[x]/(x^2)", |bench| {
        bench.iter(|| prime_ideals(black_box(&b)))
    });
    c.bench_function("all_ideals Z4 x F2[x]/(x^2)", |bench| {
        bench.iter(|| all_ideals(black_box(&b)))
    });
}

fn amalgamation(c: &mut Criterion) {
    let a = FiniteRing::zmod(4).unwrap();
    let b = product(&a, &a).unwrap();
    let f = all_homs(&a, &b).remove(0);
    let j = all_ideals(&b).pop().unwrap();
    c.bench_function("amalgamate Z4 -> Z4 x Z4", |bench| {
        bench.iter(|| amalgamate(&a, &b, black_box(&f), &j).unwrap())
    });
    let d = amalgamate(&a, &b, &f, &j).unwrap();
    c.bench_function("spec partition Z4 -> Z4 x Z4", |bench| {
        bench.iter(|| check_spec_partition(black_box(&d)))
    });
}

fn oracle(c: &mut Criterion) {
    let s = NumericalSemigroup::new(&[5, 7, 9]).unwrap();
    let t = NumericalSemigroup::naturals();
    let e = SemigroupIdeal::new(&t, &[0]).unwrap();
    c.bench_function("truncated basis multiplicity <5,7,9>, d = 3", |bench| {
        bench.iter(|| truncated_basis_multiplicity(&s, black_box(3), &t, &e).unwrap())
    });
}

criterion_group!(benches, spectrum, amalgamation, oracle);
criterion_main!(benches);
