use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use superfunc::bases::{mono_product_realized, Basis};
use superfunc::inner::{form_beta, kernel_check, BetaMode};
use superfunc::operators::{dunkl_apply, monomial_matrix, random_expansion, random_poly, PSpaceOp};
use superfunc::superpartition::enumerate;
use superfunc::SuperPartition;

fn enumeration(c: &mut Criterion) {
    c.bench_function("enumerate (12|4)", |b| b.iter(|| enumerate(black_box(12), black_box(4), None)));
}

fn products(c: &mut Criterion) {
    let left: SuperPartition = "1,0;2".parse().unwrap();
    let right: SuperPartition = "0;1,1".parse().unwrap();
    c.bench_function("realized product (1,0;2)x(0;1,1)", |b| {
        b.iter(|| mono_product_realized(black_box(&left), black_box(&right)).unwrap())
    });
}

fn operators(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = random_poly(&mut rng, 4, 3, 6);
    c.bench_function("dunkl on 4 variables", |b| b.iter(|| dunkl_apply(2, black_box(&f)).unwrap()));
    c.bench_function("hamiltonian matrix (4|2)", |b| {
        b.iter(|| monomial_matrix(PSpaceOp::H, black_box(4), black_box(2), 6).unwrap())
    });
}

fn scalar_products(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let f = random_expansion(&mut rng, Basis::M, 5, 2);
    let g = random_expansion(&mut rng, Basis::E, 5, 2);
    c.bench_function("symbolic form (5|2)", |b| {
        b.iter(|| form_beta(black_box(&f), black_box(&g), &BetaMode::Symbolic).unwrap())
    });
    c.bench_function("kernel check N=2", |b| b.iter(|| kernel_check(2, 3, 1).unwrap()));
}

criterion_group!(benches, enumeration, products, operators, scalar_products);
criterion_main!(benches);
