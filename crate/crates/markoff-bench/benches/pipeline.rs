use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use markoff_bench::table;
use markoff_core::orbits::compute_orbits;
use markoff_core::perm::{is_primitive, permutation_of};
use markoff_core::surface::{enumerate_surface, GAMMA_GENERATORS, VIETA_GENERATORS};
use markoff_core::{Level, PrimeModulus};

fn bench_enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_surface");
    for ell in [53u64, 101, 199] {
        let m = PrimeModulus::new(ell).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(ell), &m, |b, &m| {
            b.iter(|| enumerate_surface(m).unwrap())
        });
    }
    group.finish();
}

fn bench_orbit_census(c: &mut Criterion) {
    let mut group = c.benchmark_group("vieta_orbits_triples");
    for ell in [101u64, 199] {
        let t = table(ell);
        group.bench_with_input(BenchmarkId::from_parameter(ell), &t, |b, t| {
            b.iter(|| compute_orbits(t, Level::Triples, &VIETA_GENERATORS))
        });
    }
    group.finish();
}

fn bench_primitivity(c: &mut Criterion) {
    let mut group = c.benchmark_group("gamma_primitivity_blocks");
    group.sample_size(10); // quadratic in the block count
    for ell in [53u64, 101] {
        let t = table(ell);
        let gens: Vec<_> = GAMMA_GENERATORS
            .iter()
            .map(|&g| permutation_of(g, &t, Level::Blocks))
            .collect();
        let n = t.blocks().len();
        group.bench_with_input(BenchmarkId::from_parameter(ell), &gens, |b, gens| {
            b.iter(|| is_primitive(gens, n).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_enumerate, bench_orbit_census, bench_primitivity);
criterion_main!(benches);
