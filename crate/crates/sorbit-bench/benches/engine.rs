use criterion::{black_box, criterion_group, criterion_main, Criterion};

use sorbit::rat::rat_int;
use sorbit::{weyl_vector_product, Coinvariants, DivDiff, MorseProfile, WeylGroup};
use sorbit_bench::{system, system_with_m};

fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("weyl-enumeration");
    for label in ["A3", "B3", "D4"] {
        let rs = system(label);
        group.bench_function(label, |b| {
            b.iter(|| WeylGroup::enumerate(black_box(&rs)).unwrap().order())
        });
    }
    group.finish();
}

fn bench_poincare_series(c: &mut Criterion) {
    let mut group = c.benchmark_group("poincare-series");
    group.sample_size(10);
    for label in ["B2", "A3", "B3"] {
        let rs = system(label);
        let weyl = WeylGroup::enumerate(&rs).unwrap();
        group.bench_function(label, |b| {
            b.iter(|| {
                let coinv = Coinvariants::new(black_box(&rs), &weyl);
                coinv.poincare_series().unwrap()
            })
        });
    }
    group.finish();
}

fn bench_top_operator(c: &mut Criterion) {
    let mut group = c.benchmark_group("divdiff-top-operator");
    for label in ["G2", "A3", "B3"] {
        let rs = system(label);
        let weyl = WeylGroup::enumerate(&rs).unwrap();
        let d = weyl_vector_product(&rs);
        group.bench_function(label, |b| {
            b.iter(|| {
                let dd = DivDiff::new(black_box(&rs));
                dd.delta_element(weyl.longest_element(), &d).unwrap()
            })
        });
    }
    group.finish();
}

fn bench_morse_profile(c: &mut Criterion) {
    let mut group = c.benchmark_group("morse-profile");
    for label in ["B3", "D4"] {
        let (rs, weyl) = system_with_m(label, 2);
        let x0 = vec![rat_int(1); rs.rank()];
        group.bench_function(label, |b| {
            b.iter(|| MorseProfile::compute(black_box(&rs), &weyl, &x0).unwrap().total())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_enumeration,
    bench_poincare_series,
    bench_top_operator,
    bench_morse_profile
);
criterion_main!(benches);
