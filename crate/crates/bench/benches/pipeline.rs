use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use pspace::finposet::{min_changes_oracle, order_complex, poset_iso, steps_to_contract};
use pspace::homol::reduced_homology;
use pspace::hunt::construct::affine_semilinear_9;
use pspace::hunt::{analyze_group, AnalyzeOptions, SubgroupPosets};
use pspace::plattice::{enumerate_p_subgroups, enumerate_p_tori};
use pspace_bench::fixture;

fn enumeration(c: &mut Criterion) {
    let g576 = fixture("G576");
    c.bench_function("p-subgroups of G576", |b| b.iter(|| enumerate_p_subgroups(black_box(&g576), 2).unwrap()));
    c.bench_function("p-tori of G576", |b| b.iter(|| enumerate_p_tori(black_box(&g576), 2).unwrap()));
    let s5 = fixture("S5");
    c.bench_function("posets of S5", |b| b.iter(|| SubgroupPosets::new(black_box(&s5), 2).unwrap()));
}

fn cores_and_iso(c: &mut Criterion) {
    let posets = SubgroupPosets::new(&fixture("G576"), 2).unwrap();
    c.bench_function("core of S_2(G576)", |b| b.iter(|| black_box(&posets.sp).core()));
    c.bench_function("core of A_2(G576)", |b| b.iter(|| black_box(&posets.ap).core()));
    let w = SubgroupPosets::new(&affine_semilinear_9().unwrap(), 2).unwrap();
    let (sp, _) = w.sp.core();
    let (ap, _) = w.ap.core();
    c.bench_function("iso test 21 vs 39", |b| b.iter(|| poset_iso(black_box(&sp), black_box(&ap))));
    c.bench_function("iso test 39 vs 39", |b| b.iter(|| poset_iso(black_box(&ap), black_box(&ap))));
}

fn steps_and_oracle(c: &mut Criterion) {
    let ap = SubgroupPosets::new(&fixture("S4"), 2).unwrap().ap;
    c.bench_function("steps on A_2(S4)", |b| b.iter(|| steps_to_contract(black_box(&ap)).unwrap()));
    c.bench_function("oracle on A_2(S4)", |b| b.iter(|| min_changes_oracle(black_box(&ap), 13).unwrap()));
}

fn homology(c: &mut Criterion) {
    let posets = SubgroupPosets::new(&fixture("S5"), 2).unwrap();
    let complex = order_complex(&posets.sp.core().0);
    c.bench_function("homology of core S_2(S5)", |b| b.iter(|| reduced_homology(black_box(&complex)).unwrap()));
}

fn full_reports(c: &mut Criterion) {
    let mut group = c.benchmark_group("analyze");
    group.sample_size(20);
    for name in ["S3wrZ2", "S5", "G576"] {
        let g = fixture(name);
        group.bench_function(name, |b| {
            b.iter(|| analyze_group(name, black_box(&g), 2, &AnalyzeOptions::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, enumeration, cores_and_iso, steps_and_oracle, homology, full_reports);
criterion_main!(benches);
