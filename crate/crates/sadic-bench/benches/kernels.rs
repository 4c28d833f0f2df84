use criterion::{black_box, criterion_group, criterion_main, Criterion};

use sadic::directive::DirectiveSequence;
use sadic::dynamics::{lyapunov, lyapunov_periodic};
use sadic::mcf::{CellLabel, MCFAlgorithm};
use sadic::rauzy::{cloud, CloudOptions};
use sadic::simplex::SimplexPoint;
use sadic::spectral::{bpa_run, char_poly, pisot_certify, tijdeman_word};
use sadic::substitution::{cs_tau, d_bonacci, gamma1, gamma2};

fn bench_expansion(c: &mut Criterion) {
    let cs = MCFAlgorithm::cassaigne_selmer();
    let x = SimplexPoint::parse("314159/1000000,271828/1000000,414013/1000000", 256).unwrap();
    c.bench_function("cs_expand_rational_50", |b| {
        b.iter(|| black_box(cs.expand(black_box(&x), 50)))
    });
    let xf = [0.31, 0.27, 0.42];
    c.bench_function("cs_step_f64_1000", |b| {
        b.iter(|| {
            let mut y = xf;
            for _ in 0..1000 {
                cs.step_f64_in_place(&mut y).unwrap();
            }
            black_box(y)
        })
    });
}

fn bench_bpa(c: &mut Criterion) {
    let tau = cs_tau();
    let trib4 = d_bonacci(4);
    c.bench_function("bpa_tau", |b| {
        b.iter(|| black_box(bpa_run(&tau, 10_000, 1_000)))
    });
    c.bench_function("bpa_dbonacci4", |b| {
        b.iter(|| black_box(bpa_run(&trib4, 10_000, 1_000)))
    });
}

fn bench_cloud(c: &mut Criterion) {
    c.bench_function("cloud_tau_30k_points", |b| {
        b.iter(|| {
            let seq = DirectiveSequence::periodic(vec![gamma1(), gamma2()]).unwrap();
            black_box(
                cloud(&seq, 36, 1, &CloudOptions::default())
                    .unwrap()
                    .points
                    .len(),
            )
        })
    });
}

fn bench_language(c: &mut Criterion) {
    c.bench_function("language_tau_n12", |b| {
        b.iter(|| {
            let seq = DirectiveSequence::periodic(vec![gamma1(), gamma2()]).unwrap();
            black_box(seq.saturated_language(12, 60).unwrap().complexities())
        })
    });
}

fn bench_lyapunov(c: &mut Criterion) {
    let cs = MCFAlgorithm::cassaigne_selmer();
    c.bench_function("lyapunov_periodic_cs", |b| {
        b.iter(|| {
            black_box(lyapunov_periodic(
                &cs,
                &[CellLabel::Cs(1), CellLabel::Cs(2)],
            ))
        })
    });
    c.bench_function("lyapunov_mc_cs_4x5000", |b| {
        b.iter(|| black_box(lyapunov(&cs, 5_000, 4, 7).unwrap().theta1))
    });
}

fn bench_spectral(c: &mut Criterion) {
    let m = cs_tau();
    c.bench_function("pisot_certify_tau", |b| {
        b.iter(|| black_box(pisot_certify(&char_poly(m.incidence())).unwrap().is_pisot))
    });
    c.bench_function("tijdeman_20_17_13", |b| {
        b.iter(|| black_box(tijdeman_word(&[20, 17, 13]).unwrap()))
    });
}

criterion_group!(
    benches,
    bench_expansion,
    bench_bpa,
    bench_cloud,
    bench_language,
    bench_lyapunov,
    bench_spectral
);
criterion_main!(benches);
