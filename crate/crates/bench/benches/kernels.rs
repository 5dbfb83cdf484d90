use criterion::{criterion_group, criterion_main, Criterion};
use levinson_core::levinson::r_tau;
use levinson_core::xray::{grid_eval, XRayParams};
use levinson_core::{c, gauss_fourier, mordell, special, FuncId, QuadConfig, ReducedRational, TauParam, Window};
use std::hint::black_box;

fn special_functions(cr: &mut Criterion) {
    cr.bench_function("log_gamma", |b| b.iter(|| special::log_gamma(black_box(c(0.25, 50.0)))));
    cr.bench_function("zeta t=100", |b| b.iter(|| special::zeta(black_box(c(0.5, 100.0)))));
    cr.bench_function("hardy_z t=50", |b| b.iter(|| special::hardy_z(black_box(50.0))));
}

fn r_tau_kernels(cr: &mut Criterion) {
    let q = QuadConfig::default();
    let s = c(0.5, 30.0);
    for (name, tau) in [
        ("r_tau -1", TauParam::rational(-1, 1).unwrap()),
        ("r_tau -3/2", TauParam::rational(-3, 2).unwrap()),
        ("r_tau 2i", TauParam::upper(c(0.0, 2.0)).unwrap()),
    ] {
        cr.bench_function(name, |b| b.iter(|| r_tau(black_box(s), &tau, &q)));
    }
}

fn mordell_kernels(cr: &mut Criterion) {
    let q = QuadConfig::default();
    cr.bench_function("phi quadrature", |b| b.iter(|| mordell::phi(black_box(c(0.3, 0.2)), c(0.5, 1.0), &q)));
    cr.bench_function("phi closed form -3/2", |b| b.iter(|| mordell::phi_rational_neg(black_box(c(0.3, 0.2)), 3, 2)));
}

fn gauss_kernels(cr: &mut Criterion) {
    let tau = ReducedRational::new(-7, 12).unwrap();
    cr.bench_function("v_table -7/12", |b| b.iter(|| gauss_fourier::v_table(black_box(tau))));
    cr.bench_function("gauss_sum 5/97", |b| b.iter(|| gauss_fourier::gauss_sum_classify(black_box(5), 97)));
}

fn xray_grid(cr: &mut Criterion) {
    let params = XRayParams { tau: Some(TauParam::rational(-1, 1).unwrap()), ..Default::default() };
    let window = Window::new(-20.0, 50.0, 0.0, 140.0, 20, 40).unwrap();
    let mut g = cr.benchmark_group("xray");
    g.sample_size(10);
    g.bench_function("h_rtau 20x40", |b| b.iter(|| grid_eval(FuncId::HRtau, &params, &window, true)));
    g.finish();
}

criterion_group!(benches, special_functions, r_tau_kernels, mordell_kernels, gauss_kernels, xray_grid);
criterion_main!(benches);
