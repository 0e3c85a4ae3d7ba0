use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use trop_bench::{frac, generic_poly, poly};
use trop_core::cornerint::{ci_closure, hat, is_corner_integral};
use trop_core::hodecomp::ho_decompose;
use trop_core::kernelalg::{gen_join, gen_meet, member, similar};
use trop_core::skeletons::{corner_locus, skeleton};
use trop_core::KernelGen;

const XY: &[&str] = &["x", "y"];

fn skeletons(c: &mut Criterion) {
    let line = poly("x + y + {0}", XY);
    let f = frac("(x^2 + {1}*y + {-1})/(x*y + {2} + y^-1)", XY);
    let g = generic_poly(8);
    c.bench_function("corner_locus/tropical_line", |b| b.iter(|| corner_locus(black_box(&line))));
    c.bench_function("corner_locus/8_terms", |b| b.iter(|| corner_locus(black_box(&g))));
    c.bench_function("skeleton/fraction", |b| b.iter(|| skeleton(black_box(&f))));
    c.bench_function("hat/tropical_line", |b| b.iter(|| hat(black_box(&line))));
}

fn kernels(c: &mut Criterion) {
    let bounded = frac("min(abs(x), {1})", &["x"]);
    let x = KernelGen::new(frac("x", &["x"]));
    c.bench_function("member/bounded_in_x", |b| b.iter(|| member(black_box(&bounded), &x)));
    let (f, g, h) = (
        KernelGen::new(frac("x + {1}*y", XY)),
        KernelGen::new(frac("x/(y + {0})", XY)),
        KernelGen::new(frac("y^2 + {-1}", XY)),
    );
    c.bench_function("similar/distributive_law", |b| {
        b.iter(|| {
            let l = gen_meet(&gen_join(&f, &h).unwrap(), &gen_join(&g, &h).unwrap()).unwrap();
            let r = gen_join(&gen_meet(&f, &g).unwrap(), &h).unwrap();
            similar(black_box(&l), black_box(&r)).unwrap()
        })
    });
}

fn corner_integrality(c: &mut Criterion) {
    let alpha = frac("((x+{1})*x)/(x+{1})", &["x"]);
    let inv = frac("{0}/(x + y)", XY);
    c.bench_function("ci_check/alpha_example", |b| b.iter(|| is_corner_integral(black_box(&alpha))));
    c.bench_function("ci_closure/inverse_line", |b| b.iter(|| ci_closure(black_box(&inv))));
}

fn decomposition(c: &mut Criterion) {
    let f = frac("x/(y + {0})", XY);
    let bounded = frac("min(abs(x), {1})", XY);
    c.bench_function("ho_decompose/example", |b| b.iter(|| ho_decompose(black_box(&f))));
    c.bench_function("ho_decompose/bounded", |b| b.iter(|| ho_decompose(black_box(&bounded))));
}

criterion_group!(benches, skeletons, kernels, corner_integrality, decomposition);
criterion_main!(benches);
