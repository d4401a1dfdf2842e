#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PREC: usize = 320;
const RM: RoundingMode = RoundingMode::ToEven;

pub fn seeded_values(seed: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn to_f64(v: &BigFloat) -> f64 {
    v.to_string().parse().expect("decimal output of BigFloat")
}

fn big(v: f64) -> BigFloat {
    BigFloat::from_f64(v, PREC)
}

/// Enough bits to resolve `1 - tanh(x)`, which is about `2 e^{-2|x|}`.
fn prec_for(a: f64, b: f64) -> usize {
    PREC + 3 * (a.abs().max(b.abs()) as usize)
}

/// sinh(a)/sinh(b) in 320-bit arithmetic.
pub fn sinh_ratio_ext(a: f64, b: f64) -> f64 {
    let mut cc = Consts::new().unwrap();
    let sa = big(a).sinh(PREC, RM, &mut cc);
    let sb = big(b).sinh(PREC, RM, &mut cc);
    to_f64(&sa.div(&sb, PREC, RM))
}

/// tanh(a) - tanh(b) in 320-bit arithmetic.
pub fn tanh_diff_ext(a: f64, b: f64) -> f64 {
    let p = prec_for(a, b);
    let mut cc = Consts::new().unwrap();
    let ta = BigFloat::from_f64(a, p).tanh(p, RM, &mut cc);
    let tb = BigFloat::from_f64(b, p).tanh(p, RM, &mut cc);
    to_f64(&ta.sub(&tb, p, RM))
}

/// (z cosh z - sinh z) / z^3 in 320-bit arithmetic.
pub fn k3_ext(z: f64) -> f64 {
    let mut cc = Consts::new().unwrap();
    let bz = big(z);
    let num = bz
        .mul(&bz.cosh(PREC, RM, &mut cc), PREC, RM)
        .sub(&bz.sinh(PREC, RM, &mut cc), PREC, RM);
    let z3 = bz.mul(&bz, PREC, RM).mul(&bz, PREC, RM);
    to_f64(&num.div(&z3, PREC, RM))
}

/// Evenly spaced grid of `n` points on `[lo, hi]`.
pub fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Sup norm of `f` over the points.
pub fn sup(points: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    points.iter().fold(0.0, |m, &x| m.max(f(x).abs()))
}
