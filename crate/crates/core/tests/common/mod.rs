//! Shared fixtures for the integration suites: deterministic RNG, random
//! exact scalars and elements, and enumeration of all small systems.
#![allow(dead_code)]

use crossed_core::{CrossedElement, DynSystem, Func, Scalar, UnitScalar};
use itertools::Itertools;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every bijection on {0, .., n-1} for every 1 <= n <= max.
pub fn all_systems(max: usize) -> Vec<DynSystem> {
    let mut out = Vec::new();
    for n in 1..=max {
        for perm in (0..n).permutations(n) {
            out.push(DynSystem::new(perm).expect("permutations are bijective"));
        }
    }
    out
}

/// Small exact scalar; mostly integers so bulk runs stay fast, with
/// fractions and imaginary parts mixed in to keep the arithmetic honest.
pub fn rand_scalar<R: Rng>(rng: &mut R) -> Scalar {
    let re = rng.gen_range(-3i64..=3);
    match rng.gen_range(0u8..6) {
        0 => Scalar::from_ratio(re, rng.gen_range(2i64..=3)),
        1 => Scalar::from_parts(re, 1, rng.gen_range(-2i64..=2), 1),
        2 => Scalar::from_parts(0, 1, rng.gen_range(-3i64..=3), 1),
        _ => Scalar::from_int(re),
    }
}

pub fn rand_nonzero_scalar<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let c = rand_scalar(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn rand_func<R: Rng>(rng: &mut R, size: usize) -> Func {
    Func::from_values((0..size).map(|_| rand_scalar(rng)).collect())
}

/// Sparse random element with at most `max_terms` nonzero coefficients,
/// degrees drawn from [lo, hi].
pub fn rand_element<R: Rng>(
    rng: &mut R,
    size: usize,
    lo: i64,
    hi: i64,
    max_terms: usize,
) -> CrossedElement {
    let mut out = CrossedElement::zero(size);
    let terms = rng.gen_range(1..=max_terms);
    for _ in 0..terms {
        let degree = rng.gen_range(lo..=hi);
        let x = rng.gen_range(0..size);
        let mono = CrossedElement::monomial(degree, Func::point_mass(size, x))
            .scale(&rand_scalar(rng));
        out = &out + &mono;
    }
    out
}

pub fn rand_nonzero_element<R: Rng>(
    rng: &mut R,
    size: usize,
    lo: i64,
    hi: i64,
    max_terms: usize,
) -> CrossedElement {
    loop {
        let f = rand_element(rng, size, lo, hi, max_terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Unit-modulus scalars: the four Gaussian units plus Pythagorean points
/// on the circle and their conjugates.
pub fn unit_samples() -> Vec<UnitScalar> {
    [
        Scalar::from_int(1),
        Scalar::from_int(-1),
        Scalar::from_parts(0, 1, 1, 1),
        Scalar::from_parts(0, 1, -1, 1),
        Scalar::from_parts(3, 5, 4, 5),
        Scalar::from_parts(3, 5, -4, 5),
        Scalar::from_parts(5, 13, 12, 13),
        Scalar::from_parts(-5, 13, 12, 13),
    ]
    .into_iter()
    .map(|s| UnitScalar::new(s).expect("samples lie on the unit circle"))
    .collect()
}
