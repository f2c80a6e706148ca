//! Seeded generators for field elements, orthonormal systems and operators.
//!
//! Every trial draws from its own ChaCha stream, so results do not depend on
//! how trials are scheduled across threads.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::c0::{OrthoSystem, Vec0};
use crate::field::{FieldElem, Poly, Rat};
use crate::operators::OpSY;

pub type TrialRng = ChaCha8Rng;

/// Independent stream `stream` under `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn small_rat<R: Rng>(rng: &mut R, nonzero: bool) -> Rat {
    loop {
        let n: i64 = rng.gen_range(-4..=4);
        if nonzero && n == 0 {
            continue;
        }
        let d: i64 = if rng.gen_bool(0.25) { rng.gen_range(2..=3) } else { 1 };
        return Rat::new(BigInt::from(n), BigInt::from(d));
    }
}

/// Polynomial with nonzero constant term, degree `<= deg`.
fn unit_poly<R: Rng>(rng: &mut R, deg: usize) -> Poly {
    let mut coeffs = vec![small_rat(rng, true)];
    for _ in 0..rng.gen_range(0..=deg) {
        coeffs.push(small_rat(rng, false));
    }
    Poly::from_coeffs(coeffs)
}

/// A random element of valuation exactly 0.
pub fn unit<R: Rng>(rng: &mut R) -> FieldElem {
    let num = unit_poly(rng, 2);
    if rng.gen_bool(0.3) {
        let den = unit_poly(rng, 1);
        FieldElem::from_fraction(num, den).expect("nonzero constant term")
    } else {
        FieldElem::from_poly(num)
    }
}

/// A random nonzero element with valuation in `vals`.
pub fn nonzero_with_valuation<R: Rng>(rng: &mut R, vals: std::ops::RangeInclusive<i64>) -> FieldElem {
    let v = rng.gen_range(vals);
    &unit(rng) * &FieldElem::t_pow(v)
}

/// A random element, zero with probability `p_zero`.
pub fn elem<R: Rng>(rng: &mut R, p_zero: f64) -> FieldElem {
    if rng.gen_bool(p_zero) {
        FieldElem::zero()
    } else {
        nonzero_with_valuation(rng, -2..=3)
    }
}

/// A random orthonormal system of `rank` members built from disjointly
/// supported blocks: single units `u·eₙ`, and rotation pairs `(a, b)`,
/// `(−b, a)` with `a` a unit and `v(b) >= 0`. Supports are scattered with
/// gaps and the member order is shuffled.
pub fn ortho_system<R: Rng>(rng: &mut R, rank: usize) -> OrthoSystem {
    let mut members = Vec::with_capacity(rank);
    let mut next = 1usize;
    while members.len() < rank {
        next += rng.gen_range(0..=2);
        if rank - members.len() >= 2 && rng.gen_bool(0.5) {
            let a = unit(rng);
            let b = if rng.gen_bool(0.5) {
                nonzero_with_valuation(rng, 0..=2)
            } else {
                unit(rng)
            };
            let (i, j) = (next, next + 1 + rng.gen_range(0..=1));
            members.push(Vec0::from_entries([(i, a.clone()), (j, b.clone())]));
            members.push(Vec0::from_entries([(i, -&b), (j, a)]));
            next = j + 1;
        } else {
            members.push(Vec0::from_entries([(next, unit(rng))]));
            next += 1;
        }
    }
    members.shuffle(rng);
    OrthoSystem::new(members).expect("block construction is orthonormal")
}

/// `count` pairwise distinct nonzero eigenvalues.
pub fn distinct_values<R: Rng>(rng: &mut R, count: usize) -> Vec<FieldElem> {
    let mut out: Vec<FieldElem> = Vec::with_capacity(count);
    while out.len() < count {
        let v = nonzero_with_valuation(rng, -1..=3);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Eigenvalue list realising exactly `points` distinct nonzero values, padded
/// with `extra` positions that repeat a value or are zero, then shuffled.
pub fn eigenvalues<R: Rng>(rng: &mut R, points: usize, extra: usize) -> Vec<FieldElem> {
    let values = distinct_values(rng, points);
    let mut lambda = values.clone();
    for _ in 0..extra {
        if values.is_empty() || rng.gen_bool(0.4) {
            lambda.push(FieldElem::zero());
        } else {
            lambda.push(values[rng.gen_range(0..values.len())].clone());
        }
    }
    lambda.shuffle(rng);
    lambda
}

/// Compact `T` on a fresh random system with the given spectrum shape.
pub fn compact_operator<R: Rng>(rng: &mut R, points: usize, extra: usize) -> OpSY {
    let lambda = eigenvalues(rng, points, extra);
    let sys = Arc::new(ortho_system(rng, lambda.len()));
    OpSY::diagonal(sys, lambda).expect("lengths agree")
}

/// `αI + T_λ` over `sys`. Roughly a third of the draws put `|α|` equal to
/// `‖T_λ‖`, and some of those cancel an eigenvalue exactly (`α = −λᵢ`).
pub fn operator<R: Rng>(rng: &mut R, sys: &Arc<OrthoSystem>) -> OpSY {
    let lambda: Vec<FieldElem> = (0..sys.rank()).map(|_| elem(rng, 0.2)).collect();
    let top = lambda.iter().map(FieldElem::valuation).min();
    let alpha = match (rng.gen_range(0..3), top) {
        (0, Some(crate::field::Valuation::Finite(v))) => {
            let nz: Vec<&FieldElem> = lambda.iter().filter(|l| l.valuation().finite() == Some(v)).collect();
            if rng.gen_bool(0.5) {
                -nz[rng.gen_range(0..nz.len())]
            } else {
                nonzero_with_valuation(rng, v..=v)
            }
        }
        _ => elem(rng, 0.15),
    };
    OpSY::new(Arc::clone(sys), alpha, lambda).expect("lengths agree")
}

/// Coefficients of a random polynomial of degree `<= deg`.
pub fn poly_coeffs<R: Rng>(rng: &mut R, deg: usize) -> Vec<FieldElem> {
    (0..=rng.gen_range(0..=deg)).map(|_| elem(rng, 0.3)).collect()
}

/// A random finitely supported vector with up to `len` coordinates.
pub fn vector<R: Rng>(rng: &mut R, len: usize) -> Vec0 {
    Vec0::from_entries((1..=len).map(|n| (n + rng.gen_range(0..=1), elem(rng, 0.25))))
}
