//! Seeded random draws for the identity checks.
//!
//! All randomness flows through a fixed, portable generator (ChaCha8 keyed by
//! a `u64` seed) so that identical seeds reproduce identical reports on every
//! platform.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::kinematics::{ConstantMatrix, KinematicPoint, NearestNeighborPoint};
use crate::rational::{rat_int, sum_rats, Rat};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational with numerator in `[lo, hi]` and denominator in `[1, max_den]`.
pub fn rand_rat(rng: &mut SeededRng, lo: i64, hi: i64, max_den: i64) -> Rat {
    let num = rng.gen_range(lo..=hi);
    let den = rng.gen_range(1..=max_den);
    Rat::new(num.into(), den.into())
}

/// Nonzero rational in a small box around the origin.
pub fn rand_nonzero_rat(rng: &mut SeededRng) -> Rat {
    loop {
        let r = rand_rat(rng, -12, 12, 8);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Strictly positive rational.
pub fn rand_positive_rat(rng: &mut SeededRng) -> Rat {
    rand_rat(rng, 1, 12, 8)
}

/// Nonnegative rational (zero allowed, for degenerate draws).
pub fn rand_nonneg_rat(rng: &mut SeededRng) -> Rat {
    rand_rat(rng, 0, 12, 8)
}

/// Rational in the closed unit interval.
pub fn rand_unit_rat(rng: &mut SeededRng) -> Rat {
    let den = rng.gen_range(1..=16i64);
    let num = rng.gen_range(0..=den);
    Rat::new(num.into(), den.into())
}

/// Random nonnegative constant matrix (some entries may be zero).
pub fn random_nonneg_constants(n: usize, rng: &mut SeededRng) -> ConstantMatrix {
    let upper: Vec<Rat> = (0..n * (n - 1) / 2).map(|_| rand_nonneg_rat(rng)).collect();
    ConstantMatrix::from_upper(n, &upper).expect("nonnegative by construction")
}

/// Random strictly positive constant matrix.
pub fn random_positive_constants(n: usize, rng: &mut SeededRng) -> ConstantMatrix {
    let upper: Vec<Rat> = (0..n * (n - 1) / 2).map(|_| rand_positive_rat(rng)).collect();
    ConstantMatrix::from_upper(n, &upper).expect("positive by construction")
}

/// Random valid kinematic point: free inner and `a`-row entries, with the
/// last `s_an` solved from the relation `s_{a1...n} = 0`.
pub fn random_kinematic_point(n: usize, rng: &mut SeededRng) -> KinematicPoint {
    let inner: Vec<Rat> = (0..n * (n - 1) / 2).map(|_| rand_rat(rng, -9, 9, 6)).collect();
    let mut s_a: Vec<Rat> = (0..n - 1).map(|_| rand_rat(rng, -9, 9, 6)).collect();
    let fixed = -(sum_rats(inner.iter()) + sum_rats(s_a.iter()));
    s_a.push(fixed);
    KinematicPoint::complete(n, &inner, &s_a).expect("relation solved by construction")
}

/// Random nearest-neighbor point with all adjacent invariants nonzero.
pub fn random_nearest_neighbor(n: usize, rng: &mut SeededRng) -> NearestNeighborPoint {
    let adjacent: Vec<Rat> = (0..n - 2).map(|_| rand_nonzero_rat(rng)).collect();
    NearestNeighborPoint::new(adjacent).expect("n >= 3")
}

/// Strictly decreasing evaluation point `y_1 > y_2 > ... > y_m`: spaced
/// integer parts plus a fractional jitter, which lands inside the dominant
/// Weyl chamber and keeps all pairwise differences nonzero.
pub fn decreasing_point(m: usize, rng: &mut SeededRng) -> Vec<Rat> {
    (0..m)
        .map(|i| {
            let base = rat_int(10 * (m as i64 - i as i64));
            let jitter = Rat::new(rng.gen_range(0..=8i64).into(), 9.into());
            base + jitter
        })
        .collect()
}

/// Generic evaluation point with pairwise-distinct coordinates.
pub fn distinct_point(m: usize, rng: &mut SeededRng) -> Vec<Rat> {
    loop {
        let y: Vec<Rat> = (0..m).map(|_| rand_rat(rng, -20, 20, 8)).collect();
        let mut ok = true;
        'outer: for i in 0..m {
            for j in (i + 1)..m {
                if y[i] == y[j] {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            return y;
        }
    }
}

/// Point with pairwise-distinct nonzero coordinates (discrete transforms).
pub fn distinct_nonzero_point(m: usize, rng: &mut SeededRng) -> Vec<Rat> {
    loop {
        let x = distinct_point(m, rng);
        if x.iter().all(|v| !v.is_zero()) {
            return x;
        }
    }
}

/// Random `q`-vector avoiding `q_i = 1` and all block products equal to 1.
pub fn random_q_point(len: usize, rng: &mut SeededRng) -> Vec<Rat> {
    'draw: loop {
        let q: Vec<Rat> = (0..len)
            .map(|_| {
                loop {
                    let r = rand_rat(rng, -8, 8, 6);
                    if !r.is_one() && !r.is_zero() {
                        break r;
                    }
                }
            })
            .collect();
        for i in 0..len {
            let mut prod = Rat::one();
            for qk in &q[i..] {
                prod *= qk;
                if prod.is_one() {
                    continue 'draw;
                }
            }
        }
        return q;
    }
}

/// Random point on the slice hyperplane `sum x_i = total`.
pub fn random_slice_point(n: usize, total: &Rat, rng: &mut SeededRng) -> Vec<Rat> {
    let mut x: Vec<Rat> = (0..n - 1).map(|_| rand_rat(rng, -15, 15, 6)).collect();
    let last = total - sum_rats(x.iter());
    x.push(last);
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_draws_are_reproducible() {
        let a: Vec<Rat> = {
            let mut r = rng(42);
            (0..10).map(|_| rand_rat(&mut r, -5, 5, 4)).collect()
        };
        let b: Vec<Rat> = {
            let mut r = rng(42);
            (0..10).map(|_| rand_rat(&mut r, -5, 5, 4)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn decreasing_point_is_strictly_decreasing() {
        let mut r = rng(7);
        for m in 2..=8 {
            let y = decreasing_point(m, &mut r);
            for i in 0..m - 1 {
                assert!(y[i] > y[i + 1]);
            }
        }
    }

    #[test]
    fn random_kinematic_points_validate() {
        let mut r = rng(3);
        for n in 2..=6 {
            let p = random_kinematic_point(n, &mut r);
            assert!(p.check_mass_identity());
        }
    }

    #[test]
    fn q_points_avoid_poles() {
        let mut r = rng(11);
        for _ in 0..50 {
            let q = random_q_point(4, &mut r);
            for i in 0..4 {
                let mut prod = Rat::one();
                for qk in &q[i..] {
                    prod *= qk;
                    assert!(!prod.is_one());
                }
            }
        }
    }
}
