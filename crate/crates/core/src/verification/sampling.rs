//! Seeded generation of vector pairs standing in a prescribed
//! (f-)majorization relation.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::majorization::{check_f_majorization, Flavor, MonotoneMap, ParamVector};

/// Random stream for trial `index` of a run seeded with `seed`. Streams are
/// independent of evaluation order, so parallel runs stay reproducible.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Closed box `[lo, hi]` for every coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Box1 {
    pub lo: f64,
    pub hi: f64,
}

impl Box1 {
    pub const PARAMS: Box1 = Box1 { lo: 0.2, hi: 5.0 };

    pub fn sample(&self, rng: &mut impl Rng) -> f64 {
        rng.gen_range(self.lo..=self.hi)
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.lo && v <= self.hi
    }
}

/// `k` random T-transforms (Robin-Hood transfers) of `y`; the result is
/// majorized by `y`.
pub fn majorized_by(y: &[f64], k: usize, rng: &mut impl Rng) -> Vec<f64> {
    let mut u = y.to_vec();
    let n = u.len();
    if n < 2 {
        return u;
    }
    for _ in 0..k {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let t: f64 = rng.gen_range(0.0..=1.0);
        let (a, b) = (u[i], u[j]);
        u[i] = (1.0 - t) * a + t * b;
        u[j] = t * a + (1.0 - t) * b;
    }
    u
}

/// Draws `(below, above)` with `f(below) ≼ f(above)` in `flavor`, both inside
/// `bounds`. Majorized points are built in `f`-space by T-transforms, then
/// shifted up (weak super) or down (weak sub) and mapped back.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairSampler {
    pub map: MonotoneMap,
    pub flavor: Flavor,
    pub bounds: Box1,
    pub max_attempts: usize,
}

impl PairSampler {
    pub fn new(map: MonotoneMap, flavor: Flavor) -> Self {
        PairSampler {
            map,
            flavor,
            bounds: Box1::PARAMS,
            max_attempts: 10_000,
        }
    }

    pub fn sample(&self, dim: usize, rng: &mut impl Rng) -> Option<(Vec<f64>, Vec<f64>)> {
        sample_f_pair(self, dim, rng)
    }
}

pub fn sample_f_pair(s: &PairSampler, dim: usize, rng: &mut impl Rng) -> Option<(Vec<f64>, Vec<f64>)> {
    let f = &s.map;
    for _ in 0..s.max_attempts {
        let above: Vec<f64> = (0..dim).map(|_| s.bounds.sample(rng)).collect();
        let fa: Option<Vec<f64>> = above.iter().map(|&v| f.apply(v).ok()).collect();
        let Some(fa) = fa else { continue };
        let k = rng.gen_range(1..=2 * dim);
        let mut fb = majorized_by(&fa, k, rng);
        if s.flavor != Flavor::Major && rng.gen_bool(0.75) {
            let spread = fa.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - fa.iter().cloned().fold(f64::INFINITY, f64::min);
            let scale = 0.25 * spread.max(0.05 * fa.iter().map(|v| v.abs()).fold(0.0, f64::max));
            let sign = if s.flavor == Flavor::WeakSuper { 1.0 } else { -1.0 };
            for v in fb.iter_mut() {
                *v += sign * scale * rng.gen_range(0.0..=1.0);
            }
        }
        let below: Option<Vec<f64>> = fb.iter().map(|&v| f.inverse(v).ok()).collect();
        let Some(below) = below else { continue };
        if !below.iter().all(|&v| s.bounds.contains(v)) {
            continue;
        }
        let (Ok(b), Ok(a)) = (ParamVector::new(below.clone()), ParamVector::new(above.clone())) else {
            continue;
        };
        if check_f_majorization(&b, &a, f, s.flavor, 1e-12).is_ok_and(|v| v.holds) {
            return Some((below, above));
        }
    }
    None
}
