//! Direct search over the probability simplex with a mass floor.
//!
//! The eigenvalue infima of the variational formulas are approached by
//! degenerating measures, so every search runs on the floored simplex
//! `{ m : m_i ≥ floor, Σ m_i = 1 }` and the caller extrapolates across
//! decreasing floors. Points are parametrized through a softmax over
//! `n - 1` free logits, blended so the floor is respected exactly.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float;
use crate::graph::Measure;
use crate::rng::SplitMix64;

const LOGIT_CAP: f64 = 44.0;
const PAIR_LOGIT: f64 = 8.0;
const MAX_PAIR_STARTS: usize = 16;
const RANDOM_STARTS: usize = 4;

/// Best point found by the multistart search.
#[derive(Debug, Clone)]
pub struct SimplexMinimum {
    pub measure: Measure,
    pub value: f64,
}

struct Parametrization {
    n: usize,
    floor: f64,
}

impl Parametrization {
    fn measure(&self, z: &[f64]) -> Measure {
        let n = self.n;
        debug_assert_eq!(z.len(), n - 1);
        let mut logits = Vec::with_capacity(n);
        for &v in z {
            logits.push(v.clamp(-LOGIT_CAP, LOGIT_CAP));
        }
        logits.push(0.0);
        let top = logits
            .iter()
            .fold(f64::NEG_INFINITY, |a, &b| float::max(a, b));
        let mut weights: Vec<f64> = logits.iter().map(|&v| float::exp(v - top)).collect();
        let sum: f64 = weights.iter().sum();
        let free = 1.0 - self.floor * n as f64;
        for w in &mut weights {
            *w = self.floor + free * (*w / sum);
        }
        Measure::probability(weights).expect("floored softmax stays on the simplex")
    }

    /// Logits reproducing `m` (up to the cap); used to warm-start from a
    /// coarser floor's optimum.
    fn logits(&self, m: &Measure) -> Vec<f64> {
        let n = self.n;
        let free = 1.0 - self.floor * n as f64;
        let s = |i: usize| float::max((m.mass(i) - self.floor) / free, 1e-300);
        let base = float::ln(s(n - 1));
        (0..n - 1)
            .map(|i| (float::ln(s(i)) - base).clamp(-LOGIT_CAP, LOGIT_CAP))
            .collect()
    }
}

/// Multistart Nelder–Mead over the floored simplex.
///
/// Starts: the uniform measure, measures biased toward vertex pairs,
/// random logits drawn from `seed`, plus any `warm_starts` (typically the
/// optimum found at a coarser floor, which makes the best value monotone
/// in the floor). Smallest value wins; ties go to the earliest start.
pub fn minimize_over_simplex<F>(
    objective: F,
    n: usize,
    floor: f64,
    seed: u64,
    warm_starts: &[Measure],
) -> Result<SimplexMinimum>
where
    F: Fn(&Measure) -> Result<f64>,
{
    assert!(n >= 1, "simplex search needs n >= 1");
    assert!(
        (1e-8..=1e-2).contains(&floor),
        "mass floor must lie in [1e-8, 1e-2]"
    );
    assert!(
        (n as f64) * floor < 1.0,
        "mass floor too large for dimension"
    );

    let eval = |m: &Measure| -> Result<f64> {
        let v = objective(m)?;
        if v.is_nan() {
            return Err(Error::ObjectiveNaN);
        }
        Ok(v)
    };

    if n == 1 {
        let m = Measure::probability(vec![1.0])?;
        let value = eval(&m)?;
        return Ok(SimplexMinimum { measure: m, value });
    }

    let par = Parametrization { n, floor };
    let d = n - 1;
    let mut starts: Vec<Vec<f64>> = Vec::new();
    starts.push(vec![0.0; d]);
    for (i, j) in pair_list(n) {
        let mut logits = vec![-PAIR_LOGIT; n];
        logits[i] = 0.0;
        logits[j] = 0.0;
        let base = logits[n - 1];
        starts.push((0..d).map(|k| logits[k] - base).collect());
    }
    let mut rng = SplitMix64::new(seed);
    let n_random = RANDOM_STARTS.max(8usize.saturating_sub(starts.len()));
    for _ in 0..n_random {
        starts.push((0..d).map(|_| rng.range_f64(-4.0, 4.0)).collect());
    }
    for m in warm_starts {
        if m.len() == n {
            starts.push(par.logits(m));
        }
    }

    let mut best: Option<(f64, Vec<f64>)> = None;
    for z0 in &starts {
        let (z, value) = nelder_mead(&par, &eval, z0)?;
        let better = match &best {
            None => true,
            Some((bv, _)) => value < *bv,
        };
        if better {
            best = Some((value, z));
        }
    }
    let (value, z) = best.expect("at least one start");
    Ok(SimplexMinimum {
        measure: par.measure(&z),
        value,
    })
}

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    'outer: for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
            if pairs.len() >= MAX_PAIR_STARTS {
                break 'outer;
            }
        }
    }
    pairs
}

fn nelder_mead<F>(par: &Parametrization, eval: &F, z0: &[f64]) -> Result<(Vec<f64>, f64)>
where
    F: Fn(&Measure) -> Result<f64>,
{
    const ALPHA: f64 = 1.0; // reflection
    const GAMMA: f64 = 2.0; // expansion
    const RHO: f64 = 0.5; // contraction
    const SIGMA: f64 = 0.5; // shrink
    const STEP: f64 = 0.8;

    let d = z0.len();
    let max_iters = 160 + 70 * d;
    let f = |z: &[f64]| -> Result<f64> { eval(&par.measure(z)) };

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(d + 1);
    simplex.push(z0.to_vec());
    for i in 0..d {
        let mut p = z0.to_vec();
        p[i] += STEP;
        simplex.push(p);
    }
    let mut values = Vec::with_capacity(d + 1);
    for p in &simplex {
        values.push(f(p)?);
    }

    for _ in 0..max_iters {
        let mut order: Vec<usize> = (0..=d).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let best = order[0];
        let worst = order[d];
        let second_worst = order[d - 1];

        if values[worst] - values[best] <= 1e-11 * (1.0 + float::abs(values[best])) {
            break;
        }

        let mut centroid = vec![0.0; d];
        for &i in order.iter().take(d) {
            for k in 0..d {
                centroid[k] += simplex[i][k] / d as f64;
            }
        }

        let reflected: Vec<f64> = (0..d)
            .map(|k| centroid[k] + ALPHA * (centroid[k] - simplex[worst][k]))
            .collect();
        let fr = f(&reflected)?;

        if fr < values[best] {
            let expanded: Vec<f64> = (0..d)
                .map(|k| centroid[k] + GAMMA * (reflected[k] - centroid[k]))
                .collect();
            let fe = f(&expanded)?;
            if fe < fr {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
        } else if fr < values[second_worst] {
            simplex[worst] = reflected;
            values[worst] = fr;
        } else {
            let contracted: Vec<f64> = (0..d)
                .map(|k| centroid[k] + RHO * (simplex[worst][k] - centroid[k]))
                .collect();
            let fc = f(&contracted)?;
            if fc < values[worst] {
                simplex[worst] = contracted;
                values[worst] = fc;
            } else {
                let anchor = simplex[best].clone();
                for i in 0..=d {
                    if i == best {
                        continue;
                    }
                    for (zk, &ak) in simplex[i].iter_mut().zip(&anchor) {
                        *zk = ak + SIGMA * (*zk - ak);
                    }
                    values[i] = f(&simplex[i])?;
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..=d {
        if values[i] < values[best] {
            best = i;
        }
    }
    Ok((simplex[best].clone(), values[best]))
}
