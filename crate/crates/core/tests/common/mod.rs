//! Shared generators and independent oracles for the integration tests.
//!
//! Everything here stays implementation-independent: the oracles compute
//! their answers by routes the library itself never takes (cofactor
//! determinants, characteristic polynomials via trace recursion, root
//! isolation by derivative interlacing).

#![allow(dead_code)]

use poincare_core::rng::SplitMix64;
use poincare_core::{SymmetricMatrix, VertexSubset, WeightedGraph};

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Random tree on `n` vertices by uniform attachment, weights in
/// [0.1, 10].
pub fn gen_tree(n: usize, rng: &mut SplitMix64) -> WeightedGraph {
    assert!(n >= 2);
    let mut edges = Vec::new();
    for k in 1..n {
        let parent = rng.below(k);
        edges.push((
            format!("v{parent}"),
            format!("v{k}"),
            rng.range_f64(0.1, 10.0),
        ));
    }
    WeightedGraph::from_edges(&edges).unwrap()
}

/// Random connected graph: a random tree plus extra edges with
/// probability `extra`, weights in [0.1, 10].
pub fn gen_connected(n: usize, extra: f64, rng: &mut SplitMix64) -> WeightedGraph {
    assert!(n >= 2);
    let mut present = vec![false; n * n];
    let mut edges = Vec::new();
    for k in 1..n {
        let parent = rng.below(k);
        present[parent * n + k] = true;
        edges.push((
            format!("v{parent}"),
            format!("v{k}"),
            rng.range_f64(0.1, 10.0),
        ));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !present[i * n + j] && !present[j * n + i] && rng.next_f64() < extra {
                edges.push((format!("v{i}"), format!("v{j}"), rng.range_f64(0.1, 10.0)));
            }
        }
    }
    WeightedGraph::from_edges(&edges).unwrap()
}

/// Random nonempty proper subset.
pub fn gen_proper_subset(n: usize, rng: &mut SplitMix64) -> VertexSubset {
    loop {
        let members: Vec<bool> = (0..n).map(|_| rng.next_f64() < 0.5).collect();
        let count = members.iter().filter(|&&b| b).count();
        if count >= 1 && count < n {
            return VertexSubset::new(members);
        }
    }
}

/// Random nonempty proper subset with at most `max_size` members.
pub fn gen_small_subset(n: usize, max_size: usize, rng: &mut SplitMix64) -> VertexSubset {
    let size = 1 + rng.below(max_size.min(n - 1));
    let mut picks = Vec::new();
    while picks.len() < size {
        let v = rng.below(n);
        if !picks.contains(&v) {
            picks.push(v);
        }
    }
    VertexSubset::from_indices(n, &picks)
}

pub fn random_vector(n: usize, lo: f64, hi: f64, rng: &mut SplitMix64) -> Vec<f64> {
    (0..n).map(|_| rng.range_f64(lo, hi)).collect()
}

/// Random SPD matrix `LᵀL + eps·I` with entries of `L` in [-1, 1].
pub fn gen_spd(n: usize, eps: f64, rng: &mut SplitMix64) -> SymmetricMatrix {
    let l: Vec<f64> = (0..n * n).map(|_| rng.range_f64(-1.0, 1.0)).collect();
    SymmetricMatrix::from_fn(n, |i, j| {
        let mut acc = if i == j { eps } else { 0.0 };
        for k in 0..n {
            acc += l[k * n + i] * l[k * n + j];
        }
        acc
    })
}

/// Determinant by cofactor expansion (exponential; fine for n ≤ 8).
pub fn det_cofactor(a: &SymmetricMatrix) -> f64 {
    fn det(rows: &[Vec<f64>]) -> f64 {
        let n = rows.len();
        if n == 1 {
            return rows[0][0];
        }
        let mut acc = 0.0;
        for (j, &head) in rows[0].iter().enumerate() {
            if head == 0.0 {
                continue;
            }
            let minor: Vec<Vec<f64>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * head * det(&minor);
        }
        acc
    }
    let n = a.dim();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j)).collect())
        .collect();
    det(&rows)
}

/// Coefficients of `det(tI - A) = t^n + c[n-1] t^(n-1) + ... + c[0]`
/// by the Faddeev–LeVerrier trace recursion.
pub fn char_poly(a: &SymmetricMatrix) -> Vec<f64> {
    let n = a.dim();
    let get = |m: &Vec<f64>, i: usize, j: usize| m[i * n + j];
    let mul = |x: &Vec<f64>, y: &Vec<f64>| -> Vec<f64> {
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let xik = get(x, i, k);
                if xik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += xik * get(y, k, j);
                }
            }
        }
        out
    };
    let trace = |m: &Vec<f64>| -> f64 { (0..n).map(|i| get(m, i, i)).sum() };

    let a_flat: Vec<f64> = (0..n * n).map(|k| a.get(k / n, k % n)).collect();
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    let mut m = a_flat.clone();
    coeffs[n - 1] = -trace(&m);
    for k in 2..=n {
        // M <- A (M + c_{n-k+1} I)
        let mut shifted = m.clone();
        for i in 0..n {
            shifted[i * n + i] += coeffs[n - k + 1];
        }
        m = mul(&a_flat, &shifted);
        coeffs[n - k] = -trace(&m) / k as f64;
    }
    coeffs
}

pub fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_derivative(coeffs: &[f64]) -> Vec<f64> {
    (1..coeffs.len()).map(|k| coeffs[k] * k as f64).collect()
}

fn bisect(coeffs: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = poly_eval(coeffs, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = poly_eval(coeffs, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// All real roots (with multiplicity, ascending) of a monic real-rooted
/// polynomial, by recursive derivative interlacing: the critical points
/// split the line into monotone pieces, each bisected for at most one
/// root; critical points where the polynomial vanishes carry the
/// multiple roots.
pub fn real_rooted_roots(coeffs: &[f64]) -> Vec<f64> {
    let degree = coeffs.len() - 1;
    assert!(coeffs[degree] == 1.0, "expects a monic polynomial");
    if degree == 0 {
        return Vec::new();
    }
    if degree == 1 {
        return vec![-coeffs[0]];
    }

    // Cauchy bound on root magnitude.
    let bound = 1.0 + coeffs[..degree].iter().fold(0.0f64, |m, &c| m.max(c.abs()));
    let mut dcoeffs = poly_derivative(coeffs);
    let lead = dcoeffs[degree - 1];
    for c in &mut dcoeffs {
        *c /= lead;
    }
    let critical = real_rooted_roots(&dcoeffs);

    let scale = coeffs.iter().fold(0.0f64, |m, &c| m.max(c.abs()));
    let value_tol = 1e-9 * scale.max(1.0);

    let mut cuts = vec![-bound];
    cuts.extend(critical.iter().copied());
    cuts.push(bound);

    // Near a k-fold root the polynomial value rounds to zero across a
    // window of width ~eps^(1/k), so interval bisection can land anywhere
    // inside it. Critical points are pushed first (a double root of p is
    // a simple, well-conditioned root of p') and the dedup radius below
    // swallows the ambiguity window.
    let mut distinct: Vec<f64> = Vec::new();
    let push = |x: f64, distinct: &mut Vec<f64>| {
        if distinct
            .iter()
            .all(|&r| (r - x).abs() > 2e-6 * (1.0 + x.abs()))
        {
            distinct.push(x);
        }
    };
    for &t in &critical {
        if poly_eval(coeffs, t).abs() <= value_tol {
            push(t, &mut distinct);
        }
    }
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi - lo <= 0.0 {
            continue;
        }
        let (flo, fhi) = (poly_eval(coeffs, lo), poly_eval(coeffs, hi));
        if flo == 0.0 {
            push(lo, &mut distinct);
        }
        if (flo > 0.0) != (fhi > 0.0) {
            push(bisect(coeffs, lo, hi), &mut distinct);
        }
    }
    distinct.sort_by(f64::total_cmp);

    // multiplicities from successive derivatives
    let mut out = Vec::new();
    for &root in &distinct {
        let mut mult = 1;
        let mut deriv = poly_derivative(coeffs);
        while mult < degree {
            let dscale = deriv.iter().fold(0.0f64, |m, &c| m.max(c.abs()));
            if poly_eval(&deriv, root).abs() > 1e-7 * dscale.max(1.0) {
                break;
            }
            mult += 1;
            deriv = poly_derivative(&deriv);
        }
        for _ in 0..mult {
            out.push(root);
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

#[cfg(test)]
mod selftest {
    use super::*;

    #[test]
    fn roots_with_multiplicity() {
        // (t - 0)(t - 3)^2 = t^3 - 6 t^2 + 9 t
        let roots = real_rooted_roots(&[0.0, 9.0, -6.0, 1.0]);
        assert_eq!(roots.len(), 3);
        assert!(close(roots[0], 0.0, 1e-10));
        assert!(close(roots[1], 3.0, 1e-8));
        assert!(close(roots[2], 3.0, 1e-8));
    }

    #[test]
    fn char_poly_of_diagonal() {
        let a = SymmetricMatrix::from_fn(2, |i, j| if i == j { [2.0, 5.0][i] } else { 0.0 });
        // (t-2)(t-5) = t^2 - 7t + 10
        let c = char_poly(&a);
        assert!(close(c[0], 10.0, 1e-12));
        assert!(close(c[1], -7.0, 1e-12));
        assert!(close(c[2], 1.0, 1e-12));
    }
}
