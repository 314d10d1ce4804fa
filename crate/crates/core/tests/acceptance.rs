//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `--nocapture`). Tolerances are pinned in the
//! assertions; instance generation is seeded and deterministic.

mod common;

use std::time::Instant;

use common::*;
use poincare_core::graph::{variational_seminorm, Family, Measure};
use poincare_core::metrics::{
    diameter, dirichlet_inradius, inradius, path_metric, resistance_metric, restricted_metric,
    sup_restricted_metric,
};
use poincare_core::numerics::{
    active_set_oracle, max_linear_over_nonneg_ellipsoid, symmetric_eigen, SymmetricMatrix,
};
use poincare_core::poincare::{
    best_constant_global, best_constant_omega, extrapolate_across_floors, higher_eigenvalue_bounds,
    infimize_lambda0_omega, infimize_lambda1, verify_theorem, TheoremId, VerifyOptions,
    DEFAULT_FLOORS,
};
use poincare_core::rng::SplitMix64;
use poincare_core::spectral::{neumann_operator, omega_operator};
use poincare_core::{VertexSubset, WeightedGraph};

fn finish(criterion: &str, description: &str, started: Instant, failures: Vec<String>) {
    let secs = started.elapsed().as_secs_f64();
    if failures.is_empty() {
        println!("[{criterion}] PASS ({secs:.1}s) - {description}");
    } else {
        println!("[{criterion}] FAIL ({secs:.1}s) - {description}");
        for f in failures.iter().take(12) {
            println!("    {f}");
        }
        panic!("{criterion}: {} violation(s)", failures.len());
    }
}

fn named_graphs() -> Vec<(String, WeightedGraph)> {
    vec![
        ("P2".into(), Family::Path(2).generate().unwrap()),
        ("P3".into(), Family::Path(3).generate().unwrap()),
        ("K3".into(), Family::Complete(3).generate().unwrap()),
        ("star4".into(), Family::Star(4).generate().unwrap()),
        (
            "comb(2,3)".into(),
            Family::Comb {
                half_width: 2,
                tooth_depth: 3,
            }
            .generate()
            .unwrap(),
        ),
    ]
}

#[test]
fn c1_exact_metric_identities() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut rng = SplitMix64::new(0xC1);

    let mut graphs = named_graphs();
    for t in 0..100 {
        let n = 2 + rng.below(9);
        graphs.push((format!("random{t}"), gen_connected(n, 0.35, &mut rng)));
    }

    for (name, g) in &graphs {
        let n = g.n();
        let d = path_metric(g);
        let r = resistance_metric(g).unwrap();

        let mut tables = vec![("d", d), ("r", r)];
        for k in 0..2 {
            let omega = gen_proper_subset(n, &mut rng);
            let ro = restricted_metric(g, &omega).unwrap();
            tables.push(if k == 0 {
                ("r_omega_a", ro)
            } else {
                ("r_omega_b", ro)
            });
        }

        // domination chain r_omega <= r <= d
        let (d, r) = (&tables[0].1, &tables[1].1);
        for i in 0..n {
            for j in 0..n {
                if r.get(i, j) > d.get(i, j) + 1e-9 {
                    failures.push(format!("{name}: r > d at ({i},{j})"));
                }
            }
        }
        for (label, ro) in tables.iter().skip(2) {
            for i in 0..n {
                for j in 0..n {
                    if ro.get(i, j) > r.get(i, j) + 1e-9 {
                        failures.push(format!("{name}: {label} > r at ({i},{j})"));
                    }
                }
            }
        }

        // triangle inequality on every triple for d, r, r_omega
        for (label, pm) in &tables {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if pm.get(x, z) > pm.get(x, y) + pm.get(y, z) + 1e-9 {
                            failures.push(format!(
                                "{name}: {label} triangle violated at ({x},{y},{z})"
                            ));
                        }
                    }
                }
            }
        }

        // r' = r entrywise
        let rp = sup_restricted_metric(g).unwrap();
        for i in 0..n {
            for j in 0..n {
                let gap = (rp.get(i, j) - tables[1].1.get(i, j)).abs();
                if gap > 1e-6 {
                    failures.push(format!("{name}: |r' - r| = {gap:e} at ({i},{j})"));
                }
            }
        }
    }

    assert!(
        started.elapsed().as_secs_f64() < 60.0,
        "criterion 1 runtime"
    );
    finish(
        "criterion 1",
        "metric identities: r_omega <= r <= d, triangles, r' = r",
        started,
        failures,
    );
}

#[test]
fn c2_char_inradius_identity() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut rng = SplitMix64::new(0xC2);

    for t in 0..50 {
        let n = 3 + rng.below(8);
        let g = gen_connected(n, 0.35, &mut rng);
        let omega = gen_small_subset(n, 8.min(n - 1), &mut rng);
        let rm = restricted_metric(&g, &omega).unwrap();

        // oracle-verified QPs: every entry against the exhaustive
        // active-set search
        let members = omega.indices();
        let q = g.laplacian().principal_submatrix(&members);
        let mut pos = vec![None; n];
        for (k, &i) in members.iter().enumerate() {
            pos[i] = Some(k);
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if pos[x].is_none() && pos[y].is_none() {
                    continue;
                }
                let mut c = vec![0.0; members.len()];
                if let Some(p) = pos[x] {
                    c[p] += 1.0;
                }
                if let Some(p) = pos[y] {
                    c[p] -= 1.0;
                }
                let plus = active_set_oracle(&q, &c).unwrap();
                for v in &mut c {
                    *v = -*v;
                }
                let minus = active_set_oracle(&q, &c).unwrap();
                let oracle = plus.max(minus).powi(2);
                let got = rm.get(x, y);
                if (got - oracle).abs() > 1e-6 * (1.0 + oracle) {
                    failures.push(format!(
                        "instance {t}: QP {got} vs oracle {oracle} at ({x},{y})"
                    ));
                }
            }
        }

        let diam = diameter(&rm);
        let inr = inradius(&rm, &omega).unwrap();
        if (diam - inr).abs() > 1e-8 {
            failures.push(format!(
                "instance {t}: diam {diam} vs inradius {inr} (|Omega| = {})",
                omega.count()
            ));
        }
        if let Err(e) = best_constant_omega(&g, &omega) {
            failures.push(format!("instance {t}: best_constant_omega errored: {e}"));
        }
    }

    assert!(
        started.elapsed().as_secs_f64() < 120.0,
        "criterion 2 runtime"
    );
    finish(
        "criterion 2",
        "diam_{r_omega}(X) = Inr_{r_omega}(Omega) at 1e-8, QPs oracle-verified",
        started,
        failures,
    );
}

#[test]
fn c3_variational_formula_lambda1() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut rng = SplitMix64::new(0xC3);

    let mut instances: Vec<(String, WeightedGraph)> = named_graphs()
        .into_iter()
        .filter(|(name, _)| name != "comb(2,3)")
        .collect();
    for t in 0..10 {
        let n = 3 + rng.below(6);
        instances.push((format!("tree{t}"), gen_tree(n, &mut rng)));
    }

    for (name, g) in &instances {
        let c_p = best_constant_global(g).unwrap();
        let runs = infimize_lambda1(g, &DEFAULT_FLOORS, 0xC3).unwrap();
        let pts: Vec<(f64, f64)> = runs.iter().map(|r| (r.floor, r.value)).collect();
        let inf = extrapolate_across_floors(&pts);
        let product = inf * c_p;
        if (product - 4.0).abs() > 0.02 * 4.0 {
            failures.push(format!(
                "{name}: extrapolated inf lambda_1 * c_P = {product} (c_P = {c_p})"
            ));
        }
    }

    assert!(
        started.elapsed().as_secs_f64() < 300.0,
        "criterion 3 runtime"
    );
    finish(
        "criterion 3",
        "inf_m lambda_1 * c_P = 4 within 2% (P2, P3, K3, star4, 10 random trees)",
        started,
        failures,
    );
}

#[test]
fn c4_variational_formula_lambda0_omega() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut rng = SplitMix64::new(0xC2); // criterion-2 instance stream

    for t in 0..50 {
        let n = 3 + rng.below(8);
        let g = gen_connected(n, 0.35, &mut rng);
        let omega = gen_small_subset(n, 8.min(n - 1), &mut rng);
        if omega.count() > 5 {
            continue;
        }
        let c = best_constant_omega(&g, &omega).unwrap();
        let runs = infimize_lambda0_omega(&g, &omega, &DEFAULT_FLOORS, 0xC4).unwrap();
        let pts: Vec<(f64, f64)> = runs.iter().map(|r| (r.floor, r.value)).collect();
        let inf = extrapolate_across_floors(&pts);
        let product = inf * c;
        let tol = if omega.count() == 1 { 1e-10 } else { 0.02 };
        if (product - 1.0).abs() > tol {
            failures.push(format!(
                "instance {t}: inf lambda_0 * c_P^Omega = {product} (|Omega| = {})",
                omega.count()
            ));
        }
    }

    // the zero-dimensional closed form on P3: lambda_0 * c_P^Omega = 2 * 1/2
    let p3 = Family::Path(3).generate().unwrap();
    let mid = p3.subset_from_labels(&["v1"]).unwrap();
    let c = best_constant_omega(&p3, &mid).unwrap();
    let runs = infimize_lambda0_omega(&p3, &mid, &DEFAULT_FLOORS, 0).unwrap();
    let product = runs.last().unwrap().value * c;
    if (product - 1.0).abs() > 1e-10 {
        failures.push(format!("P3 singleton: product = {product}"));
    }

    finish(
        "criterion 4",
        "inf lambda_0(H^Omega) * c_P^Omega = 1 within 2% (exact at |Omega| = 1)",
        started,
        failures,
    );
}

#[test]
fn c5_eigenvalue_lower_bounds() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut rng = SplitMix64::new(0xC5);

    for t in 0..200 {
        let n = 2 + rng.below(9);
        let g = gen_connected(n, 0.35, &mut rng);
        let lambda1 = neumann_operator(&g, &Measure::uniform(n))
            .unwrap()
            .eigenvalue(1)
            .unwrap();
        let bound = 4.0 / diameter(&path_metric(&g));
        if lambda1 < bound - 1e-9 {
            failures.push(format!(
                "textbook bound violated on instance {t}: {lambda1} < {bound}"
            ));
        }
    }

    for t in 0..200 {
        let n = 3 + rng.below(8);
        let g = gen_connected(n, 0.35, &mut rng);
        let omega = gen_proper_subset(n, &mut rng);
        let masses = vec![1.0 / n as f64; omega.count()];
        let lambda_omega = omega_operator(&g, &omega, &Measure::finite(masses).unwrap())
            .unwrap()
            .eigenvalue(0)
            .unwrap();
        let inr = inradius(&path_metric(&g), &omega).unwrap();
        let bound = 1.0 / (inr * omega.count() as f64 / n as f64);
        if lambda_omega < bound - 1e-9 {
            failures.push(format!(
                "finite-measure bound violated on instance {t}: {lambda_omega} < {bound}"
            ));
        }
    }

    finish(
        "criterion 5",
        "lambda_1 >= 4/diam_d and lambda_Omega >= 1/(Inr_d(Omega) m(Omega)), 200 instances each",
        started,
        failures,
    );
}

#[test]
fn c6_higher_eigenvalue_bounds() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut rng = SplitMix64::new(0xC6);

    for t in 0..50 {
        let n = 3 + rng.below(6);
        let g = gen_connected(n, 0.35, &mut rng);
        let uniform = Measure::uniform(n);
        for mask in 1u32..(1u32 << n) {
            let size = mask.count_ones() as usize;
            if size > 3 || size + 1 >= n {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let f_set = VertexSubset::from_indices(n, &members);
            match higher_eigenvalue_bounds(&g, &uniform, &f_set) {
                Ok(report) => {
                    if !report.pass {
                        failures.push(format!(
                            "instance {t}, F = {members:?}: residual {:e}",
                            report.residual
                        ));
                    }
                }
                Err(e) => failures.push(format!("instance {t}, F = {members:?}: {e}")),
            }
        }
    }

    // the K3 equality instance: lambda_2 = 4 / (c_P m(X \ F)) = 9
    let k3 = Family::Complete(3).generate().unwrap();
    let lambda2 = neumann_operator(&k3, &Measure::uniform(3))
        .unwrap()
        .eigenvalue(2)
        .unwrap();
    let c_p = best_constant_global(&k3).unwrap();
    let bound_a = 4.0 / (c_p * (2.0 / 3.0));
    if (lambda2 - bound_a).abs() > 1e-8 || (lambda2 - 9.0).abs() > 1e-8 {
        failures.push(format!(
            "K3 equality: lambda_2 = {lambda2}, bound = {bound_a}"
        ));
    }

    finish(
        "criterion 6",
        "higher-eigenvalue bounds for all |F| <= 3 on 50 random graphs",
        started,
        failures,
    );
}

#[test]
fn c7_zero_mean_quarter_inequality() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut rng = SplitMix64::new(0xC7);

    for t in 0..10_000 {
        let n = 2 + rng.below(9);
        let m = Measure::normalized(random_vector(n, 0.05, 1.0, &mut rng)).unwrap();
        let mut f = random_vector(n, -1.0, 1.0, &mut rng);
        let mean = m.mean(&f);
        for v in &mut f {
            *v -= mean;
        }
        let vs = variational_seminorm(&f);
        if m.norm2_sq(&f) > 0.25 * vs * vs + 1e-12 {
            failures.push(format!("sample {t}: quarter bound violated"));
        }
    }

    // sharpness: f attains +-S; the two-point 1/2-1/2 measure on the
    // extremizers gives equality exactly
    for t in 0..100 {
        let n = 2 + rng.below(9);
        let s = rng.range_f64(0.25, 3.0);
        let mut f = random_vector(n, -0.9, 0.9, &mut rng);
        for v in &mut f {
            *v *= s;
        }
        let hi = rng.below(n);
        let mut lo = rng.below(n);
        if lo == hi {
            lo = (lo + 1) % n;
        }
        f[hi] = s;
        f[lo] = -s;
        let two_point = 0.5 * f[hi] * f[hi] + 0.5 * f[lo] * f[lo];
        let vs = variational_seminorm(&f);
        if (two_point - 0.25 * vs * vs).abs() > 1e-12 {
            failures.push(format!("sharpness {t}: |lhs - rhs| > 1e-12"));
        }
    }

    // and through the reporting path
    let g = Family::Path(5).generate().unwrap();
    let report = verify_theorem(
        &g,
        TheoremId::QuarterInequality,
        &VerifyOptions {
            samples: 10_000,
            ..VerifyOptions::default()
        },
    )
    .unwrap();
    if !report.pass {
        failures.push("verify_theorem(quarter-inequality) failed".into());
    }

    finish(
        "criterion 7",
        "zero-mean quarter inequality on 10^4 samples, sharpness at 1e-12",
        started,
        failures,
    );
}

#[test]
fn c8_comb_example() {
    let started = Instant::now();
    let mut failures = Vec::new();

    for half_width in 3..=8usize {
        let host = Family::Comb {
            half_width,
            tooth_depth: 10,
        }
        .generate()
        .unwrap();
        let n = host.n();
        let d = path_metric(&host);

        // every full tooth column has d-inradius at most 2
        let w = half_width as i64;
        for i in -w..=w {
            let column: Vec<usize> = (0..=10)
                .map(|k| host.index_of(&format!("{i}_{k}")).unwrap())
                .collect();
            let omega = VertexSubset::from_indices(n, &column);
            let inr = dirichlet_inradius(&host, &omega).unwrap();
            if inr > 2.0 {
                failures.push(format!(
                    "comb({half_width},10): column {i} inradius {inr} > 2"
                ));
            }
        }

        // while the diameter grows at least linearly in the half-width
        let diam = diameter(&d);
        if diam < half_width as f64 {
            failures.push(format!("comb({half_width},10): diam {diam} < {half_width}"));
        }

        // combs are trees: r = d entrywise
        let r = resistance_metric(&host).unwrap();
        for i in 0..n {
            for j in (i + 1)..n {
                if (r.get(i, j) - d.get(i, j)).abs() > 1e-9 {
                    failures.push(format!(
                        "comb({half_width},10): |r - d| > 1e-9 at ({i},{j})"
                    ));
                }
            }
        }
    }

    finish(
        "criterion 8",
        "comb truncations: tooth-column inradius <= 2, diam >= N, r = d",
        started,
        failures,
    );
}

#[test]
fn c9_numeric_kernels() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut rng = SplitMix64::new(0xC9);

    // QP against the exhaustive oracle on 500 random SPD instances
    for t in 0..500 {
        let n = 1 + rng.below(8);
        let q = gen_spd(n, 0.1, &mut rng);
        let c = random_vector(n, -1.0, 1.0, &mut rng);
        let got = max_linear_over_nonneg_ellipsoid(&q, &c).unwrap().value;
        let oracle = active_set_oracle(&q, &c).unwrap();
        if (got - oracle).abs() > 1e-6 * (1.0 + oracle) {
            failures.push(format!("QP instance {t}: {got} vs oracle {oracle}"));
        }
    }

    // Jacobi eigenvalues against characteristic-polynomial roots
    let mut eigen_cases: Vec<SymmetricMatrix> = vec![
        SymmetricMatrix::from_fn(3, |i, j| if i == j { [3.0, 1.0, 2.0][i] } else { 0.0 }),
        SymmetricMatrix::zeros(2),
        // K3 Laplacian: roots 0, 3, 3 (double)
        SymmetricMatrix::from_fn(3, |i, j| if i == j { 2.0 } else { -1.0 }),
        // P4 Laplacian
        Family::Path(4).generate().unwrap().laplacian(),
        SymmetricMatrix::new(2, vec![2.0, -1.0, -1.0, 2.0]).unwrap(),
    ];
    for _ in 0..200 {
        let n = 1 + rng.below(4);
        let data: Vec<f64> = (0..n * n).map(|_| rng.range_f64(-3.0, 3.0)).collect();
        eigen_cases.push(SymmetricMatrix::from_fn(n, |i, j| {
            0.5 * (data[i * n + j] + data[j * n + i])
        }));
    }
    for (t, a) in eigen_cases.iter().enumerate() {
        let n = a.dim();
        let jacobi = symmetric_eigen(a).unwrap();
        let coeffs = char_poly(a);
        let roots = real_rooted_roots(&coeffs);
        if roots.len() != n {
            failures.push(format!(
                "eigen case {t}: oracle found {} roots for n = {n}",
                roots.len()
            ));
            continue;
        }
        let scale = a.frobenius_norm().max(1.0);
        for (k, &root) in roots.iter().enumerate() {
            let lambda = jacobi.eigenvalue(k).unwrap();
            if (lambda - root).abs() > 1e-10 * scale {
                failures.push(format!(
                    "eigen case {t}: lambda_{k} = {lambda} vs root {root}"
                ));
            }
        }
        // multiset certificate: elementary symmetric functions of the
        // Jacobi spectrum must reproduce the characteristic coefficients
        let mut poly = vec![1.0];
        for k in 0..n {
            let lambda = jacobi.eigenvalue(k).unwrap();
            let mut next = vec![0.0; poly.len() + 1];
            for (p, &cf) in poly.iter().enumerate() {
                next[p + 1] += cf;
                next[p] -= cf * lambda;
            }
            poly = next;
        }
        let cscale = coeffs.iter().fold(1.0f64, |m, &c| m.max(c.abs()));
        for (k, (&got, &want)) in poly.iter().zip(&coeffs).enumerate() {
            if (got - want).abs() > 1e-10 * cscale {
                failures.push(format!("eigen case {t}: coefficient {k}: {got} vs {want}"));
            }
        }
    }

    finish(
        "criterion 9",
        "QP = oracle at 1e-6 (500 SPD instances); Jacobi = char-poly roots at 1e-10",
        started,
        failures,
    );
}
