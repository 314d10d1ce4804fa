//! The pseudometrics `d`, `r`, `r_Ω`, `r'` and the geometric quantities
//! they induce.
//!
//! * `d` — path metric: infimum over paths of `Σ 1/b` along traversed
//!   edges (all-pairs Dijkstra).
//! * `r` — resistance metric: the smallest pseudometric with
//!   `|f(x)-f(y)|² ≤ r(x,y) E(f)`; on a finite connected graph this is the
//!   effective resistance `(e_x - e_y)ᵀ L⁺ (e_x - e_y)`, computed here by
//!   grounding one vertex and reusing a single Cholesky factorization.
//! * `r_Ω` — restricted metric over nonnegative functions supported in a
//!   proper subset `Ω`; each entry is a small constrained QP on the
//!   Laplacian block `L[Ω,Ω]`.
//! * `r'` — supremum of `r_Ω` over proper `Ω`; by monotonicity in `Ω` it
//!   suffices to scan the `n` maximal subsets `X ∖ {p}`.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::float;
use crate::graph::{VertexSubset, WeightedGraph};
use crate::numerics::{max_linear_over_nonneg_ellipsoid, solve_spd};

/// Which pseudometric a distance table represents.
#[derive(Debug, Clone, PartialEq)]
pub enum MetricKind {
    Path,
    Resistance,
    RestrictedOmega(VertexSubset),
    SupRestricted,
}

/// All-pairs distance table. Symmetric with zero diagonal by storage:
/// only the strict upper triangle is kept.
#[derive(Debug, Clone)]
pub struct PseudometricMatrix {
    kind: MetricKind,
    n: usize,
    upper: Vec<f64>,
}

impl PseudometricMatrix {
    fn zeros(kind: MetricKind, n: usize) -> Self {
        Self {
            kind,
            n,
            upper: vec![0.0; n * (n - 1) / 2],
        }
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j);
        i * self.n - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn kind(&self) -> &MetricKind {
        &self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            0.0
        } else {
            let (a, b) = (i.min(j), i.max(j));
            self.upper[self.slot(a, b)]
        }
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        let (a, b) = (i.min(j), i.max(j));
        let k = self.slot(a, b);
        self.upper[k] = v;
    }

    /// Largest entry, `sup_{x,y} δ(x,y)`.
    pub fn max_entry(&self) -> f64 {
        self.upper.iter().fold(0.0, |acc, &v| float::max(acc, v))
    }
}

#[derive(PartialEq)]
struct HeapItem {
    dist: f64,
    vertex: usize,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        // reversed: BinaryHeap is a max-heap, we want the closest vertex
        other.dist.total_cmp(&self.dist)
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn dijkstra(g: &WeightedGraph, source: usize) -> Vec<f64> {
    let n = g.n();
    let mut dist = vec![f64::INFINITY; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(HeapItem {
        dist: 0.0,
        vertex: source,
    });
    while let Some(HeapItem { dist: c, vertex: v }) = heap.pop() {
        if c > dist[v] {
            continue;
        }
        for &(u, w) in g.neighbors(v) {
            let next = c + 1.0 / w;
            if next < dist[u] {
                dist[u] = next;
                heap.push(HeapItem {
                    dist: next,
                    vertex: u,
                });
            }
        }
    }
    dist
}

/// Path pseudometric `d`: all-pairs shortest paths under edge length `1/b`.
pub fn path_metric(g: &WeightedGraph) -> PseudometricMatrix {
    let n = g.n();
    let mut pm = PseudometricMatrix::zeros(MetricKind::Path, n);
    for s in 0..n {
        let dist = dijkstra(g, s);
        for (v, &dv) in dist.iter().enumerate().skip(s + 1) {
            pm.set(s, v, dv);
        }
    }
    pm
}

/// Potential `f` with `L f = e_source - e_sink` and `f = 0` at the
/// grounded vertex 0. Differences of `f` and `E(f)` are what the
/// resistance metric sees, so the grounding constant is immaterial;
/// in particular `f(source) - f(sink) = r(source, sink)`.
pub fn resistance_potential(g: &WeightedGraph, source: usize, sink: usize) -> Result<Vec<f64>> {
    let n = g.n();
    let grounded = g
        .laplacian()
        .principal_submatrix(&(1..n).collect::<Vec<_>>());
    let mut rhs = vec![0.0; n - 1];
    if source > 0 {
        rhs[source - 1] += 1.0;
    }
    if sink > 0 {
        rhs[sink - 1] -= 1.0;
    }
    let u = solve_spd(&grounded, &rhs)?;
    let mut f = vec![0.0; n];
    f[1..].copy_from_slice(&u);
    Ok(f)
}

/// Resistance metric `r(x,y) = (e_x - e_y)ᵀ L⁺ (e_x - e_y)`.
///
/// Grounds vertex 0, factors the remaining SPD block once, solves for
/// every unit source, and assembles all pairs from the grounded inverse.
pub fn resistance_metric(g: &WeightedGraph) -> Result<PseudometricMatrix> {
    let n = g.n();
    let idx: Vec<usize> = (1..n).collect();
    let grounded = g.laplacian().principal_submatrix(&idx);
    let chol = grounded.cholesky()?;

    // columns of the grounded inverse
    let mut inv = Vec::with_capacity(n - 1);
    for k in 0..(n - 1) {
        let mut rhs = vec![0.0; n - 1];
        rhs[k] = 1.0;
        inv.push(chol.solve_refined(&grounded, &rhs));
    }

    let mut pm = PseudometricMatrix::zeros(MetricKind::Resistance, n);
    for j in 1..n {
        pm.set(0, j, inv[j - 1][j - 1]);
    }
    for i in 1..n {
        for j in (i + 1)..n {
            let v = inv[i - 1][i - 1] + inv[j - 1][j - 1] - 2.0 * inv[i - 1][j - 1];
            pm.set(i, j, v);
        }
    }
    Ok(pm)
}

/// Restricted metric
/// `r_Ω(x,y) = sup { |f(x)-f(y)|² : f ≥ 0, supp f ⊆ Ω, E(f) ≤ 1 }`.
///
/// Each pair solves the ellipsoid QP on `Q = L[Ω,Ω]` twice (the linear
/// functional and its negation, since the definition takes an absolute
/// value) and squares the better optimum. Pairs with both endpoints
/// outside `Ω` are zero.
pub fn restricted_metric(g: &WeightedGraph, omega: &VertexSubset) -> Result<PseudometricMatrix> {
    omega.require_nonempty_proper(g.n())?;
    let n = g.n();
    let members = omega.indices();
    let q = g.laplacian().principal_submatrix(&members);
    let mut pos = vec![None; n];
    for (k, &i) in members.iter().enumerate() {
        pos[i] = Some(k);
    }

    let mut pm = PseudometricMatrix::zeros(MetricKind::RestrictedOmega(omega.clone()), n);
    let k = members.len();
    for x in 0..n {
        for y in (x + 1)..n {
            if pos[x].is_none() && pos[y].is_none() {
                continue;
            }
            let mut c = vec![0.0; k];
            if let Some(px) = pos[x] {
                c[px] += 1.0;
            }
            if let Some(py) = pos[y] {
                c[py] -= 1.0;
            }
            let plus = max_linear_over_nonneg_ellipsoid(&q, &c)?.value;
            for v in &mut c {
                *v = -*v;
            }
            let minus = max_linear_over_nonneg_ellipsoid(&q, &c)?.value;
            let best = float::max(plus, minus);
            pm.set(x, y, best * best);
        }
    }
    Ok(pm)
}

/// `r' = sup over proper Ω of r_Ω`. Monotonicity of `r_Ω` in `Ω` reduces
/// the supremum to the `n` maximal proper subsets `X ∖ {p}`.
pub fn sup_restricted_metric(g: &WeightedGraph) -> Result<PseudometricMatrix> {
    let n = g.n();
    let mut pm = PseudometricMatrix::zeros(MetricKind::SupRestricted, n);
    for p in 0..n {
        let members: Vec<usize> = (0..n).filter(|&i| i != p).collect();
        let omega = VertexSubset::from_indices(n, &members);
        let rm = restricted_metric(g, &omega)?;
        for i in 0..n {
            for j in (i + 1)..n {
                pm.set(i, j, float::max(pm.get(i, j), rm.get(i, j)));
            }
        }
    }
    Ok(pm)
}

/// `diam(X) = sup_{x,y} δ(x,y)`.
pub fn diameter(pm: &PseudometricMatrix) -> f64 {
    pm.max_entry()
}

/// Inradius `Inr(Ω) = sup { s > 0 : ∃ x ∈ Ω with U_s(x) ⊆ Ω }`.
///
/// The open ball `U_s(x)` stays inside `Ω` exactly for
/// `s ≤ min_{y ∉ Ω} δ(x,y)`, so the supremum collapses to a max-min.
pub fn inradius(pm: &PseudometricMatrix, omega: &VertexSubset) -> Result<f64> {
    omega.require_nonempty_proper(pm.n())?;
    let mut best = 0.0f64;
    for x in omega.indices() {
        let mut nearest_outside = f64::INFINITY;
        for y in 0..pm.n() {
            if !omega.contains(y) {
                nearest_outside = float::min(nearest_outside, pm.get(x, y));
            }
        }
        best = float::max(best, nearest_outside);
    }
    Ok(best)
}

/// `Inr_d(Ω)` of a finite truncation `Ω` inside a larger finite host:
/// the path-metric inradius. Reported per truncation; the infinite-graph
/// supremum over all finite subsets is never evaluated directly.
pub fn dirichlet_inradius(host: &WeightedGraph, omega: &VertexSubset) -> Result<f64> {
    inradius(&path_metric(host), omega)
}
