//! Weighted graphs, the energy form, vertex measures, and generator
//! families.
//!
//! A graph is a finite vertex set with symmetric positive edge weights
//! `b(x,y)`; it carries the energy form
//! `E(f) = 1/2 Σ_{x,y} b(x,y) (f(x) - f(y))²`. Connectivity is enforced at
//! construction, so `E(f) = 0` exactly for constant `f`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float;
use crate::numerics::SymmetricMatrix;

/// Finite connected weighted graph. Vertices are externally strings and
/// internally dense indices in insertion order; all vectors and matrices
/// use the internal ordering.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    adjacency: Vec<Vec<(usize, f64)>>,
    // canonical edge list, i < j, in first-seen order
    edges: Vec<(usize, usize, f64)>,
}

impl WeightedGraph {
    /// Builds a graph from `(label, label, weight)` triples.
    ///
    /// Rejects self-loops, nonpositive weights, duplicate pairs with
    /// conflicting weights, and disconnected results. Exact duplicate
    /// entries are merged. Vertices are indexed in sorted label order, so
    /// the result is a pure function of the edge set — permuting the
    /// input list changes nothing, bit for bit.
    pub fn from_edges<A: AsRef<str>, B: AsRef<str>>(edges: &[(A, B, f64)]) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::NoEdges);
        }
        let mut weight_of: BTreeMap<(String, String), f64> = BTreeMap::new();
        for (a, b, w) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            if a == b {
                return Err(Error::SelfLoop(a.to_string()));
            }
            if !w.is_finite() || *w <= 0.0 {
                return Err(Error::NonpositiveWeight {
                    a: a.to_string(),
                    b: b.to_string(),
                    weight: *w,
                });
            }
            let key = if a < b {
                (a.to_string(), b.to_string())
            } else {
                (b.to_string(), a.to_string())
            };
            match weight_of.get(&key) {
                None => {
                    weight_of.insert(key, *w);
                }
                Some(&prev) if prev == *w => {}
                Some(_) => {
                    return Err(Error::DuplicateEdgeConflict {
                        a: a.to_string(),
                        b: b.to_string(),
                    });
                }
            }
        }

        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        for (a, b) in weight_of.keys() {
            index.insert(a.clone(), 0);
            index.insert(b.clone(), 0);
        }
        let labels: Vec<String> = index.keys().cloned().collect();
        for (i, label) in labels.iter().enumerate() {
            *index.get_mut(label).unwrap() = i;
        }

        let n = labels.len();
        let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        let mut edge_list = Vec::with_capacity(weight_of.len());
        for ((a, b), &w) in &weight_of {
            let (i, j) = (index[a], index[b]);
            let key = (i.min(j), i.max(j));
            adjacency[key.0].push((key.1, w));
            adjacency[key.1].push((key.0, w));
            edge_list.push((key.0, key.1, w));
        }
        edge_list.sort_by(|x, y| (x.0, x.1).partial_cmp(&(y.0, y.1)).unwrap());
        for adj in &mut adjacency {
            adj.sort_by_key(|&(v, _)| v);
        }

        let g = Self {
            labels,
            index,
            adjacency,
            edges: edge_list,
        };
        if !g.is_connected() {
            return Err(Error::DisconnectedGraph);
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut found = 1;
        while let Some(v) = stack.pop() {
            for &(u, _) in &self.adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    found += 1;
                    stack.push(u);
                }
            }
        }
        found == n
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Canonical edge list `(i, j, w)` with `i < j`.
    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.adjacency[i]
    }

    /// Weighted degree `Σ_y b(x,y)`, which equals `E(δ_x)`.
    pub fn degree(&self, i: usize) -> f64 {
        self.adjacency[i].iter().map(|&(_, w)| w).sum()
    }

    pub fn edge_weight(&self, i: usize, j: usize) -> Option<f64> {
        self.adjacency[i]
            .iter()
            .find(|&&(u, _)| u == j)
            .map(|&(_, w)| w)
    }

    fn check_len(&self, f: &[f64]) -> Result<()> {
        if f.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: f.len(),
            });
        }
        Ok(())
    }

    /// Energy form `E(f) = 1/2 Σ_{x,y} b(x,y)(f(x) - f(y))²`, summing each
    /// unordered edge once.
    pub fn energy(&self, f: &[f64]) -> Result<f64> {
        self.check_len(f)?;
        let mut e = 0.0;
        for &(i, j, w) in &self.edges {
            let d = f[i] - f[j];
            e += w * d * d;
        }
        Ok(e)
    }

    /// Polarized energy form `E(f, h)`; symmetric bilinear with
    /// `E(f, f) = E(f)`.
    pub fn energy_bilinear(&self, f: &[f64], h: &[f64]) -> Result<f64> {
        self.check_len(f)?;
        self.check_len(h)?;
        let mut e = 0.0;
        for &(i, j, w) in &self.edges {
            e += w * (f[i] - f[j]) * (h[i] - h[j]);
        }
        Ok(e)
    }

    /// Weighted Laplacian `L` with `L[x,x] = Σ_y b(x,y)` and
    /// `L[x,y] = -b(x,y)`, so `fᵀLf = E(f)`.
    pub fn laplacian(&self) -> SymmetricMatrix {
        let n = self.n();
        let mut l = SymmetricMatrix::zeros(n);
        for i in 0..n {
            l.set(i, i, self.degree(i));
        }
        for &(i, j, w) in &self.edges {
            l.set(i, j, -w);
        }
        l
    }

    /// Resolves labels into a vertex subset.
    pub fn subset_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSubset> {
        let mut members = vec![false; self.n()];
        for s in labels {
            members[self.index_of(s.as_ref())?] = true;
        }
        Ok(VertexSubset::new(members))
    }

    /// The uniform probability measure on the vertex set.
    pub fn uniform_measure(&self) -> Measure {
        Measure::uniform(self.n())
    }
}

/// `sup f - inf f`, the variational seminorm; zero exactly for constants.
pub fn variational_seminorm(f: &[f64]) -> f64 {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in f {
        lo = float::min(lo, v);
        hi = float::max(hi, v);
    }
    if f.is_empty() {
        0.0
    } else {
        hi - lo
    }
}

/// Built-in graph families. The comb and geometric half-line truncate the
/// infinite examples; the rest are standard test graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Path on `n` vertices, unit weights.
    Path(usize),
    /// Cycle on `n` vertices, unit weights.
    Cycle(usize),
    /// Complete graph on `n` vertices, unit weights.
    Complete(usize),
    /// Star with `n` vertices total (one center, `n - 1` leaves).
    Star(usize),
    /// Spine `{-N..N} x {0}` with unit weights plus a tooth over every
    /// spine vertex; the tooth edge `((i,k),(i,k+1))` has weight `2^(k+1)`,
    /// so each tooth has path-length at most 1.
    Comb {
        half_width: usize,
        tooth_depth: usize,
    },
    /// Half-line `0..=n` with geometrically growing weights `2^(k+1)`.
    GeometricHalfline(usize),
}

impl Family {
    /// Parses `name:params`, e.g. `path:3` or `comb:2:3`.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut parts = spec.split(':');
        let name = parts.next().unwrap_or("");
        let params: Vec<&str> = parts.collect();
        let int = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .map_err(|_| Error::BadParams(alloc::format!("`{s}` is not a count")))
        };
        let one = |params: &[&str]| -> Result<usize> {
            if params.len() != 1 {
                return Err(Error::BadParams(alloc::format!(
                    "`{name}` takes one parameter"
                )));
            }
            int(params[0])
        };
        match name {
            "path" => Ok(Family::Path(one(&params)?)),
            "cycle" => Ok(Family::Cycle(one(&params)?)),
            "complete" => Ok(Family::Complete(one(&params)?)),
            "star" => Ok(Family::Star(one(&params)?)),
            "geometric_halfline" => Ok(Family::GeometricHalfline(one(&params)?)),
            "comb" => {
                if params.len() != 2 {
                    return Err(Error::BadParams(
                        "`comb` takes two parameters (half-width, tooth depth)".into(),
                    ));
                }
                Ok(Family::Comb {
                    half_width: int(params[0])?,
                    tooth_depth: int(params[1])?,
                })
            }
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }

    /// Generates the graph with its deterministic vertex labeling.
    pub fn generate(&self) -> Result<WeightedGraph> {
        let mut edges: Vec<(String, String, f64)> = Vec::new();
        let v = |k: usize| alloc::format!("v{k}");
        match *self {
            Family::Path(n) => {
                if n < 2 {
                    return Err(Error::BadParams("path needs n >= 2".into()));
                }
                for k in 0..n - 1 {
                    edges.push((v(k), v(k + 1), 1.0));
                }
            }
            Family::Cycle(n) => {
                if n < 3 {
                    return Err(Error::BadParams("cycle needs n >= 3".into()));
                }
                for k in 0..n {
                    edges.push((v(k), v((k + 1) % n), 1.0));
                }
            }
            Family::Complete(n) => {
                if n < 2 {
                    return Err(Error::BadParams("complete needs n >= 2".into()));
                }
                for i in 0..n {
                    for j in (i + 1)..n {
                        edges.push((v(i), v(j), 1.0));
                    }
                }
            }
            Family::Star(n) => {
                if n < 2 {
                    return Err(Error::BadParams("star needs n >= 2".into()));
                }
                for k in 1..n {
                    edges.push(("center".to_string(), alloc::format!("leaf{k}"), 1.0));
                }
            }
            Family::Comb {
                half_width,
                tooth_depth,
            } => {
                if half_width == 0 && tooth_depth == 0 {
                    return Err(Error::BadParams("comb needs at least two vertices".into()));
                }
                if tooth_depth > 50 {
                    return Err(Error::BadParams("comb tooth depth is limited to 50".into()));
                }
                let w = half_width as i64;
                let spine = |i: i64| alloc::format!("{i}_0");
                for i in -w..w {
                    edges.push((spine(i), spine(i + 1), 1.0));
                }
                for i in -w..=w {
                    for k in 0..tooth_depth {
                        edges.push((
                            alloc::format!("{i}_{k}"),
                            alloc::format!("{i}_{}", k + 1),
                            float::pow2(k as u32 + 1),
                        ));
                    }
                }
            }
            Family::GeometricHalfline(n) => {
                if n == 0 {
                    return Err(Error::BadParams("geometric_halfline needs n >= 1".into()));
                }
                if n > 50 {
                    return Err(Error::BadParams(
                        "geometric_halfline length is limited to 50".into(),
                    ));
                }
                for k in 0..n {
                    edges.push((v(k), v(k + 1), float::pow2(k as u32 + 1)));
                }
            }
        }
        WeightedGraph::from_edges(&edges)
    }
}

/// Positive vertex masses; a flag records whether they form a
/// probability measure (sum 1 within 1e-12).
#[derive(Debug, Clone, PartialEq)]
pub struct Measure {
    masses: Vec<f64>,
    is_probability: bool,
}

impl Measure {
    /// Probability measure of full support; the mass sum must already be
    /// 1 within 1e-12.
    pub fn probability(masses: Vec<f64>) -> Result<Self> {
        Self::check_positive(&masses)?;
        let total: f64 = masses.iter().sum();
        if float::abs(total - 1.0) > 1e-12 {
            return Err(Error::NotNormalized(total));
        }
        Ok(Self {
            masses,
            is_probability: true,
        })
    }

    /// Probability measure obtained by rescaling positive masses.
    pub fn normalized(masses: Vec<f64>) -> Result<Self> {
        Self::check_positive(&masses)?;
        let total: f64 = masses.iter().sum();
        Ok(Self {
            masses: masses.iter().map(|m| m / total).collect(),
            is_probability: true,
        })
    }

    /// General finite measure (positive masses, arbitrary total).
    pub fn finite(masses: Vec<f64>) -> Result<Self> {
        Self::check_positive(&masses)?;
        Ok(Self {
            masses,
            is_probability: false,
        })
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            masses: vec![1.0 / n as f64; n],
            is_probability: true,
        }
    }

    fn check_positive(masses: &[f64]) -> Result<()> {
        for (i, &m) in masses.iter().enumerate() {
            if !m.is_finite() || m <= 0.0 {
                return Err(Error::NonpositiveMass(i));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn mass(&self, i: usize) -> f64 {
        self.masses[i]
    }

    pub fn total(&self) -> f64 {
        self.masses.iter().sum()
    }

    pub fn is_probability(&self) -> bool {
        self.is_probability
    }

    /// `Σ f(x) m(x)`.
    pub fn mean(&self, f: &[f64]) -> f64 {
        self.masses.iter().zip(f).map(|(m, v)| m * v).sum()
    }

    /// Squared `ℓ²(m)` norm `Σ f(x)² m(x)`.
    pub fn norm2_sq(&self, f: &[f64]) -> f64 {
        self.masses.iter().zip(f).map(|(m, v)| m * v * v).sum()
    }
}

/// Subset of the vertex set as a membership mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSubset {
    members: Vec<bool>,
}

impl VertexSubset {
    pub fn new(members: Vec<bool>) -> Self {
        Self { members }
    }

    pub fn from_indices(n: usize, indices: &[usize]) -> Self {
        let mut members = vec![false; n];
        for &i in indices {
            members[i] = true;
        }
        Self { members }
    }

    /// Size of the ambient vertex set.
    pub fn universe(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn count(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    /// Member indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| self.members[i])
            .collect()
    }

    pub fn complement(&self) -> VertexSubset {
        VertexSubset {
            members: self.members.iter().map(|&b| !b).collect(),
        }
    }

    /// Nonempty and proper: at least one member and one non-member.
    pub fn is_nonempty_proper(&self) -> bool {
        let k = self.count();
        k >= 1 && k < self.members.len()
    }

    pub(crate) fn require_nonempty_proper(&self, n: usize) -> Result<()> {
        if self.universe() != n || !self.is_nonempty_proper() {
            return Err(Error::OmegaNotProper);
        }
        Ok(())
    }
}
