//! Smooth complete toric surfaces as cyclic fan data: vertices (2-cones)
//! with ordered chart coordinates and unimodular weight matrices, edges
//! (rays / invariant curves) with self-intersections and curve classes, plus
//! the enumerators indexing localization summands: degree tuples and
//! ray-constrained partitions.

mod partition;

pub use partition::{partitions_in_rays, Partition, RayBound};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub usize);

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

/// A torus-fixed point with its affine chart.
///
/// `weights` holds the two chart coordinates' torus weights as columns in
/// the global basis: `weights[0]` is the weight of chart coordinate 1,
/// `weights[1]` of coordinate 2. `edges[0]` is the invariant curve tangent
/// to coordinate 1 (the locus `x₂ = 0`), `edges[1]` the one tangent to
/// coordinate 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    pub edges: [EdgeId; 2],
    pub weights: [[i64; 2]; 2],
}

impl Vertex {
    /// Maps a chart exponent pair to a global weight.
    pub fn chart_to_global(&self, i: i64, j: i64) -> (i64, i64) {
        (
            i * self.weights[0][0] + j * self.weights[1][0],
            i * self.weights[0][1] + j * self.weights[1][1],
        )
    }

    pub fn det(&self) -> i64 {
        self.weights[0][0] * self.weights[1][1] - self.weights[0][1] * self.weights[1][0]
    }

    /// Chart slot (0 or 1) of an incident edge.
    pub fn slot_of(&self, e: EdgeId) -> usize {
        if self.edges[0] == e {
            0
        } else {
            debug_assert_eq!(self.edges[1], e);
            1
        }
    }
}

/// An invariant curve: a `P¹` joining two fixed points, with normal-bundle
/// degree `self_intersection` and class in the chosen `H₂` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub endpoints: (VertexId, VertexId),
    pub self_intersection: i64,
    pub curve_class: Vec<i64>,
}

/// Nonnegative multiplicities on the edges; indexes the divisor part of a
/// fixed point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeTuple {
    pub degrees: Vec<u64>,
}

impl DegreeTuple {
    pub fn get(&self, e: EdgeId) -> u64 {
        self.degrees[e.0]
    }

    pub fn total(&self) -> u64 {
        self.degrees.iter().sum()
    }
}

/// One localization summand: a degree tuple plus one ray-constrained
/// partition per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub degrees: DegreeTuple,
    pub partitions: Vec<Partition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("fan needs at least 3 rays, got {0}")]
    TooFewRays(usize),
    #[error("consecutive rays {0} and {1} have determinant {2}, expected 1 (non-smooth or misordered fan)")]
    NonSmoothFan(usize, usize, i64),
    #[error("rays do not positively span the plane (fan not complete)")]
    NotComplete,
}

/// JSON form of a surface descriptor: either `{"rays": [[1,0],...]}` or
/// `{"builtin": "p2"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SurfaceSpec {
    Fan { rays: Vec<[i64; 2]> },
    Builtin { builtin: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricSurface {
    pub name: String,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    /// Primitive ray generator of each edge's invariant curve; used for the
    /// degree-tuple enumeration (the relation lattice among curve classes).
    edge_rays: Vec<[i64; 2]>,
    class_rank: usize,
}

impl ToricSurface {
    /// The projective plane with the chart assignment used throughout:
    /// vertices α, β, γ with coordinates (x_αβ, x_αγ), (x_βγ, x_βα),
    /// (x_γβ, x_γα) and weights ((1,0),(0,1)), ((-1,1),(-1,0)),
    /// ((1,-1),(0,-1)). All three lines have self-intersection 1 and the
    /// same class, so the class rank is 1.
    pub fn p2() -> Self {
        let vertices = vec![
            Vertex {
                id: VertexId(0),
                edges: [EdgeId(0), EdgeId(2)],
                weights: [[1, 0], [0, 1]],
            },
            Vertex {
                id: VertexId(1),
                edges: [EdgeId(1), EdgeId(0)],
                weights: [[-1, 1], [-1, 0]],
            },
            Vertex {
                id: VertexId(2),
                edges: [EdgeId(1), EdgeId(2)],
                weights: [[1, -1], [0, -1]],
            },
        ];
        let edges = (0..3)
            .map(|i| Edge {
                id: EdgeId(i),
                endpoints: (VertexId(i), VertexId((i + 1) % 3)),
                self_intersection: 1,
                curve_class: vec![1],
            })
            .collect();
        let surface = ToricSurface {
            name: "p2".to_string(),
            vertices,
            edges,
            edge_rays: vec![[0, 1], [-1, -1], [1, 0]],
            class_rank: 1,
        };
        surface.validate().expect("builtin surface is well-formed");
        surface
    }

    /// Builds a surface from the primitive ray generators of a smooth
    /// complete fan, listed counterclockwise. Vertex `i` is the cone spanned
    /// by rays `i` and `i+1`; edge `i` is the curve of ray `i`.
    pub fn from_fan(rays: &[[i64; 2]]) -> Result<Self, FanError> {
        let n = rays.len();
        if n < 3 {
            return Err(FanError::TooFewRays(n));
        }
        let det = |u: [i64; 2], v: [i64; 2]| u[0] * v[1] - u[1] * v[0];
        for i in 0..n {
            let j = (i + 1) % n;
            let d = det(rays[i], rays[j]);
            if d != 1 {
                return Err(FanError::NonSmoothFan(i, j, d));
            }
        }
        // Completeness: the first ray must lie in exactly one half-open cone
        // [u_i, u_{i+1}); more than one means the rays wind around more than
        // once, zero means they do not close up.
        let r = rays[0];
        let hits = (0..n)
            .filter(|&i| det(rays[i], r) >= 0 && det(r, rays[(i + 1) % n]) > 0)
            .count();
        if hits != 1 {
            return Err(FanError::NotComplete);
        }

        let mut vertices = Vec::with_capacity(n);
        for i in 0..n {
            let u = rays[i];
            let v = rays[(i + 1) % n];
            // Dual basis of the cone (u, v): coordinate 1 has weight
            // (v_y, -v_x), coordinate 2 has weight (-u_y, u_x). The curve of
            // ray v is the coordinate-1 axis {x₂ = 0}.
            vertices.push(Vertex {
                id: VertexId(i),
                edges: [EdgeId((i + 1) % n), EdgeId(i)],
                weights: [[v[1], -v[0]], [-u[1], u[0]]],
            });
        }
        let class_rank = n - 2;
        // Classes: edges 2..n-1 are the basis; edges 0 and 1 are solved from
        // the character relations Σ_e <u_e, χ> [D_e] = 0.
        let (a, b) = (rays[0][0], rays[0][1]);
        let (c, d) = (rays[1][0], rays[1][1]);
        debug_assert_eq!(a * d - b * c, 1);
        let mut classes = vec![vec![0i64; class_rank]; n];
        for e in 2..n {
            classes[e][e - 2] = 1;
            let (x, y) = (rays[e][0], rays[e][1]);
            // [u_0 | u_1] (c0, c1)^T = -u_e
            classes[0][e - 2] = -(d * x - c * y);
            classes[1][e - 2] = -(-b * x + a * y);
        }
        let mut edges = Vec::with_capacity(n);
        for j in 0..n {
            let prev = rays[(j + n - 1) % n];
            let next = rays[(j + 1) % n];
            let s = [prev[0] + next[0], prev[1] + next[1]];
            // u_{j-1} + u_{j+1} = -m_j u_j
            let m = if rays[j][0] != 0 {
                -s[0] / rays[j][0]
            } else {
                -s[1] / rays[j][1]
            };
            debug_assert_eq!([-m * rays[j][0], -m * rays[j][1]], s);
            edges.push(Edge {
                id: EdgeId(j),
                endpoints: (VertexId((j + n - 1) % n), VertexId(j)),
                self_intersection: m,
                curve_class: classes[j].clone(),
            });
        }
        let surface = ToricSurface {
            name: format!("fan{n}"),
            vertices,
            edges,
            edge_rays: rays.to_vec(),
            class_rank,
        };
        surface.validate().expect("fan construction is well-formed");
        Ok(surface)
    }

    pub fn from_spec(spec: &SurfaceSpec) -> Result<Self, FanError> {
        match spec {
            SurfaceSpec::Fan { rays } => ToricSurface::from_fan(rays),
            SurfaceSpec::Builtin { builtin } if builtin == "p2" => Ok(ToricSurface::p2()),
            SurfaceSpec::Builtin { builtin } => {
                // Only one builtin exists; reuse the error type for the rest.
                let _ = builtin;
                Err(FanError::TooFewRays(0))
            }
        }
    }

    fn validate(&self) -> Result<(), String> {
        for v in &self.vertices {
            if v.det().abs() != 1 {
                return Err(format!("vertex {:?} weight matrix not unimodular", v.id));
            }
            for e in v.edges {
                let edge = &self.edges[e.0];
                if edge.endpoints.0 != v.id && edge.endpoints.1 != v.id {
                    return Err(format!("edge {:?} missing endpoint {:?}", e, v.id));
                }
            }
            if v.edges[0] == v.edges[1] {
                return Err(format!("vertex {:?} has a repeated edge", v.id));
            }
        }
        for e in &self.edges {
            if e.endpoints.0 == e.endpoints.1 {
                return Err(format!("edge {:?} is a loop", e.id));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v.0]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn class_rank(&self) -> usize {
        self.class_rank
    }

    /// Topological Euler characteristic (= number of fixed points).
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64
    }

    /// Largest absolute entry over all chart weight matrices.
    pub fn max_weight_entry(&self) -> i64 {
        self.vertices
            .iter()
            .flat_map(|v| v.weights.iter().flatten())
            .map(|w| w.abs())
            .max()
            .unwrap_or(1)
            .max(1)
    }

    /// Intersection number `D_e · D_f`: the self-intersection when `e == f`,
    /// otherwise the number of shared endpoints.
    pub fn intersection(&self, e: EdgeId, f: EdgeId) -> i64 {
        if e == f {
            return self.edges[e.0].self_intersection;
        }
        let (a, b) = self.edges[e.0].endpoints;
        let (c, d) = self.edges[f.0].endpoints;
        [a, b]
            .iter()
            .filter(|v| **v == c || **v == d)
            .count() as i64
    }

    /// `β(β + K)/2` for `β = Σ d_e [D_e]`, the shift between the holomorphic
    /// Euler characteristic and the subscheme length (`m = n + shift`).
    pub fn pairing_shift(&self, d: &DegreeTuple) -> i64 {
        let n = self.edges.len();
        let mut beta_beta = 0i64;
        for e in 0..n {
            for f in 0..n {
                beta_beta += d.degrees[e] as i64
                    * d.degrees[f] as i64
                    * self.intersection(EdgeId(e), EdgeId(f));
            }
        }
        // K = -Σ_f D_f, so β·K = -Σ_e d_e (m_e + 2) by adjunction.
        let beta_k: i64 = (0..n)
            .map(|e| -(d.degrees[e] as i64) * (self.edges[e].self_intersection + 2))
            .sum();
        let twice = beta_beta + beta_k;
        debug_assert_eq!(twice % 2, 0);
        twice / 2
    }

    /// All degree tuples with `Σ d_e [D_e] = β`, lexicographically ordered by
    /// edge id. The solution set is a particular solution plus the rank-2
    /// relation lattice `(⟨u_e, v⟩)_e`; since the rays positively span the
    /// plane, admissible `v` lie in a bounded polygon.
    pub fn degree_tuples(&self, beta: &[i64]) -> Vec<DegreeTuple> {
        assert_eq!(beta.len(), self.class_rank, "class vector has wrong rank");
        let n = self.edges.len();
        // Particular solution: put β on the basis edges (2..n-1), zero on the
        // first two. Basis classes are unit vectors by construction.
        let mut particular = vec![0i64; n];
        for e in 2..n {
            debug_assert!(self.edges[e]
                .curve_class
                .iter()
                .enumerate()
                .all(|(i, &c)| c == i64::from(i == e - 2)));
            particular[e] = beta[e - 2];
        }
        let pmax = particular.iter().map(|p| p.abs()).max().unwrap_or(0);
        // ||v|| <= pmax / inradius(conv(rays)); the inradius is at least
        // 1/max ||u_i - u_{i+1}|| because consecutive determinants are 1.
        let gap = (0..n)
            .map(|i| {
                let u = self.edge_rays[i];
                let w = self.edge_rays[(i + 1) % n];
                let (dx, dy) = (u[0] - w[0], u[1] - w[1]);
                ((dx * dx + dy * dy) as f64).sqrt()
            })
            .fold(1.0f64, f64::max);
        let bound = ((pmax as f64) * gap).ceil() as i64 + 1;
        let mut out = Vec::new();
        for vx in -bound..=bound {
            for vy in -bound..=bound {
                let mut degrees = Vec::with_capacity(n);
                let mut ok = true;
                for e in 0..n {
                    let d = particular[e] + self.edge_rays[e][0] * vx + self.edge_rays[e][1] * vy;
                    if d < 0 {
                        ok = false;
                        break;
                    }
                    degrees.push(d as u64);
                }
                if ok {
                    out.push(DegreeTuple { degrees });
                }
            }
        }
        out.sort_by(|a, b| a.degrees.cmp(&b.degrees));
        out
    }

    /// All degree tuples with total degree exactly `total` (used by the
    /// invariant suites, which sweep raw tuples rather than classes).
    pub fn degree_tuples_total(&self, total: u64) -> Vec<DegreeTuple> {
        let n = self.edges.len();
        let mut out = Vec::new();
        let mut cur = vec![0u64; n];
        fn rec(cur: &mut Vec<u64>, idx: usize, left: u64, out: &mut Vec<DegreeTuple>) {
            if idx == cur.len() - 1 {
                cur[idx] = left;
                out.push(DegreeTuple {
                    degrees: cur.clone(),
                });
                return;
            }
            for d in 0..=left {
                cur[idx] = d;
                rec(cur, idx + 1, left - d, out);
            }
        }
        rec(&mut cur, 0, total, &mut out);
        out
    }

    /// Ray bounds of a vertex for a given degree tuple: `a` bounds box
    /// heights (`k₂`) and is the degree of the coordinate-1 edge; `b` bounds
    /// column indices (`k₁`) and is the degree of the coordinate-2 edge.
    pub fn ray_bounds(&self, d: &DegreeTuple, v: VertexId) -> RayBound {
        let vert = self.vertex(v);
        RayBound {
            a: d.get(vert.edges[0]) as u32,
            b: d.get(vert.edges[1]) as u32,
        }
    }

    /// The class of a degree tuple in the `H₂` basis.
    pub fn class_of(&self, d: &DegreeTuple) -> Vec<i64> {
        let mut out = vec![0i64; self.class_rank];
        for (e, edge) in self.edges.iter().enumerate() {
            for (i, c) in edge.curve_class.iter().enumerate() {
                out[i] += d.degrees[e] as i64 * c;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_charts_match_figure() {
        let s = ToricSurface::p2();
        for v in s.vertices() {
            assert_eq!(v.det().abs(), 1);
        }
        assert_eq!(s.vertex(VertexId(0)).weights, [[1, 0], [0, 1]]);
        assert_eq!(s.vertex(VertexId(1)).weights, [[-1, 1], [-1, 0]]);
        assert_eq!(s.vertex(VertexId(2)).weights, [[1, -1], [0, -1]]);
        let ms: Vec<i64> = s.edges().iter().map(|e| e.self_intersection).collect();
        assert_eq!(ms, vec![1, 1, 1]);
    }

    #[test]
    fn p2_index_shift() {
        let s = ToricSurface::p2();
        for d in 0..=5i64 {
            for t in s.degree_tuples(&[d]) {
                assert_eq!(s.pairing_shift(&t), d * (d - 3) / 2);
            }
        }
    }

    #[test]
    fn fan_p2_matches_builtin_combinatorics() {
        let s = ToricSurface::from_fan(&[[1, 0], [0, 1], [-1, -1]]).unwrap();
        assert_eq!(s.class_rank(), 1);
        for e in s.edges() {
            assert_eq!(e.self_intersection, 1);
            assert_eq!(e.curve_class, vec![1]);
        }
        for v in s.vertices() {
            assert_eq!(v.det().abs(), 1);
        }
    }

    #[test]
    fn fan_quadric_all_zero_self_intersections() {
        let s = ToricSurface::from_fan(&[[1, 0], [0, 1], [-1, 0], [0, -1]]).unwrap();
        let ms: Vec<i64> = s.edges().iter().map(|e| e.self_intersection).collect();
        assert_eq!(ms, vec![0, 0, 0, 0]);
        assert_eq!(s.class_rank(), 2);
    }

    #[test]
    fn fan_hirzebruch_self_intersections() {
        for a in 0..=3 {
            let s = ToricSurface::from_fan(&[[1, 0], [0, 1], [-1, a], [0, -1]]).unwrap();
            let ms: Vec<i64> = s.edges().iter().map(|e| e.self_intersection).collect();
            assert_eq!(ms, vec![0, -a, 0, a]);
        }
    }

    #[test]
    fn fan_errors() {
        assert!(matches!(
            ToricSurface::from_fan(&[[1, 0], [0, 1], [-1, -2]]),
            Err(FanError::NonSmoothFan(..))
        ));
        assert!(matches!(
            ToricSurface::from_fan(&[[1, 0], [0, 1]]),
            Err(FanError::TooFewRays(2))
        ));
    }

    #[test]
    fn degree_tuples_p2() {
        let s = ToricSurface::p2();
        let t1 = s.degree_tuples(&[1]);
        assert_eq!(
            t1.iter().map(|t| t.degrees.clone()).collect::<Vec<_>>(),
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]
        );
        let t2 = s.degree_tuples(&[2]);
        assert_eq!(t2.len(), 6);
        assert!(t2.iter().all(|t| t.total() == 2));
        assert_eq!(
            s.degree_tuples(&[0]),
            vec![DegreeTuple {
                degrees: vec![0, 0, 0]
            }]
        );
        for d in 0..=6i64 {
            let expect = ((d + 1) * (d + 2) / 2) as usize;
            assert_eq!(s.degree_tuples(&[d]).len(), expect);
        }
    }

    #[test]
    fn degree_tuples_quadric_and_hirzebruch() {
        let q = ToricSurface::from_fan(&[[1, 0], [0, 1], [-1, 0], [0, -1]]).unwrap();
        // class (1,1): one degree on each ruling
        let ts = q.degree_tuples(&[1, 1]);
        assert_eq!(ts.len(), 4);
        for t in &ts {
            assert_eq!(q.class_of(t), vec![1, 1]);
        }
        let f2 = ToricSurface::from_fan(&[[1, 0], [0, 1], [-1, 2], [0, -1]]).unwrap();
        let ts = f2.degree_tuples(&[0, 1]);
        assert_eq!(ts.len(), 4);
        for t in &ts {
            assert_eq!(f2.class_of(t), vec![0, 1]);
        }
    }

    #[test]
    fn ray_bounds_from_incident_degrees() {
        let s = ToricSurface::p2();
        // degree on edge 0 only: at vertex 0 coordinate 1 runs along edge 0
        let d = DegreeTuple {
            degrees: vec![1, 0, 0],
        };
        assert_eq!(s.ray_bounds(&d, VertexId(0)), RayBound::new(1, 0));
        let zero = DegreeTuple {
            degrees: vec![0, 0, 0],
        };
        for v in s.vertices() {
            assert_eq!(s.ray_bounds(&zero, v.id), RayBound::new(0, 0));
        }
        // the vertex between the two degree-1 edges sees both
        let d = DegreeTuple {
            degrees: vec![1, 1, 0],
        };
        assert_eq!(s.ray_bounds(&d, VertexId(1)), RayBound::new(1, 1));
    }

    #[test]
    fn surface_spec_json_forms() {
        let spec: SurfaceSpec = serde_json::from_str(r#"{"builtin": "p2"}"#).unwrap();
        assert_eq!(ToricSurface::from_spec(&spec).unwrap(), ToricSurface::p2());
        let spec: SurfaceSpec =
            serde_json::from_str(r#"{"rays": [[1,0],[0,1],[-1,-1]]}"#).unwrap();
        let s = ToricSurface::from_spec(&spec).unwrap();
        assert_eq!(s.edges().len(), 3);
    }
}
