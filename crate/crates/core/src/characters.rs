//! Torus characters of the blocks making up the virtual tangent space at a
//! fixed point, as finitely supported Laurent polynomials in the chart
//! coordinates, plus the conversion to Chern/Euler factor products in global
//! weights.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::FactorProduct;
use crate::toricgeom::{Partition, RayBound, ToricSurface, Vertex, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("partition does not fit the ray bound (a={a}, b={b})")]
    ConstraintViolated { a: u32, b: u32 },
    #[error("non-equivariant term: trivial weight with multiplicity {0}")]
    NonEquivariantTerm(i64),
}

/// A finitely supported integer-multiplicity map on ℤ² exponents. Both the
/// chart-coordinate characters and the global weight multisets live here.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentChar {
    terms: BTreeMap<(i64, i64), i64>,
}

impl LaurentChar {
    pub fn zero() -> Self {
        LaurentChar::default()
    }

    pub fn monomial(i: i64, j: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((i, j), 1);
        LaurentChar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), i64)> + '_ {
        self.terms.iter().map(|(&e, &m)| (e, m))
    }

    pub fn multiplicity(&self, i: i64, j: i64) -> i64 {
        self.terms.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Multiplicity of the trivial exponent `(0, 0)`.
    pub fn fixed_part(&self) -> i64 {
        self.multiplicity(0, 0)
    }

    pub fn insert(&mut self, exp: (i64, i64), mult: i64) {
        if mult == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot += mult;
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    /// Exponent-negated character (`t ↦ t⁻¹`).
    pub fn invert(&self) -> LaurentChar {
        LaurentChar {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), &m)| ((-i, -j), m))
                .collect(),
        }
    }

    /// Largest absolute exponent entry in the support.
    pub fn max_exponent(&self) -> i64 {
        self.terms
            .keys()
            .map(|&(i, j)| i.abs().max(j.abs()))
            .max()
            .unwrap_or(0)
    }
}

impl Add for &LaurentChar {
    type Output = LaurentChar;
    fn add(self, rhs: &LaurentChar) -> LaurentChar {
        let mut out = self.clone();
        for (e, m) in rhs.terms() {
            out.insert(e, m);
        }
        out
    }
}

impl Sub for &LaurentChar {
    type Output = LaurentChar;
    fn sub(self, rhs: &LaurentChar) -> LaurentChar {
        let mut out = self.clone();
        for (e, m) in rhs.terms() {
            out.insert(e, -m);
        }
        out
    }
}

impl Neg for &LaurentChar {
    type Output = LaurentChar;
    fn neg(self) -> LaurentChar {
        LaurentChar {
            terms: self.terms.iter().map(|(&e, &m)| (e, -m)).collect(),
        }
    }
}

impl Mul for &LaurentChar {
    type Output = LaurentChar;
    fn mul(self, rhs: &LaurentChar) -> LaurentChar {
        let mut out = LaurentChar::zero();
        for (&(i1, j1), &m1) in &self.terms {
            for (&(i2, j2), &m2) in &rhs.terms {
                out.insert((i1 + i2, j1 + j2), m1 * m2);
            }
        }
        out
    }
}

/// Diagnostic serialization: a lexicographically sorted list of
/// `[i, j, mult]` triples.
impl Serialize for LaurentChar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&(i, j), &m) in &self.terms {
            seq.serialize_element(&[i, j, m])?;
        }
        seq.end()
    }
}

/// The character of the structure sheaf of the subscheme cut out by a
/// partition: `Σ_{(k₁,k₂) ∈ λ} t₁^{k₁} t₂^{k₂}`.
pub fn q_lambda(lam: &Partition) -> LaurentChar {
    let mut out = LaurentChar::zero();
    for (k1, k2) in lam.boxes() {
        out.insert((k1 as i64, k2 as i64), 1);
    }
    out
}

/// The finite vertex block
/// `(1 - t₁^{-b} t₂^{-a})·Q_λ + t₁⁻¹t₂⁻¹·Q̄_λ - (1-t₁⁻¹)(1-t₂⁻¹)·Q_λ·Q̄_λ`
/// for a partition inside the `(a, b)` rays.
pub fn g_vertex(lam: &Partition, bound: RayBound) -> Result<LaurentChar, CharacterError> {
    if !lam.fits(bound) {
        return Err(CharacterError::ConstraintViolated {
            a: bound.a,
            b: bound.b,
        });
    }
    let q = q_lambda(lam);
    let qbar = q.invert();
    let one = LaurentChar::monomial(0, 0);
    let front = &(&one - &LaurentChar::monomial(-(bound.b as i64), -(bound.a as i64))) * &q;
    let middle = &LaurentChar::monomial(-1, -1) * &qbar;
    let corr = &(&one - &LaurentChar::monomial(-1, 0)) * &(&one - &LaurentChar::monomial(0, -1));
    let last = &corr * &(&q * &qbar);
    Ok(&(&front + &middle) - &last)
}

/// The degree-only vertex block `Σ_{k=1}^{b} Σ_{l=1}^{a} t₁^k t₂^l`; empty
/// whenever either bound vanishes.
///
/// The class assembly uses this block with inverted exponents; the
/// orientation is pinned by the degree-2 calibration test in the engine.
pub fn infinite_vertex(bound: RayBound) -> LaurentChar {
    let mut out = LaurentChar::zero();
    for k in 1..=(bound.b as i64) {
        for l in 1..=(bound.a as i64) {
            out.insert((k, l), 1);
        }
    }
    out
}

/// Laurent division form of the geometric sum `(t^n - 1)/(t - 1)`:
/// `Σ_{k=0}^{n-1} t^k` for `n ≥ 1`, zero for `n = 0`, `-Σ_{k=n}^{-1} t^k`
/// for `n < 0`.
fn geometric_sum(n: i64) -> Vec<(i64, i64)> {
    match n.cmp(&0) {
        std::cmp::Ordering::Greater => (0..n).map(|k| (k, 1)).collect(),
        std::cmp::Ordering::Equal => Vec::new(),
        std::cmp::Ordering::Less => (n..0).map(|k| (k, -1)).collect(),
    }
}

/// The edge block `Σ_{l=1}^{d} t₂^{-l} · G(t₁, l·m + 1)` where `t₁` is the
/// coordinate along the edge, `t₂` the transverse coordinate, and `G` the
/// geometric sum above. For `m = 1` this is `Σ_l t₂^{-l} Σ_{k=0}^{l} t₁^k`.
pub fn edge_char(d_e: u64, m_e: i64) -> LaurentChar {
    let mut out = LaurentChar::zero();
    for l in 1..=(d_e as i64) {
        for (k, mult) in geometric_sum(l * m_e + 1) {
            out.insert((k, -l), mult);
        }
    }
    out
}

/// Maps a chart character to global torus weights through the vertex's
/// weight columns, merging multiplicities.
pub fn to_global(c: &LaurentChar, vertex: &Vertex) -> LaurentChar {
    let mut out = LaurentChar::zero();
    for ((i, j), m) in c.terms() {
        out.insert(vertex.chart_to_global(i, j), m);
    }
    out
}

/// The `c•/e` class of a global weight multiset: each weight `w` with
/// multiplicity `n` contributes the factor `f(⟨w, s⟩)^n`, `f(x) = (1+x)/x`.
///
/// A surviving trivial weight makes the Euler class vanish; it is reported
/// as [`CharacterError::NonEquivariantTerm`].
pub fn chern_euler(global: &LaurentChar) -> Result<FactorProduct, CharacterError> {
    let fixed = global.fixed_part();
    if fixed != 0 {
        return Err(CharacterError::NonEquivariantTerm(fixed));
    }
    Ok(global.terms().collect())
}

/// The edge block of `edge` with degree `d_e`, computed in the chart of
/// `endpoint` and mapped to global weights. Both endpoints give the same
/// multiset; the engine always uses the first endpoint, the symmetry test
/// exercises both.
pub fn edge_char_global(
    surface: &ToricSurface,
    edge: crate::toricgeom::EdgeId,
    endpoint: VertexId,
    d_e: u64,
) -> LaurentChar {
    let e = surface.edge(edge);
    debug_assert!(endpoint == e.endpoints.0 || endpoint == e.endpoints.1);
    let vertex = surface.vertex(endpoint);
    let chart = edge_char(d_e, e.self_intersection);
    let slot = vertex.slot_of(edge);
    let mut out = LaurentChar::zero();
    for ((along, transverse), m) in chart.terms() {
        let (i, j) = if slot == 0 {
            (along, transverse)
        } else {
            (transverse, along)
        };
        out.insert(vertex.chart_to_global(i, j), m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toricgeom::{EdgeId, ToricSurface};

    fn chr(terms: &[(i64, i64, i64)]) -> LaurentChar {
        let mut out = LaurentChar::zero();
        for &(i, j, m) in terms {
            out.insert((i, j), m);
        }
        out
    }

    #[test]
    fn q_lambda_row() {
        assert_eq!(q_lambda(&Partition::empty()), LaurentChar::zero());
        // a row of 4 boxes along the first coordinate
        let row = Partition::new(vec![1, 1, 1, 1]);
        assert_eq!(
            q_lambda(&row),
            chr(&[(0, 0, 1), (1, 0, 1), (2, 0, 1), (3, 0, 1)])
        );
    }

    #[test]
    fn q_lambda_two_zero_ray_shape() {
        // a columns of height 2 then b columns of height 1:
        // (1 + t2) Σ_{i<a} t1^i + Σ_{j<b} t1^{a+j}
        let (a, b) = (3usize, 2usize);
        let mut heights = vec![2u32; a];
        heights.extend(vec![1u32; b]);
        let lam = Partition::new(heights);
        let mut expected = LaurentChar::zero();
        for i in 0..a as i64 {
            expected.insert((i, 0), 1);
            expected.insert((i, 1), 1);
        }
        for j in 0..b as i64 {
            expected.insert((a as i64 + j, 0), 1);
        }
        assert_eq!(q_lambda(&lam), expected);
    }

    #[test]
    fn invert_is_involution() {
        let c = chr(&[(1, 0, 1), (-2, 3, 4), (0, -1, -2)]);
        assert_eq!(LaurentChar::monomial(1, 0).invert(), chr(&[(-1, 0, 1)]));
        assert_eq!(c.invert().invert(), c);
    }

    #[test]
    fn q_lambda_transpose_swaps_variables() {
        let lam = Partition::new(vec![3, 1, 1]);
        let swapped: LaurentChar = {
            let mut out = LaurentChar::zero();
            for ((i, j), m) in q_lambda(&lam).terms() {
                out.insert((j, i), m);
            }
            out
        };
        assert_eq!(q_lambda(&lam.transpose()), swapped);
    }

    #[test]
    fn g_vertex_row_in_single_ray() {
        // row of L boxes inside (1,0): Σ_{i=1}^{L} t1^{-i}
        for len in 1..=5i64 {
            let lam = Partition::new(vec![1; len as usize]);
            let got = g_vertex(&lam, RayBound::new(1, 0)).unwrap();
            let expected = chr(&(1..=len).map(|i| (-i, 0, 1)).collect::<Vec<_>>());
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn g_vertex_hook() {
        // hook with arm b along t1 and leg a along t2, inside (1,1):
        // t1^{-(b+1)} t2^a + t1^b t2^{-(a+1)} - t1^{-1}t2^{-1}
        //   + Σ_{i=1}^{b} t1^{-i} + Σ_{j=1}^{a} t2^{-j}
        for (a, b) in [(0i64, 0i64), (1, 0), (0, 2), (2, 3), (3, 1)] {
            let mut heights = vec![a as u32 + 1];
            heights.extend(vec![1u32; b as usize]);
            let lam = Partition::new(heights);
            let mut expected = LaurentChar::zero();
            expected.insert((-(b + 1), a), 1);
            expected.insert((b, -(a + 1)), 1);
            expected.insert((-1, -1), -1);
            for i in 1..=b {
                expected.insert((-i, 0), 1);
            }
            for j in 1..=a {
                expected.insert((0, -j), 1);
            }
            assert_eq!(g_vertex(&lam, RayBound::new(1, 1)).unwrap(), expected);
        }
    }

    #[test]
    fn g_vertex_two_zero_ray() {
        // (a,b) shape inside (2,0): Σ_{i=1}^a t1^{-i}
        //   + (t2^{-1} - t2^{-2}) Σ_{j=0}^{b-1} t1^j + Σ_{j=1}^b t1^{-j}
        //   + t2 Σ_{i=1}^a t1^{-(b+i)}
        for (a, b) in [(1i64, 0i64), (2, 1), (3, 2), (1, 4)] {
            let mut heights = vec![2u32; a as usize];
            heights.extend(vec![1u32; b as usize]);
            let lam = Partition::new(heights);
            let mut expected = LaurentChar::zero();
            for i in 1..=a {
                expected.insert((-i, 0), 1);
            }
            for j in 0..b {
                expected.insert((j, -1), 1);
                expected.insert((j, -2), -1);
            }
            for j in 1..=b {
                expected.insert((-j, 0), 1);
            }
            for i in 1..=a {
                expected.insert((-(b + i), 1), 1);
            }
            assert_eq!(g_vertex(&lam, RayBound::new(2, 0)).unwrap(), expected);
        }
    }

    #[test]
    fn g_vertex_rejects_misfit() {
        let lam = Partition::new(vec![2, 2]);
        assert!(matches!(
            g_vertex(&lam, RayBound::new(1, 1)),
            Err(CharacterError::ConstraintViolated { a: 1, b: 1 })
        ));
    }

    #[test]
    fn infinite_vertex_block() {
        assert_eq!(infinite_vertex(RayBound::new(1, 0)), LaurentChar::zero());
        assert_eq!(infinite_vertex(RayBound::new(0, 3)), LaurentChar::zero());
        assert_eq!(
            infinite_vertex(RayBound::new(1, 1)),
            chr(&[(1, 1, 1)])
        );
        // a = 2 bounds the t2 exponent, b = 1 the t1 exponent
        assert_eq!(
            infinite_vertex(RayBound::new(2, 1)),
            chr(&[(1, 1, 1), (1, 2, 1)])
        );
    }

    #[test]
    fn edge_char_small_cases() {
        assert_eq!(
            edge_char(1, 1),
            chr(&[(0, -1, 1), (1, -1, 1)])
        );
        assert_eq!(
            edge_char(2, 0),
            chr(&[(0, -1, 1), (0, -2, 1)])
        );
        assert_eq!(edge_char(0, 7), LaurentChar::zero());
        // negative normal degree goes through Laurent division
        assert_eq!(
            edge_char(1, -2),
            chr(&[(-1, -1, -1)])
        );
    }

    #[test]
    fn edge_char_satisfies_defining_ratio() {
        // (1 - t1^{-1}) E = t1^{-1} F(t2) - F(t2 t1^{-m})
        // with F(t) = -Σ_{l=1}^{d} t^{-l}
        for d in 0..=5u64 {
            for m in -3..=3i64 {
                let e = edge_char(d, m);
                let one = LaurentChar::monomial(0, 0);
                let lhs = &(&one - &LaurentChar::monomial(-1, 0)) * &e;
                let mut rhs = LaurentChar::zero();
                for l in 1..=(d as i64) {
                    rhs.insert((-1, -l), -1);
                    rhs.insert((m * l, -l), 1);
                }
                assert_eq!(lhs, rhs, "d={d} m={m}");
            }
        }
    }

    #[test]
    fn to_global_p2_charts() {
        let s = ToricSurface::p2();
        let alpha = s.vertex(VertexId(0));
        let beta = s.vertex(VertexId(1));
        assert_eq!(
            to_global(&LaurentChar::monomial(-1, 0), alpha),
            chr(&[(-1, 0, 1)])
        );
        // coordinate 1 at the second vertex points along t1^{-1} t2
        assert_eq!(
            to_global(&LaurentChar::monomial(1, 0), beta),
            chr(&[(-1, 1, 1)])
        );
    }

    #[test]
    fn chern_euler_factors() {
        let c = chr(&[(-1, 0, 1)]);
        let fp = chern_euler(&c).unwrap();
        assert_eq!(fp.factors().collect::<Vec<_>>(), vec![((-1, 0), 1)]);
        assert!(chern_euler(&LaurentChar::zero()).unwrap().is_empty());
        assert!(matches!(
            chern_euler(&chr(&[(0, 0, 1)])),
            Err(CharacterError::NonEquivariantTerm(1))
        ));
    }

    #[test]
    fn fixed_parts() {
        let lam = Partition::new(vec![2, 1]);
        assert_eq!(q_lambda(&lam).fixed_part(), 1);
        assert_eq!(
            g_vertex(&lam, RayBound::new(2, 1)).unwrap().fixed_part(),
            0
        );
        assert_eq!(edge_char(3, 1).fixed_part(), 0);
        assert_eq!(edge_char(2, -1).fixed_part(), 0);
    }

    #[test]
    fn fixed_part_bookkeeping() {
        // the proof-level identities behind the vanishing fixed part
        for (heights, bound) in [
            (vec![3u32, 1], RayBound::new(3, 1)),
            (vec![2, 2, 1], RayBound::new(2, 3)),
            (vec![1, 1, 1], RayBound::new(1, 0)),
        ] {
            let lam = Partition::new(heights.clone());
            let q = q_lambda(&lam);
            let qbar = q.invert();
            let one = LaurentChar::monomial(0, 0);
            let front = &(&one
                - &LaurentChar::monomial(-(bound.b as i64), -(bound.a as i64)))
                * &q;
            assert_eq!(front.fixed_part(), 1);
            let qq = &q * &qbar;
            assert_eq!(qq.fixed_part(), lam.size() as i64);
            let a2 = heights[0] as i64; // rows touching the first column
            assert_eq!(
                (&LaurentChar::monomial(-1, 0) * &qq).fixed_part(),
                lam.size() as i64 - a2
            );
            let a1 = heights.len() as i64;
            assert_eq!(
                (&LaurentChar::monomial(0, -1) * &qq).fixed_part(),
                lam.size() as i64 - a1
            );
        }
    }

    #[test]
    fn edge_symmetry_on_p2() {
        let s = ToricSurface::p2();
        for e in 0..3 {
            for d in 1..=3 {
                let (v1, v2) = s.edge(EdgeId(e)).endpoints;
                let a = edge_char_global(&s, EdgeId(e), v1, d);
                let b = edge_char_global(&s, EdgeId(e), v2, d);
                assert_eq!(a, b, "edge {e} degree {d}");
            }
        }
    }

    #[test]
    fn edge_symmetry_on_quadric_and_hirzebruch() {
        for s in [
            ToricSurface::from_fan(&[[1, 0], [0, 1], [-1, 0], [0, -1]]).unwrap(),
            ToricSurface::from_fan(&[[1, 0], [0, 1], [-1, 2], [0, -1]]).unwrap(),
        ] {
            for e in 0..s.edges().len() {
                for d in 1..=3 {
                    let (v1, v2) = s.edge(EdgeId(e)).endpoints;
                    let a = edge_char_global(&s, EdgeId(e), v1, d);
                    let b = edge_char_global(&s, EdgeId(e), v2, d);
                    assert_eq!(a, b, "surface {} edge {e} degree {d}", s.name);
                }
            }
        }
    }
}
