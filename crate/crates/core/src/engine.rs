//! Assembles global partition-function coefficients: enumerates fixed
//! points, builds their Chern/Euler factor products, specializes along a
//! generic slope `s₁ = c·s₂`, sums exactly, and takes the limit at the
//! origin. Values are always computed at two admissible slopes and must
//! agree.
//!
//! Two exact routes coexist: [`global_coefficient`] carries full rational
//! functions (the reference form, used by the identity checks), while the
//! series driver behind [`evir`]/[`evir_series`] works on truncated Laurent
//! windows, which keep polynomial degrees proportional to the pole order
//! instead of the partition sizes. The two routes are compared directly in
//! the test suite.

use std::collections::{HashMap, HashSet};

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::analysis::goettsche_coeffs;
use crate::characters::{
    chern_euler, edge_char_global, g_vertex, infinite_vertex, to_global, CharacterError,
    LaurentChar,
};
use crate::exact::{rat_int, ExactError, FactorProduct, LaurentWindow, Rat, URatFunc};
use crate::toricgeom::{DegreeTuple, Partition, RayBound, ToricSurface, VertexId};

/// Version tag for every emitted value; bump if the class-assembly
/// orientation ever changes.
pub const CONVENTION_VERSION: &str = "v1";

/// Number of slope candidates tried before giving up.
const MAX_SLOPE_ATTEMPTS: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("no admissible slope after {tried} candidates")]
    SlopeExhausted { tried: usize },
    #[error("slope cross-check failed: {v1} at slope {s1} vs {v2} at slope {s2}")]
    SlopeDisagreement { v1: Rat, s1: Rat, v2: Rat, s2: Rat },
}

/// One computed series coefficient, with enough metadata to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficient {
    pub surface: String,
    pub degree: Vec<i64>,
    pub m: u32,
    pub value: Rat,
    pub slope_used: Rat,
    pub convention_version: &'static str,
}

/// The full vertex block in chart coordinates: the degree-only part with
/// inverted exponents plus the partition part. The inversion is the
/// orientation pinned by the degree-2 calibration test
/// (`calibration_pins_orientation` in the acceptance suite).
pub fn vertex_block(lam: &Partition, bound: RayBound) -> Result<LaurentChar, CharacterError> {
    Ok(&infinite_vertex(bound).invert() + &g_vertex(lam, bound)?)
}

/// The assembled tangent character of one fixed point in global weights:
/// every edge block once, plus every vertex block.
pub fn assembled_char(
    surface: &ToricSurface,
    d: &DegreeTuple,
    lams: &[Partition],
) -> Result<LaurentChar, EngineError> {
    let mut total = LaurentChar::zero();
    for edge in surface.edges() {
        if d.get(edge.id) > 0 {
            total = &total + &edge_char_global(surface, edge.id, edge.endpoints.0, d.get(edge.id));
        }
    }
    for vertex in surface.vertices() {
        let bound = surface.ray_bounds(d, vertex.id);
        let block = vertex_block(&lams[vertex.id.0], bound)?;
        total = &total + &to_global(&block, vertex);
    }
    Ok(total)
}

/// The factored Chern/Euler class of one fixed point: the product over all
/// edges of the edge-block class and over all vertices of the vertex-block
/// class.
pub fn fixedpoint_class(
    surface: &ToricSurface,
    d: &DegreeTuple,
    lams: &[Partition],
) -> Result<FactorProduct, EngineError> {
    let mut fp = degree_class(surface, d)?;
    for vertex in surface.vertices() {
        let bound = surface.ray_bounds(d, vertex.id);
        if !lams[vertex.id.0].is_empty() {
            fp.mul_assign(&partition_class(surface, vertex.id, &lams[vertex.id.0], bound)?);
        }
    }
    Ok(fp)
}

/// The partition-independent part of a fixed-point class: all edge blocks
/// plus the degree-only vertex blocks.
fn degree_class(surface: &ToricSurface, d: &DegreeTuple) -> Result<FactorProduct, EngineError> {
    let mut fp = FactorProduct::empty();
    for edge in surface.edges() {
        if d.get(edge.id) > 0 {
            let global = edge_char_global(surface, edge.id, edge.endpoints.0, d.get(edge.id));
            fp.mul_assign(&chern_euler(&global)?);
        }
    }
    for vertex in surface.vertices() {
        let bound = surface.ray_bounds(d, vertex.id);
        let f = infinite_vertex(bound).invert();
        fp.mul_assign(&chern_euler(&to_global(&f, vertex))?);
    }
    Ok(fp)
}

/// The class of one partition block at a vertex, in global weights.
fn partition_class(
    surface: &ToricSurface,
    vertex: VertexId,
    lam: &Partition,
    bound: RayBound,
) -> Result<FactorProduct, EngineError> {
    let v = surface.vertex(vertex);
    Ok(chern_euler(&to_global(&g_vertex(lam, bound)?, v))?)
}

/// The slope-specialized sum of partition-block classes over all partitions
/// of size `m_prime` inside the bound, in the chart of `vertex` mapped to
/// global weights.
pub fn local_vertex_sum(
    surface: &ToricSurface,
    vertex: VertexId,
    bound: RayBound,
    m_prime: u32,
    slope: &Rat,
) -> Result<URatFunc, EngineError> {
    let mut acc = URatFunc::zero();
    for lam in crate::toricgeom::partitions_in_rays(bound, m_prime) {
        let class = partition_class(surface, vertex, &lam, bound)?;
        acc = &acc + &class.specialize(slope)?;
    }
    Ok(acc)
}

/// The local partition-function coefficient on the standard chart (identity
/// weights): `Σ_{|λ|=m'} c•/e(G_λ)` specialized along the slope.
pub fn local_partition_coefficient(
    bound: RayBound,
    m_prime: u32,
    slope: &Rat,
) -> Result<URatFunc, EngineError> {
    let mut acc = URatFunc::zero();
    for lam in crate::toricgeom::partitions_in_rays(bound, m_prime) {
        let class = chern_euler(&g_vertex(&lam, bound)?)?;
        acc = &acc + &class.specialize(slope)?;
    }
    Ok(acc)
}

/// Shift `β(β+K)/2` between subscheme length and holomorphic Euler
/// characteristic (`m = n + shift`), derived from any degree tuple in the
/// class.
pub fn class_shift(surface: &ToricSurface, beta: &[i64]) -> Option<i64> {
    let tuples = surface.degree_tuples(beta);
    let first = tuples.first()?;
    let shift = surface.pairing_shift(first);
    debug_assert!(tuples.iter().all(|t| surface.pairing_shift(t) == shift));
    Some(shift)
}

pub fn n_to_m(surface: &ToricSurface, beta: &[i64], n: i64) -> Option<i64> {
    class_shift(surface, beta).map(|s| n + s)
}

pub fn m_to_n(surface: &ToricSurface, beta: &[i64], m: i64) -> Option<i64> {
    class_shift(surface, beta).map(|s| m - s)
}

/// Deterministic slope candidates: integers `B, B+1, …` with
/// `B = 1 + dmax·(m+2)·maxw`, which clears every weight ratio that can
/// occur; admissibility is still checked factor by factor during
/// specialization and failures move to the next candidate.
pub fn slope_candidates(surface: &ToricSurface, dmax: u64, m: u32) -> impl Iterator<Item = Rat> {
    let base = 1 + (dmax as i64) * (m as i64 + 2) * surface.max_weight_entry();
    (0..).map(move |k| rat_int(base + k))
}

/// The q^m coefficient of the shifted global series at a fixed slope, as a
/// full rational function of the specialization variable: for every degree
/// tuple, the specialized degree-only class times the convolution of local
/// sums over all size compositions of `m`.
pub fn global_coefficient(
    surface: &ToricSurface,
    beta: &[i64],
    m: u32,
    slope: &Rat,
) -> Result<URatFunc, EngineError> {
    if beta.iter().all(|&b| b == 0) {
        let coeffs = goettsche_coeffs(surface.euler_characteristic(), m as usize);
        return Ok(URatFunc::constant(coeffs[m as usize].clone()));
    }
    let nv = surface.vertices().len();
    let mut locals: HashMap<(VertexId, RayBound, u32), URatFunc> = HashMap::new();
    let mut acc = URatFunc::zero();
    for tuple in surface.degree_tuples(beta) {
        let outer = degree_class(surface, &tuple)?.specialize(slope)?;
        let bounds: Vec<RayBound> = (0..nv)
            .map(|v| surface.ray_bounds(&tuple, VertexId(v)))
            .collect();
        for comp in compositions(m, nv) {
            let mut term = outer.clone();
            for (v, &mv) in comp.iter().enumerate() {
                let key = (VertexId(v), bounds[v], mv);
                if !locals.contains_key(&key) {
                    let val = local_vertex_sum(surface, key.0, key.1, key.2, slope)?;
                    locals.insert(key, val);
                }
                let entry = &locals[&key];
                if entry.is_zero() {
                    term = URatFunc::zero();
                    break;
                }
                term = &term * entry;
            }
            acc = &acc + &term;
        }
    }
    Ok(acc)
}

/// All ways to write `m` as an ordered sum of `parts` nonnegative integers.
fn compositions(m: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; parts];
    fn rec(cur: &mut Vec<u32>, idx: usize, left: u32, out: &mut Vec<Vec<u32>>) {
        if idx == cur.len() - 1 {
            cur[idx] = left;
            out.push(cur.clone());
            return;
        }
        for d in 0..=left {
            cur[idx] = d;
            rec(cur, idx + 1, left - d, out);
        }
    }
    rec(&mut cur, 0, m, &mut out);
    out
}

/// Slope-specialized series data for one class: per degree tuple, the
/// truncated Laurent windows of `outer · Π_v (Σ_{m'} L_v[m'] q^{m'})`
/// collected as coefficients of `q^0..q^{m_max}`.
struct WindowState {
    slope: Rat,
    /// `tuple_series[t][m]` is the x-window of the q^m coefficient of
    /// tuple `t`'s contribution.
    tuple_series: Vec<Vec<LaurentWindow>>,
}

impl WindowState {
    fn build(
        surface: &ToricSurface,
        tuples: &[DegreeTuple],
        slope: &Rat,
        m_max: u32,
    ) -> Result<Self, EngineError> {
        let nv = surface.vertices().len();
        let outer_fps: Vec<FactorProduct> = tuples
            .iter()
            .map(|t| degree_class(surface, t))
            .collect::<Result<_, _>>()?;
        // Window length: every term's pole order is at most the degree-only
        // pole plus the total partition size, so this keeps the constant
        // term exactly covered everywhere.
        let max_outer_pole = outer_fps
            .iter()
            .map(|fp| fp.factors().map(|(_, m)| m).sum::<i64>().max(0))
            .max()
            .unwrap_or(0);
        let len = (max_outer_pole + m_max as i64 + 2) as usize;

        let mut keys: Vec<(VertexId, RayBound)> = Vec::new();
        let mut seen = HashSet::new();
        for t in tuples {
            for v in 0..nv {
                let key = (VertexId(v), surface.ray_bounds(t, VertexId(v)));
                if seen.insert(key) {
                    keys.push(key);
                }
            }
        }
        let locals: HashMap<(VertexId, RayBound), Vec<LaurentWindow>> = keys
            .into_par_iter()
            .map(|(v, bound)| {
                let mut table = Vec::with_capacity(m_max as usize + 1);
                for m_prime in 0..=m_max {
                    let mut acc = LaurentWindow::zero();
                    for lam in crate::toricgeom::partitions_in_rays(bound, m_prime) {
                        let class = partition_class(surface, v, &lam, bound)?;
                        acc = acc.add(&LaurentWindow::from_factor_product(&class, slope, len)?);
                    }
                    table.push(acc);
                }
                Ok(((v, bound), table))
            })
            .collect::<Result<_, EngineError>>()?;

        let tuple_series: Vec<Vec<LaurentWindow>> = tuples
            .par_iter()
            .zip(outer_fps.par_iter())
            .map(|(t, outer_fp)| {
                let outer = LaurentWindow::from_factor_product(outer_fp, slope, len)?;
                let mut series = vec![LaurentWindow::zero(); m_max as usize + 1];
                series[0] = LaurentWindow::from_factor_product(&FactorProduct::empty(), slope, len)?;
                for v in 0..nv {
                    let table = &locals[&(VertexId(v), surface.ray_bounds(t, VertexId(v)))];
                    series = qmul(&series, table, m_max);
                }
                Ok(series
                    .into_iter()
                    .map(|s| outer.mul(&s))
                    .collect::<Vec<_>>())
            })
            .collect::<Result<_, EngineError>>()?;

        Ok(WindowState {
            slope: slope.clone(),
            tuple_series,
        })
    }

    /// The x-window of the q^m coefficient of the whole class.
    fn coefficient(&self, m: u32) -> LaurentWindow {
        let mut acc = LaurentWindow::zero();
        for series in &self.tuple_series {
            acc = acc.add(&series[m as usize]);
        }
        acc
    }
}

/// Coefficient-wise product of two q-truncated series of x-windows.
fn qmul(a: &[LaurentWindow], b: &[LaurentWindow], m_max: u32) -> Vec<LaurentWindow> {
    (0..=m_max as usize)
        .map(|m| {
            let mut acc = LaurentWindow::zero();
            for i in 0..=m {
                acc = acc.add(&a[i].mul(&b[m - i]));
            }
            acc
        })
        .collect()
}

fn goettsche_series(surface: &ToricSurface, beta: &[i64], m_max: u32) -> Vec<Coefficient> {
    goettsche_coeffs(surface.euler_characteristic(), m_max as usize)
        .into_iter()
        .enumerate()
        .map(|(m, value)| Coefficient {
            surface: surface.name.clone(),
            degree: beta.to_vec(),
            m: m as u32,
            value,
            slope_used: Rat::zero(),
            convention_version: CONVENTION_VERSION,
        })
        .collect()
}

/// Builds window states at the first two admissible slopes of the ladder.
fn admissible_states(
    surface: &ToricSurface,
    tuples: &[DegreeTuple],
    m_max: u32,
) -> Result<[WindowState; 2], EngineError> {
    let dmax = tuples.iter().map(|t| t.total()).max().unwrap_or(0);
    let mut states: Vec<WindowState> = Vec::new();
    let mut tried = 0;
    for slope in slope_candidates(surface, dmax, m_max) {
        tried += 1;
        if tried > MAX_SLOPE_ATTEMPTS {
            return Err(EngineError::SlopeExhausted { tried: tried - 1 });
        }
        match WindowState::build(surface, tuples, &slope, m_max) {
            Ok(state) => {
                states.push(state);
                if states.len() == 2 {
                    break;
                }
            }
            Err(EngineError::Exact(ExactError::SlopeOnPole { .. })) => continue,
            Err(e) => return Err(e),
        }
    }
    let second = states.pop().expect("two admissible states");
    let first = states.pop().expect("two admissible states");
    Ok([first, second])
}

/// The virtual Euler characteristic coefficient: computed at the first two
/// admissible slopes from the deterministic ladder and asserted equal.
pub fn evir(surface: &ToricSurface, beta: &[i64], m: u32) -> Result<Coefficient, EngineError> {
    Ok(evir_series_upto(surface, beta, m, m)?
        .pop()
        .expect("requested coefficient present"))
}

/// Coefficients `m = 0..=m_max` of the shifted series, sharing the local
/// window tables across coefficients.
pub fn evir_series(
    surface: &ToricSurface,
    beta: &[i64],
    m_max: u32,
) -> Result<Vec<Coefficient>, EngineError> {
    evir_series_upto(surface, beta, 0, m_max)
}

fn evir_series_upto(
    surface: &ToricSurface,
    beta: &[i64],
    m_lo: u32,
    m_max: u32,
) -> Result<Vec<Coefficient>, EngineError> {
    if beta.iter().all(|&b| b == 0) {
        return Ok(goettsche_series(surface, beta, m_max)
            .into_iter()
            .skip(m_lo as usize)
            .collect());
    }
    let tuples = surface.degree_tuples(beta);
    let [first, second] = admissible_states(surface, &tuples, m_max)?;
    let mut out = Vec::with_capacity((m_max - m_lo) as usize + 1);
    for m in m_lo..=m_max {
        let v1 = first.coefficient(m).limit_at_zero()?;
        let v2 = second.coefficient(m).limit_at_zero()?;
        if v1 != v2 {
            return Err(EngineError::SlopeDisagreement {
                v1,
                s1: first.slope.clone(),
                v2,
                s2: second.slope.clone(),
            });
        }
        out.push(Coefficient {
            surface: surface.name.clone(),
            degree: beta.to_vec(),
            m,
            value: v1,
            slope_used: first.slope.clone(),
            convention_version: CONVENTION_VERSION,
        });
    }
    Ok(out)
}
