//! Unit currents on slices and the invariant built from them.
//!
//! For an edge `e = (a, b)` of a finite connected graph, the unit
//! current is `i = dv` with `Lv = δ_b - δ_a` (potentials grounded at
//! `a`): the unique unit flow from `a` to `b` of minimal energy. Its
//! value through `e` itself equals the effective resistance between the
//! endpoints, and also the squared norm of the projection of `1_e` onto
//! the orthocomplement of the cycle space.
//!
//! Two boundary conventions give two-sided bounds along an exhaustion by
//! balls: the free current (ball as-is) is nonincreasing in the radius,
//! the wired current (boundary contracted to a hub, which turns the
//! projection target into the span of interior star vectors) is
//! nondecreasing. Their difference therefore decreases to the projection
//! coefficient of `1_e` onto the orthocomplement of star plus cycle
//! space — the space of coboundaries of harmonic functions of finite
//! energy. Half the weighted sum of these coefficients over edges at
//! orbit representatives is the estimator computed by
//! [`beta1_estimate`]; each per-radius value is a certified upper bound
//! and no extrapolation is applied.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphs::{GraphFamily, GraphSlice, OrbitWeights, DEFAULT_VERTEX_BUDGET};
use crate::numerics::{self, cg_solve, laplacian};

/// Antisymmetric real function on oriented edges, stored as one value
/// per unoriented edge on the slice's stored orientation; reversing the
/// orientation negates the value.
#[derive(Clone, Debug)]
pub struct Cochain1 {
    pub values: Vec<f64>,
}

impl Cochain1 {
    pub fn zero(edge_count: usize) -> Self {
        Cochain1 {
            values: vec![0.0; edge_count],
        }
    }

    pub fn value(&self, edge: usize) -> f64 {
        self.values[edge]
    }

    pub fn inner(&self, other: &[f64]) -> f64 {
        numerics::dot(&self.values, other)
    }
}

/// Relative CG tolerance used for current computations.
pub const CURRENT_TOLERANCE: f64 = numerics::DEFAULT_CG_TOLERANCE;

/// Residual scale below which monotonicity violations are treated as
/// solver noise rather than errors.
pub const MONOTONE_SLACK: f64 = 2e-8;

fn solve_current(slice: &GraphSlice, edge: usize, tolerance: f64) -> Result<Cochain1> {
    let (tail, head) = slice.edges[edge];
    // A connected graph with vertex_count - 1 edges is a tree; the unique
    // unit flow is the edge itself.
    if slice.edge_count() == slice.vertex_count - 1 {
        let mut c = Cochain1::zero(slice.edge_count());
        c.values[edge] = 1.0;
        return Ok(c);
    }
    // Ground the vertex of largest degree (ties: lowest id). Any choice
    // pins the constant mode; removing the highest-degree row keeps the
    // matrix entries small, which matters after boundary contraction
    // where the hub degree can reach the boundary size and would
    // otherwise set the attainable f64 accuracy.
    let mut degree = vec![0u64; slice.vertex_count];
    for &(t, h) in &slice.edges {
        if t != h {
            degree[t as usize] += 1;
            degree[h as usize] += 1;
        }
    }
    let ground = (0..slice.vertex_count)
        .max_by_key(|&v| (degree[v], usize::MAX - v))
        .expect("nonempty slice") as u32;
    let lap = laplacian(slice);
    let grounded = lap.delete_row_col(ground as usize);
    let reduced_index = |v: u32| -> usize {
        if v > ground {
            v as usize - 1
        } else {
            v as usize
        }
    };
    let mut b = vec![0.0; grounded.dimension];
    if head != ground {
        b[reduced_index(head)] += 1.0;
    }
    if tail != ground {
        b[reduced_index(tail)] -= 1.0;
    }
    // One-dimensional slices contract to long cycles whose condition
    // number grows quadratically, so CG can need a full Krylov sweep;
    // give the cap a dimension-linear floor (bounded, so large
    // well-conditioned systems keep a sane limit).
    let max_iterations = numerics::default_max_iterations(grounded.dimension)
        .max((grounded.dimension + 100).min(50_000));
    let report = cg_solve(&grounded, &b, tolerance, max_iterations);
    if !report.converged {
        return Err(Error::Numeric {
            residual: report.residual_norm,
            iterations: report.iterations,
            report,
        });
    }
    let mut potential = vec![0.0; slice.vertex_count];
    for v in 0..slice.vertex_count as u32 {
        if v != ground {
            potential[v as usize] = report.solution[reduced_index(v)];
        }
    }
    let values = slice
        .edges
        .iter()
        .map(|&(t, h)| potential[h as usize] - potential[t as usize])
        .collect();
    Ok(Cochain1 { values })
}

/// Unit current from the tail to the head of `edge` in the slice with
/// free boundary. Satisfies the node law at every vertex except the two
/// endpoints and is orthogonal to every cycle.
pub fn free_unit_current(slice: &GraphSlice, edge: usize) -> Result<Cochain1> {
    free_unit_current_with(slice, edge, CURRENT_TOLERANCE)
}

/// [`free_unit_current`] at an explicit relative solver tolerance.
pub fn free_unit_current_with(slice: &GraphSlice, edge: usize, tolerance: f64) -> Result<Cochain1> {
    if edge >= slice.edge_count() {
        return Err(Error::invalid(format!("edge index {edge} out of range")));
    }
    let (t, h) = slice.edges[edge];
    if t == h {
        return Err(Error::invalid("unit current through a self-loop"));
    }
    solve_current(slice, edge, tolerance)
}

/// Unit current with wired boundary: the free current of the
/// boundary-contracted slice, pulled back to the original edge indices
/// (contraction preserves edge indices and orientations, so the
/// pull-back is the identity; hub self-loops carry zero).
///
/// On a slice without boundary the wired and free conventions coincide.
pub fn wired_unit_current(slice: &GraphSlice, edge: usize) -> Result<Cochain1> {
    wired_unit_current_with(slice, edge, CURRENT_TOLERANCE)
}

/// [`wired_unit_current`] at an explicit relative solver tolerance.
pub fn wired_unit_current_with(
    slice: &GraphSlice,
    edge: usize,
    tolerance: f64,
) -> Result<Cochain1> {
    if edge >= slice.edge_count() {
        return Err(Error::invalid(format!("edge index {edge} out of range")));
    }
    if slice.boundary.is_empty() {
        return free_unit_current_with(slice, edge, tolerance);
    }
    let (t, h) = slice.edges[edge];
    if slice.is_boundary(t) || slice.is_boundary(h) {
        return Err(Error::invalid(
            "wired current through an edge touching the boundary",
        ));
    }
    let contracted = slice.contract_boundary()?;
    free_unit_current_with(&contracted, edge, tolerance)
}

/// Largest node-law violation `|d* i|` over interior vertices other than
/// the endpoints of `edge`.
pub fn kirchhoff_residual(slice: &GraphSlice, current: &Cochain1, edge: usize) -> f64 {
    let (a, b) = slice.edges[edge];
    let mut divergence = vec![0.0; slice.vertex_count];
    for (i, &(t, h)) in slice.edges.iter().enumerate() {
        if t == h {
            continue;
        }
        divergence[h as usize] += current.values[i];
        divergence[t as usize] -= current.values[i];
    }
    let mask = slice.boundary_mask();
    let mut worst = 0.0f64;
    for v in 0..slice.vertex_count as u32 {
        if v == a || v == b || mask[v as usize] {
            continue;
        }
        worst = worst.max(divergence[v as usize].abs());
    }
    worst
}

/// Star vector `d 1_v` in edge coordinates: +1 on edges with head `v`,
/// -1 on edges with tail `v`. A validation helper for projection
/// oracles; independent of the solver path.
pub fn star_vector(slice: &GraphSlice, v: u32) -> Vec<f64> {
    let mut out = vec![0.0; slice.edge_count()];
    for (i, &(t, h)) in slice.edges.iter().enumerate() {
        if t == h {
            continue;
        }
        if h == v {
            out[i] = 1.0;
        } else if t == v {
            out[i] = -1.0;
        }
    }
    out
}

/// Fundamental cycle vectors with respect to a breadth-first spanning
/// tree from the base vertex: one unit circulation per non-tree edge.
pub fn fundamental_cycles(slice: &GraphSlice) -> Vec<Vec<f64>> {
    let n = slice.vertex_count;
    let adj = slice.adjacency();
    let mut parent_edge: Vec<Option<u32>> = vec![None; n];
    let mut depth = vec![0u32; n];
    let mut seen = vec![false; n];
    let mut in_tree = vec![false; slice.edge_count()];
    let root = slice.base_vertex as usize;
    seen[root] = true;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &(v, e) in adj.neighbors(u) {
            let v = v as usize;
            if !seen[v] {
                seen[v] = true;
                parent_edge[v] = Some(e);
                in_tree[e as usize] = true;
                depth[v] = depth[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let other_end = |edge: u32, v: usize| -> usize {
        let (t, h) = slice.edges[edge as usize];
        if t as usize == v {
            h as usize
        } else {
            t as usize
        }
    };
    // Sign of traversing `edge` out of vertex `v`: +1 when leaving the
    // tail (flow tail -> head), -1 when leaving the head.
    let step_sign = |edge: u32, v: usize| -> f64 {
        let (t, _) = slice.edges[edge as usize];
        if t as usize == v {
            1.0
        } else {
            -1.0
        }
    };
    let mut cycles = Vec::new();
    for (e, &(t, h)) in slice.edges.iter().enumerate() {
        if in_tree[e] || t == h {
            continue;
        }
        let mut z = vec![0.0; slice.edge_count()];
        z[e] = 1.0;
        // Close the circulation along the tree path head -> tail.
        let (mut x, mut y) = (h as usize, t as usize);
        while x != y {
            if depth[x] >= depth[y] {
                let pe = parent_edge[x].expect("non-root has a parent");
                z[pe as usize] += step_sign(pe, x);
                x = other_end(pe, x);
            } else {
                let pe = parent_edge[y].expect("non-root has a parent");
                z[pe as usize] -= step_sign(pe, y);
                y = other_end(pe, y);
            }
        }
        cycles.push(z);
    }
    cycles
}

/// Free and wired currents through one edge at a given radius, and their
/// difference: the radius-`r` upper bound for the projection coefficient
/// of that edge orbit.
#[derive(Clone, Debug, serde::Serialize)]
pub struct EdgeCoefficient {
    pub edge_orbit: u32,
    pub free_current: f64,
    pub wired_current: f64,
    pub coefficient: f64,
    pub radius: usize,
}

/// Representative edge of an edge orbit at the base vertex: the
/// lowest-index incident edge carrying that orbit label.
fn representative_edge_at(slice: &GraphSlice, vertex: u32, edge_orbit: Option<u32>) -> Option<usize> {
    slice
        .edges_at(vertex)
        .into_iter()
        .find(|&e| edge_orbit.is_none_or(|o| slice.edge_orbit[e] == o))
}

pub fn edge_coefficient(family: &GraphFamily, edge_orbit: u32, radius: usize) -> Result<EdgeCoefficient> {
    if radius < 2 {
        return Err(Error::invalid("edge_coefficient needs radius >= 2"));
    }
    let slice = family.build_slice(radius)?;
    let edge = representative_edge_at(&slice, slice.base_vertex, Some(edge_orbit))
        .ok_or_else(|| {
            Error::invalid(format!(
                "no edge of orbit {edge_orbit} at the base vertex of {}",
                family.describe()
            ))
        })?;
    let free = free_unit_current(&slice, edge)?.value(edge);
    let wired = wired_unit_current(&slice, edge)?.value(edge);
    Ok(EdgeCoefficient {
        edge_orbit,
        free_current: free,
        wired_current: wired,
        coefficient: free - wired,
        radius,
    })
}

/// One evaluated edge in a [`Beta1Estimate`].
#[derive(Clone, Debug, serde::Serialize)]
pub struct CoefficientRow {
    pub radius: usize,
    pub orbit: u32,
    pub edge_index: usize,
    pub free_current: f64,
    pub wired_current: f64,
    pub coefficient: f64,
}

/// Monotone sequence of upper bounds indexed by exhaustion radius.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Beta1Estimate {
    pub family: String,
    pub orbit_weights: Vec<f64>,
    pub per_radius: Vec<(usize, f64)>,
    pub final_value: f64,
    pub converged: bool,
    #[serde(skip)]
    pub rows: Vec<CoefficientRow>,
}

/// Evaluate the weighted coefficient sum on one slice:
/// `(1/2T) * sum_i (1/w_i) * sum_{edges at rep_i} (free - wired)`.
fn slice_bound(
    slice: &GraphSlice,
    weights: &OrbitWeights,
    radius: usize,
) -> Result<(f64, Vec<CoefficientRow>)> {
    let t = weights.normalizer();
    let mut tasks: Vec<(u32, usize)> = Vec::new();
    for orbit in 0..weights.orbit_count() as u32 {
        let rep = slice.orbit_representative(orbit).ok_or_else(|| {
            Error::invalid(format!("slice has no vertex in orbit {orbit}"))
        })?;
        for e in slice.edges_at(rep) {
            tasks.push((orbit, e));
        }
    }
    let solved: Vec<(u32, usize, f64, f64)> = tasks
        .par_iter()
        .map(|&(orbit, e)| -> Result<(u32, usize, f64, f64)> {
            let free = free_unit_current(slice, e)?.value(e);
            let wired = wired_unit_current(slice, e)?.value(e);
            Ok((orbit, e, free, wired))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(solved.len());
    let mut bound = 0.0;
    for (orbit, e, free, wired) in solved {
        bound += (free - wired) / weights.stabilizer_weight[orbit as usize];
        rows.push(CoefficientRow {
            radius,
            orbit,
            edge_index: e,
            free_current: free,
            wired_current: wired,
            coefficient: free - wired,
        });
    }
    Ok((bound / (2.0 * t), rows))
}

pub fn beta1_estimate(
    family: &GraphFamily,
    weights: &OrbitWeights,
    radii: &[usize],
) -> Result<Beta1Estimate> {
    beta1_estimate_with_budget(family, weights, radii, DEFAULT_VERTEX_BUDGET)
}

pub fn beta1_estimate_with_budget(
    family: &GraphFamily,
    weights: &OrbitWeights,
    radii: &[usize],
    budget: usize,
) -> Result<Beta1Estimate> {
    if radii.is_empty() {
        return Err(Error::invalid("radius list is empty"));
    }
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("radii must be strictly increasing"));
    }
    if weights.orbit_count() != family.orbit_count() {
        return Err(Error::invalid(format!(
            "{} orbit weights supplied for a family with {} orbits",
            weights.orbit_count(),
            family.orbit_count()
        )));
    }
    // Orbit representatives other than the base sit at distance 1, so
    // their edges reach distance 2 and must stay interior.
    let min_radius = if family.orbit_count() > 1 { 3 } else { 2 };
    if radii[0] < min_radius {
        return Err(Error::invalid(format!(
            "smallest radius {} below the minimum {min_radius} for {}",
            radii[0],
            family.describe()
        )));
    }
    let mut per_radius: Vec<(usize, f64)> = Vec::with_capacity(radii.len());
    let mut rows: Vec<CoefficientRow> = Vec::new();
    // Edge indices are stable across radii (balls nest as prefixes), so
    // the two-sided bracketing can be checked edge by edge.
    let mut previous: std::collections::HashMap<(u32, usize), (f64, f64)> =
        std::collections::HashMap::new();
    for &r in radii {
        let slice = family.build_slice_with_budget(r, budget)?;
        let (bound, mut radius_rows) = slice_bound(&slice, weights, r)?;
        if let Some(&(_, prev)) = per_radius.last() {
            if bound > prev + MONOTONE_SLACK {
                return Err(Error::Inconsistency(format!(
                    "upper bound increased from {prev} to {bound} at radius {r}"
                )));
            }
        }
        for row in &radius_rows {
            if let Some(&(free_prev, wired_prev)) =
                previous.get(&(row.orbit, row.edge_index))
            {
                if row.free_current > free_prev + MONOTONE_SLACK {
                    return Err(Error::Inconsistency(format!(
                        "free current through edge {} grew from {free_prev} to {} at radius {r}",
                        row.edge_index, row.free_current
                    )));
                }
                if row.wired_current < wired_prev - MONOTONE_SLACK {
                    return Err(Error::Inconsistency(format!(
                        "wired current through edge {} fell from {wired_prev} to {} at radius {r}",
                        row.edge_index, row.wired_current
                    )));
                }
            }
            previous.insert((row.orbit, row.edge_index), (row.free_current, row.wired_current));
        }
        per_radius.push((r, bound));
        rows.append(&mut radius_rows);
    }
    let final_value = per_radius.last().unwrap().1;
    let converged = per_radius.len() >= 2 && {
        let prev = per_radius[per_radius.len() - 2].1;
        (prev - final_value).abs() <= f64::max(1e-6, 1e-3 * f64::max(final_value.abs(), 1.0))
    };
    Ok(Beta1Estimate {
        family: family.describe(),
        orbit_weights: weights.stabilizer_weight.clone(),
        per_radius,
        final_value,
        converged,
        rows,
    })
}

/// Vanishing verdict at the given threshold, with the margin
/// `threshold - final_value` (positive when the invariant is judged
/// zero).
#[derive(Clone, Debug, serde::Serialize)]
pub struct OhdReport {
    pub is_ohd: bool,
    pub margin: f64,
}

pub fn is_ohd(estimate: &Beta1Estimate, threshold: f64) -> Result<OhdReport> {
    if !(threshold > 0.0) {
        return Err(Error::invalid("threshold must be positive"));
    }
    Ok(OhdReport {
        is_ohd: estimate.final_value <= threshold,
        margin: threshold - estimate.final_value,
    })
}

/// CSV export: one row per evaluated edge, a trailing summary row with
/// orbit -1 carrying the final value.
pub fn write_beta1_csv<W: std::io::Write>(estimate: &Beta1Estimate, out: &mut W) -> Result<()> {
    writeln!(
        out,
        "radius,orbit,edge_index,free_current,wired_current,coefficient,beta1_upper_bound"
    )?;
    let bound_at = |radius: usize| -> f64 {
        estimate
            .per_radius
            .iter()
            .find(|&&(r, _)| r == radius)
            .map(|&(_, b)| b)
            .unwrap_or(f64::NAN)
    };
    for row in &estimate.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.radius,
            row.orbit,
            row.edge_index,
            row.free_current,
            row.wired_current,
            row.coefficient,
            bound_at(row.radius)
        )?;
    }
    let last = estimate.per_radius.last().expect("nonempty");
    writeln!(out, "{},-1,-1,,,,{}", last.0, estimate.final_value)?;
    Ok(())
}
