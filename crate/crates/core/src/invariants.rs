//! Cross-module consistency checks: the threshold-gap inequalities, the
//! cluster-level coefficient dichotomy, cost bounds, and the
//! mass-transport identity on tori.
//!
//! The gap inequalities are exact statements about infinite graphs; at
//! desk scale both sides are estimates, so a check "holds" when the left
//! side does not exceed the right side plus the combined uncertainty of
//! the inputs, and every report records both sides, the slack and the
//! inputs it was computed from.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graphs::{GraphFamily, OrbitWeights};
use crate::harmonic::{self, Beta1Estimate};
use crate::percolation::{origin_cluster, EdgeLabels, ThresholdEstimate};
use crate::randomcluster::GapReport;
use crate::rng;

/// Outcome of one inequality check. `holds` means
/// `lhs <= rhs + uncertainty`, with the uncertainty recorded in
/// `inputs`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub family: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    pub inputs: serde_json::Value,
    pub notes: String,
}

fn weighted_degree_from(family: &GraphFamily, estimate: &Beta1Estimate) -> Result<f64> {
    let weights = OrbitWeights::new(estimate.orbit_weights.clone())?;
    if weights.orbit_count() != family.orbit_count() {
        return Err(Error::invalid("estimate weights do not fit the family"));
    }
    Ok(family.weighted_degree(&weights))
}

fn ci_halfwidth(t: &ThresholdEstimate) -> f64 {
    0.5 * (t.ci_high - t.ci_low).max(0.0)
}

/// Invariant bound by the Bernoulli threshold gap:
/// `beta1 <= (deg / 2) * (pu - pc)`.
pub fn check_cor43(
    family: &GraphFamily,
    beta1: &Beta1Estimate,
    pc: &ThresholdEstimate,
    pu: &ThresholdEstimate,
) -> Result<InequalityReport> {
    let desc = family.describe();
    for (label, got) in [("beta1", &beta1.family), ("pc", &pc.family), ("pu", &pu.family)] {
        if *got != desc {
            return Err(Error::invalid(format!(
                "{label} estimate was computed for {got}, not {desc}"
            )));
        }
    }
    let deg = weighted_degree_from(family, beta1)?;
    let lhs = beta1.final_value;
    let rhs = 0.5 * deg * (pu.value - pc.value);
    let uncertainty = 0.5 * deg * (ci_halfwidth(pc) + ci_halfwidth(pu));
    Ok(InequalityReport {
        name: "threshold-gap".into(),
        family: desc,
        lhs,
        rhs,
        slack: rhs - lhs,
        holds: lhs <= rhs + uncertainty,
        inputs: serde_json::json!({
            "beta1": beta1.final_value,
            "degree": deg,
            "pc": pc,
            "pu": pu,
            "uncertainty": uncertainty,
        }),
        notes: "finite-volume consistency check; the infinite-volume statement is exact"
            .into(),
    })
}

/// Invariant bound by the expected-degree gap of the random-cluster
/// model: `beta1 <= gap`, with the gap already carrying the 1/2 factor.
pub fn check_cor46(
    family: &GraphFamily,
    beta1: &Beta1Estimate,
    gap: &GapReport,
) -> Result<InequalityReport> {
    let desc = family.describe();
    if beta1.family != desc || gap.family != desc {
        return Err(Error::invalid("estimates come from different families"));
    }
    let lhs = beta1.final_value;
    let rhs = gap.gap;
    let uncertainty = 3.0 * gap.stderr;
    Ok(InequalityReport {
        name: "rc-degree-gap".into(),
        family: desc,
        lhs,
        rhs,
        slack: rhs - lhs,
        holds: lhs <= rhs + uncertainty,
        inputs: serde_json::json!({
            "beta1": beta1.final_value,
            "gap": gap,
            "uncertainty": uncertainty,
        }),
        notes: "uncertainty is three Monte Carlo standard errors of the gap".into(),
    })
}

/// One origin-cluster coefficient sample.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ClusterBeta1Sample {
    pub seed_index: u64,
    pub p: f64,
    pub cluster_size: usize,
    pub boundary_reaching: bool,
    /// Half the sum of (free - wired) over cluster edges at the base.
    pub coefficient_half_sum: f64,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ClusterBeta1Summary {
    pub family: String,
    pub p: f64,
    pub truncation_radius: usize,
    pub finite_count: usize,
    pub finite_mean: f64,
    pub spanning_count: usize,
    pub spanning_mean: f64,
    pub samples: Vec<ClusterBeta1Sample>,
}

/// Coefficient sums on origin clusters, split by whether the cluster
/// reaches the ambient boundary. Finite clusters (fully interior) have
/// coinciding free and wired currents, so their sums vanish up to solver
/// tolerance; boundary-reaching clusters inherit the dichotomy of the
/// ambient graph.
pub fn cluster_beta1(
    family: &GraphFamily,
    p: f64,
    truncation_radius: usize,
    seeds: usize,
    seed: u64,
) -> Result<ClusterBeta1Summary> {
    if truncation_radius < 2 {
        return Err(Error::invalid("cluster coefficients need radius >= 2"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid("p must lie in [0, 1]"));
    }
    let slice = family.build_slice(truncation_radius)?;
    let mut samples = Vec::with_capacity(seeds);
    for i in 0..seeds as u64 {
        let labels = EdgeLabels::new(&slice, rng::subseed(seed, i));
        let cluster = origin_cluster(&labels, p);
        let base_edges = cluster.edges_at(cluster.base_vertex);
        let mut half_sum = 0.0;
        for e in base_edges {
            let free = harmonic::free_unit_current(&cluster, e)?.value(e);
            let wired = harmonic::wired_unit_current(&cluster, e)?.value(e);
            half_sum += 0.5 * (free - wired);
        }
        samples.push(ClusterBeta1Sample {
            seed_index: i,
            p,
            cluster_size: cluster.vertex_count,
            boundary_reaching: !cluster.boundary.is_empty(),
            coefficient_half_sum: half_sum,
        });
    }
    let class_mean = |reaching: bool| -> (usize, f64) {
        let vals: Vec<f64> = samples
            .iter()
            .filter(|s| s.boundary_reaching == reaching)
            .map(|s| s.coefficient_half_sum)
            .collect();
        if vals.is_empty() {
            (0, 0.0)
        } else {
            (vals.len(), vals.iter().sum::<f64>() / vals.len() as f64)
        }
    };
    let (finite_count, finite_mean) = class_mean(false);
    let (spanning_count, spanning_mean) = class_mean(true);
    Ok(ClusterBeta1Summary {
        family: family.describe(),
        p,
        truncation_radius,
        finite_count,
        finite_mean,
        spanning_count,
        spanning_mean,
        samples,
    })
}

/// Cost of the Bernoulli-`p` cluster graphing (half the expected
/// retained degree) against the invariant bound `beta1 <= cost - 1`,
/// with the treeing equality checked for tree families at `p = 1`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CostReport {
    pub family: String,
    pub p: f64,
    pub cost: f64,
    pub beta1_bound: f64,
    pub bound_holds: bool,
    pub treeing_equality: Option<bool>,
    pub relation: String,
}

pub fn cost_report(family: &GraphFamily, p: f64, beta1: &Beta1Estimate) -> Result<CostReport> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid("p must lie in [0, 1]"));
    }
    if beta1.family != family.describe() {
        return Err(Error::invalid("estimate comes from a different family"));
    }
    let deg = weighted_degree_from(family, beta1)?;
    let cost = 0.5 * deg * p;
    let tolerance = 0.01 * cost.max(1.0);
    // The graph-level bound compares the ambient invariant with the cost
    // of the full graphing; below full retention the retained graphing
    // generates a coarser structure and the comparison does not apply.
    let applicable = p == 1.0;
    let bound_holds = !applicable || beta1.final_value <= cost - 1.0 + tolerance;
    let treeing_equality = if family.is_tree() && applicable {
        Some((beta1.final_value - (cost - 1.0)).abs() <= tolerance)
    } else {
        None
    };
    let relation = match treeing_equality {
        Some(true) => "treeing: beta1 = cost - 1".into(),
        Some(false) => "tree family but equality not met at tolerance".into(),
        None if !applicable => "invariant bound applies at full retention (p = 1)".into(),
        None => {
            if bound_holds {
                "beta1 <= cost - 1".into()
            } else {
                "bound violated".into()
            }
        }
    };
    Ok(CostReport {
        family: family.describe(),
        p,
        cost,
        beta1_bound: beta1.final_value,
        bound_holds,
        treeing_equality,
        relation,
    })
}

/// The square torus `(Z/side)^2`, the finite vertex-transitive model on
/// which mass transport is checked exactly.
#[derive(Clone, Copy, Debug)]
pub struct Torus {
    pub side: i64,
}

pub type TorusPoint = (i64, i64);

impl Torus {
    pub fn new(side: i64) -> Result<Self> {
        if side < 2 {
            return Err(Error::invalid("torus side must be >= 2"));
        }
        Ok(Torus { side })
    }

    #[inline]
    pub fn wrap(&self, p: TorusPoint) -> TorusPoint {
        (p.0.rem_euclid(self.side), p.1.rem_euclid(self.side))
    }

    pub fn vertices(&self) -> impl Iterator<Item = TorusPoint> + '_ {
        (0..self.side).flat_map(move |x| (0..self.side).map(move |y| (x, y)))
    }

    pub fn vertex_count(&self) -> usize {
        (self.side * self.side) as usize
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct MassTransportReport {
    pub side: i64,
    pub sent: f64,
    pub received: f64,
    pub difference: f64,
}

/// Checks translation invariance on a random sample of pairs, then sums
/// the mass sent from and received by the origin. For translation
/// groups (which are unimodular) the two sums coincide.
pub fn verify_mass_transport(
    torus: &Torus,
    transport: &dyn Fn(TorusPoint, TorusPoint) -> f64,
    seed: u64,
) -> Result<MassTransportReport> {
    let mut chacha = ChaCha8Rng::seed_from_u64(rng::mix(seed, 0x7045));
    for _ in 0..200 {
        let u = (chacha.gen_range(0..torus.side), chacha.gen_range(0..torus.side));
        let v = (chacha.gen_range(0..torus.side), chacha.gen_range(0..torus.side));
        let shift = (chacha.gen_range(0..torus.side), chacha.gen_range(0..torus.side));
        let f = transport(u, v);
        if f < 0.0 {
            return Err(Error::invalid("transport function must be nonnegative"));
        }
        let g = transport(
            torus.wrap((u.0 + shift.0, u.1 + shift.1)),
            torus.wrap((v.0 + shift.0, v.1 + shift.1)),
        );
        if (f - g).abs() > 1e-12 * f.abs().max(1.0) {
            return Err(Error::invalid(format!(
                "transport is not translation invariant: f{u:?}{v:?} = {f} vs shifted {g}"
            )));
        }
    }
    let origin = (0, 0);
    let mut sent = 0.0;
    let mut received = 0.0;
    for v in torus.vertices() {
        sent += transport(origin, v);
        received += transport(v, origin);
    }
    Ok(MassTransportReport {
        side: torus.side,
        sent,
        received,
        difference: (sent - received).abs(),
    })
}

/// Translation-invariant transport obtained by group-averaging a seeded
/// random kernel: the returned closure depends only on the displacement.
pub fn averaged_random_kernel(torus: &Torus, seed: u64) -> impl Fn(TorusPoint, TorusPoint) -> f64 {
    let side = torus.side;
    let index = move |p: TorusPoint| (p.0 * side + p.1) as u64;
    let raw = move |u: TorusPoint, v: TorusPoint| -> f64 {
        rng::unit_f64(rng::mix(seed, index(u) * side as u64 * side as u64 + index(v)))
    };
    let t = *torus;
    let mut table = vec![0.0f64; t.vertex_count()];
    for dx in 0..side {
        for dy in 0..side {
            let mut acc = 0.0;
            for u in t.vertices() {
                acc += raw(u, t.wrap((u.0 + dx, u.1 + dy)));
            }
            table[(dx * side + dy) as usize] = acc / t.vertex_count() as f64;
        }
    }
    move |u: TorusPoint, v: TorusPoint| {
        let d = t.wrap((v.0 - u.0, v.1 - u.1));
        table[(d.0 * side + d.1) as usize]
    }
}

/// Nearest-neighbor indicator on the torus.
pub fn adjacency_transport(torus: &Torus) -> impl Fn(TorusPoint, TorusPoint) -> f64 {
    let t = *torus;
    move |u: TorusPoint, v: TorusPoint| {
        let d = t.wrap((v.0 - u.0, v.1 - u.1));
        let dd = (d.0.min(t.side - d.0), d.1.min(t.side - d.1));
        if dd.0 + dd.1 == 1 {
            1.0
        } else {
            0.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::percolation;

    fn tree4_inputs() -> (GraphFamily, Beta1Estimate) {
        let f = GraphFamily::regular_tree(4).unwrap();
        let est = harmonic::beta1_estimate(&f, &f.default_orbit_weights(), &[3, 6]).unwrap();
        (f, est)
    }

    #[test]
    fn cor43_tree_holds_with_slack() {
        let (f, est) = tree4_inputs();
        let pc = ThresholdEstimate {
            family: f.describe(),
            radius: 10,
            samples: 100,
            method: "oracle".into(),
            value: 1.0 / 3.0,
            ci_low: 0.31,
            ci_high: 0.36,
            heuristic: false,
        };
        let pu = ThresholdEstimate {
            family: f.describe(),
            radius: 10,
            samples: 100,
            method: "oracle".into(),
            value: 1.0,
            ci_low: 0.98,
            ci_high: 1.0,
            heuristic: true,
        };
        let report = check_cor43(&f, &est, &pc, &pu).unwrap();
        assert!(report.holds);
        // rhs = 2 * (1 - 1/3) = 4/3, lhs ~ 1, slack ~ 1/3.
        assert!((report.rhs - 4.0 / 3.0).abs() < 1e-9);
        assert!(report.slack > 0.2 && report.slack < 0.4);
        assert_eq!(report.slack, report.rhs - report.lhs);
    }

    #[test]
    fn cor43_rejects_family_mismatch() {
        let (f, est) = tree4_inputs();
        let other = ThresholdEstimate {
            family: "lattice(2)".into(),
            radius: 10,
            samples: 100,
            method: "oracle".into(),
            value: 0.5,
            ci_low: 0.48,
            ci_high: 0.52,
            heuristic: false,
        };
        assert!(check_cor43(&f, &est, &other, &other).is_err());
    }

    #[test]
    fn cor46_degenerate_window_fails_when_lhs_positive() {
        let (f, est) = tree4_inputs();
        let gap = GapReport {
            family: f.describe(),
            radius: 6,
            q: 1.0,
            pc_est: 0.5,
            pu_est: 0.5,
            window: 0.0,
            gap: 0.0,
            stderr: 0.0,
        };
        let report = check_cor46(&f, &est, &gap).unwrap();
        assert!(!report.holds, "1 <= 0 must fail");
        assert!(report.slack < 0.0);
    }

    #[test]
    fn cluster_sums_vanish_at_p_zero() {
        let f = GraphFamily::lattice(2).unwrap();
        let summary = cluster_beta1(&f, 0.0, 4, 5, 3).unwrap();
        assert_eq!(summary.spanning_count, 0);
        for s in &summary.samples {
            assert_eq!(s.cluster_size, 1);
            assert_eq!(s.coefficient_half_sum, 0.0);
        }
    }

    #[test]
    fn finite_clusters_have_zero_coefficients() {
        let f = GraphFamily::lattice(2).unwrap();
        let summary = cluster_beta1(&f, 0.3, 8, 20, 11).unwrap();
        for s in &summary.samples {
            if !s.boundary_reaching {
                assert!(s.coefficient_half_sum.abs() <= 1e-8);
            }
        }
        assert!(summary.finite_count > 0);
        assert!(summary.finite_mean <= summary.spanning_mean + 1e-12);
    }

    #[test]
    fn cost_tree_at_full_retention_is_treeing() {
        let f = GraphFamily::regular_tree(4).unwrap();
        let est = harmonic::beta1_estimate(&f, &f.default_orbit_weights(), &[4, 8]).unwrap();
        let report = cost_report(&f, 1.0, &est).unwrap();
        assert_eq!(report.cost, 2.0);
        assert_eq!(report.treeing_equality, Some(true));
        assert!(report.bound_holds);
    }

    #[test]
    fn cost_at_zero_retention() {
        let (f, est) = tree4_inputs();
        let report = cost_report(&f, 0.0, &est).unwrap();
        assert_eq!(report.cost, 0.0);
        // Below full retention the graph-level comparison is off.
        assert!(report.bound_holds);
        assert_eq!(report.treeing_equality, None);
        assert!(report.relation.contains("full retention"));
    }

    #[test]
    fn mass_transport_adjacency_and_equality() {
        let torus = Torus::new(16).unwrap();
        let adj = adjacency_transport(&torus);
        let report = verify_mass_transport(&torus, &adj, 1).unwrap();
        assert_eq!(report.sent, 4.0);
        assert_eq!(report.received, 4.0);
        assert_eq!(report.difference, 0.0);

        let eq = |u: TorusPoint, v: TorusPoint| if u == v { 1.0 } else { 0.0 };
        let report = verify_mass_transport(&torus, &eq, 2).unwrap();
        assert_eq!(report.sent, 1.0);
        assert_eq!(report.received, 1.0);
    }

    #[test]
    fn mass_transport_averaged_kernel_balances() {
        let torus = Torus::new(16).unwrap();
        let f = averaged_random_kernel(&torus, 9);
        let report = verify_mass_transport(&torus, &f, 3).unwrap();
        assert!(report.difference <= 1e-12, "difference {}", report.difference);
        assert!(report.sent > 0.0);
    }

    #[test]
    fn mass_transport_rejects_non_invariant() {
        let torus = Torus::new(8).unwrap();
        let skew = |u: TorusPoint, v: TorusPoint| (u.0 + v.1) as f64;
        assert!(verify_mass_transport(&torus, &skew, 4).is_err());
    }

    #[test]
    fn tree_spanning_clusters_keep_positive_coefficients() {
        // Supercritical tree clusters truncated at the boundary: free
        // currents are 1, wired strictly smaller.
        let f = GraphFamily::regular_tree(4).unwrap();
        let summary = cluster_beta1(&f, 0.6, 6, 10, 5).unwrap();
        assert!(summary.spanning_count > 0);
        assert!(summary.spanning_mean > 0.05, "mean {}", summary.spanning_mean);
    }

    #[test]
    fn threshold_gap_with_measured_inputs_on_lattice() {
        let f = GraphFamily::lattice(2).unwrap();
        let est = harmonic::beta1_estimate(&f, &f.default_orbit_weights(), &[5, 10]).unwrap();
        let pc = percolation::estimate_pc(&f, 24, 40, 1.0 / 128.0, 7).unwrap();
        let pu = percolation::estimate_pu(&f, 24, 40, 1.0 / 128.0, 7).unwrap();
        let report = check_cor43(&f, &est, &pc, &pu).unwrap();
        assert!(report.holds, "report {report:?}");
    }
}
