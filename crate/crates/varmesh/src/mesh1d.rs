//! 1D equidistributed mesh generation.
//!
//! Given a positive weight g on `[a, b]`, the scaled length
//! `S(x) = ∫_a^x 1/g(s) ds` is a strictly increasing map; placing nodes at
//! equal increments of `S` (equivalently, at uniform steps of the
//! computational coordinate ξ = S/S_total) yields a mesh that is locally
//! fine where g is small.

use crate::error::{Error, Result};
use crate::quadrature;
use crate::weights::WeightSpec;

/// Tunables for the quadrature/inversion pipeline. The defaults keep the
/// cumulative integral well below the inversion tolerance.
#[derive(Debug, Clone, Copy)]
pub struct MeshOptions {
    /// Relative tolerance of the adaptive quadrature for S.
    pub quad_rel_tol: f64,
    /// Fine-grid resolution of the precomputed S profile, per mesh segment.
    pub panels_per_segment: usize,
    /// Inversion tolerance, relative to S_total.
    pub invert_rel_tol: f64,
}

impl Default for MeshOptions {
    fn default() -> Self {
        MeshOptions {
            quad_rel_tol: quadrature::DEFAULT_REL_TOL,
            panels_per_segment: 32,
            invert_rel_tol: 1e-10,
        }
    }
}

/// A strictly increasing node array with cached spacings and
/// equidistribution metadata.
#[derive(Debug, Clone)]
pub struct Mesh1D {
    domain: [f64; 2],
    nodes: Vec<f64>,
    spacings: Vec<f64>,
    s_total: f64,
    equidist_residual: f64,
}

impl Mesh1D {
    /// Wraps an explicit strictly increasing node array (used when the
    /// nodes come from an external source such as the elliptic grid
    /// solver). No equidistribution metadata is available for such
    /// meshes: `s_total` and `equidist_residual` are NaN.
    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "mesh needs at least 2 nodes, got {}",
                nodes.len()
            )));
        }
        if nodes.iter().any(|x| !x.is_finite()) || nodes.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Validation(
                "mesh nodes must be finite and strictly increasing".into(),
            ));
        }
        let spacings = nodes.windows(2).map(|w| w[1] - w[0]).collect();
        Ok(Mesh1D {
            domain: [nodes[0], *nodes.last().unwrap()],
            nodes,
            spacings,
            s_total: f64::NAN,
            equidist_residual: f64::NAN,
        })
    }

    pub fn domain(&self) -> [f64; 2] {
        self.domain
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Spacings h_i = x_{i+1} - x_i; one fewer entry than nodes.
    pub fn spacings(&self) -> &[f64] {
        &self.spacings
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_segments(&self) -> usize {
        self.spacings.len()
    }

    pub fn s_total(&self) -> f64 {
        self.s_total
    }

    /// Max deviation of the S-increments from S_total/N, measured with the
    /// generator's own quadrature.
    pub fn equidist_residual(&self) -> f64 {
        self.equidist_residual
    }

    pub fn min_spacing(&self) -> f64 {
        self.spacings.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max_spacing(&self) -> f64 {
        self.spacings.iter().cloned().fold(0.0, f64::max)
    }
}

fn check_domain(domain: [f64; 2]) -> Result<()> {
    let [a, b] = domain;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidInput(format!("empty domain [{a}, {b}]")));
    }
    Ok(())
}

/// Validates the spec on the domain and returns 1/g as a plain closure.
fn inverse_weight<'a>(
    spec: &'a WeightSpec,
    domain: [f64; 2],
) -> Result<impl Fn(f64) -> f64 + 'a> {
    check_domain(domain)?;
    let report = spec.validate(domain, 257)?;
    if !report.is_valid() {
        return Err(Error::Validation(format!(
            "weight is not strictly positive on [{}, {}]: min {} at x = {}",
            domain[0], domain[1], report.min, report.argmin
        )));
    }
    Ok(move |x: f64| 1.0 / spec.evaluate(x).expect("weight validated on domain"))
}

/// S(x) = ∫_a^x 1/g(s) ds via adaptive quadrature.
pub fn cumulative_s(spec: &WeightSpec, domain: [f64; 2], x: f64) -> Result<f64> {
    let f = inverse_weight(spec, domain)?;
    if !x.is_finite() || x < domain[0] || x > domain[1] {
        return Err(Error::Domain(format!(
            "x = {x} outside [{}, {}]",
            domain[0], domain[1]
        )));
    }
    quadrature::integrate(&f, domain[0], x, quadrature::DEFAULT_REL_TOL)
}

/// Precomputed monotone profile of S on a fine grid, supporting fast
/// bracketed inversion.
struct SProfile<'a> {
    inv_g: Box<dyn Fn(f64) -> f64 + 'a>,
    xs: Vec<f64>,
    cum: Vec<f64>,
    quad_rel_tol: f64,
}

impl<'a> SProfile<'a> {
    fn build(
        inv_g: Box<dyn Fn(f64) -> f64 + 'a>,
        domain: [f64; 2],
        panels: usize,
        quad_rel_tol: f64,
    ) -> Result<Self> {
        let [a, b] = domain;
        let panels = panels.max(16);
        let mut xs = Vec::with_capacity(panels + 1);
        for k in 0..=panels {
            xs.push(a + (b - a) * k as f64 / panels as f64);
        }
        *xs.last_mut().unwrap() = b;
        let mut cum = Vec::with_capacity(panels + 1);
        cum.push(0.0);
        let mut acc = 0.0;
        for k in 0..panels {
            acc += quadrature::integrate(&*inv_g, xs[k], xs[k + 1], quad_rel_tol)?;
            cum.push(acc);
        }
        if !(acc.is_finite() && acc > 0.0) {
            return Err(Error::Numerical {
                context: "cumulative scaled length is not finite and positive".into(),
                estimate: acc,
            });
        }
        Ok(SProfile {
            inv_g,
            xs,
            cum,
            quad_rel_tol,
        })
    }

    fn s_total(&self) -> f64 {
        *self.cum.last().unwrap()
    }

    /// S(x) for x inside the profile's domain.
    fn eval(&self, x: f64) -> Result<f64> {
        let k = match self
            .xs
            .binary_search_by(|v| v.partial_cmp(&x).unwrap())
        {
            Ok(k) => return Ok(self.cum[k]),
            Err(k) => k.saturating_sub(1).min(self.xs.len() - 2),
        };
        let tail = quadrature::integrate(&*self.inv_g, self.xs[k], x, self.quad_rel_tol)?;
        Ok(self.cum[k] + tail)
    }

    /// Solves S(x) = target by bracketing on the fine grid followed by
    /// safeguarded Newton (bisection fallback keeps the bracket valid).
    fn invert(&self, target: f64, tol_abs: f64) -> Result<f64> {
        let s_total = self.s_total();
        let slack = tol_abs.max(1e-12 * s_total);
        if target < -slack || target > s_total + slack {
            return Err(Error::InvalidInput(format!(
                "inversion target {target} outside [0, {s_total}]"
            )));
        }
        let (a, b) = (self.xs[0], *self.xs.last().unwrap());
        if target <= 0.0 {
            return Ok(a);
        }
        if target >= s_total {
            return Ok(b);
        }
        // Bracket on the precomputed grid.
        let k = match self
            .cum
            .binary_search_by(|v| v.partial_cmp(&target).unwrap())
        {
            Ok(k) => return Ok(self.xs[k]),
            Err(k) => k - 1,
        };
        let mut lo = self.xs[k];
        let mut hi = self.xs[k + 1];
        let mut x = lo + (hi - lo) * (target - self.cum[k]) / (self.cum[k + 1] - self.cum[k]);
        for _ in 0..100 {
            let s = self.eval(x)?;
            let err = s - target;
            if err.abs() <= tol_abs {
                return Ok(x);
            }
            if err > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            // Newton step on S; derivative 1/g is available analytically.
            let deriv = (self.inv_g)(x);
            let mut next = x - err / deriv;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (hi - lo).abs() <= f64::EPSILON * (lo.abs() + hi.abs()) {
                return Ok(x);
            }
            x = next;
        }
        Err(Error::Convergence {
            iterations: 100,
            residual: (self.eval(x)? - target).abs(),
        })
    }
}

/// S^{-1}(target): the abscissa where the cumulative scaled length reaches
/// `target`. Endpoints are returned exactly for target 0 and S_total.
pub fn invert_s(spec: &WeightSpec, domain: [f64; 2], target: f64) -> Result<f64> {
    let f = inverse_weight(spec, domain)?;
    let opts = MeshOptions::default();
    let profile = SProfile::build(Box::new(f), domain, 1024, opts.quad_rel_tol)?;
    profile.invert(target, opts.invert_rel_tol * profile.s_total())
}

/// Generates an equidistributed mesh with `n_segments` segments
/// (`n_segments + 1` nodes) from a weight spec.
pub fn generate_mesh(spec: &WeightSpec, domain: [f64; 2], n_segments: usize) -> Result<Mesh1D> {
    generate_mesh_with(spec, domain, n_segments, &MeshOptions::default())
}

pub fn generate_mesh_with(
    spec: &WeightSpec,
    domain: [f64; 2],
    n_segments: usize,
    opts: &MeshOptions,
) -> Result<Mesh1D> {
    let f = inverse_weight(spec, domain)?;
    generate_mesh_from_fn(&f, domain, n_segments, opts)
}

/// Core generator over a plain 1/g closure; also used by the elliptic grid
/// solver for boundary-edge meshes where the weight is a restriction of a
/// 2D function.
pub(crate) fn generate_mesh_from_fn(
    inv_g: &dyn Fn(f64) -> f64,
    domain: [f64; 2],
    n_segments: usize,
    opts: &MeshOptions,
) -> Result<Mesh1D> {
    check_domain(domain)?;
    if n_segments < 2 {
        return Err(Error::InvalidInput(format!(
            "need at least 2 segments, got {n_segments}"
        )));
    }
    let [a, b] = domain;
    let profile = SProfile::build(
        Box::new(inv_g),
        domain,
        opts.panels_per_segment * n_segments,
        opts.quad_rel_tol,
    )?;
    let s_total = profile.s_total();
    let tol_abs = opts.invert_rel_tol * s_total;

    let mut nodes = Vec::with_capacity(n_segments + 1);
    nodes.push(a);
    for i in 1..n_segments {
        let target = s_total * i as f64 / n_segments as f64;
        nodes.push(profile.invert(target, tol_abs)?);
    }
    nodes.push(b);

    let spacings: Vec<f64> = nodes.windows(2).map(|w| w[1] - w[0]).collect();
    if spacings.iter().any(|h| !(*h > 0.0)) {
        return Err(Error::Validation(
            "generated mesh is not strictly increasing".into(),
        ));
    }

    // Audit the S increments with the same quadrature.
    let share = s_total / n_segments as f64;
    let mut residual: f64 = 0.0;
    for w in nodes.windows(2) {
        let ds = quadrature::integrate(&inv_g, w[0], w[1], opts.quad_rel_tol)?;
        residual = residual.max((ds - share).abs());
    }

    Ok(Mesh1D {
        domain,
        nodes,
        spacings,
        s_total,
        equidist_residual: residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const E: f64 = std::f64::consts::E;

    /// g(s) = s expressed exactly as a two-point linear table.
    fn linear_weight() -> WeightSpec {
        WeightSpec::table(vec![1.0, E], vec![1.0, E]).unwrap()
    }

    #[test]
    fn cumulative_constant_is_identity() {
        let g = WeightSpec::constant(1.0).unwrap();
        let s = cumulative_s(&g, [0.0, 1.0], 0.3).unwrap();
        assert!((s - 0.3).abs() < 1e-13);
        assert_eq!(cumulative_s(&g, [0.0, 1.0], 0.0).unwrap(), 0.0);
    }

    #[test]
    fn cumulative_log_oracle() {
        // For g(s) = s, S(x) = ln x; S(e) = 1.
        let g = linear_weight();
        let s = cumulative_s(&g, [1.0, E], E).unwrap();
        assert!((s - 1.0).abs() < 1e-10, "got {s}");
    }

    #[test]
    fn cumulative_rejects_outside_domain() {
        let g = WeightSpec::constant(1.0).unwrap();
        assert!(matches!(
            cumulative_s(&g, [0.0, 1.0], 1.5),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn invert_constant_is_identity() {
        let g = WeightSpec::constant(1.0).unwrap();
        let x = invert_s(&g, [0.0, 1.0], 0.25).unwrap();
        assert!((x - 0.25).abs() < 1e-10);
    }

    #[test]
    fn invert_exp_oracle() {
        // S(x) = ln x so S^{-1}(t) = e^t.
        let g = linear_weight();
        let x = invert_s(&g, [1.0, E], 0.5).unwrap();
        assert!((x - 0.5f64.exp()).abs() < 1e-9, "got {x}");
    }

    #[test]
    fn invert_endpoints_clamped() {
        let g = linear_weight();
        let s_total = cumulative_s(&g, [1.0, E], E).unwrap();
        assert_eq!(invert_s(&g, [1.0, E], 0.0).unwrap(), 1.0);
        assert_eq!(invert_s(&g, [1.0, E], s_total).unwrap(), E);
        assert!(invert_s(&g, [1.0, E], 2.0 * s_total).is_err());
    }

    #[test]
    fn constant_weight_gives_uniform_nodes() {
        let g = WeightSpec::constant(7.0).unwrap();
        let m = generate_mesh(&g, [0.0, 1.0], 4).unwrap();
        let expected = [0.0, 0.25, 0.5, 0.75, 1.0];
        for (x, e) in m.nodes().iter().zip(expected.iter()) {
            assert!((x - e).abs() < 1e-12);
        }
        assert_eq!(m.nodes()[0], 0.0);
        assert_eq!(*m.nodes().last().unwrap(), 1.0);
    }

    #[test]
    fn exp_mesh_oracle() {
        // x_i = exp(i/N) for g(s) = s on [1, e].
        let g = linear_weight();
        let m = generate_mesh(&g, [1.0, E], 2).unwrap();
        let expected = [1.0, 0.5f64.exp(), E];
        for (x, e) in m.nodes().iter().zip(expected.iter()) {
            assert!((x - e).abs() < 1e-9, "got {x}, want {e}");
        }
    }

    #[test]
    fn gaussian_well_concentrates_at_center() {
        let g = WeightSpec::gaussian_well(0.9, 0.0, 50.0).unwrap();
        let m = generate_mesh(&g, [-25.0, 25.0], 50).unwrap();
        assert_eq!(m.num_nodes(), 51);
        let spacings = m.spacings();
        let center = spacings[25 - 1].min(spacings[25]);
        assert_eq!(m.min_spacing(), center);
        // Densest near x = 0, coarsest at the edges.
        let (imin, _) = spacings
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        assert!((imin as isize - 25).abs() <= 1, "min spacing at {imin}");
        assert_eq!(m.max_spacing(), spacings[0].max(*spacings.last().unwrap()));
    }

    #[test]
    fn too_few_segments_rejected() {
        let g = WeightSpec::constant(1.0).unwrap();
        assert!(generate_mesh(&g, [0.0, 1.0], 1).is_err());
    }

    #[test]
    fn scale_invariance() {
        let domain = [0.0, 1.0];
        let base = generate_mesh(&WeightSpec::constant(1.0).unwrap(), domain, 8).unwrap();
        for k in [0.1, 10.0] {
            let m = generate_mesh(&WeightSpec::constant(k).unwrap(), domain, 8).unwrap();
            for (x, y) in m.nodes().iter().zip(base.nodes().iter()) {
                assert!((x - y).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn refinement_consistency() {
        let g = WeightSpec::gaussian_well(0.5, 0.2, 1.0).unwrap();
        let coarse = generate_mesh(&g, [-1.0, 1.0], 8).unwrap();
        let fine = generate_mesh(&g, [-1.0, 1.0], 16).unwrap();
        for (i, x) in coarse.nodes().iter().enumerate() {
            let y = fine.nodes()[2 * i];
            assert!((x - y).abs() < 1e-8, "node {i}: {x} vs {y}");
        }
    }

    #[test]
    fn equidist_residual_within_tolerance() {
        let g = WeightSpec::gaussian_well(0.9, 0.0, 50.0).unwrap();
        let m = generate_mesh(&g, [-25.0, 25.0], 50).unwrap();
        assert!(m.equidist_residual() <= 1e-10 * m.s_total() * 2.0);
        let total: f64 = m.spacings().iter().sum();
        assert!((total - 50.0).abs() <= 1e-12 * 50.0);
    }

    proptest! {
        #[test]
        fn round_trip_s(target_frac in 0.0f64..1.0) {
            let g = WeightSpec::gaussian_well(0.8, 5.0, 20.0).unwrap();
            let domain = [-10.0, 30.0];
            let s_total = cumulative_s(&g, domain, domain[1]).unwrap();
            let target = target_frac * s_total;
            let x = invert_s(&g, domain, target).unwrap();
            let back = cumulative_s(&g, domain, x).unwrap();
            prop_assert!((back - target).abs() <= 1e-9 * s_total);
        }

        #[test]
        fn meshes_are_strictly_increasing(
            depth in 0.0f64..0.95,
            center in -5.0f64..5.0,
            n in 2usize..40,
        ) {
            let g = WeightSpec::gaussian_well(depth, center, 3.0).unwrap();
            let m = generate_mesh(&g, [-5.0, 5.0], n).unwrap();
            prop_assert_eq!(m.num_nodes(), n + 1);
            prop_assert!(m.spacings().iter().all(|h| *h > 0.0));
            prop_assert_eq!(m.nodes()[0], -5.0);
            prop_assert_eq!(*m.nodes().last().unwrap(), 5.0);
        }
    }
}
