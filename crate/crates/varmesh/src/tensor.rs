//! Separable nD meshes as products of independent 1D meshes.
//!
//! For a product weight g(x) = Π g_i(x_i) the grid generation decouples
//! into one equidistribution problem per axis, so node storage is per-axis
//! only; consumers index the lattice as (x_i, y_j, ...).

use crate::error::{Error, Result};
use crate::mesh1d::{self, Mesh1D, MeshOptions};
use crate::weights::WeightSpec;

#[derive(Debug, Clone)]
pub struct TensorMesh {
    axes: Vec<Mesh1D>,
}

impl TensorMesh {
    pub fn new(axes: Vec<Mesh1D>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::InvalidInput("tensor mesh needs at least one axis".into()));
        }
        Ok(TensorMesh { axes })
    }

    pub fn dimension(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Mesh1D] {
        &self.axes
    }

    pub fn axis(&self, d: usize) -> &Mesh1D {
        &self.axes[d]
    }

    /// Node counts per axis.
    pub fn dims(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.num_nodes()).collect()
    }

    pub fn total_nodes(&self) -> usize {
        self.axes.iter().map(|a| a.num_nodes()).product()
    }
}

/// Builds a separable mesh by running the 1D generator per axis.
pub fn generate_tensor_mesh(
    specs: &[WeightSpec],
    domains: &[[f64; 2]],
    segments: &[usize],
) -> Result<TensorMesh> {
    generate_tensor_mesh_with(specs, domains, segments, &MeshOptions::default())
}

pub fn generate_tensor_mesh_with(
    specs: &[WeightSpec],
    domains: &[[f64; 2]],
    segments: &[usize],
    opts: &MeshOptions,
) -> Result<TensorMesh> {
    if specs.len() != domains.len() || specs.len() != segments.len() {
        return Err(Error::InvalidInput(format!(
            "mismatched axis lists: {} specs, {} domains, {} segment counts",
            specs.len(),
            domains.len(),
            segments.len()
        )));
    }
    let axes = specs
        .iter()
        .zip(domains.iter().zip(segments.iter()))
        .map(|(spec, (domain, n))| mesh1d::generate_mesh_with(spec, *domain, *n, opts))
        .collect::<Result<Vec<_>>>()?;
    TensorMesh::new(axes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_lattice() {
        let g = WeightSpec::constant(1.0).unwrap();
        let m = generate_tensor_mesh(
            &[g.clone(), g],
            &[[0.0, 1.0], [0.0, 1.0]],
            &[2, 2],
        )
        .unwrap();
        assert_eq!(m.dims(), vec![3, 3]);
        for d in 0..2 {
            let expected = [0.0, 0.5, 1.0];
            for (x, e) in m.axis(d).nodes().iter().zip(expected.iter()) {
                assert!((x - e).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn mixed_axis_counts() {
        let g = WeightSpec::constant(2.0).unwrap();
        let m = generate_tensor_mesh(
            &[g.clone(), g],
            &[[0.0, 1.0], [0.0, 1.0]],
            &[4, 8],
        )
        .unwrap();
        assert_eq!(m.dims(), vec![5, 9]);
        assert!((m.axis(0).spacings()[0] - 0.25).abs() < 1e-13);
        assert!((m.axis(1).spacings()[0] - 0.125).abs() < 1e-13);
        assert_eq!(m.total_nodes(), 45);
    }

    #[test]
    fn oscillator_study_lattice() {
        let g = WeightSpec::gaussian_well(0.9, 0.0, 50.0).unwrap();
        let m = generate_tensor_mesh(
            &[g.clone(), g],
            &[[-25.0, 25.0], [-25.0, 25.0]],
            &[50, 50],
        )
        .unwrap();
        assert_eq!(m.dims(), vec![51, 51]);
        for d in 0..2 {
            let axis = m.axis(d);
            let (imin, _) = axis
                .spacings()
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                .unwrap();
            assert!((imin as isize - 25).abs() <= 1);
        }
    }

    #[test]
    fn axis_independence() {
        let ga = WeightSpec::gaussian_well(0.9, 0.0, 50.0).unwrap();
        let gb = WeightSpec::constant(1.0).unwrap();
        let base = generate_tensor_mesh(
            &[gb.clone(), ga.clone()],
            &[[0.0, 1.0], [-25.0, 25.0]],
            &[10, 20],
        )
        .unwrap();
        let perturbed = generate_tensor_mesh(
            &[WeightSpec::gaussian_well(0.5, 0.3, 0.4).unwrap(), ga],
            &[[0.0, 1.0], [-25.0, 25.0]],
            &[10, 20],
        )
        .unwrap();
        for (x, y) in base
            .axis(1)
            .nodes()
            .iter()
            .zip(perturbed.axis(1).nodes().iter())
        {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn mismatched_lists_rejected() {
        let g = WeightSpec::constant(1.0).unwrap();
        assert!(generate_tensor_mesh(&[g], &[[0.0, 1.0], [0.0, 1.0]], &[2, 2]).is_err());
    }
}
