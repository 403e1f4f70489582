//! Separable 2D mesh: one 1D equidistribution per axis, combined into a
//! tensor-product lattice.

use varmesh::{generate_tensor_mesh, WeightSpec};

fn main() -> varmesh::Result<()> {
    // Finer in x near the origin, finer in y near y = 10.
    let gx = WeightSpec::gaussian_well(0.9, 0.0, 50.0)?;
    let gy = WeightSpec::gaussian_well(0.5, 10.0, 20.0)?;
    let mesh = generate_tensor_mesh(
        &[gx, gy],
        &[[-25.0, 25.0], [-25.0, 25.0]],
        &[40, 40],
    )?;

    println!(
        "{}x{} lattice, {} nodes total",
        mesh.axis(0).num_nodes(),
        mesh.axis(1).num_nodes(),
        mesh.total_nodes()
    );
    for (d, label) in [(0usize, "x"), (1usize, "y")] {
        let ax = mesh.axis(d);
        println!(
            "{label}-axis: h in [{:.4}, {:.4}], S_total = {:.4}",
            ax.min_spacing(),
            ax.max_spacing(),
            ax.s_total()
        );
    }

    // A coarse ASCII picture of the node density: one star per lattice
    // node, downsampled onto a uniform 25x50 canvas.
    let (w, h) = (50usize, 25usize);
    let mut canvas = vec![vec![b' '; w]; h];
    for &y in mesh.axis(1).nodes() {
        for &x in mesh.axis(0).nodes() {
            let cx = ((x + 25.0) / 50.0 * (w - 1) as f64).round() as usize;
            let cy = ((y + 25.0) / 50.0 * (h - 1) as f64).round() as usize;
            canvas[h - 1 - cy][cx] = b'*';
        }
    }
    println!();
    for row in canvas {
        println!("{}", String::from_utf8(row).unwrap());
    }
    Ok(())
}
