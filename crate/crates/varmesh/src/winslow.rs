//! Elliptic (Winslow-type) grid generation for a general 2D weight.
//!
//! Solves the variable-diffusion mapping equations
//! `div_xi((1/g) grad_xi x) = 0` (and the same for y) on the unit
//! computational square, with Dirichlet boundary nodes placed by 1D
//! equidistribution of g restricted to each edge. For product weights the
//! discrete solution coincides with the separable tensor mesh: the face
//! diffusion coefficients are segment averages of 1/g, so the
//! equidistributed lattice makes every discrete flux constant.

use crate::error::{Error, Result};
use crate::mesh1d::{self, MeshOptions};
use crate::quadrature;
use crate::weights::WeightSpec;

#[derive(Debug, Clone, Copy)]
pub struct WinslowOptions {
    /// Outer (Picard) displacement tolerance; `None` means
    /// 1e-8 * domain diameter.
    pub tol: Option<f64>,
    /// Maximum Picard iterations.
    pub max_iter: usize,
    /// SOR relaxation factor for the frozen-coefficient solves.
    pub sor_omega: f64,
    /// Sweep cap per frozen-coefficient solve.
    pub sor_max_sweeps: usize,
}

impl Default for WinslowOptions {
    fn default() -> Self {
        WinslowOptions {
            tol: None,
            max_iter: 200,
            sor_omega: 1.7,
            sor_max_sweeps: 200_000,
        }
    }
}

/// Physical coordinates of a structured computational lattice, indexed
/// `j * nx + i` (x-index fastest).
#[derive(Debug, Clone)]
pub struct MappedGrid2D {
    pub nx: usize,
    pub ny: usize,
    pub xcoords: Vec<f64>,
    pub ycoords: Vec<f64>,
    /// Normalized max residual of the discrete mapping equations at the
    /// final iterate.
    pub residual: f64,
    pub iterations: usize,
}

impl MappedGrid2D {
    pub fn x(&self, i: usize, j: usize) -> f64 {
        self.xcoords[j * self.nx + i]
    }

    pub fn y(&self, i: usize, j: usize) -> f64 {
        self.ycoords[j * self.nx + i]
    }

    /// Smallest discrete cell Jacobian (cross product of the forward
    /// difference vectors); positive everywhere means no folded cells.
    pub fn min_cell_jacobian(&self) -> f64 {
        let mut min = f64::INFINITY;
        for j in 0..self.ny - 1 {
            for i in 0..self.nx - 1 {
                let e1 = (
                    self.x(i + 1, j) - self.x(i, j),
                    self.y(i + 1, j) - self.y(i, j),
                );
                let e2 = (
                    self.x(i, j + 1) - self.x(i, j),
                    self.y(i, j + 1) - self.y(i, j),
                );
                min = min.min(e1.0 * e2.1 - e1.1 * e2.0);
            }
        }
        min
    }
}

/// Solves the mapping for a product weight gx(x) * gy(y).
pub fn solve_winslow_product(
    gx: &WeightSpec,
    gy: &WeightSpec,
    domain: [[f64; 2]; 2],
    nx: usize,
    ny: usize,
    opts: &WinslowOptions,
) -> Result<MappedGrid2D> {
    for (spec, dom) in [(gx, domain[0]), (gy, domain[1])] {
        let report = spec.validate(dom, 257)?;
        if !report.is_valid() {
            return Err(Error::Validation(format!(
                "weight not strictly positive on [{}, {}]",
                dom[0], dom[1]
            )));
        }
    }
    let f = |x: f64, y: f64| {
        gx.evaluate(x).expect("validated on domain") * gy.evaluate(y).expect("validated on domain")
    };
    solve_winslow(&f, domain, nx, ny, opts)
}

/// Solves the mapping for a general positive weight g(x, y).
pub fn solve_winslow<G: Fn(f64, f64) -> f64>(
    g: &G,
    domain: [[f64; 2]; 2],
    nx: usize,
    ny: usize,
    opts: &WinslowOptions,
) -> Result<MappedGrid2D> {
    let [[ax, bx], [ay, by]] = domain;
    if !(ax < bx && ay < by) || !(ax.is_finite() && bx.is_finite() && ay.is_finite() && by.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "degenerate domain [{ax},{bx}]x[{ay},{by}]"
        )));
    }
    if nx < 3 || ny < 3 {
        return Err(Error::InvalidInput(format!(
            "need at least 3 nodes per axis, got {nx}x{ny}"
        )));
    }
    let diam = ((bx - ax).powi(2) + (by - ay).powi(2)).sqrt();
    let tol = opts.tol.unwrap_or(1e-8 * diam);

    // Dirichlet boundary traces: 1D equidistribution of g restricted to
    // each edge.
    let mesh_opts = MeshOptions::default();
    let edge_mesh = |f: &dyn Fn(f64) -> f64, dom: [f64; 2], n: usize| -> Result<Vec<f64>> {
        let inv = |s: f64| 1.0 / f(s);
        Ok(mesh1d::generate_mesh_from_fn(&inv, dom, n, &mesh_opts)?
            .nodes()
            .to_vec())
    };
    let bottom = edge_mesh(&|x| g(x, ay), [ax, bx], nx - 1)?;
    let top = edge_mesh(&|x| g(x, by), [ax, bx], nx - 1)?;
    let left = edge_mesh(&|y| g(ax, y), [ay, by], ny - 1)?;
    let right = edge_mesh(&|y| g(bx, y), [ay, by], ny - 1)?;

    // Uniform-lattice initialization; boundary rows/columns overwritten
    // with the equidistributed traces.
    let idx = |i: usize, j: usize| j * nx + i;
    let mut x = vec![0.0f64; nx * ny];
    let mut y = vec![0.0f64; nx * ny];
    for j in 0..ny {
        for i in 0..nx {
            x[idx(i, j)] = ax + (bx - ax) * i as f64 / (nx - 1) as f64;
            y[idx(i, j)] = ay + (by - ay) * j as f64 / (ny - 1) as f64;
        }
    }
    for i in 0..nx {
        x[idx(i, 0)] = bottom[i];
        y[idx(i, 0)] = ay;
        x[idx(i, ny - 1)] = top[i];
        y[idx(i, ny - 1)] = by;
    }
    for j in 0..ny {
        x[idx(0, j)] = ax;
        y[idx(0, j)] = left[j];
        x[idx(nx - 1, j)] = bx;
        y[idx(nx - 1, j)] = right[j];
    }

    let inv_dxi2 = ((nx - 1) as f64).powi(2);
    let inv_deta2 = ((ny - 1) as f64).powi(2);

    // Average of 1/g along the straight segment between two nodes.
    let face_coeff = |x0: f64, y0: f64, x1: f64, y1: f64| -> f64 {
        let f = |t: f64| 1.0 / g(x0 + t * (x1 - x0), y0 + t * (y1 - y0));
        quadrature::gauss8(&f, 0.0, 1.0)
    };

    let assemble =
        |x: &[f64], y: &[f64]| -> (Vec<f64>, Vec<f64>) {
            // East faces d_e[j*(nx-1)+i] between (i,j) and (i+1,j);
            // north faces d_n[j*nx+i] between (i,j) and (i,j+1).
            let mut d_e = vec![0.0f64; (nx - 1) * ny];
            let mut d_n = vec![0.0f64; nx * (ny - 1)];
            for j in 0..ny {
                for i in 0..nx - 1 {
                    d_e[j * (nx - 1) + i] =
                        face_coeff(x[idx(i, j)], y[idx(i, j)], x[idx(i + 1, j)], y[idx(i + 1, j)]);
                }
            }
            for j in 0..ny - 1 {
                for i in 0..nx {
                    d_n[j * nx + i] =
                        face_coeff(x[idx(i, j)], y[idx(i, j)], x[idx(i, j + 1)], y[idx(i, j + 1)]);
                }
            }
            (d_e, d_n)
        };

    let mut iterations = 0usize;
    let mut residual = f64::INFINITY;
    let mut converged = false;
    for outer in 0..opts.max_iter {
        iterations = outer + 1;
        let (d_e, d_n) = assemble(&x, &y);
        let x_prev = x.clone();
        let y_prev = y.clone();

        // SOR on both coordinate fields with frozen coefficients.
        let inner_tol = (0.01 * tol).max(1e-15 * diam);
        let mut sweeps = 0usize;
        loop {
            let mut max_update = 0.0f64;
            for j in 1..ny - 1 {
                for i in 1..nx - 1 {
                    let de = d_e[j * (nx - 1) + i] * inv_dxi2;
                    let dw = d_e[j * (nx - 1) + i - 1] * inv_dxi2;
                    let dn = d_n[j * nx + i] * inv_deta2;
                    let ds = d_n[(j - 1) * nx + i] * inv_deta2;
                    let diag = de + dw + dn + ds;
                    let p = idx(i, j);
                    let gs_x = (de * x[idx(i + 1, j)]
                        + dw * x[idx(i - 1, j)]
                        + dn * x[idx(i, j + 1)]
                        + ds * x[idx(i, j - 1)])
                        / diag;
                    let gs_y = (de * y[idx(i + 1, j)]
                        + dw * y[idx(i - 1, j)]
                        + dn * y[idx(i, j + 1)]
                        + ds * y[idx(i, j - 1)])
                        / diag;
                    let new_x = x[p] + opts.sor_omega * (gs_x - x[p]);
                    let new_y = y[p] + opts.sor_omega * (gs_y - y[p]);
                    max_update = max_update.max((new_x - x[p]).abs()).max((new_y - y[p]).abs());
                    x[p] = new_x;
                    y[p] = new_y;
                }
            }
            sweeps += 1;
            if max_update <= inner_tol {
                break;
            }
            if sweeps >= opts.sor_max_sweeps {
                return Err(Error::Convergence {
                    iterations: sweeps,
                    residual: max_update / diam,
                });
            }
        }

        // Outer convergence: node displacement between Picard iterates.
        let mut disp = 0.0f64;
        for p in 0..nx * ny {
            disp = disp.max((x[p] - x_prev[p]).abs()).max((y[p] - y_prev[p]).abs());
        }
        residual = normalized_residual(&x, &y, nx, ny, &assemble(&x, &y), inv_dxi2, inv_deta2, diam);
        if disp <= tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence {
            iterations,
            residual: if residual.is_finite() { residual } else { f64::MAX },
        });
    }

    let grid = MappedGrid2D {
        nx,
        ny,
        xcoords: x,
        ycoords: y,
        residual,
        iterations,
    };
    let min_jac = grid.min_cell_jacobian();
    if min_jac <= 0.0 {
        return Err(Error::Validation(format!(
            "mapped grid has folded cells (min cell Jacobian {min_jac:e})"
        )));
    }
    Ok(grid)
}

/// Max over interior nodes and both coordinate fields of the discrete
/// equation residual, scaled by the local diagonal and the domain
/// diameter so it reads as a relative node displacement.
#[allow(clippy::too_many_arguments)]
fn normalized_residual(
    x: &[f64],
    y: &[f64],
    nx: usize,
    ny: usize,
    coeffs: &(Vec<f64>, Vec<f64>),
    inv_dxi2: f64,
    inv_deta2: f64,
    diam: f64,
) -> f64 {
    let (d_e, d_n) = coeffs;
    let idx = |i: usize, j: usize| j * nx + i;
    let mut worst = 0.0f64;
    for j in 1..ny - 1 {
        for i in 1..nx - 1 {
            let de = d_e[j * (nx - 1) + i] * inv_dxi2;
            let dw = d_e[j * (nx - 1) + i - 1] * inv_dxi2;
            let dn = d_n[j * nx + i] * inv_deta2;
            let ds = d_n[(j - 1) * nx + i] * inv_deta2;
            let diag = de + dw + dn + ds;
            for field in [x, y] {
                let r = de * field[idx(i + 1, j)]
                    + dw * field[idx(i - 1, j)]
                    + dn * field[idx(i, j + 1)]
                    + ds * field[idx(i, j - 1)]
                    - diag * field[idx(i, j)];
                worst = worst.max((r / diag).abs() / diam);
            }
        }
    }
    worst
}
