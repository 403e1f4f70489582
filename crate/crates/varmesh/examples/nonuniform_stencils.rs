//! Three-point derivative stencils on unequal spacings: exactness on
//! quadratics, the classical limit at equal spacing, and second-order
//! convergence on an equidistributed mesh.

use varmesh::{
    differentiate, first_derivative_coeffs, generate_mesh, second_derivative_coeffs, DerivOrder,
    WeightSpec,
};

fn main() -> varmesh::Result<()> {
    let (hl, hr) = (0.7, 1.3);
    let d1 = first_derivative_coeffs(hl, hr)?;
    let d2 = second_derivative_coeffs(hl, hr)?;
    println!("spacings h_left = {hl}, h_right = {hr}");
    println!("  d/dx   coefficients: a = {:+.6}, b = {:+.6}, c = {:+.6}", d1.a, d1.b, d1.c);
    println!("  d2/dx2 coefficients: a = {:+.6}, b = {:+.6}, c = {:+.6}", d2.a, d2.b, d2.c);

    // Exact on x^2: f' (1.0) = 2, f''(1.0) = 2.
    let f = |x: f64| x * x;
    let x0 = 1.0;
    println!(
        "  applied to x^2 at x = 1: f' = {:.12}, f'' = {:.12}",
        d1.apply(f(x0 - hl), f(x0), f(x0 + hr)),
        d2.apply(f(x0 - hl), f(x0), f(x0 + hr))
    );

    // Equal spacings give the textbook central differences exactly.
    let u1 = first_derivative_coeffs(0.5, 0.5)?;
    println!("\nequal spacings h = 0.5: a = {}, b = {}, c = {} (central difference)", u1.a, u1.b, u1.c);

    // Second-order convergence of d2/dx2 for sin(x) on a graded mesh.
    println!("\nconvergence of max |D2 sin - (-sin)| on a g(s) = s mesh over [1, e]:");
    let g = WeightSpec::table(vec![1.0, std::f64::consts::E], vec![1.0, std::f64::consts::E])?;
    let mut prev: Option<f64> = None;
    for n in [16usize, 32, 64, 128, 256] {
        let mesh = generate_mesh(&g, [1.0, std::f64::consts::E], n)?;
        let samples: Vec<f64> = mesh.nodes().iter().map(|x| x.sin()).collect();
        let approx = differentiate(&mesh, &samples, DerivOrder::Second)?;
        let err = approx
            .iter()
            .zip(mesh.nodes()[1..].iter())
            .map(|(d, x)| (d + x.sin()).abs())
            .fold(0f64, f64::max);
        match prev {
            Some(p) => println!("  N = {n:>4}: {err:.3e}  (ratio {:.2})", p / err),
            None => println!("  N = {n:>4}: {err:.3e}"),
        }
        prev = Some(err);
    }
    Ok(())
}
