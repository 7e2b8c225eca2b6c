use std::sync::Arc;

use num_complex::Complex;

use super::*;
use crate::gelfand::{spherical_eval, SphericalPoint};

fn mesh() -> Arc<RadialMesh<f64>> {
    Arc::new(RadialMesh::<f64>::new(1, 10.0, 64, 20.0, 256).unwrap())
}

// C^∞ bump with support r ≤ r0, |t| ≤ t0.
fn compact_bump(r: f64, t: f64, r0: f64, t0: f64) -> f64 {
    let u = (r / r0).powi(2) + (t / t0).powi(2);
    if u >= 1.0 { 0.0 } else { (-1.0 / (1.0 - u)).exp() }
}

#[test]
fn mesh_weights_integrate_gaussian() {
    // ∫_{C×R} e^{−|z|²−t²} = π · √π
    let m = mesh();
    let f = RadialFunction::from_fn(&m, |r, t| Complex::new((-(r * r) / 2.0 - t * t / 2.0).exp(), 0.0));
    let exact = std::f64::consts::PI * std::f64::consts::PI.sqrt();
    assert!((f.norm_sq() - exact).abs() < 1e-12 * exact);
    assert!(RadialMesh::<f64>::new(1, 10.0, 0, 20.0, 8).is_err());
}

#[test]
fn dilation_identity_and_formula() {
    let m = mesh();
    let f = RadialFunction::from_fn(&m, |r, t| Complex::new((-(r * r) - t * t / 4.0).exp(), 0.0));
    assert_eq!(dilate_function(1.0, &f).unwrap().values, f.values);
    assert!(dilate_function(0.0, &f).is_err());
    let g = dilate_function(2.0, &f).unwrap();
    let expect = RadialFunction::from_fn(&m, |r, t| Complex::new(0.25 * (-(r * r) / 4.0 - t * t / 64.0).exp(), 0.0));
    assert!(g.rel_err(&expect) < 1e-4, "{}", g.rel_err(&expect));
}

#[test]
fn dilation_preserves_norm_of_compact_bump() {
    let m = mesh();
    let f = RadialFunction::from_fn(&m, |r, t| Complex::new(compact_bump(r, t, 3.0, 6.0), 0.0));
    for a in [0.5, 2.0] {
        let g = dilate_function(a, &f).unwrap();
        assert!((g.norm() / f.norm() - 1.0).abs() < 1e-3, "a={a}");
        assert!(!g.off_grid);
    }
}

#[test]
fn dilation_off_grid_flag() {
    let m = mesh();
    let f = RadialFunction::from_fn(&m, |r, t| Complex::new(compact_bump(r, t, 3.0, 6.0), 0.0));
    let g = dilate_function(1e-3, &f).unwrap();
    assert!(g.off_grid);
}

#[test]
fn involution_rules() {
    let m = mesh();
    let even = RadialFunction::from_fn(&m, |r, t| Complex::new((-(r * r) - t * t).exp(), 0.0));
    assert_eq!(involution(&even).values, even.values);
    let f = RadialFunction::from_fn(&m, |r, t| Complex::new((-(r * r) - (t - 1.0).powi(2)).exp(), t.sin() * (-t * t).exp()));
    assert_eq!(involution(&involution(&f)).values, f.values);
    let lhs = involution(&dilate_function(2.0, &f).unwrap());
    let rhs = dilate_function(2.0, &involution(&f)).unwrap();
    assert!(lhs.sub(&rhs).norm() < 1e-12 * f.norm());
}

fn gauss_box(grid: &BoxGrid<f64>, a: f64) -> BoxFunction3D<f64> {
    BoxFunction3D::from_fn(grid, |x, y, t| Complex::new((-a * (x * x + y * y + t * t)).exp(), 0.0))
}

#[test]
fn convolution_with_zero_and_budget() {
    let grid = BoxGrid::<f64>::cube(8, 3.0);
    let f = gauss_box(&grid, 1.0);
    let z = BoxFunction3D::zeros(&grid);
    let out = direct_convolution(&f, &z, DEFAULT_CONVOLUTION_BUDGET).unwrap();
    assert!(out.values.iter().all(|v| v.norm() == 0.0));
    match direct_convolution(&f, &f, 1000) {
        Err(crate::Error::BudgetExceeded { limit, .. }) => assert_eq!(limit, 1000),
        other => panic!("expected budget error, got {other:?}"),
    }
}

#[test]
fn convolution_at_identity_is_norm_squared() {
    let grid = BoxGrid::<f64>::cube(16, 3.0);
    let f = BoxFunction3D::from_fn(&grid, |x, y, t| Complex::new((-(x * x + y * y) - 0.8 * t * t).exp(), 0.0));
    let conv = direct_convolution(&f, &involution_box(&f), DEFAULT_CONVOLUTION_BUDGET).unwrap();
    // the identity is not a node of an even-sized grid; evaluate the same sum there directly
    let at_e = convolution_at(&f, &involution_box(&f), 0.0, 0.0, 0.0).unwrap();
    assert!((at_e - conv.trilinear(0.0, 0.0, 0.0)).norm() < 0.2 * at_e.norm());
    let n2 = f.norm().powi(2);
    assert!((at_e.re / n2 - 1.0).abs() < 0.05, "{} vs {}", at_e.re, n2);
}

#[test]
fn convolution_commutes_on_radial_inputs() {
    let grid = BoxGrid::<f64>::cube(16, 4.0);
    let f = gauss_box(&grid, 0.7);
    let g = gauss_box(&grid, 1.2);
    let fg = direct_convolution(&f, &g, DEFAULT_CONVOLUTION_BUDGET).unwrap();
    let gf = direct_convolution(&g, &f, DEFAULT_CONVOLUTION_BUDGET).unwrap();
    assert!(fg.sub(&gf).norm() / fg.norm() < 5e-2);
}

#[test]
fn convolution_of_radial_inputs_is_radial() {
    let grid = BoxGrid::<f64>::cube(16, 4.0);
    let f = gauss_box(&grid, 0.7);
    let g = gauss_box(&grid, 1.2);
    let fg = direct_convolution(&f, &g, DEFAULT_CONVOLUTION_BUDGET).unwrap();
    let m = Arc::new(RadialMesh::<f64>::new(1, 5.0, 32, 4.0, 33).unwrap());
    let round = box_from_radial(&radialize(&fg, &m, 64).unwrap(), &grid);
    assert!(round.sub(&fg).norm() / fg.norm() < 5e-2);
}

#[test]
fn sublaplacian_kills_constants() {
    let grid = BoxGrid::<f64>::cube(9, 2.0);
    let f = BoxFunction3D::from_fn(&grid, |_, _, _| Complex::new(3.0, -1.0));
    let d = fd_sublaplacian(&f).unwrap();
    assert!(d.values.iter().all(|v| v.norm() < 1e-9));
    assert!(matches!(fd_sublaplacian(&BoxFunction3D::zeros(&BoxGrid::<f64>::cube(4, 1.0))), Err(crate::Error::GridTooCoarse(4))));
}

fn eigen_error(lambda: f64, m: usize, nodes: usize) -> f64 {
    let grid = BoxGrid::<f64>::cube(nodes, 3.0);
    let p = SphericalPoint { lambda, m };
    let f = BoxFunction3D::from_fn(&grid, |x, y, t| spherical_eval(p, x.hypot(y), t, 1).unwrap());
    let d = fd_sublaplacian(&f).unwrap();
    let ev = lambda.abs() * (2 * m + 1) as f64;
    let (mut num, mut den) = (0.0, 0.0);
    for ix in 1..nodes - 1 {
        for iy in 1..nodes - 1 {
            for it in 1..nodes - 1 {
                num += (d.at(ix, iy, it) - f.at(ix, iy, it) * ev).norm_sqr();
                den += (f.at(ix, iy, it) * ev).norm_sqr();
            }
        }
    }
    (num / den).sqrt()
}

#[test]
fn sublaplacian_eigenvalue_and_order() {
    let e32 = eigen_error(1.0, 0, 32);
    let e64 = eigen_error(1.0, 0, 64);
    assert!(e64 < 1e-2);
    let order = (e32 / e64).ln() / (63.0f64 / 31.0).ln();
    assert!(order > 1.8, "order {order}");
}

#[test]
fn radialize_rules() {
    let grid = BoxGrid::<f64>::cube(48, 4.0);
    let m = Arc::new(RadialMesh::<f64>::new(1, 5.0, 24, 4.0, 25).unwrap());
    let radial = BoxFunction3D::from_fn(&grid, |x, y, t| Complex::new((-(x * x + y * y) - t * t).exp(), 0.0));
    let r = radialize(&radial, &m, 64).unwrap();
    let exact = RadialFunction::from_fn(&m, |r, t| Complex::new((-(r * r) - t * t).exp(), 0.0));
    assert!(r.rel_err(&exact) < 2e-2, "{}", r.rel_err(&exact));
    let odd = BoxFunction3D::from_fn(&grid, |x, y, t| Complex::new(x * (-(x * x + y * y) - t * t).exp(), 0.0));
    assert!(radialize(&odd, &m, 64).unwrap().max_abs() < 1e-12);
    let mixed = BoxFunction3D::from_fn(&grid, |x, y, t| {
        Complex::new((1.0 + x + 0.5 * y * y) * (-(x * x + y * y) - t * t).exp(), 0.0)
    });
    let back = box_from_radial(&radialize(&mixed, &m, 64).unwrap(), &grid);
    assert!(back.norm() <= mixed.norm());
}
