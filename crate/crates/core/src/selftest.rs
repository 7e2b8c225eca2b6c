//! Numerical self-test: each check compares a spectral computation with an independent oracle
//! or a closed form and reports the measured error against its tolerance.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex;
use rand::{rngs::StdRng, Rng, SeedableRng};

use crate::besov::{besov_norm_atoms, besov_norm_wavelet, equivalence_report, BesovParams, WeightMode};
use crate::calculus::Multiplier;
use crate::config::RunConfig;
use crate::error::Result;
use crate::family::{bump_family, dilate_family, smooth_family, spectral_smooth_family};
use crate::gelfand::{
    forward_transform, inverse_transform, spherical_eval, synthesize_spectral_bump, GelfandGrid, SpectralFunction,
    SphericalPoint,
};
use crate::heisenberg::{direct_convolution, fd_sublaplacian, radialize, BoxFunction3D, BoxGrid, RadialFunction, RadialMesh};
use crate::littlewood_paley::{
    admissibility_integral, calderon_decompose, wavelet_isometry_check, AtomMode, SmoothPartition,
};

/// Largest spread allowed across the dilate family.
pub const DILATE_DRIFT_BOUND: f64 = 20.0;

/// Outcome of one check: `measured` is compared with `limit` (smaller is better).
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub limit: f64,
    pub passed: bool,
    pub seconds: f64,
    pub detail: String,
}

impl Check {
    fn new(name: &str, measured: f64, limit: f64, extra_ok: bool, detail: String, start: Instant) -> Self {
        Self {
            name: name.to_string(),
            measured,
            limit,
            passed: extra_ok && measured.is_finite() && measured <= limit,
            seconds: start.elapsed().as_secs_f64(),
            detail,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SelftestOptions {
    /// Skip the box convolution oracle.
    pub quick: bool,
    /// Multiplies every tolerance (not the ratio bounds).
    pub tolerance_scale: f64,
    pub weight_mode: WeightMode,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        Self { quick: false, tolerance_scale: 1.0, weight_mode: WeightMode::Derived }
    }
}

/// `max |‖F(f)‖/‖f‖ − 1|` over the smooth family.
pub fn check_plancherel(grid: &Arc<GelfandGrid<f64>>, mesh: &Arc<RadialMesh<f64>>, tol: f64) -> Result<Check> {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for f in smooth_family(mesh) {
        worst = worst.max((forward_transform(&f, grid)?.norm() / f.norm() - 1.0).abs());
    }
    Ok(Check::new("plancherel", worst, tol, true, "6 smooth functions".into(), start))
}

/// Spectral→space→spectral on the bump family and space→spectral→space on the smooth family.
pub fn check_inversion(
    grid: &Arc<GelfandGrid<f64>>,
    mesh: &Arc<RadialMesh<f64>>,
    tol_spectral: f64,
    tol_space: f64,
) -> Result<Check> {
    let start = Instant::now();
    let mut spec = 0.0f64;
    for b in bump_family(grid)? {
        spec = spec.max(forward_transform(&inverse_transform(&b, mesh)?, grid)?.rel_err(&b));
    }
    let mut space = 0.0f64;
    for f in smooth_family(mesh) {
        space = space.max(inverse_transform(&forward_transform(&f, grid)?, mesh)?.rel_err(&f));
    }
    // report the worse of the two relative to its own tolerance
    let measured = (spec / tol_spectral).max(space / tol_space);
    Ok(Check::new("inversion", measured, 1.0, true, format!("spectral {spec:.2e}, space {space:.2e}"), start))
}

fn random_spectral(grid: &Arc<GelfandGrid<f64>>, rng: &mut StdRng) -> SpectralFunction<f64> {
    let values = (0..grid.len()).map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    SpectralFunction::from_values(grid, values)
}

/// Reconstruction error over 20 random spectral functions; far bands must be exactly orthogonal.
pub fn check_calderon(grid: &Arc<GelfandGrid<f64>>, part: &SmoothPartition<f64>, tol: f64) -> Result<Check> {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(20);
    let mut worst = 0.0f64;
    let mut orthogonal = true;
    for _ in 0..20 {
        let f = random_spectral(grid, &mut rng);
        let parts = calderon_decompose(&f, part, AtomMode::Single)?;
        worst = worst.max(parts.reconstruct(part).rel_err(&f));
        for j in 0..parts.atoms.len() {
            for k in j + 2..parts.atoms.len() {
                orthogonal &= parts.atoms[j].inner(&parts.atoms[k]) == Complex::new(0.0, 0.0);
            }
        }
    }
    let detail = format!("20 random functions, far bands {}", if orthogonal { "orthogonal" } else { "NOT orthogonal" });
    Ok(Check::new("calderon", worst, tol, orthogonal, detail, start))
}

/// `F(f ∗ g) = F(f)·F(g)` with `f ∗ g` from the 16³ Riemann-sum oracle, plus commutativity.
pub fn check_convolution(
    grid: &Arc<GelfandGrid<f64>>,
    mesh: &Arc<RadialMesh<f64>>,
    budget: u128,
    tol: f64,
) -> Result<Check> {
    let start = Instant::now();
    let (a, c) = (0.7, 1.2);
    let bx = BoxGrid::<f64>::cube(16, 4.0);
    let gauss = |s: f64| BoxFunction3D::from_fn(&bx, move |x, y, t| Complex::new((-s * (x * x + y * y + t * t)).exp(), 0.0));
    let radial = |s: f64| RadialFunction::from_fn(mesh, move |r, t| Complex::new((-s * (r * r + t * t)).exp(), 0.0));
    let (fb, gb) = (gauss(a), gauss(c));
    let fg = direct_convolution(&fb, &gb, budget)?;
    let gf = direct_convolution(&gb, &fb, budget)?;
    let comm = gf.sub(&fg).norm() / fg.norm();
    let ff = forward_transform(&radial(a), grid)?;
    let gg = forward_transform(&radial(c), grid)?;
    let product = SpectralFunction::from_values(grid, ff.values.iter().zip(&gg.values).map(|(x, y)| x * y).collect());
    let oracle = forward_transform(&radialize(&fg, mesh, 64)?, grid)?;
    let err = oracle.rel_err(&product);
    Ok(Check::new("convolution", err.max(comm), tol, true, format!("theorem {err:.2e}, commutativity {comm:.2e}"), start))
}

/// Interior relative error of the finite-difference sub-Laplacian on a sampled spherical function.
pub fn eigen_residual(lambda: f64, m: usize, nodes: usize) -> Result<f64> {
    let grid = BoxGrid::<f64>::cube(nodes, 3.0);
    let p = SphericalPoint::new(lambda, m)?;
    let f = BoxFunction3D::from_fn(&grid, |x, y, t| spherical_eval(p, x.hypot(y), t, 1).expect("nonzero lambda"));
    let d = fd_sublaplacian(&f)?;
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
    Ok((num / den).sqrt())
}

pub const EIGEN_POINTS: [(f64, usize); 3] = [(1.0, 0), (-2.0, 3), (0.5, 5)];

/// Eigenvalue law `|λ|(2m+1)` at 64³ and the observed order between 32³ and 64³ (must reach 1.8).
pub fn check_eigenvalue(tol: f64) -> Result<Check> {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut min_order = f64::INFINITY;
    for (lambda, m) in EIGEN_POINTS {
        let e64 = eigen_residual(lambda, m, 64)?;
        let e32 = eigen_residual(lambda, m, 32)?;
        worst = worst.max(e64);
        min_order = min_order.min((e32 / e64).ln() / (63.0f64 / 31.0).ln());
    }
    Ok(Check::new("eigenvalue", worst, tol, min_order >= 1.8, format!("order {min_order:.2}"), start))
}

/// Admissibility closed forms and the isometry constant for `ν = ψ̂` on three band probes.
pub fn check_isometry(grid: &Arc<GelfandGrid<f64>>, part: &SmoothPartition<f64>, tol: f64) -> Result<Check> {
    let start = Instant::now();
    let ind = admissibility_integral(&Multiplier::<f64>::indicator(1.0, 4.0)).integral;
    let pe = admissibility_integral(&Multiplier::<f64>::power_exp(1)).integral;
    let closed = (ind - 4f64.ln()).abs().max((pe - 0.25).abs());
    let psi = part.psi_multiplier();
    let mut worst = 0.0f64;
    for (c, w) in [(6.0, 4.0), (40.0, 20.0), (300.0, 150.0)] {
        let chk = wavelet_isometry_check(&psi, &synthesize_spectral_bump(grid, c, w)?)?;
        worst = worst.max((chk.ratio / chk.predicted - 1.0).abs());
    }
    let ok = closed <= 1e-3 * (tol / 1e-2);
    Ok(Check::new("isometry", worst, tol, ok, format!("closed forms {closed:.2e}"), start))
}

/// Family-wide norm-ratio spreads, the atom/wavelet identity and the dilate-family drift.
pub fn check_equivalence(
    grid: &Arc<GelfandGrid<f64>>,
    mesh: &Arc<RadialMesh<f64>>,
    part: &SmoothPartition<f64>,
    params: &[BesovParams<f64>],
    bound: f64,
    identity_tol: f64,
) -> Result<Check> {
    let start = Instant::now();
    let family = spectral_smooth_family(mesh, grid)?;
    let rep = equivalence_report(&family, params, part, WeightMode::Derived, bound)?;
    let worst = rep.worst_by_pair().into_iter().map(|(_, w)| w).fold(1.0, f64::max);
    let mut identity = 0.0f64;
    for (_, f) in &family {
        for p in params {
            let w = besov_norm_wavelet(f, part, p, WeightMode::Derived)?;
            identity = identity.max((w / besov_norm_atoms(f, part, p)? - 1.0).abs());
        }
    }
    let dil = equivalence_report(&dilate_family(grid, &[0, 1, 2, 3, 4])?, params, part, WeightMode::Derived, DILATE_DRIFT_BOUND)?;
    let drift = dil.worst_by_pair().into_iter().map(|(_, w)| w).fold(1.0, f64::max);
    let ok = rep.passed() && dil.passed() && identity <= identity_tol;
    Ok(Check::new(
        "equivalence",
        worst,
        bound,
        ok,
        format!("identity {identity:.1e}, dilate drift {drift:.2}"),
        start,
    ))
}

pub fn run_selftest(cfg: &RunConfig, opts: SelftestOptions) -> Result<Vec<Check>> {
    let s = opts.tolerance_scale;
    let grid = cfg.grid()?;
    let mesh = cfg.mesh()?;
    let part = cfg.partition()?;
    let mut out = vec![
        check_plancherel(&grid, &mesh, 1e-3 * s)?,
        check_inversion(&grid, &mesh, 1e-3 * s, 1e-2 * s)?,
        check_calderon(&grid, &part, 1e-10 * s)?,
    ];
    if !opts.quick {
        out.push(check_convolution(&grid, &mesh, u128::from(cfg.convolution_budget), 5e-2 * s)?);
    }
    out.push(check_eigenvalue(1e-2 * s)?);
    out.push(check_isometry(&grid, &part, 1e-2 * s)?);
    out.push(check_equivalence(&grid, &mesh, &part, &cfg.besov_params()?, cfg.ratio_bound, 1e-6 * s)?);
    Ok(out)
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

pub fn format_table(checks: &[Check]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<12} {:>6} {:>11} {:>11} {:>8}  detail", "check", "status", "measured", "limit", "seconds");
    for c in checks {
        let status = if c.passed { "pass" } else { "FAIL" };
        let _ = writeln!(
            s,
            "{:<12} {:>6} {:>11.3e} {:>11.3e} {:>8.2}  {}",
            c.name, status, c.measured, c.limit, c.seconds, c.detail
        );
    }
    s
}
