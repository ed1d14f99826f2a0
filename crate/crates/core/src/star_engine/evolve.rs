use super::stencil::{derivative, Boundary, DerivativeScheme};
use super::PolynomialHamiltonian;
use crate::error::{Error, Result};
use crate::phase_space::WignerGrid;

/// Largest accepted Courant number `dt (max|H_p|/dx + max|H_x|/dp)`.
///
/// RK4 with fourth-order centered differences is stable up to about 2.06.
pub const CFL_LIMIT: f64 = 1.5;

const MAX_TIME: f64 = 10.0;

struct Velocity {
    hx: Vec<f64>,
    hp: Vec<f64>,
}

fn rhs(f: &[f64], v: &Velocity, nx: usize, np: usize, dx: f64, dp: f64, out: &mut [f64]) {
    let scheme = DerivativeScheme::default();
    let fx = derivative(f, nx, np, false, 1, dx, scheme, Boundary::ZeroExtension);
    let fp = derivative(f, nx, np, true, 1, dp, scheme, Boundary::ZeroExtension);
    for k in 0..f.len() {
        // ∂f/∂t = {H, f} = H_x f_p - H_p f_x
        out[k] = v.hx[k] * fp[k] - v.hp[k] * fx[k];
    }
}

fn prepare(h: &PolynomialHamiltonian, f0: &WignerGrid, t: f64, dt: f64) -> Result<(Velocity, usize, f64)> {
    if h.degree() > 2 {
        return Err(Error::InvalidInput(format!(
            "Moyal evolution is exact transport only for degree ≤ 2, got {}",
            h.degree()
        )));
    }
    if !h.is_real() {
        return Err(Error::InvalidInput("evolution needs a real Hamiltonian".into()));
    }
    if !t.is_finite() || t.abs() > MAX_TIME {
        return Err(Error::InvalidInput(format!("|t| must be ≤ {MAX_TIME}, got {t}")));
    }
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidInput(format!("dt must be positive, got {dt}")));
    }
    let s = f0.spec;
    let mut hx = Vec::with_capacity(s.len());
    let mut hp = Vec::with_capacity(s.len());
    for i in 0..s.nx {
        for j in 0..s.np {
            hx.push(h.deriv(1, 0, s.x(i), s.p(j)).re);
            hp.push(h.deriv(0, 1, s.x(i), s.p(j)).re);
        }
    }
    let vx = hp.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let vp = hx.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let courant = dt * (vx / s.dx + vp / s.dp);
    if courant > CFL_LIMIT {
        return Err(Error::CflViolation {
            courant,
            limit: CFL_LIMIT,
        });
    }
    let steps = (t.abs() / dt).ceil() as usize;
    let h_step = if steps == 0 { 0.0 } else { t / steps as f64 };
    Ok((Velocity { hx, hp }, steps, h_step))
}

fn rk4_step(f: &mut [f64], v: &Velocity, nx: usize, np: usize, dx: f64, dp: f64, h: f64, scratch: &mut [Vec<f64>; 5]) {
    let [k1, k2, k3, k4, tmp] = scratch;
    rhs(f, v, nx, np, dx, dp, k1);
    for k in 0..f.len() {
        tmp[k] = f[k] + 0.5 * h * k1[k];
    }
    rhs(tmp, v, nx, np, dx, dp, k2);
    for k in 0..f.len() {
        tmp[k] = f[k] + 0.5 * h * k2[k];
    }
    rhs(tmp, v, nx, np, dx, dp, k3);
    for k in 0..f.len() {
        tmp[k] = f[k] + h * k3[k];
    }
    rhs(tmp, v, nx, np, dx, dp, k4);
    for k in 0..f.len() {
        f[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    }
}

/// Integrates `∂f/∂t = {H, f}` from `0` to `t` with RK4.
///
/// The step is `t / ⌈|t|/dt⌉`; the field is extended by zero beyond the
/// lattice, so `f0` must be negligible near the edges.
pub fn moyal_evolve(h: &PolynomialHamiltonian, f0: &WignerGrid, t: f64, dt: f64) -> Result<WignerGrid> {
    let mut series = moyal_evolve_series(h, f0, t, dt, 1)?;
    Ok(series.pop().expect("at least the final snapshot").1)
}

/// Like [`moyal_evolve`] but also returns `snapshots` evenly spaced
/// intermediate states, including `t = 0` and the final time.
pub fn moyal_evolve_series(
    h: &PolynomialHamiltonian,
    f0: &WignerGrid,
    t: f64,
    dt: f64,
    snapshots: usize,
) -> Result<Vec<(f64, WignerGrid)>> {
    let (v, steps, h_step) = prepare(h, f0, t, dt)?;
    let s = f0.spec;
    let mut f = f0.values.clone();
    let n = f.len();
    let mut scratch = [vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    let snapshots = snapshots.max(1);
    let mut marks: Vec<usize> = (0..=snapshots).map(|k| k * steps / snapshots).collect();
    marks.dedup();
    let mut out = Vec::with_capacity(marks.len());
    let mut done = 0;
    for &m in &marks {
        while done < m {
            rk4_step(&mut f, &v, s.nx, s.np, s.dx, s.dp, h_step, &mut scratch);
            done += 1;
        }
        out.push((done as f64 * h_step, WignerGrid::new(s, f.clone())?));
    }
    if steps == 0 {
        out.truncate(1);
    }
    Ok(out)
}
