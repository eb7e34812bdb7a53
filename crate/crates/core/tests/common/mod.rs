//! Reference numerics for the oracle tests, kept independent of the library's
//! quadrature backend.
#![allow(dead_code)]

use num_complex::Complex64 as C64;

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite Gauss-Legendre on [a, b].
pub fn integrate_c(a: f64, b: f64, panels: usize, n: usize, f: impl Fn(f64) -> C64) -> C64 {
    let rule = gauss_legendre(n);
    let h = (b - a) / panels as f64;
    let mut acc = C64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + h * p as f64;
        for &(t, w) in &rule {
            acc += f(lo + 0.5 * h * (t + 1.0)) * (0.5 * h * w);
        }
    }
    acc
}

pub fn integrate(a: f64, b: f64, panels: usize, n: usize, f: impl Fn(f64) -> f64) -> f64 {
    integrate_c(a, b, panels, n, |r| C64::new(f(r), 0.0)).re
}

/// Spherical Bessel j0.
pub fn j0(z: f64) -> f64 {
    if z.abs() < 1e-3 {
        1.0 - z * z / 6.0 + z.powi(4) / 120.0
    } else {
        z.sin() / z
    }
}

/// Spherical Bessel j1.
pub fn j1(z: f64) -> f64 {
    if z.abs() < 1e-3 {
        z / 3.0 - z.powi(3) / 30.0 + z.powi(5) / 840.0
    } else {
        z.sin() / (z * z) - z.cos() / z
    }
}
