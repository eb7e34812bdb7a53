//! Single fermionic mode with H = (1/2) hbar omega (1 - sigma3).

use num_complex::Complex64 as C64;

type Mat2 = [[C64; 2]; 2];

fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

fn adjoint(a: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].conj()))
}

/// exp(-i H t) for a Hermitian 2x2 H = h0 + h . sigma (hbar = 1).
fn evolution(h: &Mat2, t: f64) -> Mat2 {
    let h0 = 0.5 * (h[0][0].re + h[1][1].re);
    let hz = 0.5 * (h[0][0].re - h[1][1].re);
    let hx = h[0][1].re;
    let hy = -h[0][1].im;
    let norm = (hx * hx + hy * hy + hz * hz).sqrt();
    let (cs, sn) = ((norm * t).cos(), (norm * t).sin());
    let (nx, ny, nz) = if norm > 0.0 {
        (hx / norm, hy / norm, hz / norm)
    } else {
        (0.0, 0.0, 0.0)
    };
    let i = C64::i();
    let phase = C64::from_polar(1.0, -h0 * t);
    // cos - i sin (n . sigma)
    let m = [
        [C64::new(cs, 0.0) - i * sn * nz, -i * sn * C64::new(nx, -ny)],
        [-i * sn * C64::new(nx, ny), C64::new(cs, 0.0) + i * sn * nz],
    ];
    m.map(|row| row.map(|z| z * phase))
}

/// Returns || U^dag sigma_+ U - sigma_+ e^{-i omega t} || (max entry) with
/// U = exp(-i H t / hbar) and H = (1/2) hbar omega (1 - sigma3).
pub fn larmor_evolution_check(omega: f64, t: f64) -> f64 {
    let zero = C64::new(0.0, 0.0);
    let h: Mat2 = [[zero, zero], [zero, C64::new(omega, 0.0)]];
    let u = evolution(&h, t);
    let sp: Mat2 = [[zero, C64::new(1.0, 0.0)], [zero, zero]];
    let evolved = mul(&adjoint(&u), &mul(&sp, &u));
    let phase = C64::from_polar(1.0, -omega * t);
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((evolved[i][j] - sp[i][j] * phase).norm());
        }
    }
    worst
}

/// <z| sigma_+(t) |z> for the two-component state z, without a factor 1/2.
pub fn larmor_polarization(z: [C64; 2], omega: f64, t: f64) -> C64 {
    z[0].conj() * z[1] * C64::from_polar(1.0, -omega * t)
}
