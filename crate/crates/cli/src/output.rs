use std::fmt::Write as _;

use fockdirac::{ExampleReport, VerificationReport};
use num_complex::Complex64;
use serde::Serialize;

use crate::CliError;

pub const CSV_HEADER: &str = "x0,x1,x2,x3,re_phi1,im_phi1,re_phi2,im_phi2,re_phi3,im_phi3,re_phi4,im_phi4,r0,r1,r2,r3";

/// Shortest round-trip decimal, switching to exponent form far from unity.
pub fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub fn push_row(out: &mut String, x: &[f64; 4], phi: &[Complex64; 4], r: &[f64; 4]) {
    let mut cells: Vec<String> = x.iter().map(|&v| fmt_f64(v)).collect();
    for z in phi {
        cells.push(fmt_f64(z.re));
        cells.push(fmt_f64(z.im));
    }
    cells.extend(r.iter().map(|&v| fmt_f64(v)));
    out.push_str(&cells.join(","));
    out.push('\n');
}

/// Pretty JSON with a trailing newline; keys follow struct field order.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn verify_text(report: &VerificationReport) -> String {
    let mut s = String::new();
    let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &report.checks {
        let _ = write!(
            s,
            "{} {:width$}  residual {:>10.3e}  tol {:.0e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.residual,
            c.tolerance,
        );
        if let Some(d) = &c.detail {
            let _ = write!(s, "  ({d})");
        }
        s.push('\n');
    }
    let _ = writeln!(
        s,
        "{} passed, {} failed (seed {}, kappa {})",
        report.passed, report.failed, report.seed, report.kappa
    );
    s
}

pub fn example_text(r: &ExampleReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "a = {}, kappa = {}, l = {}, kappa*a = {}", r.a, r.kappa, r.ell, r.kappa * r.a);
    let _ = writeln!(s, "dimensionless integrals");
    let _ = writeln!(s, "  I_E   = {:.15}", r.i_e);
    let _ = writeln!(s, "  I_Ecl = {:.15}", r.i_ecl);
    let _ = writeln!(s, "  I_Q   = {:.15}", r.i_q);
    let _ = writeln!(s, "energies and charge");
    let _ = writeln!(s, "  E     = {:.12e}", r.energy);
    let _ = writeln!(s, "  E_cl  = {:.12e}", r.classical_energy);
    let _ = writeln!(s, "  E_cl < E: {}", r.classical_energy < r.energy);
    let _ = writeln!(s, "  Q     = {:.12e}", r.charge);
    let _ = writeln!(s, "  Q closed form = {:.12e}, relative error {:.3e}", r.charge_closed_form, r.charge_rel_error);
    let _ = writeln!(s, "  E / (m c^2 Q / q) = {:.12}", r.ratio);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for v in [0.0, -0.0, 1.0, 0.1, -3.25e-9, 1e-300, 6.02e23, 1.0 / 3.0] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
            assert!(!s.contains(','));
        }
    }

    #[test]
    fn row_has_header_width() {
        let mut s = String::new();
        push_row(&mut s, &[0.0; 4], &[Complex64::new(1.0, -1.0); 4], &[0.5; 4]);
        assert!(s.ends_with('\n') && !s.contains('\r'));
        assert_eq!(s.trim_end().split(',').count(), CSV_HEADER.split(',').count());
    }
}
