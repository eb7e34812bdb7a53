use fockdirac::current::{r_current, r_hermiticity_residual};
use fockdirac::fock::{basis_state, charge_operator, hamiltonian, vacuum, ModeOperators};
use fockdirac::*;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn wave_vector() -> impl Strategy<Value = WaveVector> {
    // log-uniform magnitude in [1e-3, 1e3], uniform direction
    (-3.0f64..3.0, -1.0f64..1.0, 0.0f64..std::f64::consts::TAU).prop_map(|(lg, ct, ph)| {
        let r = 10f64.powf(lg);
        let st = (1.0 - ct * ct).sqrt();
        WaveVector::new(r * st * ph.cos(), r * st * ph.sin(), r * ct)
    })
}

fn point() -> impl Strategy<Value = SpacetimePoint> {
    prop::array::uniform4(-1.0f64..1.0).prop_map(SpacetimePoint::from_array)
}

fn profile() -> impl Strategy<Value = RhoProfile> {
    prop_oneof![
        (0.05f64..20.0).prop_map(|a| RhoProfile::Sech2 { a }),
        (0.05f64..20.0).prop_map(|a| RhoProfile::Gaussian { a }),
        (0.05f64..20.0).prop_map(|kmax| RhoProfile::Step { kmax }),
        (prop::collection::vec(0.01f64..2.0, 2..6), prop::collection::vec(0.05f64..=1.0, 6)).prop_map(|(steps, rho)| {
            let mut k = vec![0.0];
            for s in &steps[1..] {
                k.push(k.last().unwrap() + s);
            }
            let n = k.len();
            RhoProfile::Tabulated { k, rho: rho[..n].to_vec() }
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn classical_energy_is_below_quantum_energy(p in profile(), kappa in 0.1f64..10.0) {
        let e = ExpectationEngine::new(PhysicalConstants::natural(kappa).unwrap(), QuadratureSpec::default()).unwrap();
        let s = RhoState::new(ModeIndex::ELECTRON[0], p);
        let quantum = e.quantum_energy(&s).unwrap();
        let classical = e.classical_energy(&s).unwrap();
        prop_assert!(classical < quantum, "{} >= {}", classical, quantum);
        prop_assert!(classical >= 0.0);
    }

    #[test]
    fn spinors_solve_momentum_space_dirac_equation(k in wave_vector(), kappa in 0.1f64..10.0) {
        let sp = SpinorBasis::standard(kappa);
        let k = k.scaled(kappa);
        prop_assert!(sp.eigen_residual(&k) <= 1e-12 * (1.0 + k.norm() / kappa));
        prop_assert!(sp.orthonormality_residual(&k) <= 1e-12);
        prop_assert!(sp.reflected_overlap_residual(&k) <= 1e-12);
    }

    #[test]
    fn field_shifts_charge_by_q(k in wave_vector(), x in point(), q in 0.1f64..3.0) {
        let consts = PhysicalConstants::new(1.0, 1.0, 1.0, q, 1.0).unwrap();
        let f = DiracField::standard(1.0);
        prop_assert!(f.charge_commutator_residual(&k, &x, &consts) <= 1e-12);
    }

    #[test]
    fn equal_momentum_r_current_is_hermitian_form(
        k in wave_vector(),
        x in point(),
        mu in 0usize..4,
        re in prop::array::uniform16(-1.0f64..1.0),
        im in prop::array::uniform16(-1.0f64..1.0),
    ) {
        let f = DiracField::standard(1.0);
        let mut psi = FockVector::ZERO;
        for i in 0..16 {
            psi[i] = C64::new(re[i], im[i]);
        }
        let n = psi.norm();
        prop_assume!(n > 1e-3);
        let psi = psi.scale(C64::new(1.0 / n, 0.0));
        let r = r_current(&f, mu, &k, &k, &x).unwrap();
        let v = r.matrix_element(&psi, &psi);
        prop_assert!(v.im.abs() <= 1e-12 * (1.0 + r.max_abs()), "{:?}", v);
    }

    #[test]
    fn r_current_swap(k in wave_vector(), kp in wave_vector(), x in point()) {
        let f = DiracField::standard(1.0);
        prop_assert!(r_hermiticity_residual(&f, &k, &kp, &x) <= 1e-12);
    }

    #[test]
    fn single_mode_energy_is_rho_times_mode_energy(
        k in wave_vector(),
        rho in 0.0f64..=1.0,
        xi in 0.0f64..std::f64::consts::TAU,
        s in 1usize..=4,
    ) {
        let consts = PhysicalConstants::default();
        let mode = ModeIndex::new(s).unwrap();
        let mut psi = vacuum().scale(C64::new((1.0 - rho).sqrt(), 0.0));
        psi.add_scaled(C64::from_polar(rho.sqrt(), xi), &basis_state(ModeSet::from_modes(&[mode])));
        let h = hamiltonian(&k, &consts).matrix_element(&psi, &psi);
        let expected = consts.mode_energy(&k) * rho;
        prop_assert!((h.re - expected).abs() <= 1e-12 * (1.0 + expected));
        prop_assert!(h.im.abs() <= 1e-12 * (1.0 + expected));
    }

    #[test]
    fn hamiltonian_commutes_with_charge(k in wave_vector(), q in 0.1f64..3.0) {
        let consts = PhysicalConstants::new(1.0, 1.0, 1.0, q, 1.0).unwrap();
        let comm = hamiltonian(&k, &consts).commutator(&charge_operator(&consts));
        prop_assert!(comm.max_abs() <= 1e-12);
    }

    #[test]
    fn charge_scales_as_inverse_cube(a in 0.05f64..20.0, lambda in 0.1f64..10.0) {
        let e = ExpectationEngine::new(PhysicalConstants::default(), QuadratureSpec::default()).unwrap();
        let q1 = e.total_charge(&RhoState::sech2_spin_up(a).into()).unwrap();
        let q2 = e.total_charge(&RhoState::sech2_spin_up(lambda * a).into()).unwrap();
        prop_assert!((q2 * lambda.powi(3) - q1).abs() <= 1e-10 * q1);
    }

    #[test]
    fn profiles_stay_in_unit_interval(p in profile(), k in 0.0f64..50.0) {
        let v = p.value(k);
        prop_assert!((0.0..=1.0).contains(&v));
        if !p.has_tail() {
            prop_assert_eq!(p.value(p.cutoff(40.0) * 1.01 + 1e-9), 0.0);
        }
    }
}

#[test]
fn vacuum_has_no_occupation() {
    let modes = ModeOperators::new();
    for s in ModeIndex::ALL {
        let n = &*modes.creator(s) * modes.annihilator(s);
        assert_eq!(n.matrix_element(&vacuum(), &vacuum()), C64::new(0.0, 0.0));
    }
}
