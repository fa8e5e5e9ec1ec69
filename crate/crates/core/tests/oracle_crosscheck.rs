use kgkratzer::oracle::{
    fd_angular_eigen, fd_radial_auto, fd_radial_eigen, fd_radial_profile, GridSpec, OracleOptions, RadialMode, Separation,
};
use kgkratzer::spectrum::{angular_j, nonrel_energy, solve_noncentral_relativistic, solve_radial_relativistic};
use kgkratzer::wavefn::RadialState;
use kgkratzer::{PotentialSpec, QuantumNumbers};

fn ground() -> QuantumNumbers {
    QuantumNumbers::new(0, 0, 0)
}

#[test]
fn kratzer_relativistic_ground() {
    let spec = PotentialSpec::kratzer(0.1, 1.0, 0.0, 1.0, 3).unwrap();
    let closed = solve_radial_relativistic(&spec, 0, 0.0).unwrap()[0].value;
    let fd = fd_radial_auto(&spec, Separation::Fixed { j: 0.0 }, RadialMode::Relativistic, 0, &OracleOptions::default()).unwrap();
    assert!((fd.level.value - 0.9855).abs() < 1e-4);
    assert!((fd.level.value - closed).abs() < 1e-4);
    assert_eq!(fd.fine_roots.len(), 1);
}

#[test]
fn kratzer_nonrelativistic_ground() {
    let spec = PotentialSpec::kratzer(0.1, 1.0, 0.0, 1.0, 3).unwrap();
    let fd = fd_radial_auto(&spec, Separation::Fixed { j: 0.0 }, RadialMode::Nonrelativistic, 0, &OracleOptions::default()).unwrap();
    assert!((fd.level.value + 0.014590).abs() < 1e-5, "{}", fd.level.value);
    assert!((fd.level.value - nonrel_energy(&spec, ground()).unwrap().value).abs() < 1e-5);
}

#[test]
fn ring_coupled_ground() {
    let spec = PotentialSpec::kratzer(0.1, 1.0, 0.05, 1.0, 3).unwrap();
    let roots = solve_noncentral_relativistic(&spec, ground()).unwrap();
    assert_eq!(roots.len(), 1);
    let closed = roots[0].value;
    assert!(closed > 0.0 && closed < 1.0);
    let fd = fd_radial_auto(&spec, Separation::Polar { m: 0, n_tilde: 0 }, RadialMode::Relativistic, 0, &OracleOptions::default()).unwrap();
    assert!(((fd.level.value - closed) / closed).abs() < 1e-3);
}

#[test]
fn polar_matches_angular_j() {
    let grid = GridSpec::angular(4000).unwrap();
    let c = 0.5;
    let fd = fd_angular_eigen(1, c, 4, 1, &grid).unwrap();
    // c_ring = C·α₂² with α₂² = 1
    let j = angular_j(1, 1, c, 1.0, 4).unwrap().j;
    let lambda = j * (j + 2.0);
    assert!(((fd.lambda - lambda) / lambda).abs() < 1e-3);
    assert!((fd.j - j).abs() < 1e-3 * j);
}

#[test]
fn coulomb_convergence_order() {
    let spec = PotentialSpec::coulomb(1.0, 1.0, 3).unwrap();
    let opts = OracleOptions::default();
    // coarse grid of each pair; errors of the unextrapolated coarse values
    let pts: Vec<(f64, f64)> = [500usize, 1000, 2000]
        .iter()
        .map(|&n| {
            let grid = GridSpec::radial(1e-8, 50.0, n).unwrap();
            let lvl = fd_radial_eigen(&spec, Separation::Fixed { j: 0.0 }, RadialMode::Relativistic, 0, &grid, &opts).unwrap();
            (grid.spacing().ln(), (lvl.coarse - 0.6).abs().ln())
        })
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    assert!((slope - 2.0).abs() <= 0.3, "order {slope}");
}

#[test]
fn coulomb_ground_profile_matches_closed_form() {
    let spec = PotentialSpec::coulomb(1.0, 1.0, 3).unwrap();
    let energy = 0.6;
    let grid = GridSpec::radial(1e-8, 50.0, 8000).unwrap();
    let profile = fd_radial_profile(&spec, Separation::Fixed { j: 0.0 }, RadialMode::Relativistic, 0, &grid, energy);
    let state = RadialState::relativistic(&spec, 0, 0.0, kgkratzer::EnergyLevel::closed_form(energy, kgkratzer::EnergyKind::Relativistic)).unwrap();
    assert!((state.epsilon - 0.8).abs() < 1e-15);

    // g = r^((D−1)/2)·R, linear interpolation between nodes at r = 1
    let i = profile.iter().position(|&(r, _)| r >= 1.0).unwrap();
    let ((r0, g0), (r1, g1)) = (profile[i - 1], profile[i]);
    let g = g0 + (g1 - g0) * (1.0 - r0) / (r1 - r0);
    let sign = if profile[i].1 * state.radial(r1).unwrap() < 0.0 { -1.0 } else { 1.0 };
    let fd_radial = sign * g;
    assert!((fd_radial - state.radial(1.0).unwrap()).abs() < 1e-4, "{fd_radial} vs {}", state.radial(1.0).unwrap());
}

#[test]
fn excited_levels_agree_across_dimensions() {
    let opts = OracleOptions::default();
    for d in [2u32, 3, 4] {
        let spec = PotentialSpec::kratzer(0.2, 1.0, 0.0, 1.0, d).unwrap();
        for n in 0..=2 {
            let nt = 1;
            let closed = solve_noncentral_relativistic(&spec, QuantumNumbers::new(n, nt, 0)).unwrap()[0].value;
            let fd = fd_radial_auto(&spec, Separation::Polar { m: 0, n_tilde: nt }, RadialMode::Relativistic, n, &opts).unwrap();
            assert!((fd.level.value - closed).abs() < 1e-4, "D={d} n={n}: {} vs {closed}", fd.level.value);
        }
    }
}
