//! Brute-force oracle for the three-qubit maximal product overlap, sharing
//! no code with the library solver.
//!
//! For a fixed spinor on qubit A the best product on B and C is the top
//! singular pair of the contracted 2×2 matrix, so
//! `g² = max over (θ, φ) of σ_max(M(θ, φ))²`. The sphere is scanned on a
//! 2° grid and every grid-local maximum is refined by compass search.

#![allow(dead_code)]

use geoent::{Complex64, PureState};

fn top_singular_sq(psi: &[Complex64], theta: f64, phi: f64) -> f64 {
    let q0 = Complex64::new((theta / 2.0).cos(), 0.0);
    let q1 = Complex64::from_polar((theta / 2.0).sin(), phi);
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (j, row) in m.iter_mut().enumerate() {
        for (k, entry) in row.iter_mut().enumerate() {
            *entry = q0.conj() * psi[2 * j + k] + q1.conj() * psi[4 + 2 * j + k];
        }
    }
    let fro: f64 = m.iter().flatten().map(|z| z.norm_sqr()).sum();
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).norm_sqr();
    0.5 * (fro + (fro * fro - 4.0 * det).max(0.0).sqrt())
}

fn compass(psi: &[Complex64], mut theta: f64, mut phi: f64) -> f64 {
    let mut best = top_singular_sq(psi, theta, phi);
    let mut step = 2f64.to_radians();
    while step > 1e-11 {
        let mut moved = false;
        for (dt, dp) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let value = top_singular_sq(psi, theta + dt, phi + dp);
            if value > best {
                best = value;
                theta += dt;
                phi += dp;
                moved = true;
                break;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    best
}

pub fn brute_force_g2(s: &PureState) -> f64 {
    assert_eq!(s.n_qubits(), 3);
    let psi = s.amplitudes();
    let (nt, np) = (91usize, 180usize);
    let grid: Vec<Vec<f64>> = (0..nt)
        .map(|i| {
            (0..np)
                .map(|j| {
                    top_singular_sq(
                        psi,
                        (2.0 * i as f64).to_radians(),
                        (2.0 * j as f64).to_radians(),
                    )
                })
                .collect()
        })
        .collect();

    let mut best = 0.0f64;
    for i in 0..nt {
        for j in 0..np {
            let v = grid[i][j];
            let neighbours = [
                (i.wrapping_sub(1), j),
                (i + 1, j),
                (i, (j + 1) % np),
                (i, (j + np - 1) % np),
            ];
            let is_peak = neighbours
                .iter()
                .filter(|(a, _)| *a < nt)
                .all(|&(a, b)| grid[a][b] <= v);
            if is_peak {
                best = best.max(compass(
                    psi,
                    (2.0 * i as f64).to_radians(),
                    (2.0 * j as f64).to_radians(),
                ));
            }
        }
    }
    best
}
