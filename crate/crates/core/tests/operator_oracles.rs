#![allow(clippy::needless_range_loop, clippy::type_complexity)]

//! Checks the Fock-basis operator actions against dense matrix exponentials
//! of their generators on invariant subspaces.

use num_complex::Complex64;
use proptest::prelude::*;
use qscissors_core::optics::{apply_beam_splitter, apply_two_mode_squeezer, beam_splitter_ket};
use qscissors_core::{BeamSplitterParams, SqueezerParams, TwoModePureState};

type Matrix = Vec<Vec<Complex64>>;

fn zeros(n: usize) -> Matrix {
    vec![vec![Complex64::default(); n]; n]
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == Complex64::default() {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

/// exp(m) by scaling and squaring with a Taylor core.
fn expm(m: &Matrix) -> Matrix {
    let n = m.len();
    let norm: f64 = m
        .iter()
        .map(|row| row.iter().map(|x| x.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let a: Matrix = m.iter().map(|row| row.iter().map(|x| x * scale).collect()).collect();
    let mut result = zeros(n);
    for (i, row) in result.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    let mut term = result.clone();
    for k in 1..=24 {
        term = matmul(&term, &a);
        for row in term.iter_mut() {
            for x in row.iter_mut() {
                *x /= k as f64;
            }
        }
        for i in 0..n {
            for j in 0..n {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    result
}

/// Generator i theta (b^dag c + b c^dag) on the block of total photon number
/// `total`, basis index = photons in b.
fn beam_splitter_block(total: usize, theta: f64) -> Matrix {
    let mut g = zeros(total + 1);
    let coupling = Complex64::new(0.0, theta);
    for j in 0..=total {
        let c_count = total - j;
        if c_count > 0 {
            g[j + 1][j] += coupling * (((j + 1) * c_count) as f64).sqrt();
        }
        if j > 0 {
            g[j - 1][j] += coupling * ((j * (c_count + 1)) as f64).sqrt();
        }
    }
    g
}

#[test]
fn beam_splitter_blocks_match_matrix_exponential() {
    for theta in [0.1, 0.7, std::f64::consts::FRAC_PI_4, 1.3, 2.9] {
        let bs = BeamSplitterParams::new(theta).unwrap();
        for total in 0..=8 {
            let u = expm(&beam_splitter_block(total, theta));
            for j in 0..=total {
                let mut col = vec![Complex64::default(); total + 1];
                for (p, q, amp) in beam_splitter_ket(j, total - j, &bs) {
                    assert_eq!(p + q, total);
                    col[p] = amp;
                }
                for p in 0..=total {
                    assert!(
                        (col[p] - u[p][j]).norm() < 1e-12,
                        "theta={theta} total={total} j={j} p={p}: {} vs {}",
                        col[p],
                        u[p][j]
                    );
                }
            }
        }
    }
}

#[test]
fn hong_ou_mandel_block() {
    let u = expm(&beam_splitter_block(2, std::f64::consts::FRAC_PI_4));
    // |1,1> is index 1.
    assert!(u[1][1].norm() < 1e-14);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((u[0][1] - Complex64::new(0.0, h)).norm() < 1e-14);
    assert!((u[2][1] - Complex64::new(0.0, h)).norm() < 1e-14);
}

/// Generator xi* a b - xi a^dag b^dag on the chain |j + da, j + db>,
/// j = 0..len. One of `da`, `db` must be zero so the chain is closed under `a b`.
fn squeezer_chain(da: usize, db: usize, len: usize, s: f64, phi: f64) -> Matrix {
    let xi = Complex64::from_polar(s, phi);
    let mut k = zeros(len);
    for j in 0..len {
        let (m, n) = (j + da, j + db);
        if j > 0 {
            k[j - 1][j] += xi.conj() * ((m * n) as f64).sqrt();
        }
        if j + 1 < len {
            k[j + 1][j] -= xi * (((m + 1) * (n + 1)) as f64).sqrt();
        }
    }
    k
}

#[test]
fn squeezer_matches_matrix_exponential() {
    let len = 110;
    for &(s, phi) in &[(0.2, 0.0), (0.45, 1.0), (0.6, -2.2)] {
        let sq = SqueezerParams::new(s, phi).unwrap();
        for &(da, db) in &[(0usize, 0usize), (1, 0), (0, 2), (2, 0)] {
            let u = expm(&squeezer_chain(da, db, len, s, phi));
            for j0 in 0..3 {
                let input = TwoModePureState::fock(j0 + da, j0 + db);
                let out = apply_two_mode_squeezer(&input, &sq, 60);
                for i in 0..25 {
                    let got = out.amplitude(i + da, i + db);
                    assert!(
                        (got - u[i][j0]).norm() < 1e-10,
                        "s={s} ({da},{db}) j0={j0} i={i}: {got} vs {}",
                        u[i][j0]
                    );
                }
            }
        }
    }
}

fn basis_state(kets: &[((usize, usize), (f64, f64))]) -> TwoModePureState {
    let norm: f64 = kets.iter().map(|(_, (re, im))| re * re + im * im).sum::<f64>().sqrt();
    TwoModePureState::from_amplitudes(
        kets.iter()
            .map(|&(k, (re, im))| (k, Complex64::new(re / norm, im / norm))),
    )
}

proptest! {
    #[test]
    fn beam_splitter_is_unitary_and_conserves_photons(
        theta in -3.2f64..3.2,
        kets in prop::collection::vec(((0usize..7, 0usize..7), (-1.0f64..1.0, -1.0f64..1.0)), 1..6),
    ) {
        prop_assume!(kets.iter().any(|(_, (re, im))| re.abs() + im.abs() > 1e-3));
        let state = basis_state(&kets);
        let bs = BeamSplitterParams::new(theta).unwrap();
        let out = apply_beam_splitter(&state, &bs);
        prop_assert!((out.norm_sqr() - state.norm_sqr()).abs() < 1e-12);
        for &((m, n), _) in &kets {
            for (p, q, _) in beam_splitter_ket(m, n, &bs) {
                prop_assert_eq!(p + q, m + n);
            }
        }
    }

    #[test]
    fn beam_splitter_inverts(theta in -3.2f64..3.2, m in 0usize..6, n in 0usize..6) {
        let fwd = apply_beam_splitter(&TwoModePureState::fock(m, n), &BeamSplitterParams::new(theta).unwrap());
        let back = apply_beam_splitter(&fwd, &BeamSplitterParams::new(-theta).unwrap());
        prop_assert!((back.amplitude(m, n) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        prop_assert!((back.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn squeezed_vacuum_matches_tmsv(s in 0.0f64..1.5, phi in -3.2f64..3.2) {
        let sq = SqueezerParams::new(s, phi).unwrap();
        let out = apply_two_mode_squeezer(&TwoModePureState::vacuum(), &sq, 40);
        for k in 0..=40 {
            let want = qscissors_core::optics::tmsv_amplitude(k, &sq);
            prop_assert!((out.amplitude(k, k) - want).norm() < 1e-12);
        }
    }
}
