//! Exact Fock-basis actions of the two-mode squeezer and the beam splitter.
//!
//! Conventions:
//! - squeezer `S(xi) = exp(xi* a b - xi a^dag b^dag)`, `xi = s e^{i phi}`;
//! - beam splitter `exp(i theta (b^dag c + b c^dag))`, so that
//!   `b^dag -> T b^dag + R c^dag`, `c^dag -> R b^dag + T c^dag` with
//!   `T = cos theta`, `R = i sin theta`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{domain, Result};

/// Amplitudes with magnitude below this are not stored.
pub const AMPLITUDE_FLOOR: f64 = 1e-16;

/// Norm deficit above which a truncated result is flagged.
pub const NORM_WARNING: f64 = 1e-10;

/// Nondegenerate parametric amplifier settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezerParams {
    s: f64,
    phi: f64,
}

impl SqueezerParams {
    pub fn new(s: f64, phi: f64) -> Result<Self> {
        if !s.is_finite() || s < 0.0 {
            return Err(domain(format!("amplifier strength s must be finite and >= 0, got {s}")));
        }
        if !phi.is_finite() {
            return Err(domain(format!("pump phase must be finite, got {phi}")));
        }
        Ok(Self { s, phi })
    }

    pub fn strength(&self) -> f64 {
        self.s
    }

    pub fn phase(&self) -> f64 {
        self.phi
    }

    /// `Gamma = e^{i phi} tanh s`.
    fn gamma(&self) -> Complex64 {
        Complex64::from_polar(self.s.tanh(), self.phi)
    }
}

/// Lossless beam splitter parametrized by its mixing angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitterParams {
    theta: f64,
}

impl BeamSplitterParams {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(domain(format!("beam splitter angle must be finite, got {theta}")));
        }
        Ok(Self { theta })
    }

    /// The balanced (50:50) splitter, `theta = pi/4`.
    pub fn balanced() -> Self {
        Self {
            theta: std::f64::consts::FRAC_PI_4,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `T = cos theta`.
    pub fn transmittance(&self) -> Complex64 {
        Complex64::new(self.theta.cos(), 0.0)
    }

    /// `R = i sin theta`.
    pub fn reflectance(&self) -> Complex64 {
        Complex64::new(0.0, self.theta.sin())
    }

    /// `|T|^2`.
    pub fn transmissivity(&self) -> f64 {
        self.theta.cos().powi(2)
    }

    /// `|R|^2`.
    pub fn reflectivity(&self) -> f64 {
        self.theta.sin().powi(2)
    }
}

/// `A_n(s, phi) = sech s (-e^{i phi} tanh s)^n`, the amplitude of `|n, n>`
/// in the two-mode squeezed vacuum.
pub fn tmsv_amplitude(n: usize, sq: &SqueezerParams) -> Complex64 {
    let sech = 1.0 / sq.s.cosh();
    let base = -sq.gamma();
    base.powu(n as u32) * sech
}

/// Sparse pure state of two bosonic modes.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModePureState {
    amps: BTreeMap<(usize, usize), Complex64>,
    cutoff: usize,
    cutoff_warning: bool,
}

impl TwoModePureState {
    /// Product Fock state `|m, n>`.
    pub fn fock(m: usize, n: usize) -> Self {
        let mut amps = BTreeMap::new();
        amps.insert((m, n), Complex64::new(1.0, 0.0));
        Self {
            amps,
            cutoff: m.max(n),
            cutoff_warning: false,
        }
    }

    pub fn vacuum() -> Self {
        Self::fock(0, 0)
    }

    /// Builds a state from explicit amplitudes. Entries below
    /// [`AMPLITUDE_FLOOR`] are dropped.
    pub fn from_amplitudes(amps: impl IntoIterator<Item = ((usize, usize), Complex64)>) -> Self {
        let mut out = BTreeMap::new();
        for (k, a) in amps {
            accumulate(&mut out, k, a);
        }
        prune(&mut out);
        let cutoff = out.keys().map(|&(m, n)| m.max(n)).max().unwrap_or(0);
        Self {
            amps: out,
            cutoff,
            cutoff_warning: false,
        }
    }

    pub fn amplitude(&self, m: usize, n: usize) -> Complex64 {
        self.amps.get(&(m, n)).copied().unwrap_or_default()
    }

    pub fn amplitudes(&self) -> &BTreeMap<(usize, usize), Complex64> {
        &self.amps
    }

    /// Largest photon number either mode may hold.
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Set when truncation at the cutoff lost more than [`NORM_WARNING`]
    /// of the norm.
    pub fn cutoff_warning(&self) -> bool {
        self.cutoff_warning
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum()
    }
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Complex64>, key: K, amp: Complex64) {
    *map.entry(key).or_default() += amp;
}

fn prune<K: Ord>(map: &mut BTreeMap<K, Complex64>) {
    map.retain(|_, a| a.norm() >= AMPLITUDE_FLOOR);
}

/// `sqrt(n! / (n-j)!)`, the factor picked up by `j` lowerings of `|n>`.
fn falling_sqrt(n: usize, j: usize) -> f64 {
    ((n - j + 1)..=n).map(|x| (x as f64).sqrt()).product()
}

/// Applies the two-mode squeezer to modes `(a, b)`, keeping photon numbers
/// up to `cutoff` in each mode.
///
/// Uses the normal-ordered factorization
/// `S = exp(-G a^dag b^dag) (cosh s)^{-(a^dag a + b^dag b + 1)} exp(G* a b)`
/// with `G = e^{i phi} tanh s`, applied term by term. Vacuum input gives
/// `sum_k A_k |k, k>` exactly up to the cutoff.
pub fn apply_two_mode_squeezer(state: &TwoModePureState, sq: &SqueezerParams, cutoff: usize) -> TwoModePureState {
    let gamma = sq.gamma();
    let lower = gamma.conj();
    let raise = -gamma;
    let inv_cosh = 1.0 / sq.s.cosh();

    let mut out = BTreeMap::new();
    for (&(m, n), &amp) in &state.amps {
        // exp(G* a b)
        let mut lower_pow = Complex64::new(1.0, 0.0);
        let mut lower_fact = 1.0;
        for j in 0..=m.min(n) {
            if j > 0 {
                lower_pow *= lower;
                lower_fact *= j as f64;
            }
            let (m1, n1) = (m - j, n - j);
            let c1 = amp * lower_pow / lower_fact * falling_sqrt(m, j) * falling_sqrt(n, j);
            if c1.norm() < AMPLITUDE_FLOOR * 1e-4 {
                continue;
            }
            // (cosh s)^{-(m1 + n1 + 1)}
            let c2 = c1 * inv_cosh.powi((m1 + n1 + 1) as i32);
            // exp(-G a^dag b^dag)
            let mut raise_pow = Complex64::new(1.0, 0.0);
            let mut raise_fact = 1.0;
            let mut i = 0usize;
            while m1 + i <= cutoff && n1 + i <= cutoff {
                if i > 0 {
                    raise_pow *= raise;
                    raise_fact *= i as f64;
                }
                let c3 = c2 * raise_pow / raise_fact * falling_sqrt(m1 + i, i) * falling_sqrt(n1 + i, i);
                accumulate(&mut out, (m1 + i, n1 + i), c3);
                if sq.s == 0.0 {
                    break;
                }
                i += 1;
            }
        }
    }
    prune(&mut out);
    let result = TwoModePureState {
        amps: out,
        cutoff,
        cutoff_warning: false,
    };
    let deficit = state.norm_sqr() - result.norm_sqr();
    TwoModePureState {
        cutoff_warning: state.cutoff_warning || deficit > NORM_WARNING,
        ..result
    }
}

/// Beam-splitter image of the product ket `|m, n>` as `(m', n', amplitude)`
/// triples with `m' + n' = m + n`.
///
/// Expands `(T b^dag + R c^dag)^m (R b^dag + T c^dag)^n / sqrt(m! n!)`
/// binomially.
pub fn beam_splitter_ket(m: usize, n: usize, bs: &BeamSplitterParams) -> Vec<(usize, usize, Complex64)> {
    let t = bs.transmittance();
    let r = bs.reflectance();
    let total = m + n;
    let mut block = vec![Complex64::default(); total + 1];

    let binom_m = binomial_row(m);
    let binom_n = binomial_row(n);
    let t_pow = powers(t, m.max(n));
    let r_pow = powers(r, m.max(n));
    for i in 0..=m {
        // i photons of the first factor stay in mode b
        let ci = t_pow[i] * r_pow[m - i] * binom_m[i];
        for j in 0..=n {
            // j photons of the second factor go to mode b
            block[i + j] += ci * r_pow[j] * t_pow[n - j] * binom_n[j];
        }
    }
    // (b^dag)^p (c^dag)^q |0> = sqrt(p! q!) |p, q>
    let log_fact = log_factorials(total);
    let norm = log_fact[m] + log_fact[n];
    block
        .into_iter()
        .enumerate()
        .map(|(p, c)| {
            let q = total - p;
            let scale = (0.5 * (log_fact[p] + log_fact[q] - norm)).exp();
            (p, q, c * scale)
        })
        .filter(|(_, _, c)| c.norm() >= AMPLITUDE_FLOOR)
        .collect()
}

/// Applies the beam splitter to the two modes of `state`. Photon number is
/// conserved, so no truncation happens.
pub fn apply_beam_splitter(state: &TwoModePureState, bs: &BeamSplitterParams) -> TwoModePureState {
    let mut out = BTreeMap::new();
    for (&(m, n), &amp) in &state.amps {
        for (p, q, c) in beam_splitter_ket(m, n, bs) {
            accumulate(&mut out, (p, q), amp * c);
        }
    }
    prune(&mut out);
    let cutoff = out.keys().map(|&(m, n)| m.max(n)).max().unwrap_or(0).max(state.cutoff);
    TwoModePureState {
        amps: out,
        cutoff,
        cutoff_warning: state.cutoff_warning,
    }
}

pub(crate) fn binomial_row(n: usize) -> Vec<f64> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = 1.0f64;
    for k in 0..=n {
        row.push(c);
        c = c * (n - k) as f64 / (k + 1) as f64;
    }
    row
}

fn powers(x: Complex64, n: usize) -> Vec<Complex64> {
    std::iter::successors(Some(Complex64::new(1.0, 0.0)), |p| Some(p * x))
        .take(n + 1)
        .collect()
}

/// `[ln 0!, ln 1!, ..., ln n!]`.
fn log_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(acc);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}
