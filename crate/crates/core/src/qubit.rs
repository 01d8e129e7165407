//! Fluxonium eigensolver in the harmonic-oscillator basis of its LC part.

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::circuit::FosterForm;
use crate::error::{Error, Result};
use crate::linalg;

pub const DEFAULT_BASIS_SIZE: usize = 150;
pub const DEFAULT_KEPT_LEVELS: usize = 12;

/// Relative eigenvalue shift tolerated when the basis grows by 20%.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-8;

/// `H = 4E_C n̂² + ½E_L φ̂² − E_J cos(φ̂ − φ_ext)` with energies in GHz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluxoniumSpec {
    pub e_j: f64,
    pub e_c: f64,
    pub e_l: f64,
    pub external_flux: f64,
}

impl FluxoniumSpec {
    pub fn new(e_j: f64, e_c: f64, e_l: f64, external_flux: f64) -> Self {
        Self {
            e_j,
            e_c,
            e_l,
            external_flux,
        }
    }

    pub fn from_foster(foster: &FosterForm) -> Self {
        Self {
            e_j: foster.josephson_energy,
            e_c: foster.charging_energy(),
            e_l: foster.inductive_energy(),
            external_flux: foster.external_flux,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("E_C", self.e_c), ("E_L", self.e_l)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(name, format!("must be positive, got {v}")));
            }
        }
        if !(self.e_j.is_finite() && self.e_j >= 0.0) {
            return Err(Error::invalid("E_J", format!("must be non-negative, got {}", self.e_j)));
        }
        if !self.external_flux.is_finite() {
            return Err(Error::invalid("flux", "must be finite"));
        }
        Ok(())
    }

    /// Plasma frequency `√(8E_L E_C)` of the LC part.
    pub fn plasma_frequency(&self) -> f64 {
        (8.0 * self.e_l * self.e_c).sqrt()
    }

    /// Oscillator length `(2E_C/E_L)^{1/4}` of the reduced flux.
    pub fn flux_zero_point(&self) -> f64 {
        (2.0 * self.e_c / self.e_l).powf(0.25)
    }
}

/// Lowest fluxonium levels with operator matrix elements in the eigenbasis.
///
/// The charge operator is purely imaginary in the chosen real gauge, so it is
/// stored as the real antisymmetric matrix `charge` with `n̂ = i · charge`.
#[derive(Debug, Clone)]
pub struct QubitEigensystem {
    pub spec: FluxoniumSpec,
    pub basis_size: usize,
    pub energies: Vec<f64>,
    /// `⟨n|φ̂|m⟩`.
    pub flux: Mat<f64>,
    /// `−i⟨n|n̂|m⟩`.
    pub charge: Mat<f64>,
    /// `⟨n|φ̂²|m⟩`, evaluated in the full oscillator basis.
    pub flux_squared: Mat<f64>,
    /// Parity under `φ̂ → −φ̂`; meaningful at symmetric flux bias.
    pub parity: Vec<i8>,
}

impl QubitEigensystem {
    pub fn kept_levels(&self) -> usize {
        self.energies.len()
    }

    /// `ω_nm = E_n − E_m`.
    pub fn transition(&self, n: usize, m: usize) -> f64 {
        self.energies[n] - self.energies[m]
    }

    /// Restriction to the lowest `levels` states.
    pub fn truncated(&self, levels: usize) -> Result<QubitEigensystem> {
        if levels > self.kept_levels() {
            return Err(Error::SpectrumLength {
                needed: levels,
                got: self.kept_levels(),
            });
        }
        let cut = |m: &Mat<f64>| m.submatrix(0, 0, levels, levels).to_owned();
        Ok(QubitEigensystem {
            spec: self.spec,
            basis_size: self.basis_size,
            energies: self.energies[..levels].to_vec(),
            flux: cut(&self.flux),
            charge: cut(&self.charge),
            flux_squared: cut(&self.flux_squared),
            parity: self.parity[..levels].to_vec(),
        })
    }
}

/// Diagonalizes the fluxonium and verifies basis convergence by repeating the
/// calculation with a 20% larger basis.
pub fn solve_fluxonium(
    spec: &FluxoniumSpec,
    basis_size: usize,
    kept_levels: usize,
) -> Result<QubitEigensystem> {
    if kept_levels == 0 {
        return Err(Error::invalid("kept_levels", "must be at least 1"));
    }
    if basis_size < 4 * kept_levels {
        return Err(Error::invalid(
            "basis_size",
            format!("must be at least 4 × kept_levels = {}", 4 * kept_levels),
        ));
    }
    let result = diagonalize(spec, basis_size, kept_levels)?;
    let larger = basis_size + basis_size.div_ceil(5);
    let check = diagonalize_energies(spec, larger, kept_levels)?;
    let scale = result.energies.iter().fold(0.0_f64, |s, e| s.max(e.abs())).max(f64::MIN_POSITIVE);
    for (level, (a, b)) in result.energies.iter().zip(&check).enumerate() {
        let shift = (a - b).abs() / scale;
        if shift > CONVERGENCE_TOLERANCE {
            log::debug!("fluxonium level {level} not converged at basis size {basis_size}: shift {shift:.3e}");
            return Err(Error::Truncation {
                level,
                shift,
                from: basis_size,
                to: larger,
            });
        }
    }
    Ok(result)
}

/// Diagonalizes without the convergence check.
pub fn diagonalize(spec: &FluxoniumSpec, basis_size: usize, kept_levels: usize) -> Result<QubitEigensystem> {
    spec.validate()?;
    if kept_levels > basis_size {
        return Err(Error::invalid("kept_levels", "exceeds the basis size"));
    }
    let ops = OscillatorOperators::new(spec, basis_size);
    let h = ops.hamiltonian(spec)?;
    let (values, vectors) = linalg::eigh(h.as_ref())?;
    let v = vectors.submatrix(0, 0, basis_size, kept_levels);
    let rotate = |m: &Mat<f64>| v.transpose() * m * v;
    let mut flux = rotate(&ops.flux);
    let mut charge = rotate(&ops.charge);
    let mut flux_squared = rotate(&ops.flux_squared);
    linalg::symmetrize(&mut flux);
    linalg::symmetrize(&mut flux_squared);
    antisymmetrize(&mut charge);
    let parity = (0..kept_levels)
        .map(|n| {
            let p: f64 = (0..basis_size)
                .map(|j| if j % 2 == 0 { v[(j, n)].powi(2) } else { -v[(j, n)].powi(2) })
                .sum();
            if p >= 0.0 {
                1
            } else {
                -1
            }
        })
        .collect();
    Ok(QubitEigensystem {
        spec: *spec,
        basis_size,
        energies: values[..kept_levels].to_vec(),
        flux,
        charge,
        flux_squared,
        parity,
    })
}

fn diagonalize_energies(spec: &FluxoniumSpec, basis_size: usize, kept: usize) -> Result<Vec<f64>> {
    let ops = OscillatorOperators::new(spec, basis_size);
    let values = linalg::eigvalsh(ops.hamiltonian(spec)?.as_ref())?;
    Ok(values[..kept].to_vec())
}

/// Reduced flux and charge in the oscillator basis `|j⟩` of frequency
/// `√(8E_L E_C)`; squares carry their exact (untruncated) matrix elements.
struct OscillatorOperators {
    flux: Mat<f64>,
    charge: Mat<f64>,
    flux_squared: Mat<f64>,
    charge_squared: Mat<f64>,
}

impl OscillatorOperators {
    fn new(spec: &FluxoniumSpec, n: usize) -> Self {
        let x = spec.flux_zero_point();
        let y = 1.0 / (2.0 * x);
        let mut flux = Mat::zeros(n, n);
        let mut charge = Mat::zeros(n, n);
        let mut flux_squared = Mat::zeros(n, n);
        let mut charge_squared = Mat::zeros(n, n);
        for j in 0..n {
            let d = 2.0 * j as f64 + 1.0;
            flux_squared[(j, j)] = x * x * d;
            charge_squared[(j, j)] = y * y * d;
            if j + 1 < n {
                let s = ((j + 1) as f64).sqrt();
                flux[(j, j + 1)] = x * s;
                flux[(j + 1, j)] = x * s;
                // n̂ = i y (b† − b)
                charge[(j + 1, j)] = y * s;
                charge[(j, j + 1)] = -y * s;
            }
            if j + 2 < n {
                let s = (((j + 1) * (j + 2)) as f64).sqrt();
                flux_squared[(j, j + 2)] = x * x * s;
                flux_squared[(j + 2, j)] = x * x * s;
                charge_squared[(j, j + 2)] = -y * y * s;
                charge_squared[(j + 2, j)] = -y * y * s;
            }
        }
        Self {
            flux,
            charge,
            flux_squared,
            charge_squared,
        }
    }

    fn hamiltonian(&self, spec: &FluxoniumSpec) -> Result<Mat<f64>> {
        let n = self.flux.nrows();
        let cos = if spec.e_j != 0.0 {
            linalg::spectral_map(self.flux.as_ref(), |w| (w - spec.external_flux).cos())?
        } else {
            Mat::zeros(n, n)
        };
        let mut h = Mat::from_fn(n, n, |i, j| {
            4.0 * spec.e_c * self.charge_squared[(i, j)] + 0.5 * spec.e_l * self.flux_squared[(i, j)]
                - spec.e_j * cos[(i, j)]
        });
        linalg::symmetrize(&mut h);
        Ok(h)
    }
}

fn antisymmetrize(m: &mut Mat<f64>) {
    let n = m.nrows();
    for i in 0..n {
        m[(i, i)] = 0.0;
        for j in (i + 1)..n {
            let a = 0.5 * (m[(i, j)] - m[(j, i)]);
            m[(i, j)] = a;
            m[(j, i)] = -a;
        }
    }
}

/// Largest deviation from `n̂_nm = i (ω_nm / 8E_C) φ̂_nm`, relative to `max|n̂|`.
pub fn charge_from_flux_check(eigsys: &QubitEigensystem, spec: &FluxoniumSpec) -> f64 {
    let n = eigsys.kept_levels();
    let mut worst = 0.0_f64;
    let mut scale = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let predicted = eigsys.transition(i, j) / (8.0 * spec.e_c) * eigsys.flux[(i, j)];
            worst = worst.max((eigsys.charge[(i, j)] - predicted).abs());
            scale = scale.max(eigsys.charge[(i, j)].abs());
        }
    }
    if scale == 0.0 {
        worst
    } else {
        worst / scale
    }
}

/// Paramagnetic coupling operators of one mode with the zero-point estimates
/// `φ^zp = √(ħZ_k)`, `Q^zp = √(ħ/Z_k)` (no canonical `1/√2`).
#[derive(Debug, Clone)]
pub struct CouplingOperators {
    pub mode: usize,
    /// `G^φ_k = φ̂ φ^zp / ħL_k` in GHz.
    pub flux: Mat<f64>,
    /// `G^Q_k = −i · Q̂ Q^zp / ħC_Σ` in GHz (real antisymmetric).
    pub charge: Mat<f64>,
    /// `φ^zp` in units of `φ₀/2π`.
    pub zero_point_flux: f64,
    /// `Q^zp` in units of `2e`.
    pub zero_point_charge: f64,
}

pub fn coupling_operators(eigsys: &QubitEigensystem, foster: &FosterForm, k: usize) -> Result<CouplingOperators> {
    let mode = foster.modes.get(k).ok_or_else(|| {
        Error::invalid("mode", format!("index {k} out of range for {} modes", foster.mode_count()))
    })?;
    let (e_ck, e_lk) = (mode.charging_energy(), mode.inductive_energy());
    let x = (2.0 * e_ck / e_lk).powf(0.25);
    let y = 1.0 / (2.0 * x);
    let zero_point_flux = std::f64::consts::SQRT_2 * x;
    let zero_point_charge = std::f64::consts::SQRT_2 * y;
    let e_c = eigsys.spec.e_c;
    let n = eigsys.kept_levels();
    Ok(CouplingOperators {
        mode: k,
        flux: Mat::from_fn(n, n, |i, j| e_lk * zero_point_flux * eigsys.flux[(i, j)]),
        charge: Mat::from_fn(n, n, |i, j| 8.0 * e_c * zero_point_charge * eigsys.charge[(i, j)]),
        zero_point_flux,
        zero_point_charge,
    })
}
