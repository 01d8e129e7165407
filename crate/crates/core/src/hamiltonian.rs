//! Gauge-parameterized Hamiltonians on the qubit ⊗ Fock product space.
//!
//! With `n̂ = iN` and `n̂_k = iK_k` for real antisymmetric `N`, `K_k`, every
//! operator assembled here is real symmetric, so matrices are stored as `f64`.

use faer::Mat;

use crate::basis::{ProductBasis, TruncationSettings};
use crate::circuit::{FosterForm, FosterMode};
use crate::error::{Error, Result};
use crate::linalg;
use crate::qubit::QubitEigensystem;

/// Real symmetric operator with its product-basis labels.
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    pub matrix: Mat<f64>,
    pub basis: ProductBasis,
}

impl HermitianOperator {
    /// Wraps `matrix`, symmetrizing it.
    pub fn new(mut matrix: Mat<f64>, basis: ProductBasis) -> Result<Self> {
        if matrix.nrows() != basis.dim() || matrix.ncols() != basis.dim() {
            return Err(Error::BasisMismatch);
        }
        linalg::symmetrize(&mut matrix);
        Ok(Self { matrix, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        linalg::eigvalsh(self.matrix.as_ref())
    }

    pub fn eigh(&self) -> Result<(Vec<f64>, Mat<f64>)> {
        linalg::eigh(self.matrix.as_ref())
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix[(i, i)]).collect()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.matrix.norm_l2()
    }

    /// Largest off-diagonal magnitude.
    pub fn off_diagonal_weight(&self) -> f64 {
        let n = self.dim();
        let mut w = 0.0_f64;
        for j in 0..n {
            for i in 0..n {
                if i != j {
                    w = w.max(self.matrix[(i, j)].abs());
                }
            }
        }
        w
    }

    pub fn add(&self, other: &HermitianOperator) -> Result<HermitianOperator> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        Ok(HermitianOperator {
            matrix: &self.matrix + &other.matrix,
            basis: self.basis.clone(),
        })
    }

    pub fn scaled(&self, factor: f64) -> HermitianOperator {
        HermitianOperator {
            matrix: Mat::from_fn(self.dim(), self.dim(), |i, j| factor * self.matrix[(i, j)]),
            basis: self.basis.clone(),
        }
    }
}

/// `R = exp[(η′−η) φ̂ ⊗ Σ_k K_k]`, mapping `H(η)` onto `H(η′)` via `RᵀH(η)R`.
#[derive(Debug, Clone)]
pub struct GaugeUnitary {
    pub matrix: Mat<f64>,
    pub eta: f64,
    pub eta_prime: f64,
}

impl GaugeUnitary {
    /// Largest entry of `RᵀR − 1`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.matrix.nrows();
        let g = self.matrix.transpose() * &self.matrix;
        let mut worst = 0.0_f64;
        for j in 0..n {
            for i in 0..n {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - want).abs());
            }
        }
        worst
    }

    /// `RᵀHR`.
    pub fn conjugate(&self, h: &HermitianOperator) -> Result<HermitianOperator> {
        if h.dim() != self.matrix.nrows() {
            return Err(Error::BasisMismatch);
        }
        HermitianOperator::new(self.matrix.transpose() * &h.matrix * &self.matrix, h.basis.clone())
    }
}

/// Oscillator data of one environment mode in reduced units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeParameters {
    /// `ω_k = √(8E_{L,k}E_{C,k})`.
    pub frequency: f64,
    pub charging_energy: f64,
    pub inductive_energy: f64,
    /// `x_k = (2E_{C,k}/E_{L,k})^{1/4}`: `φ̂_k = x_k(a + a†)`.
    pub flux_zero_point: f64,
    /// `y_k = 1/2x_k`: `n̂_k = i y_k(a† − a)`.
    pub charge_zero_point: f64,
}

impl ModeParameters {
    pub fn from_energies(charging_energy: f64, inductive_energy: f64) -> Self {
        let x = (2.0 * charging_energy / inductive_energy).powf(0.25);
        Self {
            frequency: (8.0 * charging_energy * inductive_energy).sqrt(),
            charging_energy,
            inductive_energy,
            flux_zero_point: x,
            charge_zero_point: 0.5 / x,
        }
    }

    pub fn from_foster(mode: &FosterMode) -> Self {
        Self::from_energies(mode.charging_energy(), mode.inductive_energy())
    }
}

/// Coefficients of the Rabi couplings `g^φ_k σ^x(a+a†)` and `g^Q_k σ^y(a−a†)`.
/// Both carry the sign of the interaction; `g^Q_k` is purely imaginary and is
/// stored through its imaginary part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RabiCoupling {
    pub flux: f64,
    pub charge_imag: f64,
}

/// Coefficients of the operator products in `V(η)`:
/// `Σ_k flux_flux[k] φ̂ ⊗ (a_k + a_k†) + Σ_k charge_charge[k] N ⊗ (a_k† − a_k)
///  + flux_squared φ̂² + mode_charge_squared (Σ_k K_k)²`.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionCoefficients {
    pub flux_flux: Vec<f64>,
    pub charge_charge: Vec<f64>,
    pub flux_squared: f64,
    pub mode_charge_squared: f64,
}

/// Qubit, environment modes and truncation, ready for Hamiltonian assembly.
#[derive(Debug, Clone)]
pub struct GaugeSystem {
    qubit: QubitEigensystem,
    modes: Vec<ModeParameters>,
    basis: ProductBasis,
}

impl GaugeSystem {
    pub fn new(eigsys: &QubitEigensystem, foster: &FosterForm, trunc: &TruncationSettings) -> Result<Self> {
        let e_c = foster.charging_energy();
        if (e_c - eigsys.spec.e_c).abs() > 1e-9 * e_c {
            return Err(Error::invalid(
                "E_C",
                format!("qubit solved with E_C = {} but the circuit gives {e_c}", eigsys.spec.e_c),
            ));
        }
        let modes = foster.modes.iter().map(ModeParameters::from_foster).collect();
        Self::from_modes(eigsys, modes, trunc)
    }

    pub fn from_modes(eigsys: &QubitEigensystem, modes: Vec<ModeParameters>, trunc: &TruncationSettings) -> Result<Self> {
        trunc.validate()?;
        if trunc.photon_cutoffs.len() != modes.len() {
            return Err(Error::invalid(
                "photon_cutoffs",
                format!("{} cutoffs for {} modes", trunc.photon_cutoffs.len(), modes.len()),
            ));
        }
        for m in &modes {
            if !(m.frequency.is_finite() && m.frequency > 0.0) {
                return Err(Error::invalid("mode", "frequency must be positive and finite"));
            }
        }
        let qubit = eigsys.truncated(trunc.qubit_levels)?;
        Ok(Self {
            qubit,
            modes,
            basis: ProductBasis::from_truncation(trunc),
        })
    }

    pub fn basis(&self) -> &ProductBasis {
        &self.basis
    }

    pub fn qubit(&self) -> &QubitEigensystem {
        &self.qubit
    }

    pub fn modes(&self) -> &[ModeParameters] {
        &self.modes
    }

    pub fn qubit_charging_energy(&self) -> f64 {
        self.qubit.spec.e_c
    }

    /// Same system with different truncation.
    pub fn retruncated(&self, eigsys: &QubitEigensystem, trunc: &TruncationSettings) -> Result<Self> {
        Self::from_modes(eigsys, self.modes.clone(), trunc)
    }

    /// Diagonal of `H_q + H_r`: `E_q + Σ_k n_k ω_k`.
    pub fn bare_energies(&self) -> Vec<f64> {
        self.basis
            .labels()
            .iter()
            .map(|l| {
                self.qubit.energies[l.qubit]
                    + l.photons.iter().zip(&self.modes).map(|(&n, m)| n as f64 * m.frequency).sum::<f64>()
            })
            .collect()
    }

    /// `H_q + H_r`.
    pub fn bare(&self) -> HermitianOperator {
        let e = self.bare_energies();
        let n = e.len();
        HermitianOperator {
            matrix: Mat::from_fn(n, n, |i, j| if i == j { e[i] } else { 0.0 }),
            basis: self.basis.clone(),
        }
    }

    /// Operator coefficients of `V(η)`.
    pub fn coefficients(&self, eta: f64) -> InteractionCoefficients {
        let e_c = self.qubit_charging_energy();
        let e_l_sum: f64 = self.modes.iter().map(|m| m.inductive_energy).sum();
        InteractionCoefficients {
            flux_flux: self
                .modes
                .iter()
                .map(|m| -(1.0 - eta) * m.inductive_energy * m.flux_zero_point)
                .collect(),
            charge_charge: self
                .modes
                .iter()
                .map(|m| eta * 8.0 * e_c * m.charge_zero_point)
                .collect(),
            flux_squared: (1.0 - eta).powi(2) * e_l_sum / 2.0,
            mode_charge_squared: -eta * eta * 4.0 * e_c,
        }
    }

    /// `V(η)`; the diamagnetic terms `(1−η)² Σ_k φ̂²/2L_k` and
    /// `η² (Σ_k Q̂_k)²/2C_Σ` are included when `diamagnetic` is set.
    pub fn interaction(&self, eta: f64, diamagnetic: bool) -> Result<HermitianOperator> {
        check_eta(eta)?;
        let coeff = self.coefficients(eta);
        let fock = FockOperators::new(&self.modes, self.basis.cutoffs());
        let dm = fock.dim;
        let mut flux_part = Mat::zeros(dm, dm);
        let mut charge_part = Mat::zeros(dm, dm);
        for k in 0..self.modes.len() {
            flux_part += fock.ladder_flux(k) * faer::Scale(coeff.flux_flux[k]);
            charge_part += fock.ladder_charge(k) * faer::Scale(coeff.charge_charge[k]);
        }
        let mut v = linalg::kron(self.qubit.flux.as_ref(), flux_part.as_ref());
        v += linalg::kron(self.qubit.charge.as_ref(), charge_part.as_ref());
        if diamagnetic {
            let id_m = Mat::<f64>::identity(dm, dm);
            v += linalg::kron(self.qubit.flux_squared.as_ref(), id_m.as_ref()) * faer::Scale(coeff.flux_squared);
            let id_q = Mat::<f64>::identity(self.basis.qubit_levels(), self.basis.qubit_levels());
            v += linalg::kron(id_q.as_ref(), fock.charge_sum_squared().as_ref())
                * faer::Scale(coeff.mode_charge_squared);
        }
        HermitianOperator::new(v, self.basis.clone())
    }

    /// Full Hamiltonian `H(η) = H_q + H_r + V(η)`.
    pub fn build_full(&self, eta: f64) -> Result<HermitianOperator> {
        let mut h = self.interaction(eta, true)?;
        for (i, e) in self.bare_energies().into_iter().enumerate() {
            h.matrix[(i, i)] += e;
        }
        Ok(h)
    }

    /// Rabi coupling coefficients of each mode.
    pub fn rabi_couplings(&self) -> Vec<RabiCoupling> {
        let phi10 = self.qubit.flux[(1, 0)];
        let n10 = self.qubit.charge[(1, 0)];
        let e_c = self.qubit_charging_energy();
        self.modes
            .iter()
            .map(|m| RabiCoupling {
                flux: -m.inductive_energy * m.flux_zero_point * phi10,
                charge_imag: 8.0 * e_c * m.charge_zero_point * n10,
            })
            .collect()
    }

    /// Generalized quantum Rabi model on the two lowest qubit levels. The
    /// diamagnetic variant adds the `σ^z` renormalization and the
    /// charge-quadratic resonator term of the first-order projection.
    pub fn build_qrm(&self, eta: f64, diamagnetic: bool) -> Result<HermitianOperator> {
        check_eta(eta)?;
        let fock = FockOperators::new(&self.modes, self.basis.cutoffs());
        let dm = fock.dim;
        let basis = self.basis.with_qubit_levels(2);
        let w10 = self.qubit.transition(1, 0);
        let sz = Mat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => 1.0,
            (1, 1) => -1.0,
            _ => 0.0,
        });
        let sx = Mat::from_fn(2, 2, |i, j| if i != j { 1.0 } else { 0.0 });
        // |1⟩⟨0| − |0⟩⟨1| = −iσ^y
        let j2 = Mat::from_fn(2, 2, |i, j| match (i, j) {
            (1, 0) => 1.0,
            (0, 1) => -1.0,
            _ => 0.0,
        });
        let id2 = Mat::<f64>::identity(2, 2);
        let id_m = Mat::<f64>::identity(dm, dm);

        let mut sz_coeff = -w10 / 2.0;
        if diamagnetic {
            let e_l_sum: f64 = self.modes.iter().map(|m| m.inductive_energy).sum();
            let alpha = (self.qubit.flux_squared[(1, 1)] - self.qubit.flux_squared[(0, 0)]) * e_l_sum;
            sz_coeff -= (1.0 - eta).powi(2) * alpha / 4.0;
        }
        let mut h = linalg::kron(sz.as_ref(), id_m.as_ref()) * faer::Scale(sz_coeff);
        h += linalg::kron(id2.as_ref(), fock.number_energy().as_ref());

        let mut flux_part = Mat::zeros(dm, dm);
        let mut charge_part = Mat::zeros(dm, dm);
        for (k, g) in self.rabi_couplings().iter().enumerate() {
            flux_part += fock.ladder_flux(k) * faer::Scale((1.0 - eta) * g.flux);
            charge_part += fock.ladder_charge(k) * faer::Scale(eta * g.charge_imag);
        }
        h += linalg::kron(sx.as_ref(), flux_part.as_ref());
        h += linalg::kron(j2.as_ref(), charge_part.as_ref());
        if diamagnetic {
            let e_c = self.qubit_charging_energy();
            h += linalg::kron(id2.as_ref(), fock.charge_sum_squared().as_ref()) * faer::Scale(-eta * eta * 4.0 * e_c);
        }
        HermitianOperator::new(h, basis)
    }

    /// Gauge unitary between `η` and `η′` on the truncated space, evaluated
    /// blockwise in the eigenbasis of the truncated qubit flux.
    pub fn gauge_unitary(&self, eta: f64, eta_prime: f64) -> Result<GaugeUnitary> {
        check_eta(eta)?;
        check_eta(eta_prime)?;
        let delta = eta_prime - eta;
        let nq = self.basis.qubit_levels();
        let dm = self.basis.mode_dim();
        let cutoffs = self.basis.cutoffs();
        let (f, u) = linalg::eigh(self.qubit.flux.as_ref())?;
        let mut r = Mat::zeros(nq * dm, nq * dm);
        for (i, &fi) in f.iter().enumerate() {
            // exp(Δ f_i Σ_k K_k) factorizes over the commuting modes.
            let mut block = Mat::<f64>::identity(1, 1);
            for (k, m) in self.modes.iter().enumerate() {
                let gen = ladder_charge(cutoffs[k]) * faer::Scale(delta * fi * m.charge_zero_point);
                block = linalg::kron(block.as_ref(), linalg::expm(gen.as_ref()).as_ref());
            }
            for a in 0..nq {
                for b in 0..nq {
                    let w = u[(a, i)] * u[(b, i)];
                    if w == 0.0 {
                        continue;
                    }
                    for beta in 0..dm {
                        for alpha in 0..dm {
                            r[(a * dm + alpha, b * dm + beta)] += w * block[(alpha, beta)];
                        }
                    }
                }
            }
        }
        Ok(GaugeUnitary {
            matrix: r,
            eta,
            eta_prime,
        })
    }
}

fn check_eta(eta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&eta) {
        Ok(())
    } else {
        Err(Error::EtaOutOfRange(eta))
    }
}

/// `a + a†` on occupations `0..=cutoff`.
fn ladder_flux(cutoff: usize) -> Mat<f64> {
    let n = cutoff + 1;
    Mat::from_fn(n, n, |i, j| {
        if i + 1 == j {
            (j as f64).sqrt()
        } else if j + 1 == i {
            (i as f64).sqrt()
        } else {
            0.0
        }
    })
}

/// `a† − a`.
fn ladder_charge(cutoff: usize) -> Mat<f64> {
    let n = cutoff + 1;
    Mat::from_fn(n, n, |i, j| {
        if j + 1 == i {
            (i as f64).sqrt()
        } else if i + 1 == j {
            -(j as f64).sqrt()
        } else {
            0.0
        }
    })
}

/// `(a† − a)²` with untruncated matrix elements: `a†² + a² − (2n + 1)`.
fn ladder_charge_squared(cutoff: usize) -> Mat<f64> {
    let n = cutoff + 1;
    Mat::from_fn(n, n, |i, j| {
        if i == j {
            -(2.0 * i as f64 + 1.0)
        } else if i + 2 == j {
            ((i + 1) as f64 * (i + 2) as f64).sqrt()
        } else if j + 2 == i {
            ((j + 1) as f64 * (j + 2) as f64).sqrt()
        } else {
            0.0
        }
    })
}

/// Mode-space operators with identities on the other modes.
struct FockOperators<'a> {
    modes: &'a [ModeParameters],
    cutoffs: &'a [usize],
    dim: usize,
}

impl<'a> FockOperators<'a> {
    fn new(modes: &'a [ModeParameters], cutoffs: &'a [usize]) -> Self {
        Self {
            modes,
            cutoffs,
            dim: cutoffs.iter().map(|c| c + 1).product(),
        }
    }

    fn embed(&self, factors: &[(usize, Mat<f64>)]) -> Mat<f64> {
        let mut out = Mat::<f64>::identity(1, 1);
        for (k, &c) in self.cutoffs.iter().enumerate() {
            let op = match factors.iter().find(|(i, _)| *i == k) {
                Some((_, m)) => m.clone(),
                None => Mat::<f64>::identity(c + 1, c + 1),
            };
            out = linalg::kron(out.as_ref(), op.as_ref());
        }
        out
    }

    /// `a_k + a_k†`.
    fn ladder_flux(&self, k: usize) -> Mat<f64> {
        self.embed(&[(k, ladder_flux(self.cutoffs[k]))])
    }

    /// `a_k† − a_k`.
    fn ladder_charge(&self, k: usize) -> Mat<f64> {
        self.embed(&[(k, ladder_charge(self.cutoffs[k]))])
    }

    /// `(Σ_k K_k)²`, same-mode squares with untruncated elements.
    fn charge_sum_squared(&self) -> Mat<f64> {
        let n = self.modes.len();
        let mut out = Mat::zeros(self.dim, self.dim);
        for k in 0..n {
            let y = self.modes[k].charge_zero_point;
            out += self.embed(&[(k, ladder_charge_squared(self.cutoffs[k]) * faer::Scale(y * y))]);
            for j in (k + 1)..n {
                let yj = self.modes[j].charge_zero_point;
                out += self.embed(&[
                    (k, ladder_charge(self.cutoffs[k]) * faer::Scale(y)),
                    (j, ladder_charge(self.cutoffs[j]) * faer::Scale(2.0 * yj)),
                ]);
            }
        }
        out
    }

    /// `Σ_k ω_k n_k`.
    fn number_energy(&self) -> Mat<f64> {
        let mut out = Mat::zeros(self.dim, self.dim);
        for (k, m) in self.modes.iter().enumerate() {
            let c = self.cutoffs[k];
            let num = Mat::from_fn(c + 1, c + 1, |i, j| if i == j { i as f64 * m.frequency } else { 0.0 });
            out += self.embed(&[(k, num)]);
        }
        out
    }
}
