//! Spin-½ operators, r.f. pulse propagators and density-matrix propagation.
//!
//! Conventions:
//! * spin operators are `I_k = σ_k / 2`;
//! * a hard (δ) pulse with phase `φ` and flip angle `β` propagates as
//!   `R_φ(β) = exp(−iβ(I_x cos φ + I_y sin φ)) = R_z(φ) R_x(β) R_z(−φ)`;
//! * states are density matrices `ρ = ½·1 + ½·λ_B·I_n`, with `λ_B` a
//!   dimensionless polarization scale;
//! * the readout is `M = (Tr ρI_x, Tr ρI_y, Tr ρI_z)`.
//!
//! Angles are never wrapped: `β` and `β + 2π` give propagators that differ by
//! a global sign, which matters for some gate constructions.

use crate::error::{ensure_finite, Error, Result};
use crate::matrix::{Mat2, C64, DEFAULT_TOL};

/// Cartesian rotation axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// The basis spin operators together with the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpinOperator {
    Ix,
    Iy,
    Iz,
    Identity,
}

impl From<Axis> for SpinOperator {
    fn from(axis: Axis) -> Self {
        match axis {
            Axis::X => SpinOperator::Ix,
            Axis::Y => SpinOperator::Iy,
            Axis::Z => SpinOperator::Iz,
        }
    }
}

/// Matrix of a basis spin operator (½·Pauli) or the identity.
pub fn spin_operator(op: SpinOperator) -> Mat2 {
    let zero = C64::new(0.0, 0.0);
    let half = C64::new(0.5, 0.0);
    match op {
        SpinOperator::Ix => Mat2::new(zero, half, half, zero),
        SpinOperator::Iy => Mat2::new(zero, C64::new(0.0, -0.5), C64::new(0.0, 0.5), zero),
        SpinOperator::Iz => Mat2::new(half, zero, zero, -half),
        SpinOperator::Identity => Mat2::identity(),
    }
}

/// `exp(−iβ I_axis)` from its closed-form entries.
pub fn rot_axis(axis: Axis, beta: f64) -> Result<Mat2> {
    ensure_finite("flip angle", beta)?;
    let (s, c) = (beta / 2.0).sin_cos();
    let zero = C64::new(0.0, 0.0);
    Ok(match axis {
        Axis::X => Mat2::new(
            C64::new(c, 0.0),
            C64::new(0.0, -s),
            C64::new(0.0, -s),
            C64::new(c, 0.0),
        ),
        Axis::Y => Mat2::real(c, -s, s, c),
        Axis::Z => Mat2::new(C64::new(c, -s), zero, zero, C64::new(c, s)),
    })
}

/// Propagator `R_φ(β)` of a hard pulse with phase `phi` and flip angle `beta`.
pub fn rot_phi(phi: f64, beta: f64) -> Result<Mat2> {
    ensure_finite("pulse phase", phi)?;
    ensure_finite("flip angle", beta)?;
    Ok(pulse_rotation(phi, beta))
}

/// Closed-form `R_φ(β)`; callers guarantee finite inputs.
pub(crate) fn pulse_rotation(phi: f64, beta: f64) -> Mat2 {
    let (s, c) = (beta / 2.0).sin_cos();
    let (sp, cp) = phi.sin_cos();
    // off-diagonals: −i·sin(β/2)·e^{∓iφ}
    Mat2::new(
        C64::new(c, 0.0),
        C64::new(-s * sp, -s * cp),
        C64::new(s * sp, -s * cp),
        C64::new(c, 0.0),
    )
}

/// Ensemble spin state of a single spin-½.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    matrix: Mat2,
    lambda_b: f64,
}

impl DensityMatrix {
    /// Wrap an arbitrary matrix, checking Hermiticity and unit trace.
    pub fn from_matrix(matrix: Mat2, lambda_b: f64, tol: f64) -> Result<Self> {
        ensure_finite("lambda_B", lambda_b)?;
        if !matrix.is_finite() {
            return Err(Error::Domain("density matrix has non-finite entries".into()));
        }
        if !matrix.is_hermitian(tol) {
            return Err(Error::Domain("density matrix is not Hermitian".into()));
        }
        if (matrix.trace() - C64::new(1.0, 0.0)).norm() > tol {
            return Err(Error::Domain(format!(
                "density matrix trace is {}, expected 1",
                matrix.trace()
            )));
        }
        Ok(DensityMatrix { matrix, lambda_b })
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }

    /// Polarization scale the state was prepared with.
    pub fn lambda_b(&self) -> f64 {
        self.lambda_b
    }

    /// Eigenvalues in ascending order (real, since ρ is Hermitian).
    pub fn eigenvalues(&self) -> [f64; 2] {
        let a = self.matrix.get(0, 0).re;
        let d = self.matrix.get(1, 1).re;
        let b = self.matrix.get(0, 1).norm();
        let mean = 0.5 * (a + d);
        let radius = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        [mean - radius, mean + radius]
    }

    /// `U ρ U†` without the unitarity check.
    pub(crate) fn conjugated(&self, u: &Mat2) -> DensityMatrix {
        DensityMatrix {
            matrix: self.matrix.conjugate_by(u),
            lambda_b: self.lambda_b,
        }
    }

    /// Magnetization readout; `M` in units where a fully polarized state
    /// with `λ_B = 1` has `|M| = 1/4`.
    pub(crate) fn readout_unchecked(&self) -> Magnetization {
        let m = &self.matrix;
        let mx = 0.5 * (m.get(0, 1).re + m.get(1, 0).re);
        let my = 0.5 * (m.get(1, 0).im - m.get(0, 1).im);
        let mz = 0.5 * (m.get(0, 0).re - m.get(1, 1).re);
        Magnetization::new(mx, my, mz)
    }
}

/// `½·1 + ½·λ_B·I_z`.
pub fn thermal_state(lambda_b: f64) -> Result<DensityMatrix> {
    polarized_state(SpinOperator::Iz, lambda_b)
}

/// `½·1 + ½·λ_B·I_x`, the state reached from thermal equilibrium after
/// `R_{π/2}(π/2)`.
pub fn superposition_x_state(lambda_b: f64) -> Result<DensityMatrix> {
    polarized_state(SpinOperator::Ix, lambda_b)
}

fn polarized_state(op: SpinOperator, lambda_b: f64) -> Result<DensityMatrix> {
    ensure_finite("lambda_B", lambda_b)?;
    let matrix = Mat2::identity().scale_real(0.5) + spin_operator(op).scale_real(0.5 * lambda_b);
    Ok(DensityMatrix { matrix, lambda_b })
}

/// `U ρ U†`, rejecting `U` that is not unitary within [`DEFAULT_TOL`].
pub fn propagate(rho: &DensityMatrix, u: &Mat2) -> Result<DensityMatrix> {
    propagate_with_tol(rho, u, DEFAULT_TOL)
}

pub fn propagate_with_tol(rho: &DensityMatrix, u: &Mat2, tol: f64) -> Result<DensityMatrix> {
    if !u.is_finite() || !u.is_unitary(tol) {
        return Err(Error::Domain(format!("propagator is not unitary: {u}")));
    }
    Ok(rho.conjugated(u))
}

/// Expectation-value vector `(⟨I_x⟩, ⟨I_y⟩, ⟨I_z⟩)` and the detectable
/// transverse magnitude `M_xy`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Magnetization {
    pub mx: f64,
    pub my: f64,
    pub mz: f64,
    pub mxy: f64,
}

impl Magnetization {
    pub fn new(mx: f64, my: f64, mz: f64) -> Self {
        Magnetization {
            mx,
            my,
            mz,
            mxy: mx.hypot(my),
        }
    }

    /// Full vector length `|M|`.
    pub fn norm(&self) -> f64 {
        (self.mx * self.mx + self.my * self.my + self.mz * self.mz).sqrt()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.mx, self.my, self.mz]
    }

    pub fn max_abs_diff(&self, other: &Magnetization) -> f64 {
        [
            self.mx - other.mx,
            self.my - other.my,
            self.mz - other.mz,
            self.mxy - other.mxy,
        ]
        .iter()
        .map(|d| d.abs())
        .fold(0.0, f64::max)
    }
}

/// `(Tr ρI_x, Tr ρI_y, Tr ρI_z)` computed as full complex traces.
///
/// The traces of a Hermitian state are real; a residual imaginary part above
/// [`DEFAULT_TOL`] is reported as a consistency error.
pub fn magnetization(rho: &DensityMatrix) -> Result<Magnetization> {
    magnetization_with_tol(rho, DEFAULT_TOL)
}

pub fn magnetization_with_tol(rho: &DensityMatrix, tol: f64) -> Result<Magnetization> {
    let mut out = [0.0; 3];
    for (slot, op) in out
        .iter_mut()
        .zip([SpinOperator::Ix, SpinOperator::Iy, SpinOperator::Iz])
    {
        let t = (*rho.matrix() * spin_operator(op)).trace();
        if t.im.abs() > tol {
            return Err(Error::Consistency(format!(
                "Tr(rho {op:?}) has imaginary part {}",
                t.im
            )));
        }
        *slot = t.re;
    }
    Ok(Magnetization::new(out[0], out[1], out[2]))
}

/// A hard r.f. pulse: phase `φ_p` and flip angle `β = κ_p τ_p` in radians.
///
/// Amplitude (rad/s) and duration (s) are optional bookkeeping; when present
/// their product must match the flip angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pulse {
    phase: f64,
    flip_angle: f64,
    amplitude: Option<f64>,
    duration: Option<f64>,
}

impl Pulse {
    pub fn new(phase: f64, flip_angle: f64) -> Result<Self> {
        ensure_finite("pulse phase", phase)?;
        ensure_finite("flip angle", flip_angle)?;
        Ok(Pulse {
            phase,
            flip_angle,
            amplitude: None,
            duration: None,
        })
    }

    /// Pulse defined by amplitude and duration; the flip angle is their product.
    pub fn from_amplitude(phase: f64, amplitude: f64, duration: f64) -> Result<Self> {
        ensure_finite("pulse amplitude", amplitude)?;
        ensure_finite("pulse duration", duration)?;
        let mut pulse = Pulse::new(phase, amplitude * duration)?;
        pulse.amplitude = Some(amplitude);
        pulse.duration = Some(duration);
        Ok(pulse)
    }

    /// Attach amplitude and duration to an existing pulse, checking
    /// `|β − κ_p τ_p| ≤ tol`.
    pub fn with_timing(mut self, amplitude: f64, duration: f64, tol: f64) -> Result<Self> {
        ensure_finite("pulse amplitude", amplitude)?;
        ensure_finite("pulse duration", duration)?;
        let product = amplitude * duration;
        if (self.flip_angle - product).abs() > tol {
            return Err(Error::Domain(format!(
                "flip angle {} does not match amplitude × duration = {product}",
                self.flip_angle
            )));
        }
        self.amplitude = Some(amplitude);
        self.duration = Some(duration);
        Ok(self)
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn flip_angle(&self) -> f64 {
        self.flip_angle
    }

    pub fn amplitude(&self) -> Option<f64> {
        self.amplitude
    }

    pub fn duration(&self) -> Option<f64> {
        self.duration
    }

    pub fn propagator(&self) -> Mat2 {
        pulse_rotation(self.phase, self.flip_angle)
    }
}

/// Pulses applied in order, first to last.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PulseSequence {
    pulses: Vec<Pulse>,
}

impl PulseSequence {
    pub fn new(pulses: Vec<Pulse>) -> Self {
        PulseSequence { pulses }
    }

    pub fn push(&mut self, pulse: Pulse) {
        self.pulses.push(pulse);
    }

    pub fn pulses(&self) -> &[Pulse] {
        &self.pulses
    }

    pub fn len(&self) -> usize {
        self.pulses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pulses.is_empty()
    }

    pub fn propagator(&self) -> Mat2 {
        sequence_propagator(self)
    }
}

impl FromIterator<Pulse> for PulseSequence {
    fn from_iter<T: IntoIterator<Item = Pulse>>(iter: T) -> Self {
        PulseSequence::new(iter.into_iter().collect())
    }
}

/// `R_N ··· R_2 R_1`: the first pulse is the rightmost factor.
pub fn sequence_propagator(seq: &PulseSequence) -> Mat2 {
    seq.pulses
        .iter()
        .fold(Mat2::identity(), |acc, p| p.propagator() * acc)
}

/// Cartesian orientation `½(sin θ cos φ, sin θ sin φ, cos θ)` of a pure spin
/// state with polar angle `theta` and azimuth `phi`.
pub fn spin_vector(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [0.5 * st * cp, 0.5 * st * sp, 0.5 * ct]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::commutator;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    const TOL: f64 = 1e-12;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn spin_operator_matrices() {
        assert_eq!(spin_operator(SpinOperator::Iz), Mat2::real(0.5, 0.0, 0.0, -0.5));
        assert_eq!(spin_operator(SpinOperator::Ix), Mat2::real(0.0, 0.5, 0.5, 0.0));
        assert_eq!(spin_operator(SpinOperator::Identity), Mat2::identity());
        for op in [SpinOperator::Ix, SpinOperator::Iy, SpinOperator::Iz] {
            let m = spin_operator(op);
            assert!(m.is_hermitian(0.0));
            assert_eq!(m.trace(), c(0.0, 0.0));
        }
    }

    #[test]
    fn canonical_commutation_relations() {
        let [ix, iy, iz] = [SpinOperator::Ix, SpinOperator::Iy, SpinOperator::Iz].map(spin_operator);
        let i = c(0.0, 1.0);
        assert!(commutator(&ix, &iy).approx_eq(&iz.scale(i), TOL));
        assert!(commutator(&iy, &iz).approx_eq(&ix.scale(i), TOL));
        assert!(commutator(&iz, &ix).approx_eq(&iy.scale(i), TOL));
    }

    #[test]
    fn axis_rotations() {
        assert!(rot_axis(Axis::X, 0.0).unwrap().approx_eq(&Mat2::identity(), 0.0));
        let (s, co) = FRAC_PI_4.sin_cos();
        assert!(rot_axis(Axis::Y, FRAC_PI_2)
            .unwrap()
            .approx_eq(&Mat2::real(co, -s, s, co), TOL));
        assert!(rot_axis(Axis::Z, PI)
            .unwrap()
            .approx_eq(&Mat2::diag(c(0.0, -1.0), c(0.0, 1.0)), TOL));
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let r = rot_axis(axis, 0.7).unwrap();
            assert!(r.is_unitary(TOL));
            assert!((r.det() - c(1.0, 0.0)).norm() < TOL);
        }
    }

    #[test]
    fn non_finite_angles_are_rejected() {
        assert!(matches!(rot_axis(Axis::X, f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(rot_phi(f64::INFINITY, 0.0), Err(Error::Domain(_))));
        assert!(matches!(rot_phi(0.0, f64::NAN), Err(Error::Domain(_))));
        assert!(Pulse::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn rot_phi_special_cases() {
        for beta in [-3.0, -0.4, 0.0, 1.3, 2.0 * PI, 7.1] {
            let x = rot_axis(Axis::X, beta).unwrap();
            let y = rot_axis(Axis::Y, beta).unwrap();
            assert!(rot_phi(0.0, beta).unwrap().approx_eq(&x, TOL));
            assert!(rot_phi(FRAC_PI_2, beta).unwrap().approx_eq(&y, TOL));
        }
        for phi in [-1.0, 0.0, 0.3, PI, 5.0 * FRAC_PI_2] {
            assert!(rot_phi(phi, 0.0).unwrap().approx_eq(&Mat2::identity(), TOL));
        }
    }

    #[test]
    fn rot_phi_matches_printed_entries() {
        // [[cos β/2, −i sin β/2 e^{−iφ}], [−i sin β/2 e^{+iφ}, cos β/2]]
        let (phi, beta) = (0.9_f64, -2.3_f64);
        let s = (beta / 2.0).sin();
        let co = (beta / 2.0).cos();
        let minus_i = c(0.0, -1.0);
        let expected = Mat2::new(
            c(co, 0.0),
            minus_i * s * C64::from_polar(1.0, -phi),
            minus_i * s * C64::from_polar(1.0, phi),
            c(co, 0.0),
        );
        assert!(rot_phi(phi, beta).unwrap().approx_eq(&expected, TOL));
    }

    #[test]
    fn thermal_and_superposition_states() {
        let z = thermal_state(1.0).unwrap();
        assert!(z.matrix().approx_eq(&Mat2::real(0.75, 0.0, 0.0, 0.25), TOL));
        let mixed = thermal_state(0.0).unwrap();
        assert!(mixed.matrix().approx_eq(&Mat2::real(0.5, 0.0, 0.0, 0.5), TOL));
        let x = superposition_x_state(1.0).unwrap();
        assert!(x.matrix().approx_eq(&Mat2::real(0.5, 0.25, 0.25, 0.5), TOL));
        let x0 = superposition_x_state(0.0).unwrap();
        assert!(x0.matrix().approx_eq(&Mat2::real(0.5, 0.0, 0.0, 0.5), TOL));
        assert!(thermal_state(f64::NAN).is_err());
    }

    #[test]
    fn half_pi_pulse_prepares_x_superposition() {
        let rho = propagate(&thermal_state(1.0).unwrap(), &rot_phi(FRAC_PI_2, FRAC_PI_2).unwrap())
            .unwrap();
        assert!(rho
            .matrix()
            .approx_eq(superposition_x_state(1.0).unwrap().matrix(), TOL));
    }

    #[test]
    fn x_pulses_leave_x_superposition_unchanged() {
        let rho_x = superposition_x_state(1.0).unwrap();
        for beta in [-5.0, -1.0, 0.5, PI, 9.0] {
            let out = propagate(&rho_x, &rot_phi(0.0, beta).unwrap()).unwrap();
            assert!(out.matrix().approx_eq(rho_x.matrix(), TOL));
        }
    }

    #[test]
    fn propagate_identity_and_rejects_non_unitary() {
        let rho = thermal_state(1.0).unwrap();
        assert_eq!(propagate(&rho, &Mat2::identity()).unwrap(), rho);
        let bad = Mat2::real(2.0, 0.0, 0.0, 1.0);
        assert!(matches!(propagate(&rho, &bad), Err(Error::Domain(_))));
    }

    #[test]
    fn magnetization_readouts() {
        let mz = magnetization(&thermal_state(1.0).unwrap()).unwrap();
        assert!((mz.mx).abs() < TOL && (mz.my).abs() < TOL && (mz.mz - 0.25).abs() < TOL);
        let mx = magnetization(&superposition_x_state(1.0).unwrap()).unwrap();
        assert!((mx.mx - 0.25).abs() < TOL && mx.my.abs() < TOL && mx.mz.abs() < TOL);
        assert!((mx.mxy - 0.25).abs() < TOL);
        let m0 = magnetization(&thermal_state(0.0).unwrap()).unwrap();
        assert_eq!(m0.norm(), 0.0);
    }

    #[test]
    fn readout_fast_path_matches_traces() {
        let rho = thermal_state(0.8)
            .unwrap()
            .conjugated(&rot_phi(0.4, 1.9).unwrap());
        let a = magnetization(&rho).unwrap();
        let b = rho.readout_unchecked();
        assert!(a.max_abs_diff(&b) < 1e-15);
    }

    #[test]
    fn non_hermitian_state_is_flagged() {
        let m = Mat2::new(c(0.5, 0.0), c(0.1, 0.0), c(0.3, 0.0), c(0.5, 0.0));
        assert!(DensityMatrix::from_matrix(m, 1.0, 1e-9).is_err());
        let m = Mat2::real(0.6, 0.0, 0.0, 0.6);
        assert!(DensityMatrix::from_matrix(m, 1.0, 1e-9).is_err());
    }

    #[test]
    fn magnetization_flags_imaginary_traces() {
        // Anti-Hermitian off-diagonal part gives Tr(ρ I_x) an imaginary component.
        let m = Mat2::new(c(0.5, 0.0), c(0.0, 0.2), c(0.0, 0.2), c(0.5, 0.0));
        let rho = DensityMatrix {
            matrix: m,
            lambda_b: 1.0,
        };
        assert!(matches!(magnetization(&rho), Err(Error::Consistency(_))));
    }

    #[test]
    fn eigenvalues_of_polarized_states() {
        let [lo, hi] = thermal_state(1.0).unwrap().eigenvalues();
        assert!((lo - 0.25).abs() < TOL && (hi - 0.75).abs() < TOL);
        let [lo, hi] = superposition_x_state(0.4).unwrap().eigenvalues();
        assert!((lo - 0.4).abs() < TOL && (hi - 0.6).abs() < TOL);
    }

    #[test]
    fn sequence_ordering() {
        assert_eq!(sequence_propagator(&PulseSequence::default()), Mat2::identity());
        let p1 = Pulse::new(FRAC_PI_2, FRAC_PI_2).unwrap();
        let p2 = Pulse::new(0.0, FRAC_PI_2).unwrap();
        let seq = PulseSequence::new(vec![p1, p2]);
        let expected = rot_phi(0.0, FRAC_PI_2).unwrap() * rot_phi(FRAC_PI_2, FRAC_PI_2).unwrap();
        assert!(seq.propagator().approx_eq(&expected, TOL));
        let anti = PulseSequence::new(vec![Pulse::new(0.8, 2.1).unwrap(), Pulse::new(0.8, -2.1).unwrap()]);
        assert!(anti.propagator().approx_eq(&Mat2::identity(), TOL));
    }

    #[test]
    fn pulse_timing_validation() {
        let p = Pulse::from_amplitude(0.0, 2.0 * PI * 1e4, 25e-6).unwrap();
        assert!((p.flip_angle() - FRAC_PI_2).abs() < TOL);
        assert_eq!(p.duration(), Some(25e-6));
        let q = Pulse::new(0.0, FRAC_PI_2).unwrap();
        assert!(q.with_timing(2.0 * PI * 1e4, 25e-6, 1e-9).is_ok());
        assert!(q.with_timing(2.0 * PI * 1e4, 50e-6, 1e-9).is_err());
    }

    #[test]
    fn spin_vector_orientations() {
        let v = spin_vector(0.0, 1.234);
        assert!(v[0].abs() < TOL && v[1].abs() < TOL && (v[2] - 0.5).abs() < TOL);
        let v = spin_vector(FRAC_PI_2, 0.0);
        assert!((v[0] - 0.5).abs() < TOL && v[1].abs() < TOL && v[2].abs() < TOL);
        let v = spin_vector(FRAC_PI_2, FRAC_PI_2);
        assert!(v[0].abs() < TOL && (v[1] - 0.5).abs() < TOL && v[2].abs() < TOL);
    }

    #[test]
    fn pulse_state_matches_spin_vector_orientation() {
        // A pulse R_φ(β) on ρ_z^eq points the spin at (θ_s, φ_s) = (β, φ − π/2).
        let (phi, beta) = (1.1, 0.7);
        let m = thermal_state(1.0)
            .unwrap()
            .conjugated(&rot_phi(phi, beta).unwrap())
            .readout_unchecked();
        let v = spin_vector(beta, phi - FRAC_PI_2);
        for (a, b) in m.as_array().iter().zip(v) {
            // |M| = λ_B/4 while the spin vector has length ½.
            assert!((a - 0.5 * b).abs() < TOL);
        }
    }
}
