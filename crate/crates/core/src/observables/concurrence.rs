use nalgebra::Matrix4;

use crate::density::{kron2, pauli_matrices, TwoQubitDensity, C64};
use crate::error::Result;

/// Tolerance used to accept a density matrix before computing concurrence.
const DENSITY_TOL: f64 = 1e-9;

const ROUNDING: f64 = 1e-12;

/// Wootters concurrence `max(0, λ1 − λ2 − λ3 − λ4)`, where `λ` are the
/// decreasing square roots of the eigenvalues of `√ρ ρ̃ √ρ` and
/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
pub fn concurrence(rho: &TwoQubitDensity) -> Result<f64> {
    rho.validate(DENSITY_TOL)?;
    let m = rho.matrix();
    let sy = pauli_matrices()[2];
    let yy = kron2(&sy, &sy);
    let tilde = yy * m.conjugate() * yy;

    let eig = m.symmetric_eigen();
    let sqrt_vals = eig.eigenvalues.map(|v| C64::new(v.max(0.0).sqrt(), 0.0));
    let sqrt_rho = eig.eigenvectors * Matrix4::from_diagonal(&sqrt_vals) * eig.eigenvectors.adjoint();
    let mut inner = sqrt_rho * tilde * sqrt_rho;
    // Symmetrize away rounding before the Hermitian solver.
    inner = (inner + inner.adjoint()) * C64::new(0.5, 0.0);
    // Eigenvalues at rounding level would otherwise surface as O(1e-8) roots.
    let mut lambda: Vec<f64> =
        inner.symmetric_eigenvalues().iter().map(|&v| if v < ROUNDING { 0.0 } else { v.sqrt() }).collect();
    lambda.sort_by(|a, b| b.total_cmp(a));
    let c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
    Ok(if c < ROUNDING { 0.0 } else { c.min(1.0) })
}
