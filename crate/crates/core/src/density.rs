//! Two-qubit density matrices built from Pauli correlators.

use nalgebra::{Complex, Matrix2, Matrix4};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Pauli matrices in the order I, X, Y, Z.
pub fn pauli_matrices() -> [Matrix2<C64>; 4] {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    [
        Matrix2::new(l, o, o, l),
        Matrix2::new(o, l, l, o),
        Matrix2::new(o, -i, i, o),
        Matrix2::new(l, o, o, -l),
    ]
}

pub fn kron2(a: &Matrix2<C64>, b: &Matrix2<C64>) -> Matrix4<C64> {
    Matrix4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// A 4×4 density matrix; the first tensor factor is the more significant
/// index bit.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoQubitDensity(pub Matrix4<C64>);

impl TwoQubitDensity {
    /// `ρ = ¼ Σ_{αβ} G_{αβ} σ_α ⊗ σ_β` with `G[0][0] = 1`.
    pub fn from_correlators(g: &[[f64; 4]; 4]) -> Self {
        let s = pauli_matrices();
        let mut rho = Matrix4::zeros();
        for (a, row) in g.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v != 0.0 {
                    rho += kron2(&s[a], &s[b]) * C64::new(v / 4.0, 0.0);
                }
            }
        }
        Self(rho)
    }

    /// Pure state `|ψ⟩⟨ψ|` from four amplitudes.
    pub fn pure(amps: [C64; 4]) -> Self {
        Self(Matrix4::from_fn(|r, c| amps[r] * amps[c].conj()))
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// Eigenvalues in ascending order. Requires a Hermitian matrix.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let mut ev: Vec<f64> = self.0.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        [ev[0], ev[1], ev[2], ev[3]]
    }

    /// Check Hermiticity, unit trace and positivity to within `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let herm = (self.0 - self.0.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max);
        if herm > tol {
            return Err(Error::InvalidDensity(format!("not Hermitian (deviation {herm:e})")));
        }
        let tr = self.0.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidDensity(format!("trace {tr} differs from 1")));
        }
        let min = self.eigenvalues()[0];
        if min < -tol {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_correlators_give_projector() {
        // |Φ+⟩: ⟨XX⟩ = 1, ⟨YY⟩ = −1, ⟨ZZ⟩ = 1.
        let mut g = [[0.0; 4]; 4];
        g[0][0] = 1.0;
        g[1][1] = 1.0;
        g[2][2] = -1.0;
        g[3][3] = 1.0;
        let rho = TwoQubitDensity::from_correlators(&g);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = C64::new(0.0, 0.0);
        let bell = TwoQubitDensity::pure([C64::new(h, 0.0), z, z, C64::new(h, 0.0)]);
        assert!((rho.0 - bell.0).iter().all(|c| c.norm() < 1e-12));
        rho.validate(1e-12).unwrap();
    }

    #[test]
    fn rejects_bad_matrices() {
        let mut m = Matrix4::<C64>::identity() * C64::new(0.25, 0.0);
        m[(0, 1)] = C64::new(0.1, 0.0);
        assert!(TwoQubitDensity(m).validate(1e-9).is_err());
        let m = Matrix4::<C64>::identity() * C64::new(0.5, 0.0);
        assert!(TwoQubitDensity(m).validate(1e-9).is_err());
        let mut m = Matrix4::<C64>::zeros();
        m[(0, 0)] = C64::new(1.5, 0.0);
        m[(1, 1)] = C64::new(-0.5, 0.0);
        assert!(TwoQubitDensity(m).validate(1e-9).is_err());
    }
}
