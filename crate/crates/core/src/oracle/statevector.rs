use nalgebra::{DMatrix, Matrix4};

use crate::clifford::CliffordTwoQubit;
use crate::density::{kron2, pauli_matrices, C64};
use crate::error::{check_index, Error, Result};
use crate::graphstate::{Basis, Graph};
use crate::pauli::{Pauli, PauliString};
use crate::tableau::Gate;

pub const MAX_QUBITS: usize = 10;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Amplitudes over `2^n` basis states; bit `q` of the index is qubit `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<C64>,
}

/// One outcome branch of a projective measurement.
#[derive(Clone, Debug)]
pub struct Branch {
    /// `false` for the +1 eigenvalue.
    pub outcome: bool,
    pub probability: f64,
    /// Normalized post-measurement state; `None` for a zero-probability branch.
    pub state: Option<StateVector>,
}

impl StateVector {
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyRegister);
        }
        if n > MAX_QUBITS {
            return Err(Error::OracleTooLarge { max: MAX_QUBITS, got: n });
        }
        let mut amps = vec![ZERO; 1 << n];
        amps[0] = C64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let n = amps.len().trailing_zeros() as usize;
        if amps.len() != 1 << n || n == 0 {
            return Err(Error::InvalidConfig("amplitude count must be a power of two".into()));
        }
        if n > MAX_QUBITS {
            return Err(Error::OracleTooLarge { max: MAX_QUBITS, got: n });
        }
        Ok(Self { n, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn normalize(&mut self) {
        let n = self.norm();
        self.amps.iter_mut().for_each(|a| *a /= n);
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum::<C64>().norm_sqr()
    }

    fn apply_1q(&mut self, q: usize, m: [[C64; 2]; 2]) {
        let bit = 1 << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    /// Apply a 4×4 unitary on `(a, b)`; its index is `2·bit_a + bit_b`.
    pub fn apply_2q(&mut self, a: usize, b: usize, u: &Matrix4<C64>) {
        let (ba, bb) = (1 << a, 1 << b);
        for i in 0..self.amps.len() {
            if i & ba == 0 && i & bb == 0 {
                let idx = [i, i | bb, i | ba, i | ba | bb];
                let v = idx.map(|k| self.amps[k]);
                for (r, &k) in idx.iter().enumerate() {
                    self.amps[k] = (0..4).map(|c| u[(r, c)] * v[c]).sum();
                }
            }
        }
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let (o, l, i) = (ZERO, C64::new(1.0, 0.0), C64::new(0.0, 1.0));
        let check2 = |a: usize, b: usize| -> Result<()> {
            check_index(a, self.n)?;
            check_index(b, self.n)?;
            if a == b {
                Err(Error::SameQubit(a))
            } else {
                Ok(())
            }
        };
        match *gate {
            Gate::H(q) | Gate::S(q) | Gate::SDag(q) | Gate::X(q) | Gate::Z(q) => check_index(q, self.n)?,
            Gate::Cz(a, b) | Gate::Cnot(a, b) | Gate::Clifford(_, a, b) => check2(a, b)?,
        }
        match *gate {
            Gate::H(q) => self.apply_1q(q, [[l * h, l * h], [l * h, -l * h]]),
            Gate::S(q) => self.apply_1q(q, [[l, o], [o, i]]),
            Gate::SDag(q) => self.apply_1q(q, [[l, o], [o, -i]]),
            Gate::X(q) => self.apply_1q(q, [[o, l], [l, o]]),
            Gate::Z(q) => self.apply_1q(q, [[l, o], [o, -l]]),
            Gate::Cz(a, b) => {
                let mask = (1 << a) | (1 << b);
                for (k, amp) in self.amps.iter_mut().enumerate() {
                    if k & mask == mask {
                        *amp = -*amp;
                    }
                }
            }
            Gate::Cnot(c, t) => {
                for k in 0..self.amps.len() {
                    if k & (1 << c) != 0 && k & (1 << t) == 0 {
                        self.amps.swap(k, k | (1 << t));
                    }
                }
            }
            Gate::Clifford(ref c, a, b) => self.apply_2q(a, b, &clifford_unitary(c)),
        }
        Ok(())
    }

    /// `P|ψ⟩` for a signed Pauli string.
    pub fn apply_pauli(&self, p: &PauliString) -> StateVector {
        let (mut xm, mut zm, mut y) = (0usize, 0usize, 0u32);
        for (q, op) in p.ops.iter().enumerate() {
            let (x, z) = op.bits();
            xm |= (x as usize) << q;
            zm |= (z as usize) << q;
            y += (x && z) as u32;
        }
        let base = [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0)]
            [(y as usize + 2 * p.negative as usize) % 4];
        let mut out = vec![ZERO; self.amps.len()];
        for (k, &a) in self.amps.iter().enumerate() {
            let s = if (zm & k).count_ones() % 2 == 1 { -base } else { base };
            out[k ^ xm] = s * a;
        }
        StateVector { n: self.n, amps: out }
    }

    /// `⟨ψ|P|ψ⟩` (real for Hermitian `P`).
    pub fn expectation(&self, p: &PauliString) -> Result<f64> {
        if p.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: p.len() });
        }
        let pp = self.apply_pauli(p);
        Ok(self.amps.iter().zip(&pp.amps).map(|(a, b)| a.conj() * b).sum::<C64>().re)
    }

    /// Measure qubit `q` in `basis`, returning both branches with their Born
    /// probabilities.
    pub fn measure_pauli_dense(&self, q: usize, basis: Basis) -> Result<[Branch; 2]> {
        check_index(q, self.n)?;
        let op = match basis {
            Basis::X => Pauli::X,
            Basis::Y => Pauli::Y,
            Basis::Z => Pauli::Z,
        };
        let pv = self.apply_pauli(&PauliString::single(self.n, q, op));
        let branch = |outcome: bool| {
            let sign = if outcome { -1.0 } else { 1.0 };
            let amps: Vec<C64> = self.amps.iter().zip(&pv.amps).map(|(a, b)| (a + b * sign) * 0.5).collect();
            let mut s = StateVector { n: self.n, amps };
            let probability = s.norm().powi(2);
            let state = (probability > 1e-12).then(|| {
                s.normalize();
                s
            });
            Branch { outcome, probability, state }
        };
        Ok([branch(false), branch(true)])
    }

    /// Reduced density matrix of `keep`; `keep[0]` is the most significant
    /// index bit.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DMatrix<C64>> {
        for &q in keep {
            check_index(q, self.n)?;
        }
        let k = keep.len();
        let dim = 1 << k;
        let kept_mask: usize = keep.iter().map(|q| 1 << q).sum();
        let env: Vec<usize> = (0..self.n).filter(|q| kept_mask & (1 << q) == 0).collect();
        let embed = |sub: usize, e: usize| {
            let mut idx = 0;
            for (j, &q) in keep.iter().enumerate() {
                if (sub >> (k - 1 - j)) & 1 == 1 {
                    idx |= 1 << q;
                }
            }
            for (j, &q) in env.iter().enumerate() {
                if (e >> j) & 1 == 1 {
                    idx |= 1 << q;
                }
            }
            idx
        };
        let mut rho = DMatrix::from_element(dim, dim, ZERO);
        for e in 0..1usize << env.len() {
            for r in 0..dim {
                let ar = self.amps[embed(r, e)];
                if ar == ZERO {
                    continue;
                }
                for c in 0..dim {
                    rho[(r, c)] += ar * self.amps[embed(c, e)].conj();
                }
            }
        }
        Ok(rho)
    }

    /// Von Neumann entropy (bits) of the reduced state on `region`.
    pub fn entropy(&self, region: &[usize]) -> Result<f64> {
        if region.is_empty() {
            return Ok(0.0);
        }
        let rho = self.partial_trace(region)?;
        let ev = rho.symmetric_eigenvalues();
        Ok(ev.iter().filter(|&&l| l > 1e-14).map(|&l| -l * l.log2()).sum())
    }

    /// Entropy of every subset of `qubits` (bitmask over positions in
    /// `qubits`), indexed by mask.
    pub fn entropy_profile(&self, qubits: &[usize]) -> Result<Vec<f64>> {
        (0..1usize << qubits.len())
            .map(|mask| {
                let region: Vec<usize> =
                    qubits.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &q)| q).collect();
                self.entropy(&region)
            })
            .collect()
    }
}

/// `|G⟩ = Π_{(a,b)∈E} CZ_ab |+⟩^{⊗n}`; deleted vertices stay in `|+⟩`.
pub fn build_graph_state(g: &Graph) -> Result<StateVector> {
    let n = g.len();
    if n > MAX_QUBITS {
        return Err(Error::OracleTooLarge { max: MAX_QUBITS, got: n });
    }
    let mut s = StateVector::zero(n)?;
    let amp = C64::new((1.0 / (1u64 << n) as f64).sqrt(), 0.0);
    let edges = g.edges();
    for (k, a) in s.amps.iter_mut().enumerate() {
        let parity = edges.iter().filter(|(u, v)| (k >> u) & 1 == 1 && (k >> v) & 1 == 1).count();
        *a = if parity % 2 == 1 { -amp } else { amp };
    }
    Ok(s)
}

fn local_pauli_matrix(bits: u8, negative: bool) -> Matrix4<C64> {
    let s = pauli_matrices();
    let idx = |x: bool, z: bool| match (x, z) {
        (false, false) => 0,
        (true, false) => 1,
        (true, true) => 2,
        (false, true) => 3,
    };
    let a = idx(bits & 1 != 0, bits & 2 != 0);
    let b = idx(bits & 4 != 0, bits & 8 != 0);
    let m = kron2(&s[a], &s[b]);
    if negative {
        -m
    } else {
        m
    }
}

/// Dense unitary of a two-qubit Clifford rebuilt from its generator images:
/// column `|00⟩` is the joint +1 eigenvector of the images of `Z_a` and `Z_b`,
/// and column `|xa xb⟩` is that vector acted on by the images of `X_a^xa X_b^xb`.
pub fn clifford_unitary(c: &CliffordTwoQubit) -> Matrix4<C64> {
    let img = c.images();
    let sg = c.signs();
    let m = |g: usize| local_pauli_matrix(img[g], (sg >> g) & 1 == 1);
    let (xa, za, xb, zb) = (m(0), m(1), m(2), m(3));
    let id = Matrix4::<C64>::identity();
    let half = C64::new(0.5, 0.0);
    let proj = (id + za) * half * (id + zb) * half;
    let col0 = (0..4)
        .map(|k| proj.column(k).into_owned())
        .find(|v| v.norm() > 1e-6)
        .expect("rank-one projector");
    let col0 = col0.normalize();
    let mut u = Matrix4::zeros();
    u.set_column(0, &col0);
    u.set_column(1, &(xb * col0));
    u.set_column(2, &(xa * col0));
    u.set_column(3, &(xa * xb * col0));
    u
}

/// Wootters concurrence via the singular values of `√ρ (σy⊗σy) √ρ*`.
pub fn concurrence_dense(rho: &DMatrix<C64>) -> Result<f64> {
    if rho.nrows() != 4 || rho.ncols() != 4 {
        return Err(Error::InvalidDensity(format!("expected 4x4, got {}x{}", rho.nrows(), rho.ncols())));
    }
    let eig = rho.clone().symmetric_eigen();
    let sq = eig.eigenvalues.map(|v| C64::new(v.max(0.0).sqrt(), 0.0));
    let sqrt_rho = &eig.eigenvectors * DMatrix::from_diagonal(&sq) * eig.eigenvectors.adjoint();
    let s = pauli_matrices();
    let yy4 = kron2(&s[2], &s[2]);
    let yy = DMatrix::from_fn(4, 4, |r, c| yy4[(r, c)]);
    let m = &sqrt_rho * yy * sqrt_rho.conjugate();
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok((sv[0] - sv[1] - sv[2] - sv[3]).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, re: f64, im: f64) -> bool {
        (a.re - re).abs() < 1e-12 && (a.im - im).abs() < 1e-12
    }

    #[test]
    fn bell_preparation() {
        let mut s = StateVector::zero(2).unwrap();
        s.apply_gate(&Gate::H(0)).unwrap();
        s.apply_gate(&Gate::Cnot(0, 1)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(s.amps[0], h, 0.0) && close(s.amps[3], h, 0.0));
        assert!(close(s.amps[1], 0.0, 0.0) && close(s.amps[2], 0.0, 0.0));
        assert!((s.entropy(&[0]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn graph_state_examples() {
        let s = build_graph_state(&Graph::empty(2)).unwrap();
        assert!(s.amps.iter().all(|a| close(*a, 0.5, 0.0)));
        let s = build_graph_state(&Graph::path(2)).unwrap();
        assert!(close(s.amps[3], -0.5, 0.0) && close(s.amps[1], 0.5, 0.0));
        let s = build_graph_state(&Graph::path(3)).unwrap();
        for q in 0..3 {
            assert!((s.entropy(&[q]).unwrap() - 1.0).abs() < 1e-12);
        }
        assert!(build_graph_state(&Graph::empty(11)).is_err());
    }

    #[test]
    fn ghz_marginal_has_zero_concurrence() {
        let mut s = StateVector::zero(3).unwrap();
        for g in [Gate::H(0), Gate::Cnot(0, 1), Gate::Cnot(1, 2)] {
            s.apply_gate(&g).unwrap();
        }
        let rho = s.partial_trace(&[0, 1]).unwrap();
        assert!((rho[(0, 0)].re - 0.5).abs() < 1e-12 && (rho[(3, 3)].re - 0.5).abs() < 1e-12);
        assert!(rho[(0, 3)].norm() < 1e-12);
        assert!(concurrence_dense(&rho).unwrap() < 1e-12);
    }

    #[test]
    fn measurement_branches() {
        let mut s = StateVector::zero(1).unwrap();
        s.apply_gate(&Gate::H(0)).unwrap();
        let [a, b] = s.measure_pauli_dense(0, Basis::Z).unwrap();
        assert!((a.probability - 0.5).abs() < 1e-12 && (b.probability - 0.5).abs() < 1e-12);
        let [a, b] = s.measure_pauli_dense(0, Basis::X).unwrap();
        assert!((a.probability - 1.0).abs() < 1e-12 && b.state.is_none());
    }

    #[test]
    fn clifford_unitary_conjugates_generators() {
        for idx in (0..crate::clifford::GROUP_ORDER).step_by(37) {
            let c = CliffordTwoQubit::from_index(idx);
            let u = clifford_unitary(&c);
            assert!((u * u.adjoint() - Matrix4::identity()).norm() < 1e-10);
            for p in 0u8..16 {
                let (img, flip) = c.conjugate(p);
                let lhs = u * local_pauli_matrix(p, false) * u.adjoint();
                let rhs = local_pauli_matrix(img, flip);
                assert!((lhs - rhs).norm() < 1e-10, "element {idx}, pauli {p}");
            }
        }
    }
}
