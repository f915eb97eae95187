//! Stabilizer tableau with destabilizers over word-packed rows.
//!
//! Rows `0..n` hold destabilizers, rows `n..2n` the stabilizer generators and
//! row `2n` is scratch space for deterministic measurements and expectation
//! values.

use rand::Rng;

use crate::bits::{self, BitMatrix};
use crate::clifford::CliffordTwoQubit;
use crate::density::TwoQubitDensity;
use crate::error::{check_index, Error, Result};
use crate::pauli::{anticommutes, product_phase, Pauli, PauliString};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    S(usize),
    SDag(usize),
    X(usize),
    Z(usize),
    Cz(usize, usize),
    /// Control, target.
    Cnot(usize, usize),
    Clifford(CliffordTwoQubit, usize, usize),
}

impl Gate {
    fn check(&self, n: usize) -> Result<()> {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::SDag(q) | Gate::X(q) | Gate::Z(q) => check_index(q, n),
            Gate::Cz(a, b) | Gate::Cnot(a, b) | Gate::Clifford(_, a, b) => {
                check_index(a, n)?;
                check_index(b, n)?;
                if a == b {
                    Err(Error::SameQubit(a))
                } else {
                    Ok(())
                }
            }
        }
    }
}

/// Result of a single-qubit Z measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measurement {
    /// `false` for the +1 eigenvalue (|0⟩), `true` for −1 (|1⟩).
    pub outcome: bool,
    pub deterministic: bool,
}

impl Measurement {
    pub fn bit(&self) -> u8 {
        self.outcome as u8
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerTableau {
    n: usize,
    words: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    neg: Vec<bool>,
}

impl StabilizerTableau {
    /// The all-zero state: stabilizers `Z_i`, destabilizers `X_i`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyRegister);
        }
        let words = bits::words_for(n);
        let rows = 2 * n + 1;
        let mut t = Self {
            n,
            words,
            x: vec![0; rows * words],
            z: vec![0; rows * words],
            neg: vec![false; rows],
        };
        for i in 0..n {
            bits::set(t.x_row_mut(i), i, true);
            bits::set(t.z_row_mut(n + i), i, true);
        }
        Ok(t)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    fn x_row(&self, r: usize) -> &[u64] {
        &self.x[r * self.words..(r + 1) * self.words]
    }

    #[inline]
    fn z_row(&self, r: usize) -> &[u64] {
        &self.z[r * self.words..(r + 1) * self.words]
    }

    #[inline]
    fn x_row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.x[r * self.words..(r + 1) * self.words]
    }

    #[inline]
    fn z_row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.z[r * self.words..(r + 1) * self.words]
    }

    fn row_pauli(&self, r: usize) -> PauliString {
        let ops = (0..self.n)
            .map(|q| Pauli::from_bits(bits::get(self.x_row(r), q), bits::get(self.z_row(r), q)))
            .collect();
        PauliString { ops, negative: self.neg[r] }
    }

    pub fn stabilizer(&self, i: usize) -> PauliString {
        self.row_pauli(self.n + i)
    }

    pub fn destabilizer(&self, i: usize) -> PauliString {
        self.row_pauli(i)
    }

    pub fn stabilizers(&self) -> Vec<PauliString> {
        (0..self.n).map(|i| self.stabilizer(i)).collect()
    }

    /// `dst <- dst · src`. Only meaningful up to a factor of ±i when the rows
    /// anticommute, which happens only for destabilizer updates where the sign
    /// is irrelevant.
    fn row_mul(&mut self, dst: usize, src: usize) {
        let w = self.words;
        let k = product_phase(
            &self.x[dst * w..(dst + 1) * w],
            &self.z[dst * w..(dst + 1) * w],
            self.neg[dst],
            &self.x[src * w..(src + 1) * w],
            &self.z[src * w..(src + 1) * w],
            self.neg[src],
        );
        self.neg[dst] = k & 2 == 2;
        for k in 0..w {
            self.x[dst * w + k] ^= self.x[src * w + k];
            self.z[dst * w + k] ^= self.z[src * w + k];
        }
    }

    fn copy_row(&mut self, dst: usize, src: usize) {
        let w = self.words;
        self.x.copy_within(src * w..(src + 1) * w, dst * w);
        self.z.copy_within(src * w..(src + 1) * w, dst * w);
        self.neg[dst] = self.neg[src];
    }

    fn clear_row(&mut self, r: usize) {
        self.x_row_mut(r).fill(0);
        self.z_row_mut(r).fill(0);
        self.neg[r] = false;
    }

    /// Conjugate the state by `gate`.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.check(self.n)?;
        let rows = 2 * self.n;
        let w = self.words;
        match *gate {
            Gate::H(q) => {
                let (wi, m) = (q >> 6, 1u64 << (q & 63));
                for r in 0..rows {
                    let (x, z) = (self.x[r * w + wi], self.z[r * w + wi]);
                    if x & z & m != 0 {
                        self.neg[r] ^= true;
                    }
                    self.x[r * w + wi] = (x & !m) | (z & m);
                    self.z[r * w + wi] = (z & !m) | (x & m);
                }
            }
            Gate::S(q) => {
                let (wi, m) = (q >> 6, 1u64 << (q & 63));
                for r in 0..rows {
                    let x = self.x[r * w + wi] & m;
                    if x & self.z[r * w + wi] != 0 {
                        self.neg[r] ^= true;
                    }
                    self.z[r * w + wi] ^= x;
                }
            }
            Gate::SDag(q) => {
                let (wi, m) = (q >> 6, 1u64 << (q & 63));
                for r in 0..rows {
                    let x = self.x[r * w + wi] & m;
                    if x != 0 && self.z[r * w + wi] & m == 0 {
                        self.neg[r] ^= true;
                    }
                    self.z[r * w + wi] ^= x;
                }
            }
            Gate::X(q) => {
                for r in 0..rows {
                    self.neg[r] ^= bits::get(self.z_row(r), q);
                }
            }
            Gate::Z(q) => {
                for r in 0..rows {
                    self.neg[r] ^= bits::get(self.x_row(r), q);
                }
            }
            Gate::Cnot(a, b) => {
                for r in 0..rows {
                    let (xr, zr) = (&mut self.x[r * w..(r + 1) * w], &mut self.z[r * w..(r + 1) * w]);
                    let (xa, za) = (bits::get(xr, a), bits::get(zr, a));
                    let (xb, zb) = (bits::get(xr, b), bits::get(zr, b));
                    if xa && zb && (xb == za) {
                        self.neg[r] ^= true;
                    }
                    bits::set(xr, b, xb ^ xa);
                    bits::set(zr, a, za ^ zb);
                }
            }
            Gate::Cz(a, b) => {
                for r in 0..rows {
                    let (xr, zr) = (&mut self.x[r * w..(r + 1) * w], &mut self.z[r * w..(r + 1) * w]);
                    let (xa, za) = (bits::get(xr, a), bits::get(zr, a));
                    let (xb, zb) = (bits::get(xr, b), bits::get(zr, b));
                    if xa && xb && (za ^ zb) {
                        self.neg[r] ^= true;
                    }
                    bits::set(zr, a, za ^ xb);
                    bits::set(zr, b, zb ^ xa);
                }
            }
            Gate::Clifford(ref c, a, b) => {
                let (wa, ma, sa) = (a >> 6, 1u64 << (a & 63), a & 63);
                let (wb, mb, sb) = (b >> 6, 1u64 << (b & 63), b & 63);
                for r in 0..rows {
                    let base = r * w;
                    let local = (((self.x[base + wa] >> sa) & 1)
                        | (((self.z[base + wa] >> sa) & 1) << 1)
                        | (((self.x[base + wb] >> sb) & 1) << 2)
                        | (((self.z[base + wb] >> sb) & 1) << 3)) as u8;
                    if local == 0 {
                        continue;
                    }
                    let (img, flip) = c.conjugate(local);
                    self.neg[r] ^= flip;
                    let put = |word: &mut u64, m: u64, on: bool| {
                        if on {
                            *word |= m
                        } else {
                            *word &= !m
                        }
                    };
                    put(&mut self.x[base + wa], ma, img & 1 != 0);
                    put(&mut self.z[base + wa], ma, img & 2 != 0);
                    put(&mut self.x[base + wb], mb, img & 4 != 0);
                    put(&mut self.z[base + wb], mb, img & 8 != 0);
                }
            }
        }
        Ok(())
    }

    pub fn apply_all<'a>(&mut self, gates: impl IntoIterator<Item = &'a Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.apply(g))
    }

    /// Projective Z measurement with the Born-rule outcome drawn from `rng`.
    pub fn measure_z<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) -> Result<Measurement> {
        self.measure_z_with(q, || rng.random::<bool>())
    }

    /// Projective Z measurement; `choose` supplies the outcome bit when the
    /// result is not determined by the state. It is not called otherwise.
    pub fn measure_z_with(&mut self, q: usize, choose: impl FnOnce() -> bool) -> Result<Measurement> {
        check_index(q, self.n)?;
        let n = self.n;
        let pivot = (n..2 * n).find(|&r| bits::get(self.x_row(r), q));
        match pivot {
            Some(p) => {
                for r in 0..2 * n {
                    if r != p && bits::get(self.x_row(r), q) {
                        self.row_mul(r, p);
                    }
                }
                self.copy_row(p - n, p);
                self.clear_row(p);
                let outcome = choose();
                bits::set(self.z_row_mut(p), q, true);
                self.neg[p] = outcome;
                Ok(Measurement { outcome, deterministic: false })
            }
            None => {
                let scratch = 2 * n;
                self.clear_row(scratch);
                for i in 0..n {
                    if bits::get(self.x_row(i), q) {
                        self.row_mul(scratch, n + i);
                    }
                }
                Ok(Measurement { outcome: self.neg[scratch], deterministic: true })
            }
        }
    }

    /// Expectation value of a Pauli string: ±1 when ±P is a stabilizer, else 0.
    pub fn pauli_expectation(&mut self, p: &PauliString) -> Result<i8> {
        if p.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: p.len() });
        }
        let mut px = vec![0u64; self.words];
        let mut pz = vec![0u64; self.words];
        for (q, op) in p.ops.iter().enumerate() {
            let (x, z) = op.bits();
            bits::set(&mut px, q, x);
            bits::set(&mut pz, q, z);
        }
        let n = self.n;
        if (n..2 * n).any(|r| anticommutes(self.x_row(r), self.z_row(r), &px, &pz)) {
            return Ok(0);
        }
        let scratch = 2 * n;
        self.clear_row(scratch);
        for i in 0..n {
            if anticommutes(self.x_row(i), self.z_row(i), &px, &pz) {
                self.row_mul(scratch, n + i);
            }
        }
        debug_assert!(self.x_row(scratch) == px.as_slice() && self.z_row(scratch) == pz.as_slice());
        let stab_sign: i8 = if self.neg[scratch] { -1 } else { 1 };
        Ok(stab_sign * p.sign())
    }

    /// Two-qubit reduced state of qubits `(a, b)` rebuilt from the fifteen
    /// Pauli correlators; `a` is the more significant tensor factor.
    pub fn reduced_density_2q(&mut self, a: usize, b: usize) -> Result<TwoQubitDensity> {
        check_index(a, self.n)?;
        check_index(b, self.n)?;
        if a == b {
            return Err(Error::SameQubit(a));
        }
        let mut g = [[0.0; 4]; 4];
        for (i, pa) in Pauli::ALL.iter().enumerate() {
            for (j, pb) in Pauli::ALL.iter().enumerate() {
                g[i][j] = self.pauli_expectation(&PauliString::two(self.n, a, *pa, b, *pb))? as f64;
            }
        }
        Ok(TwoQubitDensity::from_correlators(&g))
    }

    /// Von Neumann entropy (in bits) of `region`, which for a stabilizer
    /// state is the rank of the generators restricted to the region minus
    /// its size.
    pub fn entanglement_entropy(&self, region: &[usize]) -> Result<usize> {
        for &q in region {
            check_index(q, self.n)?;
        }
        let k = region.len();
        let mut m = BitMatrix::zeros(self.n, 2 * k);
        for i in 0..self.n {
            let r = self.n + i;
            for (c, &q) in region.iter().enumerate() {
                m.set(i, c, bits::get(self.x_row(r), q));
                m.set(i, k + c, bits::get(self.z_row(r), q));
            }
        }
        Ok(m.rank() - k)
    }

    /// Stabilizer block as a binary `n × 2n` matrix `[X | Z]` plus signs.
    pub fn stabilizer_matrix(&self) -> (BitMatrix, Vec<bool>) {
        let n = self.n;
        let mut m = BitMatrix::zeros(n, 2 * n);
        for i in 0..n {
            let r = n + i;
            for q in bits::ones(self.x_row(r)) {
                m.set(i, q, true);
            }
            for q in bits::ones(self.z_row(r)) {
                m.set(i, n + q, true);
            }
        }
        (m, self.neg[n..2 * n].to_vec())
    }

    /// Check the structural invariants: commuting independent stabilizers and
    /// a destabilizer set paired with them.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        for i in 0..2 * n {
            for j in 0..i {
                let anti = anticommutes(self.x_row(i), self.z_row(i), self.x_row(j), self.z_row(j));
                let expected = i >= n && j < n && i - n == j;
                if anti != expected {
                    return Err(Error::MalformedTableau(if i >= n && j >= n {
                        "stabilizer generators do not commute"
                    } else {
                        "destabilizers are not paired with stabilizers"
                    }));
                }
            }
        }
        if self.stabilizer_matrix().0.rank() != n {
            return Err(Error::MalformedTableau("stabilizer generators are dependent"));
        }
        Ok(())
    }
}
