//! Single-qubit Paulis, signed Pauli strings and the phase bookkeeping used
//! when multiplying packed Pauli rows.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// `(x, z)` bits in the Hermitian convention `Y = i X Z`.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A Hermitian Pauli operator `±P_0 ⊗ … ⊗ P_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub ops: Vec<Pauli>,
    pub negative: bool,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        Self { ops: vec![Pauli::I; n], negative: false }
    }

    /// Single-site operator `op` on qubit `q` of an `n`-qubit register.
    pub fn single(n: usize, q: usize, op: Pauli) -> Self {
        let mut s = Self::identity(n);
        s.ops[q] = op;
        s
    }

    pub fn two(n: usize, a: usize, pa: Pauli, b: usize, pb: Pauli) -> Self {
        let mut s = Self::identity(n);
        s.ops[a] = pa;
        s.ops[b] = pb;
        s
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    /// Enumerate all `4^n` unsigned Pauli strings on `n` qubits.
    pub fn all(n: usize) -> impl Iterator<Item = PauliString> {
        (0..1usize << (2 * n)).map(move |code| PauliString {
            ops: (0..n).map(|q| Pauli::ALL[(code >> (2 * q)) & 3]).collect(),
            negative: false,
        })
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let anti = self
            .ops
            .iter()
            .zip(&other.ops)
            .filter(|(a, b)| **a != Pauli::I && **b != Pauli::I && a != b)
            .count();
        anti % 2 == 0
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        for op in &self.ops {
            write!(f, "{}", op.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (negative, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let ops = body
            .chars()
            .map(|c| match c {
                'I' | '_' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                _ => Err(Error::InvalidConfig(format!("bad Pauli symbol {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { ops, negative })
    }
}

/// Phase exponent `k` (mod 4) such that the product of two Hermitian packed
/// Paulis `s1·P1 · s2·P2` equals `i^k` times the Hermitian Pauli with bits
/// `x1^x2, z1^z2`. `k` is even exactly when the two factors commute.
#[inline]
pub fn product_phase(
    x1: &[u64],
    z1: &[u64],
    neg1: bool,
    x2: &[u64],
    z2: &[u64],
    neg2: bool,
) -> u32 {
    // In the X^x Z^z form a Hermitian Pauli carries i^{|x&z|}; moving Z^z1
    // past X^x2 costs (-1)^{|z1&x2|}.
    let mut k = 2 * (neg1 as u32) + 2 * (neg2 as u32);
    for w in 0..x1.len() {
        let (a, b, c, d) = (x1[w], z1[w], x2[w], z2[w]);
        k += (a & b).count_ones() + (c & d).count_ones() + 2 * (b & c).count_ones();
        k += 3 * ((a ^ c) & (b ^ d)).count_ones();
    }
    k & 3
}

/// Symplectic inner product of two packed Paulis: `true` when they anticommute.
#[inline]
pub fn anticommutes(x1: &[u64], z1: &[u64], x2: &[u64], z2: &[u64]) -> bool {
    let mut acc = 0u32;
    for w in 0..x1.len() {
        acc += ((x1[w] & z2[w]) ^ (z1[w] & x2[w])).count_ones();
    }
    acc & 1 == 1
}
