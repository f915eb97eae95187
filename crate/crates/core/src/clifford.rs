//! The two-qubit Clifford group modulo global phase: 720 binary symplectic
//! maps times 16 sign choices.
//!
//! Local two-qubit Paulis are packed into four bits `xa | za<<1 | xb<<2 | zb<<3`
//! (Hermitian convention, `Y = iXZ`). An element stores the images of the
//! generators `X_a, Z_a, X_b, Z_b` together with a precomputed table giving the
//! image and sign flip of every one of the 16 local Paulis, so conjugating a
//! tableau row is a single lookup.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use rand::Rng;

/// Order of the two-qubit Clifford group up to global phase.
pub const GROUP_ORDER: usize = 11_520;
/// Order of Sp(4, 2).
pub const SYMPLECTIC_ORDER: usize = 720;

const X_MASK: u8 = 0b0101;

#[inline]
fn weight(v: u8) -> u32 {
    v.count_ones()
}

/// Symplectic form on packed two-qubit Paulis (1 = anticommute).
#[inline]
pub fn symplectic_form(p: u8, q: u8) -> bool {
    let (px, pz) = (p & X_MASK, (p >> 1) & X_MASK);
    let (qx, qz) = (q & X_MASK, (q >> 1) & X_MASK);
    (weight(px & qz) + weight(pz & qx)) % 2 == 1
}

/// Multiply Hermitian local Paulis `i^{k1} P1 · i^{k2} P2` in the XZ form,
/// returning `(bits, k)` of the product written as `i^k` times a Hermitian Pauli.
#[inline]
fn local_product(p1: u8, k1: u32, p2: u8, k2: u32) -> (u8, u32) {
    let x1 = p1 & X_MASK;
    let z1 = (p1 >> 1) & X_MASK;
    let x2 = p2 & X_MASK;
    let z2 = (p2 >> 1) & X_MASK;
    let out = p1 ^ p2;
    let ox = out & X_MASK;
    let oz = (out >> 1) & X_MASK;
    let k = k1 + weight(x1 & z1) + k2 + weight(x2 & z2) + 2 * weight(z1 & x2) + 3 * weight(ox & oz);
    (out, k & 3)
}

/// Apply a linear map given by generator images to packed bits.
#[inline]
fn apply_linear(images: &[u8; 4], p: u8) -> u8 {
    (0..4).filter(|g| (p >> g) & 1 == 1).fold(0, |acc, g| acc ^ images[g])
}

/// One element of the two-qubit Clifford group (modulo global phase).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CliffordTwoQubit {
    /// Images of `X_a, Z_a, X_b, Z_b`; the columns of the symplectic matrix.
    images: [u8; 4],
    /// Bit `g` set means the image of generator `g` carries a minus sign.
    signs: u8,
    table: [u8; 16],
    flips: u16,
}

impl CliffordTwoQubit {
    /// Build an element from generator images and signs. Returns `None` if the
    /// images do not satisfy the symplectic condition.
    pub fn new(images: [u8; 4], signs: u8) -> Option<Self> {
        if !is_symplectic(&images) || signs > 0xf {
            return None;
        }
        let mut table = [0u8; 16];
        let mut flips = 0u16;
        for p in 0u8..16 {
            // P = i^{|x&z|} X_a^xa Z_a^za X_b^xb Z_b^zb; conjugation maps each
            // factor to its signed image.
            let px = p & X_MASK;
            let pz = (p >> 1) & X_MASK;
            let mut acc = (0u8, weight(px & pz) & 3);
            for (g, &image) in images.iter().enumerate() {
                if (p >> g) & 1 == 1 {
                    let s = 2 * ((signs >> g) & 1) as u32;
                    acc = local_product(acc.0, acc.1, image, s);
                }
            }
            debug_assert!(acc.1.is_multiple_of(2), "image of a Hermitian Pauli must be Hermitian");
            table[p as usize] = acc.0;
            if acc.1 == 2 {
                flips |= 1 << p;
            }
        }
        Some(Self { images, signs, table, flips })
    }

    pub fn identity() -> Self {
        Self::new([0b0001, 0b0010, 0b0100, 0b1000], 0).expect("identity is symplectic")
    }

    pub fn images(&self) -> [u8; 4] {
        self.images
    }

    pub fn signs(&self) -> u8 {
        self.signs
    }

    /// The 4×4 binary symplectic matrix; column `g` is the image of generator
    /// `g`, row `k` the bit `k` of the packed encoding.
    pub fn symplectic_matrix(&self) -> [[bool; 4]; 4] {
        let mut m = [[false; 4]; 4];
        for (g, img) in self.images.iter().enumerate() {
            for (k, row) in m.iter_mut().enumerate() {
                row[g] = (img >> k) & 1 == 1;
            }
        }
        m
    }

    /// Conjugate a packed local Pauli, returning its image and whether the sign
    /// flips.
    #[inline]
    pub fn conjugate(&self, p: u8) -> (u8, bool) {
        (self.table[p as usize & 15], (self.flips >> (p & 15)) & 1 == 1)
    }

    /// Dense index in `0..GROUP_ORDER` within the canonical enumeration.
    pub fn index(&self) -> usize {
        let group = group();
        let s = group
            .symplectic
            .binary_search(&self.images)
            .expect("element of Sp(4,2)");
        s * 16 + self.signs as usize
    }

    pub fn from_index(index: usize) -> Self {
        group().elements[index % GROUP_ORDER]
    }

    /// Uniformly random group element.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_index(rng.random_range(0..GROUP_ORDER))
    }
}

/// Sample a uniformly random two-qubit Clifford.
pub fn sample_two_qubit_clifford<R: Rng + ?Sized>(rng: &mut R) -> CliffordTwoQubit {
    CliffordTwoQubit::sample(rng)
}

pub fn is_symplectic(images: &[u8; 4]) -> bool {
    (0..4).all(|i| {
        (0..4).all(|j| {
            let expected = i / 2 == j / 2 && i != j;
            symplectic_form(images[i], images[j]) == expected
        })
    })
}

struct Group {
    symplectic: Vec<[u8; 4]>,
    elements: Vec<CliffordTwoQubit>,
}

fn group() -> &'static Group {
    static GROUP: OnceLock<Group> = OnceLock::new();
    GROUP.get_or_init(|| {
        let symplectic = symplectic_closure();
        let elements = symplectic
            .iter()
            .flat_map(|im| (0..16).map(move |s| CliffordTwoQubit::new(*im, s).expect("symplectic")))
            .collect();
        Group { symplectic, elements }
    })
}

/// Generate Sp(4,2) as the closure of the H, S and CNOT symplectic maps.
fn symplectic_closure() -> Vec<[u8; 4]> {
    // Linear maps as generator images.
    let h_a = [0b0010, 0b0001, 0b0100, 0b1000];
    let h_b = [0b0001, 0b0010, 0b1000, 0b0100];
    let s_a = [0b0011, 0b0010, 0b0100, 0b1000];
    let s_b = [0b0001, 0b0010, 0b1100, 0b1000];
    // CNOT a -> b: X_a -> X_a X_b, Z_b -> Z_a Z_b.
    let cx = [0b0101, 0b0010, 0b0100, 0b1010];
    let gens = [h_a, h_b, s_a, s_b, cx];

    let identity = [0b0001, 0b0010, 0b0100, 0b1000];
    let mut seen = HashSet::from([identity]);
    let mut queue = VecDeque::from([identity]);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let next = [
                apply_linear(g, m[0]),
                apply_linear(g, m[1]),
                apply_linear(g, m[2]),
                apply_linear(g, m[3]),
            ];
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    let mut all: Vec<_> = seen.into_iter().collect();
    all.sort_unstable();
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_table_is_trivial() {
        let id = CliffordTwoQubit::identity();
        for p in 0..16 {
            assert_eq!(id.conjugate(p), (p, false));
        }
    }

    #[test]
    fn closure_has_symplectic_order() {
        assert_eq!(group().symplectic.len(), SYMPLECTIC_ORDER);
        assert_eq!(group().elements.len(), GROUP_ORDER);
    }

    #[test]
    fn index_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let c = CliffordTwoQubit::sample(&mut rng);
            assert_eq!(CliffordTwoQubit::from_index(c.index()), c);
        }
    }

    #[test]
    fn negative_signs_flip_generators() {
        // Z_a -> -Z_a is conjugation by X_a.
        let c = CliffordTwoQubit::new([0b0001, 0b0010, 0b0100, 0b1000], 0b0010).unwrap();
        assert_eq!(c.conjugate(0b0010), (0b0010, true));
        assert_eq!(c.conjugate(0b0001), (0b0001, false));
        // Y_a = i X_a Z_a picks up the flip from Z_a.
        assert_eq!(c.conjugate(0b0011), (0b0011, true));
    }

    #[test]
    fn rejects_non_symplectic_images() {
        assert!(CliffordTwoQubit::new([0b0001, 0b0001, 0b0100, 0b1000], 0).is_none());
    }
}
