//! Canonical basis blades encoded as bitmasks.
//!
//! Bit `i` of the mask set means the basis vector `e_{i+1}` is a factor of
//! the blade. Factors are always kept in ascending index order, so a mask
//! identifies exactly one canonical blade: `0b101` is `e13`, `0` is the
//! scalar unit. Reordering signs come from counting the transpositions
//! needed to merge two ascending factor lists.

use std::fmt;

/// Largest supported algebra dimension. The dense worst case is `2^12 = 4096`
/// blades, which keeps exhaustive small-dimension checks tractable.
pub const MAX_DIM: usize = 12;

/// A canonical basis blade of `⋀V`, encoded as a bitmask over basis vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BladeMask(pub u16);

impl BladeMask {
    /// The scalar unit blade (grade 0).
    pub const SCALAR: BladeMask = BladeMask(0);

    /// Blade for the single basis vector `e_index` (1-based).
    ///
    /// # Panics
    /// Panics if `index` is 0 or exceeds [`MAX_DIM`].
    pub fn basis_vector(index: usize) -> BladeMask {
        assert!(
            (1..=MAX_DIM).contains(&index),
            "basis vector index {index} out of range 1..={MAX_DIM}"
        );
        BladeMask(1 << (index - 1))
    }

    /// Blade from a list of 1-based vector indices. Indices may come in any
    /// order but must be distinct.
    ///
    /// # Panics
    /// Panics on out-of-range or repeated indices.
    pub fn from_indices(indices: &[usize]) -> BladeMask {
        let mut mask = 0u16;
        for &i in indices {
            let bit = BladeMask::basis_vector(i).0;
            assert!(mask & bit == 0, "repeated blade index {i}");
            mask |= bit;
        }
        BladeMask(mask)
    }

    /// Number of vector factors in the blade.
    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Whether the blade fits inside an algebra of the given dimension.
    pub fn fits_dim(self, dim: usize) -> bool {
        dim <= MAX_DIM && (self.0 as u32) < (1u32 << dim)
    }

    /// Ascending 1-based vector indices of the factors.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..MAX_DIM).filter_map(move |i| (mask >> i & 1 == 1).then_some(i + 1))
    }

    /// Canonical text label: `"1"` for the scalar blade, otherwise `"e"`
    /// followed by one character per factor index in ascending order.
    /// Indices 10, 11, 12 are written `a`, `b`, `c`.
    pub fn label(self) -> String {
        if self.0 == 0 {
            return "1".to_string();
        }
        let mut s = String::from("e");
        for i in self.indices() {
            s.push(index_char(i));
        }
        s
    }

    /// Parses a label produced by [`BladeMask::label`]. Returns `None` for
    /// malformed labels, out-of-range index characters, or non-ascending
    /// index order.
    pub fn parse_label(label: &str) -> Option<BladeMask> {
        if label == "1" {
            return Some(BladeMask::SCALAR);
        }
        let rest = label.strip_prefix('e')?;
        if rest.is_empty() {
            return None;
        }
        let mut mask = 0u16;
        let mut prev = 0usize;
        for ch in rest.chars() {
            let i = char_index(ch)?;
            if i <= prev {
                return None;
            }
            prev = i;
            mask |= 1 << (i - 1);
        }
        Some(BladeMask(mask))
    }
}

impl fmt::Display for BladeMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn index_char(i: usize) -> char {
    match i {
        1..=9 => char::from_digit(i as u32, 10).unwrap(),
        10 => 'a',
        11 => 'b',
        12 => 'c',
        _ => unreachable!("index {i} beyond MAX_DIM"),
    }
}

fn char_index(ch: char) -> Option<usize> {
    match ch {
        '1'..='9' => Some(ch as usize - '0' as usize),
        'a' => Some(10),
        'b' => Some(11),
        'c' => Some(12),
        _ => None,
    }
}

/// Reordering parity for multiplying two canonical blades.
///
/// Returns `(-1)^s` where `s` is the number of transpositions needed to merge
/// the concatenated factor list of `a` then `b` into ascending order. Shared
/// factors end up adjacent and contract to `+1` under the Euclidean metric,
/// contributing no extra sign.
pub fn canonical_sign(a: BladeMask, b: BladeMask) -> i32 {
    let mut rest = a.0 >> 1;
    let mut swaps = 0u32;
    while rest != 0 {
        swaps += (rest & b.0).count_ones();
        rest >>= 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
