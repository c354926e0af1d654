//! Combinatorics of the n-cube.
//!
//! Coordinates are numbered `1..=n`. A [`Vertex`] is packed into one `u64`
//! with coordinate `i` stored at bit `i - 1`, so dimensions up to
//! [`MAX_DIM`] are supported. The text form is a string of `'0'`/`'1'`
//! whose leftmost character is coordinate 1.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported cube dimension.
pub const MAX_DIM: usize = 63;

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    debug_assert!(n <= MAX_DIM);
    (1u64 << n) - 1
}

fn check_dim(n: usize) -> Result<()> {
    if n > MAX_DIM {
        return Err(Error::Dimension {
            dim: n,
            min: 0,
            max: MAX_DIM,
        });
    }
    Ok(())
}

/// A vertex of the n-cube, i.e. an element of `{0,1}^n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    bits: u64,
    dim: u8,
}

impl Vertex {
    /// Builds a vertex from a packed mask; bits above `n` must be clear.
    pub fn from_mask(n: usize, bits: u64) -> Result<Self> {
        check_dim(n)?;
        if bits & !full_mask(n) != 0 {
            let coord = 64 - bits.leading_zeros() as usize;
            return Err(Error::CoordOutOfRange { coord, dim: n });
        }
        Ok(Vertex { bits, dim: n as u8 })
    }

    #[inline]
    pub(crate) fn from_mask_unchecked(n: usize, bits: u64) -> Self {
        debug_assert!(n <= MAX_DIM && bits & !full_mask(n) == 0);
        Vertex { bits, dim: n as u8 }
    }

    pub fn zero(n: usize) -> Result<Self> {
        Vertex::from_mask(n, 0)
    }

    pub fn ones(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Vertex::from_mask_unchecked(n, full_mask(n)))
    }

    /// Builds a vertex from explicit 0/1 entries, entry 0 being coordinate 1.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        check_dim(bits.len())?;
        let mut mask = 0u64;
        for (k, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => mask |= 1 << k,
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "vertex entry {} is {b}, expected 0 or 1",
                        k + 1
                    )))
                }
            }
        }
        Ok(Vertex::from_mask_unchecked(bits.len(), mask))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.bits
    }

    /// Entry at 1-based coordinate `i`.
    pub fn get(&self, i: usize) -> Result<bool> {
        self.check_coord(i)?;
        Ok(self.bits >> (i - 1) & 1 == 1)
    }

    #[inline]
    pub(crate) fn bit(&self, i: usize) -> bool {
        self.bits >> (i - 1) & 1 == 1
    }

    /// Number of 1-entries (Hamming distance from the all-zero vertex).
    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn hamming(&self, other: &Vertex) -> usize {
        (self.bits ^ other.bits).count_ones() as usize
    }

    /// The set `{j : v_j = 1}`.
    pub fn ones_set(&self) -> CoordSet {
        CoordSet { mask: self.bits }
    }

    /// Flips every coordinate in `set`.
    pub fn flip(&self, set: CoordSet) -> Result<Self> {
        set.check_within(self.dim())?;
        Ok(self.xor(set))
    }

    /// Flips a single coordinate.
    pub fn flip_coord(&self, i: usize) -> Result<Self> {
        self.check_coord(i)?;
        Ok(Vertex::from_mask_unchecked(
            self.dim(),
            self.bits ^ (1 << (i - 1)),
        ))
    }

    #[inline]
    pub(crate) fn xor(&self, set: CoordSet) -> Self {
        debug_assert!(set.mask & !full_mask(self.dim()) == 0);
        Vertex::from_mask_unchecked(self.dim(), self.bits ^ set.mask)
    }

    pub fn is_all_ones(&self) -> bool {
        self.bits == full_mask(self.dim())
    }

    fn check_coord(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.dim() {
            return Err(Error::CoordOutOfRange {
                coord: i,
                dim: self.dim(),
            });
        }
        Ok(())
    }

    /// All `2^n` vertices, ordered by packed mask.
    pub fn all(n: usize) -> impl Iterator<Item = Vertex> {
        assert!(n <= MAX_DIM);
        (0..=full_mask(n)).map(move |m| Vertex::from_mask_unchecked(n, m))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.dim() {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vertex({self})")
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::parse(1, 1, "empty vertex bitstring"));
        }
        let mut bits = Vec::with_capacity(s.len());
        for (k, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => {
                    return Err(Error::parse(
                        1,
                        k + 1,
                        format!("unexpected character {c:?} in vertex bitstring"),
                    ))
                }
            }
        }
        Vertex::from_bits(&bits)
    }
}

impl serde::Serialize for Vertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A subset of coordinates `{1..n}`, packed like [`Vertex`].
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoordSet {
    mask: u64,
}

impl CoordSet {
    pub const fn empty() -> Self {
        CoordSet { mask: 0 }
    }

    /// `{1..n}`.
    pub fn full(n: usize) -> Self {
        CoordSet {
            mask: full_mask(n),
        }
    }

    pub fn singleton(i: usize) -> Result<Self> {
        CoordSet::from_coords([i])
    }

    pub fn from_coords<I: IntoIterator<Item = usize>>(coords: I) -> Result<Self> {
        let mut mask = 0u64;
        for i in coords {
            if i == 0 || i > MAX_DIM {
                return Err(Error::CoordOutOfRange {
                    coord: i,
                    dim: MAX_DIM,
                });
            }
            let bit = 1 << (i - 1);
            if mask & bit != 0 {
                return Err(Error::InvalidArgument(format!(
                    "duplicate coordinate {i}"
                )));
            }
            mask |= bit;
        }
        Ok(CoordSet { mask })
    }

    pub fn from_mask(mask: u64) -> Self {
        CoordSet {
            mask: mask & full_mask(MAX_DIM),
        }
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn contains(&self, i: usize) -> bool {
        (1..=MAX_DIM).contains(&i) && self.mask >> (i - 1) & 1 == 1
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let mut rest = self.mask;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i + 1)
        })
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn union(&self, other: CoordSet) -> CoordSet {
        CoordSet {
            mask: self.mask | other.mask,
        }
    }

    pub fn symmetric_difference(&self, other: CoordSet) -> CoordSet {
        CoordSet {
            mask: self.mask ^ other.mask,
        }
    }

    pub fn is_subset(&self, other: CoordSet) -> bool {
        self.mask & !other.mask == 0
    }

    /// Fails if any member exceeds `n`.
    pub fn check_within(&self, n: usize) -> Result<()> {
        if n <= MAX_DIM && self.mask & !full_mask(n) != 0 {
            let coord = 64 - self.mask.leading_zeros() as usize;
            return Err(Error::CoordOutOfRange { coord, dim: n });
        }
        Ok(())
    }

    /// Parses a comma-separated coordinate list such as `"1,3"`; the empty
    /// string is the empty set.
    pub fn parse_list(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(CoordSet::empty());
        }
        let mut coords = Vec::new();
        let mut column = 1;
        for part in s.split(',') {
            let i = part.trim().parse::<usize>().map_err(|e| {
                Error::parse(1, column, format!("bad coordinate {part:?}: {e}"))
            })?;
            coords.push(i);
            column += part.len() + 1;
        }
        CoordSet::from_coords(coords)
    }
}

impl fmt::Display for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoordSet{self}")
    }
}

impl serde::Serialize for CoordSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// The subcube `{base ⊕ I : I ⊆ free}`.
///
/// The base is normalized so that its free coordinates are 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subcube {
    base: Vertex,
    free: CoordSet,
}

impl Subcube {
    pub fn new(base: Vertex, free: CoordSet) -> Result<Self> {
        free.check_within(base.dim())?;
        Ok(Subcube {
            base: Vertex::from_mask_unchecked(base.dim(), base.mask() & !free.mask()),
            free,
        })
    }

    pub fn full(n: usize) -> Result<Self> {
        Subcube::new(Vertex::zero(n)?, CoordSet::full(n))
    }

    pub fn base(&self) -> Vertex {
        self.base
    }

    pub fn free(&self) -> CoordSet {
        self.free
    }

    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        self.base.dim()
    }

    /// Dimension of the subcube itself.
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.dim() == self.base.dim() && (v.mask() ^ self.base.mask()) & !self.free.mask() == 0
    }

    /// All `2^dim` vertices of the subcube.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        let free = self.free.mask();
        let base = self.base;
        let mut sub = 0u64;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let v = Vertex::from_mask_unchecked(base.dim(), base.mask() | sub);
            sub = sub.wrapping_sub(free) & free;
            done = sub == 0;
            Some(v)
        })
    }
}

impl fmt::Display for Subcube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.base.dim();
        for i in 1..=n {
            let c = if self.free.contains(i) {
                '*'
            } else if self.base.bit(i) {
                '1'
            } else {
                '0'
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Subcube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subcube({self})")
    }
}

impl serde::Serialize for Subcube {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Subcube", 2)?;
        st.serialize_field("base", &self.base)?;
        st.serialize_field("free", &self.free)?;
        st.end()
    }
}

/// Iterates over the submasks of `mask` in increasing order, starting at 0.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut sub = 0u64;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = sub;
        sub = sub.wrapping_sub(mask) & mask;
        done = sub == 0;
        Some(cur)
    })
}

/// Every subcube of the n-cube exactly once: `3^n` in total.
///
/// Ordered by free set, then by base.
pub fn enumerate_subcubes(n: usize) -> Result<impl Iterator<Item = Subcube>> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::Dimension {
            dim: n,
            min: 1,
            max: MAX_DIM,
        });
    }
    let all = full_mask(n);
    Ok((0..=all).flat_map(move |free| {
        submasks(all & !free).map(move |base| Subcube {
            base: Vertex::from_mask_unchecked(n, base),
            free: CoordSet { mask: free },
        })
    }))
}

#[inline]
pub(crate) fn rotate_mask(mask: u64, n: usize, s: usize) -> u64 {
    if n == 0 {
        return mask;
    }
    let s = s % n;
    if s == 0 {
        return mask;
    }
    ((mask << s) | (mask >> (n - s))) & full_mask(n)
}

/// Moves coordinate `j` to coordinate `((j + s - 1) mod n) + 1`.
pub fn cyclic_shift(v: Vertex, s: i64) -> Vertex {
    let n = v.dim();
    if n == 0 {
        return v;
    }
    let s = s.rem_euclid(n as i64) as usize;
    Vertex::from_mask_unchecked(n, rotate_mask(v.mask(), n, s))
}
