//! Cube orientations accessed through a vertex-evaluation oracle.
//!
//! An [`Outmap`] records, for each coordinate `i`, whether the edge
//! `{v, v ⊕ i}` leaves `v` (`-`) or enters it (`+`). Oracles implement
//! [`Orientation`]; a [`UsoTable`] is the fully materialized form used by
//! the checkers in [`crate::verify`].

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::cube::{full_mask, rotate_mask, CoordSet, Subcube, Vertex, MAX_DIM};
use crate::error::{Error, Result};
use crate::exact::{rat, RatMatrix};
use crate::lcp::LcpInstance;

/// Largest dimension that can be materialized as a [`UsoTable`].
pub const TABLE_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    /// Edge oriented away from the vertex.
    Minus,
    /// Edge oriented towards the vertex.
    Plus,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }
}

/// Orientation of the `n` edges at one vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Outmap {
    minus: u64,
    dim: u8,
}

impl Outmap {
    /// `minus` holds the outgoing coordinates, bit `i - 1` for coordinate `i`.
    pub fn from_minus(n: usize, minus: CoordSet) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::Dimension {
                dim: n,
                min: 0,
                max: MAX_DIM,
            });
        }
        minus.check_within(n)?;
        Ok(Outmap {
            minus: minus.mask(),
            dim: n as u8,
        })
    }

    #[inline]
    pub(crate) fn from_mask_unchecked(n: usize, minus: u64) -> Self {
        debug_assert!(minus & !full_mask(n) == 0);
        Outmap {
            minus,
            dim: n as u8,
        }
    }

    pub fn from_signs(signs: &[Sign]) -> Result<Self> {
        let mask = signs
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Sign::Minus)
            .fold(0u64, |m, (k, _)| m | 1 << k);
        Outmap::from_minus(signs.len(), CoordSet::from_mask(mask))
    }

    /// All `+`: the outmap of a sink.
    pub fn sink(n: usize) -> Self {
        Outmap::from_mask_unchecked(n, 0)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    /// The outgoing coordinates.
    #[inline]
    pub fn outgoing(&self) -> CoordSet {
        CoordSet::from_mask(self.minus)
    }

    #[inline]
    pub(crate) fn minus_mask(&self) -> u64 {
        self.minus
    }

    pub fn sign(&self, i: usize) -> Result<Sign> {
        if i == 0 || i > self.dim() {
            return Err(Error::CoordOutOfRange {
                coord: i,
                dim: self.dim(),
            });
        }
        Ok(self.sign_unchecked(i))
    }

    #[inline]
    pub(crate) fn sign_unchecked(&self, i: usize) -> Sign {
        if self.minus >> (i - 1) & 1 == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_sink(&self) -> bool {
        self.minus == 0
    }

    pub fn is_source(&self) -> bool {
        self.minus == full_mask(self.dim())
    }

    pub fn outdegree(&self) -> usize {
        self.minus.count_ones() as usize
    }

    /// Reverses the signs at the coordinates in `set`.
    pub fn reversed(&self, set: CoordSet) -> Outmap {
        Outmap::from_mask_unchecked(self.dim(), (self.minus ^ set.mask()) & full_mask(self.dim()))
    }
}

impl fmt::Display for Outmap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.dim() {
            write!(f, "{}", self.sign_unchecked(i).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Outmap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Outmap({self})")
    }
}

impl FromStr for Outmap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut signs = Vec::with_capacity(s.len());
        for (k, c) in s.chars().enumerate() {
            signs.push(match c {
                '-' => Sign::Minus,
                '+' => Sign::Plus,
                _ => {
                    return Err(Error::parse(
                        1,
                        k + 1,
                        format!("unexpected character {c:?} in sign string"),
                    ))
                }
            });
        }
        Outmap::from_signs(&signs)
    }
}

impl serde::Serialize for Outmap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A vertex-evaluation oracle `v ↦ Φ(v)`.
///
/// Edge consistency (`Φ(v)_i = -` iff `Φ(v ⊕ i)_i = +`) is not assumed;
/// [`tabulate`] checks it.
pub trait Orientation: Send + Sync {
    fn dim(&self) -> usize;

    fn outmap(&self, v: Vertex) -> Result<Outmap>;
}

impl<T: Orientation + ?Sized> Orientation for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn outmap(&self, v: Vertex) -> Result<Outmap> {
        (**self).outmap(v)
    }
}

impl<T: Orientation + ?Sized> Orientation for Box<T> {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn outmap(&self, v: Vertex) -> Result<Outmap> {
        (**self).outmap(v)
    }
}

impl<T: Orientation + ?Sized> Orientation for Arc<T> {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn outmap(&self, v: Vertex) -> Result<Outmap> {
        (**self).outmap(v)
    }
}

fn check_vertex(o: &(impl Orientation + ?Sized), v: Vertex) -> Result<()> {
    if v.dim() != o.dim() {
        return Err(Error::DimensionMismatch {
            expected: o.dim(),
            found: v.dim(),
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// P-LCP induced orientation

/// Outmap of the orientation induced by `inst` at `v`: sign `i` is `-`
/// iff `(A_{B(v)}^{-1} q)_i < 0`.
pub fn plcp_outmap(inst: &LcpInstance, v: Vertex) -> Result<Outmap> {
    let n = inst.n();
    if v.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.dim(),
        });
    }
    let basis = v.ones_set();
    let x = inst.basis_solution(basis)?;
    let mut minus = 0u64;
    for (k, xk) in x.iter().enumerate() {
        if xk.is_zero() {
            return Err(Error::Degenerate {
                basis,
                coord: k + 1,
            });
        }
        if xk.is_negative() {
            minus |= 1 << k;
        }
    }
    Ok(Outmap::from_mask_unchecked(n, minus))
}

/// Oracle backed by exact basis solves.
#[derive(Clone, Debug)]
pub struct PlcpOracle {
    inst: LcpInstance,
}

impl PlcpOracle {
    pub fn new(inst: LcpInstance) -> Self {
        PlcpOracle { inst }
    }

    pub fn instance(&self) -> &LcpInstance {
        &self.inst
    }
}

impl Orientation for PlcpOracle {
    fn dim(&self) -> usize {
        self.inst.n()
    }

    fn outmap(&self, v: Vertex) -> Result<Outmap> {
        plcp_outmap(&self.inst, v)
    }
}

// ---------------------------------------------------------------------------
// Morris family

fn check_morris_dim(n: usize) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Parity(n));
    }
    if n > MAX_DIM {
        return Err(Error::Dimension {
            dim: n,
            min: 3,
            max: MAX_DIM,
        });
    }
    Ok(())
}

/// `M` with 1 on the diagonal, 2 on the superdiagonal and in the
/// bottom-left corner; `q = -1`. A P-matrix only for odd `n`.
pub fn morris_instance(n: usize) -> Result<LcpInstance> {
    check_morris_dim(n)?;
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = rat(1);
        m[(i, (i + 1) % n)] = rat(2);
    }
    LcpInstance::new(m, vec![rat(-1); n])
}

/// Runs the two-state Morris transducer on `v`, starting to the left of the
/// zero at coordinate `start` and reading right to left with wrap-around.
///
/// `(S,1) → T/+`, `(T,1) → S/-`, `(S,0) → S/-`, `(T,0) → S/+`.
pub fn morris_outmap_from(n: usize, v: Vertex, start: usize) -> Result<Outmap> {
    check_morris_dim(n)?;
    if v.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.dim(),
        });
    }
    if start == 0 || start > n || v.bit(start) {
        return Err(Error::InvalidArgument(format!(
            "transducer start {start} is not a zero coordinate of {v}"
        )));
    }
    Ok(run_transducer(n, v.mask(), start))
}

#[inline]
fn run_transducer(n: usize, bits: u64, start: usize) -> Outmap {
    let mut in_t = false;
    let mut minus = 0u64;
    // 0-based position of coordinate `start - 1`, i.e. the first one read
    let mut pos = if start == 1 { n - 1 } else { start - 2 };
    for _ in 0..n {
        let bit = bits >> pos & 1 == 1;
        let emit_minus = match (in_t, bit) {
            (false, true) => {
                in_t = true;
                false
            }
            (true, true) => {
                in_t = false;
                true
            }
            (false, false) => true,
            (true, false) => {
                in_t = false;
                false
            }
        };
        if emit_minus {
            minus |= 1 << pos;
        }
        pos = if pos == 0 { n - 1 } else { pos - 1 };
    }
    Outmap::from_mask_unchecked(n, minus)
}

/// Morris orientation at `v`, generated by the transducer. The all-ones
/// vertex is the sink.
pub fn morris_outmap(n: usize, v: Vertex) -> Result<Outmap> {
    check_morris_dim(n)?;
    if v.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.dim(),
        });
    }
    Ok(morris_fast(n, v.mask()))
}

#[inline]
pub(crate) fn morris_fast(n: usize, bits: u64) -> Outmap {
    let zeros = !bits & full_mask(n);
    if zeros == 0 {
        return Outmap::sink(n);
    }
    run_transducer(n, bits, zeros.trailing_zeros() as usize + 1)
}

/// The Morris orientation as an oracle.
#[derive(Clone, Copy, Debug)]
pub struct MorrisOracle {
    n: usize,
}

impl MorrisOracle {
    pub fn new(n: usize) -> Result<Self> {
        check_morris_dim(n)?;
        Ok(MorrisOracle { n })
    }
}

impl Orientation for MorrisOracle {
    fn dim(&self) -> usize {
        self.n
    }

    fn outmap(&self, v: Vertex) -> Result<Outmap> {
        check_vertex(self, v)?;
        Ok(morris_fast(self.n, v.mask()))
    }
}

// ---------------------------------------------------------------------------
// Uniform orientation and combinators

/// All edges point from 0 to 1: sign `i` is `-` iff `v_i = 0`.
#[derive(Clone, Copy, Debug)]
pub struct Uniform {
    n: usize,
}

pub fn uniform(n: usize) -> Result<Uniform> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::Dimension {
            dim: n,
            min: 1,
            max: MAX_DIM,
        });
    }
    Ok(Uniform { n })
}

impl Orientation for Uniform {
    fn dim(&self) -> usize {
        self.n
    }

    fn outmap(&self, v: Vertex) -> Result<Outmap> {
        check_vertex(self, v)?;
        Ok(Outmap::from_mask_unchecked(self.n, !v.mask() & full_mask(self.n)))
    }
}

/// `Φ^(F)`: edges in the coordinates of `F` reversed.
#[derive(Clone, Debug)]
pub struct Reoriented<O> {
    inner: O,
    flips: CoordSet,
}

pub fn reorient<O: Orientation>(o: O, flips: CoordSet) -> Result<Reoriented<O>> {
    flips.check_within(o.dim())?;
    Ok(Reoriented { inner: o, flips })
}

impl<O: Orientation> Orientation for Reoriented<O> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn outmap(&self, v: Vertex) -> Result<Outmap> {
        Ok(self.inner.outmap(v)?.reversed(self.flips))
    }
}

/// The orientation induced on a subcube, re-indexed over its free
/// coordinates in increasing order.
#[derive(Clone, Debug)]
pub struct Restricted<O> {
    inner: O,
    cube: Subcube,
    coords: Vec<usize>,
}

pub fn restrict<O: Orientation>(o: O, cube: Subcube) -> Result<Restricted<O>> {
    if cube.ambient_dim() != o.dim() {
        return Err(Error::DimensionMismatch {
            expected: o.dim(),
            found: cube.ambient_dim(),
        });
    }
    let coords = cube.free().iter().collect();
    Ok(Restricted {
        inner: o,
        cube,
        coords,
    })
}

impl<O> Restricted<O> {
    /// The parent-cube vertex corresponding to a local vertex.
    pub fn lift(&self, local: Vertex) -> Vertex {
        let mut bits = self.cube.base().mask();
        for (k, &c) in self.coords.iter().enumerate() {
            if local.mask() >> k & 1 == 1 {
                bits |= 1 << (c - 1);
            }
        }
        Vertex::from_mask_unchecked(self.cube.ambient_dim(), bits)
    }

    pub fn subcube(&self) -> Subcube {
        self.cube
    }
}

impl<O: Orientation> Orientation for Restricted<O> {
    fn dim(&self) -> usize {
        self.coords.len()
    }

    fn outmap(&self, v: Vertex) -> Result<Outmap> {
        check_vertex(self, v)?;
        let parent = self.inner.outmap(self.lift(v))?;
        let minus = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| parent.minus >> (c - 1) & 1 == 1)
            .fold(0u64, |m, (k, _)| m | 1 << k);
        Ok(Outmap::from_mask_unchecked(self.coords.len(), minus))
    }
}

/// Swaps 0s and 1s in all vertex labels: `Ψ(v) = Φ(v ⊕ [n])`.
#[derive(Clone, Debug)]
pub struct Antipodal<O> {
    inner: O,
}

pub fn antipodal_relabel<O: Orientation>(o: O) -> Antipodal<O> {
    Antipodal { inner: o }
}

impl<O: Orientation> Orientation for Antipodal<O> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn outmap(&self, v: Vertex) -> Result<Outmap> {
        check_vertex(self, v)?;
        self.inner.outmap(v.xor(CoordSet::full(v.dim())))
    }
}

/// Relabels coordinates cyclically: coordinate `j` of the wrapped oracle
/// becomes coordinate `j + s (mod n)`.
#[derive(Clone, Debug)]
pub struct Shifted<O> {
    inner: O,
    shift: usize,
}

pub fn shift_coordinates<O: Orientation>(o: O, s: i64) -> Shifted<O> {
    let n = o.dim().max(1);
    Shifted {
        shift: s.rem_euclid(n as i64) as usize,
        inner: o,
    }
}

impl<O: Orientation> Orientation for Shifted<O> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn outmap(&self, v: Vertex) -> Result<Outmap> {
        check_vertex(self, v)?;
        let n = self.dim();
        let back = (n - self.shift) % n.max(1);
        let inner_v = Vertex::from_mask_unchecked(n, rotate_mask(v.mask(), n, back));
        let o = self.inner.outmap(inner_v)?;
        Ok(Outmap::from_mask_unchecked(n, rotate_mask(o.minus, n, self.shift)))
    }
}

/// Caches evaluations and counts the distinct vertices queried.
pub struct Memoized<O> {
    inner: O,
    cache: Mutex<HashMap<u64, Outmap>>,
    distinct: AtomicU64,
}

impl<O: Orientation> Memoized<O> {
    pub fn new(inner: O) -> Self {
        Memoized {
            inner,
            cache: Mutex::new(HashMap::new()),
            distinct: AtomicU64::new(0),
        }
    }

    /// Number of distinct vertices evaluated through the wrapped oracle.
    pub fn evaluations(&self) -> u64 {
        self.distinct.load(Ordering::Relaxed)
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }
}

impl<O: Orientation> Orientation for Memoized<O> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn outmap(&self, v: Vertex) -> Result<Outmap> {
        if let Some(o) = self.cache.lock().expect("cache lock").get(&v.mask()) {
            return Ok(*o);
        }
        let o = self.inner.outmap(v)?;
        let mut cache = self.cache.lock().expect("cache lock");
        if cache.insert(v.mask(), o).is_none() {
            self.distinct.fetch_add(1, Ordering::Relaxed);
        }
        Ok(o)
    }
}

// ---------------------------------------------------------------------------
// Tables

/// A fully materialized orientation, indexed by packed vertex mask.
#[derive(Clone, PartialEq, Eq)]
pub struct UsoTable {
    n: usize,
    minus: Vec<u64>,
}

impl UsoTable {
    /// Builds a table from per-vertex outmaps indexed by packed mask and
    /// validates edge consistency.
    pub fn from_outmaps(n: usize, outmaps: Vec<Outmap>) -> Result<Self> {
        if n > TABLE_LIMIT {
            return Err(Error::Capability {
                what: "orientation tables",
                dim: n,
                limit: TABLE_LIMIT,
            });
        }
        if outmaps.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: outmaps.len(),
            });
        }
        if let Some(o) = outmaps.iter().find(|o| o.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: o.dim(),
            });
        }
        let table = UsoTable {
            n,
            minus: outmaps.iter().map(|o| o.minus).collect(),
        };
        table.check_consistency()?;
        Ok(table)
    }

    fn check_consistency(&self) -> Result<()> {
        for v in 0..self.minus.len() as u64 {
            for k in 0..self.n {
                let u = v ^ (1 << k);
                if u < v {
                    continue;
                }
                let a = self.minus[v as usize] >> k & 1;
                let b = self.minus[u as usize] >> k & 1;
                if a == b {
                    return Err(Error::MalformedOrientation {
                        vertex: Vertex::from_mask_unchecked(self.n, v),
                        coord: k + 1,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.minus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minus.is_empty()
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> Outmap {
        Outmap::from_mask_unchecked(self.n, self.minus[v.mask() as usize])
    }

    #[inline]
    pub(crate) fn minus_at(&self, mask: u64) -> u64 {
        self.minus[mask as usize]
    }

    /// `(vertex, outmap)` pairs in packed-mask order.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Outmap)> + '_ {
        self.minus.iter().enumerate().map(move |(m, &minus)| {
            (
                Vertex::from_mask_unchecked(self.n, m as u64),
                Outmap::from_mask_unchecked(self.n, minus),
            )
        })
    }

    /// Vertices whose outmap is all `+`.
    pub fn sinks(&self) -> Vec<Vertex> {
        self.iter().filter(|(_, o)| o.is_sink()).map(|(v, _)| v).collect()
    }

    pub fn sources(&self) -> Vec<Vertex> {
        self.iter().filter(|(_, o)| o.is_source()).map(|(v, _)| v).collect()
    }

    /// Text form: line 1 is `n`, then one `bits signs` line per vertex in
    /// lexicographic order of the bitstring.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity((2 * self.n + 2) << self.n);
        out.push_str(&format!("{}\n", self.n));
        for k in 0..1u64 << self.n {
            let v = Vertex::from_mask_unchecked(self.n, lex_to_mask(k, self.n));
            out.push_str(&format!("{} {}\n", v, self.get(v)));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, first) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty table file"))?;
        let n: usize = first
            .trim()
            .parse()
            .map_err(|_| Error::parse(1, 1, format!("expected dimension, found {first:?}")))?;
        if n > TABLE_LIMIT {
            return Err(Error::Capability {
                what: "orientation tables",
                dim: n,
                limit: TABLE_LIMIT,
            });
        }
        let mut outmaps = vec![None; 1 << n];
        let mut expected = 0u64;
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let (bits, signs) = line
                .split_once(' ')
                .ok_or_else(|| Error::parse(lineno, 1, "expected \"bits signs\""))?;
            let v: Vertex = bits.parse().map_err(|e| relocate(e, lineno, 0))?;
            let o: Outmap = signs.trim_end().parse().map_err(|e| relocate(e, lineno, bits.len() + 1))?;
            if v.dim() != n || o.dim() != n {
                return Err(Error::parse(lineno, 1, format!("entry does not have length {n}")));
            }
            if expected >= 1 << n || v.mask() != lex_to_mask(expected, n) {
                return Err(Error::parse(
                    lineno,
                    1,
                    format!("vertex {v} out of lexicographic order"),
                ));
            }
            outmaps[v.mask() as usize] = Some(o);
            expected += 1;
        }
        if expected != 1 << n {
            return Err(Error::parse(
                text.lines().count() + 1,
                1,
                format!("expected {} vertex lines, found {expected}", 1u64 << n),
            ));
        }
        UsoTable::from_outmaps(n, outmaps.into_iter().map(Option::unwrap).collect())
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        UsoTable::from_text(&text)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }
}

impl fmt::Debug for UsoTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UsoTable").field("n", &self.n).finish_non_exhaustive()
    }
}

impl Orientation for UsoTable {
    fn dim(&self) -> usize {
        self.n
    }

    fn outmap(&self, v: Vertex) -> Result<Outmap> {
        check_vertex(self, v)?;
        Ok(self.get(v))
    }
}

fn relocate(e: Error, line: usize, offset: usize) -> Error {
    match e {
        Error::Parse { column, message, .. } => Error::Parse {
            line,
            column: column + offset,
            message,
        },
        e => Error::parse(line, offset + 1, e.to_string()),
    }
}

/// Index of the `k`-th bitstring in lexicographic order, as a packed mask
/// (leftmost character is coordinate 1, the most significant digit).
fn lex_to_mask(k: u64, n: usize) -> u64 {
    if n == 0 {
        return 0;
    }
    k.reverse_bits() >> (64 - n)
}

/// Evaluates `o` at every vertex and checks edge consistency.
pub fn tabulate<O: Orientation + ?Sized>(o: &O) -> Result<UsoTable> {
    let n = o.dim();
    if n > TABLE_LIMIT {
        return Err(Error::Capability {
            what: "orientation tables",
            dim: n,
            limit: TABLE_LIMIT,
        });
    }
    let results: Vec<Result<Outmap>> = (0..1u64 << n)
        .into_par_iter()
        .map(|m| {
            let v = Vertex::from_mask_unchecked(n, m);
            o.outmap(v).map_err(|e| Error::Oracle {
                vertex: v,
                source: Box::new(e),
            })
        })
        .collect();
    let outmaps = results.into_iter().collect::<Result<Vec<_>>>()?;
    UsoTable::from_outmaps(n, outmaps)
}
