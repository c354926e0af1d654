//! Seeded generators for instances and orientation tables.
//!
//! All randomness comes from `ChaCha8Rng` seeded with a `u64`, so outputs
//! are identical across platforms.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cube::{full_mask, CoordSet};
use crate::error::{Error, Result};
use crate::exact::{rat, RatMatrix, RatVector};
use crate::lcp::{identity_instance, principal_pivot_transform, LcpInstance, EXHAUSTIVE_LIMIT};
use crate::uso::{morris_instance, Outmap, UsoTable, TABLE_LIMIT};

pub const DEFAULT_RANGE: i64 = 5;

/// Attempts [`gen_q`] makes before giving up.
pub const RESAMPLE_BUDGET: usize = 1000;

/// Derives the `index`-th child seed of `master` (SplitMix64 finalizer).
pub fn split_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Morris,
    RandomK,
    RandomP,
    Uniform,
    RandomOrientation,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Morris,
        Family::RandomK,
        Family::RandomP,
        Family::Uniform,
        Family::RandomOrientation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Morris => "morris",
            Family::RandomK => "random-k",
            Family::RandomP => "random-p",
            Family::Uniform => "uniform",
            Family::RandomOrientation => "random-orientation",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PStrategy {
    /// `G·Gᵀ + I` for a random integer `G`.
    Gram,
    /// Principal pivot transform of a random K-matrix.
    KPpt,
}

impl FromStr for PStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gram" => Ok(PStrategy::Gram),
            "k-ppt" => Ok(PStrategy::KPpt),
            _ => Err(Error::InvalidArgument(format!("unknown P-matrix strategy '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    /// Entries are drawn with magnitude at most `range`.
    pub range: i64,
    pub strategy: PStrategy,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GenSpec {
            family,
            n,
            seed,
            range: DEFAULT_RANGE,
            strategy: PStrategy::KPpt,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Dimension {
                dim: 0,
                min: 1,
                max: crate::cube::MAX_DIM,
            });
        }
        if self.family == Family::Morris && (self.n < 3 || self.n.is_multiple_of(2)) {
            return Err(Error::Parity(self.n));
        }
        if self.family == Family::RandomOrientation && self.n > TABLE_LIMIT {
            return Err(Error::Capability {
                what: "orientation tables",
                dim: self.n,
                limit: TABLE_LIMIT,
            });
        }
        if self.range < 1 {
            return Err(Error::InvalidArgument(format!(
                "entry range must be at least 1, got {}",
                self.range
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum Generated {
    Instance(LcpInstance),
    Table(UsoTable),
}

pub fn generate(spec: &GenSpec) -> Result<Generated> {
    spec.validate()?;
    let GenSpec {
        n, seed, range, ..
    } = *spec;
    let with_q = |m: RatMatrix| -> Result<Generated> {
        let q = gen_q(&m, split_seed(seed, 1), range)?;
        Ok(Generated::Instance(LcpInstance::new(m, q)?))
    };
    match spec.family {
        Family::Morris => Ok(Generated::Instance(morris_instance(n)?)),
        Family::Uniform => Ok(Generated::Instance(identity_instance(vec![rat(-1); n])?)),
        Family::RandomK => with_q(gen_k_matrix(n, seed, range)?),
        Family::RandomP => with_q(gen_p_matrix(n, seed, spec.strategy, range)?),
        Family::RandomOrientation => Ok(Generated::Table(gen_random_orientation(n, seed)?)),
    }
}

/// The instance for `spec`; fails for families that produce tables.
pub fn generate_instance(spec: &GenSpec) -> Result<LcpInstance> {
    match generate(spec)? {
        Generated::Instance(inst) => Ok(inst),
        Generated::Table(_) => Err(Error::InvalidArgument(format!(
            "family {} produces an orientation table, not an instance",
            spec.family
        ))),
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Dimension {
            dim: 0,
            min: 1,
            max: crate::cube::MAX_DIM,
        });
    }
    Ok(())
}

fn check_range(range: i64) -> Result<()> {
    if range < 1 {
        return Err(Error::InvalidArgument(format!(
            "entry range must be at least 1, got {range}"
        )));
    }
    Ok(())
}

/// Strictly diagonally dominant Z-matrix with positive diagonal: off-diagonal
/// entries in `[-range, 0]`, diagonal = row absolute sum + margin in
/// `[1, range]`.
pub fn gen_k_matrix(n: usize, seed: u64, range: i64) -> Result<RatMatrix> {
    check_n(n)?;
    check_range(range)?;
    let mut r = rng(seed);
    let mut rows = vec![vec![0i64; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        let mut sum = 0;
        for (j, x) in row.iter_mut().enumerate() {
            if i != j {
                *x = -r.gen_range(0..=range);
                sum -= *x;
            }
        }
        row[i] = sum + r.gen_range(1..=range);
    }
    RatMatrix::from_i64_rows(&rows)
}

fn random_subset(r: &mut ChaCha8Rng, n: usize) -> CoordSet {
    CoordSet::from_mask(r.gen::<u64>() & full_mask(n))
}

/// A P-matrix built by `strategy`.
pub fn gen_p_matrix(n: usize, seed: u64, strategy: PStrategy, range: i64) -> Result<RatMatrix> {
    match strategy {
        PStrategy::Gram => gen_gram(n, seed, range),
        PStrategy::KPpt => {
            let (k, alpha) = gen_k_ppt_parts(n, seed, range)?;
            principal_pivot_transform(&k, alpha)
        }
    }
}

/// The K-matrix and pivot set behind `gen_p_matrix(.., KPpt, ..)`.
pub fn gen_k_ppt_parts(n: usize, seed: u64, range: i64) -> Result<(RatMatrix, CoordSet)> {
    let k = gen_k_matrix(n, split_seed(seed, 0), range)?;
    let alpha = random_subset(&mut rng(split_seed(seed, 1)), n);
    Ok((k, alpha))
}

fn gen_gram(n: usize, seed: u64, range: i64) -> Result<RatMatrix> {
    check_n(n)?;
    check_range(range)?;
    let mut r = rng(seed);
    let g: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..n).map(|_| r.gen_range(-range..=range)).collect())
        .collect();
    gram_plus_identity(&g)
}

fn gram_plus_identity(g: &[Vec<i64>]) -> Result<RatMatrix> {
    let n = g.len();
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let dot: i64 = g[i].iter().zip(&g[j]).map(|(a, b)| a * b).sum();
                    dot + i64::from(i == j)
                })
                .collect()
        })
        .collect();
    RatMatrix::from_i64_rows(&rows)
}

/// A right-hand side with entries in `[-range, -1] ∪ [1, range]`, resampled
/// until the instance is nondegenerate. Above the exhaustive cap only the
/// zero-free check for `B = ∅` is applied.
pub fn gen_q(m: &RatMatrix, seed: u64, range: i64) -> Result<RatVector> {
    check_range(range)?;
    let n = m.rows();
    let mut r = rng(seed);
    for _ in 0..RESAMPLE_BUDGET {
        let q: RatVector = (0..n)
            .map(|_| {
                let x = r.gen_range(1..=range);
                rat(if r.gen::<bool>() { x } else { -x })
            })
            .collect();
        if n > EXHAUSTIVE_LIMIT {
            return Ok(q);
        }
        let inst = LcpInstance::new(m.clone(), q.clone())?;
        if inst.is_nondegenerate()? {
            return Ok(q);
        }
    }
    Err(Error::Generation(format!(
        "no nondegenerate right-hand side after {RESAMPLE_BUDGET} samples"
    )))
}

/// Orients each edge of the `n`-cube by an independent fair coin.
pub fn gen_random_orientation(n: usize, seed: u64) -> Result<UsoTable> {
    check_n(n)?;
    if n > TABLE_LIMIT {
        return Err(Error::Capability {
            what: "orientation tables",
            dim: n,
            limit: TABLE_LIMIT,
        });
    }
    let mut r = rng(seed);
    let mut minus = vec![0u64; 1 << n];
    for v in 0..1u64 << n {
        for i in 0..n {
            let bit = 1u64 << i;
            if v & bit != 0 {
                continue;
            }
            if r.gen::<bool>() {
                minus[v as usize] |= bit;
            } else {
                minus[(v | bit) as usize] |= bit;
            }
        }
    }
    let outmaps = minus
        .into_iter()
        .map(|m| Outmap::from_mask_unchecked(n, m))
        .collect();
    UsoTable::from_outmaps(n, outmaps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lcp::{is_k_matrix, is_p_matrix};
    use crate::verify::is_uso;

    #[test]
    fn k_matrices_small() {
        let m = RatMatrix::from_i64_rows(&[vec![2, -1], vec![-1, 2]]).unwrap();
        assert!(is_k_matrix(&m).unwrap());
        for seed in 0..20 {
            let m = gen_k_matrix(1, seed, 4).unwrap();
            assert!(m[(0, 0)] >= rat(1));
            let m = gen_k_matrix(4, seed, 4).unwrap();
            assert!(is_k_matrix(&m).unwrap());
        }
    }

    #[test]
    fn gram_of_zero_is_identity() {
        let g = vec![vec![0i64; 3]; 3];
        assert_eq!(gram_plus_identity(&g).unwrap(), RatMatrix::identity(3));
        let m = gram_plus_identity(&[vec![1, 2], vec![-3, 1]]).unwrap();
        assert_eq!(m, RatMatrix::from_i64_rows(&[vec![6, -1], vec![-1, 11]]).unwrap());
    }

    #[test]
    fn k_ppt_with_empty_alpha_is_k() {
        let k = gen_k_matrix(4, 3, 5).unwrap();
        assert_eq!(principal_pivot_transform(&k, CoordSet::empty()).unwrap(), k);
        for seed in 0..20 {
            let (k, alpha) = gen_k_ppt_parts(4, seed, 5).unwrap();
            let p = gen_p_matrix(4, seed, PStrategy::KPpt, 5).unwrap();
            assert_eq!(p, principal_pivot_transform(&k, alpha).unwrap());
            assert!(is_p_matrix(&p).unwrap());
            assert!(is_p_matrix(&gen_p_matrix(4, seed, PStrategy::Gram, 5).unwrap()).unwrap());
        }
    }

    #[test]
    fn q_is_nondegenerate() {
        let i = RatMatrix::identity(3);
        for seed in 0..20 {
            let q = gen_q(&i, seed, 3).unwrap();
            assert!(q.iter().all(|x| *x != rat(0)));
        }
        let with_zero = identity_instance(vec![rat(1), rat(0)]).unwrap();
        assert!(!with_zero.is_nondegenerate().unwrap());
        assert!(morris_instance(5).unwrap().is_nondegenerate().unwrap());
    }

    #[test]
    fn random_orientations() {
        for seed in 0..10 {
            let t = gen_random_orientation(1, seed).unwrap();
            assert!(is_uso(&t).passed());
        }
        let a = gen_random_orientation(3, 42).unwrap();
        assert_eq!(a, gen_random_orientation(3, 42).unwrap());
        assert_ne!(a, gen_random_orientation(3, 43).unwrap());
    }

    /// USO fraction among all 16 orientations of the 2-cube's 4 edges.
    fn brute_force_two_cube_fraction() -> f64 {
        let edges = [(0u64, 0usize), (0, 1), (1, 1), (2, 0)];
        let mut usos = 0;
        for code in 0..16u32 {
            let mut minus = [0u64; 4];
            for (k, &(v, i)) in edges.iter().enumerate() {
                let bit = 1 << i;
                if code >> k & 1 == 1 {
                    minus[v as usize] |= bit;
                } else {
                    minus[(v | bit) as usize] |= bit;
                }
            }
            let sinks_in = |vs: &[u64], free: u64| {
                vs.iter().filter(|&&v| minus[v as usize] & free == 0).count()
            };
            let ok = sinks_in(&[0, 1, 2, 3], 3) == 1
                && sinks_in(&[0, 1], 1) == 1
                && sinks_in(&[2, 3], 1) == 1
                && sinks_in(&[0, 2], 2) == 1
                && sinks_in(&[1, 3], 2) == 1;
            usos += usize::from(ok);
        }
        usos as f64 / 16.0
    }

    #[test]
    fn two_cube_uso_fraction() {
        let expected = brute_force_two_cube_fraction();
        assert_eq!(expected, 12.0 / 16.0);
        let trials = 4000;
        let hits = (0..trials)
            .filter(|&s| is_uso(&gen_random_orientation(2, s).unwrap()).passed())
            .count();
        let p = hits as f64 / trials as f64;
        let se = (expected * (1.0 - expected) / trials as f64).sqrt();
        assert!((p - expected).abs() < 4.0 * se, "{p} vs {expected}");
    }

    #[test]
    fn generate_families() {
        let inst = generate_instance(&GenSpec::new(Family::Morris, 5, 0)).unwrap();
        assert_eq!(inst, morris_instance(5).unwrap());
        assert!(generate(&GenSpec::new(Family::Morris, 4, 0)).is_err());
        let u = generate_instance(&GenSpec::new(Family::Uniform, 3, 0)).unwrap();
        assert_eq!(u.q(), &vec![rat(-1); 3]);
        let a = generate_instance(&GenSpec::new(Family::RandomK, 4, 9)).unwrap();
        let b = generate_instance(&GenSpec::new(Family::RandomK, 4, 9)).unwrap();
        assert_eq!(a, b);
        assert!(is_k_matrix(a.m()).unwrap());
        assert!(a.is_nondegenerate().unwrap());
        assert!(generate_instance(&GenSpec::new(Family::RandomOrientation, 3, 0)).is_err());
        assert!(matches!(
            generate(&GenSpec::new(Family::RandomOrientation, 3, 0)).unwrap(),
            Generated::Table(_)
        ));
        "random-p".parse::<Family>().unwrap();
        assert!("x".parse::<Family>().is_err());
    }

    #[test]
    fn seeds_split_apart() {
        assert_ne!(split_seed(1, 0), split_seed(1, 1));
        assert_ne!(split_seed(1, 0), split_seed(2, 0));
        assert_eq!(split_seed(7, 3), split_seed(7, 3));
    }
}
