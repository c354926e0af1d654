//! Linear complementarity problems `w - Mz = q, w,z >= 0, w^T z = 0`.
//!
//! A basis `B ⊆ [n]` selects the columns of `-M` (for `i ∈ B`) or of the
//! identity (for `i ∉ B`); the resulting matrix `A_B` is invertible for
//! every `B` exactly when `M` is a P-matrix.

use std::path::Path;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cube::{submasks, CoordSet, MAX_DIM};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, rat_det, rat_solve, RatMatrix, RatVector, Rational};

/// Set of coordinates whose `z` variable is basic.
pub type Basis = CoordSet;

/// Default cap for predicates that enumerate all `2^n` principal index sets.
pub const EXHAUSTIVE_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcpInstance {
    m: RatMatrix,
    q: RatVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcpSolution {
    pub w: RatVector,
    pub z: RatVector,
}

impl LcpInstance {
    pub fn new(m: RatMatrix, q: RatVector) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        if q.len() != m.rows() {
            return Err(Error::DimensionMismatch {
                expected: m.rows(),
                found: q.len(),
            });
        }
        if m.rows() > MAX_DIM {
            return Err(Error::Dimension {
                dim: m.rows(),
                min: 1,
                max: MAX_DIM,
            });
        }
        Ok(LcpInstance { m, q })
    }

    pub fn n(&self) -> usize {
        self.q.len()
    }

    pub fn m(&self) -> &RatMatrix {
        &self.m
    }

    pub fn q(&self) -> &RatVector {
        &self.q
    }

    /// `A_B`: column `i` is `-M e_i` for `i ∈ B`, else `e_i`.
    pub fn basis_matrix(&self, basis: Basis) -> Result<RatMatrix> {
        let n = self.n();
        basis.check_within(n)?;
        let mut a = RatMatrix::identity(n);
        for j in basis.iter().map(|i| i - 1) {
            for i in 0..n {
                a[(i, j)] = -self.m[(i, j)].clone();
            }
        }
        Ok(a)
    }

    /// `A_B^{-1} q`. A singular `A_B` is evidence that `M` is not a P-matrix.
    pub fn basis_solution(&self, basis: Basis) -> Result<RatVector> {
        let a = self.basis_matrix(basis)?;
        rat_solve(&a, &self.q).map_err(|e| match e {
            Error::Singular { .. } => Error::NotPMatrix { basis },
            e => e,
        })
    }

    /// Reads `w` and `z` off a basis whose solution is nonnegative.
    pub fn extract_solution(&self, basis: Basis) -> Result<LcpSolution> {
        let x = self.basis_solution(basis)?;
        if let Some(i) = x.iter().position(Rational::is_negative) {
            return Err(Error::NotASolution { coord: i + 1 });
        }
        let mut w = vec![Rational::zero(); self.n()];
        let mut z = vec![Rational::zero(); self.n()];
        for (i, xi) in x.into_iter().enumerate() {
            if basis.contains(i + 1) {
                z[i] = xi;
            } else {
                w[i] = xi;
            }
        }
        Ok(LcpSolution { w, z })
    }

    /// True iff `w, z >= 0`, `w^T z = 0` and `w - Mz = q` hold exactly.
    pub fn check_solution(&self, sol: &LcpSolution) -> bool {
        let n = self.n();
        if sol.w.len() != n || sol.z.len() != n {
            return false;
        }
        if sol.w.iter().chain(&sol.z).any(Rational::is_negative) {
            return false;
        }
        let dot = sol
            .w
            .iter()
            .zip(&sol.z)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b);
        if !dot.is_zero() {
            return false;
        }
        let Ok(mz) = self.m.mul_vec(&sol.z) else {
            return false;
        };
        (0..n).all(|i| &sol.w[i] - &mz[i] == self.q[i])
    }

    /// True iff no basis solution has a zero coordinate.
    pub fn is_nondegenerate(&self) -> Result<bool> {
        self.is_nondegenerate_with_limit(EXHAUSTIVE_LIMIT)
    }

    pub fn is_nondegenerate_with_limit(&self, limit: usize) -> Result<bool> {
        Ok(self.find_degeneracy(limit)?.is_none())
    }

    /// First basis (in mask order) with a zero coordinate, if any.
    pub fn find_degeneracy(&self, limit: usize) -> Result<Option<(Basis, usize)>> {
        let n = self.n();
        capability("is_nondegenerate", n, limit)?;
        for mask in 0..1u64 << n {
            let basis = CoordSet::from_mask(mask);
            let x = self.basis_solution(basis)?;
            if let Some(i) = x.iter().position(Zero::is_zero) {
                return Ok(Some((basis, i + 1)));
            }
        }
        Ok(None)
    }

    /// The pair `(PPT(M, α), A_α^{-1} q)`.
    ///
    /// The orientation induced by the result at `v` equals the orientation
    /// of `self` at `v ⊕ α`.
    pub fn principal_pivot(&self, alpha: CoordSet) -> Result<LcpInstance> {
        let m = principal_pivot_transform(&self.m, alpha)?;
        let q = self.basis_solution(alpha)?;
        LcpInstance::new(m, q)
    }

    pub fn to_file(&self) -> InstanceFile {
        InstanceFile {
            n: self.n(),
            m: self
                .m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect(),
            q: self.q.iter().map(format_rational).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("instance serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
        file.into_instance()
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        LcpInstance::from_json(&text)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }
}

/// On-disk instance: `{"n": int, "M": [[rational,…],…], "q": [rational,…]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    #[serde(rename = "M")]
    pub m: Vec<Vec<String>>,
    pub q: Vec<String>,
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<LcpInstance> {
        let n = self.n;
        if n == 0 {
            return Err(Error::InvalidArgument("instance dimension must be >= 1".into()));
        }
        if self.m.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.m.len(),
            });
        }
        let mut rows = Vec::with_capacity(n);
        for (i, row) in self.m.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            let parsed = row
                .iter()
                .enumerate()
                .map(|(j, s)| {
                    parse_rational(s).map_err(|e| {
                        Error::InvalidArgument(format!("M[{}][{}]: {e}", i + 1, j + 1))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(parsed);
        }
        let q = self
            .q
            .iter()
            .enumerate()
            .map(|(i, s)| {
                parse_rational(s).map_err(|e| Error::InvalidArgument(format!("q[{}]: {e}", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        if q.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: q.len(),
            });
        }
        LcpInstance::new(RatMatrix::from_rows(rows)?, q)
    }
}

fn capability(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::Capability {
            what,
            dim: n,
            limit,
        });
    }
    Ok(())
}

fn indices(set: CoordSet) -> Vec<usize> {
    set.iter().map(|i| i - 1).collect()
}

/// All `2^n - 1` principal minors, keyed by their index set.
pub fn principal_minors(m: &RatMatrix, limit: usize) -> Result<Vec<(CoordSet, Rational)>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let n = m.rows();
    capability("principal minor enumeration", n, limit)?;
    let all = (1u64 << n) - 1;
    submasks(all)
        .skip(1)
        .map(|mask| {
            let set = CoordSet::from_mask(mask);
            let idx = indices(set);
            Ok((set, rat_det(&m.select(&idx, &idx))?))
        })
        .collect()
}

/// True iff every principal minor is positive.
pub fn is_p_matrix(m: &RatMatrix) -> Result<bool> {
    is_p_matrix_with_limit(m, EXHAUSTIVE_LIMIT)
}

pub fn is_p_matrix_with_limit(m: &RatMatrix, limit: usize) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let n = m.rows();
    capability("is_p_matrix", n, limit)?;
    // cheap 1x1 rejection before the exponential sweep
    if (0..n).any(|i| !m[(i, i)].is_positive()) {
        return Ok(false);
    }
    let all = (1u64 << n) - 1;
    for mask in submasks(all).skip(1) {
        let idx = indices(CoordSet::from_mask(mask));
        if !rat_det(&m.select(&idx, &idx))?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// P-matrix with nonpositive off-diagonal entries.
pub fn is_k_matrix(m: &RatMatrix) -> Result<bool> {
    is_k_matrix_with_limit(m, EXHAUSTIVE_LIMIT)
}

pub fn is_k_matrix_with_limit(m: &RatMatrix, limit: usize) -> Result<bool> {
    let p = is_p_matrix_with_limit(m, limit)?;
    let n = m.rows();
    let z_pattern = (0..n).all(|i| (0..n).all(|j| i == j || !m[(i, j)].is_positive()));
    Ok(p && z_pattern)
}

/// Block pivot of `M` on the principal submatrix indexed by `alpha`.
///
/// With `A = M_αα`, `B = M_αᾱ`, `C = M_ᾱα`, `D = M_ᾱᾱ` the result is
/// `[[A⁻¹, -A⁻¹B], [CA⁻¹, D - CA⁻¹B]]`, written back in the original
/// index positions. Applying it twice with the same `alpha` returns `M`.
pub fn principal_pivot_transform(m: &RatMatrix, alpha: CoordSet) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let n = m.rows();
    alpha.check_within(n)?;
    if alpha.is_empty() {
        return Ok(m.clone());
    }
    let a_idx = indices(alpha);
    let b_idx: Vec<usize> = (0..n).filter(|i| !alpha.contains(i + 1)).collect();
    let a_inv = m.select(&a_idx, &a_idx).inverse()?;
    let b = m.select(&a_idx, &b_idx);
    let c = m.select(&b_idx, &a_idx);
    let d = m.select(&b_idx, &b_idx);
    let a_inv_b = a_inv.mul(&b)?;
    let c_a_inv = c.mul(&a_inv)?;
    let schur = c.mul(&a_inv_b)?;

    let mut out = RatMatrix::zeros(n, n);
    for (r, &i) in a_idx.iter().enumerate() {
        for (s, &j) in a_idx.iter().enumerate() {
            out[(i, j)] = a_inv[(r, s)].clone();
        }
        for (s, &j) in b_idx.iter().enumerate() {
            out[(i, j)] = -a_inv_b[(r, s)].clone();
        }
    }
    for (r, &i) in b_idx.iter().enumerate() {
        for (s, &j) in a_idx.iter().enumerate() {
            out[(i, j)] = c_a_inv[(r, s)].clone();
        }
        for (s, &j) in b_idx.iter().enumerate() {
            out[(i, j)] = &d[(r, s)] - &schur[(r, s)];
        }
    }
    Ok(out)
}

/// Convenience for tests and generators: `I_n`, `q` given.
pub fn identity_instance(q: RatVector) -> Result<LcpInstance> {
    let n = q.len();
    LcpInstance::new(RatMatrix::identity(n), q)
}
