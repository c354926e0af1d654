//! Property checkers over materialized orientations.
//!
//! Every checker returns a [`VerifyReport`]; a failing report carries a
//! witness that can be re-checked independently. Subcube sink tests read
//! only the signs of the free coordinates, so no sub-tables are built.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cube::{full_mask, submasks, CoordSet, Subcube, Vertex};
use crate::error::{Error, Result};
use crate::uso::{Outmap, UsoTable};

/// Largest dimension for which [`longest_path_exact`] is supported.
pub const LONGEST_PATH_LIMIT: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A subcube whose number of sinks is not 1.
    Subcube { subcube: Subcube, sinks: usize },
    /// A prescription (bits on `fixed`, signs elsewhere) with `matches != 1`.
    Completion {
        fixed: CoordSet,
        bits: Vertex,
        minus: CoordSet,
        matches: usize,
    },
    /// A non-uniform face; `reversed` marks a witness found in `Φ^([n])`.
    Face {
        base: Vertex,
        free: CoordSet,
        reversed: bool,
    },
    /// A directed edge `from → to` violating a sign-persistence rule at
    /// coordinate `coord`.
    Edge {
        from: Vertex,
        to: Vertex,
        coord: usize,
    },
    /// A directed path.
    Path { vertices: Vec<Vertex> },
    /// Too few internally disjoint source-to-sink paths.
    Flow { value: usize, required: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub property: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Distinct vertices whose outmap was read.
    pub evaluations: u64,
}

impl VerifyReport {
    fn pass(property: &str, evaluations: u64) -> Self {
        VerifyReport {
            property: property.to_owned(),
            verdict: Verdict::Pass,
            witness: None,
            evaluations,
        }
    }

    fn fail(property: &str, witness: Witness, evaluations: u64) -> Self {
        VerifyReport {
            property: property.to_owned(),
            verdict: Verdict::Fail,
            witness: Some(witness),
            evaluations,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn all_vertices(t: &UsoTable) -> u64 {
    t.len() as u64
}

// ---------------------------------------------------------------------------
// USO axiom and unique completion

/// Every nonempty subcube has exactly one sink.
pub fn is_uso(t: &UsoTable) -> VerifyReport {
    const NAME: &str = "uso";
    let n = t.dim();
    let all = full_mask(n);
    let mut counts = vec![0u32; t.len()];
    for free in 0..=all {
        counts.iter_mut().for_each(|c| *c = 0);
        for v in 0..=all {
            if t.minus_at(v) & free == 0 {
                counts[(v & !free) as usize] += 1;
            }
        }
        for base in submasks(all & !free) {
            let sinks = counts[base as usize];
            if sinks != 1 {
                let subcube = Subcube::new(
                    Vertex::from_mask_unchecked(n, base),
                    CoordSet::from_mask(free),
                )
                .expect("within dimension");
                return VerifyReport::fail(
                    NAME,
                    Witness::Subcube {
                        subcube,
                        sinks: sinks as usize,
                    },
                    all_vertices(t),
                );
            }
        }
    }
    VerifyReport::pass(NAME, all_vertices(t))
}

/// Vertices with `v_i = bits_i` on `fixed` and sign `-` exactly on
/// `minus` among the remaining coordinates.
pub fn completion_matches(
    t: &UsoTable,
    fixed: CoordSet,
    bits: Vertex,
    minus: CoordSet,
) -> Vec<Vertex> {
    let n = t.dim();
    let a = fixed.mask() & full_mask(n);
    let b = full_mask(n) & !a;
    let key = (bits.mask() & a) | (minus.mask() & b);
    t.iter()
        .filter(|(v, o)| (v.mask() & a) | (o.minus_mask() & b) == key)
        .map(|(v, _)| v)
        .collect()
}

/// For every partition `[n] = A ∪ B`, bits on `A` and signs on `B`, exactly
/// one vertex matches. Equivalent to [`is_uso`].
pub fn unique_completion_holds(t: &UsoTable) -> VerifyReport {
    const NAME: &str = "unique-completion";
    let n = t.dim();
    let all = full_mask(n);
    let mut counts = vec![0u32; t.len()];
    for a in 0..=all {
        let b = all & !a;
        counts.iter_mut().for_each(|c| *c = 0);
        for v in 0..=all {
            let key = (v & a) | (t.minus_at(v) & b);
            counts[key as usize] += 1;
        }
        if let Some(key) = counts.iter().position(|&c| c != 1) {
            let key = key as u64;
            return VerifyReport::fail(
                NAME,
                Witness::Completion {
                    fixed: CoordSet::from_mask(a),
                    bits: Vertex::from_mask_unchecked(n, key & a),
                    minus: CoordSet::from_mask(key & b),
                    matches: counts[key as usize] as usize,
                },
                all_vertices(t),
            );
        }
    }
    VerifyReport::pass(NAME, all_vertices(t))
}

// ---------------------------------------------------------------------------
// Holt-Klee

/// Unit-capacity flow network; vertex `v` is split into `2v` (in) and
/// `2v + 1` (out).
struct FlowNet {
    head: Vec<usize>,
    next: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl FlowNet {
    const NIL: usize = usize::MAX;

    fn new(nodes: usize) -> Self {
        FlowNet {
            head: vec![Self::NIL; nodes],
            next: Vec::new(),
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_edge(&mut self, a: usize, b: usize, cap: u32) {
        for (from, to, c) in [(a, b, cap), (b, a, 0)] {
            self.to.push(to);
            self.cap.push(c);
            self.next.push(self.head[from]);
            self.head[from] = self.to.len() - 1;
        }
    }

    /// Augments along BFS paths until `limit` units flow or none remain.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        let mut via = vec![Self::NIL; self.head.len()];
        while flow < limit {
            via.iter_mut().for_each(|e| *e = Self::NIL);
            let mut queue = VecDeque::from([s]);
            let mut seen = vec![false; self.head.len()];
            seen[s] = true;
            while let Some(x) = queue.pop_front() {
                if x == t {
                    break;
                }
                let mut e = self.head[x];
                while e != Self::NIL {
                    let y = self.to[e];
                    if self.cap[e] > 0 && !seen[y] {
                        seen[y] = true;
                        via[y] = e;
                        queue.push_back(y);
                    }
                    e = self.next[e];
                }
            }
            if !seen[t] {
                break;
            }
            let mut y = t;
            while y != s {
                let e = via[y];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                y = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Number of internally vertex-disjoint directed source-to-sink paths,
/// capped at `n`. Fails if the table has no unique source and sink.
pub fn disjoint_path_count(t: &UsoTable) -> Result<usize> {
    let n = t.dim();
    let (source, sink) = match (t.sources().as_slice(), t.sinks().as_slice()) {
        ([s], [k]) => (s.mask() as usize, k.mask() as usize),
        _ => {
            return Err(Error::Dependency(
                "orientation needs a unique source and a unique sink".into(),
            ))
        }
    };
    if source == sink {
        return Ok(n);
    }
    let verts = t.len();
    let mut net = FlowNet::new(2 * verts);
    for v in 0..verts {
        let through = if v == source || v == sink { n as u32 } else { 1 };
        net.add_edge(2 * v, 2 * v + 1, through);
        let minus = t.minus_at(v as u64);
        for k in 0..n {
            if minus >> k & 1 == 1 {
                net.add_edge(2 * v + 1, 2 * (v ^ (1 << k)), 1);
            }
        }
    }
    Ok(net.max_flow(2 * source + 1, 2 * sink, n))
}

/// At least `n` internally vertex-disjoint directed paths from the source
/// to the sink. Requires a USO.
pub fn holt_klee(t: &UsoTable) -> Result<VerifyReport> {
    const NAME: &str = "holt-klee";
    let uso = is_uso(t);
    if !uso.passed() {
        return Err(Error::Dependency(format!(
            "holt-klee needs a USO; {:?}",
            uso.witness
        )));
    }
    let n = t.dim();
    let value = disjoint_path_count(t)?;
    if value >= n {
        Ok(VerifyReport::pass(NAME, all_vertices(t)))
    } else {
        Ok(VerifyReport::fail(
            NAME,
            Witness::Flow { value, required: n },
            all_vertices(t),
        ))
    }
}

// ---------------------------------------------------------------------------
// Uniformity hierarchy

/// First 2-face spanned upward from a source corner that is not uniform.
fn two_up_violation(t: &UsoTable, flip_all: bool) -> Option<(u64, u64)> {
    let n = t.dim();
    let all = full_mask(n);
    let flip = if flip_all { all } else { 0 };
    let minus = |v: u64| t.minus_at(v) ^ flip;
    for u in 0..=all {
        let up = !u & minus(u) & all;
        if up.count_ones() < 2 {
            continue;
        }
        for i in 0..n {
            let bi = 1u64 << i;
            if up & bi == 0 {
                continue;
            }
            for j in i + 1..n {
                let bj = 1u64 << j;
                if up & bj == 0 {
                    continue;
                }
                if minus(u ^ bi) & bj == 0 || minus(u ^ bj) & bi == 0 {
                    return Some((u, bi | bj));
                }
            }
        }
    }
    None
}

fn face_witness(n: usize, (base, free): (u64, u64), reversed: bool) -> Witness {
    Witness::Face {
        base: Vertex::from_mask_unchecked(n, base),
        free: CoordSet::from_mask(free),
        reversed,
    }
}

/// Every 2-face `{u ⊕ I : I ⊆ {i,j}}` with `u_i = u_j = 0` whose corner `u`
/// is the source of the face is uniformly oriented.
pub fn is_two_up_uniform(t: &UsoTable) -> VerifyReport {
    const NAME: &str = "2uu";
    match two_up_violation(t, false) {
        None => VerifyReport::pass(NAME, all_vertices(t)),
        Some(w) => VerifyReport::fail(NAME, face_witness(t.dim(), w, false), all_vertices(t)),
    }
}

/// Both the orientation and its full reversal are 2-up-uniform.
pub fn is_two_uniform(t: &UsoTable) -> VerifyReport {
    const NAME: &str = "2u";
    if let Some(w) = two_up_violation(t, false) {
        return VerifyReport::fail(NAME, face_witness(t.dim(), w, false), all_vertices(t));
    }
    if let Some(w) = two_up_violation(t, true) {
        return VerifyReport::fail(NAME, face_witness(t.dim(), w, true), all_vertices(t));
    }
    VerifyReport::pass(NAME, all_vertices(t))
}

/// Every subcube spanned by the outgoing edges at a corner with all-zero
/// free coordinates is uniformly oriented. It suffices to check the
/// maximal such subcube at each vertex.
pub fn is_locally_up_uniform(t: &UsoTable) -> VerifyReport {
    const NAME: &str = "local-uu";
    let n = t.dim();
    let all = full_mask(n);
    for u in 0..=all {
        let span = !u & t.minus_at(u) & all;
        if span.count_ones() < 2 {
            continue;
        }
        for sub in submasks(span) {
            let w = u | sub;
            if t.minus_at(w) & span != span & !w {
                return VerifyReport::fail(NAME, face_witness(n, (u, span), false), all_vertices(t));
            }
        }
    }
    VerifyReport::pass(NAME, all_vertices(t))
}

/// Once a coordinate shows bit 1 with sign `+`, every out-neighbor keeps
/// sign `+` there.
pub fn sign_persistence(t: &UsoTable) -> VerifyReport {
    const NAME: &str = "sign-persistence";
    let n = t.dim();
    let all = full_mask(n);
    for v in 0..=all {
        let minus = t.minus_at(v);
        let settled = v & !minus;
        if settled == 0 {
            continue;
        }
        for j in 0..n {
            if minus >> j & 1 == 0 {
                continue;
            }
            let u = v ^ (1 << j);
            let broken = settled & t.minus_at(u);
            if broken != 0 {
                return VerifyReport::fail(
                    NAME,
                    Witness::Edge {
                        from: Vertex::from_mask_unchecked(n, v),
                        to: Vertex::from_mask_unchecked(n, u),
                        coord: broken.trailing_zeros() as usize + 1,
                    },
                    all_vertices(t),
                );
            }
        }
    }
    VerifyReport::pass(NAME, all_vertices(t))
}

// ---------------------------------------------------------------------------
// Vertex statistics

/// Number of coordinates showing bit 0 with sign `-`.
pub fn level(v: Vertex, o: Outmap) -> usize {
    (!v.mask() & o.minus_mask()).count_ones() as usize
}

/// Number of coordinates showing bit 1 with sign `-`.
pub fn upper_minus_count(v: Vertex, o: Outmap) -> usize {
    (v.mask() & o.minus_mask()).count_ones() as usize
}

/// `|N_1| + Σ_{j ∈ N_0} j'` where `N_0`/`N_1` are the coordinates with
/// bit 0/1 and sign `-`, and `j' = ((j - k) mod n) + 1` relabels the
/// coordinates so that `k` comes first.
pub fn potential(v: Vertex, o: Outmap, k: usize) -> Result<usize> {
    let n = v.dim();
    if k == 0 || k > n {
        return Err(Error::CoordOutOfRange { coord: k, dim: n });
    }
    let zeros_out = CoordSet::from_mask(!v.mask() & o.minus_mask() & full_mask(n));
    let weighted: usize = zeros_out.iter().map(|j| (j + n - k) % n + 1).sum();
    Ok(upper_minus_count(v, o) + weighted)
}

// ---------------------------------------------------------------------------
// Paths

fn unique_sink(t: &UsoTable) -> Option<Vertex> {
    match t.sinks().as_slice() {
        [s] => Some(*s),
        _ => None,
    }
}

/// A directed path from `v` to the global sink of length exactly the
/// Hamming distance, if one exists.
pub fn monotone_path(t: &UsoTable, v: Vertex) -> Option<Vec<Vertex>> {
    monotone_path_counted(t, v).0
}

fn monotone_path_counted(t: &UsoTable, v: Vertex) -> (Option<Vec<Vertex>>, u64) {
    let Some(sink) = unique_sink(t) else {
        return (None, 0);
    };
    let n = t.dim();
    let target = sink.mask();
    // DFS over the subcube spanned by the differing coordinates
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![(v.mask(), vec![v.mask()])];
    while let Some((w, path)) = stack.pop() {
        if w == target {
            let path = path.into_iter().map(|m| Vertex::from_mask_unchecked(n, m)).collect();
            return (Some(path), seen.len() as u64);
        }
        if !seen.insert(w) {
            continue;
        }
        let moves = t.minus_at(w) & (w ^ target);
        for k in (0..n).rev() {
            if moves >> k & 1 == 1 {
                let u = w ^ (1 << k);
                let mut p = path.clone();
                p.push(u);
                stack.push((u, p));
            }
        }
    }
    (None, seen.len() as u64)
}

/// True iff a directed path of length `Hamming(v, sink)` leads from `v`
/// to the global sink.
pub fn monotone_path_exists(t: &UsoTable, v: Vertex) -> bool {
    monotone_path(t, v).is_some()
}

/// Checks [`monotone_path_exists`] from every vertex.
pub fn monotone_paths_everywhere(t: &UsoTable) -> VerifyReport {
    const NAME: &str = "monotone-paths";
    for (v, _) in t.iter() {
        if !monotone_path_exists(t, v) {
            return VerifyReport::fail(NAME, Witness::Path { vertices: vec![v] }, all_vertices(t));
        }
    }
    VerifyReport::pass(NAME, all_vertices(t))
}

/// A longest simple directed path, by exhaustive search (`n <= 4`).
pub fn longest_path(t: &UsoTable) -> Result<Vec<Vertex>> {
    let n = t.dim();
    if n > LONGEST_PATH_LIMIT {
        return Err(Error::Capability {
            what: "longest_path_exact",
            dim: n,
            limit: LONGEST_PATH_LIMIT,
        });
    }
    fn dfs(t: &UsoTable, n: usize, v: u64, visited: u32, path: &mut Vec<u64>, best: &mut Vec<u64>) {
        if path.len() > best.len() {
            best.clone_from(path);
        }
        let minus = t.minus_at(v);
        for k in 0..n {
            if minus >> k & 1 == 0 {
                continue;
            }
            let u = v ^ (1 << k);
            if visited >> u & 1 == 1 {
                continue;
            }
            path.push(u);
            dfs(t, n, u, visited | 1 << u, path, best);
            path.pop();
        }
    }
    let mut best = Vec::new();
    for v in 0..t.len() as u64 {
        let mut path = vec![v];
        dfs(t, n, v, 1 << v, &mut path, &mut best);
    }
    Ok(best.into_iter().map(|m| Vertex::from_mask_unchecked(n, m)).collect())
}

/// Length (in edges) of the longest simple directed path (`n <= 4`).
pub fn longest_path_exact(t: &UsoTable) -> Result<usize> {
    Ok(longest_path(t)?.len().saturating_sub(1))
}

/// Every directed path from the all-zero vertex to the sink has length
/// equal to the sink's weight (`n <= 4`, exhaustive).
pub fn origin_paths_are_shortest(t: &UsoTable) -> Result<VerifyReport> {
    const NAME: &str = "origin-paths";
    let n = t.dim();
    if n > LONGEST_PATH_LIMIT {
        return Err(Error::Capability {
            what: "origin path enumeration",
            dim: n,
            limit: LONGEST_PATH_LIMIT,
        });
    }
    let Some(sink) = unique_sink(t) else {
        return Err(Error::Dependency("orientation has no unique sink".into()));
    };
    fn dfs(t: &UsoTable, n: usize, sink: u64, want: usize, path: &mut Vec<u64>, visited: u32) -> Option<Vec<u64>> {
        let v = *path.last().unwrap();
        if v == sink {
            return (path.len() - 1 != want).then(|| path.clone());
        }
        let minus = t.minus_at(v);
        for k in 0..n {
            let u = v ^ (1 << k);
            if minus >> k & 1 == 0 || visited >> u & 1 == 1 {
                continue;
            }
            path.push(u);
            let found = dfs(t, n, sink, want, path, visited | 1 << u);
            path.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
    let mut path = vec![0u64];
    match dfs(t, n, sink.mask(), sink.weight(), &mut path, 1) {
        None => Ok(VerifyReport::pass(NAME, all_vertices(t))),
        Some(p) => Ok(VerifyReport::fail(
            NAME,
            Witness::Path {
                vertices: p.into_iter().map(|m| Vertex::from_mask_unchecked(n, m)).collect(),
            },
            all_vertices(t),
        )),
    }
}

// ---------------------------------------------------------------------------
// Named checks

/// Checks addressable by name from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Uso,
    UniqueCompletion,
    HoltKlee,
    TwoUpUniform,
    TwoUniform,
    LocallyUpUniform,
    LongestPath,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Uso,
        Check::UniqueCompletion,
        Check::HoltKlee,
        Check::TwoUpUniform,
        Check::TwoUniform,
        Check::LocallyUpUniform,
        Check::LongestPath,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Uso => "uso",
            Check::UniqueCompletion => "unique-completion",
            Check::HoltKlee => "holt-klee",
            Check::TwoUpUniform => "2uu",
            Check::TwoUniform => "2u",
            Check::LocallyUpUniform => "local-uu",
            Check::LongestPath => "longest-path",
        }
    }

    /// Runs the check. `longest-path` passes iff no directed path is longer
    /// than `2n`.
    pub fn run(self, t: &UsoTable) -> Result<VerifyReport> {
        Ok(match self {
            Check::Uso => is_uso(t),
            Check::UniqueCompletion => unique_completion_holds(t),
            Check::HoltKlee => holt_klee(t)?,
            Check::TwoUpUniform => is_two_up_uniform(t),
            Check::TwoUniform => is_two_uniform(t),
            Check::LocallyUpUniform => is_locally_up_uniform(t),
            Check::LongestPath => {
                let path = longest_path(t)?;
                if path.len().saturating_sub(1) <= 2 * t.dim() {
                    VerifyReport::pass(self.name(), all_vertices(t))
                } else {
                    VerifyReport::fail(self.name(), Witness::Path { vertices: path }, all_vertices(t))
                }
            }
        })
    }

    pub fn parse_list(s: &str) -> Result<Vec<Check>> {
        s.split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.trim().parse())
            .collect()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Check::ALL.iter().map(|c| c.name()).collect();
                Error::InvalidArgument(format!("unknown check {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uso::{antipodal_relabel, tabulate, uniform, MorrisOracle};

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    fn o(s: &str) -> Outmap {
        s.parse().unwrap()
    }

    fn set(c: &[usize]) -> CoordSet {
        CoordSet::from_coords(c.iter().copied()).unwrap()
    }

    fn morris(n: usize) -> UsoTable {
        tabulate(&MorrisOracle::new(n).unwrap()).unwrap()
    }

    fn table(rows: &[(&str, &str)]) -> UsoTable {
        let n = rows[0].0.len();
        let mut outmaps = vec![Outmap::sink(n); 1 << n];
        for (b, s) in rows {
            outmaps[v(b).mask() as usize] = o(s);
        }
        UsoTable::from_outmaps(n, outmaps).unwrap()
    }

    /// Both 00 and 11 are sinks of the 2-cube.
    fn two_sinks() -> UsoTable {
        table(&[("00", "++"), ("10", "--"), ("01", "--"), ("11", "++")])
    }

    #[test]
    fn uso_examples() {
        assert!(is_uso(&tabulate(&uniform(3).unwrap()).unwrap()).passed());
        assert!(is_uso(&morris(3)).passed());
        let r = is_uso(&two_sinks());
        assert!(!r.passed());
        match r.witness {
            Some(Witness::Subcube { subcube, sinks }) => {
                assert_eq!(subcube.free(), CoordSet::full(2));
                assert_eq!(sinks, 2);
            }
            w => panic!("{w:?}"),
        }
        assert_eq!(r.evaluations, 4);
    }

    #[test]
    fn unique_completion_examples() {
        let t = morris(3);
        assert_eq!(
            completion_matches(&t, CoordSet::empty(), v("000"), CoordSet::empty()),
            vec![v("111")]
        );
        // A = {1} with bit 1; signs (−,+) on coordinates 2,3
        assert_eq!(completion_matches(&t, set(&[1]), v("100"), set(&[2])), vec![v("100")]);
        assert!(unique_completion_holds(&t).passed());
        let r = unique_completion_holds(&two_sinks());
        assert!(!r.passed());
        assert!(matches!(r.witness, Some(Witness::Completion { .. })));
    }

    #[test]
    fn holt_klee_examples() {
        for n in 1..=5 {
            let t = tabulate(&uniform(n).unwrap()).unwrap();
            assert!(holt_klee(&t).unwrap().passed());
            assert_eq!(disjoint_path_count(&t).unwrap(), n);
        }
        assert!(holt_klee(&morris(3)).unwrap().passed());
        assert!(matches!(holt_klee(&two_sinks()), Err(Error::Dependency(_))));
    }

    #[test]
    fn flow_finds_bottleneck() {
        // unique source 000 and sink 111, but 010 can only continue via 110
        let t = table(&[
            ("000", "---"),
            ("100", "+-+"),
            ("010", "-++"),
            ("001", "--+"),
            ("110", "++-"),
            ("101", "+--"),
            ("011", "-+-"),
            ("111", "+++"),
        ]);
        assert_eq!(t.sources(), vec![v("000")]);
        assert_eq!(t.sinks(), vec![v("111")]);
        assert_eq!(disjoint_path_count(&t).unwrap(), 2);
    }

    #[test]
    fn two_up_uniform_examples() {
        assert!(is_two_up_uniform(&tabulate(&uniform(4).unwrap()).unwrap()).passed());
        let r = is_two_up_uniform(&morris(3));
        assert!(!r.passed());
        assert_eq!(
            r.witness,
            Some(Witness::Face {
                base: v("000"),
                free: set(&[1, 2]),
                reversed: false
            })
        );
        for n in [3, 5] {
            let t = tabulate(&antipodal_relabel(MorrisOracle::new(n).unwrap())).unwrap();
            assert!(is_two_up_uniform(&t).passed(), "n = {n}");
        }
    }

    #[test]
    fn two_uniform_examples() {
        assert!(is_two_uniform(&tabulate(&uniform(4).unwrap()).unwrap()).passed());
        let t = tabulate(&antipodal_relabel(MorrisOracle::new(5).unwrap())).unwrap();
        let r = is_two_uniform(&t);
        assert!(!r.passed());
        assert!(matches!(r.witness, Some(Witness::Face { reversed: true, .. })));
    }

    #[test]
    fn local_uniformity_examples() {
        assert!(is_locally_up_uniform(&tabulate(&uniform(4).unwrap()).unwrap()).passed());
        assert!(!is_locally_up_uniform(&morris(3)).passed());
        let t = tabulate(&antipodal_relabel(MorrisOracle::new(5).unwrap())).unwrap();
        assert!(is_locally_up_uniform(&t).passed());
    }

    #[test]
    fn level_examples() {
        assert_eq!(level(v("000"), o("---")), 3);
        assert_eq!(level(v("10110"), o("+--++")), 1);
        assert_eq!(level(v("111"), o("+++")), 0);
        assert_eq!(upper_minus_count(v("10110"), o("+--++")), 1);
        assert_eq!(upper_minus_count(v("000"), o("---")), 0);
        assert_eq!(upper_minus_count(v("110"), o("-+-")), 1);
    }

    #[test]
    fn potential_examples() {
        for n in [3usize, 5, 7, 9] {
            let src = Vertex::zero(n).unwrap();
            let p = potential(src, morris(n).get(src), 1).unwrap();
            assert_eq!(p, n * (n + 1) / 2);
        }
        assert_eq!(potential(v("100"), o("+-+"), 3).unwrap(), 3);
        // (0,1,…,1,0) with signs (+,+,−,+,−,…,+,−)
        for n in [5usize, 7, 9, 11] {
            let bits: String = (1..=n).map(|j| if j == 1 || j == n { '0' } else { '1' }).collect();
            let signs: String = (1..=n)
                .map(|j| if j >= 3 && j % 2 == 1 { '-' } else { '+' })
                .collect();
            let (x, s) = (v(&bits), o(&signs));
            assert_eq!(morris(n).get(x), s, "n = {n}");
            assert_eq!(potential(x, s, 1).unwrap(), 3 * (n - 1) / 2);
        }
        assert!(potential(v("000"), o("---"), 4).is_err());
    }

    #[test]
    fn monotone_path_examples() {
        let t = morris(3);
        assert_eq!(monotone_path(&t, v("111")).unwrap(), vec![v("111")]);
        assert_eq!(monotone_path(&t, v("101")).unwrap(), vec![v("101"), v("111")]);
        assert!(monotone_paths_everywhere(&t).passed());
        assert!(!monotone_path_exists(&two_sinks(), v("00")));
    }

    #[test]
    fn longest_path_examples() {
        assert_eq!(longest_path_exact(&tabulate(&uniform(3).unwrap()).unwrap()).unwrap(), 3);
        let t = morris(3);
        let path = longest_path(&t).unwrap();
        assert!(path.len() > 6);
        for w in path.windows(2) {
            let k = (w[0].mask() ^ w[1].mask()).trailing_zeros() as usize + 1;
            assert_eq!(t.get(w[0]).sign(k).unwrap(), crate::uso::Sign::Minus);
        }
        assert!(matches!(
            longest_path_exact(&morris(5)),
            Err(Error::Capability { limit: 4, .. })
        ));
        assert!(!Check::LongestPath.run(&t).unwrap().passed());
    }

    #[test]
    fn origin_path_law() {
        assert!(origin_paths_are_shortest(&tabulate(&uniform(4).unwrap()).unwrap())
            .unwrap()
            .passed());
        let r = origin_paths_are_shortest(&morris(3)).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn sign_persistence_examples() {
        assert!(sign_persistence(&tabulate(&uniform(4).unwrap()).unwrap()).passed());
        assert!(!sign_persistence(&morris(3)).passed());
    }

    #[test]
    fn check_names() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert_eq!(
            Check::parse_list("uso,holt-klee").unwrap(),
            vec![Check::Uso, Check::HoltKlee]
        );
        assert!(Check::parse_list("uso,bogus").is_err());
    }

    #[test]
    fn report_json_shape() {
        let r = is_two_up_uniform(&morris(3));
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["property"], "2uu");
        assert_eq!(j["verdict"], "fail");
        assert_eq!(j["witness"]["kind"], "face");
        assert_eq!(j["witness"]["base"], "000");
        assert_eq!(j["witness"]["free"], serde_json::json!([1, 2]));
        assert_eq!(j["evaluations"], 8);
    }
}
