//! Multigraphs with loops: the exact minimum of `α_k` over all realizations
//! of a degree sequence, matching extremal constructions, and brute-force
//! oracles. A loop adds 2 to the degree of its vertex.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_limit, Error, Result};
use crate::multiset::DegreeSequence;

pub const BRUTEFORCE_MAX_ORDER: usize = 14;
pub const ENUMERATION_MAX_ORDER: usize = 6;
pub const ENUMERATION_MAX_SUM: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LoopMultigraph {
    n: usize,
    edges: BTreeMap<(usize, usize), u32>,
}

impl LoopMultigraph {
    pub fn new(n: usize) -> Self {
        LoopMultigraph {
            n,
            edges: BTreeMap::new(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        let mut g = LoopMultigraph::new(n);
        for (u, v, m) in edges {
            g.add_edge(u, v, m)?;
        }
        Ok(g)
    }

    /// `u == v` adds `mult` loops.
    pub fn add_edge(&mut self, u: usize, v: usize, mult: u32) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if mult > 0 {
            *self.edges.entry((u.min(v), u.max(v))).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.edges.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        self.edges.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    pub fn loops(&self, v: usize) -> u32 {
        self.multiplicity(v, v)
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n];
        for (u, v, m) in self.edges() {
            if u == v {
                deg[u] += 2 * m;
            } else {
                deg[u] += m;
                deg[v] += m;
            }
        }
        deg
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::new(self.degrees().into_iter().map(i64::from)).expect("degrees are bounded")
    }
}

#[derive(Serialize, Deserialize)]
struct LoopMultigraphRepr {
    n: usize,
    edges: Vec<(usize, usize, u32)>,
}

impl Serialize for LoopMultigraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        LoopMultigraphRepr {
            n: self.n,
            edges: self.edges().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LoopMultigraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = LoopMultigraphRepr::deserialize(deserializer)?;
        LoopMultigraph::from_edges(repr.n, repr.edges).map_err(serde::de::Error::custom)
    }
}

/// Minimum of `α_k(G)` over loop multigraphs `G` with degree sequence `d`.
///
/// With `s` positive elements below `k` and `c` elements equal to `k`, the
/// value is `s` for even `k` and `max(s, ⌈(s + c)/2⌉)` for odd `k`. Each zero
/// element is an isolated vertex and adds exactly one.
pub fn alpha_k_min_loops(d: &DegreeSequence, k: u32) -> Result<usize> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if d.sum() % 2 == 1 {
        return Err(Error::OddSum);
    }
    let zeros = d.mu(0);
    let s = d.count_where(|x| x > 0 && x < k);
    let c = d.mu(k);
    let positive_part = if k.is_multiple_of(2) {
        s
    } else {
        s.max((s + c).div_ceil(2))
    };
    Ok(positive_part + zeros)
}

/// A loop multigraph attaining [`alpha_k_min_loops`]. Vertex `i` carries the
/// `i`-th smallest element of `d`.
///
/// Even `k`: odd-degree vertices are paired by single edges and all remaining
/// degree goes into loops. Odd `k`: a matching `M_1` pairs degree-`k` vertices
/// with low-degree vertices (and with each other once those run out), a second
/// matching `M_2` fixes parities, and the rest is loops. Zero elements stay
/// isolated and are left out of both matchings.
pub fn construct_extremal_loop_multigraph(d: &DegreeSequence, k: u32) -> Result<LoopMultigraph> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if d.sum() % 2 == 1 {
        return Err(Error::OddSum);
    }
    let deg = d.to_vec();
    let n = deg.len();
    let mut g = LoopMultigraph::new(n);
    let mut matched = vec![0u32; n];
    let pair_up = |g: &mut LoopMultigraph, verts: &[usize], matched: &mut Vec<u32>| -> Result<()> {
        for pair in verts.chunks(2) {
            g.add_edge(pair[0], pair[1], 1)?;
            matched[pair[0]] += 1;
            matched[pair[1]] += 1;
        }
        Ok(())
    };

    if k.is_multiple_of(2) {
        let odd: Vec<usize> = (0..n).filter(|&i| deg[i] % 2 == 1).collect();
        pair_up(&mut g, &odd, &mut matched)?;
    } else {
        // zeros sort first; the matchings live on the positive suffix
        let z = d.mu(0);
        let s = deg.iter().filter(|&&x| x > 0 && x < k).count();
        let c = deg.iter().filter(|&&x| x == k).count();
        let mut in_m1 = vec![false; n];
        let mut m1 = Vec::new();
        for i in 0..c.min(s) {
            m1.push((z + i, z + s + i));
        }
        if c > s {
            for i in 0..(c - s) / 2 {
                m1.push((z + 2 * s + 2 * i, z + 2 * s + 2 * i + 1));
            }
        }
        for &(a, b) in &m1 {
            g.add_edge(a, b, 1)?;
            matched[a] += 1;
            matched[b] += 1;
            in_m1[a] = true;
            in_m1[b] = true;
        }
        let m2: Vec<usize> = (0..n)
            .filter(|&i| deg[i] > 0 && in_m1[i] == deg[i].is_multiple_of(2))
            .collect();
        debug_assert_eq!(m2.len() % 2, 0);
        pair_up(&mut g, &m2, &mut matched)?;
    }

    for i in 0..n {
        let rest = deg[i] - matched[i];
        debug_assert_eq!(rest % 2, 0);
        g.add_edge(i, i, rest / 2)?;
    }
    Ok(g)
}

/// Exact `α_k(G)` by subset enumeration.
pub fn alpha_k_bruteforce(g: &LoopMultigraph, k: u32) -> Result<usize> {
    check_limit("order", BRUTEFORCE_MAX_ORDER, g.n)?;
    let n = g.n;
    let mut mat = vec![0u64; n * n];
    for (u, v, m) in g.edges() {
        if u == v {
            mat[u * n + u] = 2 * m as u64;
        } else {
            mat[u * n + v] = m as u64;
            mat[v * n + u] = m as u64;
        }
    }
    let mut best = 0;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let independent = (0..n).filter(|v| mask >> v & 1 == 1).all(|v| {
            let induced: u64 = (0..n)
                .filter(|u| mask >> u & 1 == 1)
                .map(|u| mat[v * n + u])
                .sum();
            induced < k as u64
        });
        if independent {
            best = size;
        }
    }
    Ok(best)
}

/// Every labeled loop multigraph with degree sequence `d`, vertex `i`
/// carrying the `i`-th smallest element.
pub fn enumerate_loop_realizations(d: &DegreeSequence) -> Result<LoopRealizations> {
    check_limit("order", ENUMERATION_MAX_ORDER, d.order())?;
    check_limit("sum", ENUMERATION_MAX_SUM, d.sum() as usize)?;
    Ok(LoopRealizations::new(d.to_vec()))
}

/// Depth-first enumeration over pair multiplicities in the order
/// `(0,0), (0,1), …, (0,n−1), (1,1), …`. The last pair touching a vertex is
/// forced to use up its residual degree.
pub struct LoopRealizations {
    n: usize,
    pairs: Vec<(usize, usize)>,
    residual: Vec<u32>,
    chosen: Vec<u32>,
    started: bool,
    done: bool,
}

impl LoopRealizations {
    fn new(degrees: Vec<u32>) -> Self {
        let n = degrees.len();
        let pairs = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        LoopRealizations {
            n,
            pairs,
            residual: degrees,
            chosen: Vec::new(),
            started: false,
            done: false,
        }
    }

    fn range(&self, p: usize) -> Option<(u32, u32)> {
        let (i, j) = self.pairs[p];
        let last_for_i = j == self.n - 1;
        if i == j {
            let hi = self.residual[i] / 2;
            if last_for_i {
                return self.residual[i].is_multiple_of(2).then_some((hi, hi));
            }
            Some((0, hi))
        } else {
            let hi = self.residual[i].min(self.residual[j]);
            if last_for_i {
                return (self.residual[i] <= self.residual[j])
                    .then_some((self.residual[i], self.residual[i]));
            }
            Some((0, hi))
        }
    }

    fn apply(&mut self, p: usize, m: u32, sign: bool) {
        let (i, j) = self.pairs[p];
        let amount = |r: &mut u32, by: u32| {
            if sign {
                *r -= by
            } else {
                *r += by
            }
        };
        if i == j {
            amount(&mut self.residual[i], 2 * m);
        } else {
            amount(&mut self.residual[i], m);
            amount(&mut self.residual[j], m);
        }
    }

    /// Advances the deepest choice that still has room; false when exhausted.
    fn backtrack(&mut self) -> bool {
        while let Some(m) = self.chosen.pop() {
            let p = self.chosen.len();
            self.apply(p, m, false);
            let (_, hi) = self.range(p).expect("range was valid when chosen");
            if m < hi {
                self.chosen.push(m + 1);
                self.apply(p, m + 1, true);
                return true;
            }
        }
        false
    }

    fn current(&self) -> LoopMultigraph {
        LoopMultigraph::from_edges(
            self.n,
            self.pairs
                .iter()
                .zip(&self.chosen)
                .map(|(&(i, j), &m)| (i, j, m)),
        )
        .expect("pairs are in range")
    }
}

impl Iterator for LoopRealizations {
    type Item = LoopMultigraph;

    fn next(&mut self) -> Option<LoopMultigraph> {
        if self.done {
            return None;
        }
        if self.started && !self.backtrack() {
            self.done = true;
            return None;
        }
        self.started = true;
        while self.chosen.len() < self.pairs.len() {
            let p = self.chosen.len();
            match self.range(p) {
                Some((lo, hi)) if lo <= hi => {
                    self.chosen.push(lo);
                    self.apply(p, lo, true);
                }
                _ => {
                    if !self.backtrack() {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
        Some(self.current())
    }
}
