//! Loopless multigraphs, the MAX algorithm, and worst-case witnesses.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_limit, Error, Result};
use crate::multiset::DegreeSequence;
use crate::omega;

/// Largest order accepted by [`max_worst_case`].
pub const WORST_CASE_MAX_ORDER: usize = 20;

/// Loopless multigraph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Multigraph {
    n: usize,
    edges: BTreeMap<(usize, usize), u32>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph {
            n,
            edges: BTreeMap::new(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        let mut g = Multigraph::new(n);
        for (u, v, m) in edges {
            g.add_edge(u, v, m)?;
        }
        Ok(g)
    }

    /// Adds `mult` parallel edges between `u` and `v`.
    pub fn add_edge(&mut self, u: usize, v: usize, mult: u32) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        if mult > 0 {
            *self.edges.entry((u.min(v), u.max(v))).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `(u, v, multiplicity)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.edges.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        self.edges.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n];
        for (u, v, m) in self.edges() {
            deg[u] += m;
            deg[v] += m;
        }
        deg
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::new(self.degrees().into_iter().map(i64::from)).expect("degrees are bounded")
    }

    fn adjacency(&self) -> Vec<Vec<(usize, u32)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (u, v, m) in self.edges() {
            adj[u].push((v, m));
            adj[v].push((u, m));
        }
        adj
    }
}

#[derive(Serialize, Deserialize)]
struct MultigraphRepr {
    n: usize,
    edges: Vec<(usize, usize, u32)>,
}

impl Serialize for Multigraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MultigraphRepr {
            n: self.n,
            edges: self.edges().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Multigraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MultigraphRepr::deserialize(deserializer)?;
        Multigraph::from_edges(repr.n, repr.edges).map_err(serde::de::Error::custom)
    }
}

pub fn degree_sequence_of(g: &Multigraph) -> DegreeSequence {
    g.degree_sequence()
}

/// Deterministic realization: vertex `i` carries the `i`-th smallest value of
/// `d`, and the two vertices of largest residual degree (lowest index on
/// ties) are joined one edge at a time.
pub fn realize(d: &DegreeSequence) -> Result<Multigraph> {
    d.require_graphical()?;
    let values = d.to_vec();
    let mut g = Multigraph::new(values.len());
    let mut heap: BinaryHeap<(u32, Reverse<usize>)> = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0)
        .map(|(i, &v)| (v, Reverse(i)))
        .collect();
    while let Some((du, Reverse(u))) = heap.pop() {
        let (dv, Reverse(v)) = heap.pop().expect("graphical sequences pair up");
        g.add_edge(u, v, 1)?;
        if du > 1 {
            heap.push((du - 1, Reverse(u)));
        }
        if dv > 1 {
            heap.push((dv - 1, Reverse(v)));
        }
    }
    Ok(g)
}

/// `G − v`, relabelling vertices above `v` down by one.
pub fn delete_vertex(g: &Multigraph, v: usize) -> Result<Multigraph> {
    if v >= g.n {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n });
    }
    let relabel = |w: usize| if w > v { w - 1 } else { w };
    Multigraph::from_edges(
        g.n - 1,
        g.edges()
            .filter(|&(a, b, _)| a != v && b != v)
            .map(|(a, b, m)| (relabel(a), relabel(b), m)),
    )
}

/// Repeated degree-preserving 2-edge swaps `(u,v),(x,y) → (u,x),(v,y)`;
/// swaps that would create a loop are skipped.
pub fn rewire<R: Rng>(g: &Multigraph, swaps: usize, rng: &mut R) -> Multigraph {
    let mut units: Vec<(usize, usize)> = g
        .edges()
        .flat_map(|(u, v, m)| std::iter::repeat_n((u, v), m as usize))
        .collect();
    if units.len() >= 2 {
        for _ in 0..swaps {
            let i = rng.gen_range(0..units.len());
            let j = rng.gen_range(0..units.len());
            if i == j {
                continue;
            }
            let (u, v) = units[i];
            let (mut x, mut y) = units[j];
            if rng.gen_bool(0.5) {
                std::mem::swap(&mut x, &mut y);
            }
            if u == x || v == y {
                continue;
            }
            units[i] = (u, x);
            units[j] = (v, y);
        }
    }
    Multigraph::from_edges(g.n, units.into_iter().map(|(a, b)| (a, b, 1)))
        .expect("swaps keep endpoints distinct and in range")
}

/// Picks one vertex among the current maximum-degree candidates
/// (original labels, ascending).
pub trait Chooser {
    fn choose(&mut self, candidates: &[usize]) -> Result<usize>;

    /// Called once MAX halts.
    fn finish(&mut self) -> Result<()> {
        Ok(())
    }
}

pub struct LowestIndex;

impl Chooser for LowestIndex {
    fn choose(&mut self, candidates: &[usize]) -> Result<usize> {
        Ok(candidates[0])
    }
}

pub struct HighestIndex;

impl Chooser for HighestIndex {
    fn choose(&mut self, candidates: &[usize]) -> Result<usize> {
        Ok(*candidates.last().expect("nonempty"))
    }
}

pub struct RandomChooser<R>(pub R);

impl<R: Rng> Chooser for RandomChooser<R> {
    fn choose(&mut self, candidates: &[usize]) -> Result<usize> {
        Ok(candidates[self.0.gen_range(0..candidates.len())])
    }
}

/// Replays a deletion script, rejecting any non-maximum choice.
pub struct Scripted {
    script: Vec<usize>,
    pos: usize,
}

impl Scripted {
    pub fn new(script: Vec<usize>) -> Self {
        Scripted { script, pos: 0 }
    }
}

impl Chooser for Scripted {
    fn choose(&mut self, candidates: &[usize]) -> Result<usize> {
        let Some(&v) = self.script.get(self.pos) else {
            return Err(Error::Script(format!(
                "script ended after {} deletions but MAX continues",
                self.pos
            )));
        };
        if !candidates.contains(&v) {
            return Err(Error::Script(format!(
                "deletion {} removes vertex {v}, which is not of maximum degree (candidates {candidates:?})",
                self.pos
            )));
        }
        self.pos += 1;
        Ok(v)
    }

    fn finish(&mut self) -> Result<()> {
        if self.pos < self.script.len() {
            return Err(Error::Script(format!(
                "MAX halted after {} deletions but the script has {}",
                self.pos,
                self.script.len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deletion {
    pub vertex: usize,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxRun {
    /// Surviving vertices, ascending.
    pub independent_set: Vec<usize>,
    pub log: Vec<Deletion>,
}

impl MaxRun {
    pub fn script(&self) -> DeletionScript {
        DeletionScript {
            deletions: self.log.iter().map(|d| d.vertex).collect(),
        }
    }
}

/// Vertex labels of the original graph, in deletion order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DeletionScript {
    pub deletions: Vec<usize>,
}

/// Runs MAX: while the residual maximum degree is at least `k`, delete the
/// maximum-degree vertex picked by `chooser`.
pub fn max_run<C: Chooser + ?Sized>(g: &Multigraph, k: u32, chooser: &mut C) -> Result<MaxRun> {
    let adj = g.adjacency();
    let mut deg: Vec<u64> = g.degrees().into_iter().map(u64::from).collect();
    let mut alive = vec![true; g.n];
    let mut log = Vec::new();
    loop {
        let top = (0..g.n).filter(|&v| alive[v]).map(|v| deg[v]).max();
        let Some(top) = top.filter(|&t| t >= k as u64) else {
            break;
        };
        let candidates: Vec<usize> = (0..g.n).filter(|&v| alive[v] && deg[v] == top).collect();
        let v = chooser.choose(&candidates)?;
        alive[v] = false;
        for &(w, m) in &adj[v] {
            if alive[w] {
                deg[w] -= m as u64;
            }
        }
        log.push(Deletion {
            vertex: v,
            degree: top as u32,
        });
    }
    chooser.finish()?;
    Ok(MaxRun {
        independent_set: (0..g.n).filter(|&v| alive[v]).collect(),
        log,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WorstCase {
    pub min_size: usize,
    pub script: DeletionScript,
}

/// Exact minimum output size of MAX over every sequence of legal choices.
///
/// The residual graph after any run prefix is the subgraph induced by the
/// surviving vertex set, so the memo is keyed on that set as a bitmask.
pub fn max_worst_case(g: &Multigraph, k: u32) -> Result<WorstCase> {
    check_limit("order", WORST_CASE_MAX_ORDER, g.n)?;
    let n = g.n;
    let mut mat = vec![0u32; n * n];
    for (u, v, m) in g.edges() {
        mat[u * n + v] = m;
        mat[v * n + u] = m;
    }
    let mut memo: HashMap<u32, (usize, Option<usize>)> = HashMap::new();

    fn solve(
        alive: u32,
        n: usize,
        k: u32,
        mat: &[u32],
        memo: &mut HashMap<u32, (usize, Option<usize>)>,
    ) -> usize {
        if let Some(&(best, _)) = memo.get(&alive) {
            return best;
        }
        let mut deg = vec![0u64; n];
        let mut top = 0u64;
        for v in (0..n).filter(|v| alive >> v & 1 == 1) {
            deg[v] = (0..n)
                .filter(|u| alive >> u & 1 == 1)
                .map(|u| mat[v * n + u] as u64)
                .sum();
            top = top.max(deg[v]);
        }
        let result = if top < k as u64 {
            (alive.count_ones() as usize, None)
        } else {
            let mut best = (usize::MAX, None);
            for v in (0..n).filter(|&v| alive >> v & 1 == 1 && deg[v] == top) {
                let size = solve(alive & !(1 << v), n, k, mat, memo);
                if size < best.0 {
                    best = (size, Some(v));
                }
            }
            best
        };
        memo.insert(alive, result);
        result.0
    }

    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let min_size = solve(full, n, k, &mat, &mut memo);
    let mut deletions = Vec::new();
    let mut alive = full;
    while let Some(&(_, Some(v))) = memo.get(&alive) {
        deletions.push(v);
        alive &= !(1 << v);
    }
    Ok(WorstCase {
        min_size,
        script: DeletionScript { deletions },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub graph: Multigraph,
    pub script: DeletionScript,
    pub b: usize,
}

/// A multigraph with degree sequence `d` and a legal MAX run on it that
/// leaves exactly `b_k(d)` vertices.
///
/// The last Ω level of a nontrivial chain is always the degenerate branch, so
/// that level is realized directly and one of its maximum-degree vertices is
/// deleted. Every earlier level is rebuilt by attaching a new vertex `u` along
/// the reversed decrement prefix, joining `u` to the lowest-index vertex whose
/// current degree is `a_{i+1} − 1`.
pub fn construct_worst_case(d: &DegreeSequence, k: u32) -> Result<Witness> {
    let trace = omega::b(d, k)?;
    if trace.p == 0 {
        return Ok(Witness {
            graph: realize(d)?,
            script: DeletionScript::default(),
            b: trace.b,
        });
    }
    let last = &trace.steps[trace.p - 1];
    debug_assert!(last.degenerate);
    let mut g = realize(&last.input)?;
    let degs = g.degrees();
    let top = *degs.iter().max().expect("nontrivial level is nonempty");
    let final_victim = degs.iter().position(|&x| x == top).unwrap();
    // deletions are collected innermost-first and reversed at the end
    let mut script_rev = vec![final_victim];

    for step in trace.steps[..trace.p - 1].iter().rev() {
        let u = g.n;
        let mut grown = Multigraph::new(g.n + 1);
        for (a, b, m) in g.edges() {
            grown.add_edge(a, b, m)?;
        }
        let mut deg = grown.degrees();
        for &a in step.applied.iter().rev() {
            let want = a - 1;
            let w = (0..u)
                .find(|&w| deg[w] == want)
                .expect("A_{i+1} contains a_{i+1} - 1");
            grown.add_edge(u, w, 1)?;
            deg[w] += 1;
            deg[u] += 1;
        }
        g = grown;
        script_rev.push(u);
    }
    script_rev.reverse();
    debug_assert_eq!(g.degree_sequence(), *d);
    Ok(Witness {
        graph: g,
        script: DeletionScript {
            deletions: script_rev,
        },
        b: trace.b,
    })
}
