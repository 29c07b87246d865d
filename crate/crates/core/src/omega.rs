//! The canonical worst-case reduction Ω, decrement sequences, and `b_k(D)`.
//!
//! Given a degree sequence `D` with maximum `m`, let `A_0 = D ∖ {m}`. Unless
//! `ΣA_0 < m + 2k` or `max(A_0) < k` (in which case every reduction is trivial
//! and Ω is the all-zero sequence), each step decrements either the current
//! maximum (while it exceeds `k`) or the smallest positive element. Ω(D) is
//! the multiset after `m` such decrements. `b_k(D)` is the order of the first
//! trivial term of the chain `D, Ω(D), Ω²(D), …`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiset::DegreeSequence;

/// Value decremented next from `a`: the maximum while it exceeds `k`,
/// otherwise the smallest positive element.
pub(crate) fn next_decrement(a: &DegreeSequence, k: u32) -> Option<u32> {
    match a.max() {
        Some(m) if m > k => Some(m),
        _ => a.min_positive(),
    }
}

/// Checks the degenerate-branch conditions before any decrementing.
fn degenerate(a0: &DegreeSequence, m: u32, k: u32) -> bool {
    a0.sum() < m as u64 + 2 * k as u64 || a0.max().is_none_or(|x| x < k)
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        Err(Error::ZeroK)
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecrementTrace {
    pub k: u32,
    pub input: DegreeSequence,
    pub max: u32,
    pub a0: DegreeSequence,
    /// `ΣA_0`, the length of the full decrement sequence.
    pub s: u64,
    /// The decrement sequence; empty in the degenerate branch.
    pub a: Vec<u32>,
    pub omega: DegreeSequence,
    pub degenerate: bool,
}

impl DecrementTrace {
    /// Replays the sequence and returns `A_0, A_1, …, A_s`.
    pub fn intermediates(&self) -> Vec<DegreeSequence> {
        let mut cur = self.a0.clone();
        let mut out = Vec::with_capacity(self.a.len() + 1);
        out.push(cur.clone());
        for &x in &self.a {
            cur.decrement_in_place(x);
            out.push(cur.clone());
        }
        out
    }
}

/// Full decrement sequence of a graphical, nontrivial `d`.
pub fn decrement_sequence(d: &DegreeSequence, k: u32) -> Result<DecrementTrace> {
    check_k(k)?;
    d.require_graphical()?;
    let m = d.max().ok_or(Error::Empty)?;
    if m < k {
        return Err(Error::Trivial(k));
    }
    let mut a0 = d.clone();
    a0.remove_one(m);
    let s = a0.sum();
    if degenerate(&a0, m, k) {
        return Ok(DecrementTrace {
            k,
            input: d.clone(),
            max: m,
            omega: DegreeSequence::zeros(d.order() - 1),
            a0,
            s,
            a: Vec::new(),
            degenerate: true,
        });
    }
    let mut cur = a0.clone();
    let mut a = Vec::with_capacity(s as usize);
    let mut omega = None;
    for i in 0..s {
        if i == m as u64 {
            omega = Some(cur.clone());
        }
        let x = next_decrement(&cur, k).expect("positive element remains while i < s");
        cur.decrement_in_place(x);
        a.push(x);
    }
    let omega = omega.unwrap_or(cur);
    Ok(DecrementTrace {
        k,
        input: d.clone(),
        max: m,
        a0,
        s,
        a,
        omega,
        degenerate: false,
    })
}

/// One Ω application with the `m` decrements actually used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaStep {
    pub input: DegreeSequence,
    pub output: DegreeSequence,
    pub degenerate: bool,
    /// `a_1, …, a_m` (empty when degenerate).
    pub applied: Vec<u32>,
}

fn omega_step(d: &DegreeSequence, k: u32) -> Result<OmegaStep> {
    let m = d.max().ok_or(Error::Empty)?;
    let mut a = d.clone();
    a.remove_one(m);
    if degenerate(&a, m, k) {
        return Ok(OmegaStep {
            input: d.clone(),
            output: DegreeSequence::zeros(d.order() - 1),
            degenerate: true,
            applied: Vec::new(),
        });
    }
    let mut applied = Vec::with_capacity(m as usize);
    for _ in 0..m {
        let x = next_decrement(&a, k).expect("ΣA_0 ≥ m guarantees a positive element");
        a.decrement_in_place(x);
        applied.push(x);
    }
    Ok(OmegaStep {
        input: d.clone(),
        output: a,
        degenerate: false,
        applied,
    })
}

/// Ω(D). A trivial nonempty `d` maps to the all-zero sequence of order `n − 1`.
pub fn omega(d: &DegreeSequence, k: u32) -> Result<DegreeSequence> {
    check_k(k)?;
    if d.is_empty() {
        return Err(Error::Empty);
    }
    d.require_graphical()?;
    Ok(omega_step(d, k)?.output)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BTrace {
    pub k: u32,
    pub b: usize,
    pub p: usize,
    /// `Ω^0(D), …, Ω^p(D)`; only the last term is trivial.
    pub chain: Vec<DegreeSequence>,
    #[serde(skip)]
    pub steps: Vec<OmegaStep>,
}

/// `b_k(D)` together with the Ω-chain that realises it.
pub fn b(d: &DegreeSequence, k: u32) -> Result<BTrace> {
    check_k(k)?;
    d.require_graphical()?;
    let mut chain = vec![d.clone()];
    let mut steps = Vec::new();
    let mut cur = d.clone();
    while !cur.is_trivial(k) {
        let step = omega_step(&cur, k)?;
        cur = step.output.clone();
        chain.push(cur.clone());
        steps.push(step);
    }
    let p = steps.len();
    Ok(BTrace {
        k,
        b: d.order() - p,
        p,
        chain,
        steps,
    })
}

/// `b_k(D)` without recording the chain.
pub fn b_value(d: &DegreeSequence, k: u32) -> Result<usize> {
    check_k(k)?;
    d.require_graphical()?;
    let mut cur = d.clone();
    let mut p = 0;
    while let Some(m) = cur.max().filter(|&m| m >= k) {
        cur.remove_one(m);
        p += 1;
        if degenerate(&cur, m, k) {
            // every reduction is trivial from here
            break;
        }
        for _ in 0..m {
            let x = next_decrement(&cur, k).expect("positive element available");
            cur.decrement_in_place(x);
        }
    }
    Ok(d.order() - p)
}
