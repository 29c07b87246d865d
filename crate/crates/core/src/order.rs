//! Elementary steps and the reachability order `D ≼ E` on multisets of a
//! fixed order, plus pseudo-reduction enumeration.
//!
//! Everything here is a verification oracle. [`precedes`] is a breadth-first
//! search over an exponential state space and is capped by
//! [`PRECEDES_MAX_ORDER`] and [`PRECEDES_MAX_SUM`].

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{check_limit, Error, Result};
use crate::multiset::DegreeSequence;

pub const PRECEDES_MAX_ORDER: usize = 9;
pub const PRECEDES_MAX_SUM: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum StepKind {
    Addition,
    Transfer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ElementaryStep {
    pub kind: StepKind,
    pub x: u32,
    pub y: u32,
}

impl ElementaryStep {
    pub fn addition(x: u32, y: u32) -> Self {
        ElementaryStep {
            kind: StepKind::Addition,
            x,
            y,
        }
    }

    pub fn transfer(x: u32, y: u32) -> Self {
        ElementaryStep {
            kind: StepKind::Transfer,
            x,
            y,
        }
    }

    pub fn apply(&self, e: &DegreeSequence, k: u32) -> Result<DegreeSequence> {
        match self.kind {
            StepKind::Addition => addition_step(e, self.x, self.y),
            StepKind::Transfer => transfer_step(e, self.x, self.y, k),
        }
    }
}

fn transfer_allowed(x: u32, y: u32, k: u32) -> bool {
    x > k.max(y) || (x < y && y <= k)
}

/// Replaces one copy of `x` by `x − 1`.
pub fn apply_decrement(e: &DegreeSequence, x: u32) -> Result<DegreeSequence> {
    if x == 0 {
        return Err(Error::ZeroDecrement);
    }
    if !e.contains(x) {
        return Err(Error::NotAnElement(x));
    }
    let mut d = e.clone();
    d.decrement_in_place(x);
    Ok(d)
}

/// Replaces one copy of `x` by `x + 1`.
pub fn apply_increment(e: &DegreeSequence, x: u32) -> Result<DegreeSequence> {
    if !e.contains(x) {
        return Err(Error::NotAnElement(x));
    }
    let mut d = e.clone();
    d.increment_in_place(x);
    Ok(d)
}

/// `(x, y)`-addition: an `(x−1)`-increment then a `(y−1)`-increment,
/// with `1 ≤ x ≤ y ≤ max(E) + 1`.
pub fn addition_step(e: &DegreeSequence, x: u32, y: u32) -> Result<DegreeSequence> {
    let top = e.max().ok_or(Error::Empty)?;
    if x == 0 {
        return Err(Error::InvalidStep("addition requires x ≥ 1".into()));
    }
    if x > y {
        return Err(Error::InvalidStep(format!(
            "addition requires x ≤ y, got ({x},{y})"
        )));
    }
    if y > top + 1 {
        return Err(Error::InvalidStep(format!(
            "addition requires y ≤ max(E)+1 = {}, got y = {y}",
            top + 1
        )));
    }
    let first = apply_increment(e, x - 1)
        .map_err(|_| Error::InvalidStep(format!("x-1 = {} is not an element", x - 1)))?;
    apply_increment(&first, y - 1).map_err(|_| {
        Error::InvalidStep(format!(
            "y-1 = {} is not an element after the first increment",
            y - 1
        ))
    })
}

/// `(x, y)`-transfer: an `x`-decrement then a `(y−1)`-increment, with
/// `x > max(k, y)` or `x < y ≤ k`.
pub fn transfer_step(e: &DegreeSequence, x: u32, y: u32, k: u32) -> Result<DegreeSequence> {
    if x == 0 || y == 0 {
        return Err(Error::InvalidStep(
            "transfer requires positive x and y".into(),
        ));
    }
    if !transfer_allowed(x, y, k) {
        return Err(Error::InvalidStep(format!(
            "transfer ({x},{y}) needs x > max(k,y) or x < y ≤ k with k = {k}"
        )));
    }
    let first = apply_decrement(e, x)
        .map_err(|_| Error::InvalidStep(format!("x = {x} is not an element")))?;
    apply_increment(&first, y - 1).map_err(|_| {
        Error::InvalidStep(format!(
            "y-1 = {} is not an element after the decrement",
            y - 1
        ))
    })
}

/// Every multiset reachable from `e` by one elementary step, with the step.
/// Distinct steps may produce the same multiset.
pub fn elementary_successors(e: &DegreeSequence, k: u32) -> Vec<(ElementaryStep, DegreeSequence)> {
    let mut out = Vec::new();
    let Some(top) = e.max() else {
        return out;
    };
    for xm1 in e.distinct() {
        let x = xm1 + 1;
        let mut first = e.clone();
        first.increment_in_place(xm1);
        for ym1 in first.distinct().filter(|&v| v + 1 >= x && v <= top) {
            let mut d = first.clone();
            d.increment_in_place(ym1);
            out.push((ElementaryStep::addition(x, ym1 + 1), d));
        }
    }
    for x in e.distinct().filter(|&x| x > 0) {
        let mut first = e.clone();
        first.decrement_in_place(x);
        for ym1 in first.distinct() {
            let y = ym1 + 1;
            if transfer_allowed(x, y, k) {
                let mut d = first.clone();
                d.increment_in_place(ym1);
                out.push((ElementaryStep::transfer(x, y), d));
            }
        }
    }
    out
}

/// Decides `d ≼ e` by breadth-first search from `e`.
pub fn precedes(d: &DegreeSequence, e: &DegreeSequence, k: u32) -> Result<bool> {
    if d.order() != e.order() {
        return Err(Error::OrderMismatch(d.order(), e.order()));
    }
    check_limit("order", PRECEDES_MAX_ORDER, d.order())?;
    check_limit("sum", PRECEDES_MAX_SUM, d.sum().max(e.sum()) as usize)?;
    if d == e {
        return Ok(true);
    }
    if d.sum() < e.sum() || (d.sum() - e.sum()) % 2 == 1 {
        return Ok(false);
    }
    let target_sum = d.sum();
    let mut seen: HashSet<DegreeSequence> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(e.clone());
    queue.push_back(e.clone());
    while let Some(cur) = queue.pop_front() {
        for (_, next) in elementary_successors(&cur, k) {
            if next.sum() > target_sum {
                continue;
            }
            if &next == d {
                return Ok(true);
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

/// All graphical `E'` of order `|E| − 1` with `ΣE' = ΣA_0 − max(E)` and
/// `σ_{E'}(z) ≤ σ_{A_0}(z)` for every `z ≥ 1`, where `A_0 = E ∖ {max(E)}`.
/// Every reduction of `E` is among them. Sorted canonically.
pub fn pseudo_reductions(e: &DegreeSequence, k: u32) -> Result<Vec<DegreeSequence>> {
    e.require_graphical()?;
    if e.is_trivial(k) {
        return Err(Error::Trivial(k));
    }
    let top = e.max().expect("nontrivial is nonempty");
    let mut a0 = e.clone();
    a0.remove_one(top);
    let cap = a0.sigma();
    let target = (a0.sum() - top as u64) as usize;
    let n = a0.order();

    // σ(z) for z ≥ 1, chosen column by column
    let mut out = Vec::new();
    let mut cols: Vec<usize> = Vec::new();
    fn walk(
        z: usize,
        prev: usize,
        remaining: usize,
        cap: &crate::multiset::SigmaProfile,
        n: usize,
        cols: &mut Vec<usize>,
        out: &mut Vec<DegreeSequence>,
    ) {
        if remaining == 0 {
            let mut profile = vec![n];
            profile.extend(cols.iter().copied());
            let d = crate::multiset::SigmaProfile::new(profile)
                .expect("columns are nonincreasing")
                .to_degree_sequence();
            if d.is_graphical() {
                out.push(d);
            }
            return;
        }
        let hi = prev.min(cap.get(z));
        // later columns are bounded by this one and by the cap
        let tail: usize = (z + 1..cap.values().len()).map(|w| cap.get(w)).sum();
        for c in (1..=hi.min(remaining)).rev() {
            let tail_room: usize = (z + 1..cap.values().len())
                .map(|w| cap.get(w).min(c))
                .sum::<usize>()
                .min(tail);
            if c + tail_room < remaining {
                break;
            }
            cols.push(c);
            walk(z + 1, c, remaining - c, cap, n, cols, out);
            cols.pop();
        }
    }
    walk(1, n, target, &cap, n, &mut cols, &mut out);
    out.sort_by_key(|d| d.to_vec());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega::omega;

    fn ds(v: &[i64]) -> DegreeSequence {
        DegreeSequence::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn decrement_examples() {
        assert_eq!(
            apply_decrement(&ds(&[1, 2, 2, 4, 4, 5]), 5).unwrap(),
            ds(&[1, 2, 2, 4, 4, 4])
        );
        assert_eq!(apply_decrement(&ds(&[1]), 1).unwrap(), ds(&[0]));
        assert_eq!(apply_decrement(&ds(&[1]), 2), Err(Error::NotAnElement(2)));
        assert_eq!(apply_decrement(&ds(&[0]), 0), Err(Error::ZeroDecrement));
    }

    #[test]
    fn increment_examples() {
        assert_eq!(
            apply_increment(&ds(&[1, 2, 2, 4, 4, 5, 6]), 2).unwrap(),
            ds(&[1, 2, 3, 4, 4, 5, 6])
        );
        assert_eq!(apply_increment(&ds(&[0]), 0).unwrap(), ds(&[1]));
        assert_eq!(apply_increment(&ds(&[0]), 3), Err(Error::NotAnElement(3)));
    }

    #[test]
    fn addition_examples() {
        assert_eq!(
            addition_step(&ds(&[1, 2, 2, 4, 4, 5, 6]), 3, 7).unwrap(),
            ds(&[1, 2, 3, 4, 4, 5, 7])
        );
        assert_eq!(addition_step(&ds(&[0, 0]), 1, 1).unwrap(), ds(&[1, 1]));
        assert!(addition_step(&ds(&[0, 0]), 2, 1).is_err());
        assert!(addition_step(&ds(&[1, 1]), 1, 3).is_err());
        assert!(addition_step(&ds(&[1, 1]), 0, 1).is_err());
        // only one zero: second increment at 0 is impossible
        assert!(addition_step(&ds(&[0, 2]), 1, 1).is_err());
    }

    #[test]
    fn transfer_examples() {
        assert_eq!(
            transfer_step(&ds(&[0, 1, 2, 3, 3, 3]), 1, 3, 3).unwrap(),
            ds(&[0, 0, 3, 3, 3, 3])
        );
        let e = ds(&[0, 1, 1, 5, 5]);
        let d = transfer_step(&e, 5, 1, 3).unwrap();
        assert_eq!(d, ds(&[1, 1, 1, 4, 5]));
        assert!(transfer_step(&ds(&[2, 2]), 2, 2, 3).is_err());
    }

    #[test]
    fn precedes_examples() {
        let e = ds(&[1, 2, 2, 4, 4, 5, 6]);
        assert!(precedes(&e, &e, 3).unwrap());
        assert!(precedes(&ds(&[1, 2, 3, 4, 4, 5, 7]), &e, 3).unwrap());
        assert!(precedes(&ds(&[0, 0, 3, 3, 3, 3]), &ds(&[0, 1, 2, 3, 3, 3]), 3).unwrap());
        // sum can only grow along steps
        assert!(!precedes(&e, &ds(&[1, 2, 3, 4, 4, 5, 7]), 3).unwrap());
        assert_eq!(
            precedes(&ds(&[1, 1]), &ds(&[1, 1, 0]), 3),
            Err(Error::OrderMismatch(2, 3))
        );
        assert!(precedes(&ds(&[0; 10]), &ds(&[0; 10]), 1)
            .unwrap_err()
            .is_resource_guard());
    }

    #[test]
    fn successors_respect_identities() {
        let e = ds(&[0, 1, 2, 3, 3, 5]);
        for (step, d) in elementary_successors(&e, 3) {
            assert_eq!(step.apply(&e, 3).unwrap(), d);
            match step.kind {
                StepKind::Addition => assert_eq!(d.sum(), e.sum() + 2),
                StepKind::Transfer => assert_eq!(d.sum(), e.sum()),
            }
        }
    }

    #[test]
    fn pseudo_reduction_examples() {
        assert_eq!(
            pseudo_reductions(&ds(&[1, 1, 2]), 1).unwrap(),
            vec![ds(&[0, 0])]
        );
        assert_eq!(
            pseudo_reductions(&ds(&[2, 2, 2]), 1).unwrap(),
            vec![ds(&[1, 1])]
        );
        let e = ds(&[1, 2, 2, 4, 4, 5, 6]);
        let prs = pseudo_reductions(&e, 3).unwrap();
        assert!(prs.contains(&omega(&e, 3).unwrap()));
        assert_eq!(pseudo_reductions(&ds(&[1, 1]), 3), Err(Error::Trivial(3)));
    }

    #[test]
    fn pseudo_reductions_match_brute_force() {
        // brute force over all nondecreasing lists bounded by max(A_0)
        let e = ds(&[1, 2, 2, 4, 4, 5, 6]);
        let mut a0 = e.clone();
        a0.remove_one(6);
        let target = a0.sum() - 6;
        let sig = a0.sigma();
        let mut expected = Vec::new();
        let n = a0.order();
        let top = a0.max().unwrap();
        let mut stack = vec![(Vec::<u32>::new(), 0u32)];
        while let Some((cur, lo)) = stack.pop() {
            if cur.len() == n {
                let d = DegreeSequence::new(cur.iter().map(|&v| v as i64)).unwrap();
                let s = d.sigma();
                if d.sum() == target
                    && d.is_graphical()
                    && (1..=top as usize + 1).all(|z| s.get(z) <= sig.get(z))
                {
                    expected.push(d);
                }
                continue;
            }
            for v in lo..=top {
                let mut next = cur.clone();
                next.push(v);
                stack.push((next, v));
            }
        }
        expected.sort_by_key(|d| d.to_vec());
        assert_eq!(pseudo_reductions(&e, 3).unwrap(), expected);
    }
}
