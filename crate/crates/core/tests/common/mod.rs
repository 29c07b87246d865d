#![allow(dead_code)]

use kindep::DegreeSequence;

/// Every multiset with `1 ≤ order ≤ max_order`, elements in `min_value..`,
/// and sum at most `max_sum`, each exactly once.
pub fn multisets(max_order: usize, max_sum: u64, min_value: u32) -> Vec<DegreeSequence> {
    fn rec(
        cur: &mut Vec<u32>,
        lo: u32,
        sum: u64,
        max_order: usize,
        max_sum: u64,
        out: &mut Vec<DegreeSequence>,
    ) {
        if !cur.is_empty() {
            out.push(DegreeSequence::new(cur.iter().map(|&v| v as i64)).unwrap());
        }
        if cur.len() == max_order {
            return;
        }
        let mut v = lo;
        while sum + v as u64 <= max_sum {
            cur.push(v);
            rec(cur, v, sum + v as u64, max_order, max_sum, out);
            cur.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), min_value, 0, max_order, max_sum, &mut out);
    out
}

pub fn graphical(max_order: usize, max_sum: u64) -> Vec<DegreeSequence> {
    multisets(max_order, max_sum, 0)
        .into_iter()
        .filter(|d| d.is_graphical())
        .collect()
}

pub fn ds(values: &[i64]) -> DegreeSequence {
    DegreeSequence::new(values.iter().copied()).unwrap()
}
