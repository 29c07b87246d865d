//! Finite multisets of nonnegative integers and their conjugate profiles.
//!
//! A [`DegreeSequence`] stores a value→multiplicity map so that single
//! increments and decrements touch at most two entries. The sorted value
//! list is only materialised at serialization and display boundaries.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest degree accepted anywhere in the crate.
pub const MAX_DEGREE: u32 = i32::MAX as u32;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct DegreeSequence {
    counts: BTreeMap<u32, usize>,
    order: usize,
    sum: u64,
}

impl DegreeSequence {
    /// Builds the multiset of `values`, rejecting negative or oversized entries.
    pub fn new<I>(values: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<i64>,
    {
        let mut out = DegreeSequence::default();
        for v in values {
            let v: i64 = v.into();
            if v < 0 {
                return Err(Error::NegativeDegree(v));
            }
            if v > MAX_DEGREE as i64 {
                return Err(Error::DegreeTooLarge(v));
            }
            out.try_insert(v as u32)?;
        }
        Ok(out)
    }

    /// `n` copies of `value`.
    pub fn repeated(value: u32, n: usize) -> Result<Self> {
        Self::from_counts([(value, n)])
    }

    pub fn zeros(n: usize) -> Self {
        Self::repeated(0, n).expect("zeros cannot overflow")
    }

    /// Builds a multiset from `(value, multiplicity)` pairs; zero multiplicities are skipped.
    pub fn from_counts<I: IntoIterator<Item = (u32, usize)>>(pairs: I) -> Result<Self> {
        let mut out = DegreeSequence::default();
        for (value, mult) in pairs {
            if value > MAX_DEGREE {
                return Err(Error::DegreeTooLarge(value as i64));
            }
            if mult == 0 {
                continue;
            }
            let added = (value as u64)
                .checked_mul(mult as u64)
                .ok_or(Error::Overflow)?;
            out.sum = out.sum.checked_add(added).ok_or(Error::Overflow)?;
            out.order += mult;
            *out.counts.entry(value).or_insert(0) += mult;
        }
        Ok(out)
    }

    fn try_insert(&mut self, value: u32) -> Result<()> {
        self.sum = self.sum.checked_add(value as u64).ok_or(Error::Overflow)?;
        self.order += 1;
        *self.counts.entry(value).or_insert(0) += 1;
        Ok(())
    }

    pub(crate) fn insert(&mut self, value: u32) {
        self.try_insert(value).expect("degree sum overflow");
    }

    /// Removes one copy of `value`; returns false if it was absent.
    pub(crate) fn remove_one(&mut self, value: u32) -> bool {
        match self.counts.get_mut(&value) {
            Some(c) => {
                *c -= 1;
                if *c == 0 {
                    self.counts.remove(&value);
                }
                self.order -= 1;
                self.sum -= value as u64;
                true
            }
            None => false,
        }
    }

    /// In-place x-decrement. Caller guarantees `x > 0` and `x ∈ self`.
    pub(crate) fn decrement_in_place(&mut self, x: u32) {
        debug_assert!(x > 0);
        let removed = self.remove_one(x);
        debug_assert!(removed);
        self.insert(x - 1);
    }

    /// In-place x-increment. Caller guarantees `x ∈ self`.
    pub(crate) fn increment_in_place(&mut self, x: u32) {
        let removed = self.remove_one(x);
        debug_assert!(removed);
        self.insert(x + 1);
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.order
    }

    pub fn is_empty(&self) -> bool {
        self.order == 0
    }

    pub fn sum(&self) -> u64 {
        self.sum
    }

    /// Largest element, `None` for the empty multiset.
    pub fn max(&self) -> Option<u32> {
        self.counts.keys().next_back().copied()
    }

    pub fn min(&self) -> Option<u32> {
        self.counts.keys().next().copied()
    }

    pub fn min_positive(&self) -> Option<u32> {
        self.counts.range(1..).next().map(|(v, _)| *v)
    }

    /// Multiplicity of `z`.
    pub fn mu(&self, z: u32) -> usize {
        self.counts.get(&z).copied().unwrap_or(0)
    }

    pub fn contains(&self, z: u32) -> bool {
        self.counts.contains_key(&z)
    }

    pub fn is_all_zero(&self) -> bool {
        self.sum == 0
    }

    /// `(value, multiplicity)` pairs in increasing value order.
    pub fn counts(&self) -> impl DoubleEndedIterator<Item = (u32, usize)> + '_ {
        self.counts.iter().map(|(v, c)| (*v, *c))
    }

    /// Distinct values in increasing order.
    pub fn distinct(&self) -> impl DoubleEndedIterator<Item = u32> + '_ {
        self.counts.keys().copied()
    }

    /// All elements, nondecreasing.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.counts
            .iter()
            .flat_map(|(v, c)| std::iter::repeat_n(*v, *c))
    }

    /// Canonical sorted nondecreasing value list.
    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Number of elements satisfying `pred`.
    pub fn count_where(&self, pred: impl Fn(u32) -> bool) -> usize {
        self.counts
            .iter()
            .filter(|(v, _)| pred(**v))
            .map(|(_, c)| *c)
            .sum()
    }

    /// Loopless multigraph graphicality: even sum and sum ≥ 2·max.
    /// The empty multiset is graphical.
    pub fn is_graphical(&self) -> bool {
        match self.max() {
            None => true,
            Some(m) => self.sum.is_multiple_of(2) && self.sum >= 2 * m as u64,
        }
    }

    pub(crate) fn require_graphical(&self) -> Result<()> {
        if self.is_graphical() {
            return Ok(());
        }
        let reason = if self.sum % 2 == 1 {
            format!("{self} has odd sum {}", self.sum)
        } else {
            format!(
                "{self} has sum {} < 2*max = {}",
                self.sum,
                2 * self.max().unwrap_or(0) as u64
            )
        };
        Err(Error::NotGraphical(reason))
    }

    /// True iff every element is below `k`; the empty multiset is trivial.
    pub fn is_trivial(&self, k: u32) -> bool {
        self.max().is_none_or(|m| m < k)
    }

    pub fn sigma(&self) -> SigmaProfile {
        let top = self.max().unwrap_or(0) as usize;
        let mut values = vec![0usize; top + 1];
        for (v, c) in self.counts() {
            values[v as usize] += c;
        }
        // suffix sums turn multiplicities into "at least z" counts
        for z in (0..top).rev() {
            values[z] += values[z + 1];
        }
        SigmaProfile { values }
    }

    pub fn from_sigma(profile: &SigmaProfile) -> Self {
        profile.to_degree_sequence()
    }

    /// `self ⊎ other`.
    pub fn union(&self, other: &DegreeSequence) -> Result<DegreeSequence> {
        Self::from_counts(self.counts().chain(other.counts()))
    }

    /// `self ∖ other`, multiplicities floored at zero.
    pub fn difference(&self, other: &DegreeSequence) -> DegreeSequence {
        Self::from_counts(
            self.counts()
                .map(|(v, c)| (v, c.saturating_sub(other.mu(v)))),
        )
        .expect("difference cannot overflow")
    }

    /// Monospace Ferrers diagram, rows nonincreasing. With `k` set, a
    /// dashed rule is drawn between column `k` and column `k + 1`.
    pub fn render_ferrers(&self, k: Option<u32>) -> String {
        let mut rows: Vec<u32> = self.to_vec();
        rows.reverse();
        let mut out = String::new();
        for len in rows {
            let mut line = String::new();
            let width = match k {
                Some(k) => len.max(k),
                None => len,
            };
            for col in 0..width {
                if Some(col) == k {
                    line.push(FERRERS_RULE);
                }
                line.push(if col < len { FERRERS_CELL } else { ' ' });
            }
            if k == Some(width) {
                line.push(FERRERS_RULE);
            }
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

pub const FERRERS_CELL: char = '■';
pub const FERRERS_RULE: char = '┊';

impl fmt::Debug for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Accepts either the comma form `1,2,2,4` or a JSON array `[1,2,2,4]`.
impl FromStr for DegreeSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('[') {
            let values: Vec<i64> =
                serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
            return DegreeSequence::new(values);
        }
        if s.is_empty() {
            return Ok(DegreeSequence::default());
        }
        let values = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        DegreeSequence::new(values)
    }
}

impl Serialize for DegreeSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for DegreeSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<i64>::deserialize(deserializer)?;
        DegreeSequence::new(values).map_err(serde::de::Error::custom)
    }
}

/// Conjugate profile `[σ(0), σ(1), …, σ(M)]` with `σ(z) = 0` beyond `M`.
/// Trailing zeros after index 0 are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SigmaProfile {
    values: Vec<usize>,
}

impl SigmaProfile {
    pub fn new(mut values: Vec<usize>) -> Result<Self> {
        if let Some(i) = values.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::NotMonotone(i + 1));
        }
        while values.len() > 1 && values.last() == Some(&0) {
            values.pop();
        }
        if values.is_empty() {
            values.push(0);
        }
        Ok(SigmaProfile { values })
    }

    pub fn get(&self, z: usize) -> usize {
        self.values.get(z).copied().unwrap_or(0)
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// The unique multiset whose profile is `self`.
    pub fn to_degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::from_counts(
            (0..self.values.len()).map(|z| (z as u32, self.get(z) - self.get(z + 1))),
        )
        .expect("profile sizes fit in usize")
    }
}
