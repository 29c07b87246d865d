//! Lower bounds on pair-covering numbers `C_λ(v, κ)`.
//!
//! A covering with `z` blocks has an excess multigraph whose degree sequence
//! dominates a two-valued sequence `D(z)`. MAX on that multigraph finds an
//! `(r − λ)`-independent set of at least `b_{r−λ}(D(z))` points, and that many
//! blocks are needed, so `b_{r−λ}(D(z)) > z` rules out `z` blocks.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiset::DegreeSequence;
use crate::omega;

pub const SCHONHEIM_SOURCE: &str = "schonheim";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoveringParams {
    pub v: u64,
    pub kappa: u64,
    pub lambda: u64,
}

impl CoveringParams {
    /// Requires `3 ≤ κ < v` and `λ ≥ 1`.
    pub fn new(v: u64, kappa: u64, lambda: u64) -> Result<Self> {
        if kappa < 3 {
            return Err(Error::InvalidParams(format!("kappa = {kappa} < 3")));
        }
        if kappa >= v {
            return Err(Error::InvalidParams(format!("kappa = {kappa} ≥ v = {v}")));
        }
        if lambda == 0 {
            return Err(Error::InvalidParams("lambda must be positive".into()));
        }
        Ok(CoveringParams { v, kappa, lambda })
    }

    /// `(r, d)` with `λ(v−1) = r(κ−1) − d` and `0 ≤ d < κ−1`.
    pub fn replication(&self) -> (u64, u64) {
        let need = self.lambda * (self.v - 1);
        let r = need.div_ceil(self.kappa - 1);
        (r, r * (self.kappa - 1) - need)
    }
}

/// `⌈v·r/κ⌉` with `r = ⌈λ(v−1)/(κ−1)⌉`.
pub fn schonheim(params: &CoveringParams) -> u64 {
    let (r, _) = params.replication();
    (params.v * r).div_ceil(params.kappa)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveringBoundReport {
    pub params: CoveringParams,
    pub z: u64,
    pub r: u64,
    pub d: u64,
    pub s: u64,
    pub ell: u64,
    pub degrees: DegreeSequence,
    pub k: u64,
    /// `b_k(D)`; `None` until evaluated, or when `D` is not graphical.
    pub b: Option<usize>,
    pub contradiction: bool,
}

/// The excess profile `D(z)` for a hypothetical covering with `z` blocks.
pub fn excess_profile(params: &CoveringParams, z: u64) -> Result<CoveringBoundReport> {
    let (r, d) = params.replication();
    let CoveringParams { v, kappa, lambda } = *params;
    let kz = kappa * z;
    let rv = r * v;
    if kz < rv {
        return Err(Error::BelowReplication { z, kz, rv });
    }
    let s = (kz - rv) / v;
    let ell = (kz - rv) % v;
    let high = d + (s + 1) * (kappa - 1);
    let low = d + s * (kappa - 1);
    let to_u32 = |x: u64| u32::try_from(x).map_err(|_| Error::DegreeTooLarge(x as i64));
    let degrees = DegreeSequence::from_counts([
        (to_u32(high)?, ell as usize),
        (to_u32(low)?, (v - ell) as usize),
    ])?;
    Ok(CoveringBoundReport {
        params: *params,
        z,
        r,
        d,
        s,
        ell,
        degrees,
        k: r - lambda,
        b: None,
        contradiction: false,
    })
}

/// [`excess_profile`] with `b_{r−λ}(D)` filled in.
///
/// A non-graphical `D` is left unevaluated and never reported as a
/// contradiction.
pub fn evaluate(params: &CoveringParams, z: u64) -> Result<CoveringBoundReport> {
    let mut report = excess_profile(params, z)?;
    if report.degrees.is_graphical() {
        let k = u32::try_from(report.k).map_err(|_| Error::InvalidParams("k too large".into()))?;
        let b = omega::b_value(&report.degrees, k)?;
        report.b = Some(b);
        report.contradiction = b as u64 > z;
    }
    Ok(report)
}

/// Smallest `z ≥ z0` not ruled out, with one report per tested `z`.
pub fn covering_lower_bound(
    params: &CoveringParams,
    z0: u64,
) -> Result<(u64, Vec<CoveringBoundReport>)> {
    let mut reports = Vec::new();
    let mut z = z0;
    loop {
        let report = evaluate(params, z)?;
        let done = !report.contradiction;
        reports.push(report);
        if done {
            return Ok((z, reports));
        }
        z += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PriorBound {
    pub kappa: u64,
    pub v: u64,
    pub lambda: u64,
    pub bound: u64,
    pub source: String,
}

/// Previously known lower bounds keyed by `(κ, v, λ)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Priors {
    bounds: BTreeMap<(u64, u64, u64), PriorBound>,
}

impl Priors {
    /// Reads CSV with header `kappa,v,lambda,bound,source`. Later rows for the
    /// same key keep the larger bound.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| Error::Parse(e.to_string()))?
            .clone();
        let expected = ["kappa", "v", "lambda", "bound", "source"];
        if headers.iter().collect::<Vec<_>>() != expected {
            return Err(Error::Parse(format!(
                "priors header must be {}, got {}",
                expected.join(","),
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut priors = Priors::default();
        for row in rdr.deserialize::<PriorBound>() {
            let row = row.map_err(|e| Error::Parse(e.to_string()))?;
            priors.insert(row);
        }
        Ok(priors)
    }

    pub fn insert(&mut self, row: PriorBound) {
        let key = (row.kappa, row.v, row.lambda);
        match self.bounds.get(&key) {
            Some(old) if old.bound >= row.bound => {}
            _ => {
                self.bounds.insert(key, row);
            }
        }
    }

    pub fn get(&self, kappa: u64, v: u64, lambda: u64) -> Option<&PriorBound> {
        self.bounds.get(&(kappa, v, lambda))
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub kappa: u64,
    pub v: u64,
    pub d: u64,
    pub r: u64,
    pub ell: u64,
    pub previous: u64,
    pub source: String,
    pub new: u64,
}

/// Cells `(κ, v)` with `13κ/4 < v ≤ (κ−1)²/λ + 1`, in lexicographic order.
pub fn scan_cells(kappa_min: u64, kappa_max: u64, lambda: u64) -> Vec<(u64, u64)> {
    let mut cells = Vec::new();
    for kappa in kappa_min..=kappa_max {
        let lo = 13 * kappa / 4 + 1;
        let hi = (kappa - 1).pow(2) / lambda + 1;
        cells.extend((lo..=hi).map(|v| (kappa, v)));
    }
    cells
}

/// Runs [`covering_lower_bound`] from the best available baseline in every
/// cell and keeps the cells where it improves.
pub fn scan_table(
    kappa_min: u64,
    kappa_max: u64,
    lambda: u64,
    priors: Option<&Priors>,
) -> Result<Vec<ScanRow>> {
    if kappa_min < 5 || kappa_min > kappa_max {
        return Err(Error::InvalidParams(format!(
            "need 5 ≤ kappa_min ≤ kappa_max, got {kappa_min}..{kappa_max}"
        )));
    }
    if lambda == 0 {
        return Err(Error::InvalidParams("lambda must be positive".into()));
    }
    let cells = scan_cells(kappa_min, kappa_max, lambda);
    let rows: Vec<Option<ScanRow>> = cells
        .par_iter()
        .map(|&(kappa, v)| scan_cell(kappa, v, lambda, priors))
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

fn scan_cell(kappa: u64, v: u64, lambda: u64, priors: Option<&Priors>) -> Result<Option<ScanRow>> {
    let params = CoveringParams::new(v, kappa, lambda)?;
    let sch = schonheim(&params);
    let (previous, source) = match priors.and_then(|p| p.get(kappa, v, lambda)) {
        Some(prior) if prior.bound > sch => (prior.bound, prior.source.clone()),
        _ => (sch, SCHONHEIM_SOURCE.to_string()),
    };
    let (new, reports) = covering_lower_bound(&params, previous)?;
    if new <= previous {
        return Ok(None);
    }
    let first = &reports[0];
    Ok(Some(ScanRow {
        kappa,
        v,
        d: first.d,
        r: first.r,
        ell: first.ell,
        previous,
        source,
        new,
    }))
}

pub const SCAN_CSV_HEADER: &str = "kappa,v,d,r,ell,previous,source,new";

pub fn rows_to_csv(rows: &[ScanRow]) -> String {
    let mut wtr = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    wtr.write_record(SCAN_CSV_HEADER.split(','))
        .expect("in-memory write");
    for row in rows {
        wtr.serialize(row).expect("in-memory write");
    }
    String::from_utf8(wtr.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn rows_to_text(rows: &[ScanRow]) -> String {
    let mut out = format!(
        "{:>5} {:>5} {:>4} {:>4} {:>5} {:>9} {:<12} {:>5}\n",
        "kappa", "v", "d", "r", "ell", "previous", "source", "new"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>5} {:>5} {:>4} {:>4} {:>5} {:>9} {:<12} {:>5}",
            r.kappa, r.v, r.d, r.r, r.ell, r.previous, r.source, r.new
        );
    }
    out
}
