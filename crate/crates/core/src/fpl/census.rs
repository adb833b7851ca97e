use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linkpat::{Kind, LinkPattern};
use crate::schur::{aht_count, asm_count};
use crate::transfer::homogeneous;

use super::config::{enumerate_fpl, enumerate_htsfpl};
use super::trace::extract_link_pattern;

/// Number of configurations per boundary link pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusTable {
    pub size: usize,
    pub symmetric: bool,
    pub counts: BTreeMap<LinkPattern, u64>,
    pub total: u64,
}

impl CensusTable {
    /// Pattern kind and size the census lives on.
    pub fn target(&self) -> (Kind, usize) {
        match (self.symmetric, self.size % 2) {
            (false, _) => (Kind::Even, 2 * self.size),
            (true, 1) => (Kind::Odd, self.size),
            (true, _) => (Kind::Punctured, self.size),
        }
    }

    /// `A_HT(L)` or `A_L`.
    pub fn expected_total(&self) -> BigInt {
        if self.symmetric {
            aht_count(self.size as u64)
        } else {
            asm_count(self.size as u64)
        }
    }

    pub fn count(&self, p: &LinkPattern) -> u64 {
        self.counts.get(p).copied().unwrap_or(0)
    }

    /// `{pattern-key: count}`.
    pub fn to_json(&self) -> serde_json::Value {
        let counts: serde_json::Map<String, serde_json::Value> =
            self.counts.iter().map(|(p, n)| (p.key(), (*n).into())).collect();
        serde_json::json!({
            "schema": "o1loop.census/1",
            "size": self.size,
            "symmetric": self.symmetric,
            "total": self.total,
            "counts": counts,
        })
    }
}

/// Census of plain (`symmetric = false`) or half-turn symmetric configurations.
pub fn census(l: usize, symmetric: bool, exec: Exec) -> Result<CensusTable> {
    let configs = if symmetric {
        enumerate_htsfpl(l, exec)?
    } else {
        enumerate_fpl(l, exec)?
    };
    let chunks: Vec<_> = configs.chunks(256).map(|c| c.to_vec()).collect();
    let parts = exec.try_map(chunks, |chunk| -> Result<BTreeMap<LinkPattern, u64>> {
        let mut m = BTreeMap::new();
        for c in &chunk {
            *m.entry(extract_link_pattern(c, symmetric)?).or_default() += 1;
        }
        Ok(m)
    })?;
    let mut counts = BTreeMap::new();
    for m in parts {
        for (p, n) in m {
            *counts.entry(p).or_default() += n;
        }
    }
    let total = counts.values().sum();
    Ok(CensusTable { size: l, symmetric, counts, total })
}

/// Mirror image `i → L+1−i`.
pub fn reflect(p: &LinkPattern) -> LinkPattern {
    let d = p.offsets();
    let l = d.len();
    let offsets = (0..l).map(|k| -d[l - 1 - k]).collect();
    LinkPattern::from_offsets(p.kind(), offsets).expect("reflection preserves validity")
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusEntry {
    pub pattern: String,
    pub count: u64,
    pub component: String,
    pub ok: bool,
}

/// Census counts against the homogeneous integer eigenvector.
#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub size: usize,
    pub symmetric: bool,
    pub kind: Kind,
    pub pattern_size: usize,
    pub total: u64,
    pub expected_total: String,
    /// Census pattern `p` is read against eigenvector pattern `rotate_by(p, offset)`,
    /// after mirroring if `reflected`.
    pub offset: usize,
    pub reflected: bool,
    pub mismatches: usize,
    pub entries: Vec<CensusEntry>,
    pub status: &'static str,
}

impl CensusReport {
    pub fn ok(&self) -> bool {
        self.mismatches == 0 && self.expected_total == self.total.to_string()
    }
}

/// Compares the census with the eigenvector, choosing the relabeling (rotation,
/// then mirror) with the fewest mismatches.
pub fn census_compare(l: usize, symmetric: bool, exec: Exec) -> Result<CensusReport> {
    let table = census(l, symmetric, exec)?;
    let (kind, n) = table.target();
    let rec = homogeneous(kind, n, exec)?;
    let ints = rec
        .integer_form()
        .ok_or_else(|| Error::ConfigError("homogeneous eigenvector is not integral".into()))?;
    let basis = rec.basis()?;
    let component = |p: &LinkPattern| ints[basis.position(p)].clone();
    let score = |reflected: bool, k: usize| {
        basis
            .patterns()
            .iter()
            .filter(|p| {
                let q = if reflected { reflect(p) } else { (*p).clone() };
                BigInt::from(table.count(p)) != component(&q.rotate_by(k))
            })
            .count()
    };
    let mut best = (usize::MAX, false, 0);
    for reflected in [false, true] {
        for k in 0..n {
            let s = score(reflected, k);
            if s < best.0 {
                best = (s, reflected, k);
            }
        }
    }
    let (mismatches, reflected, offset) = best;
    let entries = basis
        .patterns()
        .iter()
        .map(|p| {
            let q = if reflected { reflect(p) } else { p.clone() };
            let c = component(&q.rotate_by(offset));
            let count = table.count(p);
            CensusEntry {
                pattern: p.key(),
                count,
                ok: BigInt::from(count) == c,
                component: c.to_string(),
            }
        })
        .collect();
    Ok(CensusReport {
        size: l,
        symmetric,
        kind,
        pattern_size: n,
        total: table.total,
        expected_total: table.expected_total().to_string(),
        offset,
        reflected,
        mismatches,
        entries,
        status: "CONJECTURE",
    })
}
