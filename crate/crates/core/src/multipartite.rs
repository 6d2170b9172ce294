//! Complete multipartite graphs `K_{r_1,...,r_n}`.
//!
//! Vertices are numbered block by block: block `k` occupies the index range
//! `[r_1 + ... + r_{k-1}, r_1 + ... + r_k)` of the sorted part list, so the
//! block sum of a lattice point is a contiguous coordinate sum.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The type `(r_1 <= ... <= r_n)` of a complete multipartite graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
    starts: Vec<usize>,
    d: usize,
}

impl Partition {
    /// Build a partition from parts in any order; the result is sorted.
    pub fn new(parts: &[usize]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("empty part list".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.len() < 2 {
            return Err(Error::InvalidPartition(format!(
                "need at least two parts, got {}",
                parts.len()
            )));
        }
        let mut parts = parts.to_vec();
        parts.sort_unstable();
        let mut starts = Vec::with_capacity(parts.len());
        let mut acc = 0;
        for &r in &parts {
            starts.push(acc);
            acc += r;
        }
        Ok(Partition {
            parts,
            starts,
            d: acc,
        })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of blocks.
    pub fn n(&self) -> usize {
        self.parts.len()
    }

    /// Number of vertices.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Largest part `r_n`.
    pub fn largest(&self) -> usize {
        *self.parts.last().expect("n >= 2")
    }

    pub fn block_range(&self, k: usize) -> Range<usize> {
        self.starts[k]..self.starts[k] + self.parts[k]
    }

    /// Block index of vertex `v`.
    pub fn block_of(&self, v: usize) -> usize {
        debug_assert!(v < self.d);
        self.starts.partition_point(|&s| s <= v) - 1
    }

    pub fn is_bipartite(&self) -> bool {
        self.n() == 2
    }

    /// `n = 3` with `r_1 >= 2`, or `n >= 4`: the range where the facet
    /// description is irredundant and the edge-ring results are proved
    /// directly rather than through Hibi rings.
    pub fn in_main_range(&self) -> bool {
        self.n() >= 4 || (self.n() == 3 && self.parts[0] >= 2)
    }

    pub fn edge_count(&self) -> usize {
        let sq: usize = self.parts.iter().map(|r| r * r).sum();
        (self.d * self.d - sq) / 2
    }

    /// All cross-block pairs `{u, v}` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.d {
            let bu = self.block_of(u);
            // later blocks only
            for v in self.starts.get(bu + 1).copied().unwrap_or(self.d)..self.d {
                out.push(Edge { u, v });
            }
        }
        out
    }

    pub fn edge(&self, u: usize, v: usize) -> Result<Edge> {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        if v >= self.d {
            return Err(Error::InvalidPartition(format!(
                "vertex {v} out of range for d = {}",
                self.d
            )));
        }
        if self.block_of(u) == self.block_of(v) {
            return Err(Error::InvalidPartition(format!(
                "{{{u}, {v}}} lies inside one block"
            )));
        }
        Ok(Edge { u, v })
    }

    /// Perfect matching criterion: `d` even and `2 r_n <= d`.
    pub fn has_perfect_matching(&self) -> bool {
        self.d.is_multiple_of(2) && 2 * self.largest() <= self.d
    }

    pub fn case_class(&self) -> CaseClass {
        if self.n() == 2 {
            CaseClass::Bipartite
        } else if 2 * self.largest() >= self.d {
            CaseClass::C
        } else if self.d.is_multiple_of(2) {
            CaseClass::A
        } else {
            CaseClass::B
        }
    }

    /// All partitions with `n >= 2` and exactly `d` vertices, sorted
    /// lexicographically by parts.
    pub fn all_with_d(d: usize) -> Vec<Partition> {
        fn rec(rem: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rem == 0 {
                if cur.len() >= 2 {
                    out.push(cur.clone());
                }
                return;
            }
            for r in min..=rem {
                cur.push(r);
                rec(rem - r, r, cur, out);
                cur.pop();
            }
        }
        let mut raw = Vec::new();
        rec(d, 1, &mut Vec::new(), &mut raw);
        raw.sort();
        raw.into_iter()
            .map(|p| Partition::new(&p).expect("generated parts are valid"))
            .collect()
    }

    /// All partitions with `2 <= d <= max_d`, ordered by `(d, parts)`.
    pub fn all_up_to(max_d: usize) -> Vec<Partition> {
        (2..=max_d).flat_map(Partition::all_with_d).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated positive integers, in any order.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                return Err(Error::Parse(format!("empty entry in {s:?}")));
            }
            let r: i64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("not an integer: {tok:?}")))?;
            if r <= 0 {
                return Err(Error::InvalidPartition(format!(
                    "parts must be positive, got {r}"
                )));
            }
            parts.push(r as usize);
        }
        Partition::new(&parts)
    }
}

/// An edge `{u, v}` with `u < v` in distinct blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseClass {
    /// `2 r_n < d`, `d` even.
    A,
    /// `2 r_n < d`, `d` odd.
    B,
    /// `2 r_n >= d`.
    C,
    /// `n = 2`.
    Bipartite,
}

impl fmt::Display for CaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseClass::A => "A",
            CaseClass::B => "B",
            CaseClass::C => "C",
            CaseClass::Bipartite => "bipartite",
        };
        f.write_str(s)
    }
}

pub const DEFAULT_MATCHING_CAP: usize = 14;

/// Search for a perfect matching by backtracking. Returns a witness when one
/// exists. Refuses partitions with more than `cap` vertices.
pub fn brute_force_matching(p: &Partition, cap: usize) -> Result<Option<Vec<Edge>>> {
    if p.d() > cap {
        return Err(Error::BudgetExceeded {
            what: "matching search",
            needed: format!("d = {}", p.d()),
            limit: format!("d <= {cap}"),
        });
    }
    fn rec(p: &Partition, used: &mut [bool], acc: &mut Vec<Edge>) -> bool {
        let Some(u) = used.iter().position(|&b| !b) else {
            return true;
        };
        used[u] = true;
        let bu = p.block_of(u);
        for v in u + 1..p.d() {
            if used[v] || p.block_of(v) == bu {
                continue;
            }
            used[v] = true;
            acc.push(Edge { u, v });
            if rec(p, used, acc) {
                return true;
            }
            acc.pop();
            used[v] = false;
        }
        used[u] = false;
        false
    }
    let mut used = vec![false; p.d()];
    let mut acc = Vec::new();
    Ok(rec(p, &mut used, &mut acc).then_some(acc))
}
