//! Closed-form characterizations of the Gorenstein, level and almost
//! Gorenstein properties, and the engine that checks them against direct
//! computation.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::canonical::{almost_gorenstein_from, canonical_generators};
use crate::error::{Error, Result};
use crate::hilbert::{h_vector, HilbertData};
use crate::multipartite::{CaseClass, Partition};
use crate::polytope::Budget;

pub fn gorenstein_characterized(p: &Partition) -> bool {
    let r = p.parts();
    match r.len() {
        2 => r[0] == 1 || r[0] == r[1],
        3 => r[2] <= 2,
        4 => r[3] == 1,
        _ => false,
    }
}

pub fn level_characterized(p: &Partition) -> bool {
    matches!(
        *p.parts(),
        [_, _] | [1, 1, _] | [1, 2, _] | [2, 2, _] | [3, 3, 3] | [1, 1, 1, _] | [1, 1, 1, 1, 1]
    )
}

pub fn almost_gorenstein_characterized(p: &Partition) -> bool {
    let r = p.parts();
    let n = r.len();
    let all_ones = r.iter().all(|&x| x == 1);
    match *r {
        [a, b] if a == 1 || a == b || a == 2 => return true,
        [1, 1, _] => return true,
        [1, b, c] if b == c => return true,
        [2, 2, 2] => return true,
        [1, 1, b, c] if b == c => return true,
        _ => {}
    }
    if n >= 4 && r[..n - 1].iter().all(|&x| x == 1) && r[n - 1] == n - 3 {
        return true;
    }
    n >= 6 && n.is_multiple_of(2) && all_ones
}

/// For even `d` in the main range: every part is `1` or `d/2 - 1`.
pub fn lemma_rephrase(p: &Partition) -> Result<bool> {
    if !p.d().is_multiple_of(2) || !p.in_main_range() {
        return Err(Error::OutOfScope {
            required: "d even, and n >= 4 or n = 3 with r_1 >= 2",
            partition: p.to_string(),
        });
    }
    let half = p.d() / 2 - 1;
    Ok(p.parts().iter().all(|&r| r == 1 || r == half))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Characterized,
    Direct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub gorenstein: bool,
    pub level: bool,
    pub almost_gorenstein: bool,
    pub source: Source,
    pub case: CaseClass,
    pub notes: Vec<String>,
}

pub fn characterized_verdict(p: &Partition) -> Verdict {
    Verdict {
        gorenstein: gorenstein_characterized(p),
        level: level_characterized(p),
        almost_gorenstein: almost_gorenstein_characterized(p),
        source: Source::Characterized,
        case: p.case_class(),
        notes: Vec::new(),
    }
}

/// Everything the direct side computes for one partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectAnalysis {
    pub partition: Partition,
    pub hilbert: HilbertData,
    /// Generator counts per offset from `ell`.
    pub generator_counts: Vec<usize>,
    pub cm_type: usize,
    pub e_of_c: BigInt,
    pub mu_of_c: usize,
    pub gorenstein: bool,
    pub level: bool,
    pub almost_gorenstein: bool,
}

impl DirectAnalysis {
    pub fn verdict(&self) -> Verdict {
        let mut notes = Vec::new();
        if self.partition.is_bipartite() {
            notes.push("e(C) interpolated from counted Hilbert functions".to_string());
        }
        Verdict {
            gorenstein: self.gorenstein,
            level: self.level,
            almost_gorenstein: self.almost_gorenstein,
            source: Source::Direct,
            case: self.partition.case_class(),
            notes,
        }
    }

    /// Implications that hold for every ring in scope: `mu(C) <= e(C)`;
    /// almost Gorenstein with `s >= 2` forces `h_s = 1`, and with `s = 2`
    /// forces level; level with `h_s = 1` is Gorenstein; in the main range
    /// almost Gorenstein forces case A.
    pub fn property_violations(&self) -> Vec<String> {
        let p = &self.partition;
        let (s, hs) = (self.hilbert.s, self.hilbert.h_s());
        let ag = self.almost_gorenstein;
        let mut v = Vec::new();
        if BigInt::from(self.mu_of_c) > self.e_of_c {
            v.push(format!(
                "{p}: mu(C) = {} exceeds e(C) = {}",
                self.mu_of_c, self.e_of_c
            ));
        }
        if ag && s >= 2 && hs != 1 {
            v.push(format!(
                "{p}: almost Gorenstein with s = {s} but h_s = {hs}"
            ));
        }
        if ag && s == 2 && !self.level {
            v.push(format!("{p}: almost Gorenstein with s = 2 but not level"));
        }
        if self.level && hs == 1 && !self.gorenstein {
            v.push(format!("{p}: level with h_s = 1 but not Gorenstein"));
        }
        if ag && p.in_main_range() && p.case_class() != CaseClass::A {
            v.push(format!("{p}: almost Gorenstein outside case A"));
        }
        v
    }
}

pub fn analyze(p: &Partition, budget: &Budget) -> Result<DirectAnalysis> {
    let hilbert = h_vector(p, budget)?;
    let gens = canonical_generators(p, budget)?;
    if gens.ell != hilbert.ell {
        return Err(Error::Integrity(format!(
            "{p}: ell differs between generator scan and h-vector"
        )));
    }
    let (almost_gorenstein, e_of_c) = almost_gorenstein_from(p, &gens, budget)?;
    Ok(DirectAnalysis {
        partition: p.clone(),
        generator_counts: gens.counts(),
        cm_type: gens.cm_type(),
        mu_of_c: gens.mu_of_c(),
        gorenstein: gens.is_gorenstein(),
        level: gens.is_level(),
        almost_gorenstein,
        e_of_c,
        hilbert,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Agreement {
    Agree,
    Disagree,
    Unverified,
}

impl fmt::Display for Agreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Agreement::Agree => "agree",
            Agreement::Disagree => "disagree",
            Agreement::Unverified => "unverified",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub partition: Partition,
    pub characterized: Verdict,
    pub direct: Option<DirectAnalysis>,
    pub gorenstein: Agreement,
    pub level: Agreement,
    pub almost_gorenstein: Agreement,
    /// Set when the direct side ran out of budget.
    pub unverified_reason: Option<String>,
}

impl CrossCheck {
    /// The worst status over the three properties.
    pub fn status(&self) -> Agreement {
        let all = [self.gorenstein, self.level, self.almost_gorenstein];
        if all.contains(&Agreement::Disagree) {
            Agreement::Disagree
        } else if all.contains(&Agreement::Unverified) {
            Agreement::Unverified
        } else {
            Agreement::Agree
        }
    }
}

fn compare(a: bool, b: bool) -> Agreement {
    if a == b {
        Agreement::Agree
    } else {
        Agreement::Disagree
    }
}

/// Budget exhaustion on the direct side yields an unverified report; any
/// other error propagates.
pub fn cross_check(p: &Partition, budget: &Budget) -> Result<CrossCheck> {
    let characterized = characterized_verdict(p);
    match analyze(p, budget) {
        Ok(direct) => Ok(CrossCheck {
            partition: p.clone(),
            gorenstein: compare(characterized.gorenstein, direct.gorenstein),
            level: compare(characterized.level, direct.level),
            almost_gorenstein: compare(characterized.almost_gorenstein, direct.almost_gorenstein),
            characterized,
            direct: Some(direct),
            unverified_reason: None,
        }),
        Err(e) if e.is_budget() => Ok(CrossCheck {
            partition: p.clone(),
            characterized,
            direct: None,
            gorenstein: Agreement::Unverified,
            level: Agreement::Unverified,
            almost_gorenstein: Agreement::Unverified,
            unverified_reason: Some(e.to_string()),
        }),
        Err(e) => Err(e),
    }
}

/// Cross-checks for every partition with `d <= max_d`, in `(d, parts)` order.
pub fn cross_check_all(max_d: usize, budget: &Budget) -> Result<Vec<CrossCheck>> {
    Partition::all_up_to(max_d)
        .par_iter()
        .map(|p| cross_check(p, budget))
        .collect()
}

/// One line of the sweep table. Direct invariants are empty when the budget
/// did not allow computing them; verdicts are the characterized ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub d: usize,
    pub parts: String,
    pub case: String,
    pub ell: Option<u64>,
    pub s: Option<usize>,
    pub h_s: Option<i128>,
    #[serde(rename = "r(R)")]
    pub cm_type: Option<usize>,
    #[serde(rename = "e(C)")]
    pub e_of_c: Option<String>,
    #[serde(rename = "mu(C)")]
    pub mu_of_c: Option<usize>,
    pub gorenstein: bool,
    pub level: bool,
    pub almost_gorenstein: bool,
    pub verified: Agreement,
}

impl From<&CrossCheck> for SweepRow {
    fn from(c: &CrossCheck) -> Self {
        let d = c.direct.as_ref();
        SweepRow {
            d: c.partition.d(),
            parts: c.partition.to_string(),
            case: c.characterized.case.to_string(),
            ell: d.map(|a| a.hilbert.ell),
            s: d.map(|a| a.hilbert.s),
            h_s: d.map(|a| a.hilbert.h_s()),
            cm_type: d.map(|a| a.cm_type),
            e_of_c: d.map(|a| a.e_of_c.to_string()),
            mu_of_c: d.map(|a| a.mu_of_c),
            gorenstein: c.characterized.gorenstein,
            level: c.characterized.level,
            almost_gorenstein: c.characterized.almost_gorenstein,
            verified: c.status(),
        }
    }
}

pub fn sweep(max_d: usize, budget: &Budget) -> Result<Vec<SweepRow>> {
    Ok(cross_check_all(max_d, budget)?
        .iter()
        .map(SweepRow::from)
        .collect())
}
