//! Minimal generators of the canonical module, read off interior lattice
//! points.
//!
//! The canonical module of the (normal) edge ring is spanned by the interior
//! lattice points of the dilations of `P`. A generator in degree `ell + k`
//! is an interior point that is not an interior point of lower degree plus
//! edge vectors. Adding an edge vector to an interior point keeps it
//! interior, so every such decomposition passes through an interior point of
//! degree exactly one less; the test below therefore only has to try
//! removing a single edge vector.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::ops::ControlFlow;

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::hilbert::{e_of_c, e_of_c_counted, h_vector};
use crate::multipartite::{CaseClass, Edge, Partition};
use crate::polytope::{Budget, LatticePoint, SupportSystem};

/// Offsets beyond the socle degree that are still scanned; a generator found
/// there is reported as an integrity error instead of being dropped.
pub const GENERATOR_MARGIN: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalGenerators {
    pub ell: u64,
    /// `by_degree[k]`: first appearing interior points of `(ell + k) P`.
    pub by_degree: Vec<Vec<LatticePoint>>,
    /// Highest offset examined.
    pub cap: usize,
}

impl CanonicalGenerators {
    /// Cohen-Macaulay type `r(R)`, the number of minimal generators.
    pub fn cm_type(&self) -> usize {
        self.by_degree.iter().map(Vec::len).sum()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_degree.iter().map(Vec::len).collect()
    }

    pub fn is_level(&self) -> bool {
        self.by_degree.iter().skip(1).all(Vec::is_empty)
    }

    pub fn is_gorenstein(&self) -> bool {
        self.cm_type() == 1
    }

    /// `mu(C) = r(R) - 1`.
    pub fn mu_of_c(&self) -> usize {
        self.cm_type() - 1
    }
}

/// Whether the interior point `x` of `(ell + k) P` (with `k >= 1`) is not
/// `y + rho(e)` for an interior point `y` one degree lower.
fn is_first_appearing(sys: &SupportSystem, edges: &[Edge], x: &mut [u32]) -> bool {
    for e in edges {
        if x[e.u] < 2 || x[e.v] < 2 {
            continue;
        }
        x[e.u] -= 1;
        x[e.v] -= 1;
        let inside = sys.contains_unchecked(x, true);
        x[e.u] += 1;
        x[e.v] += 1;
        if inside {
            return false;
        }
    }
    true
}

fn level_points(
    sys: &SupportSystem,
    edges: &[Edge],
    ell: u64,
    k: usize,
    budget: &Budget,
) -> Result<Vec<LatticePoint>> {
    let mut out = Vec::new();
    let mut scratch = vec![0u32; sys.d()];
    sys.enumerate_with(ell + k as u64, true, budget, |x| {
        if k == 0 {
            out.push(LatticePoint::new(x.to_vec()));
        } else {
            scratch.copy_from_slice(x);
            if is_first_appearing(sys, edges, &mut scratch) {
                out.push(LatticePoint::new(x.to_vec()));
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// First appearing interior points of `(ell + k) P`.
pub fn first_appearing(p: &Partition, k: usize, budget: &Budget) -> Result<Vec<LatticePoint>> {
    let sys = SupportSystem::new(p);
    let ell = sys.ell_bruteforce(budget)?;
    level_points(&sys, &p.edges(), ell, k, budget)
}

/// All minimal generators, scanning offsets up to `s + GENERATOR_MARGIN`
/// where `s = dim R - ell`.
pub fn canonical_generators(p: &Partition, budget: &Budget) -> Result<CanonicalGenerators> {
    let sys = SupportSystem::new(p);
    let edges = p.edges();
    let ell = sys.ell_bruteforce(budget)?;
    let dim = sys.polytope_dim() as u64 + 1;
    let s = dim
        .checked_sub(ell)
        .ok_or_else(|| Error::Integrity(format!("ell = {ell} exceeds dim R = {dim} for {p}")))?
        as usize;
    let cap = s + GENERATOR_MARGIN;
    let mut by_degree = Vec::with_capacity(cap + 1);
    for k in 0..=cap {
        let pts = level_points(&sys, &edges, ell, k, budget)?;
        if k > s && !pts.is_empty() {
            return Err(Error::Integrity(format!(
                "{p}: {} generators at offset {k}, beyond socle degree {s}",
                pts.len()
            )));
        }
        by_degree.push(pts);
    }
    Ok(CanonicalGenerators {
        ell,
        by_degree,
        cap,
    })
}

pub fn cm_type(p: &Partition, budget: &Budget) -> Result<usize> {
    Ok(canonical_generators(p, budget)?.cm_type())
}

pub fn is_level_direct(p: &Partition, budget: &Budget) -> Result<bool> {
    Ok(canonical_generators(p, budget)?.is_level())
}

pub fn is_gorenstein_direct(p: &Partition, budget: &Budget) -> Result<bool> {
    Ok(canonical_generators(p, budget)?.is_gorenstein())
}

pub fn mu_of_c_direct(p: &Partition, budget: &Budget) -> Result<usize> {
    Ok(canonical_generators(p, budget)?.mu_of_c())
}

fn require_case_a(p: &Partition) -> Result<()> {
    if p.case_class() != CaseClass::A {
        return Err(Error::OutOfScope {
            required: "case A (2 r_n < d, d even)",
            partition: p.to_string(),
        });
    }
    Ok(())
}

/// `sum_k sum_{j=1}^{d/2 - r_k - 1} C(r_k - 1 + 2j, r_k - 1)`, case A only.
pub fn mu_of_c_closed(p: &Partition) -> Result<BigInt> {
    require_case_a(p)?;
    let half = p.d() as i64 / 2;
    let mut acc = BigInt::from(0);
    for &r in p.parts() {
        let r = r as i64;
        for j in 1..=(half - r - 1) {
            acc += binomial(r - 1 + 2 * j, r - 1);
        }
    }
    Ok(acc)
}

/// In case A, is `x` of the form "all coordinates outside one block `V_k`
/// equal 1 and `p_{V_k}(x) = r_k + 2j`", where `x` lies in `(d/2 + j) P°`?
pub fn is_first_appearing_shape_a(p: &Partition, x: &LatticePoint) -> Result<bool> {
    require_case_a(p)?;
    let sys = SupportSystem::new(p);
    if x.len() != p.d() {
        return Err(Error::Dimension {
            got: x.len(),
            expected: p.d(),
        });
    }
    let m = x.degree().ok_or(Error::NotInterior)?;
    let ell = p.d() as u64 / 2;
    if m < ell || !sys.contains_unchecked(&x.coords, true) {
        return Err(Error::NotInterior);
    }
    let j = (m - ell) as usize;
    Ok((0..p.n()).any(|k| {
        let range = p.block_range(k);
        let off_block_ones = x
            .coords
            .iter()
            .enumerate()
            .all(|(i, &c)| range.contains(&i) || c == 1);
        off_block_ones && sys.block_sum(&x.coords, k) as usize == p.parts()[k] + 2 * j
    }))
}

/// `e(C) == mu(C)` with `mu(C) = r(R) - 1`.
///
/// For `n >= 3`, `e(C)` comes from the Ehrhart coefficients, and the result
/// is checked against the h-vector: `s >= 2` with `h_s >= 2` rules almost
/// Gorensteinness out. For bipartite graphs `e(C)` is interpolated from
/// counted Hilbert functions.
pub fn is_almost_gorenstein_direct(p: &Partition, budget: &Budget) -> Result<bool> {
    let gens = canonical_generators(p, budget)?;
    almost_gorenstein_from(p, &gens, budget).map(|(ag, _)| ag)
}

/// Returns the verdict and the `e(C)` used.
pub(crate) fn almost_gorenstein_from(
    p: &Partition,
    gens: &CanonicalGenerators,
    budget: &Budget,
) -> Result<(bool, BigInt)> {
    let mu = BigInt::from(gens.mu_of_c());
    if p.is_bipartite() {
        let e = e_of_c_counted(p, budget)?;
        return Ok((e == mu, e));
    }
    let e = e_of_c(p, budget)?.coefficient_form;
    let ag = e == mu;
    let hd = h_vector(p, budget)?;
    if hd.s >= 2 && hd.h_s() >= 2 && ag {
        return Err(Error::Integrity(format!(
            "{p}: e(C) = mu(C) = {mu} although s = {} and h_s = {}",
            hd.s,
            hd.h_s()
        )));
    }
    Ok((ag, e))
}
