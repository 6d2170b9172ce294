//! The edge polytope of `K_{r_1,...,r_n}` described by linear forms, and
//! lattice points of its dilations.
//!
//! A point `x` of `mP` is cut out by
//!
//! * the coordinate sum `sum x_i = 2m`,
//! * the unit forms `x_i >= 0`,
//! * the block forms `<x, f_k> = sum_{j != k} p_{V_j}(x) - p_{V_k}(x) >= 0`.
//!
//! Complete multipartite graphs satisfy the odd cycle condition, so the edge
//! ring is normal and the lattice points of `mP` are exactly the degree `m`
//! elements of the edge semigroup. Membership therefore never needs a
//! semigroup decomposition.
//!
//! On the hyperplane `sum x = 2m` the block form reads `2m - 2 p_{V_k}(x)`,
//! so every block-form test is a bound on a contiguous block sum.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use crate::arith::binomial_u128;
use crate::error::{Error, Result};
use crate::multipartite::{Edge, Partition};

/// Environment variable overriding the default enumeration budget.
pub const BUDGET_ENV: &str = "EDGERING_BUDGET";

/// A point of `Z^d` with nonnegative coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub coords: Vec<u32>,
}

impl LatticePoint {
    pub fn new(coords: Vec<u32>) -> Self {
        LatticePoint { coords }
    }

    pub fn ones(d: usize) -> Self {
        LatticePoint { coords: vec![1; d] }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord_sum(&self) -> u64 {
        self.coords.iter().map(|&c| u64::from(c)).sum()
    }

    /// Dilation degree `m` with `sum x = 2m`, if the sum is even.
    pub fn degree(&self) -> Option<u64> {
        let s = self.coord_sum();
        s.is_multiple_of(2).then_some(s / 2)
    }

    /// `self - rho(e)` if it stays nonnegative.
    pub fn minus_edge(&self, e: Edge) -> Option<LatticePoint> {
        if self.coords[e.u] == 0 || self.coords[e.v] == 0 {
            return None;
        }
        let mut c = self.coords.clone();
        c[e.u] -= 1;
        c[e.v] -= 1;
        Some(LatticePoint { coords: c })
    }

    pub fn plus_edge(&self, e: Edge) -> LatticePoint {
        let mut c = self.coords.clone();
        c[e.u] += 1;
        c[e.v] += 1;
        LatticePoint { coords: c }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for LatticePoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad coordinate {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(LatticePoint::new)
    }
}

/// `rho(e) = e_u + e_v`.
pub fn rho(p: &Partition, e: Edge) -> LatticePoint {
    let mut c = vec![0; p.d()];
    c[e.u] = 1;
    c[e.v] = 1;
    LatticePoint { coords: c }
}

/// The support forms of the edge polytope: `d` unit forms and `n` block
/// forms, with a flag per block form that is set when the form vanishes on
/// every edge vector (an implicit equality of the polytope).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSystem {
    partition: Partition,
    implicit: Vec<bool>,
}

impl SupportSystem {
    pub fn new(p: &Partition) -> Self {
        let edges = p.edges();
        let implicit = (0..p.n())
            .map(|k| {
                let f = block_form_vector(p, k);
                edges.iter().all(|e| f[e.u] + f[e.v] == 0)
            })
            .collect();
        SupportSystem {
            partition: p.clone(),
            implicit,
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn d(&self) -> usize {
        self.partition.d()
    }

    pub fn unit_form_count(&self) -> usize {
        self.partition.d()
    }

    pub fn block_form_count(&self) -> usize {
        self.partition.n()
    }

    pub fn is_implicit(&self, k: usize) -> bool {
        self.implicit[k]
    }

    /// Coefficient vector of the block form `f_k`.
    pub fn block_form(&self, k: usize) -> Vec<i64> {
        block_form_vector(&self.partition, k)
    }

    /// Dimension of the polytope: `d - 1`, or `d - 2` for bipartite graphs.
    pub fn polytope_dim(&self) -> usize {
        if self.implicit.iter().any(|&b| b) {
            self.d() - 2
        } else {
            self.d() - 1
        }
    }

    pub fn block_sum(&self, x: &[u32], k: usize) -> u64 {
        x[self.partition.block_range(k)]
            .iter()
            .map(|&c| u64::from(c))
            .sum()
    }

    /// `<x, f_k>`.
    pub fn block_form_value(&self, x: &[u32], k: usize) -> i64 {
        let total: u64 = x.iter().map(|&c| u64::from(c)).sum();
        let own = self.block_sum(x, k);
        total as i64 - 2 * own as i64
    }

    /// Upper bound on the block sum `p_{V_k}` for points of `mP` (or its
    /// relative interior).
    fn block_cap(&self, k: usize, m: u64, interior: bool) -> u64 {
        if interior && !self.implicit[k] {
            m.saturating_sub(1)
        } else {
            m
        }
    }

    /// Does `x` lie in `mP` (or in the relative interior of `mP`)?
    pub fn membership(&self, x: &LatticePoint, m: u64, interior: bool) -> Result<bool> {
        if x.len() != self.d() {
            return Err(Error::Dimension {
                got: x.len(),
                expected: self.d(),
            });
        }
        let sum = x.coord_sum();
        if sum != 2 * m {
            return Err(Error::CoordinateSum {
                sum,
                expected: 2 * m,
            });
        }
        Ok(self.contains_unchecked(&x.coords, interior))
    }

    /// Membership for a point whose coordinate sum is already known to be
    /// even; the dilation is read off the sum.
    pub fn contains_unchecked(&self, x: &[u32], interior: bool) -> bool {
        if interior && x.contains(&0) {
            return false;
        }
        (0..self.partition.n()).all(|k| {
            let v = self.block_form_value(x, k);
            // an implicit form is an equality on the whole polytope
            if interior && !self.implicit[k] {
                v > 0
            } else {
                v >= 0
            }
        })
    }

    /// `C(2m + d - 1, d - 1)`: compositions of `2m` into `d` parts, the
    /// unpruned size of the search space at dilation `m`.
    pub fn unpruned_bound(&self, m: u64) -> Option<u128> {
        let d = self.d() as u64;
        binomial_u128(2 * m + d - 1, d - 1)
    }

    /// Visit the lattice points of `mP` (or its relative interior) in
    /// lexicographic order. The visitor may stop early with `Break`.
    pub fn enumerate_with<F>(
        &self,
        m: u64,
        interior: bool,
        budget: &Budget,
        mut visit: F,
    ) -> Result<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        budget.check_dilation(self, m)?;
        let walker = Walker::new(self, m, interior);
        let mut buf = vec![0u32; self.d()];
        let _ = walker.descend(0, 2 * m, 0, &mut buf, &mut visit);
        Ok(())
    }

    pub fn enumerate_points(
        &self,
        m: u64,
        interior: bool,
        budget: &Budget,
    ) -> Result<Vec<LatticePoint>> {
        let mut out = Vec::new();
        self.enumerate_with(m, interior, budget, |x| {
            out.push(LatticePoint::new(x.to_vec()));
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    /// Number of points visited by [`Self::enumerate_with`].
    pub fn count_enumerated(&self, m: u64, interior: bool, budget: &Budget) -> Result<u128> {
        let mut n: u128 = 0;
        self.enumerate_with(m, interior, budget, |_| {
            n += 1;
            ControlFlow::Continue(())
        })?;
        Ok(n)
    }

    /// Count lattice points by convolving per-block composition counts.
    ///
    /// Each block contributes `C(t - lo*r + r - 1, r - 1)` points with block
    /// sum `t`; the block forms only bound `t`. This path shares nothing with
    /// the depth-first enumerator beyond the bounds themselves.
    pub fn count_points(&self, m: u64, interior: bool) -> Result<u128> {
        let lo: u64 = u64::from(interior);
        let total = 2 * m;
        let mut dp = vec![0u128; total as usize + 1];
        dp[0] = 1;
        for (k, &r) in self.partition.parts().iter().enumerate() {
            let r = r as u64;
            let cap = self.block_cap(k, m, interior).min(total);
            let min_t = lo * r;
            let mut next = vec![0u128; total as usize + 1];
            for (s, &ways) in dp.iter().enumerate() {
                if ways == 0 {
                    continue;
                }
                let mut t = min_t;
                while t <= cap && s as u64 + t <= total {
                    let comps = binomial_u128(t - min_t + r - 1, r - 1)
                        .ok_or(Error::Overflow("block composition count"))?;
                    let add = ways
                        .checked_mul(comps)
                        .ok_or(Error::Overflow("lattice point count"))?;
                    let slot = &mut next[s + t as usize];
                    *slot = slot
                        .checked_add(add)
                        .ok_or(Error::Overflow("lattice point count"))?;
                    t += 1;
                }
            }
            dp = next;
        }
        Ok(dp[total as usize])
    }

    /// Least `m >= 1` whose dilation has an interior lattice point, found by
    /// enumeration.
    pub fn ell_bruteforce(&self, budget: &Budget) -> Result<u64> {
        // The interior is nonempty by dilation d at the latest.
        for m in 1..=(self.d() as u64 + 1) {
            let mut found = false;
            self.enumerate_with(m, true, budget, |_| {
                found = true;
                ControlFlow::Break(())
            })?;
            if found {
                return Ok(m);
            }
        }
        Err(Error::Integrity(format!(
            "no interior point up to dilation {} for {}",
            self.d() + 1,
            self.partition
        )))
    }
}

fn block_form_vector(p: &Partition, k: usize) -> Vec<i64> {
    let r = p.block_range(k);
    (0..p.d())
        .map(|i| if r.contains(&i) { -1 } else { 1 })
        .collect()
}

/// Depth-first coordinate assignment with running block and total bounds.
struct Walker<'a> {
    sys: &'a SupportSystem,
    lo: u32,
    /// block index of each coordinate
    block: Vec<usize>,
    /// one past the last coordinate of each block
    block_end: Vec<usize>,
    cap: Vec<u64>,
    /// sum of caps of the blocks after `k`
    later_cap: Vec<u64>,
    /// minimum total of the coordinates after block `k`
    later_min: Vec<u64>,
}

impl<'a> Walker<'a> {
    fn new(sys: &'a SupportSystem, m: u64, interior: bool) -> Self {
        let p = sys.partition();
        let n = p.n();
        let lo = u32::from(interior);
        let mut block = Vec::with_capacity(p.d());
        let mut block_end = Vec::with_capacity(n);
        for k in 0..n {
            let r = p.block_range(k);
            block.extend(std::iter::repeat_n(k, r.len()));
            block_end.push(r.end);
        }
        let cap: Vec<u64> = (0..n).map(|k| sys.block_cap(k, m, interior)).collect();
        let mut later_cap = vec![0; n];
        let mut later_min = vec![0; n];
        for k in (0..n.saturating_sub(1)).rev() {
            later_cap[k] = later_cap[k + 1] + cap[k + 1];
            later_min[k] = u64::from(lo) * (p.d() - block_end[k]) as u64;
        }
        Walker {
            sys,
            lo,
            block,
            block_end,
            cap,
            later_cap,
            later_min,
        }
    }

    fn descend<F>(
        &self,
        i: usize,
        rem: u64,
        blk_used: u64,
        buf: &mut [u32],
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        let d = buf.len();
        if i == d {
            if rem == 0 {
                debug_assert!(self.sys.contains_unchecked(buf, self.lo == 1));
                return visit(buf);
            }
            return ControlFlow::Continue(());
        }
        let k = self.block[i];
        let lo = u64::from(self.lo);
        let after_in_block = (self.block_end[k] - i - 1) as u64;
        let blk_rem = self.cap[k].saturating_sub(blk_used);
        if self.cap[k] < blk_used || blk_rem < lo * (after_in_block + 1) {
            return ControlFlow::Continue(());
        }
        if rem > blk_rem + self.later_cap[k] {
            return ControlFlow::Continue(());
        }
        let hi_block = blk_rem - lo * after_in_block;
        let need_after = lo * after_in_block + self.later_min[k];
        if rem < need_after + lo {
            return ControlFlow::Continue(());
        }
        let hi = hi_block.min(rem - need_after);
        let lo_x = if after_in_block == 0 {
            lo.max(rem.saturating_sub(self.later_cap[k]))
        } else {
            lo
        };
        let last_in_block = after_in_block == 0;
        for x in lo_x..=hi {
            buf[i] = x as u32;
            let used = if last_in_block { 0 } else { blk_used + x };
            self.descend(i + 1, rem - x, used, buf, visit)?;
        }
        buf[i] = 0;
        ControlFlow::Continue(())
    }
}

/// Limit on the unpruned search space of a single enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_points: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_points: 100_000_000,
        }
    }
}

impl Budget {
    pub fn new(max_points: u128) -> Self {
        Budget { max_points }
    }

    pub fn unlimited() -> Self {
        Budget {
            max_points: u128::MAX,
        }
    }

    /// Default budget, overridden by `EDGERING_BUDGET` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => {
                v.trim().parse::<u128>().map(Budget::new).map_err(|_| {
                    Error::Parse(format!("{BUDGET_ENV}={v:?} is not a positive integer"))
                })
            }
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn check_dilation(&self, sys: &SupportSystem, m: u64) -> Result<()> {
        match sys.unpruned_bound(m) {
            Some(b) if b <= self.max_points => Ok(()),
            b => Err(Error::BudgetExceeded {
                what: "lattice point enumeration",
                needed: b.map_or_else(|| "more than 2^128".to_string(), |b| b.to_string()),
                limit: self.max_points.to_string(),
            }),
        }
    }
}

/// `ell` as given by the case split: `d/2` in case A, `(d+1)/2` in case B,
/// `r_n + 1` in case C. Defined for `n >= 3`.
pub fn ell_closed_form(p: &Partition) -> Result<u64> {
    use crate::multipartite::CaseClass::*;
    let d = p.d() as u64;
    match p.case_class() {
        A => Ok(d / 2),
        B => Ok(d.div_ceil(2)),
        C => Ok(p.largest() as u64 + 1),
        Bipartite => Err(Error::OutOfScope {
            required: "n >= 3",
            partition: p.to_string(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(parts: &[usize]) -> SupportSystem {
        SupportSystem::new(&Partition::new(parts).unwrap())
    }

    fn pt(c: &[u32]) -> LatticePoint {
        LatticePoint::new(c.to_vec())
    }

    #[test]
    fn support_system_shapes() {
        let s = sys(&[1, 1, 1]);
        assert_eq!((s.unit_form_count(), s.block_form_count()), (3, 3));
        assert!((0..3).all(|k| !s.is_implicit(k)));

        let s = sys(&[2, 3]);
        assert!(s.is_implicit(0) && s.is_implicit(1));
        assert_eq!(s.polytope_dim(), 3);

        let s = sys(&[1, 1, 1, 2]);
        assert_eq!((s.unit_form_count(), s.block_form_count()), (5, 4));
        assert!((0..4).all(|k| !s.is_implicit(k)));
        assert_eq!(s.polytope_dim(), 4);
    }

    #[test]
    fn block_forms_on_edges_take_values_zero_or_two() {
        for p in Partition::all_up_to(9) {
            let s = SupportSystem::new(&p);
            for e in p.edges() {
                let x = rho(&p, e);
                for k in 0..p.n() {
                    let v = s.block_form_value(&x.coords, k);
                    let meets = p.block_of(e.u) == k || p.block_of(e.v) == k;
                    assert_eq!(v, if meets { 0 } else { 2 }, "{p} {e:?} f_{k}");
                }
                assert!(s.membership(&x, 1, false).unwrap());
            }
        }
    }

    #[test]
    fn implicit_exactly_when_bipartite() {
        for p in Partition::all_up_to(9) {
            let s = SupportSystem::new(&p);
            for k in 0..p.n() {
                assert_eq!(s.is_implicit(k), p.n() == 2, "{p}");
            }
        }
    }

    #[test]
    fn rho_examples() {
        let p = Partition::new(&[1, 1, 1]).unwrap();
        assert_eq!(rho(&p, p.edge(0, 1).unwrap()), pt(&[1, 1, 0]));
        assert_eq!(rho(&p, p.edge(0, 2).unwrap()), pt(&[1, 0, 1]));
        let q = Partition::new(&[2, 2]).unwrap();
        assert_eq!(rho(&q, q.edge(1, 3).unwrap()), pt(&[0, 1, 0, 1]));
    }

    #[test]
    fn membership_examples() {
        assert!(sys(&[1, 1, 1, 1])
            .membership(&pt(&[1, 1, 1, 1]), 2, true)
            .unwrap());
        assert!(!sys(&[1, 1, 1])
            .membership(&pt(&[0, 2, 2]), 2, true)
            .unwrap());
        // block form f_1 vanishes: boundary, not interior
        assert!(!sys(&[1, 1, 1])
            .membership(&pt(&[2, 1, 1]), 2, true)
            .unwrap());
        assert!(sys(&[1, 1, 1])
            .membership(&pt(&[2, 1, 1]), 2, false)
            .unwrap());
        // the case-B witness in its proper range
        assert!(sys(&[2, 2, 3])
            .membership(&pt(&[2, 1, 1, 1, 1, 1, 1]), 4, true)
            .unwrap());
        assert!(matches!(
            sys(&[1, 1, 1]).membership(&pt(&[1, 1, 1]), 2, false),
            Err(Error::CoordinateSum { .. })
        ));
    }

    #[test]
    fn enumeration_examples() {
        let b = Budget::default();
        let s = sys(&[1, 1, 1]);
        let pts = s.enumerate_points(1, false, &b).unwrap();
        assert_eq!(pts, vec![pt(&[0, 1, 1]), pt(&[1, 0, 1]), pt(&[1, 1, 0])]);

        let s4 = sys(&[1, 1, 1, 1]);
        assert_eq!(
            s4.enumerate_points(2, true, &b).unwrap(),
            vec![pt(&[1, 1, 1, 1])]
        );

        for parts in [&[1, 1][..], &[2, 3], &[1, 2, 2]] {
            let s = sys(parts);
            assert_eq!(
                s.enumerate_points(0, false, &b).unwrap(),
                vec![pt(&vec![0; s.d()])]
            );
            assert!(s.enumerate_points(0, true, &b).unwrap().is_empty());
        }
    }

    #[test]
    fn enumeration_is_exact_against_filtered_compositions() {
        // Oracle: every composition of 2m into d parts, filtered by the forms.
        fn compositions(total: u32, d: usize) -> Vec<Vec<u32>> {
            if d == 1 {
                return vec![vec![total]];
            }
            let mut out = Vec::new();
            for x in 0..=total {
                for mut rest in compositions(total - x, d - 1) {
                    rest.insert(0, x);
                    out.push(rest);
                }
            }
            out
        }
        let b = Budget::default();
        for p in Partition::all_up_to(6) {
            let s = SupportSystem::new(&p);
            for m in 0..=4u64 {
                for interior in [false, true] {
                    let want: Vec<LatticePoint> = compositions(2 * m as u32, p.d())
                        .into_iter()
                        .map(LatticePoint::new)
                        .filter(|x| s.membership(x, m, interior).unwrap())
                        .collect();
                    let got = s.enumerate_points(m, interior, &b).unwrap();
                    assert_eq!(got, want, "{p} m={m} interior={interior}");
                    assert_eq!(s.count_points(m, interior).unwrap(), want.len() as u128);
                }
            }
        }
    }

    #[test]
    fn budget_refuses_large_dilations() {
        let s = sys(&[3, 3, 3]);
        let tiny = Budget::new(10);
        assert!(s.enumerate_points(3, false, &tiny).unwrap_err().is_budget());
    }

    #[test]
    fn ell_examples() {
        let b = Budget::default();
        assert_eq!(sys(&[1, 1, 2, 2]).ell_bruteforce(&b).unwrap(), 3);
        assert_eq!(sys(&[2, 2, 3]).ell_bruteforce(&b).unwrap(), 4);
        assert_eq!(sys(&[1, 1, 1, 5]).ell_bruteforce(&b).unwrap(), 6);

        let cf = |parts: &[usize]| ell_closed_form(&Partition::new(parts).unwrap()).unwrap();
        assert_eq!(cf(&[3, 3, 3]), 5);
        assert_eq!(cf(&[2, 2, 5]), 6);
        assert_eq!(cf(&[1, 1, 1, 1, 1, 1]), 3);
        assert!(ell_closed_form(&Partition::new(&[2, 2]).unwrap()).is_err());
    }

    #[test]
    fn point_text_format() {
        let x: LatticePoint = "1, 2,0".parse().unwrap();
        assert_eq!(x, pt(&[1, 2, 0]));
        assert_eq!(x.to_string(), "1,2,0");
        assert!("1,x".parse::<LatticePoint>().is_err());
    }
}
