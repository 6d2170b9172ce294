//! Finite posets and their Hibi rings: poset ideals, purity, ranks in the
//! augmented poset, the condition-N levelness criterion and Hilbert
//! functions by multichain counting.
//!
//! Elements of a poset on `n` elements are `0..n`. In the augmented poset
//! the bottom is index `n` and the top is index `n + 1`.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const DEFAULT_POSET_CAP: usize = 24;
pub const DEFAULT_DEGREE_CAP: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poset {
    n: usize,
    /// Strict order, transitively closed: `lt[a][b]` iff `a < b`.
    lt: Vec<Vec<bool>>,
    covers: Vec<(usize, usize)>,
}

/// An element of the augmented poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Hat {
    Bottom,
    Elem(usize),
    Top,
}

impl fmt::Display for Hat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hat::Bottom => f.write_str("0^"),
            Hat::Top => f.write_str("1^"),
            Hat::Elem(i) => write!(f, "{i}"),
        }
    }
}

/// Build a poset from relations `a < b`; the order is their transitive
/// closure and the stored covers are its transitive reduction.
pub fn make_poset(n: usize, relations: &[(usize, usize)]) -> Result<Poset> {
    let mut lt = vec![vec![false; n]; n];
    for &(a, b) in relations {
        if a >= n || b >= n {
            return Err(Error::InvalidPoset(format!(
                "relation {a} < {b} mentions an element outside 0..{n}"
            )));
        }
        lt[a][b] = true;
    }
    for k in 0..n {
        let row_k = lt[k].clone();
        for row in lt.iter_mut() {
            if row[k] {
                for (x, &via) in row.iter_mut().zip(&row_k) {
                    *x |= via;
                }
            }
        }
    }
    if let Some(i) = (0..n).find(|&i| lt[i][i]) {
        return Err(Error::InvalidPoset(format!("cycle through element {i}")));
    }
    let mut covers = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if lt[a][b] && !(0..n).any(|c| lt[a][c] && lt[c][b]) {
                covers.push((a, b));
            }
        }
    }
    Ok(Poset { n, lt, covers })
}

/// Two disjoint chains `p_1 < ... < p_m` and `p_{m+1} < ... < p_{m+n}`;
/// `p_i` is element `i - 1`.
pub fn pi_poset(m: usize, n: usize) -> Result<Poset> {
    make_poset(m + n, &two_chains(m, n)?)
}

/// `pi_poset(m, n)` with the extra relation `p_1 < p_{m+n}`.
pub fn pi_prime_poset(m: usize, n: usize) -> Result<Poset> {
    let mut rel = two_chains(m, n)?;
    rel.push((0, m + n - 1));
    make_poset(m + n, &rel)
}

fn two_chains(m: usize, n: usize) -> Result<Vec<(usize, usize)>> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidPoset("chain lengths must be positive".into()));
    }
    let first = (1..m).map(|i| (i - 1, i));
    let second = (m + 1..m + n).map(|i| (i - 1, i));
    Ok(first.chain(second).collect())
}

impl Poset {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.lt[a][b]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.lt[a][b]
    }

    /// Elements comparable with `x`, including `x`.
    pub fn star(&self, x: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&y| self.le(y, x) || self.le(x, y))
            .collect()
    }

    /// Elements in an order compatible with `<`.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&x| (0..self.n).filter(|&y| self.lt[y][x]).count());
        order
    }

    pub fn augmented(&self) -> Augmented {
        Augmented::new(self)
    }

    /// All maximal chains have the same length.
    pub fn is_pure(&self) -> bool {
        let a = self.augmented();
        a.is_pure_interval(a.bottom(), a.top())
    }

    /// Rank of the augmented poset, `rank P + 2` for nonempty `P`.
    pub fn rank_hat(&self) -> usize {
        let a = self.augmented();
        a.rank(a.bottom(), a.top()).expect("bottom < top")
    }

    /// Down-closed subsets as bitmasks, in increasing numeric order.
    pub fn ideals(&self) -> Result<Vec<u32>> {
        self.check_cap(DEFAULT_POSET_CAP)?;
        let below: Vec<u32> = (0..self.n)
            .map(|x| {
                (0..self.n)
                    .filter(|&y| self.lt[y][x])
                    .fold(0, |m, y| m | 1 << y)
            })
            .collect();
        let order = self.linear_extension();
        let mut out = vec![0u32];
        for &x in &order {
            // below[x] only involves earlier elements of the extension
            let add: Vec<u32> = out
                .iter()
                .filter(|&&i| i & below[x] == below[x])
                .map(|&i| i | 1 << x)
                .collect();
            out.extend(add);
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn count_ideals(&self) -> Result<usize> {
        Ok(self.ideals()?.len())
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.n > cap {
            return Err(Error::BudgetExceeded {
                what: "poset size",
                needed: self.n.to_string(),
                limit: cap.to_string(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Poset {
    /// The text format read by `FromStr`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for (a, b) in &self.covers {
            writeln!(f, "{a} < {b}")?;
        }
        Ok(())
    }
}

impl FromStr for Poset {
    type Err = Error;

    /// First line: element count. Then one relation `a < b` per line,
    /// elements numbered from 0. Blank lines and `#` comments are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty poset description".into()))?
            .parse()
            .map_err(|_| Error::Parse("first line must be the element count".into()))?;
        let mut rel = Vec::new();
        for line in lines {
            let (a, b) = line
                .split_once('<')
                .ok_or_else(|| Error::Parse(format!("expected `a < b`, got {line:?}")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad element in {line:?}")))
            };
            rel.push((parse(a)?, parse(b)?));
        }
        make_poset(n, &rel)
    }
}

/// The poset with a new bottom and top adjoined, with interval ranks.
#[derive(Clone, Debug)]
pub struct Augmented {
    size: usize,
    lt: Vec<Vec<bool>>,
    /// Longest and shortest saturated chain lengths; `None` if not `a <= b`.
    longest: Vec<Vec<Option<usize>>>,
    shortest: Vec<Vec<Option<usize>>>,
}

impl Augmented {
    fn new(p: &Poset) -> Self {
        let n = p.n;
        let size = n + 2;
        let (bot, top) = (n, n + 1);
        let mut lt = vec![vec![false; size]; size];
        for (a, row) in p.lt.iter().enumerate() {
            lt[a][..n].copy_from_slice(row);
            lt[bot][a] = true;
            lt[a][top] = true;
        }
        lt[bot][top] = true;
        let mut cover = vec![vec![false; size]; size];
        for a in 0..size {
            for b in 0..size {
                cover[a][b] = lt[a][b] && !(0..size).any(|c| lt[a][c] && lt[c][b]);
            }
        }
        // topological order: bottom, a linear extension, top
        let mut order = vec![bot];
        order.extend(p.linear_extension());
        order.push(top);
        let mut longest = vec![vec![None; size]; size];
        let mut shortest = vec![vec![None; size]; size];
        for (i, &a) in order.iter().enumerate() {
            longest[a][a] = Some(0);
            shortest[a][a] = Some(0);
            for &b in &order[i + 1..] {
                let mut lo: Option<usize> = None;
                let mut sh: Option<usize> = None;
                for c in 0..size {
                    if !cover[c][b] {
                        continue;
                    }
                    if let (Some(l), Some(s)) = (longest[a][c], shortest[a][c]) {
                        lo = Some(lo.map_or(l + 1, |x: usize| x.max(l + 1)));
                        sh = Some(sh.map_or(s + 1, |x: usize| x.min(s + 1)));
                    }
                }
                longest[a][b] = lo;
                shortest[a][b] = sh;
            }
        }
        Augmented {
            size,
            lt,
            longest,
            shortest,
        }
    }

    pub fn bottom(&self) -> usize {
        self.size - 2
    }

    pub fn top(&self) -> usize {
        self.size - 1
    }

    pub fn index(&self, h: Hat) -> Result<usize> {
        match h {
            Hat::Bottom => Ok(self.bottom()),
            Hat::Top => Ok(self.top()),
            Hat::Elem(i) if i < self.size - 2 => Ok(i),
            Hat::Elem(i) => Err(Error::InvalidPoset(format!("no element {i}"))),
        }
    }

    pub fn hat(&self, i: usize) -> Hat {
        if i == self.bottom() {
            Hat::Bottom
        } else if i == self.top() {
            Hat::Top
        } else {
            Hat::Elem(i)
        }
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.lt[a][b]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.lt[a][b]
    }

    /// Length of the longest chain in `[a, b]`, if `a <= b`.
    pub fn rank(&self, a: usize, b: usize) -> Option<usize> {
        self.longest[a][b]
    }

    pub fn is_pure_interval(&self, a: usize, b: usize) -> bool {
        self.longest[a][b].is_some() && self.longest[a][b] == self.shortest[a][b]
    }
}

/// `y_1, x_1, ..., y_t, x_t` in the augmented poset.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionNSequence {
    pub pairs: Vec<(Hat, Hat)>,
}

impl ConditionNSequence {
    pub fn new(pairs: Vec<(Hat, Hat)>) -> Self {
        ConditionNSequence { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Checks `x_1 != 0^`, `y_1 > x_1 < y_2 > ... > x_t`, and `y_i` not
    /// above `x_j` for `i < j`.
    pub fn validate(&self, a: &Augmented) -> Result<Vec<(usize, usize)>> {
        let idx: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .map(|&(y, x)| Ok((a.index(y)?, a.index(x)?)))
            .collect::<Result<_>>()?;
        if let Some(&(_, x1)) = idx.first() {
            if x1 == a.bottom() {
                return Err(Error::ConditionN("x_1 is the bottom element".into()));
            }
        }
        for (i, &(y, x)) in idx.iter().enumerate() {
            if !a.lt(x, y) {
                return Err(Error::ConditionN(format!("y_{0} > x_{0} fails", i + 1)));
            }
            if i > 0 && !a.lt(idx[i - 1].1, y) {
                return Err(Error::ConditionN(format!("x_{} < y_{} fails", i, i + 1)));
            }
            for (j, &(yj, _)) in idx[..i].iter().enumerate() {
                if a.le(x, yj) {
                    return Err(Error::ConditionN(format!(
                        "y_{} lies above x_{}",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(idx)
    }
}

fn r_value_indices(a: &Augmented, idx: &[(usize, usize)]) -> i64 {
    let rank = |u, v| a.rank(u, v).expect("comparable pair") as i64;
    let mut prev = a.bottom();
    let mut r = 0i64;
    for &(y, x) in idx {
        r += rank(prev, y) - rank(x, y);
        prev = x;
    }
    r + rank(prev, a.top())
}

/// `sum_i (rank[x_{i-1}, y_i] - rank[x_i, y_i]) + rank[x_t, 1^]` with
/// `x_0 = 0^`, ranks taken in the augmented poset.
pub fn r_value(p: &Poset, seq: &ConditionNSequence) -> Result<i64> {
    let a = p.augmented();
    let idx = seq.validate(&a)?;
    Ok(r_value_indices(&a, &idx))
}

/// Largest r-value over all condition-N sequences, with a sequence
/// attaining it.
pub fn max_r_value(p: &Poset) -> Result<(i64, ConditionNSequence)> {
    p.check_cap(DEFAULT_POSET_CAP)?;
    let a = p.augmented();
    let size = a.size;
    let down: Vec<u32> = (0..size)
        .map(|y| {
            (0..size)
                .filter(|&z| a.le(z, y))
                .fold(0u32, |m, z| m | 1 << z)
        })
        .collect();

    // best(x, forbidden): largest continuation value from x_i = x, where
    // `forbidden` is the union of the down-sets of y_1..y_i.
    type Memo = HashMap<(usize, u32), (i64, Option<(usize, usize)>)>;
    fn best(a: &Augmented, down: &[u32], x: usize, forbidden: u32, memo: &mut Memo) -> i64 {
        if let Some(&(v, _)) = memo.get(&(x, forbidden)) {
            return v;
        }
        let mut value = a.rank(x, a.top()).expect("x <= top") as i64;
        let mut choice = None;
        for y in 0..a.size {
            if !a.lt(x, y) {
                continue;
            }
            for x2 in 0..a.size {
                if x2 == a.bottom() || forbidden >> x2 & 1 == 1 || !a.lt(x2, y) {
                    continue;
                }
                let gain = a.rank(x, y).unwrap() as i64 - a.rank(x2, y).unwrap() as i64;
                let v = gain + best(a, down, x2, forbidden | down[y], memo);
                if v > value {
                    value = v;
                    choice = Some((y, x2));
                }
            }
        }
        memo.insert((x, forbidden), (value, choice));
        value
    }

    let mut memo = Memo::new();
    let value = best(&a, &down, a.bottom(), 0, &mut memo);
    let mut pairs = Vec::new();
    let (mut x, mut forbidden) = (a.bottom(), 0u32);
    while let Some(&(_, Some((y, x2)))) = memo.get(&(x, forbidden)) {
        pairs.push((a.hat(y), a.hat(x2)));
        forbidden |= down[y];
        x = x2;
    }
    let seq = ConditionNSequence::new(pairs);
    debug_assert_eq!(r_value(p, &seq).ok(), Some(value));
    Ok((value, seq))
}

/// Level iff every condition-N sequence has r-value at most the rank of the
/// augmented poset.
pub fn is_level_hibi(p: &Poset) -> Result<bool> {
    Ok(max_r_value(p)?.0 <= p.rank_hat() as i64)
}

/// Every upper interval `[x, 1^]` with `x` in the poset is pure.
pub fn upper_interval_pure_sufficient(p: &Poset) -> bool {
    let a = p.augmented();
    (0..p.n).all(|x| a.is_pure_interval(x, a.top()))
}

/// Number of multichains `I_1 <= ... <= I_m` of poset ideals, the Hilbert
/// function of the Hibi ring in degree `m`.
pub fn hibi_hilbert_function(p: &Poset, m: u64) -> Result<u128> {
    if m > DEFAULT_DEGREE_CAP {
        return Err(Error::BudgetExceeded {
            what: "Hibi Hilbert function degree",
            needed: m.to_string(),
            limit: DEFAULT_DEGREE_CAP.to_string(),
        });
    }
    Ok(hibi_hilbert_series_prefix(p, m)?[m as usize])
}

/// Values of the Hilbert function in degrees `0..=max_m`.
pub fn hibi_hilbert_series_prefix(p: &Poset, max_m: u64) -> Result<Vec<u128>> {
    let ideals = p.ideals()?;
    let pos: HashMap<u32, usize> = ideals.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let order = p.linear_extension();
    let above: Vec<u32> = (0..p.n)
        .map(|x| (0..p.n).filter(|&y| p.lt[x][y]).fold(0, |m, y| m | 1 << y))
        .collect();
    let overflow = || Error::Overflow("Hibi Hilbert function");
    let mut out = vec![1u128];
    let mut f = vec![1u128; ideals.len()];
    for k in 1..=max_m {
        if k > 1 {
            // f(J) <- sum of f(I) over ideals I contained in J
            for &x in &order {
                for (j, &mask) in ideals.iter().enumerate() {
                    if mask >> x & 1 == 1 && mask & above[x] == 0 {
                        let i = pos[&(mask & !(1 << x))];
                        f[j] = f[j].checked_add(f[i]).ok_or_else(overflow)?;
                    }
                }
            }
        }
        let total = f
            .iter()
            .try_fold(0u128, |acc, &v| acc.checked_add(v))
            .ok_or_else(overflow)?;
        out.push(total);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(k: usize) -> Poset {
        let rel: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
        make_poset(k, &rel).unwrap()
    }

    #[test]
    fn construction_examples() {
        let c = chain(3);
        assert_eq!(c.rank_hat(), 4);
        assert_eq!(c.covers(), &[(0, 1), (1, 2)]);
        let anti = make_poset(2, &[]).unwrap();
        assert!(!anti.lt(0, 1) && !anti.lt(1, 0));
        assert!(make_poset(2, &[(0, 1), (1, 0)]).is_err());
        assert!(make_poset(2, &[(0, 2)]).is_err());
        // redundant relation is dropped from the covers
        let p = make_poset(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers().len(), 2);
    }

    #[test]
    fn pi_posets() {
        let p = pi_poset(1, 1).unwrap();
        assert!(p.covers().is_empty());
        let q = pi_prime_poset(1, 1).unwrap();
        assert_eq!(q.covers(), &[(0, 1)]);
        let r = pi_poset(2, 3).unwrap();
        assert_eq!(r.covers(), &[(0, 1), (2, 3), (3, 4)]);
        assert!(!r.lt(0, 4) && !r.lt(2, 1));
        assert!(pi_poset(0, 2).is_err());
    }

    #[test]
    fn ideal_counts() {
        for k in 1..6 {
            assert_eq!(chain(k).count_ideals().unwrap(), k + 1);
        }
        assert_eq!(make_poset(2, &[]).unwrap().count_ideals().unwrap(), 4);
        assert_eq!(pi_poset(1, 1).unwrap().count_ideals().unwrap(), 4);
        // two chains: product of chain-ideal counts
        assert_eq!(pi_poset(2, 3).unwrap().count_ideals().unwrap(), 12);
        assert!(make_poset(25, &[])
            .unwrap()
            .ideals()
            .unwrap_err()
            .is_budget());
    }

    #[test]
    fn purity() {
        for m in 1..5 {
            assert!(pi_poset(m, m).unwrap().is_pure());
        }
        assert!(!pi_poset(2, 3).unwrap().is_pure());
        // every maximal chain of the primed poset on (2, 2) has length 1
        assert!(pi_prime_poset(2, 2).unwrap().is_pure());
        assert!(!pi_prime_poset(2, 3).unwrap().is_pure());
    }

    #[test]
    fn r_value_examples() {
        for (m, n) in [(2, 2), (2, 3), (3, 4), (2, 5), (5, 3)] {
            let p = pi_prime_poset(m, n).unwrap();
            let seq = ConditionNSequence::new(vec![(Hat::Elem(m + n - 1), Hat::Elem(0))]);
            assert_eq!(r_value(&p, &seq).unwrap(), (n + m - 1) as i64);
        }
        let p = pi_prime_poset(3, 4).unwrap();
        assert_eq!(p.rank_hat(), 5);
        let empty = ConditionNSequence::default();
        assert_eq!(r_value(&p, &empty).unwrap(), 5);
    }

    #[test]
    fn condition_n_violations() {
        let p = pi_prime_poset(3, 4).unwrap();
        let bad_bottom = ConditionNSequence::new(vec![(Hat::Elem(0), Hat::Bottom)]);
        assert!(r_value(&p, &bad_bottom).is_err());
        let not_above = ConditionNSequence::new(vec![(Hat::Elem(3), Hat::Elem(0))]);
        assert!(r_value(&p, &not_above).is_err());
        // y_1 = 1^ lies above every later x
        let seq = ConditionNSequence::new(vec![(Hat::Top, Hat::Elem(2)), (Hat::Top, Hat::Elem(1))]);
        assert!(matches!(r_value(&p, &seq), Err(Error::ConditionN(_))));
    }

    #[test]
    fn levelness() {
        assert!(is_level_hibi(&pi_poset(2, 3).unwrap()).unwrap());
        assert!(is_level_hibi(&pi_prime_poset(2, 4).unwrap()).unwrap());
        let p = pi_prime_poset(3, 4).unwrap();
        let (r, seq) = max_r_value(&p).unwrap();
        assert!(r >= 6);
        assert_eq!(r_value(&p, &seq).unwrap(), r);
        assert!(!is_level_hibi(&p).unwrap());
    }

    #[test]
    fn upper_intervals() {
        assert!(upper_interval_pure_sufficient(&pi_poset(2, 3).unwrap()));
        assert!(upper_interval_pure_sufficient(
            &pi_prime_poset(2, 4).unwrap()
        ));
        assert!(!upper_interval_pure_sufficient(
            &pi_prime_poset(3, 3).unwrap()
        ));
    }

    #[test]
    fn star_operator() {
        let p = pi_prime_poset(2, 2).unwrap();
        assert_eq!(p.star(0), vec![0, 1, 3]);
        assert_eq!(p.star(2), vec![2, 3]);
    }

    #[test]
    fn hilbert_examples() {
        let pt = make_poset(1, &[]).unwrap();
        let anti = pi_poset(1, 1).unwrap();
        for m in 0..8u64 {
            assert_eq!(hibi_hilbert_function(&pt, m).unwrap(), m as u128 + 1);
            assert_eq!(
                hibi_hilbert_function(&anti, m).unwrap(),
                (m as u128 + 1).pow(2)
            );
        }
        // a chain of k elements gives C(m + k, k)
        let c = chain(3);
        let v = hibi_hilbert_series_prefix(&c, 5).unwrap();
        assert_eq!(v, vec![1, 4, 10, 20, 35, 56]);
    }

    #[test]
    fn text_format_round_trip() {
        let p = pi_prime_poset(2, 3).unwrap();
        let q: Poset = p.to_string().parse().unwrap();
        assert_eq!(p, q);
        let r: Poset = "# chain\n3\n0 < 1\n1 < 2\n".parse().unwrap();
        assert_eq!(r, chain(3));
        assert!("x".parse::<Poset>().is_err());
        assert!("2\n0 - 1".parse::<Poset>().is_err());
        assert!("2\n0 < 1\n1 < 0".parse::<Poset>().is_err());
    }
}
