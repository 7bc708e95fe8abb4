//! Integer partitions and the small amount of combinatorics built on them:
//! hooks and strips, the hook-length and Weyl dimension formulas, branching
//! and the interleaving relation used by Young-derived series.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{GpiError, Result};

/// A weakly decreasing sequence of positive integers. Trailing zeros are
/// never stored, so equality and hashing are structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition, dropping trailing zeros. Rejects increasing
    /// sequences and interior zeros.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(GpiError::InvalidPartition(format!("{parts:?}")));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary nonnegative parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    pub fn column(n: u32) -> Self {
        Partition(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_i` with 0-based `i`, zero past the last part.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (0..width)
            .map(|j| self.0.iter().filter(|&&p| p > j).count() as u32)
            .collect();
        Partition(parts)
    }

    /// `self ⊆ other` as Young diagrams.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.height() <= other.height() && self.0.iter().enumerate().all(|(i, &p)| p <= other.part(i))
    }

    /// Cells `(row, col)` of the diagram, row-major.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
            .collect()
    }

    pub fn hook_length(&self, row: usize, col: usize) -> u32 {
        let arm = self.part(row) - col as u32 - 1;
        let leg = self.conjugate().part(col) - row as u32 - 1;
        arm + leg + 1
    }

    /// `m[i]` = number of parts equal to `i`.
    pub fn part_multiplicities(&self) -> Vec<u32> {
        let mut m = vec![0u32; self.part(0) as usize + 1];
        for &p in &self.0 {
            m[p as usize] += 1;
        }
        m
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = GpiError;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on parts. The canonical listing order everywhere is the
/// reverse of this (decreasing lex).
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = GpiError;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| GpiError::InvalidPartition(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(GpiError::InvalidPartition(s.to_string()));
        }
        Partition::new(parts)
    }
}

/// Hook `H(k, l)`: partitions with `λ_{k+1} ≤ l`. The strip of height `k`
/// is `H(k, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HookShape {
    pub arm: usize,
    pub leg: u32,
}

impl HookShape {
    pub fn new(arm: usize, leg: u32) -> Self {
        HookShape { arm, leg }
    }

    pub fn strip(height: usize) -> Self {
        HookShape { arm: height, leg: 0 }
    }

    pub fn contains(&self, lambda: &Partition) -> bool {
        lambda.part(self.arm) <= self.leg
    }
}

/// All partitions of `n` in decreasing lexicographic order, optionally
/// restricted to height at most `max_height`.
pub fn enumerate_partitions(n: u32, max_height: Option<usize>) -> Vec<Partition> {
    fn rec(rest: u32, max_part: u32, height_left: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if height_left == 0 {
            return;
        }
        for p in (1..=rest.min(max_part)).rev() {
            cur.push(p);
            rec(rest - p, p, height_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_height.unwrap_or(usize::MAX), &mut Vec::new(), &mut out);
    out
}

pub fn hook_membership(lambda: &Partition, hook: HookShape) -> bool {
    hook.contains(lambda)
}

pub(crate) fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `d_λ`, the dimension of the irreducible `S_n`-module, by the hook-length
/// formula.
pub fn sn_dimension(lambda: &Partition) -> Result<u64> {
    if lambda.is_empty() {
        return Err(GpiError::EmptyPartition);
    }
    let conj = lambda.conjugate();
    let hooks = lambda.cells().into_iter().fold(BigUint::one(), |acc, (r, c)| {
        let h = lambda.part(r) - c as u32 + conj.part(c) - r as u32 - 1;
        acc * h
    });
    let d = factorial(lambda.size()) / hooks;
    d.to_u64()
        .ok_or_else(|| GpiError::InvalidArgument(format!("d_{lambda} overflows u64")))
}

/// `s_λ(1,…,1)` with `k` ones: the dimension of the Weyl module. Zero when
/// `h(λ) > k`.
pub fn weyl_dimension(lambda: &Partition, k: usize) -> u64 {
    if lambda.height() > k {
        return 0;
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        for j in (i + 1)..k {
            let diff = lambda.part(i) as u64 - lambda.part(j) as u64 + (j - i) as u64;
            num *= diff;
            den *= (j - i) as u64;
        }
    }
    (num / den).to_u64().expect("Weyl dimension overflows u64")
}

/// Partitions obtained by adding one box, in decreasing lex order.
pub fn branch_up(lambda: &Partition) -> Vec<Partition> {
    let h = lambda.height();
    (0..=h)
        .filter(|&i| i == 0 || lambda.part(i - 1) > lambda.part(i))
        .map(|i| {
            let mut parts = lambda.0.clone();
            if i == h {
                parts.push(1);
            } else {
                parts[i] += 1;
            }
            Partition(parts)
        })
        .collect()
}

/// Partitions obtained by removing one box, in decreasing lex order.
pub fn branch_down(lambda: &Partition) -> Result<Vec<Partition>> {
    if lambda.is_empty() {
        return Err(GpiError::EmptyPartition);
    }
    let h = lambda.height();
    let mut out: Vec<Partition> = (0..h)
        .filter(|&i| lambda.part(i) > lambda.part(i + 1))
        .map(|i| {
            let mut parts = lambda.0.clone();
            parts[i] -= 1;
            Partition::new(parts).expect("removing a corner keeps a partition")
        })
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// `λ_1 ≥ μ_1 ≥ λ_2 ≥ μ_2 ≥ …` with both sides padded by zeros.
pub fn interleaves(lambda: &Partition, mu: &Partition) -> bool {
    let len = lambda.height().max(mu.height()) + 1;
    (0..len).all(|i| lambda.part(i) >= mu.part(i) && mu.part(i) >= lambda.part(i + 1))
}
