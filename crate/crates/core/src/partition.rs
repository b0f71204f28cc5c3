//! Partitions, nodes, residues, hooks, dominance and ladders.
//!
//! Nodes use 1-based matrix coordinates: `[i, j]` is the `j`th box of the
//! `i`th row. The content of `[i, j]` is `j - i` and its `p`-residue is the
//! content reduced into `0..p`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tableau::{ResidueSequence, StandardTableau};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

/// Box of a Young diagram, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub row: usize,
    pub col: usize,
}

impl Node {
    pub fn new(row: usize, col: usize) -> Self {
        debug_assert!(row >= 1 && col >= 1);
        Node { row, col }
    }

    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }

    pub fn residue(&self, p: u64) -> u64 {
        residue_of(self.content(), p)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.row, self.col)
    }
}

pub fn residue_of(content: i64, p: u64) -> u64 {
    content.rem_euclid(p as i64) as u64
}

/// Outcome of comparing two partitions of the same size in the dominance order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dominance {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// Returns an error unless `p` is a prime with `p >= 3`.
pub fn check_prime(p: u64) -> Result<()> {
    if p < 3 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::InvalidPrime(p));
    }
    Ok(())
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition after sorting and dropping zero parts.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part `i` (1-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return usize::MAX;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, node: Node) -> bool {
        node.col >= 1 && node.row >= 1 && node.col <= self.part(node.row)
    }

    /// Nodes in row reading order.
    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| Node::new(i + 1, j)))
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(1).min(self.size());
        let parts = (1..=width)
            .map(|j| self.parts.iter().filter(|&&x| x >= j).count())
            .collect();
        Partition { parts }
    }

    pub fn is_p_restricted(&self, p: u64) -> bool {
        (1..=self.len()).all(|i| ((self.part(i) - self.part(i + 1)) as u64) < p)
    }

    pub fn dominance_compare(&self, other: &Partition) -> Result<Dominance> {
        self.check_same_size(other)?;
        let (mut le, mut ge) = (true, true);
        let (mut a, mut b) = (0usize, 0usize);
        for i in 1..=self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            le &= a <= b;
            ge &= a >= b;
        }
        Ok(match (le, ge) {
            (true, true) => Dominance::Equal,
            (true, false) => Dominance::Less,
            (false, true) => Dominance::Greater,
            (false, false) => Dominance::Incomparable,
        })
    }

    /// `self ⊵ other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        matches!(
            self.dominance_compare(other),
            Ok(Dominance::Greater | Dominance::Equal)
        )
    }

    /// Total order refining dominance: `Less` means `self` comes first.
    /// More dominant partitions come first; incomparable pairs are ordered
    /// lexicographically descending.
    pub fn total_order(&self, other: &Partition) -> Result<Ordering> {
        self.check_same_size(other)?;
        Ok(canonical_cmp(self, other))
    }

    fn check_same_size(&self, other: &Partition) -> Result<()> {
        let (a, b) = (self.size(), other.size());
        if a != b {
            return Err(Error::SizeMismatch(a, b));
        }
        Ok(())
    }

    /// All addable nodes, ordered by increasing row.
    pub fn all_addable(&self) -> Vec<Node> {
        (1..=self.len() + 1)
            .filter(|&i| i == 1 || self.part(i) < self.part(i - 1))
            .map(|i| Node::new(i, self.part(i) + 1))
            .collect()
    }

    /// All removable nodes, ordered by increasing row.
    pub fn all_removable(&self) -> Vec<Node> {
        (1..=self.len())
            .filter(|&i| self.part(i) > self.part(i + 1))
            .map(|i| Node::new(i, self.part(i)))
            .collect()
    }

    pub fn addable_nodes(&self, residue: u64, p: u64) -> Vec<Node> {
        self.all_addable()
            .into_iter()
            .filter(|n| n.residue(p) == residue)
            .collect()
    }

    pub fn removable_nodes(&self, residue: u64, p: u64) -> Vec<Node> {
        self.all_removable()
            .into_iter()
            .filter(|n| n.residue(p) == residue)
            .collect()
    }

    /// Adds an addable node. Panics if the node is not addable.
    pub fn add_node(&self, node: Node) -> Partition {
        let mut parts = self.parts.clone();
        if node.row == parts.len() + 1 {
            assert_eq!(node.col, 1, "{node} is not addable to {self}");
            parts.push(1);
        } else {
            assert!(
                node.row <= parts.len()
                    && parts[node.row - 1] + 1 == node.col
                    && (node.row == 1 || parts[node.row - 2] >= node.col),
                "{node} is not addable to {self}"
            );
            parts[node.row - 1] += 1;
        }
        Partition { parts }
    }

    /// Removes a removable node. Panics if the node is not removable.
    pub fn remove_node(&self, node: Node) -> Partition {
        assert!(
            node.row <= self.len()
                && self.part(node.row) == node.col
                && self.part(node.row + 1) < node.col,
            "{node} is not removable from {self}"
        );
        let mut parts = self.parts.clone();
        parts[node.row - 1] -= 1;
        if parts[node.row - 1] == 0 {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn hook_length(&self, node: Node) -> usize {
        debug_assert!(self.contains(node));
        let arm = self.part(node.row) - node.col;
        let leg = (node.row + 1..=self.len())
            .take_while(|&i| self.part(i) >= node.col)
            .count();
        arm + leg + 1
    }

    pub fn hook_lengths(&self) -> BTreeMap<Node, usize> {
        self.nodes().map(|n| (n, self.hook_length(n))).collect()
    }

    /// Number of standard tableaux, by the hook length formula.
    pub fn count_standard_tableaux(&self) -> num_bigint::BigUint {
        let mut num = num_bigint::BigUint::from(1u32);
        for k in 2..=self.size() {
            num *= k as u64;
        }
        let den = self
            .nodes()
            .fold(num_bigint::BigUint::from(1u32), |acc, n| acc * self.hook_length(n) as u64);
        num / den
    }

    pub fn ladder_decomposition(&self, p: u64) -> Result<LadderData> {
        LadderData::new(self, p)
    }

    /// Whether every ladder has fewer than `p` nodes.
    pub fn validate_ladder_lengths(&self, p: u64) -> Result<bool> {
        Ok(self.ladder_decomposition(p)?.max_ladder_len() < p as usize)
    }

    /// Expanded-exponent form such as `2^2,1`.
    pub fn to_exponent_string(&self) -> String {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.parts.len() {
            let v = self.parts[i];
            let run = self.parts[i..].iter().take_while(|&&x| x == v).count();
            out.push(if run > 1 { format!("{v}^{run}") } else { v.to_string() });
            i += run;
        }
        out.join(",")
    }
}

pub(crate) fn canonical_cmp(a: &Partition, b: &Partition) -> Ordering {
    b.parts.cmp(&a.parts)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        f.write_str(&strs.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `6,5,3,1`, exponent shorthand `2,1^3`, and `""` / `[]` for ∅.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .unwrap_or(trimmed)
            .trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let bad = || Error::InvalidPartition(s.to_string());
        let mut parts = Vec::new();
        for token in inner.split(',') {
            let token = token.trim();
            let (base, reps) = match token.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim().parse::<usize>().map_err(|_| bad())?),
                None => (token, 1),
            };
            let v = base.parse::<usize>().map_err(|_| bad())?;
            parts.extend(std::iter::repeat_n(v, reps));
        }
        Partition::new(parts).map_err(|e| match e {
            Error::InvalidPartition(msg) => Error::InvalidPartition(format!("{s}: {msg}")),
            other => other,
        })
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n`, most dominant first (lexicographically descending).
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for v in (1..=rem.min(max)).rev() {
            cur.push(v);
            rec(rem - v, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All `p`-restricted partitions of `n` in the canonical total order.
pub fn restricted_partitions(n: usize, p: u64) -> Vec<Partition> {
    partitions(n)
        .into_iter()
        .filter(|l| l.is_p_restricted(p))
        .collect()
}

/// Ladder structure of a `p`-restricted partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderData {
    pub partition: Partition,
    pub p: u64,
    /// Nonempty ladders in increasing order, each listed top to bottom.
    pub ladders: Vec<Vec<Node>>,
    pub residues: Vec<u64>,
    /// `limits[0] = 0`, `limits[k] = |L_1| + ... + |L_k|`.
    pub limits: Vec<usize>,
    pub ladder_tableau: StandardTableau,
    pub ladder_residue_sequence: ResidueSequence,
}

impl LadderData {
    fn new(partition: &Partition, p: u64) -> Result<Self> {
        check_prime(p)?;
        if !partition.is_p_restricted(p) {
            return Err(Error::NotRestricted {
                partition: partition.clone(),
                p,
            });
        }
        // ladder index b = j + (p - 1)(i - 1)
        let mut by_index: BTreeMap<usize, Vec<Node>> = BTreeMap::new();
        for node in partition.nodes() {
            let b = node.col + (p as usize - 1) * (node.row - 1);
            by_index.entry(b).or_default().push(node);
        }
        let ladders: Vec<Vec<Node>> = by_index
            .into_values()
            .map(|mut l| {
                l.sort();
                l
            })
            .collect();
        let residues: Vec<u64> = ladders.iter().map(|l| l[0].residue(p)).collect();
        let mut limits = vec![0];
        for l in &ladders {
            limits.push(limits.last().unwrap() + l.len());
        }
        let filling: Vec<Node> = ladders.iter().flatten().copied().collect();
        let ladder_tableau = StandardTableau::from_nodes(filling)?;
        let ladder_residue_sequence = ladder_tableau.residue_sequence(p);
        Ok(LadderData {
            partition: partition.clone(),
            p,
            ladders,
            residues,
            limits,
            ladder_tableau,
            ladder_residue_sequence,
        })
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.ladders.iter().map(Vec::len).collect()
    }

    pub fn max_ladder_len(&self) -> usize {
        self.ladders.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Intervals `[n_{k-1} + 1, n_k]` on which the ladder group acts.
    pub fn intervals(&self) -> Vec<RangeInclusive<usize>> {
        self.limits.windows(2).map(|w| w[0] + 1..=w[1]).collect()
    }

    /// Order of the ladder group, `Π |L_k|!`.
    pub fn ladder_group_order(&self) -> u128 {
        self.ladders
            .iter()
            .map(|l| (1..=l.len() as u128).product::<u128>())
            .product()
    }
}
