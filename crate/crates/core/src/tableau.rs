//! Standard tableaux, residue sequences, tableau classes and the
//! permutations `d(t)` with `d(t) t^λ = t`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::{check_prime, Node, Partition};

/// Tableau classes are not enumerated past this size without an override.
pub const CLASS_SIZE_LIMIT: usize = 40;

/// A standard filling of a Young diagram. `nodes[k - 1]` is the node holding `k`.
///
/// Ordering is lexicographic on the entry-position sequence.
#[derive(Clone, Debug)]
pub struct StandardTableau {
    nodes: Vec<Node>,
    shape: Partition,
}

impl PartialEq for StandardTableau {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes
    }
}

impl Eq for StandardTableau {}

impl Hash for StandardTableau {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.nodes.hash(state);
    }
}

impl PartialOrd for StandardTableau {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StandardTableau {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.nodes.cmp(&other.nodes)
    }
}

impl StandardTableau {
    /// Builds a tableau from the positions of `1, 2, ..., n`; each prefix must
    /// be a partition shape.
    pub fn from_nodes(nodes: Vec<Node>) -> Result<Self> {
        let mut shape = Partition::empty();
        for (k, &node) in nodes.iter().enumerate() {
            if !shape.all_addable().contains(&node) {
                return Err(Error::InvalidTableau(format!(
                    "entry {} at {node} breaks standardness",
                    k + 1
                )));
            }
            shape = shape.add_node(node);
        }
        Ok(StandardTableau { nodes, shape })
    }

    /// Builds a tableau from its rows, e.g. `[[1, 2], [3, 5], [4]]`.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n: usize = rows.iter().map(Vec::len).sum();
        let mut nodes = vec![None; n];
        for (i, row) in rows.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if e == 0 || e > n || nodes[e - 1].is_some() {
                    return Err(Error::InvalidTableau(format!("bad entry {e} in {rows:?}")));
                }
                nodes[e - 1] = Some(Node::new(i + 1, j + 1));
            }
        }
        let shape = Partition::new(rows.iter().map(Vec::len).collect())
            .map_err(|_| Error::InvalidTableau(format!("{rows:?} is not a partition shape")))?;
        let t = Self::from_nodes(nodes.into_iter().map(Option::unwrap).collect())?;
        debug_assert_eq!(t.shape, shape);
        Ok(t)
    }

    /// The row reading tableau `t^λ`.
    pub fn row_reading(shape: &Partition) -> Self {
        StandardTableau {
            nodes: shape.nodes().collect(),
            shape: shape.clone(),
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Node holding `k` (1-based).
    pub fn node(&self, k: usize) -> Node {
        self.nodes[k - 1]
    }

    pub fn content(&self, k: usize) -> i64 {
        self.nodes[k - 1].content()
    }

    pub fn residue_sequence(&self, p: u64) -> ResidueSequence {
        ResidueSequence {
            p,
            values: self.nodes.iter().map(|n| n.residue(p) as u8).collect(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let mut rows: Vec<Vec<usize>> = self.shape.parts().iter().map(|&l| vec![0; l]).collect();
        for (k, n) in self.nodes.iter().enumerate() {
            rows[n.row - 1][n.col - 1] = k + 1;
        }
        rows
    }

    /// `σ_i t` (entries `i - 1` and `i` exchanged) when it is standard.
    pub fn swap(&self, i: usize) -> Option<StandardTableau> {
        let (a, b) = (self.nodes[i - 2], self.nodes[i - 1]);
        if a.row == b.row || a.col == b.col {
            return None;
        }
        let mut nodes = self.nodes.clone();
        nodes.swap(i - 2, i - 1);
        Some(StandardTableau {
            nodes,
            shape: self.shape.clone(),
        })
    }

    /// Position of each node in row reading order (1-based), indexed by entry.
    fn reading_positions(&self) -> Vec<usize> {
        let mut offsets = vec![0usize; self.shape.len() + 1];
        for i in 1..=self.shape.len() {
            offsets[i] = offsets[i - 1] + self.shape.part(i);
        }
        self.nodes
            .iter()
            .map(|n| offsets[n.row - 1] + n.col)
            .collect()
    }

    /// The permutation `d(t)` in one-line form: `d(k)` is the entry of `t`
    /// at the node where `t^λ` holds `k`.
    pub fn d_permutation(&self) -> Vec<usize> {
        let pos = self.reading_positions();
        let mut one_line = vec![0; pos.len()];
        for (k, &r) in pos.iter().enumerate() {
            one_line[r - 1] = k + 1;
        }
        one_line
    }

    /// `d(t)` together with its canonical reduced word.
    pub fn d_reduced_word(&self) -> PermutationWord {
        self.d_reduced_word_with(WordStrategy::LeftmostDescent)
    }

    pub fn d_reduced_word_with(&self, strategy: WordStrategy) -> PermutationWord {
        PermutationWord::reduced(self.d_permutation(), strategy)
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "({})", rows.join("|"))
    }
}

impl Serialize for StandardTableau {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StandardTableau {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<usize>>::deserialize(deserializer)?;
        StandardTableau::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// A filling of a shape that need not be standard (result of a place permutation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filling {
    pub shape: Partition,
    pub nodes: Vec<Node>,
}

impl Filling {
    pub fn is_standard(&self) -> bool {
        self.nodes.iter().enumerate().all(|(k, n)| {
            self.nodes[..k]
                .iter()
                .filter(|m| (m.row == n.row && m.col > n.col) || (m.col == n.col && m.row > n.row))
                .count()
                == 0
        })
    }

    pub fn into_standard(self) -> Option<StandardTableau> {
        if !self.is_standard() {
            return None;
        }
        StandardTableau::from_nodes(self.nodes).ok()
    }
}

/// Place permutation: entry `k` becomes `g(k)` at the same node.
/// `g` is given in one-line form, `g[k - 1] = g(k)`.
pub fn place_permute(g: &[usize], t: &StandardTableau) -> Filling {
    assert_eq!(g.len(), t.size(), "permutation and tableau sizes differ");
    let mut nodes = vec![Node::new(1, 1); g.len()];
    for (k, &gk) in g.iter().enumerate() {
        nodes[gk - 1] = t.nodes[k];
    }
    Filling {
        shape: t.shape.clone(),
        nodes,
    }
}

/// All standard `λ`-tableaux in lexicographic order of entry positions.
pub fn standard_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    fn rec(target: &Partition, cur: &Partition, nodes: &mut Vec<Node>, out: &mut Vec<StandardTableau>) {
        if nodes.len() == target.size() {
            out.push(StandardTableau {
                nodes: nodes.clone(),
                shape: target.clone(),
            });
            return;
        }
        for node in cur.all_addable() {
            if target.contains(node) {
                nodes.push(node);
                rec(target, &cur.add_node(node), nodes, out);
                nodes.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(shape, &Partition::empty(), &mut Vec::new(), &mut out);
    out
}

/// A residue sequence in `(Z/p)^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueSequence {
    p: u64,
    values: Vec<u8>,
}

impl ResidueSequence {
    pub fn new(p: u64, values: Vec<u64>) -> Result<Self> {
        check_prime(p)?;
        if p > u8::MAX as u64 {
            return Err(Error::InvalidPrime(p));
        }
        let values = values
            .into_iter()
            .map(|v| (v % p) as u8)
            .collect();
        Ok(ResidueSequence { p, values })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Coordinates `i - 1` and `i` exchanged.
    pub fn swapped(&self, i: usize) -> ResidueSequence {
        let mut values = self.values.clone();
        values.swap(i - 2, i - 1);
        ResidueSequence { p: self.p, values }
    }
}

impl Serialize for ResidueSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(serializer)
    }
}

/// All standard tableaux with residue sequence `seq`, built node by node
/// through addable nodes of the prescribed residues.
pub fn tableau_class(seq: &ResidueSequence) -> Result<Vec<StandardTableau>> {
    tableau_class_with_limit(seq, false)
}

pub fn tableau_class_with_limit(seq: &ResidueSequence, allow_large: bool) -> Result<Vec<StandardTableau>> {
    let n = seq.len();
    if n > CLASS_SIZE_LIMIT && !allow_large {
        return Err(Error::TooLarge {
            n,
            limit: CLASS_SIZE_LIMIT,
        });
    }
    let p = seq.p;
    // reachable[k]: shapes obtainable after placing 1..=k
    let mut reachable: Vec<HashSet<Partition>> = vec![HashSet::from([Partition::empty()])];
    for &r in &seq.values {
        let next: HashSet<Partition> = reachable
            .last()
            .unwrap()
            .iter()
            .flat_map(|nu| {
                nu.addable_nodes(r as u64, p)
                    .into_iter()
                    .map(move |g| nu.add_node(g))
            })
            .collect();
        reachable.push(next);
    }
    // prune shapes that cannot be completed
    let mut alive = reachable;
    for k in (0..n).rev() {
        let r = seq.values[k] as u64;
        let (head, tail) = alive.split_at_mut(k + 1);
        let later = &tail[0];
        head[k].retain(|nu| {
            nu.addable_nodes(r, p)
                .into_iter()
                .any(|g| later.contains(&nu.add_node(g)))
        });
    }

    fn rec(
        k: usize,
        cur: &Partition,
        seq: &ResidueSequence,
        alive: &[HashSet<Partition>],
        nodes: &mut Vec<Node>,
        out: &mut Vec<StandardTableau>,
    ) {
        if k == seq.len() {
            out.push(StandardTableau {
                nodes: nodes.clone(),
                shape: cur.clone(),
            });
            return;
        }
        for g in cur.addable_nodes(seq.values[k] as u64, seq.p) {
            let next = cur.add_node(g);
            if alive[k + 1].contains(&next) {
                nodes.push(g);
                rec(k + 1, &next, seq, alive, nodes, out);
                nodes.pop();
            }
        }
    }

    let mut out = Vec::new();
    if alive[0].contains(&Partition::empty()) {
        rec(0, &Partition::empty(), seq, &alive, &mut Vec::new(), &mut out);
    }
    out.sort();
    Ok(out)
}

/// `T_{μλ}`: tableaux of shape `λ` in the class of the ladder tableau of `μ`.
pub fn ladder_class_of_shape(mu: &Partition, lambda: &Partition, p: u64) -> Result<Vec<StandardTableau>> {
    if mu.size() != lambda.size() {
        return Err(Error::SizeMismatch(mu.size(), lambda.size()));
    }
    let data = mu.ladder_decomposition(p)?;
    Ok(tableau_class(&data.ladder_residue_sequence)?
        .into_iter()
        .filter(|t| t.shape() == lambda)
        .collect())
}

/// Distinct shapes occurring in a class, most dominant first.
pub fn class_shapes(class: &[StandardTableau]) -> Vec<Partition> {
    let set: BTreeSet<Partition> = class.iter().map(|t| t.shape().clone()).collect();
    let mut shapes: Vec<Partition> = set.into_iter().collect();
    shapes.sort_by(crate::partition::canonical_cmp);
    shapes
}

/// How a reduced word is extracted from a permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WordStrategy {
    /// Bubble sort swapping the leftmost descent first.
    #[default]
    LeftmostDescent,
    /// Bubble sort swapping the rightmost descent first.
    RightmostDescent,
}

/// A permutation of `{1, ..., n}` and a reduced word for it.
///
/// `word = [w_1, ..., w_k]` means `g = σ_{w_1} σ_{w_2} ... σ_{w_k}` with
/// `σ_i = (i - 1, i)`; acting on a vector, `σ_{w_k}` is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationWord {
    pub one_line: Vec<usize>,
    pub word: Vec<usize>,
}

impl PermutationWord {
    /// Sorts the one-line form of `g^{-1}` by adjacent swaps; the sequence of
    /// swaps is a reduced word for `g`.
    pub fn reduced(one_line: Vec<usize>, strategy: WordStrategy) -> Self {
        let mut inv = vec![0; one_line.len()];
        for (k, &v) in one_line.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        let mut word = Vec::new();
        loop {
            let descents = (0..inv.len().saturating_sub(1)).filter(|&j| inv[j] > inv[j + 1]);
            let next = match strategy {
                WordStrategy::LeftmostDescent => descents.min(),
                WordStrategy::RightmostDescent => descents.max(),
            };
            let Some(j) = next else { break };
            inv.swap(j, j + 1);
            // positions j, j + 1 (0-based) are σ_{j + 2}
            word.push(j + 2);
        }
        PermutationWord { one_line, word }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn inversions(&self) -> usize {
        let g = &self.one_line;
        (0..g.len())
            .map(|a| (a + 1..g.len()).filter(|&b| g[a] > g[b]).count())
            .sum()
    }

    /// The permutation obtained by composing the word, in one-line form.
    pub fn compose_word(n: usize, word: &[usize]) -> Vec<usize> {
        let mut g: Vec<usize> = (1..=n).collect();
        // g ← σ_{w_1} ∘ ... ∘ σ_{w_k}: apply right factors first
        for &i in word.iter().rev() {
            for v in g.iter_mut() {
                if *v == i - 1 {
                    *v = i;
                } else if *v == i {
                    *v = i - 1;
                }
            }
        }
        g
    }
}
