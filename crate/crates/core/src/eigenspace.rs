//! Rank of the invariant form on a symmetrized ladder-class eigenspace of a
//! Specht module: φ-chain basis, ladder group symmetrization, Gram matrix and
//! its rank over `F_p`.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partition::{LadderData, Partition};
use crate::seminormal::{apply_phi_word, sigma_action, GammaCache, Rational, SeminormalVector};
use crate::tableau::{tableau_class_with_limit, StandardTableau, WordStrategy};

pub type RationalMatrix = Vec<Vec<Rational>>;

/// Ladder data of `μ`, rejecting ladders of length `≥ p`.
pub fn checked_ladders(mu: &Partition, p: u64) -> Result<LadderData> {
    let data = mu.ladder_decomposition(p)?;
    let length = data.max_ladder_len();
    if length >= p as usize {
        return Err(Error::LadderTooLong {
            partition: mu.clone(),
            length,
            p,
        });
    }
    Ok(data)
}

/// The ladder class of `μ` split by shape, computed once and reused for
/// every `τ`.
#[derive(Clone, Debug)]
pub struct LadderClass {
    pub data: LadderData,
    by_shape: BTreeMap<Partition, Vec<StandardTableau>>,
}

impl LadderClass {
    pub fn new(mu: &Partition, p: u64) -> Result<Self> {
        LadderClass::with_limit(mu, p, false)
    }

    /// As [`LadderClass::new`]; `allow_large` lifts the class size guard.
    pub fn with_limit(mu: &Partition, p: u64, allow_large: bool) -> Result<Self> {
        let data = checked_ladders(mu, p)?;
        let mut by_shape: BTreeMap<Partition, Vec<StandardTableau>> = BTreeMap::new();
        for t in tableau_class_with_limit(&data.ladder_residue_sequence, allow_large)? {
            by_shape.entry(t.shape().clone()).or_default().push(t);
        }
        Ok(LadderClass { data, by_shape })
    }

    pub fn mu(&self) -> &Partition {
        &self.data.partition
    }

    pub fn p(&self) -> u64 {
        self.data.p
    }

    /// `T_{μτ}` in tableau order.
    pub fn tableaux_of_shape(&self, tau: &Partition) -> &[StandardTableau] {
        self.by_shape.get(tau).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn shapes(&self) -> impl Iterator<Item = &Partition> {
        self.by_shape.keys()
    }

    pub fn phi_chain_basis(&self, tau: &Partition, strategy: WordStrategy) -> Vec<SeminormalVector> {
        let start = SeminormalVector::basis(&StandardTableau::row_reading(tau));
        self.tableaux_of_shape(tau)
            .iter()
            .map(|s| apply_phi_word(&s.d_reduced_word_with(strategy).word, &start, self.p()))
            .collect()
    }

    pub fn gram_report(&self, tau: &Partition, strategy: WordStrategy) -> Result<GramReport> {
        if tau.size() != self.mu().size() {
            return Err(Error::SizeMismatch(self.mu().size(), tau.size()));
        }
        let basis = self.phi_chain_basis(tau, strategy);
        let before = basis.len();
        let symmetrized = symmetrize_with(&self.data.intervals(), &basis);
        let selected = select_lattice_basis(&symmetrized, self.p());
        let gram = gram_matrix(&selected)?;
        let (gram_mod_p, rank) = modp_rank(&gram, self.p())?;
        Ok(GramReport {
            mu: self.mu().clone(),
            tau: tau.clone(),
            p: self.p(),
            basis_size_before_symmetrization: before,
            basis_size: selected.len(),
            gram,
            gram_mod_p,
            rank,
        })
    }
}

/// The φ-chain vectors `φ_{w_1} ⋯ φ_{w_k} ξ_{t^τ}`, one per `s ∈ T_{μτ}`,
/// where `w` is the reduced word of `d(s)`.
pub fn phi_chain_basis(mu: &Partition, tau: &Partition, p: u64) -> Result<Vec<SeminormalVector>> {
    phi_chain_basis_with(mu, tau, p, WordStrategy::default())
}

pub fn phi_chain_basis_with(
    mu: &Partition,
    tau: &Partition,
    p: u64,
    strategy: WordStrategy,
) -> Result<Vec<SeminormalVector>> {
    if mu.size() != tau.size() {
        return Err(Error::SizeMismatch(mu.size(), tau.size()));
    }
    Ok(LadderClass::new(mu, p)?.phi_chain_basis(tau, strategy))
}

/// Full group sum `Σ_{g ∈ S_I} g·v` over the permutations of the interval `I`,
/// generated by the simple transpositions inside it.
fn interval_group_sum(interval: &RangeInclusive<usize>, v: &SeminormalVector) -> SeminormalVector {
    let (lo, hi) = (*interval.start(), *interval.end());
    let m = hi + 1 - lo;
    let identity: Vec<usize> = (0..m).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([(identity, v.clone())]);
    let mut total = SeminormalVector::zero(v.shape());
    while let Some((g, w)) = queue.pop_front() {
        total.add_scaled(&Rational::one(), &w);
        for j in lo + 1..=hi {
            // left multiplication by (j-1, j) swaps those two values
            let (a, b) = (j - 1 - lo, j - lo);
            let h: Vec<usize> = g
                .iter()
                .map(|&x| if x == a { b } else if x == b { a } else { x })
                .collect();
            if seen.insert(h.clone()) {
                queue.push_back((h, sigma_action(j, &w)));
            }
        }
    }
    let order: u64 = (1..=m as u64).product();
    total.scale(&Rational::new(BigInt::one(), BigInt::from(order)))
}

fn symmetrize_with(intervals: &[RangeInclusive<usize>], basis: &[SeminormalVector]) -> Vec<SeminormalVector> {
    basis
        .iter()
        .map(|v| {
            intervals
                .iter()
                .filter(|i| i.end() > i.start())
                .fold(v.clone(), |acc, i| interval_group_sum(i, &acc))
        })
        .collect()
}

/// Applies the ladder group averaging operator of `μ` to every vector and
/// keeps a subset whose `Z_(p)`-span equals that of all images.
pub fn ladder_symmetrize(mu: &Partition, basis: &[SeminormalVector], p: u64) -> Result<Vec<SeminormalVector>> {
    let data = checked_ladders(mu, p)?;
    let symmetrized = symmetrize_with(&data.intervals(), basis);
    Ok(select_lattice_basis(&symmetrized, p))
}

/// `p`-adic valuation of a nonzero rational.
fn valuation(x: &Rational, p: u64) -> i64 {
    fn v(n: &BigInt, p: &BigInt) -> i64 {
        let mut n = n.abs();
        let mut k = 0;
        loop {
            let (q, r) = n.div_rem(p);
            if !r.is_zero() {
                return k;
            }
            n = q;
            k += 1;
        }
    }
    let p = BigInt::from(p);
    v(x.numer(), &p) - v(x.denom(), &p)
}

/// Echelon selection over the local ring `Z_(p)`: each column is cleared
/// using the remaining vector whose entry there has least `p`-adic
/// valuation, earlier input winning ties. All multipliers are then
/// `p`-integral, so the chosen original vectors span the same lattice as
/// the whole input. The result keeps input order.
pub fn select_lattice_basis(vectors: &[SeminormalVector], p: u64) -> Vec<SeminormalVector> {
    let columns: BTreeSet<StandardTableau> = vectors
        .iter()
        .flat_map(|v| v.terms().map(|(t, _)| t.clone()))
        .collect();
    let mut work: Vec<Option<SeminormalVector>> = vectors
        .iter()
        .map(|v| if v.is_zero() { None } else { Some(v.clone()) })
        .collect();
    let mut chosen = Vec::new();
    for col in &columns {
        let pivot = work
            .iter()
            .enumerate()
            .filter_map(|(k, v)| {
                let c = v.as_ref()?.coeff(col);
                (!c.is_zero()).then(|| (valuation(&c, p), k))
            })
            .min();
        let Some((_, k)) = pivot else { continue };
        let row = work[k].take().unwrap();
        let lead = row.coeff(col);
        for slot in work.iter_mut() {
            if let Some(v) = slot {
                let c = v.coeff(col);
                if !c.is_zero() {
                    v.add_scaled(&-(c / &lead), &row);
                    if v.is_zero() {
                        *slot = None;
                    }
                }
            }
        }
        chosen.push(k);
    }
    chosen.sort_unstable();
    chosen.into_iter().map(|k| vectors[k].clone()).collect()
}

/// `G[a][b] = ⟨basis[a], basis[b]⟩`.
pub fn gram_matrix(basis: &[SeminormalVector]) -> Result<RationalMatrix> {
    let mut cache = GammaCache::default();
    let n = basis.len();
    let mut g = vec![vec![Rational::zero(); n]; n];
    for a in 0..n {
        for b in a..n {
            let x = cache.inner_product(&basis[a], &basis[b])?;
            g[b][a] = x.clone();
            g[a][b] = x;
        }
    }
    Ok(g)
}

fn reduce_mod_p(x: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = x.denom().mod_floor(&pb).to_u64().unwrap();
    if den == 0 {
        return None;
    }
    let num = x.numer().mod_floor(&pb).to_u64().unwrap();
    Some(num * mod_inverse(den, p) % p)
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Rank over `F_p` of a matrix already reduced mod `p`.
pub fn rank_mod_p(m: &[Vec<u64>], p: u64) -> usize {
    let mut rows: Vec<Vec<u64>> = m.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, r);
        let inv = mod_inverse(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Entrywise reduction `a/b ↦ a·b⁻¹ mod p` followed by the rank over `F_p`.
pub fn modp_rank(g: &[Vec<Rational>], p: u64) -> Result<(Vec<Vec<u64>>, usize)> {
    let reduced = g
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| reduce_mod_p(x, p).ok_or_else(|| Error::NotPIntegral(format!("{x} at p = {p}"))))
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let rank = rank_mod_p(&reduced, p);
    Ok((reduced, rank))
}

/// `dim ẽ_μ D(τ)`.
pub fn dim_e_tilde_d(mu: &Partition, tau: &Partition, p: u64) -> Result<usize> {
    Ok(gram_report(mu, tau, p)?.rank)
}

pub fn gram_report(mu: &Partition, tau: &Partition, p: u64) -> Result<GramReport> {
    gram_report_with(mu, tau, p, WordStrategy::default())
}

pub fn gram_report_with(mu: &Partition, tau: &Partition, p: u64, strategy: WordStrategy) -> Result<GramReport> {
    if mu.size() != tau.size() {
        return Err(Error::SizeMismatch(mu.size(), tau.size()));
    }
    LadderClass::new(mu, p)?.gram_report(tau, strategy)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramReport {
    pub mu: Partition,
    pub tau: Partition,
    pub p: u64,
    pub basis_size_before_symmetrization: usize,
    pub basis_size: usize,
    pub gram: RationalMatrix,
    pub gram_mod_p: Vec<Vec<u64>>,
    pub rank: usize,
}

pub(crate) fn rational_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

impl GramReport {
    pub fn to_json(&self) -> Value {
        let gram: Vec<Vec<String>> = self
            .gram
            .iter()
            .map(|row| row.iter().map(rational_string).collect())
            .collect();
        json!({
            "mu": self.mu.to_string(),
            "tau": self.tau.to_string(),
            "p": self.p,
            "basis_size_before_symmetrization": self.basis_size_before_symmetrization,
            "basis_size": self.basis_size,
            "gram": gram,
            "gram_mod_p": self.gram_mod_p,
            "rank": self.rank,
        })
    }
}

impl Serialize for GramReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}
