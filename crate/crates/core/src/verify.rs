//! Verification of `dim ẽ_μ D(τ) + Σ_{λ ⊳ μ} a_{λμ} dim ẽ_λ D(τ) = δ_{μτ}`,
//! decomposition matrices read off the canonical basis at `q = 1`, and an
//! independent full-Gram oracle for `dim D(τ)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::eigenspace::{modp_rank, LadderClass};
use crate::error::{Error, Result};
use crate::fock::{invert_unitriangular, llt_canonical, CanonicalBasisTable, IntMatrix};
use crate::laurent::bigint_to_json;
use crate::par;
use crate::partition::{partitions, Partition};
use crate::seminormal::{apply_sigma_word, GammaCache, Rational, SeminormalVector};
use crate::tableau::{standard_tableaux, StandardTableau, WordStrategy};

/// Default refusal threshold for the full-Gram oracle.
pub const ORACLE_LIMIT: usize = 20_000;

/// Column `μ` of the multiplicity matrix: `dim ẽ_μ D(λ)` for every `λ` of
/// `order`, or the reason it cannot be computed.
fn m_column(mu: &Partition, order: &[Partition], p: u64) -> Result<Vec<usize>> {
    let class = LadderClass::new(mu, p)?;
    order
        .iter()
        .map(|lambda| Ok(class.gram_report(lambda, WordStrategy::default())?.rank))
        .collect()
}

fn m_columns(order: &[Partition], p: u64) -> Vec<Result<Vec<usize>>> {
    par::map(order, |mu| m_column(mu, order, p))
}

/// `m[λ][μ] = dim ẽ_μ D(λ)` over the restricted partitions of `n`, most
/// dominant first.
pub fn m_matrix(n: usize, p: u64) -> Result<(Vec<Partition>, IntMatrix)> {
    let order = llt_order(n, p)?;
    let columns = m_columns(&order, p)
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok((order, transpose_columns(&columns)))
}

fn llt_order(n: usize, p: u64) -> Result<Vec<Partition>> {
    crate::partition::check_prime(p)?;
    let mut order = crate::partition::restricted_partitions(n, p);
    order.sort_by(crate::partition::canonical_cmp);
    Ok(order)
}

fn transpose_columns(columns: &[Vec<usize>]) -> IntMatrix {
    let k = columns.len();
    IntMatrix {
        rows: (0..k)
            .map(|i| (0..k).map(|j| BigInt::from(columns[j][i])).collect())
            .collect(),
    }
}

/// One `(μ, τ)` identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub mu: Partition,
    pub tau: Partition,
    /// `None` when some needed multiplicity could not be computed.
    pub lhs: Option<BigInt>,
    pub expected: u8,
    pub pass: bool,
}

/// Decomposition numbers `d_{τμ}`, rows over all partitions of `n` and
/// columns over the restricted ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionMatrix {
    pub rows: Vec<Partition>,
    pub columns: Vec<Partition>,
    pub entries: Vec<Vec<BigInt>>,
}

impl DecompositionMatrix {
    pub fn from_table(table: &CanonicalBasisTable) -> Self {
        let mut rows = partitions(table.n);
        rows.sort_by(crate::partition::canonical_cmp);
        let columns = table.order.clone();
        let entries = rows
            .iter()
            .map(|tau| {
                columns
                    .iter()
                    .map(|mu| table.g[mu].coeff(tau).evaluate_at_one())
                    .collect()
            })
            .collect();
        DecompositionMatrix { rows, columns, entries }
    }

    pub fn get(&self, tau: &Partition, mu: &Partition) -> BigInt {
        let i = self.rows.iter().position(|x| x == tau);
        let j = self.columns.iter().position(|x| x == mu);
        match (i, j) {
            (Some(i), Some(j)) => self.entries[i][j].clone(),
            _ => BigInt::zero(),
        }
    }

    /// CSV with a header row of column partitions and one row per `τ`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["tau".to_string()];
        header.extend(self.columns.iter().map(Partition::to_string));
        w.write_record(&header).expect("in-memory write");
        for (tau, row) in self.rows.iter().zip(&self.entries) {
            let mut record = vec![tau.to_string()];
            record.extend(row.iter().map(BigInt::to_string));
            w.write_record(&record).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows.iter().map(Partition::to_string).collect::<Vec<_>>(),
            "columns": self.columns.iter().map(Partition::to_string).collect::<Vec<_>>(),
            "entries": self.entries.iter()
                .map(|r| r.iter().map(bigint_to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub p: u64,
    pub n: usize,
    pub outside_region: bool,
    pub order: Vec<Partition>,
    pub nmat1: IntMatrix,
    pub amat: IntMatrix,
    /// `m[λ][μ] = dim ẽ_μ D(λ)`; `None` in columns whose ladder class is
    /// not available.
    pub mmat: Vec<Vec<Option<usize>>>,
    pub checks: Vec<PairCheck>,
    pub overall: bool,
    /// Whether every `n_{λμ}(q)` is constant.
    pub nmat_constant: bool,
    /// Negative entries of `n_{λμ}(1)` as `(λ, μ, value)`.
    pub negative_entries: Vec<(Partition, Partition, BigInt)>,
    /// Columns `μ` whose multiplicities could not be computed, with the reason.
    pub unavailable: Vec<(Partition, String)>,
    /// Present only when every check passes.
    pub decomposition: Option<DecompositionMatrix>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &PairCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn nonnegative(&self) -> bool {
        self.negative_entries.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let names = |v: &[Partition]| v.iter().map(Partition::to_string).collect::<Vec<_>>();
        let check_json = |c: &PairCheck| {
            json!({
                "mu": c.mu.to_string(),
                "tau": c.tau.to_string(),
                "lhs": c.lhs.as_ref().map(bigint_to_json),
                "expected": c.expected,
                "pass": c.pass,
            })
        };
        json!({
            "p": self.p,
            "n": self.n,
            "outside_region": self.outside_region,
            "order": names(&self.order),
            "nmat1": self.nmat1.to_json(),
            "amat": self.amat.to_json(),
            "mmat": self.mmat,
            "checks": self.checks.iter().map(check_json).collect::<Vec<_>>(),
            "overall": self.overall,
            "nmat_constant": self.nmat_constant,
            "nonnegative": self.nonnegative(),
            "negative_entries": self.negative_entries.iter()
                .map(|(l, m, v)| json!({"lambda": l.to_string(), "mu": m.to_string(), "value": bigint_to_json(v)}))
                .collect::<Vec<_>>(),
            "unavailable": self.unavailable.iter()
                .map(|(m, why)| json!({"mu": m.to_string(), "reason": why}))
                .collect::<Vec<_>>(),
            "failures": self.failures().map(check_json).collect::<Vec<_>>(),
            "decomposition": self.decomposition.as_ref().map(DecompositionMatrix::to_json),
        })
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// Runs the full verification for `(n, p)`. Reports for `n ≥ p²` are marked
/// as outside the conjectured region but are computed all the same.
pub fn conjecture_check(n: usize, p: u64) -> Result<VerificationReport> {
    let table = llt_canonical(n, p)?;
    conjecture_check_with_table(&table)
}

pub fn conjecture_check_with_table(table: &CanonicalBasisTable) -> Result<VerificationReport> {
    let (n, p) = (table.n, table.p);
    let order = table.order.clone();
    let nmat1 = table.nmat_at_one();
    let amat = invert_unitriangular(&nmat1)?;

    let columns = m_columns(&order, p);
    let mut unavailable = Vec::new();
    for (mu, col) in order.iter().zip(&columns) {
        if let Err(e) = col {
            unavailable.push((mu.clone(), e.to_string()));
        }
    }
    let k = order.len();
    let mmat: Vec<Vec<Option<usize>>> = (0..k)
        .map(|i| (0..k).map(|j| columns[j].as_ref().ok().map(|c| c[i])).collect())
        .collect();

    let mut checks = Vec::with_capacity(k * k);
    for (j, mu) in order.iter().enumerate() {
        for (t, tau) in order.iter().enumerate() {
            // Σ_λ a_{λμ} m[τ][λ]
            let mut lhs = Some(BigInt::zero());
            for (l, &m_tl) in mmat[t].iter().enumerate() {
                let a = amat.get(l, j);
                if a.is_zero() {
                    continue;
                }
                lhs = match (lhs, m_tl) {
                    (Some(acc), Some(m)) => Some(acc + a * BigInt::from(m)),
                    _ => None,
                };
            }
            let expected = u8::from(t == j);
            let pass = lhs.as_ref() == Some(&BigInt::from(expected));
            checks.push(PairCheck {
                mu: mu.clone(),
                tau: tau.clone(),
                lhs,
                expected,
                pass,
            });
        }
    }
    let overall = checks.iter().all(|c| c.pass);

    let mut negative_entries = Vec::new();
    for (i, lambda) in order.iter().enumerate() {
        for (j, mu) in order.iter().enumerate() {
            let v = nmat1.get(i, j);
            if v < &BigInt::zero() {
                negative_entries.push((lambda.clone(), mu.clone(), v.clone()));
            }
        }
    }

    Ok(VerificationReport {
        p,
        n,
        outside_region: (n as u64) >= p * p,
        order,
        nmat1,
        amat,
        mmat,
        checks,
        overall,
        nmat_constant: table.all_constant(),
        negative_entries,
        unavailable,
        decomposition: overall.then(|| DecompositionMatrix::from_table(table)),
    })
}

/// The vectors `d(s)·ξ_{t^τ}` for `s ∈ Std(τ)`, which form a `Z`-basis of
/// the Specht lattice inside the seminormal representation.
pub fn integral_basis(tau: &Partition) -> Vec<SeminormalVector> {
    let start = SeminormalVector::basis(&StandardTableau::row_reading(tau));
    standard_tableaux(tau)
        .iter()
        .map(|s| apply_sigma_word(&s.d_reduced_word().word, &start))
        .collect()
}

/// Integer Gram matrix of [`integral_basis`].
pub fn integral_gram(tau: &Partition, allow_large: bool) -> Result<Vec<Vec<BigInt>>> {
    let count = tau.count_standard_tableaux().to_usize().unwrap_or(usize::MAX);
    if count > ORACLE_LIMIT && !allow_large {
        return Err(Error::TooLarge {
            n: count,
            limit: ORACLE_LIMIT,
        });
    }
    let basis = integral_basis(tau);
    let mut cache = GammaCache::default();
    let mut g = vec![vec![BigInt::zero(); basis.len()]; basis.len()];
    for a in 0..basis.len() {
        for b in a..basis.len() {
            let x: Rational = cache.inner_product(&basis[a], &basis[b])?;
            if !x.is_integer() {
                return Err(Error::NotIntegral(format!("Gram entry {x} for {tau}")));
            }
            g[a][b] = x.to_integer();
            g[b][a] = g[a][b].clone();
        }
    }
    Ok(g)
}

/// `dim D(τ)` as the `p`-rank of the full Gram matrix of `S(τ)`.
pub fn gram_oracle_dim_d(tau: &Partition, p: u64) -> Result<usize> {
    gram_oracle_dim_d_with(tau, p, false)
}

pub fn gram_oracle_dim_d_with(tau: &Partition, p: u64, allow_large: bool) -> Result<usize> {
    crate::partition::check_prime(p)?;
    let g: Vec<Vec<Rational>> = integral_gram(tau, allow_large)?
        .into_iter()
        .map(|row| row.into_iter().map(Rational::from_integer).collect())
        .collect();
    Ok(modp_rank(&g, p)?.1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub ok: bool,
    /// `dim D(μ)` from the oracle, per restricted `μ`.
    pub dim_d: BTreeMap<Partition, usize>,
    pub diffs: Vec<String>,
}

impl ConsistencyReport {
    pub fn to_json(&self) -> Value {
        let mut dims = serde_json::Map::new();
        for (mu, d) in &self.dim_d {
            dims.insert(mu.to_string(), (*d).into());
        }
        json!({ "ok": self.ok, "dim_d": dims, "diffs": self.diffs })
    }
}

/// Checks `|Std(τ)| = Σ_μ d_{τμ} dim D(μ)` for every `τ ⊢ n`, with `dim D`
/// from [`gram_oracle_dim_d`], together with `d_{μμ} = 1` and `d_{τμ} = 0`
/// unless `τ ⊵ μ`.
pub fn consistency_check(report: &VerificationReport) -> Result<ConsistencyReport> {
    let Some(d) = &report.decomposition else {
        return Ok(ConsistencyReport {
            ok: false,
            dim_d: BTreeMap::new(),
            diffs: vec!["verification did not pass; no decomposition matrix".into()],
        });
    };
    let p = report.p;
    let dims = par::try_map(&d.columns, |mu| gram_oracle_dim_d(mu, p))?;
    let dim_d: BTreeMap<Partition, usize> = d.columns.iter().cloned().zip(dims).collect();
    let mut diffs = Vec::new();
    for (i, tau) in d.rows.iter().enumerate() {
        let lhs = tau.count_standard_tableaux();
        let rhs: BigInt = d
            .columns
            .iter()
            .enumerate()
            .map(|(j, mu)| &d.entries[i][j] * BigInt::from(dim_d[mu]))
            .sum();
        if BigInt::from(lhs.clone()) != rhs {
            diffs.push(format!("dim S({tau}) = {lhs} but Σ d·dim D = {rhs}"));
        }
        for (j, mu) in d.columns.iter().enumerate() {
            let x = &d.entries[i][j];
            if tau == mu && x != &BigInt::from(1) {
                diffs.push(format!("d({tau},{mu}) = {x}, expected 1"));
            }
            if !x.is_zero() && !tau.dominates(mu) {
                diffs.push(format!("d({tau},{mu}) = {x} although {tau} does not dominate {mu}"));
            }
        }
    }
    Ok(ConsistencyReport {
        ok: diffs.is_empty(),
        dim_d,
        diffs,
    })
}
