//! The level-one Fock space: `f_i`/`e_i` actions, divided powers, ladder first
//! approximations `A(μ)` and the triangular recursion for the canonical basis
//! `G(μ)` and the transition coefficients `n_{λμ}(q)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::laurent::{bigint_to_json, gaussian_factorial, LaurentPoly};
use crate::par;
use crate::partition::{canonical_cmp, check_prime, restricted_partitions, Node, Partition};

/// Integral combination `Σ c_λ(q) λ` of partitions of a fixed size.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FockVector {
    n: usize,
    terms: BTreeMap<Partition, LaurentPoly>,
}

impl FockVector {
    pub fn zero(n: usize) -> Self {
        FockVector {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The basis vector `λ`.
    pub fn basis(lambda: &Partition) -> Self {
        let mut v = FockVector::zero(lambda.size());
        v.terms.insert(lambda.clone(), LaurentPoly::one());
        v
    }

    pub fn empty_partition() -> Self {
        FockVector::basis(&Partition::empty())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, lambda: &Partition) -> LaurentPoly {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    /// Terms in the canonical order, most dominant first.
    pub fn terms(&self) -> Vec<(&Partition, &LaurentPoly)> {
        let mut out: Vec<_> = self.terms.iter().collect();
        out.sort_by(|a, b| canonical_cmp(a.0, b.0));
        out
    }

    pub fn support(&self) -> impl Iterator<Item = &Partition> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, lambda: &Partition, c: &LaurentPoly) {
        assert_eq!(lambda.size(), self.n, "term {lambda} has the wrong size");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(lambda.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(lambda);
        }
    }

    /// `self - c · other`.
    pub fn sub_scaled(&mut self, c: &LaurentPoly, other: &FockVector) {
        for (lambda, x) in &other.terms {
            self.add_term(lambda, &-&(c * x));
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> Option<LaurentPoly>) -> Option<FockVector> {
        let mut out = FockVector::zero(self.n);
        for (lambda, c) in &self.terms {
            out.add_term(lambda, &f(c)?);
        }
        Some(out)
    }

    /// Coefficientwise bar involution.
    pub fn bar_coefficients(&self) -> FockVector {
        self.map_coeffs(|c| Some(c.bar())).unwrap()
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (lambda, c) in self.terms() {
            map.insert(lambda.to_string(), serde_json::to_value(c).unwrap());
        }
        Value::Object(map)
    }
}

impl Serialize for FockVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(l, c)| {
                if *c == LaurentPoly::one() {
                    format!("[{l}]")
                } else {
                    format!("({c})[{l}]")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `#addable i-nodes - #removable i-nodes` strictly left (`Ordering::Less`)
/// or strictly right (`Ordering::Greater`) of `gamma`.
fn node_balance(lambda: &Partition, gamma: Node, i: u64, p: u64, side: Ordering) -> i64 {
    let on_side = |n: &Node| n.col.cmp(&gamma.col) == side;
    let add = lambda.addable_nodes(i, p).iter().filter(|n| on_side(n)).count();
    let rem = lambda.removable_nodes(i, p).iter().filter(|n| on_side(n)).count();
    add as i64 - rem as i64
}

/// `f_i v`: adds an `i`-node with weight `q^{N_i^l}`.
pub fn f_action(i: u64, v: &FockVector, p: u64) -> FockVector {
    let mut out = FockVector::zero(v.n + 1);
    for (lambda, c) in &v.terms {
        for gamma in lambda.addable_nodes(i, p) {
            let k = node_balance(lambda, gamma, i, p, Ordering::Less);
            out.add_term(&lambda.add_node(gamma), &c.shift(k));
        }
    }
    out
}

/// `e_i v`: removes an `i`-node with weight `q^{-N_i^r}`.
pub fn e_action(i: u64, v: &FockVector, p: u64) -> FockVector {
    let mut out = FockVector::zero(v.n.saturating_sub(1));
    for (mu, c) in &v.terms {
        for gamma in mu.removable_nodes(i, p) {
            let k = node_balance(mu, gamma, i, p, Ordering::Greater);
            out.add_term(&mu.remove_node(gamma), &c.shift(-k));
        }
    }
    out
}

/// The divided power `f_i^{(k)} = f_i^k / [k]_q!`.
///
/// Panics if the division is not exact, which cannot happen for vectors with
/// integral coefficients.
pub fn divided_f(i: u64, k: u32, v: &FockVector, p: u64) -> FockVector {
    let mut w = v.clone();
    for _ in 0..k {
        w = f_action(i, &w, p);
    }
    let d = gaussian_factorial(k);
    w.map_coeffs(|c| c.div_exact(&d))
        .unwrap_or_else(|| panic!("f_{i}^{k} result is not divisible by [{k}]!"))
}

/// `A(μ) = f_{ι_m}^{(|L_m|)} ... f_{ι_1}^{(|L_1|)} ∅`.
pub fn first_approximation(mu: &Partition, p: u64) -> Result<FockVector> {
    let data = mu.ladder_decomposition(p)?;
    let mut v = FockVector::empty_partition();
    for (ladder, &res) in data.ladders.iter().zip(&data.residues) {
        v = divided_f(res, ladder.len() as u32, &v, p);
    }
    Ok(v)
}

/// How incomparable partitions are ordered when refining dominance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// Lexicographically larger first.
    #[default]
    LexDescending,
    /// Lexicographically smaller conjugate first; a different linear extension
    /// of dominance used to check that results do not depend on the tiebreak.
    ConjugateLexAscending,
}

impl TieBreak {
    pub fn compare(self, a: &Partition, b: &Partition) -> Ordering {
        match self {
            TieBreak::LexDescending => canonical_cmp(a, b),
            TieBreak::ConjugateLexAscending => a.conjugate().parts().cmp(b.conjugate().parts()),
        }
    }
}

/// Square integer matrix indexed by positions in an ordering of partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        IntMatrix {
            rows: (0..n)
                .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.dim();
        IntMatrix {
            rows: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).map(|k| &self.rows[i][k] * &other.rows[k][j]).sum())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, x)| match i.cmp(&j) {
                Ordering::Equal => x.is_one(),
                Ordering::Greater => x.is_zero(),
                Ordering::Less => true,
            })
        })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| Value::Array(r.iter().map(bigint_to_json).collect()))
                .collect(),
        )
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// Exact inverse of an upper unitriangular integer matrix.
pub fn invert_unitriangular(m: &IntMatrix) -> Result<IntMatrix> {
    if !m.is_upper_unitriangular() {
        return Err(Error::NotUnitriangular(format!("{:?}", m.rows)));
    }
    let n = m.dim();
    let mut inv = IntMatrix::identity(n);
    // column by column back substitution: inv[i][j] = -Σ_{i<k<=j} m[i][k] inv[k][j]
    for j in 0..n {
        for i in (0..j).rev() {
            let s: BigInt = (i + 1..=j).map(|k| &m.rows[i][k] * &inv.rows[k][j]).sum();
            inv.rows[i][j] = -s;
        }
    }
    Ok(inv)
}

/// `A(μ)`, `G(μ)` and `n_{λμ}(q)` for all `p`-restricted partitions of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalBasisTable {
    pub p: u64,
    pub n: usize,
    /// Restricted partitions, most dominant first.
    pub order: Vec<Partition>,
    pub a: BTreeMap<Partition, FockVector>,
    pub g: BTreeMap<Partition, FockVector>,
    /// `(λ, μ) ↦ n_{λμ}(q)`; absent entries are zero.
    pub nmat: BTreeMap<(Partition, Partition), LaurentPoly>,
}

impl CanonicalBasisTable {
    pub fn nmat_entry(&self, lambda: &Partition, mu: &Partition) -> LaurentPoly {
        self.nmat
            .get(&(lambda.clone(), mu.clone()))
            .cloned()
            .unwrap_or_default()
    }

    /// Re-checks every structural invariant of the table.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Inconsistent(msg));
        for mu in &self.order {
            let g = &self.g[mu];
            if g.coeff(mu) != LaurentPoly::one() {
                return fail(format!("G({mu}) has coefficient {} at {mu}", g.coeff(mu)));
            }
            for (lambda, c) in g.terms() {
                if lambda != mu && !c.in_q_z_q() {
                    return fail(format!("G({mu}) has coefficient {c} at {lambda}"));
                }
                if !lambda.dominates(mu) {
                    return fail(format!("G({mu}) has a term at {lambda} not dominating {mu}"));
                }
            }
            let mut rebuilt = FockVector::zero(self.n);
            for lambda in &self.order {
                let c = self.nmat_entry(lambda, mu);
                if c.is_zero() {
                    continue;
                }
                if !c.is_bar_invariant() {
                    return fail(format!("n({lambda},{mu}) = {c} is not bar-invariant"));
                }
                if !lambda.dominates(mu) {
                    return fail(format!("n({lambda},{mu}) = {c} breaks triangularity"));
                }
                rebuilt.sub_scaled(&-&c, &self.g[lambda]);
            }
            if rebuilt != self.a[mu] {
                return fail(format!("A({mu}) is not Σ n(λ,{mu}) G(λ)"));
            }
        }
        Ok(())
    }

    /// The matrix `n_{λμ}(1)` in the stored order (rows λ, columns μ).
    pub fn nmat_at_one(&self) -> IntMatrix {
        IntMatrix {
            rows: self
                .order
                .iter()
                .map(|lambda| {
                    self.order
                        .iter()
                        .map(|mu| self.nmat_entry(lambda, mu).evaluate_at_one())
                        .collect()
                })
                .collect(),
        }
    }

    /// Whether every `n_{λμ}(q)` is a constant polynomial.
    pub fn all_constant(&self) -> bool {
        self.nmat.values().all(LaurentPoly::is_constant)
    }

    pub fn to_json(&self) -> Value {
        let section = |m: &BTreeMap<Partition, FockVector>| {
            let mut out = Map::new();
            for mu in &self.order {
                out.insert(mu.to_string(), m[mu].to_json());
            }
            Value::Object(out)
        };
        let mut nmat = Map::new();
        for mu in &self.order {
            let mut col = Map::new();
            for lambda in &self.order {
                let c = self.nmat_entry(lambda, mu);
                if !c.is_zero() {
                    col.insert(lambda.to_string(), serde_json::to_value(&c).unwrap());
                }
            }
            nmat.insert(mu.to_string(), Value::Object(col));
        }
        let mut out = Map::new();
        out.insert("p".into(), self.p.into());
        out.insert("n".into(), self.n.into());
        out.insert(
            "order".into(),
            Value::Array(self.order.iter().map(|l| Value::String(l.to_string())).collect()),
        );
        out.insert("A".into(), section(&self.a));
        out.insert("G".into(), section(&self.g));
        out.insert("nmat".into(), Value::Object(nmat));
        Value::Object(out)
    }
}

impl Serialize for CanonicalBasisTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// Runs the canonical-basis recursion for all restricted partitions of `n`.
pub fn llt_canonical(n: usize, p: u64) -> Result<CanonicalBasisTable> {
    llt_canonical_with(n, p, TieBreak::default())
}

pub fn llt_canonical_with(n: usize, p: u64, tiebreak: TieBreak) -> Result<CanonicalBasisTable> {
    check_prime(p)?;
    let mut order = restricted_partitions(n, p);
    order.sort_by(|a, b| tiebreak.compare(a, b));
    let position: BTreeMap<Partition, usize> =
        order.iter().enumerate().map(|(k, l)| (l.clone(), k)).collect();

    let approximations = par::try_map(&order, |mu| first_approximation(mu, p))?;
    let a: BTreeMap<Partition, FockVector> = order.iter().cloned().zip(approximations).collect();

    let mut g: BTreeMap<Partition, FockVector> = BTreeMap::new();
    let mut nmat = BTreeMap::new();
    for mu in &order {
        let approx = &a[mu];
        if approx.coeff(mu) != LaurentPoly::one() {
            return Err(Error::Inconsistent(format!(
                "A({mu}) has coefficient {} at {mu}",
                approx.coeff(mu)
            )));
        }
        if let Some(bad) = approx.support().find(|l| !l.dominates(mu)) {
            return Err(Error::Inconsistent(format!("A({mu}) has a term at {bad} not dominating {mu}")));
        }
        nmat.insert((mu.clone(), mu.clone()), LaurentPoly::one());
        let mut cur = approx.clone();
        loop {
            // corrections at ν only disturb partitions dominating ν, so the
            // least dominant offending term is fixed first
            let offending = cur
                .terms
                .iter()
                .filter(|(l, c)| *l != mu && !c.in_q_z_q())
                .max_by(|x, y| tiebreak.compare(x.0, y.0));
            let Some((nu, correction)) = offending.map(|(l, c)| (l.clone(), c.bar_symmetric_lower_part()))
            else {
                break;
            };
            let Some(g_nu) = g.get(&nu) else {
                return Err(Error::Inconsistent(format!(
                    "A({mu}) needs a correction at {nu}, which has no canonical basis vector"
                )));
            };
            if position[&nu] >= position[mu] {
                return Err(Error::Inconsistent(format!("correction at {nu} for {mu} out of order")));
            }
            cur.sub_scaled(&correction, g_nu);
            if !cur.coeff(&nu).in_q_z_q() {
                return Err(Error::Inconsistent(format!("correction at {nu} for {mu} did not clear")));
            }
            let entry: &mut LaurentPoly = nmat.entry((nu, mu.clone())).or_default();
            *entry += &correction;
        }
        g.insert(mu.clone(), cur);
    }
    nmat.retain(|_, c| !c.is_zero());
    let table = CanonicalBasisTable {
        p,
        n,
        order,
        a,
        g,
        nmat,
    };
    table.check_invariants()?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::gaussian;
    use crate::partition::partitions;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn q(k: i64) -> LaurentPoly {
        LaurentPoly::monomial(1, k)
    }

    fn vec_of(terms: &[(&str, LaurentPoly)]) -> FockVector {
        let n = part(terms[0].0).size();
        let mut v = FockVector::zero(n);
        for (l, c) in terms {
            v.add_term(&part(l), c);
        }
        v
    }

    #[test]
    fn f_and_e_examples() {
        let v = f_action(0, &FockVector::empty_partition(), 3);
        assert_eq!(v, FockVector::basis(&part("1")));
        let two = FockVector::basis(&part("2"));
        let ff = f_action(2, &f_action(2, &two, 3), 3);
        assert_eq!(ff, vec_of(&[("3,1", gaussian(2))]));
        assert!(e_action(2, &FockVector::basis(&part("1")), 3).is_zero());
        assert_eq!(
            e_action(0, &FockVector::basis(&part("1")), 3),
            FockVector::empty_partition()
        );
    }

    #[test]
    fn divided_power_examples() {
        let two = FockVector::basis(&part("2"));
        assert_eq!(divided_f(2, 2, &two, 3), FockVector::basis(&part("3,1")));
        assert_eq!(
            divided_f(0, 1, &FockVector::empty_partition(), 3),
            FockVector::basis(&part("1"))
        );
        assert!(divided_f(2, 2, &FockVector::basis(&part("1")), 3).is_zero());
    }

    #[test]
    fn golden_first_approximations() {
        let p = 3;
        assert_eq!(
            first_approximation(&part("3,2"), p).unwrap(),
            vec_of(&[("3,2", q(0)), ("4,1", q(1))])
        );
        assert_eq!(
            first_approximation(&part("3,1,1"), p).unwrap(),
            vec_of(&[("3,1,1", q(0))])
        );
        assert_eq!(
            first_approximation(&part("2,2,1"), p).unwrap(),
            vec_of(&[("2,2,1", q(0)), ("5", q(1))])
        );
        assert_eq!(
            first_approximation(&part("2,1,1,1"), p).unwrap(),
            vec_of(&[("2,1,1,1", q(0)), ("2,2,1", q(1))])
        );
        assert_eq!(
            first_approximation(&part("1,1,1,1,1"), p).unwrap(),
            vec_of(&[("1,1,1,1,1", q(0)), ("3,2", q(1))])
        );
        assert!(first_approximation(&part("4,1"), p).is_err());
    }

    #[test]
    fn llt_small_cases() {
        let t = llt_canonical(5, 3).unwrap();
        for mu in &t.order {
            assert_eq!(t.g[mu], t.a[mu]);
        }
        assert_eq!(t.nmat_at_one(), IntMatrix::identity(5));
        let t = llt_canonical(1, 7).unwrap();
        assert_eq!(t.g[&part("1")], FockVector::basis(&part("1")));
        let t = llt_canonical(0, 3).unwrap();
        assert_eq!(t.order, vec![Partition::empty()]);
        assert!(llt_canonical(3, 4).is_err());
    }

    #[test]
    fn llt_independent_of_tiebreak() {
        for p in [3, 5] {
            for n in 0..=8 {
                let a = llt_canonical_with(n, p, TieBreak::LexDescending).unwrap();
                let b = llt_canonical_with(n, p, TieBreak::ConjugateLexAscending).unwrap();
                assert_eq!(a.g, b.g, "n={n} p={p}");
                assert_eq!(a.nmat, b.nmat, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn approximations_are_triangular_with_unit_diagonal() {
        let p = 3;
        for n in 0..=9 {
            for mu in restricted_partitions(n, p) {
                let a = first_approximation(&mu, p).unwrap();
                assert_eq!(a.coeff(&mu), LaurentPoly::one());
                assert!(a.support().all(|l| l.dominates(&mu)));
            }
        }
    }

    #[test]
    fn e_f_support_symmetry() {
        for p in [3u64, 5] {
            for n in 0..=6 {
                for lambda in partitions(n) {
                    for i in 0..p {
                        let up = f_action(i, &FockVector::basis(&lambda), p);
                        for mu in partitions(n + 1) {
                            let down = e_action(i, &FockVector::basis(&mu), p);
                            assert_eq!(up.coeff(&mu).is_zero(), down.coeff(&lambda).is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unitriangular_inverse() {
        let id = IntMatrix::identity(4);
        assert_eq!(invert_unitriangular(&id).unwrap(), id);
        let m = IntMatrix {
            rows: vec![
                vec![1.into(), 2.into(), 3.into()],
                vec![0.into(), 1.into(), 4.into()],
                vec![0.into(), 0.into(), 1.into()],
            ],
        };
        let inv = invert_unitriangular(&m).unwrap();
        assert_eq!(m.mul(&inv), IntMatrix::identity(3));
        let bad = IntMatrix {
            rows: vec![vec![1.into(), 0.into()], vec![1.into(), 1.into()]],
        };
        assert!(invert_unitriangular(&bad).is_err());
    }

    #[test]
    fn json_shapes() {
        let t = llt_canonical(5, 3).unwrap();
        let json = t.to_json();
        assert_eq!(json["order"][0], "3,2");
        assert_eq!(json["A"]["3,2"]["4,1"]["1"], 1);
        assert_eq!(json["A"]["3,2"]["3,2"]["0"], 1);
        assert_eq!(json["nmat"]["3,2"]["3,2"]["0"], 1);
        let keys: Vec<&String> = json["A"]["3,2"].as_object().unwrap().keys().collect();
        assert_eq!(keys, ["4,1", "3,2"]);
    }
}
