//! Young's seminormal form over `Q`: the action of the simple transpositions,
//! the Jucys-Murphy elements and the intertwiners `φ_i` on the seminormal
//! basis `{ξ_t}` of a Specht module, and the invariant form, which is diagonal
//! on that basis with `⟨ξ_t, ξ_t⟩ = γ_t`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::laurent::bigint_to_json;
use crate::partition::Partition;
use crate::tableau::{ResidueSequence, StandardTableau};

pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Sparse rational combination of seminormal basis vectors of one shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeminormalVector {
    shape: Partition,
    coeffs: BTreeMap<StandardTableau, Rational>,
}

impl SeminormalVector {
    pub fn zero(shape: &Partition) -> Self {
        SeminormalVector {
            shape: shape.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis vector `ξ_t`.
    pub fn basis(t: &StandardTableau) -> Self {
        let mut v = SeminormalVector::zero(t.shape());
        v.coeffs.insert(t.clone(), Rational::one());
        v
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, t: &StandardTableau) -> Rational {
        self.coeffs.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&StandardTableau, &Rational)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, t: &StandardTableau, c: &Rational) {
        assert_eq!(t.shape(), &self.shape, "tableau {t} has the wrong shape");
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(t) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.coeffs.remove(t);
                }
            }
            None => {
                self.coeffs.insert(t.clone(), c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &SeminormalVector) {
        if c.is_zero() {
            return;
        }
        for (t, x) in &other.coeffs {
            self.add_term(t, &(c * x));
        }
    }

    pub fn scale(&self, c: &Rational) -> SeminormalVector {
        let mut out = SeminormalVector::zero(&self.shape);
        out.add_scaled(c, self);
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(t, c)| {
                json!({
                    "tableau": t.rows(),
                    "numerator": bigint_to_json(c.numer()),
                    "denominator": bigint_to_json(c.denom()),
                })
            })
            .collect();
        json!({ "shape": self.shape.to_string(), "terms": terms })
    }
}

impl Serialize for SeminormalVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// `c_s(i - 1) - c_s(i)`.
fn axial_distance(s: &StandardTableau, i: usize) -> i64 {
    s.content(i - 1) - s.content(i)
}

/// The hook quotient product `γ_t`.
pub fn gamma(t: &StandardTableau) -> Rational {
    let mut shape = Partition::empty();
    let mut out = Rational::one();
    for k in 1..=t.size() {
        let node = t.node(k);
        shape = shape.add_node(node);
        if k == 1 {
            continue;
        }
        for col in 1..=shape.part(node.row) {
            let h = shape.hook_length(crate::partition::Node::new(node.row, col)) as i64;
            if h > 1 {
                out *= rational(h, h - 1);
            }
        }
    }
    out
}

/// Action of `σ_i = (i - 1, i)` on a vector.
pub fn sigma_action(i: usize, v: &SeminormalVector) -> SeminormalVector {
    let mut out = SeminormalVector::zero(&v.shape);
    for (s, a) in &v.coeffs {
        let h = axial_distance(s, i);
        match h {
            -1 => out.add_term(s, a),
            1 => out.add_term(s, &-a),
            _ => {
                let t = s.swap(i).expect("|h| > 1 keeps the swap standard");
                out.add_term(s, &(a * rational(-1, h)));
                if h > 1 {
                    out.add_term(&t, a);
                } else {
                    out.add_term(&t, &(a * rational(h * h - 1, h * h)));
                }
            }
        }
    }
    out
}

/// Applies `σ_{w_1} ... σ_{w_k}` (so `σ_{w_k}` acts first).
pub fn apply_sigma_word(word: &[usize], v: &SeminormalVector) -> SeminormalVector {
    word.iter().rev().fold(v.clone(), |acc, &i| sigma_action(i, &acc))
}

/// Action of the Jucys-Murphy element `L_k`, diagonal with eigenvalue `c_t(k)`.
pub fn jm_action(k: usize, v: &SeminormalVector) -> SeminormalVector {
    let mut out = SeminormalVector::zero(&v.shape);
    if k == 1 {
        return out;
    }
    for (s, a) in &v.coeffs {
        out.add_term(s, &(a * int(s.content(k))));
    }
    out
}

/// Action of the intertwiner `φ_i = σ_i + 1/(L_{i-1} - L_i)`. A term is
/// singular when `p | h`, i.e. when `σ_i` preserves its residue sequence.
pub fn phi_action(i: usize, v: &SeminormalVector, p: u64) -> SeminormalVector {
    let mut out = SeminormalVector::zero(&v.shape);
    for (s, a) in &v.coeffs {
        let h = axial_distance(s, i);
        if h.abs() == 1 {
            continue;
        }
        let t = s.swap(i).expect("|h| > 1 keeps the swap standard");
        let t_coeff = if h > 1 {
            a.clone()
        } else {
            a * rational(h * h - 1, h * h)
        };
        if h.rem_euclid(p as i64) == 0 {
            out.add_term(s, &(a * rational(h - 1, h)));
        }
        out.add_term(&t, &t_coeff);
    }
    out
}

/// Applies `φ_{w_1} ... φ_{w_k}` (so `φ_{w_k}` acts first).
pub fn apply_phi_word(word: &[usize], v: &SeminormalVector, p: u64) -> SeminormalVector {
    word.iter().rev().fold(v.clone(), |acc, &i| phi_action(i, &acc, p))
}

/// `⟨u, v⟩ = Σ_t u_t v_t γ_t`.
pub fn inner_product(u: &SeminormalVector, v: &SeminormalVector) -> Result<Rational> {
    let mut cache = GammaCache::default();
    cache.inner_product(u, v)
}

/// Memoized `γ_t` for repeated inner products.
#[derive(Default)]
pub struct GammaCache {
    values: HashMap<StandardTableau, Rational>,
}

impl GammaCache {
    pub fn gamma(&mut self, t: &StandardTableau) -> Rational {
        if let Some(g) = self.values.get(t) {
            return g.clone();
        }
        let g = gamma(t);
        self.values.insert(t.clone(), g.clone());
        g
    }

    pub fn inner_product(&mut self, u: &SeminormalVector, v: &SeminormalVector) -> Result<Rational> {
        if u.shape != v.shape {
            return Err(Error::ShapeMismatch(u.shape.clone(), v.shape.clone()));
        }
        let (small, large) = if u.len() <= v.len() { (u, v) } else { (v, u) };
        let mut out = Rational::zero();
        for (t, a) in &small.coeffs {
            if let Some(b) = large.coeffs.get(t) {
                out += a * b * self.gamma(t);
            }
        }
        Ok(out)
    }
}

/// Keeps the terms whose residue sequence is `seq`.
pub fn class_project(seq: &ResidueSequence, v: &SeminormalVector) -> SeminormalVector {
    SeminormalVector {
        shape: v.shape.clone(),
        coeffs: v
            .coeffs
            .iter()
            .filter(|(t, _)| t.residue_sequence(seq.p()) == *seq)
            .map(|(t, c)| (t.clone(), c.clone()))
            .collect(),
    }
}
