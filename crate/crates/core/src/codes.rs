//! Cyclic codes over GF(p) described by their defining sets, BCH codes and
//! the Bose distance.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::RootOfUnity;
use crate::modring::{cyclotomic_cosets, CosetPartition, DefiningSet};
use crate::polyring::{product_of_linear_factors, Poly, QuotientPoly};
use crate::spectral::{dft, idft, indicator_spectrum};

/// A cyclic code C in F_q[x]/(x^n - 1), q prime, given by D_alpha(C).
#[derive(Clone, Debug)]
pub struct CyclicCode {
    root: RootOfUnity,
    partition: Arc<CosetPartition>,
    defining_set: DefiningSet,
    generator: Poly,
    idempotent: QuotientPoly,
}

impl PartialEq for CyclicCode {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root && self.defining_set == other.defining_set
    }
}

impl Eq for CyclicCode {}

/// Builds the code with the given defining set relative to `root`.
pub fn code_from_defining_set(
    root: &RootOfUnity,
    defining_set: &DefiningSet,
) -> Result<CyclicCode> {
    let partition = Arc::new(cyclotomic_cosets(root.n(), root.q())?);
    CyclicCode::build(root, partition, defining_set)
}

/// The code generated by f, whose defining set is the zero set of f's
/// spectrum. f must have base-field coefficients.
pub fn code_generated_by(root: &RootOfUnity, f: &QuotientPoly) -> Result<CyclicCode> {
    let field = root.field();
    if f.n() != root.n() {
        return Err(Error::InvalidInput(format!(
            "polynomial lives modulo x^{} - 1, root has order {}",
            f.n(),
            root.n()
        )));
    }
    if !f.coeffs().iter().all(|&c| field.is_prime_subfield(c)) {
        return Err(Error::CoefficientLeak);
    }
    code_from_defining_set(root, &dft(f, root).zero_set())
}

impl CyclicCode {
    fn build(
        root: &RootOfUnity,
        partition: Arc<CosetPartition>,
        defining_set: &DefiningSet,
    ) -> Result<Self> {
        if defining_set.n() != root.n() || !partition.is_closed(defining_set) {
            return Err(Error::NotCosetClosed);
        }
        if defining_set.len() == root.n() {
            return Err(Error::ImproperCode);
        }
        let generator = product_of_linear_factors(root, defining_set.members());
        if !generator.has_base_coefficients(root.field()) {
            return Err(Error::CoefficientLeak);
        }
        let idempotent = idft(&indicator_spectrum(root, defining_set)?);
        Ok(Self {
            root: root.clone(),
            partition,
            defining_set: defining_set.clone(),
            generator,
            idempotent,
        })
    }

    pub fn root(&self) -> &RootOfUnity {
        &self.root
    }

    pub fn n(&self) -> usize {
        self.root.n()
    }

    pub fn q(&self) -> u64 {
        self.root.q()
    }

    pub fn partition(&self) -> &CosetPartition {
        &self.partition
    }

    pub fn defining_set(&self) -> &DefiningSet {
        &self.defining_set
    }

    /// Z_n minus D, the convention used by code tables.
    pub fn complement(&self) -> DefiningSet {
        self.defining_set.complement()
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    pub fn idempotent(&self) -> &QuotientPoly {
        &self.idempotent
    }

    pub fn dimension(&self) -> usize {
        self.n() - self.defining_set.len()
    }

    /// Membership: c vanishes at alpha^i for every i in D.
    pub fn contains(&self, c: &QuotientPoly) -> bool {
        let field = self.root.field();
        self.defining_set.members().iter().all(|&i| {
            let x = self.root.pow(i as i64);
            c.coeffs()
                .iter()
                .rev()
                .fold(crate::galois::FieldElement::ZERO, |acc, &v| {
                    field.add(field.mul(acc, x), v)
                })
                .is_zero()
        })
    }

    /// The code with defining set a*D relative to the same root. It is the
    /// image of this code under the coordinate permutation i -> a^{-1} i.
    pub fn reanchored(&self, a: usize) -> Result<CyclicCode> {
        if crate::modring::gcd(a as u64, self.n() as u64) != 1 {
            return Err(Error::NotCoprime {
                n: self.n(),
                q: a as u64,
            });
        }
        Self::build(
            &self.root,
            self.partition.clone(),
            &self.defining_set.scaled(a),
        )
    }

    /// Coset representatives making up D.
    pub fn coset_representatives(&self) -> Vec<usize> {
        self.partition.decompose(&self.defining_set)
    }
}

/// B_q(alpha, delta, b): the largest cyclic code with alpha^b, ...,
/// alpha^{b+delta-2} among its zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BchSpec {
    pub delta: usize,
    pub b: usize,
    pub code: CyclicCode,
}

pub fn bch_code(root: &RootOfUnity, delta: usize, b: usize) -> Result<BchSpec> {
    let n = root.n();
    if delta < 2 || delta > n || b >= n {
        return Err(Error::InvalidInput(format!(
            "BCH parameters need 2 <= delta <= {n} and 0 <= b < {n}"
        )));
    }
    let partition = Arc::new(cyclotomic_cosets(n, root.q())?);
    let window = (0..delta - 1).map(|j| (b + j) % n);
    let d = partition.closure(window);
    let code = CyclicCode::build(root, partition, &d)?;
    Ok(BchSpec { delta, b, code })
}

/// Largest designed distance with which a code is a BCH code.
/// Serialized as the integer, or the string `not-bch`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BoseDistance {
    Bch(usize),
    NotBch,
}

impl Serialize for BoseDistance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BoseDistance::Bch(d) => s.serialize_u64(*d as u64),
            BoseDistance::NotBch => s.serialize_str("not-bch"),
        }
    }
}

impl<'de> Deserialize<'de> for BoseDistance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(usize),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(v) => Ok(BoseDistance::Bch(v)),
            Raw::Text(t) if t == "not-bch" => Ok(BoseDistance::NotBch),
            Raw::Text(t) => Err(serde::de::Error::custom(format!(
                "expected a number or `not-bch`, got `{t}`"
            ))),
        }
    }
}

impl BoseDistance {
    pub fn value(self) -> Option<usize> {
        match self {
            BoseDistance::Bch(d) => Some(d),
            BoseDistance::NotBch => None,
        }
    }
}

impl std::fmt::Display for BoseDistance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoseDistance::Bch(d) => write!(f, "{d}"),
            BoseDistance::NotBch => write!(f, "not-bch"),
        }
    }
}

/// One window realizing the Bose distance: under the root beta with
/// beta^a = alpha, D_beta = a*D is the closure of {b, ..., b+delta-2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoseWindow {
    pub a: usize,
    pub b: usize,
    pub delta: usize,
}

/// Scans every representative a in A(n) and every offset b for the longest
/// window inside a*D whose coset closure is exactly a*D.
pub fn bose_distance(code: &CyclicCode) -> BoseDistance {
    bose_windows(code)
        .first()
        .map_or(BoseDistance::NotBch, |w| BoseDistance::Bch(w.delta))
}

/// All windows achieving the Bose distance, ordered by (a, b).
pub fn bose_windows(code: &CyclicCode) -> Vec<BoseWindow> {
    let n = code.n();
    let partition = code.partition();
    if code.defining_set().is_empty() {
        // Only the empty window describes the full space.
        return vec![BoseWindow {
            a: 1,
            b: 0,
            delta: 1,
        }];
    }
    let reps = partition.representative_set().members;
    let mut best: Vec<BoseWindow> = Vec::new();
    let mut best_delta = 0;
    let cosets = partition.cosets().len();
    for &a in &reps {
        let target = code.defining_set().scaled(a);
        let flags = target.flags();
        let target_cosets = partition.decompose(&target).len();
        for b in 0..n {
            let mut seen = vec![false; cosets];
            let mut covered = 0;
            let mut len = 0;
            while len < n && flags[(b + len) % n] {
                let idx = partition.coset_index((b + len) % n);
                if !seen[idx] {
                    seen[idx] = true;
                    covered += 1;
                }
                len += 1;
                if covered == target_cosets && len + 1 >= best_delta {
                    if len + 1 > best_delta {
                        best_delta = len + 1;
                        best.clear();
                    }
                    best.push(BoseWindow {
                        a,
                        b,
                        delta: len + 1,
                    });
                }
            }
        }
    }
    best.dedup();
    best
}

/// The idempotent generator e, computed as the inverse transform of F_D.
pub fn idempotent_generator(code: &CyclicCode) -> &QuotientPoly {
    code.idempotent()
}
