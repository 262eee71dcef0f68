//! JSON documents printed by `--json`. Every type deserializes back to
//! itself, so output can be parsed and re-emitted byte for byte.

use serde::{Deserialize, Serialize};

use cycloforge::bounds::{ApparentDistanceReport, Certificate, ZeroRun};
use cycloforge::codes::{bose_distance, BoseDistance, CyclicCode};
use cycloforge::galois::{GaloisField, RootOrigin};
use cycloforge::polyring::{minimal_polynomial, Poly, QuotientPoly};
use cycloforge::RootOfUnity;

/// Polynomials are ascending exponent lists when every coefficient is 1,
/// otherwise ascending `[exponent, coefficient]` pairs with coefficients in
/// packed form (base-p digits of the polynomial-basis vector).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyJson {
    Exponents(Vec<usize>),
    Terms(Vec<(usize, u32)>),
}

impl PolyJson {
    pub fn from_terms(terms: Vec<(usize, u32)>) -> Self {
        if terms.iter().all(|&(_, c)| c == 1) {
            PolyJson::Exponents(terms.into_iter().map(|(e, _)| e).collect())
        } else {
            PolyJson::Terms(terms)
        }
    }

    pub fn from_poly(p: &Poly) -> Self {
        Self::from_terms(p.terms())
    }

    pub fn from_quotient(p: &QuotientPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e, c.packed()))
                .collect(),
        )
    }

    pub fn from_modulus(field: &GaloisField) -> Self {
        Self::from_terms(
            field
                .modulus()
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(e, &c)| (e, c))
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaJson {
    MinPoly(PolyJson),
    GeneratorExponent(u64),
}

impl AlphaJson {
    pub fn of(root: &RootOfUnity) -> Self {
        match root.origin() {
            RootOrigin::GeneratorPower { exponent } => AlphaJson::GeneratorExponent(exponent),
            RootOrigin::ResidueOfX { .. } => match minimal_polynomial(root, 1) {
                Ok(m) => AlphaJson::MinPoly(PolyJson::from_poly(&m)),
                Err(_) => AlphaJson::MinPoly(PolyJson::from_modulus(root.field())),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetsJson {
    pub n: usize,
    pub q: u64,
    pub cosets: Vec<Vec<usize>>,
    pub representatives: Vec<usize>,
    pub a_set: Vec<usize>,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub poly: PolyJson,
    pub degree: usize,
    /// j such that alpha^j is a root of this factor.
    pub exponents: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorsJson {
    pub n: usize,
    pub q: u64,
    pub field_poly: PolyJson,
    pub subfield_degree: usize,
    pub factors: Vec<FactorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub n: usize,
    pub q: u64,
    pub field_poly: PolyJson,
    pub alpha: AlphaJson,
    pub defining_set: Vec<usize>,
    pub dimension: usize,
    pub generator_poly: PolyJson,
    pub idempotent: PolyJson,
    pub bch_bound: usize,
    pub bose_distance: BoseDistance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_distance: Option<usize>,
    pub optimal_reps: Vec<usize>,
}

impl CodeJson {
    pub fn new(code: &CyclicCode, report: &ApparentDistanceReport) -> Self {
        let root = code.root();
        CodeJson {
            n: code.n(),
            q: code.q(),
            field_poly: PolyJson::from_modulus(root.field()),
            alpha: AlphaJson::of(root),
            defining_set: code.defining_set().members().to_vec(),
            dimension: code.dimension(),
            generator_poly: PolyJson::from_poly(code.generator()),
            idempotent: PolyJson::from_quotient(code.idempotent()),
            bch_bound: report.overall,
            bose_distance: bose_distance(code),
            min_distance: None,
            optimal_reps: report.optimal_reps.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentativeJson {
    pub a: usize,
    pub defining_set: Vec<usize>,
    pub apparent_distance: usize,
    pub runs: Vec<ZeroRun>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub subfield_degree: usize,
    pub divisor: PolyJson,
    pub k: usize,
    pub a: usize,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        CertificateJson {
            subfield_degree: c.subfield_degree,
            divisor: PolyJson::from_poly(&c.divisor),
            k: c.k,
            a: c.a,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeJson {
    pub code: CodeJson,
    pub representatives: Vec<RepresentativeJson>,
    /// Set when `--certify` ran.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MindistJson {
    pub n: usize,
    pub q: u64,
    pub defining_set: Vec<usize>,
    pub dimension: usize,
    pub bch_bound: usize,
    pub min_distance: usize,
    pub exhaustive: bool,
    pub enumerated: u64,
    pub witness: PolyJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BchJson {
    pub delta: usize,
    pub b: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordJson {
    pub source: String,
    pub divisor: PolyJson,
    pub subfield_degree: usize,
    pub k: usize,
    pub generator_word: PolyJson,
    pub defining_set: Vec<usize>,
    pub dimension: usize,
    pub delta: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bch: Option<BchJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_distance: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForgeJson {
    pub n: usize,
    pub q: u64,
    pub field_poly: PolyJson,
    pub mode: String,
    pub subfield_degree: usize,
    pub records: Vec<RecordJson>,
}
