//! Constructions of cyclic and BCH codes whose minimum distance equals
//! their BCH bound, driven by divisors of x^n - 1.

use serde::{Deserialize, Serialize};

use crate::bounds::{code_apparent_distance, zero_runs};
use crate::codes::{bch_code, code_from_defining_set, BchSpec, CyclicCode};
use crate::error::{Error, Result};
use crate::galois::RootOfUnity;
use crate::modring::{gcd, solve_linear_congruence, DefiningSet};
use crate::polyring::{divisor_enumerate, factor_xn, Poly, QuotientPoly};
use crate::spectral::{idft, Spectrum};
use crate::wtdist::{min_distance, DistanceOptions, DistanceResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Divisor,
    Congruence,
    PrimitiveFamily,
    Extension,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Divisor => "divisor",
            Source::Congruence => "congruence",
            Source::PrimitiveFamily => "primitive-family",
            Source::Extension => "extension",
        }
    }
}

/// A code produced from a divisor g and shift k: the ideal generated by the
/// inverse transform of x^k g, whose defining set is Z_n minus supp(x^k g).
#[derive(Clone, Debug)]
pub struct ConstructionRecord {
    pub source: Source,
    pub divisor: Poly,
    /// d such that g has coefficients in GF(p^d).
    pub subfield_degree: usize,
    pub k: usize,
    /// The inverse transform of x^k g; it generates `code`.
    pub generator_word: QuotientPoly,
    pub code: CyclicCode,
    pub dimension: usize,
    /// Claimed Delta(C) = d(C) = n - deg(g).
    pub delta: usize,
    /// (designed distance, offset) for BCH records.
    pub bch: Option<(usize, usize)>,
    pub verified: Option<bool>,
}

fn smallest_subfield(root: &RootOfUnity, g: &Poly) -> Result<usize> {
    let field = root.field();
    let m = field.m();
    for d in (1..=m).filter(|d| m.is_multiple_of(*d)) {
        let mut inside = true;
        for &c in g.coeffs() {
            if !field.in_subfield(c, d)? {
                inside = false;
                break;
            }
        }
        if inside {
            return Ok(d);
        }
    }
    Ok(m)
}

fn check_divisor(root: &RootOfUnity, g: &Poly) -> Result<usize> {
    let field = root.field();
    let n = root.n();
    let degree = g.degree().ok_or(Error::ZeroPolynomial)?;
    if degree >= n || !g.divides(&Poly::xn_minus_one(n, field), field) {
        return Err(Error::InvalidInput(format!(
            "{g} is not a proper divisor of x^{n} - 1"
        )));
    }
    Ok(degree)
}

/// Builds the code generated by the inverse transform of x^k g.
pub fn construct_from_divisor(
    root: &RootOfUnity,
    g: &Poly,
    k: usize,
) -> Result<ConstructionRecord> {
    let n = root.n();
    let degree = check_divisor(root, g)?;
    let g = g.monic(root.field());
    let f = QuotientPoly::from_poly(n, &g, root.field()).cyclic_shift(k % n);
    let spectrum = Spectrum::from_values(root, f.coeffs().to_vec())?;
    if !spectrum.is_rational() {
        return Err(Error::NotRational { k });
    }
    let generator_word = idft(&spectrum);
    let defining_set = f.support().complement();
    let code = code_from_defining_set(root, &defining_set)?;
    Ok(ConstructionRecord {
        source: Source::Divisor,
        subfield_degree: smallest_subfield(root, &g)?,
        divisor: g,
        k: k % n,
        generator_word,
        dimension: code.dimension(),
        code,
        delta: n - degree,
        bch: None,
        verified: None,
    })
}

/// Smallest k with g(alpha^j) * alpha^{jk} in GF(p) for every j, which is
/// exactly when the inverse transform of x^k g has base-field coefficients.
/// Works by evaluation rather than by conjugacy of the coefficients.
pub fn find_shift(root: &RootOfUnity, g: &Poly) -> Option<usize> {
    let n = root.n();
    let field = root.field();
    let values: Vec<(usize, crate::galois::FieldElement)> = (0..n)
        .map(|j| (j, g.eval(root.pow(j as i64), field)))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    (0..n).find(|&k| {
        values
            .iter()
            .all(|&(j, v)| field.is_prime_subfield(field.mul(v, root.pow((j * k) as i64))))
    })
}

/// Every divisor of x^n - 1 over GF(p^d) that admits a rational shift
/// yields one code; returns them deduplicated by defining set, ordered by
/// dimension descending then Delta. At most `max_divisors` are examined.
pub fn divisor_family(
    root: &RootOfUnity,
    subfield_degree: usize,
    max_divisors: u64,
) -> Result<Vec<ConstructionRecord>> {
    let field = root.field();
    let n = root.n();
    let factors = factor_xn(root, subfield_degree)?;
    let mut seen = 0u64;
    let mut records: Vec<ConstructionRecord> = Vec::new();
    for degree in 0..n {
        for divisor in divisor_enumerate(&factors, field, degree) {
            seen += 1;
            if seen > max_divisors {
                return Err(Error::BudgetExceeded {
                    budget: max_divisors,
                });
            }
            if let Some(k) = find_shift(root, &divisor.poly) {
                let record = construct_from_divisor(root, &divisor.poly, k)?;
                if !records
                    .iter()
                    .any(|r| r.code.defining_set() == record.code.defining_set())
                {
                    records.push(record);
                }
            }
        }
    }
    records.sort_by(|a, b| {
        b.dimension
            .cmp(&a.dimension)
            .then(a.delta.cmp(&b.delta))
            .then(a.code.defining_set().cmp(b.code.defining_set()))
    });
    Ok(records)
}

/// For an irreducible factor h over GF(p^d) and g = (x^n - 1)/h, looks for
/// j in the zeros of h with g(alpha^j) = alpha^t and
/// gcd(j, n / gcd(q-1, n)) dividing t, then solves for the shift k.
pub fn congruence_construct(
    root: &RootOfUnity,
    h: &Poly,
    subfield_degree: usize,
) -> Result<Option<ConstructionRecord>> {
    let field = root.field();
    let n = root.n();
    let factors = factor_xn(root, subfield_degree)?;
    let index = factors.position(h, field).ok_or(Error::NotIrreducible)?;
    let h = &factors.factors[index];
    let g = Poly::xn_minus_one(n, field).divrem(&h.poly, field).0;
    let q = root.q();
    let g0 = gcd(q - 1, n as u64);
    let modulus = n as u64 / g0;
    let scale = ((q - 1) / g0) as i64;
    for &j in &h.exponents {
        let Some(t) = root.log(g.eval(root.pow(j as i64), field)) else {
            continue;
        };
        if !(t as u64).is_multiple_of(gcd(j as u64, modulus)) {
            continue;
        }
        let Some(k) = solve_linear_congruence(scale * j as i64, -scale * t as i64, modulus) else {
            continue;
        };
        let mut record = construct_from_divisor(root, &g, k as usize)?;
        record.source = Source::Congruence;
        return Ok(Some(record));
    }
    Ok(None)
}

/// n = 2^m - 1: one code per 2-cyclotomic coset of units, built by the
/// congruence construction from the complement of its minimal polynomial.
pub fn primitive_family(m: usize) -> Result<Vec<ConstructionRecord>> {
    if !(2..=16).contains(&m) {
        return Err(Error::InvalidInput(format!(
            "primitive family needs 2 <= m <= 16, got {m}"
        )));
    }
    let n = (1usize << m) - 1;
    let root = RootOfUnity::for_length(2, n, None)?;
    primitive_family_with_root(&root)
}

pub fn primitive_family_with_root(root: &RootOfUnity) -> Result<Vec<ConstructionRecord>> {
    let n = root.n();
    let factors = factor_xn(root, 1)?;
    let mut records = Vec::new();
    for factor in &factors.factors {
        let j = factor.exponents[0];
        if gcd(j as u64, n as u64) != 1 {
            continue;
        }
        let mut record = congruence_construct(root, &factor.poly, 1)?
            .ok_or_else(|| Error::InvalidInput(format!("no shift for the coset of {j}")))?;
        record.source = Source::PrimitiveFamily;
        records.push(record);
    }
    Ok(records)
}

/// BCH codes containing the code of (g, k): one per maximal zero run of
/// x^k g of length n - deg(g) - 1, with T the coset closure of the run.
/// Deduplicated by defining set, in order of the run start.
pub fn extend_to_bch(root: &RootOfUnity, g: &Poly, k: usize) -> Result<Vec<BchSpec>> {
    let n = root.n();
    let degree = check_divisor(root, g)?;
    let f = QuotientPoly::from_poly(n, g, root.field()).cyclic_shift(k % n);
    if !Spectrum::from_values(root, f.coeffs().to_vec())?.is_rational() {
        return Err(Error::NotRational { k });
    }
    let delta = n - degree;
    let mut out: Vec<BchSpec> = Vec::new();
    if delta < 2 {
        return Ok(out);
    }
    for run in zero_runs(&f.nonzero_flags()) {
        if run.len + 1 != delta {
            continue;
        }
        let spec = bch_code(root, delta, run.start)?;
        if !out
            .iter()
            .any(|s| s.code.defining_set() == spec.code.defining_set())
        {
            out.push(spec);
        }
    }
    Ok(out)
}

/// Wraps a BCH code from `extend_to_bch` as a record for reporting.
pub fn extension_record(
    root: &RootOfUnity,
    g: &Poly,
    k: usize,
    spec: BchSpec,
) -> ConstructionRecord {
    let n = root.n();
    let epsilon: Vec<_> = spec
        .code
        .defining_set()
        .flags()
        .into_iter()
        .map(|inside| {
            if inside {
                crate::galois::FieldElement::ZERO
            } else {
                crate::galois::FieldElement::ONE
            }
        })
        .collect();
    let generator_word = idft(&Spectrum::from_values(root, epsilon).expect("length n"));
    ConstructionRecord {
        source: Source::Extension,
        divisor: g.monic(root.field()),
        subfield_degree: smallest_subfield(root, g).unwrap_or(root.field().m()),
        k: k % n,
        generator_word,
        dimension: spec.code.dimension(),
        delta: spec.delta,
        bch: Some((spec.delta, spec.b)),
        code: spec.code,
        verified: None,
    }
}

/// Recomputes Delta and the exact minimum distance for a record.
pub struct RecordCheck {
    pub apparent_distance: usize,
    pub distance: DistanceResult,
}

impl ConstructionRecord {
    pub fn verify(&mut self, options: &DistanceOptions) -> RecordCheck {
        let apparent_distance = code_apparent_distance(&self.code).overall;
        let distance = min_distance(&self.code, options);
        let ok = apparent_distance == self.delta
            && distance.distance == self.delta
            && (distance.exhaustive || options.stop_at.is_some());
        self.verified = Some(ok);
        RecordCheck {
            apparent_distance,
            distance,
        }
    }

    /// Z_n minus D(C), the support of x^k g.
    pub fn support(&self) -> DefiningSet {
        self.code.complement()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::bose_distance;
    use crate::galois::GaloisField;
    use crate::modring::cyclotomic_cosets;
    use std::sync::Arc;

    fn root(exps: &[usize], n: usize) -> RootOfUnity {
        let f = Arc::new(GaloisField::binary(exps).unwrap());
        RootOfUnity::residue_of_x(&f, n).unwrap()
    }

    fn quotient_by(r: &RootOfUnity, h: &[usize]) -> Poly {
        Poly::xn_minus_one(r.n(), r.field())
            .divrem(&Poly::from_exponents(h), r.field())
            .0
    }

    fn cosets(n: usize, reps: &[usize]) -> DefiningSet {
        cyclotomic_cosets(n, 2)
            .unwrap()
            .closure(reps.iter().copied())
    }

    fn exhaustive() -> DistanceOptions {
        DistanceOptions::default()
    }

    #[test]
    fn length_15_divisors() {
        let r = root(&[4, 1, 0], 15);
        let g2 = quotient_by(&r, &[2, 1, 0]);
        let g3 = quotient_by(&r, &[4, 1, 0]);
        let g4 = quotient_by(&r, &[4, 3, 0]);
        let g5 = quotient_by(&r, &[4, 3, 2, 1, 0]);

        let mut rec = construct_from_divisor(&r, &g2, 1).unwrap();
        assert_eq!(rec.generator_word.to_poly(), Poly::from_exponents(&[10, 5]));
        assert_eq!((rec.dimension, rec.delta), (10, 2));
        assert!(rec.verify(&exhaustive()).distance.distance == 2);

        assert_eq!(find_shift(&r, &g3), Some(1));
        let mut rec = construct_from_divisor(&r, &g3, 1).unwrap();
        assert_eq!(
            rec.generator_word.to_poly(),
            Poly::from_exponents(&[14, 13, 11, 7])
        );
        assert_eq!((rec.dimension, rec.delta), (8, 4));
        rec.verify(&exhaustive());
        assert_eq!(rec.verified, Some(true));

        assert_eq!(find_shift(&r, &g4), Some(3));
        let rec = construct_from_divisor(&r, &g4, 3).unwrap();
        assert_eq!(
            rec.generator_word.to_poly(),
            Poly::from_exponents(&[8, 4, 2, 1])
        );

        assert_eq!(find_shift(&r, &g5), None);
        assert_eq!(
            construct_from_divisor(&r, &g3, 0).unwrap_err(),
            Error::NotRational { k: 0 }
        );
    }

    #[test]
    fn length_15_congruence() {
        let r = root(&[4, 1, 0], 15);
        let h5 = Poly::from_exponents(&[4, 3, 2, 1, 0]);
        let g5 = quotient_by(&r, &[4, 3, 2, 1, 0]);
        assert_eq!(r.log(g5.eval(r.pow(3), r.field())), Some(14));
        assert!(congruence_construct(&r, &h5, 1).unwrap().is_none());
        let h4 = Poly::from_exponents(&[4, 3, 0]);
        let rec = congruence_construct(&r, &h4, 1).unwrap().unwrap();
        assert_eq!(rec.k, 3);
        assert_eq!(
            congruence_construct(&r, &Poly::from_exponents(&[2, 0]), 1).unwrap_err(),
            Error::NotIrreducible
        );
    }

    #[test]
    fn length_21_rows() {
        let r = root(&[6, 5, 4, 2, 0], 21);
        let g5 = quotient_by(&r, &[6, 4, 2, 1, 0]);
        let mut rec = construct_from_divisor(&r, &g5, 1).unwrap();
        assert_eq!((rec.dimension, rec.delta), (8, 6));
        rec.verify(&exhaustive());
        assert_eq!(rec.verified, Some(true));
        let h3 = Poly::from_exponents(&[3, 1, 0]);
        let rec = congruence_construct(&r, &h3, 1).unwrap().unwrap();
        assert_eq!((rec.dimension, rec.delta, rec.k), (12, 3, 0));
    }

    #[test]
    fn length_45_chain() {
        let r = root(&[12, 3, 0], 45);
        let g = Poly::from_exponents(&[
            40, 39, 38, 36, 35, 32, 30, 25, 24, 23, 21, 20, 17, 15, 10, 9, 8, 6, 5, 2, 0,
        ]);
        assert_eq!(find_shift(&r, &g), Some(5));
        let rec = construct_from_divisor(&r, &g, 5).unwrap();
        assert_eq!(rec.code.defining_set(), &cosets(45, &[1, 3, 9, 21]));
        assert_eq!((rec.dimension, rec.delta), (21, 5));
        let ext = extend_to_bch(&r, &g, 5).unwrap();
        let found: Vec<(usize, usize, usize)> = ext
            .iter()
            .map(|s| (s.delta, s.b, s.code.dimension()))
            .collect();
        assert!(found.contains(&(5, 1, 29)));
        assert!(found.contains(&(5, 16, 29)));
        let b1 = ext.iter().find(|s| s.b == 1).unwrap();
        assert_eq!(b1.code.defining_set(), &cosets(45, &[1, 3]));
        let b16 = ext.iter().find(|s| s.b == 16).unwrap();
        assert_eq!(b16.code.defining_set(), &cosets(45, &[1, 9]));
        for s in &ext {
            assert!(s.code.defining_set().is_subset(rec.code.defining_set()));
            assert_eq!(code_apparent_distance(&s.code).overall, 5);
        }
    }

    #[test]
    fn length_33_extension() {
        let r = root(&[10, 7, 5, 3, 0], 33);
        let f = r.field().clone();
        let g = [1usize, 3, 5].iter().fold(Poly::one(), |acc, &s| {
            acc.mul(&crate::polyring::minimal_polynomial(&r, s).unwrap(), &f)
        });
        let rec = construct_from_divisor(&r, &g, 0).unwrap();
        assert_eq!(
            rec.generator_word.to_poly(),
            Poly::from_exponents(&[22, 11, 0])
        );
        let ext = extend_to_bch(&r, &g, 0).unwrap();
        // Runs {1, 2} and {31, 32} close to the same coset, so B(alpha, 3, 31)
        // appears under its first offset.
        let published = bch_code(&r, 3, 31).unwrap();
        let b31 = ext.iter().find(|s| s.code == published.code).unwrap();
        assert_eq!((b31.delta, b31.code.dimension()), (3, 23));
        assert_eq!(b31.code.defining_set(), &cosets(33, &[1]));
        let d = min_distance(&b31.code, &exhaustive());
        assert_eq!((d.distance, d.exhaustive), (3, true));
    }

    #[test]
    fn length_15_extensions() {
        let r = root(&[4, 1, 0], 15);
        let g3 = quotient_by(&r, &[4, 1, 0]);
        let ext = extend_to_bch(&r, &g3, 1).unwrap();
        let found: Vec<(usize, usize, usize)> = ext
            .iter()
            .map(|s| (s.delta, s.b, s.code.dimension()))
            .collect();
        assert_eq!(found, vec![(4, 13, 10)]);
        let g4 = quotient_by(&r, &[4, 3, 0]);
        let ext = extend_to_bch(&r, &g4, 3).unwrap();
        assert!(ext
            .iter()
            .any(|s| (s.delta, s.b, s.code.dimension()) == (4, 0, 10)));
        let g2 = quotient_by(&r, &[2, 1, 0]);
        let ext = extend_to_bch(&r, &g2, 1).unwrap();
        let dims: Vec<(usize, usize)> = ext.iter().map(|s| (s.b, s.code.dimension())).collect();
        assert!(dims.contains(&(0, 14)));
        assert!(dims.contains(&(3, 11)));
        // Offsets 6 and 9 describe the same code, so they were deduplicated.
        let b3 = ext.iter().find(|s| s.b == 3).unwrap();
        for t in 2..=3 {
            assert_eq!(bch_code(&r, 2, 3 * t).unwrap().code, b3.code);
        }
    }

    #[test]
    fn primitive_families() {
        for (m, count) in [(2usize, 1usize), (4, 2), (5, 6)] {
            let family = primitive_family(m).unwrap();
            assert_eq!(family.len(), count);
            for rec in &family {
                assert_eq!(rec.delta, m);
            }
            let mut sets: Vec<_> = family
                .iter()
                .map(|r| r.code.defining_set().clone())
                .collect();
            sets.sort();
            sets.dedup();
            assert_eq!(sets.len(), count);
        }
    }

    #[test]
    fn divisor_mode_length_15() {
        let r = root(&[4, 1, 0], 15);
        let records = divisor_family(&r, 1, 1 << 20).unwrap();
        let params: Vec<(usize, usize)> = records.iter().map(|r| (r.dimension, r.delta)).collect();
        for want in [(10, 2), (8, 4), (7, 5)] {
            assert!(params.contains(&want), "{want:?} missing from {params:?}");
        }
        assert_eq!(params.iter().filter(|p| **p == (8, 4)).count(), 2);
    }

    #[test]
    fn records_verify_and_extensions_are_bch() {
        let r = root(&[6, 5, 4, 2, 0], 21);
        for mut rec in divisor_family(&r, 1, 1 << 20).unwrap() {
            let check = rec.verify(&exhaustive());
            assert_eq!(check.apparent_distance, rec.delta);
            assert_eq!(rec.verified, Some(true), "D = {}", rec.code.defining_set());
            assert_eq!(rec.dimension, rec.support().len());
            for spec in extend_to_bch(&r, &rec.divisor, rec.k).unwrap() {
                assert!(spec.code.defining_set().is_subset(rec.code.defining_set()));
                let window: Vec<usize> = (0..spec.delta - 1).map(|j| (spec.b + j) % 21).collect();
                for rep in spec.code.coset_representatives() {
                    let coset = spec.code.partition().coset_of(rep);
                    assert!(coset.iter().any(|x| window.contains(x)));
                }
                assert!(bose_distance(&spec.code) >= crate::codes::BoseDistance::Bch(spec.delta));
                let d = min_distance(&spec.code, &exhaustive());
                assert_eq!(d.distance, spec.delta);
            }
        }
    }

    #[test]
    fn congruence_agrees_with_find_shift() {
        for (exps, n) in [(&[6usize, 5, 4, 2, 0][..], 21usize), (&[4, 1, 0], 15)] {
            let r = root(exps, n);
            let list = factor_xn(&r, 1).unwrap();
            for factor in &list.factors {
                if factor.degree() == n {
                    continue;
                }
                let g = Poly::xn_minus_one(n, r.field())
                    .divrem(&factor.poly, r.field())
                    .0;
                let via_congruence = congruence_construct(&r, &factor.poly, 1).unwrap();
                match (via_congruence, find_shift(&r, &g)) {
                    (Some(rec), Some(k)) => {
                        let other = construct_from_divisor(&r, &g, k).unwrap();
                        assert_eq!(rec.code.defining_set(), other.code.defining_set());
                    }
                    (None, None) => {}
                    (a, b) => panic!("n={n} disagreement: {:?} vs {b:?}", a.map(|r| r.k)),
                }
            }
        }
    }

    #[test]
    fn subfield_divisor_over_gf16() {
        let r = root(&[4, 1, 0], 15);
        let list = factor_xn(&r, 4).unwrap();
        // g = (x^15 - 1)/(x - alpha) has coefficients alpha^{14-i}; the shift
        // k = 1 makes them conjugacy closed, giving the full space with d = 1.
        let lin = &list.factors[1].poly;
        let g = Poly::xn_minus_one(15, r.field()).divrem(lin, r.field()).0;
        assert_eq!(find_shift(&r, &g), Some(1));
        let rec = construct_from_divisor(&r, &g, 1).unwrap();
        assert_eq!(rec.subfield_degree, 4);
        assert_eq!((rec.dimension, rec.delta), (15, 1));
    }
}
