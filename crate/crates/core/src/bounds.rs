//! Apparent distance, the BCH bound of a code maximized over its roots, and
//! certificates that a code's minimum distance equals that bound.

use serde::{Deserialize, Serialize};

use crate::codes::CyclicCode;
use crate::error::{Error, Result};
use crate::galois::FieldElement;
use crate::modring::{gcd, DefiningSet};
use crate::polyring::{divisor_enumerate, factor_xn, Poly, QuotientPoly};
use crate::spectral::{idft, Spectrum};

/// A maximal cyclic run of zero coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZeroRun {
    pub start: usize,
    pub len: usize,
}

impl ZeroRun {
    pub fn indices(&self, n: usize) -> impl Iterator<Item = usize> {
        let start = self.start;
        (0..self.len).map(move |j| (start + j) % n)
    }
}

/// Every maximal cyclic run of `false` entries, ordered by start. The all-zero
/// vector is one run of full length starting at 0.
pub fn zero_runs(nonzero: &[bool]) -> Vec<ZeroRun> {
    let n = nonzero.len();
    let Some(anchor) = nonzero.iter().position(|&b| b) else {
        return if n == 0 {
            Vec::new()
        } else {
            vec![ZeroRun { start: 0, len: n }]
        };
    };
    let mut runs = Vec::new();
    let mut current: Option<ZeroRun> = None;
    for step in 1..=n {
        let i = (anchor + step) % n;
        if nonzero[i] {
            if let Some(run) = current.take() {
                runs.push(run);
            }
        } else {
            match current.as_mut() {
                Some(run) => run.len += 1,
                None => current = Some(ZeroRun { start: i, len: 1 }),
            }
        }
    }
    runs.sort();
    runs
}

/// d*: longest cyclic zero run plus one, and 0 for the zero vector.
pub fn apparent_distance_flags(nonzero: &[bool]) -> usize {
    if !nonzero.iter().any(|&b| b) {
        return 0;
    }
    zero_runs(nonzero).iter().map(|r| r.len).max().unwrap_or(0) + 1
}

pub fn apparent_distance_vec(coeffs: &[FieldElement]) -> usize {
    let flags: Vec<bool> = coeffs.iter().map(|c| !c.is_zero()).collect();
    apparent_distance_flags(&flags)
}

/// Apparent distance of the indicator F_S: one plus the longest cyclic run
/// of consecutive members of S.
pub fn apparent_distance_of_set(set: &DefiningSet) -> usize {
    let nonzero: Vec<bool> = set.flags().into_iter().map(|inside| !inside).collect();
    apparent_distance_flags(&nonzero)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentativeDistance {
    pub a: usize,
    pub defining_set: DefiningSet,
    pub apparent_distance: usize,
    /// Maximal runs inside a*D of length apparent_distance - 1.
    pub runs: Vec<ZeroRun>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApparentDistanceReport {
    pub per_representative: Vec<RepresentativeDistance>,
    /// d*(C), which is also the BCH bound Delta(C).
    pub overall: usize,
    pub optimal_reps: Vec<usize>,
}

impl ApparentDistanceReport {
    pub fn representative(&self, a: usize) -> Option<&RepresentativeDistance> {
        self.per_representative.iter().find(|r| r.a == a)
    }
}

/// Evaluates d*(F_{aD}) for every a in A(n).
pub fn code_apparent_distance(code: &CyclicCode) -> ApparentDistanceReport {
    let reps = code.partition().representative_set().members;
    let per_representative: Vec<RepresentativeDistance> = reps
        .iter()
        .map(|&a| {
            let set = code.defining_set().scaled(a);
            let nonzero: Vec<bool> = set.flags().into_iter().map(|inside| !inside).collect();
            let apparent_distance = apparent_distance_flags(&nonzero);
            let runs = zero_runs(&nonzero)
                .into_iter()
                .filter(|r| r.len + 1 == apparent_distance)
                .collect();
            RepresentativeDistance {
                a,
                defining_set: set,
                apparent_distance,
                runs,
            }
        })
        .collect();
    let overall = per_representative
        .iter()
        .map(|r| r.apparent_distance)
        .max()
        .unwrap_or(0);
    let optimal_reps = per_representative
        .iter()
        .filter(|r| r.apparent_distance == overall)
        .map(|r| r.a)
        .collect();
    ApparentDistanceReport {
        per_representative,
        overall,
        optimal_reps,
    }
}

/// Witness that d(C) = Delta(C): a divisor g of x^n - 1 over GF(p^d), a
/// shift k and a representative a such that f = x^k g read as a spectrum
/// over beta (beta^a = alpha) is rational and vanishes on a*D. The inverse
/// transform of f is then a codeword of weight n - deg(g) = Delta(C).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub subfield_degree: usize,
    pub divisor: Poly,
    pub factor_indices: Vec<usize>,
    pub k: usize,
    pub a: usize,
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    /// Most (divisor, shift) candidates to test.
    pub budget: u64,
    /// After GF(q), also search divisors over the larger subfields of the
    /// splitting field, in increasing degree.
    pub subfields: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            budget: 1_000_000,
            subfields: false,
        }
    }
}

fn shifted_spectrum(code: &CyclicCode, g: &Poly, k: usize) -> Spectrum {
    let f = QuotientPoly::from_poly(code.n(), g, code.root().field()).cyclic_shift(k);
    Spectrum::from_values(code.root(), f.coeffs().to_vec()).expect("length n")
}

/// Searches divisors of degree n - Delta(C) and shifts for a certificate,
/// in the order (subfield degree, divisor, k, a). Returns `None` when the
/// search space is exhausted without success and `BudgetExceeded` when the
/// budget ran out first.
pub fn certify_equality(
    code: &CyclicCode,
    options: &CertifyOptions,
) -> Result<Option<Certificate>> {
    let report = code_apparent_distance(code);
    let n = code.n();
    let target = n - report.overall;
    let optimal: Vec<(usize, Vec<bool>)> = report
        .optimal_reps
        .iter()
        .map(|&a| (a, code.defining_set().scaled(a).flags()))
        .collect();
    let field = code.root().field();
    let m = field.m();
    let mut degrees = vec![1];
    if options.subfields {
        degrees.extend((2..=m).filter(|d| m.is_multiple_of(*d)));
    }
    let mut spent = 0u64;
    for d in degrees {
        let factors = factor_xn(code.root(), d)?;
        for divisor in divisor_enumerate(&factors, field, target) {
            let g = QuotientPoly::from_poly(n, &divisor.poly, field);
            for k in 0..n {
                if spent == options.budget {
                    return Err(Error::BudgetExceeded {
                        budget: options.budget,
                    });
                }
                spent += 1;
                let f = g.cyclic_shift(k);
                let support = f.nonzero_flags();
                let Some(&(a, _)) = optimal
                    .iter()
                    .find(|(_, zeros)| support.iter().zip(zeros).all(|(&s, &z)| !(s && z)))
                else {
                    continue;
                };
                let spectrum = Spectrum::from_values(code.root(), f.coeffs().to_vec())?;
                if spectrum.is_rational() {
                    return Ok(Some(Certificate {
                        subfield_degree: d,
                        divisor: divisor.poly,
                        factor_indices: divisor.factor_indices,
                        k,
                        a,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Rechecks a certificate from scratch and returns the codeword of weight
/// Delta(C) it exhibits, expressed relative to the code's own root.
pub fn validate_certificate(code: &CyclicCode, cert: &Certificate) -> Result<QuotientPoly> {
    let fail = |why: &str| Err(Error::InvalidInput(format!("certificate rejected: {why}")));
    let n = code.n();
    let root = code.root();
    let field = root.field();
    let report = code_apparent_distance(code);
    let Some(degree) = cert.divisor.degree() else {
        return fail("zero divisor");
    };
    if degree + report.overall != n {
        return fail("divisor degree is not n - Delta");
    }
    if !cert.divisor.divides(&Poly::xn_minus_one(n, field), field) {
        return fail("divisor does not divide x^n - 1");
    }
    for &c in cert.divisor.coeffs() {
        if !field.in_subfield(c, cert.subfield_degree)? {
            return fail("divisor has coefficients outside the stated subfield");
        }
    }
    if gcd(cert.a as u64, n as u64) != 1 || !report.optimal_reps.contains(&cert.a) {
        return fail("representative is not optimal");
    }
    let spectrum = shifted_spectrum(code, &cert.divisor, cert.k);
    let on_zeros = code.defining_set().scaled(cert.a);
    if spectrum
        .support()
        .members()
        .iter()
        .any(|&i| on_zeros.contains(i))
    {
        return fail("shifted divisor meets the defining set");
    }
    if !spectrum.is_rational() {
        return fail("shifted divisor is not rational");
    }
    let beta = root.conjugate_for_representative(cert.a)?;
    let over_beta = Spectrum::from_values(&beta, spectrum.values().to_vec())?;
    let codeword = idft(&over_beta);
    if !codeword
        .coeffs()
        .iter()
        .all(|&c| field.is_prime_subfield(c))
    {
        return fail("witness leaves the base field");
    }
    if !code.contains(&codeword) || codeword.weight() != report.overall {
        return fail("witness is not a codeword of weight Delta");
    }
    Ok(codeword)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::code_from_defining_set;
    use crate::galois::{GaloisField, RootOfUnity};
    use crate::modring::cyclotomic_cosets;
    use crate::spectral::{dft, indicator_spectrum};
    use crate::wtdist::{min_distance, DistanceOptions};
    use std::sync::Arc;

    fn root(exps: &[usize], n: usize) -> RootOfUnity {
        let f = Arc::new(GaloisField::binary(exps).unwrap());
        RootOfUnity::residue_of_x(&f, n).unwrap()
    }

    fn code(r: &RootOfUnity, reps: &[usize]) -> CyclicCode {
        let d = cyclotomic_cosets(r.n(), r.q())
            .unwrap()
            .closure(reps.iter().copied());
        code_from_defining_set(r, &d).unwrap()
    }

    fn flags(bits: &[u8]) -> Vec<bool> {
        bits.iter().map(|&b| b == 1).collect()
    }

    #[test]
    fn vector_examples() {
        assert_eq!(apparent_distance_flags(&flags(&[1, 1, 0, 0, 1])), 3);
        assert_eq!(apparent_distance_flags(&flags(&[0, 0, 0, 0])), 0);
        assert_eq!(apparent_distance_flags(&flags(&[1, 1, 1])), 1);
        let fd = flags(&[
            1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 1, 0, 1, 0, 1, 1, 1, 1,
        ]);
        assert_eq!(apparent_distance_flags(&fd), 5);
        // Runs wrap around the end of the vector.
        assert_eq!(
            zero_runs(&flags(&[0, 1, 1, 0, 0])),
            vec![ZeroRun { start: 3, len: 3 }]
        );
    }

    #[test]
    fn length_41() {
        let r = RootOfUnity::for_length(2, 41, None).unwrap();
        let report = code_apparent_distance(&code(&r, &[1]));
        assert_eq!(report.overall, 6);
        assert_eq!(report.optimal_reps, vec![3]);
        let rep = report.representative(3).unwrap();
        // -1 is a power of 2 modulo 41, so the mirror image of a run is a run.
        assert_eq!(
            rep.runs,
            vec![ZeroRun { start: 11, len: 5 }, ZeroRun { start: 26, len: 5 }]
        );
        assert_eq!(report.representative(1).unwrap().apparent_distance, 4);
    }

    #[test]
    fn length_17() {
        let r = root(&[8, 7, 6, 4, 2, 1, 0], 17);
        let report = code_apparent_distance(&code(&r, &[1]));
        assert_eq!(report.overall, 4);
        assert_eq!(report.optimal_reps, vec![3]);
    }

    #[test]
    fn length_21() {
        let r = root(&[6, 5, 4, 2, 0], 21);
        let c = code(&r, &[1, 3, 7]);
        let report = code_apparent_distance(&c);
        assert_eq!(report.overall, 5);
        assert_eq!(report.optimal_reps, vec![1, 5]);
        let spectrum =
            indicator_spectrum(&r, &report.representative(5).unwrap().defining_set).unwrap();
        let expected = flags(&[
            1, 1, 1, 1, 1, 0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0,
        ]);
        let got: Vec<bool> = spectrum.values().iter().map(|v| !v.is_zero()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn length_45_certificate() {
        let r = root(&[12, 3, 0], 45);
        let c = code(&r, &[1, 3, 9]);
        assert_eq!(c.dimension(), 25);
        let reference_g = Poly::from_exponents(&[
            40, 39, 38, 36, 35, 32, 30, 25, 24, 23, 21, 20, 17, 15, 10, 9, 8, 6, 5, 2, 0,
        ]);
        let cert = Certificate {
            subfield_degree: 1,
            divisor: reference_g.clone(),
            factor_indices: Vec::new(),
            k: 5,
            a: 1,
        };
        let witness = validate_certificate(&c, &cert).unwrap();
        assert_eq!(witness.weight(), 5);
        let found = certify_equality(&c, &CertifyOptions::default())
            .unwrap()
            .unwrap();
        validate_certificate(&c, &found).unwrap();
        assert_eq!(found.divisor.degree(), Some(40));
        let d = min_distance(&c, &DistanceOptions::default());
        assert_eq!(d.distance, 5);
    }

    #[test]
    fn length_15_three_factor_certificate() {
        let r = root(&[4, 1, 0], 15);
        let f = r.field().clone();
        let g = [&[2usize, 1, 0][..], &[4, 1, 0], &[4, 3, 2, 1, 0]]
            .iter()
            .fold(Poly::one(), |acc, e| acc.mul(&Poly::from_exponents(e), &f));
        let d = DefiningSet::new(15, g.support()).unwrap().complement();
        let c = code_from_defining_set(&r, &d).unwrap();
        assert_eq!(code_apparent_distance(&c).overall, 5);
        let cert = Certificate {
            subfield_degree: 1,
            divisor: g,
            factor_indices: Vec::new(),
            k: 0,
            a: 1,
        };
        validate_certificate(&c, &cert).unwrap();
        assert!(certify_equality(&c, &CertifyOptions::default())
            .unwrap()
            .is_some());
    }

    #[test]
    fn no_certificate_when_bound_is_loose() {
        // The [23, 12] Golay code has Delta = 5 but d = 7.
        let r = RootOfUnity::for_length(2, 23, None).unwrap();
        let c = code(&r, &[1]);
        assert_eq!(code_apparent_distance(&c).overall, 5);
        assert_eq!(min_distance(&c, &DistanceOptions::default()).distance, 7);
        assert_eq!(
            certify_equality(&c, &CertifyOptions::default()).unwrap(),
            None
        );
    }

    #[test]
    fn budget_is_reported() {
        // Delta = 3 < d = 4, with plenty of degree-12 divisors to try.
        let r = root(&[4, 1, 0], 15);
        let c = code(&r, &[3, 5]);
        assert_eq!(certify_equality(&c, &CertifyOptions::default()), Ok(None));
        let opts = CertifyOptions {
            budget: 1,
            subfields: false,
        };
        assert_eq!(
            certify_equality(&c, &opts),
            Err(Error::BudgetExceeded { budget: 1 })
        );
        // The [23, 12] code has no divisor of degree n - Delta at all, so
        // its search completes empty without spending anything.
        let r = RootOfUnity::for_length(2, 23, None).unwrap();
        let opts = CertifyOptions {
            budget: 0,
            subfields: false,
        };
        assert_eq!(certify_equality(&code(&r, &[1]), &opts), Ok(None));
    }

    #[test]
    fn subfield_search() {
        let r = root(&[4, 1, 0], 15);
        let c = code(&r, &[1, 3, 5]);
        let opts = CertifyOptions {
            subfields: true,
            ..Default::default()
        };
        if let Some(cert) = certify_equality(&c, &opts).unwrap() {
            validate_certificate(&c, &cert).unwrap();
        }
    }

    /// Direct scan: for every unit u (not only the coset representatives),
    /// the longest window of consecutive exponents inside u*D.
    fn consecutive_root_bound(c: &CyclicCode) -> usize {
        let n = c.n();
        (1..n)
            .filter(|&u| gcd(u as u64, n as u64) == 1)
            .map(|u| {
                let set = c.defining_set().scaled(u);
                (0..n)
                    .map(|b| (0..n).take_while(|j| set.contains((b + j) % n)).count() + 1)
                    .max()
                    .unwrap_or(1)
            })
            .max()
            .unwrap()
    }

    fn all_proper_codes(r: &RootOfUnity) -> Vec<CyclicCode> {
        let part = cyclotomic_cosets(r.n(), r.q()).unwrap();
        let reps = part.representatives();
        (0u32..1 << reps.len())
            .filter_map(|mask| {
                let d = part.closure(
                    reps.iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &x)| x),
                );
                code_from_defining_set(r, &d).ok()
            })
            .collect()
    }

    #[test]
    fn bound_matches_direct_scan_and_minimum_distance() {
        for n in [7usize, 9, 15, 17, 21] {
            let r = RootOfUnity::for_length(2, n, None).unwrap();
            for c in all_proper_codes(&r) {
                let delta = code_apparent_distance(&c).overall;
                assert_eq!(
                    delta,
                    consecutive_root_bound(&c),
                    "n={n} D={}",
                    c.defining_set()
                );
                let d = min_distance(&c, &DistanceOptions::default()).distance;
                assert!(delta <= d);
                let bose = crate::codes::bose_distance(&c);
                if let Some(b) = bose.value() {
                    assert!(b <= delta);
                }
            }
        }
    }

    #[test]
    fn divisors_have_full_apparent_distance() {
        for n in [3usize, 5, 7, 9, 11, 13, 15, 17, 19, 21] {
            let r = RootOfUnity::for_length(2, n, None).unwrap();
            let f = r.field().clone();
            let list = factor_xn(&r, 1).unwrap();
            for deg in 0..n {
                for d in divisor_enumerate(&list, &f, deg) {
                    assert_eq!(
                        apparent_distance_vec(QuotientPoly::from_poly(n, &d.poly, &f).coeffs()),
                        n - deg
                    );
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// max over h of n - deg(x^h f mod x^n - 1), straight from the definition.
        fn by_rotations(bits: &[bool]) -> usize {
            let n = bits.len();
            if !bits.iter().any(|&b| b) {
                return 0;
            }
            (0..n)
                .map(|h| {
                    let deg = (0..n).filter(|&i| bits[(i + n - h) % n]).max().unwrap();
                    n - deg
                })
                .max()
                .unwrap()
        }

        proptest! {
            #[test]
            fn matches_rotation_definition(bits in prop::collection::vec(any::<bool>(), 1..40)) {
                prop_assert_eq!(apparent_distance_flags(&bits), by_rotations(&bits));
            }

            #[test]
            fn runs_are_maximal(bits in prop::collection::vec(any::<bool>(), 1..40)) {
                prop_assume!(bits.iter().any(|&b| b));
                let n = bits.len();
                let runs = zero_runs(&bits);
                let covered: usize = runs.iter().map(|r| r.len).sum();
                prop_assert_eq!(covered, bits.iter().filter(|&&b| !b).count());
                for r in runs {
                    prop_assert!(bits[(r.start + n - 1) % n]);
                    prop_assert!(bits[(r.start + r.len) % n]);
                }
            }

            #[test]
            fn spectrum_bound_below_weight(bits in prop::collection::vec(any::<bool>(), 21)) {
                let r = root(&[6, 5, 4, 2, 0], 21);
                let exps: Vec<usize> = bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i).collect();
                let f = QuotientPoly::from_poly(21, &Poly::from_exponents(&exps), r.field());
                prop_assert!(apparent_distance_vec(dft(&f, &r).values()) <= f.weight());
            }
        }
    }
}
