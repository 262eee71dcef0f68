//! Fixed code instances shared by the benchmarks.

use cycloforge::codes::{code_from_defining_set, CyclicCode};
use cycloforge::galois::coeffs_from_exponents;
use cycloforge::modring::cyclotomic_cosets;
use cycloforge::RootOfUnity;

pub fn root(n: usize, field_poly: &[usize]) -> RootOfUnity {
    RootOfUnity::for_length(2, n, Some(&coeffs_from_exponents(field_poly))).expect("valid field")
}

/// Binary code of length n whose defining set is the union of the cosets of `reps`.
pub fn code(n: usize, field_poly: &[usize], reps: &[usize]) -> CyclicCode {
    let root = root(n, field_poly);
    let d = cyclotomic_cosets(n, 2)
        .expect("coprime")
        .closure(reps.iter().copied());
    code_from_defining_set(&root, &d).expect("proper code")
}
