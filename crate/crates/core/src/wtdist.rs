//! Exact minimum distance by exhaustive enumeration of codewords.
//!
//! Binary codes walk the information words in Gray-code order, so every step
//! XORs one packed generator row into the running codeword. The word space is
//! split across workers by fixing the top information bits.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::codes::CyclicCode;
use crate::galois::FieldElement;
use crate::polyring::QuotientPoly;

/// Environment variable read when no explicit worker count is given.
pub const THREADS_ENV: &str = "CYCLOFORGE_THREADS";

pub const DEFAULT_CAP: u64 = 1 << 30;

#[derive(Clone, Debug)]
pub struct DistanceOptions {
    /// Most nonzero codewords to visit before giving up on exhaustiveness.
    pub cap: u64,
    /// Worker count; 0 reads the environment, then the machine's parallelism.
    pub threads: usize,
    /// Stop as soon as a codeword of this weight or lower turns up.
    pub stop_at: Option<usize>,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            threads: 0,
            stop_at: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    pub distance: usize,
    /// A nonzero codeword of weight `distance`.
    pub witness: QuotientPoly,
    pub enumerated: u64,
    /// Every nonzero codeword was visited.
    pub exhaustive: bool,
}

pub fn worker_count(requested: usize) -> usize {
    if requested > 0 {
        return requested;
    }
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

/// Minimum weight over the nonzero codewords spanned by x^i g, i < k.
pub fn min_distance(code: &CyclicCode, options: &DistanceOptions) -> DistanceResult {
    let k = code.dimension();
    assert!(k >= 1, "improper codes are rejected at construction");
    if code.q() == 2 {
        binary_min_distance(code, options)
    } else {
        odd_min_distance(code, options)
    }
}

fn bit_rows(code: &CyclicCode) -> (Vec<u64>, usize) {
    let n = code.n();
    let words = n.div_ceil(64);
    let k = code.dimension();
    let support = code.generator().support();
    let mut rows = vec![0u64; k * words];
    for i in 0..k {
        for &e in &support {
            let bit = e + i;
            rows[i * words + bit / 64] |= 1 << (bit % 64);
        }
    }
    (rows, words)
}

fn words_to_poly(words: &[u64], n: usize) -> QuotientPoly {
    QuotientPoly::from_vec(
        (0..n)
            .map(|i| {
                if words[i / 64] >> (i % 64) & 1 == 1 {
                    FieldElement::ONE
                } else {
                    FieldElement::ZERO
                }
            })
            .collect(),
    )
}

/// Lexicographic order on coefficient vectors read from x^0 upward.
fn lex_less(a: &[u64], b: &[u64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        let diff = x ^ y;
        if diff != 0 {
            return x >> diff.trailing_zeros() & 1 == 0;
        }
    }
    false
}

struct Best {
    weight: usize,
    word: Vec<u64>,
    visited: u64,
}

/// Gray walk over rows[..low] starting from `start`, which already holds the
/// contribution of the fixed high rows. Visits `start` itself when nonzero.
fn walk<const W: usize>(
    rows: &[[u64; W]],
    low: usize,
    start: [u64; W],
    shared: &AtomicUsize,
    stop_at: usize,
) -> Best {
    let mut word = start;
    let mut best = Best {
        weight: usize::MAX,
        word: vec![0; W],
        visited: 0,
    };
    let consider = |word: &[u64; W], best: &mut Best| {
        let weight: usize = word.iter().map(|w| w.count_ones() as usize).sum();
        if weight == 0 {
            return;
        }
        best.visited += 1;
        if weight < best.weight || (weight == best.weight && lex_less(word, &best.word)) {
            best.weight = weight;
            best.word.copy_from_slice(word);
            shared.fetch_min(weight, Ordering::Relaxed);
        }
    };
    consider(&word, &mut best);
    for i in 1..1u64 << low {
        let row = &rows[i.trailing_zeros() as usize];
        for w in 0..W {
            word[w] ^= row[w];
        }
        consider(&word, &mut best);
        if i & 0xfff == 0 && shared.load(Ordering::Relaxed) <= stop_at {
            break;
        }
    }
    best
}

fn binary_min_distance(code: &CyclicCode, options: &DistanceOptions) -> DistanceResult {
    let (flat, words) = bit_rows(code);
    match words {
        1 => binary_walk::<1>(code, &flat, options),
        2 => binary_walk::<2>(code, &flat, options),
        3 => binary_walk::<3>(code, &flat, options),
        4 => binary_walk::<4>(code, &flat, options),
        5..=8 => binary_walk::<8>(code, &pad(&flat, words, 8), options),
        9..=16 => binary_walk::<16>(code, &pad(&flat, words, 16), options),
        _ => binary_walk::<1024>(code, &pad(&flat, words, 1024), options),
    }
}

fn pad(flat: &[u64], words: usize, to: usize) -> Vec<u64> {
    flat.chunks(words)
        .flat_map(|row| {
            row.iter()
                .copied()
                .chain(std::iter::repeat_n(0, to - words))
        })
        .collect()
}

fn binary_walk<const W: usize>(
    code: &CyclicCode,
    flat: &[u64],
    options: &DistanceOptions,
) -> DistanceResult {
    let n = code.n();
    let k = code.dimension();
    let rows: Vec<[u64; W]> = flat
        .chunks(W)
        .map(|c| {
            let mut r = [0u64; W];
            r.copy_from_slice(c);
            r
        })
        .collect();
    let total = if k >= 64 { u64::MAX } else { (1u64 << k) - 1 };
    let exhaustive_possible = total <= options.cap;
    // When the space is too large, walk the subspace of the first rows that fits.
    let span = if exhaustive_possible {
        k
    } else {
        (63 - options.cap.saturating_add(1).leading_zeros()) as usize
    }
    .max(1);
    let threads = worker_count(options.threads);
    let mut high = 0;
    while high + 1 < span && (1usize << high) < threads * 4 && span - high > 10 {
        high += 1;
    }
    let low = span - high;
    let stop_at = options.stop_at.unwrap_or(0);
    let shared = AtomicUsize::new(usize::MAX);
    let chunks: Vec<u64> = (0..1u64 << high).collect();
    let results: Vec<Best> = std::thread::scope(|scope| {
        let per = chunks.len().div_ceil(threads);
        let handles: Vec<_> = chunks
            .chunks(per.max(1))
            .map(|mine| {
                let rows = &rows;
                let shared = &shared;
                scope.spawn(move || {
                    let mut acc: Option<Best> = None;
                    for &prefix in mine {
                        if shared.load(Ordering::Relaxed) <= stop_at {
                            break;
                        }
                        let mut start = [0u64; W];
                        for bit in 0..high {
                            if prefix >> bit & 1 == 1 {
                                for w in 0..W {
                                    start[w] ^= rows[low + bit][w];
                                }
                            }
                        }
                        let b = walk(rows, low, start, shared, stop_at);
                        acc = Some(merge(acc, b));
                    }
                    acc
                })
            })
            .collect();
        handles
            .into_iter()
            .filter_map(|h| h.join().expect("distance worker panicked"))
            .collect()
    });
    let visited: u64 = results.iter().map(|b| b.visited).sum();
    let best = results
        .into_iter()
        .reduce(|a, b| merge(Some(a), b))
        .unwrap();
    let expected = if span >= 64 {
        u64::MAX
    } else {
        (1u64 << span) - 1
    };
    DistanceResult {
        distance: best.weight,
        witness: words_to_poly(&best.word, n),
        enumerated: visited,
        exhaustive: exhaustive_possible && visited == expected,
    }
}

fn merge(acc: Option<Best>, b: Best) -> Best {
    match acc {
        None => b,
        Some(a) => {
            let visited = a.visited + b.visited;
            let mut winner =
                if b.weight < a.weight || (b.weight == a.weight && lex_less(&b.word, &a.word)) {
                    b
                } else {
                    a
                };
            winner.visited = visited;
            winner
        }
    }
}

/// Odometer over GF(p)^k: each step adds one generator row, carrying when a
/// digit wraps, so the running codeword is always sum(m_i x^i g).
fn odd_min_distance(code: &CyclicCode, options: &DistanceOptions) -> DistanceResult {
    let n = code.n();
    let k = code.dimension();
    let p = code.q() as u32;
    let g: Vec<u32> = (0..n).map(|i| code.generator().coeff(i).packed()).collect();
    let rows: Vec<Vec<u32>> = (0..k)
        .map(|i| {
            let mut r = vec![0u32; n];
            for (e, &c) in g.iter().enumerate() {
                if c != 0 {
                    r[e + i] = c;
                }
            }
            r
        })
        .collect();
    let total = (p as u64).checked_pow(k as u32).map(|t| t - 1);
    let exhaustive = total.is_some_and(|t| t <= options.cap);
    let limit = total.unwrap_or(u64::MAX).min(options.cap);
    let stop_at = options.stop_at.unwrap_or(0);
    let mut digits = vec![0u32; k];
    let mut word = vec![0u32; n];
    let mut best_weight = usize::MAX;
    let mut best_word = word.clone();
    let mut visited = 0u64;
    'outer: while visited < limit {
        let mut j = 0;
        loop {
            for (w, &r) in word.iter_mut().zip(&rows[j]) {
                *w = (*w + r) % p;
            }
            digits[j] += 1;
            if digits[j] < p {
                break;
            }
            digits[j] = 0;
            j += 1;
            if j == k {
                break 'outer;
            }
        }
        visited += 1;
        let weight = word.iter().filter(|&&c| c != 0).count();
        if weight < best_weight || (weight == best_weight && word < best_word) {
            best_weight = weight;
            best_word.clone_from(&word);
        }
        if best_weight <= stop_at {
            break;
        }
    }
    DistanceResult {
        distance: best_weight,
        witness: QuotientPoly::from_vec(best_word.into_iter().map(field_digit).collect()),
        enumerated: visited,
        exhaustive: exhaustive && Some(visited) == total,
    }
}

fn field_digit(c: u32) -> FieldElement {
    FieldElement::from_prime_digit(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::code_from_defining_set;
    use crate::galois::{GaloisField, RootOfUnity};
    use crate::modring::{cyclotomic_cosets, DefiningSet};
    use crate::polyring::Poly;
    use std::sync::Arc;

    fn code_with_complement(n: usize, reps: &[usize]) -> CyclicCode {
        let r = RootOfUnity::for_length(2, n, None).unwrap();
        let part = cyclotomic_cosets(n, 2).unwrap();
        let d = part.closure(reps.iter().copied()).complement();
        code_from_defining_set(&r, &d).unwrap()
    }

    /// Independent oracle: multiply every message polynomial by g with
    /// generic polynomial arithmetic.
    fn by_multiples(code: &CyclicCode) -> usize {
        let field = code.root().field();
        let k = code.dimension();
        let p = code.q() as i64;
        let mut best = usize::MAX;
        let total = p.pow(k as u32);
        for m in 1..total {
            let digits: Vec<i64> = (0..k).map(|i| m / p.pow(i as u32) % p).collect();
            let c = Poly::from_ints(field, &digits).mul(code.generator(), field);
            best = best.min(c.weight());
        }
        best
    }

    #[test]
    fn small_table_values() {
        let opts = DistanceOptions::default();
        assert_eq!(
            min_distance(&code_with_complement(7, &[3]), &opts).distance,
            4
        );
        assert_eq!(
            min_distance(&code_with_complement(31, &[1, 5, 11]), &opts).distance,
            6
        );
        assert_eq!(
            min_distance(&code_with_complement(15, &[0, 1]), &opts).distance,
            7
        );
    }

    #[test]
    fn repetition_code() {
        let r = RootOfUnity::for_length(2, 23, None).unwrap();
        let d = DefiningSet::new(23, 1..23).unwrap();
        let code = code_from_defining_set(&r, &d).unwrap();
        let res = min_distance(&code, &DistanceOptions::default());
        assert_eq!(
            (res.distance, res.enumerated, res.exhaustive),
            (23, 1, true)
        );
    }

    #[test]
    fn length_15_code_from_three_factors() {
        let f = Arc::new(GaloisField::binary(&[4, 1, 0]).unwrap());
        let r = RootOfUnity::residue_of_x(&f, 15).unwrap();
        // h2 h3 h5 vanish on C(5), C(1), C(3); the code generated by their
        // product, read as a spectrum, has the complementary support as zeros.
        let g = [&[2usize, 1, 0][..], &[4, 1, 0], &[4, 3, 2, 1, 0]]
            .iter()
            .fold(Poly::one(), |acc, e| acc.mul(&Poly::from_exponents(e), &f));
        let d = DefiningSet::new(15, 0..15)
            .unwrap()
            .difference(&DefiningSet::new(15, g.support()).unwrap());
        let code = code_from_defining_set(&r, &d).unwrap();
        assert_eq!(code.dimension(), 7);
        assert_eq!(min_distance(&code, &DistanceOptions::default()).distance, 5);
    }

    #[test]
    fn capped_search_is_not_exhaustive() {
        let code = code_with_complement(31, &[1, 5, 11]);
        let res = min_distance(
            &code,
            &DistanceOptions {
                cap: 1000,
                ..Default::default()
            },
        );
        assert!(!res.exhaustive);
        assert!(res.distance >= 6);
        assert!(res.enumerated <= 1000);
    }

    #[test]
    fn thread_counts_agree() {
        let code = code_with_complement(31, &[0, 1, 3, 5]);
        let one = min_distance(
            &code,
            &DistanceOptions {
                threads: 1,
                ..Default::default()
            },
        );
        let many = min_distance(
            &code,
            &DistanceOptions {
                threads: 7,
                ..Default::default()
            },
        );
        assert_eq!(one, many);
        assert!(one.exhaustive);
        assert_eq!(one.enumerated, (1 << code.dimension()) - 1);
    }

    #[test]
    fn ternary_golay() {
        let r = RootOfUnity::for_length(3, 11, None).unwrap();
        let part = cyclotomic_cosets(11, 3).unwrap();
        let code = code_from_defining_set(&r, &part.closure([1])).unwrap();
        let res = min_distance(&code, &DistanceOptions::default());
        assert_eq!(res.distance, 5);
        assert_eq!(res.distance, by_multiples(&code));
        assert!(code.contains(&res.witness));
        assert_eq!(res.witness.weight(), 5);
    }

    #[test]
    fn wide_rows() {
        // n = 73 needs two packed words per row.
        let code = code_with_complement(73, &[0]);
        assert_eq!(
            min_distance(&code, &DistanceOptions::default()).distance,
            73
        );
        let r = RootOfUnity::for_length(2, 73, None).unwrap();
        let part = cyclotomic_cosets(73, 2).unwrap();
        let d = part.closure([0]).complement();
        let rep = part.representatives()[1];
        let d = d.difference(&part.closure([rep]));
        let code = code_from_defining_set(&r, &d).unwrap();
        let res = min_distance(&code, &DistanceOptions::default());
        assert_eq!(res.distance, by_multiples(&code));
    }

    mod props {
        use super::*;
        use crate::bounds::code_apparent_distance;
        use crate::spectral::dft;
        use proptest::prelude::*;

        fn closed_sets(n: usize) -> impl Strategy<Value = DefiningSet> {
            let part = cyclotomic_cosets(n, 2).unwrap();
            let reps = part.representatives();
            prop::collection::vec(any::<bool>(), reps.len()).prop_map(move |mask| {
                part.closure(reps.iter().zip(&mask).filter(|(_, m)| **m).map(|(r, _)| *r))
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]
            #[test]
            fn agrees_with_multiples_and_bounds(d in closed_sets(21)) {
                prop_assume!(d.len() < 21 && 21 - d.len() <= 12);
                let r = RootOfUnity::for_length(2, 21, None).unwrap();
                let code = code_from_defining_set(&r, &d).unwrap();
                let res = min_distance(&code, &DistanceOptions::default());
                prop_assert!(res.exhaustive);
                prop_assert_eq!(res.distance, by_multiples(&code));
                prop_assert_eq!(res.witness.weight(), res.distance);
                prop_assert!(code.contains(&res.witness));
                prop_assert!(res.distance >= code_apparent_distance(&code).overall);
                let spectrum = dft(&res.witness, &r);
                prop_assert!(spectrum.support().members().iter().all(|i| !d.contains(*i)));
                for h in 1..21 {
                    let shifted = res.witness.cyclic_shift(h);
                    prop_assert!(code.contains(&shifted));
                    prop_assert_eq!(shifted.weight(), res.distance);
                }
            }
        }
    }
}
