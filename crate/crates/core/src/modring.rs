//! Arithmetic in Z_n: cyclotomic cosets, the representative set A(n),
//! multiplicative orders, totients and linear congruences.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest code length accepted anywhere in the crate.
pub const MAX_LENGTH: usize = 1 << 16;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (prime, _)| acc / prime * (prime - 1))
}

fn check_coprime(n: usize, q: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("length must be positive".into()));
    }
    if gcd(n as u64, q) != 1 {
        return Err(Error::NotCoprime { n, q });
    }
    Ok(())
}

/// Least k >= 1 with q^k = 1 (mod n).
pub fn multiplicative_order(q: u64, n: usize) -> Result<usize> {
    check_coprime(n, q)?;
    let n64 = n as u64;
    if n == 1 {
        return Ok(1);
    }
    let base = q % n64;
    let mut acc = base;
    let mut k = 1;
    while acc != 1 {
        acc = acc * base % n64;
        k += 1;
    }
    Ok(k)
}

/// Least nonnegative k with a*k = b (mod m), or `None` when gcd(a, m) does
/// not divide b.
pub fn solve_linear_congruence(a: i64, b: i64, m: u64) -> Option<u64> {
    assert!(m >= 1, "modulus must be positive");
    let m_i = m as i128;
    let a = (a as i128).rem_euclid(m_i);
    let b = (b as i128).rem_euclid(m_i);
    let (g, x, _) = ext_gcd(a, m_i);
    if b % g != 0 {
        return None;
    }
    let reduced = m_i / g;
    let k = (x * (b / g)).rem_euclid(reduced);
    Some(k as u64)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// The q-cyclotomic cosets modulo n, each sorted ascending, ordered by
/// their minimum element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPartition {
    n: usize,
    q: u64,
    cosets: Vec<Vec<usize>>,
    owner: Vec<usize>,
}

pub fn cyclotomic_cosets(n: usize, q: u64) -> Result<CosetPartition> {
    check_coprime(n, q)?;
    if n > MAX_LENGTH {
        return Err(Error::LengthTooLarge { n, max: MAX_LENGTH });
    }
    let q_mod = (q % n as u64) as usize;
    let mut owner = vec![usize::MAX; n];
    let mut cosets = Vec::new();
    for start in 0..n {
        if owner[start] != usize::MAX {
            continue;
        }
        let index = cosets.len();
        let mut coset = Vec::new();
        let mut a = start;
        loop {
            owner[a] = index;
            coset.push(a);
            a = a * q_mod % n;
            if a == start {
                break;
            }
        }
        coset.sort_unstable();
        cosets.push(coset);
    }
    Ok(CosetPartition {
        n,
        q,
        cosets,
        owner,
    })
}

impl CosetPartition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.cosets.iter().map(|c| c[0]).collect()
    }

    /// The coset C_q(a).
    pub fn coset_of(&self, a: usize) -> &[usize] {
        &self.cosets[self.owner[a % self.n]]
    }

    pub fn coset_index(&self, a: usize) -> usize {
        self.owner[a % self.n]
    }

    /// Smallest union of cosets containing every element of `members`.
    pub fn closure<I: IntoIterator<Item = usize>>(&self, members: I) -> DefiningSet {
        let mut taken = vec![false; self.cosets.len()];
        for a in members {
            taken[self.owner[a % self.n]] = true;
        }
        let elems = taken
            .iter()
            .enumerate()
            .filter(|(_, t)| **t)
            .flat_map(|(i, _)| self.cosets[i].iter().copied());
        DefiningSet::from_unsorted(self.n, elems)
    }

    pub fn is_closed(&self, set: &DefiningSet) -> bool {
        set.members()
            .iter()
            .all(|&a| self.coset_of(a).iter().all(|b| set.contains(*b)))
    }

    /// Representatives of the cosets making up a closed set.
    pub fn decompose(&self, set: &DefiningSet) -> Vec<usize> {
        let mut reps: Vec<usize> = set.members().iter().map(|&a| self.coset_of(a)[0]).collect();
        reps.sort_unstable();
        reps.dedup();
        reps
    }

    /// Coset representatives coprime to n.
    pub fn representative_set(&self) -> RepresentativeSet {
        representative_set(self)
    }
}

/// A(n): coset representatives coprime to n. Each member names one root
/// change that can alter a defining set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentativeSet {
    pub n: usize,
    pub q: u64,
    pub members: Vec<usize>,
    /// ord_n(q), the common size of every member's coset.
    pub order: usize,
}

pub fn representative_set(partition: &CosetPartition) -> RepresentativeSet {
    let n = partition.n;
    let members: Vec<usize> = partition
        .cosets
        .iter()
        .map(|c| c[0])
        .filter(|&a| gcd(a as u64, n as u64) == 1)
        .collect();
    let order = multiplicative_order(partition.q, n).expect("partition was built coprime");
    RepresentativeSet {
        n,
        q: partition.q,
        members,
        order,
    }
}

impl RepresentativeSet {
    /// |A(n)|, equal to phi(n) / ord_n(q).
    pub fn count(&self) -> usize {
        self.members.len()
    }
}

/// A sorted set of residues modulo n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DefiningSet {
    n: usize,
    members: Vec<usize>,
}

impl DefiningSet {
    pub fn new<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Result<Self> {
        let members: Vec<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&a| a >= n) {
            return Err(Error::InvalidInput(format!(
                "residue {bad} is not in Z_{n}"
            )));
        }
        Ok(Self::from_unsorted(n, members))
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            members: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Self {
            n,
            members: (0..n).collect(),
        }
    }

    pub(crate) fn from_unsorted<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Self {
        let mut members: Vec<usize> = members.into_iter().map(|a| a % n).collect();
        members.sort_unstable();
        members.dedup();
        Self { n, members }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&(a % self.n)).is_ok()
    }

    pub fn is_subset(&self, other: &DefiningSet) -> bool {
        self.members.iter().all(|&a| other.contains(a))
    }

    /// a * D mod n.
    pub fn scaled(&self, a: usize) -> DefiningSet {
        Self::from_unsorted(self.n, self.members.iter().map(|&x| x * a % self.n))
    }

    pub fn complement(&self) -> DefiningSet {
        Self {
            n: self.n,
            members: (0..self.n).filter(|&a| !self.contains(a)).collect(),
        }
    }

    pub fn union(&self, other: &DefiningSet) -> DefiningSet {
        Self::from_unsorted(
            self.n,
            self.members.iter().chain(other.members.iter()).copied(),
        )
    }

    pub fn difference(&self, other: &DefiningSet) -> DefiningSet {
        Self {
            n: self.n,
            members: self
                .members
                .iter()
                .copied()
                .filter(|&a| !other.contains(a))
                .collect(),
        }
    }

    /// Membership flags indexed by residue.
    pub fn flags(&self) -> Vec<bool> {
        let mut out = vec![false; self.n];
        for &a in &self.members {
            out[a] = true;
        }
        out
    }
}

impl fmt::Display for DefiningSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosets_mod_21() {
        let p = cyclotomic_cosets(21, 2).unwrap();
        let expected: Vec<Vec<usize>> = vec![
            vec![0],
            vec![1, 2, 4, 8, 11, 16],
            vec![3, 6, 12],
            vec![5, 10, 13, 17, 19, 20],
            vec![7, 14],
            vec![9, 15, 18],
        ];
        assert_eq!(p.cosets(), expected.as_slice());
        assert_eq!(p.representatives(), vec![0, 1, 3, 5, 7, 9]);
    }

    #[test]
    fn coset_of_three_mod_45() {
        let p = cyclotomic_cosets(45, 2).unwrap();
        assert_eq!(p.coset_of(3), &[3, 6, 12, 24]);
        assert_eq!(p.coset_of(0), &[0]);
    }

    #[test]
    fn representative_sets() {
        for (n, expected) in [(21, vec![1, 5]), (41, vec![1, 3]), (45, vec![1, 7])] {
            let r = cyclotomic_cosets(n, 2).unwrap().representative_set();
            assert_eq!(r.members, expected, "n = {n}");
        }
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(2, 45).unwrap(), 12);
        assert_eq!(multiplicative_order(2, 33).unwrap(), 10);
        assert_eq!(multiplicative_order(7, 1).unwrap(), 1);
        assert_eq!(
            multiplicative_order(2, 6),
            Err(Error::NotCoprime { n: 6, q: 2 })
        );
    }

    #[test]
    fn not_coprime_cosets() {
        assert!(matches!(
            cyclotomic_cosets(15, 3),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn congruences() {
        assert_eq!(solve_linear_congruence(2, 4, 6), Some(2));
        assert_eq!(solve_linear_congruence(2, 1, 4), None);
        assert_eq!(solve_linear_congruence(1, 14, 15), Some(14));
        assert_eq!(solve_linear_congruence(3, 14, 15), None);
        assert_eq!(solve_linear_congruence(5, -3, 1), Some(0));
    }

    #[test]
    fn totients() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(21), 12);
        assert_eq!(totient(45), 24);
        assert_eq!(totient(31), 30);
    }

    #[test]
    fn closure_and_decomposition() {
        let p = cyclotomic_cosets(21, 2).unwrap();
        let d = p.closure([6, 7, 8]);
        assert_eq!(p.decompose(&d), vec![1, 3, 7]);
        assert!(p.is_closed(&d));
        let scaled = d.scaled(5);
        assert_eq!(p.decompose(&scaled), vec![5, 7, 9]);
        assert!(!p.is_closed(&DefiningSet::new(21, [1, 2]).unwrap()));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn coprime_pair() -> impl Strategy<Value = (usize, u64)> {
            (1usize..200, prop::sample::select(vec![2u64, 3, 5, 7]))
                .prop_filter("coprime", |(n, q)| gcd(*n as u64, *q) == 1)
        }

        proptest! {
            #[test]
            fn partition_covers_and_is_orbit((n, q) in coprime_pair()) {
                let p = cyclotomic_cosets(n, q).unwrap();
                let total: usize = p.cosets().iter().map(Vec::len).sum();
                prop_assert_eq!(total, n);
                for coset in p.cosets() {
                    let rep = coset[0];
                    let mut orbit = vec![rep];
                    let mut a = rep * q as usize % n;
                    while a != rep {
                        orbit.push(a);
                        a = a * q as usize % n;
                    }
                    orbit.sort_unstable();
                    prop_assert_eq!(&orbit, coset);
                }
            }

            #[test]
            fn representative_count_matches_totient((n, q) in coprime_pair()) {
                let r = cyclotomic_cosets(n, q).unwrap().representative_set();
                prop_assert_eq!((r.count() * r.order) as u64, totient(n as u64));
                let p = cyclotomic_cosets(n, q).unwrap();
                for &a in &r.members {
                    prop_assert_eq!(p.coset_of(a).len(), r.order);
                }
            }

            #[test]
            fn congruence_matches_scan(a in -50i64..50, b in -50i64..50, m in 1u64..60) {
                let scan = (0..m).find(|&k| {
                    (a as i128 * k as i128 - b as i128).rem_euclid(m as i128) == 0
                });
                prop_assert_eq!(solve_linear_congruence(a, b, m), scan);
            }
        }
    }
}
