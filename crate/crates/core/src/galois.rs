//! Arithmetic in GF(p^m) over a polynomial basis, and primitive n-th roots
//! of unity living in it.
//!
//! Elements are packed into a `u32`: for p = 2 bit i holds the coefficient
//! of x^i; for odd p the element is the integer sum of c_i * p^i. With that
//! packing the prime subfield GF(p) is exactly the set of values below p,
//! so polynomials over GF(p) and over GF(p^m) share one coefficient type.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::modring::{factorize, gcd, is_prime, multiplicative_order};

/// Fields are limited to p^m - 1 <= 2^24.
pub const MAX_GROUP_ORDER: u64 = 1 << 24;
const MAX_DEGREE: usize = 24;

/// Default primitive polynomials for GF(2^m), m = 1..=24, as exponent lists.
const BINARY_DEFAULTS: [&[usize]; 24] = [
    &[1, 0],
    &[2, 1, 0],
    &[3, 1, 0],
    &[4, 1, 0],
    &[5, 2, 0],
    &[6, 1, 0],
    &[7, 1, 0],
    &[8, 4, 3, 2, 0],
    &[9, 4, 0],
    &[10, 3, 0],
    &[11, 2, 0],
    &[12, 6, 4, 1, 0],
    &[13, 4, 3, 1, 0],
    &[14, 10, 6, 1, 0],
    &[15, 1, 0],
    &[16, 12, 3, 1, 0],
    &[17, 3, 0],
    &[18, 7, 0],
    &[19, 5, 2, 1, 0],
    &[20, 3, 0],
    &[21, 2, 0],
    &[22, 1, 0],
    &[23, 5, 0],
    &[24, 7, 2, 1, 0],
];

/// Sparsest primitive polynomials for small odd characteristic, little-endian
/// coefficients without the leading 1.
const ODD_DEFAULTS: &[(u32, &[&[u32]])] = &[
    (
        3,
        &[
            &[1],
            &[2, 1],
            &[1, 2, 0],
            &[2, 1, 0, 0],
            &[1, 2, 0, 0, 0],
            &[2, 1, 0, 0, 0, 0],
            &[1, 0, 2, 0, 0, 0, 0],
            &[2, 0, 0, 1, 0, 0, 0, 0],
            &[1, 0, 0, 0, 2, 0, 0, 0, 0],
            &[2, 1, 0, 1, 0, 0, 0, 0, 0, 0],
            &[1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0],
            &[2, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
            &[1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        ],
    ),
    (
        5,
        &[
            &[2],
            &[2, 1],
            &[2, 3, 0],
            &[2, 1, 4, 0],
            &[2, 4, 0, 0, 0],
            &[2, 1, 0, 0, 0, 0],
            &[2, 3, 0, 0, 0, 0, 0],
            &[3, 1, 4, 0, 0, 0, 0, 0],
            &[2, 0, 0, 0, 3, 0, 0, 0, 0],
            &[2, 2, 1, 0, 0, 0, 0, 0, 0, 0],
        ],
    ),
    (
        7,
        &[
            &[2],
            &[3, 1],
            &[2, 3, 0],
            &[3, 1, 6, 0],
            &[2, 2, 0, 0, 0],
            &[3, 1, 5, 0, 0, 0],
            &[2, 6, 0, 0, 0, 0, 0],
            &[3, 1, 0, 0, 0, 0, 0, 0],
        ],
    ),
    (
        11,
        &[
            &[3],
            &[2, 4],
            &[3, 5, 0],
            &[2, 1, 0, 0],
            &[9, 0, 2, 0, 0],
            &[2, 2, 4, 0, 0, 0],
        ],
    ),
    (
        13,
        &[
            &[2],
            &[2, 1],
            &[2, 2, 0],
            &[2, 1, 1, 0],
            &[2, 4, 0, 0, 0],
            &[2, 1, 3, 0, 0, 0],
        ],
    ),
];

/// Little-endian coefficients of the built-in modulus for GF(p^m).
pub fn default_modulus(p: u32, m: usize) -> Result<Vec<u32>> {
    if p == 2 && (1..=BINARY_DEFAULTS.len()).contains(&m) {
        return Ok(coeffs_from_exponents(BINARY_DEFAULTS[m - 1]));
    }
    ODD_DEFAULTS
        .iter()
        .find(|(prime, _)| *prime == p)
        .and_then(|(_, rows)| rows.get(m.wrapping_sub(1)))
        .map(|low| {
            let mut c = low.to_vec();
            c.push(1);
            c
        })
        .ok_or(Error::NoDefaultPolynomial { p, m })
}

/// 0/1 coefficient vector of a sum of monomials.
pub fn coeffs_from_exponents(exponents: &[usize]) -> Vec<u32> {
    let degree = exponents.iter().copied().max().unwrap_or(0);
    let mut c = vec![0; degree + 1];
    for &e in exponents {
        c[e] ^= 1;
    }
    c
}

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn packed(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The prime-subfield element c, for c < p. Prime-subfield elements
    /// pack as their integer value in every field of characteristic p.
    pub(crate) fn from_prime_digit(c: u32) -> FieldElement {
        FieldElement(c)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A validated GF(p^m) with a fixed irreducible modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    p: u32,
    m: usize,
    modulus: Vec<u32>,
    size: u32,
    group_primes: Vec<u64>,
    generator: FieldElement,
    modulus_primitive: bool,
    modulus_bits: u64,
    place: Vec<u32>,
}

impl GaloisField {
    /// Validates `modulus` (or picks the built-in one) and locates a
    /// primitive element.
    pub fn new(p: u32, m: usize, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::InvalidDegree);
        }
        let group_order = (p as u64).checked_pow(m as u32).map(|s| s - 1);
        if m > MAX_DEGREE || group_order.is_none_or(|g| g > MAX_GROUP_ORDER) {
            return Err(Error::FieldTooLarge { p, m });
        }
        let mut modulus = match modulus {
            Some(c) => c.iter().map(|&x| x % p).collect::<Vec<_>>(),
            None => default_modulus(p, m)?,
        };
        while modulus.last() == Some(&0) {
            modulus.pop();
        }
        let found = modulus.len().saturating_sub(1);
        if found != m || modulus.is_empty() {
            return Err(Error::ModulusDegree { expected: m, found });
        }
        let lead_inv = inv_mod_p(modulus[m], p);
        for c in modulus.iter_mut() {
            *c = (*c as u64 * lead_inv as u64 % p as u64) as u32;
        }
        let place: Vec<u32> = (0..=m).map(|i| p.pow(i as u32)).collect();
        let modulus_bits = if p == 2 {
            modulus
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | ((c as u64) << i))
        } else {
            0
        };
        let group_order = group_order.expect("checked above");
        let mut field = GaloisField {
            p,
            m,
            modulus,
            size: place[m],
            group_primes: factorize(group_order).into_iter().map(|(r, _)| r).collect(),
            generator: FieldElement::ONE,
            modulus_primitive: false,
            modulus_bits,
            place,
        };
        if !field.modulus_irreducible() {
            return Err(Error::RejectedModulus { p });
        }
        let x = field.x();
        if field.order(x) == group_order {
            field.generator = x;
            field.modulus_primitive = true;
        } else {
            field.generator = (1..field.size)
                .map(FieldElement)
                .find(|&a| field.order(a) == group_order)
                .expect("the multiplicative group of a finite field is cyclic");
        }
        Ok(field)
    }

    /// GF(2^m) from an exponent list such as `[12, 3, 0]`.
    pub fn binary(exponents: &[usize]) -> Result<Self> {
        let c = coeffs_from_exponents(exponents);
        Self::new(2, c.len().saturating_sub(1), Some(&c))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of elements, p^m.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn group_order(&self) -> u64 {
        self.size as u64 - 1
    }

    /// Monic little-endian modulus coefficients.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// True when the residue of x generates the multiplicative group.
    pub fn modulus_is_primitive(&self) -> bool {
        self.modulus_primitive
    }

    /// A primitive element: the residue of x when possible, otherwise the
    /// smallest packed element of full order.
    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, c: i64) -> FieldElement {
        FieldElement(c.rem_euclid(self.p as i64) as u32)
    }

    /// Residue of x modulo the field polynomial.
    pub fn x(&self) -> FieldElement {
        self.from_coeffs(&[0, 1])
    }

    pub fn from_packed(&self, v: u32) -> Option<FieldElement> {
        (v < self.size).then_some(FieldElement(v))
    }

    /// Reduces an arbitrary coefficient vector over GF(p).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        let mut c: Vec<u32> = coeffs.iter().map(|&x| x % self.p).collect();
        self.reduce(&mut c);
        self.encode(&c)
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        self.decode(a)
    }

    /// Membership in the prime subfield GF(p).
    pub fn is_prime_subfield(&self, a: FieldElement) -> bool {
        a.0 < self.p
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (da, db) = (self.decode(a), self.decode(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let d: Vec<u32> = self
            .decode(a)
            .iter()
            .map(|&x| (self.p - x) % self.p)
            .collect();
        self.encode(&d)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if self.p == 2 {
            return FieldElement(self.mul_binary(a.0, b.0));
        }
        if a.0 < self.p && b.0 < self.p {
            return FieldElement((a.0 as u64 * b.0 as u64 % self.p as u64) as u32);
        }
        let (da, db) = (self.decode(a), self.decode(b));
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * self.m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let mut c: Vec<u32> = prod.into_iter().map(|v| v as u32).collect();
        self.reduce(&mut c);
        self.encode(&c)
    }

    fn mul_binary(&self, a: u32, b: u32) -> u32 {
        let mut acc = 0u64;
        let mut b = b as u64;
        let mut shift = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= (a as u64) << shift;
            }
            b >>= 1;
            shift += 1;
        }
        let m = self.m;
        for top in (m..2 * m).rev() {
            if (acc >> top) & 1 == 1 {
                acc ^= self.modulus_bits << (top - m);
            }
        }
        acc as u32
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (!a.is_zero()).then(|| self.pow(a, self.group_order() - 1))
    }

    /// a^p.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElement) -> u64 {
        assert!(!a.is_zero(), "zero has no multiplicative order");
        let mut ord = self.group_order();
        for &r in &self.group_primes {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == FieldElement::ONE {
                ord /= r;
            }
        }
        ord
    }

    /// Whether a lies in the subfield GF(p^d).
    pub fn in_subfield(&self, a: FieldElement, d: usize) -> Result<bool> {
        if d == 0 || !self.m.is_multiple_of(d) {
            return Err(Error::InvalidSubfield { d, m: self.m });
        }
        let mut b = a;
        for _ in 0..d {
            b = self.frobenius(b);
        }
        Ok(b == a)
    }

    fn decode(&self, a: FieldElement) -> Vec<u32> {
        if self.p == 2 {
            return (0..self.m).map(|i| (a.0 >> i) & 1).collect();
        }
        let mut v = a.0;
        (0..self.m)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    fn encode(&self, c: &[u32]) -> FieldElement {
        debug_assert!(c.len() <= self.m || c[self.m..].iter().all(|&x| x == 0));
        FieldElement(
            c.iter()
                .take(self.m)
                .zip(&self.place)
                .map(|(&d, &w)| d * w)
                .sum(),
        )
    }

    /// In-place reduction of a GF(p) coefficient vector mod the modulus.
    fn reduce(&self, c: &mut Vec<u32>) {
        let p = self.p as u64;
        let m = self.m;
        for top in (m..c.len()).rev() {
            let lead = c[top] as u64;
            if lead == 0 {
                continue;
            }
            for (i, &f) in self.modulus.iter().enumerate() {
                let idx = top - m + i;
                c[idx] = ((c[idx] as u64 + (p - lead) * f as u64) % p) as u32;
            }
        }
        c.truncate(m);
        c.resize(m, 0);
    }

    /// Rabin's test, using the quotient ring itself to compute x^(p^i).
    fn modulus_irreducible(&self) -> bool {
        let m = self.m;
        if m == 1 {
            return true;
        }
        let x = self.x();
        let mut frob = vec![x];
        for _ in 0..m {
            frob.push(self.frobenius(*frob.last().unwrap()));
        }
        if frob[m] != x {
            return false;
        }
        factorize(m as u64).into_iter().all(|(r, _)| {
            let k = m / r as usize;
            let diff = self.decode(self.sub(frob[k], x));
            fp_poly_gcd_is_one(diff, self.modulus.clone(), self.p)
        })
    }
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_poly_gcd_is_one(mut a: Vec<u32>, mut b: Vec<u32>, p: u32) -> bool {
    fp_trim(&mut a);
    fp_trim(&mut b);
    let p64 = p as u64;
    while !b.is_empty() {
        // a <- a mod b
        let lead_inv = inv_mod_p(*b.last().unwrap(), p) as u64;
        while a.len() >= b.len() {
            let coef = *a.last().unwrap() as u64 * lead_inv % p64;
            let shift = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                let idx = shift + i;
                a[idx] = ((a[idx] as u64 + (p64 - coef) * bc as u64) % p64) as u32;
            }
            fp_trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() == 1
}

/// How a root of unity was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootOrigin {
    /// alpha = x^power, x being the residue of x modulo the field polynomial.
    ResidueOfX { power: u64 },
    /// alpha = g^exponent for the field's primitive element g.
    GeneratorPower { exponent: u64 },
}

struct RootData {
    field: Arc<GaloisField>,
    element: FieldElement,
    n: usize,
    origin: RootOrigin,
    powers: Vec<FieldElement>,
    logs: HashMap<FieldElement, usize>,
}

/// A primitive n-th root of unity alpha, with its powers tabulated.
#[derive(Clone)]
pub struct RootOfUnity(Arc<RootData>);

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootOfUnity")
            .field("n", &self.0.n)
            .field("element", &self.0.element)
            .field("origin", &self.0.origin)
            .field("modulus", &self.0.field.modulus)
            .finish()
    }
}

impl PartialEq for RootOfUnity {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.n == other.0.n
                && self.0.element == other.0.element
                && *self.0.field == *other.0.field)
    }
}

impl Eq for RootOfUnity {}

/// g^((p^m - 1)/n) for the field's primitive element g.
pub fn nth_root(field: &Arc<GaloisField>, n: usize) -> Result<RootOfUnity> {
    let group = field.group_order();
    if n == 0 || !group.is_multiple_of(n as u64) {
        return Err(Error::OrderUnavailable {
            n,
            p: field.p(),
            m: field.m(),
        });
    }
    let exponent = group / n as u64;
    let element = field.pow(field.generator(), exponent);
    Ok(RootOfUnity::build(
        field.clone(),
        element,
        n,
        RootOrigin::GeneratorPower { exponent },
    ))
}

impl RootOfUnity {
    fn build(field: Arc<GaloisField>, element: FieldElement, n: usize, origin: RootOrigin) -> Self {
        let mut powers = Vec::with_capacity(n);
        let mut acc = FieldElement::ONE;
        for _ in 0..n {
            powers.push(acc);
            acc = field.mul(acc, element);
        }
        debug_assert_eq!(acc, FieldElement::ONE);
        let logs = powers.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        RootOfUnity(Arc::new(RootData {
            field,
            element,
            n,
            origin,
            powers,
            logs,
        }))
    }

    /// Fixes alpha as the residue of x, which must have order exactly n;
    /// the field polynomial is then the minimal polynomial of alpha.
    pub fn residue_of_x(field: &Arc<GaloisField>, n: usize) -> Result<Self> {
        let x = field.x();
        let found = if x.is_zero() { 0 } else { field.order(x) };
        if found != n as u64 {
            return Err(Error::RootOrderMismatch { expected: n, found });
        }
        Ok(Self::build(
            field.clone(),
            x,
            n,
            RootOrigin::ResidueOfX { power: 1 },
        ))
    }

    /// Sets up the splitting field of x^n - 1 over GF(p) and a root in it.
    ///
    /// With an explicit field polynomial whose root has order n, that root
    /// is alpha; otherwise alpha is derived from the primitive element.
    pub fn for_length(p: u32, n: usize, field_poly: Option<&[u32]>) -> Result<Self> {
        let m = multiplicative_order(p as u64, n)?;
        let field = match field_poly {
            Some(c) => {
                let degree = c.iter().rposition(|&x| x % p != 0).unwrap_or(0);
                Arc::new(GaloisField::new(p, degree, Some(c))?)
            }
            None => Arc::new(GaloisField::new(p, m, None)?),
        };
        if field_poly.is_some() {
            if let Ok(root) = Self::residue_of_x(&field, n) {
                return Ok(root);
            }
        }
        nth_root(&field, n)
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.0.field
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    /// Characteristic, which is also the alphabet size of codes built on
    /// this root.
    pub fn q(&self) -> u64 {
        self.0.field.p() as u64
    }

    pub fn element(&self) -> FieldElement {
        self.0.element
    }

    pub fn origin(&self) -> RootOrigin {
        self.0.origin
    }

    /// alpha^e, any integer e.
    pub fn pow(&self, e: i64) -> FieldElement {
        self.0.powers[e.rem_euclid(self.0.n as i64) as usize]
    }

    /// Exponent t with alpha^t = a, when a lies in the group generated by alpha.
    pub fn log(&self, a: FieldElement) -> Option<usize> {
        self.0.logs.get(&a).copied()
    }

    /// The root alpha^u, for u coprime to n.
    pub fn power(&self, u: usize) -> Result<RootOfUnity> {
        let n = self.0.n;
        if gcd(u as u64, n as u64) != 1 {
            return Err(Error::NotCoprime { n, q: u as u64 });
        }
        let group = self.0.field.group_order();
        let origin = match self.0.origin {
            RootOrigin::ResidueOfX { power } => RootOrigin::ResidueOfX {
                power: power * u as u64 % group,
            },
            RootOrigin::GeneratorPower { exponent } => RootOrigin::GeneratorPower {
                exponent: exponent * u as u64 % group,
            },
        };
        Ok(Self::build(
            self.0.field.clone(),
            self.pow(u as i64),
            n,
            origin,
        ))
    }

    /// The root beta with beta^a = alpha, so that D_beta = a * D_alpha.
    pub fn conjugate_for_representative(&self, a: usize) -> Result<RootOfUnity> {
        let n = self.0.n;
        let inverse = crate::modring::solve_linear_congruence(a as i64, 1, n as u64)
            .ok_or(Error::NotCoprime { n, q: a as u64 })?;
        self.power(inverse as usize)
    }
}
