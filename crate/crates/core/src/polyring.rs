//! Polynomials over GF(p^m), the quotient ring F[x]/(x^n - 1), minimal
//! polynomials and the factorization of x^n - 1 through cyclotomic cosets.

use std::fmt;

use crate::error::{Error, Result};
use crate::galois::{FieldElement, GaloisField, RootOfUnity};
use crate::modring::{cyclotomic_cosets, DefiningSet};

/// Dense polynomial, little-endian, without trailing zero coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(FieldElement::ONE)
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; degree + 1];
        coeffs[degree] = FieldElement::ONE;
        Self { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Polynomial with unit coefficients at the given exponents. Repeated
    /// exponents are not combined, so pass each exponent once.
    pub fn from_exponents(exponents: &[usize]) -> Self {
        let degree = exponents.iter().copied().max().unwrap_or(0);
        let mut coeffs = vec![FieldElement::ZERO; degree + 1];
        for &e in exponents {
            coeffs[e] = FieldElement::ONE;
        }
        Self::from_coeffs(coeffs)
    }

    /// Coefficients given as integers mod p.
    pub fn from_ints(field: &GaloisField, ints: &[i64]) -> Self {
        Self::from_coeffs(ints.iter().map(|&c| field.from_int(c)).collect())
    }

    /// x^n - 1.
    pub fn xn_minus_one(n: usize, field: &GaloisField) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; n + 1];
        coeffs[0] = field.neg(FieldElement::ONE);
        coeffs[n] = FieldElement::ONE;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Nonzero terms as (exponent, packed coefficient).
    pub fn terms(&self) -> Vec<(usize, u32)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.packed()))
            .collect()
    }

    pub fn has_base_coefficients(&self, field: &GaloisField) -> bool {
        self.coeffs.iter().all(|&c| field.is_prime_subfield(c))
    }

    pub fn add(&self, other: &Poly, field: &GaloisField) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            (0..len)
                .map(|i| field.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly, field: &GaloisField) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            (0..len)
                .map(|i| field.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: FieldElement, field: &GaloisField) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, field: &GaloisField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Poly, field: &GaloisField) -> (Poly, Poly) {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = field.inv(divisor.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - d_deg];
        for top in (d_deg..rem.len()).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            let factor = field.mul(c, lead_inv);
            quot[top - d_deg] = factor;
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                let idx = top - d_deg + i;
                rem[idx] = field.sub(rem[idx], field.mul(factor, dc));
            }
        }
        rem.truncate(d_deg);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn divides(&self, other: &Poly, field: &GaloisField) -> bool {
        other.divrem(self, field).1.is_zero()
    }

    pub fn monic(&self, field: &GaloisField) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lead) => self.scale(field.inv(lead).unwrap(), field),
        }
    }

    /// Monic gcd by the remainder chain.
    pub fn gcd(&self, other: &Poly, field: &GaloisField) -> Poly {
        let mut a = self.monic(field);
        let mut b = other.monic(field);
        while !b.is_zero() {
            let r = a.divrem(&b, field).1;
            a = b;
            b = r.monic(field);
        }
        a
    }

    /// Horner evaluation.
    pub fn eval(&self, x: FieldElement, field: &GaloisField) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| {
                field.add(field.mul(acc, x), c)
            })
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().into_iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = if c == 1 && e > 0 {
                String::new()
            } else {
                c.to_string()
            };
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{e}")?,
            }
        }
        Ok(())
    }
}

/// An element of F[x]/(x^n - 1) stored as its length-n coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuotientPoly {
    coeffs: Vec<FieldElement>,
}

impl QuotientPoly {
    pub fn zero(n: usize) -> Self {
        Self {
            coeffs: vec![FieldElement::ZERO; n],
        }
    }

    /// Takes a coefficient vector of length exactly n.
    pub fn from_vec(coeffs: Vec<FieldElement>) -> Self {
        Self { coeffs }
    }

    /// Residue of an arbitrary polynomial.
    pub fn from_poly(n: usize, poly: &Poly, field: &GaloisField) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; n];
        for (i, &c) in poly.coeffs().iter().enumerate() {
            coeffs[i % n] = field.add(coeffs[i % n], c);
        }
        Self { coeffs }
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs[i % self.coeffs.len()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// omega(f).
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn support(&self) -> DefiningSet {
        DefiningSet::from_unsorted(
            self.n(),
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, _)| i),
        )
    }

    pub fn nonzero_flags(&self) -> Vec<bool> {
        self.coeffs.iter().map(|c| !c.is_zero()).collect()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.clone())
    }

    /// Residue of x^h * f: the coefficient vector rotated by h.
    pub fn cyclic_shift(&self, h: usize) -> QuotientPoly {
        let n = self.n();
        let mut coeffs = vec![FieldElement::ZERO; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(i + h) % n] = c;
        }
        Self { coeffs }
    }

    pub fn add(&self, other: &QuotientPoly, field: &GaloisField) -> QuotientPoly {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| field.add(a, b))
                .collect(),
        }
    }

    /// Product modulo x^n - 1.
    pub fn mul(&self, other: &QuotientPoly, field: &GaloisField) -> QuotientPoly {
        let n = self.n();
        let mut coeffs = vec![FieldElement::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % n;
                coeffs[k] = field.add(coeffs[k], field.mul(a, b));
            }
        }
        Self { coeffs }
    }
}

/// m_f = gcd(f, x^n - 1), monic. Invariant under cyclic shifts of f.
pub fn gcd_with_xn(f: &QuotientPoly, field: &GaloisField) -> Result<Poly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(f.to_poly().gcd(&Poly::xn_minus_one(f.n(), field), field))
}

/// Product of (x - alpha^j) over the given exponents.
pub fn product_of_linear_factors(root: &RootOfUnity, exponents: &[usize]) -> Poly {
    let field = root.field();
    exponents.iter().fold(Poly::one(), |acc, &j| {
        let linear = Poly::from_coeffs(vec![field.neg(root.pow(j as i64)), FieldElement::ONE]);
        acc.mul(&linear, field)
    })
}

/// min_q(alpha^s): the product over C_q(s), checked to have base-field
/// coefficients.
pub fn minimal_polynomial(root: &RootOfUnity, s: usize) -> Result<Poly> {
    let partition = cyclotomic_cosets(root.n(), root.q())?;
    let poly = product_of_linear_factors(root, partition.coset_of(s));
    if !poly.has_base_coefficients(root.field()) {
        return Err(Error::CoefficientLeak);
    }
    Ok(poly)
}

/// One irreducible factor of x^n - 1 together with the exponents j of its
/// roots alpha^j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub poly: Poly,
    pub exponents: Vec<usize>,
}

impl Factor {
    pub fn degree(&self) -> usize {
        self.exponents.len()
    }
}

/// Complete factorization of x^n - 1 over GF(p^d), d dividing m.
#[derive(Clone, Debug)]
pub struct FactorList {
    pub n: usize,
    pub subfield_degree: usize,
    pub factors: Vec<Factor>,
}

/// Factors x^n - 1 over GF(p^d) by grouping the roots alpha^j into orbits
/// under j -> p^d * j. With d = 1 the orbits are the q-cyclotomic cosets.
pub fn factor_xn(root: &RootOfUnity, subfield_degree: usize) -> Result<FactorList> {
    let field = root.field();
    let d = subfield_degree;
    if d == 0 || !field.m().is_multiple_of(d) {
        return Err(Error::InvalidSubfield { d, m: field.m() });
    }
    let sub_size = (field.p() as u64).pow(d as u32);
    let orbits = cyclotomic_cosets(root.n(), sub_size)?;
    let mut factors = Vec::with_capacity(orbits.cosets().len());
    for orbit in orbits.cosets() {
        let poly = product_of_linear_factors(root, orbit);
        for &c in poly.coeffs() {
            if !field.in_subfield(c, d)? {
                return Err(Error::CoefficientLeak);
            }
        }
        factors.push(Factor {
            poly,
            exponents: orbit.clone(),
        });
    }
    Ok(FactorList {
        n: root.n(),
        subfield_degree: d,
        factors,
    })
}

impl FactorList {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product(&self, field: &GaloisField) -> Poly {
        self.factors
            .iter()
            .fold(Poly::one(), |acc, f| acc.mul(&f.poly, field))
    }

    /// Index of the factor vanishing at alpha^j.
    pub fn factor_of_exponent(&self, j: usize) -> Option<usize> {
        let j = j % self.n;
        self.factors.iter().position(|f| f.exponents.contains(&j))
    }

    /// Index of a factor equal to `poly` (compared monic).
    pub fn position(&self, poly: &Poly, field: &GaloisField) -> Option<usize> {
        let target = poly.monic(field);
        self.factors.iter().position(|f| f.poly == target)
    }
}

/// A monic divisor of x^n - 1 given as a product of listed factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub factor_indices: Vec<usize>,
    pub poly: Poly,
}

impl Divisor {
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }
}

/// Lazily enumerates the divisors of x^n - 1 of one degree, as subsets of
/// the factor list in lexicographic order of their sorted index sequences.
/// x^n - 1 itself is never produced.
pub struct DivisorIter<'a> {
    list: &'a FactorList,
    field: &'a GaloisField,
    target: usize,
    degrees: Vec<usize>,
    suffix: Vec<usize>,
    chosen: Vec<usize>,
    degree: usize,
    started: bool,
    done: bool,
}

pub fn divisor_enumerate<'a>(
    list: &'a FactorList,
    field: &'a GaloisField,
    target_degree: usize,
) -> DivisorIter<'a> {
    let degrees: Vec<usize> = list.factors.iter().map(Factor::degree).collect();
    let mut suffix = vec![0; degrees.len() + 1];
    for i in (0..degrees.len()).rev() {
        suffix[i] = suffix[i + 1] + degrees[i];
    }
    DivisorIter {
        list,
        field,
        target: target_degree,
        done: target_degree >= list.n,
        degrees,
        suffix,
        chosen: Vec::new(),
        degree: 0,
        started: false,
    }
}

impl DivisorIter<'_> {
    fn feasible(&self, index: usize, base: usize) -> bool {
        let with = base + self.degrees[index];
        with <= self.target && with + self.suffix[index + 1] >= self.target
    }

    fn first_feasible(&self, from: usize, base: usize) -> Option<usize> {
        (from..self.degrees.len()).find(|&i| self.feasible(i, base))
    }

    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return self.suffix[0] >= self.target;
        }
        let from = self.chosen.last().map_or(0, |&l| l + 1);
        if let Some(c) = self.first_feasible(from, self.degree) {
            self.chosen.push(c);
            self.degree += self.degrees[c];
            return true;
        }
        while let Some(last) = self.chosen.pop() {
            self.degree -= self.degrees[last];
            if let Some(c) = self.first_feasible(last + 1, self.degree) {
                self.chosen.push(c);
                self.degree += self.degrees[c];
                return true;
            }
        }
        false
    }
}

impl Iterator for DivisorIter<'_> {
    type Item = Divisor;

    fn next(&mut self) -> Option<Divisor> {
        while !self.done {
            if !self.advance() {
                self.done = true;
                break;
            }
            if self.degree == self.target {
                let poly = self.chosen.iter().fold(Poly::one(), |acc, &i| {
                    acc.mul(&self.list.factors[i].poly, self.field)
                });
                return Some(Divisor {
                    factor_indices: self.chosen.clone(),
                    poly,
                });
            }
        }
        None
    }
}
