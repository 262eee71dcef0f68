//! Discrete Fourier (Mattson-Solomon) transform over the splitting field.

use std::fmt;

use crate::error::{Error, Result};
use crate::galois::{FieldElement, RootOfUnity};
use crate::modring::{cyclotomic_cosets, DefiningSet};
use crate::polyring::QuotientPoly;

/// Values f(alpha^i) for i in Z_n, tied to the root that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    root: RootOfUnity,
    values: Vec<FieldElement>,
}

impl Spectrum {
    /// Wraps raw values; the length must be n.
    pub fn from_values(root: &RootOfUnity, values: Vec<FieldElement>) -> Result<Self> {
        if values.len() != root.n() {
            return Err(Error::InvalidInput(format!(
                "spectrum needs {} values, got {}",
                root.n(),
                values.len()
            )));
        }
        Ok(Self {
            root: root.clone(),
            values,
        })
    }

    pub fn root(&self) -> &RootOfUnity {
        &self.root
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    /// Indices holding a nonzero value.
    pub fn support(&self) -> DefiningSet {
        DefiningSet::from_unsorted(
            self.n(),
            self.values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, _)| i),
        )
    }

    /// Indices where the value vanishes, i.e. D_alpha(f) for a transformed f.
    pub fn zero_set(&self) -> DefiningSet {
        self.support().complement()
    }

    pub fn is_idempotent(&self) -> bool {
        self.values
            .iter()
            .all(|&v| v == FieldElement::ZERO || v == FieldElement::ONE)
    }

    /// Coefficients as a length-n polynomial in the quotient ring, so the
    /// spectrum can itself be shifted, transformed or measured.
    pub fn as_quotient(&self) -> QuotientPoly {
        QuotientPoly::from_vec(self.values.clone())
    }

    /// Coordinatewise product.
    pub fn star(&self, other: &Spectrum) -> Result<Spectrum> {
        if self.root != other.root {
            return Err(Error::RootMismatch);
        }
        let field = self.root.field();
        Ok(Spectrum {
            root: self.root.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| field.mul(a, b))
                .collect(),
        })
    }

    /// Conjugacy closure: values[q*i] = values[i]^q for every i.
    pub fn is_rational(&self) -> bool {
        let n = self.n();
        let q = self.root.q() as usize;
        let field = self.root.field();
        (0..n).all(|i| self.values[q * i % n] == field.frobenius(self.values[i]))
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if self.is_idempotent() {
                write!(f, "{}", v.packed())?;
            } else if v.is_zero() {
                write!(f, "0")?;
            } else {
                match self.root.log(v) {
                    Some(t) => write!(f, "a^{t}")?,
                    None => write!(f, "#{:x}", v.packed())?,
                }
            }
        }
        write!(f, ")")
    }
}

/// values[i] = f(alpha^i).
pub fn dft(f: &QuotientPoly, root: &RootOfUnity) -> Spectrum {
    let n = root.n();
    let field = root.field();
    let values = (0..n)
        .map(|i| {
            let x = root.pow(i as i64);
            f.coeffs().iter().rev().fold(FieldElement::ZERO, |acc, &c| {
                field.add(field.mul(acc, x), c)
            })
        })
        .collect();
    Spectrum {
        root: root.clone(),
        values,
    }
}

/// c_i = n^{-1} * s(alpha^{-i}), reading the spectrum as a polynomial.
pub fn idft(s: &Spectrum) -> QuotientPoly {
    let root = &s.root;
    let n = root.n();
    let field = root.field();
    let n_inv = field
        .inv(field.from_int(n as i64))
        .expect("n is a unit because gcd(n, p) = 1");
    let coeffs = (0..n)
        .map(|i| {
            let x = root.pow(-(i as i64));
            let v = s.values.iter().rev().fold(FieldElement::ZERO, |acc, &c| {
                field.add(field.mul(acc, x), c)
            });
            field.mul(n_inv, v)
        })
        .collect();
    QuotientPoly::from_vec(coeffs)
}

/// F_D: 0 on D, 1 elsewhere. This is the transform of the idempotent
/// generator of the code with defining set D.
pub fn indicator_spectrum(root: &RootOfUnity, defining_set: &DefiningSet) -> Result<Spectrum> {
    let partition = cyclotomic_cosets(root.n(), root.q())?;
    if defining_set.n() != root.n() || !partition.is_closed(defining_set) {
        return Err(Error::NotCosetClosed);
    }
    let values = defining_set
        .flags()
        .into_iter()
        .map(|inside| {
            if inside {
                FieldElement::ZERO
            } else {
                FieldElement::ONE
            }
        })
        .collect();
    Ok(Spectrum {
        root: root.clone(),
        values,
    })
}
