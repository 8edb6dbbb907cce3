//! Sparse Laurent polynomials in `e^{v_1}, ..., e^{v_k}`, i.e. the group
//! algebra of the lattice.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{check_reflection_index, LatticePoint};
use crate::scalar::{self, Scalar};

/// A finite sum `sum_x c_x e^x` with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<LatticePoint, Scalar>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::monomial(LatticePoint::zero(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, scalar::int(1))
    }

    /// `c e^x`.
    pub fn monomial(exponent: LatticePoint, c: Scalar) -> Self {
        let mut p = Self::zero(exponent.rank());
        p.add_term(exponent, c);
        p
    }

    /// `e^{v_i}` (1-based).
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = LatticePoint::zero(nvars);
        e[i - 1] = 1;
        Self::monomial(e, scalar::int(1))
    }

    pub fn from_terms<I: IntoIterator<Item = (LatticePoint, Scalar)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticePoint, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponent: &LatticePoint) -> Scalar {
        self.terms.get(exponent).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, exponent: LatticePoint, c: Scalar) {
        debug_assert_eq!(exponent.rank(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplication by `e^{delta v_i}`.
    pub fn shift(&self, i: usize, delta: i64) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.shifted(i, delta), v.clone()))
                .collect(),
        }
    }

    /// The right Weyl action `P.s_i`, swapping exponent slots `i` and `i+1`.
    pub fn reflect(&self, i: usize) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.reflected(i), v.clone()))
                .collect(),
        }
    }

    /// Exact division by `e^{v_i} - e^{v_{i+1}}`.
    ///
    /// Terms are grouped by their exponent outside slots `i, i+1` and by the
    /// total degree in those two slots; within a group the leading `e^{v_i}`
    /// power is eliminated repeatedly until the lowest power present is
    /// reached, where the remainder must vanish.
    pub fn divide_by_root_binomial(&self, i: usize) -> Result<Self> {
        check_reflection_index(i, self.nvars)?;
        let (s, t) = (i - 1, i);
        let mut groups: BTreeMap<(LatticePoint, i64), BTreeMap<i64, Scalar>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut key = e.clone();
            let total = e[s] + e[t];
            key[s] = 0;
            key[t] = 0;
            groups
                .entry((key, total))
                .or_default()
                .insert(e[s], c.clone());
        }
        let mut quotient = Self::zero(self.nvars);
        for ((base, total), mut coeffs) in groups {
            let lowest = *coeffs.keys().next().expect("nonempty group");
            let highest = *coeffs.keys().next_back().expect("nonempty group");
            for a in ((lowest + 1)..=highest).rev() {
                let c = match coeffs.remove(&a) {
                    Some(c) if !c.is_zero() => c,
                    _ => continue,
                };
                let mut e = base.clone();
                e[s] = a - 1;
                e[t] = total - a;
                quotient.add_term(e, c.clone());
                *coeffs.entry(a - 1).or_insert_with(Scalar::zero) += c;
            }
            if coeffs.get(&lowest).is_some_and(|c| !c.is_zero()) {
                return Err(Error::NonzeroRemainder);
            }
        }
        Ok(quotient)
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{}*e^{:?}", scalar::format(c), e))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        self.scale(&scalar::int(-1))
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<i64> = e1.coords().iter().zip(e2.coords()).map(|(a, b)| a + b).collect();
                out.add_term(LatticePoint::new(e), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
