//! The discrete Hamiltonian `H`, the free operator `Delta = X_1 + ... + X_k`,
//! the propagation operator `G` and the Bethe wave functions.
//!
//! `H` is local: at a point `x` it only sees the blocks of equal coordinates
//! of `x`, and on a block `J = {j_1 < ... < j_m}` it acts by
//!
//! ```text
//! H_J = -ag sum_{d=1}^{m-1} [d] / (1 + bg[d])
//!     + sum_{r=1}^{m} (-bd)^{r-1} [r-1]! q^{-r(r-1)/2} / prod_{p<r} (1 + bg[m-1-p])
//!         * e_r(X_{j_1}, q X_{j_2}, ..., q^{m-1} X_{j_m})
//! ```
//!
//! Three independent routes to `H` are provided: the block decomposition
//! above ([`apply_h`]), the global double sum over equal-coordinate index
//! tuples ([`apply_h_global`]) and the product form in `a + b q^{p-1} X`
//! ([`apply_h_rewritten`], needs `beta != 0`).

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::function::LatticeFunction;
use crate::laurent::LaurentPolynomial;
use crate::lattice::{
    check_basis_index, descent_counts, equal_coordinate_blocks, q_factorial, q_integer,
    shortest_chamber_word, LatticePoint,
};
use crate::operators::{apply_t, apply_x_polynomial};
use crate::params::Params;
use crate::scalar::{self, checked_div, checked_inv, powi, Scalar};

/// The partition of `{1, ..., k}` into blocks of equal coordinates of a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterDecomposition {
    blocks: Vec<Vec<usize>>,
}

impl ClusterDecomposition {
    pub fn of(x: &LatticePoint) -> Self {
        ClusterDecomposition {
            blocks: equal_coordinate_blocks(x),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

/// Scalar data of `H_J` that depends only on `m = |J|`.
#[derive(Clone, Debug)]
struct BlockCoefficients {
    /// `-ag sum_{d=1}^{m-1} [d]/(1+bg[d])`
    constant: Scalar,
    /// `coeff[r-1]` multiplies `e_r(X_{j_1}, q X_{j_2}, ...)`.
    coeff: Vec<Scalar>,
}

fn block_coefficients(m: usize, params: &Params) -> Result<BlockCoefficients> {
    let q = params.q();
    let ag = &params.alpha * &params.gamma;
    let neg_bd = -(&params.beta * &params.delta);
    let mut constant = Scalar::zero();
    for d in 1..m {
        let den = params.hamiltonian_factor(d);
        if den.is_zero() {
            return Err(Error::StandingAssumption { n: d });
        }
        constant -= &ag * q_integer(d, &q) / den;
    }
    let mut coeff = Vec::with_capacity(m);
    for r in 1..=m {
        let mut den = Scalar::one();
        for p in 0..r {
            let f = params.hamiltonian_factor(m - 1 - p);
            if f.is_zero() {
                return Err(Error::StandingAssumption { n: m - 1 - p });
            }
            den *= f;
        }
        let tri = (r * (r - 1) / 2) as i64;
        let num = powi(&neg_bd, r as i64 - 1)? * q_factorial(r - 1, &q) * powi(&q, -tri)?;
        coeff.push(num / den);
    }
    Ok(BlockCoefficients { constant, coeff })
}

fn validate_block(j: &[usize], k: usize) -> Result<()> {
    if j.is_empty() {
        return Err(Error::ConstraintNotSatisfied("nonempty index set"));
    }
    for &i in j {
        check_basis_index(i, k)?;
    }
    if !j.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::ConstraintNotSatisfied("strictly increasing index set"));
    }
    Ok(())
}

/// The operator `H_J` written as a polynomial in the shifts `X_j`.
pub fn h_j_symbol(j: &[usize], params: &Params) -> Result<LaurentPolynomial> {
    let k = params.k;
    validate_block(j, k)?;
    let m = j.len();
    let c = block_coefficients(m, params)?;
    let q = params.q();
    let mut sym = LaurentPolynomial::constant(k, c.constant.clone());
    for r in 1..=m {
        for positions in (0..m).combinations(r) {
            let mut e = LatticePoint::zero(k);
            let mut weight = Scalar::one();
            for &b in &positions {
                e[j[b] - 1] += 1;
                weight *= powi(&q, b as i64)?;
            }
            sym.add_term(e, &c.coeff[r - 1] * weight);
        }
    }
    Ok(sym)
}

/// `H_J f` for a strictly increasing nonempty index set `J`.
pub fn apply_h_j(j: &[usize], f: &LatticeFunction, params: &Params) -> Result<LatticeFunction> {
    Ok(apply_x_polynomial(&h_j_symbol(j, params)?, f))
}

/// `H_J` in the product form
/// `-(a/b) m + (1/b) sum_r (-d)^{r-1}[r-1]! / prod_{p=1}^{r}(1+bg[p-1])
///   sum_{b_1<...<b_r} q^{sum (b_p - m)} prod_p (a + b q^{p-1} X_{j_{b_p}})`.
pub fn h_j_rewritten_symbol(j: &[usize], params: &Params) -> Result<LaurentPolynomial> {
    let k = params.k;
    validate_block(j, k)?;
    if params.beta.is_zero() {
        return Err(Error::BetaZero);
    }
    let m = j.len();
    let q = params.q();
    let inv_beta = checked_inv(&params.beta)?;
    let neg_d = -params.delta.clone();
    let mut sym = LaurentPolynomial::constant(k, -(&params.alpha * &inv_beta) * scalar::int(m as i64));
    for r in 1..=m {
        let mut den = Scalar::one();
        for p in 1..=r {
            den *= params.hamiltonian_factor(p - 1);
        }
        let outer = checked_div(&(powi(&neg_d, r as i64 - 1)? * q_factorial(r - 1, &q)), &den)? * &inv_beta;
        for b in (1..=m).combinations(r) {
            let exp: i64 = b.iter().map(|&bp| bp as i64 - m as i64).sum();
            let mut prod = LaurentPolynomial::constant(k, &outer * powi(&q, exp)?);
            for (p, &bp) in b.iter().enumerate() {
                let factor = &LaurentPolynomial::constant(k, params.alpha.clone())
                    + &LaurentPolynomial::variable(k, j[bp - 1]).scale(&(&params.beta * powi(&q, p as i64)?));
                prod = &prod * &factor;
            }
            sym = &sym + &prod;
        }
    }
    Ok(sym)
}

pub fn apply_h_j_rewritten(j: &[usize], f: &LatticeFunction, params: &Params) -> Result<LatticeFunction> {
    Ok(apply_x_polynomial(&h_j_rewritten_symbol(j, params)?, f))
}

/// `(Hf)(x) = sum_n (H_{J_n} f)(x)` over the equal-coordinate blocks of `x`.
pub fn apply_h(f: &LatticeFunction, params: &Params) -> Result<LatticeFunction> {
    let k = f.rank();
    let params = params.with_k(k);
    let table: Vec<BlockCoefficients> = (1..=k)
        .map(|m| block_coefficients(m, &params))
        .collect::<Result<_>>()?;
    let q_pows: Vec<Scalar> = (0..k as i64).map(|e| powi(&params.q(), e)).collect::<Result<_>>()?;
    let f = f.clone();
    Ok(LatticeFunction::new(k, move |x| {
        let fx = f.eval(x);
        let mut total = Scalar::zero();
        for block in equal_coordinate_blocks(x) {
            let c = &table[block.len() - 1];
            total += &c.constant * &fx;
            for r in 1..=block.len() {
                for positions in (0..block.len()).combinations(r) {
                    let mut y = x.clone();
                    let mut w = c.coeff[r - 1].clone();
                    for &b in &positions {
                        y[block[b] - 1] -= 1;
                        w *= &q_pows[b];
                    }
                    total += w * f.eval(&y);
                }
            }
        }
        total
    }))
}

/// `H` from its global definition: a sum over all index tuples
/// `j_1 < ... < j_r` weighted by `delta_{j_1...j_r}(x)`, `q^{sum d^-}` and
/// denominators in `d^+ + d^-`.
pub fn apply_h_global(f: &LatticeFunction, params: &Params) -> Result<LatticeFunction> {
    let k = f.rank();
    let params = params.with_k(k);
    params.check_standing_assumption(k)?;
    let q = params.q();
    if q.is_zero() && k > 1 {
        return Err(Error::DivisionByZero);
    }
    let ag = &params.alpha * &params.gamma;
    let neg_bd = -(&params.beta * &params.delta);
    let f = f.clone();
    Ok(LatticeFunction::new(k, move |x| {
        let (dp, dm) = descent_counts(x);
        let c = x.coords();
        let fx = f.eval(x);
        let mut total = Scalar::zero();
        for &d in &dp {
            total -= &ag * q_integer(d, &q) / params.hamiltonian_factor(d) * &fx;
        }
        for r in 1..=k {
            let tri = (r * (r - 1) / 2) as i64;
            let lead = powi(&neg_bd, r as i64 - 1).expect("integer power")
                * q_factorial(r - 1, &q)
                * powi(&q, -tri).expect("q != 0");
            for tuple in (0..k).combinations(r) {
                if !tuple.iter().all(|&j| c[j] == c[tuple[0]]) {
                    continue;
                }
                let spread = dp[tuple[0]] + dm[tuple[0]];
                let mut den = Scalar::one();
                for p in 0..r {
                    den *= params.hamiltonian_factor(spread - p);
                }
                let q_exp: usize = tuple.iter().map(|&j| dm[j]).sum();
                let mut y = x.clone();
                for &j in &tuple {
                    y[j] -= 1;
                }
                total += &lead * powi(&q, q_exp as i64).expect("integer power") / den * f.eval(&y);
            }
        }
        total
    }))
}

/// `H` assembled block by block from the product form of `H_J`.
pub fn apply_h_rewritten(f: &LatticeFunction, params: &Params) -> Result<LatticeFunction> {
    let k = f.rank();
    let params = params.with_k(k);
    if params.beta.is_zero() {
        return Err(Error::BetaZero);
    }
    params.check_standing_assumption(k)?;
    let f = f.clone();
    let symbols: Arc<Mutex<HashMap<Vec<usize>, LaurentPolynomial>>> = Arc::default();
    Ok(LatticeFunction::new(k, move |x| {
        let mut total = Scalar::zero();
        for block in equal_coordinate_blocks(x) {
            let sym = symbols
                .lock()
                .expect("symbol cache")
                .entry(block.clone())
                .or_insert_with(|| h_j_rewritten_symbol(&block, &params).expect("validated parameters"))
                .clone();
            total += sym.terms().fold(Scalar::zero(), |acc, (e, c)| {
                let y: Vec<i64> = x.coords().iter().zip(e.coords()).map(|(a, b)| a - b).collect();
                acc + c * f.eval(&LatticePoint::new(y))
            });
        }
        total
    }))
}

/// `(Delta f)(x) = sum_i f(x - v_i)`.
pub fn apply_delta(f: &LatticeFunction) -> LatticeFunction {
    let f = f.clone();
    LatticeFunction::new(f.rank(), move |x| {
        (1..=x.rank()).fold(Scalar::zero(), |acc, i| acc + f.eval(&x.shifted(i, -1)))
    })
}

type ChainCache = Arc<Mutex<HashMap<Vec<usize>, LatticeFunction>>>;

/// The propagation operator: `G(f)(x) = (T_{w_x} f)(w_x x)`.
///
/// The chains `T_{i_j} ... T_{i_r} f` are shared between query points whose
/// chamber words have a common suffix, so their memo caches are reused.
pub fn propagate(f: &LatticeFunction, params: &Params) -> LatticeFunction {
    let f = f.clone();
    let params = params.clone();
    let chains: ChainCache = Arc::default();
    LatticeFunction::memoized(f.rank(), move |x| {
        let w = shortest_chamber_word(x);
        let g = chain(&chains, w.letters(), &f, &params);
        g.eval(&w.act(x))
    })
}

fn chain(cache: &ChainCache, letters: &[usize], f: &LatticeFunction, params: &Params) -> LatticeFunction {
    if letters.is_empty() {
        return f.clone();
    }
    if let Some(g) = cache.lock().expect("chain cache").get(letters) {
        return g.clone();
    }
    let inner = chain(cache, &letters[1..], f, params);
    let g = apply_t(letters[0], &inner, params).expect("chamber words use valid letters");
    cache
        .lock()
        .expect("chain cache")
        .entry(letters.to_vec())
        .or_insert(g)
        .clone()
}

/// Bethe wave function data for spectral parameters `p_1, ..., p_k`.
///
/// The amplitude of each permutation `sigma` is
/// `prod_{i<j} (1 + (a + b p_{sigma(j)})(c + d p_{sigma(i)}) / (p_{sigma(j)} - p_{sigma(i)}))`.
#[derive(Clone, Debug)]
pub struct BetheFunction {
    p: Vec<Scalar>,
    inv_p: Vec<Scalar>,
    terms: Vec<(Vec<usize>, Scalar)>,
}

impl BetheFunction {
    pub fn new(p: &[Scalar], params: &Params) -> Result<Self> {
        let k = p.len();
        for (i, pi) in p.iter().enumerate() {
            if pi.is_zero() || p[i + 1..].contains(pi) {
                return Err(Error::DegenerateSpectrum);
            }
        }
        let mut terms = Vec::new();
        for sigma in (0..k).permutations(k) {
            let mut amp = Scalar::one();
            for i in 0..k {
                for j in i + 1..k {
                    let (pi, pj) = (&p[sigma[i]], &p[sigma[j]]);
                    let num = (&params.alpha + &params.beta * pj) * (&params.gamma + &params.delta * pi);
                    amp *= Scalar::one() + num / (pj - pi);
                }
            }
            terms.push((sigma, amp));
        }
        Ok(BetheFunction {
            inv_p: p.iter().map(|v| Scalar::one() / v).collect(),
            p: p.to_vec(),
            terms,
        })
    }

    pub fn rank(&self) -> usize {
        self.p.len()
    }

    /// `sum_i p_i`.
    pub fn eigenvalue(&self) -> Scalar {
        self.p.iter().fold(Scalar::zero(), |a, b| a + b)
    }

    /// The unsymmetrized plane-wave sum `h_p(x)` at any lattice point.
    pub fn plane_wave(&self, x: &LatticePoint) -> Scalar {
        self.terms.iter().fold(Scalar::zero(), |acc, (sigma, amp)| {
            let mut v = amp.clone();
            for (i, &s) in sigma.iter().enumerate() {
                v *= powi(&self.inv_p[s], x[i]).expect("p nonzero");
            }
            acc + v
        })
    }

    /// `Phi_p(x)`, the symmetric extension of `h_p` restricted to the chamber.
    pub fn value(&self, x: &LatticePoint) -> Scalar {
        self.plane_wave(&x.sorted_dominant())
    }

    pub fn to_function(&self) -> LatticeFunction {
        let me = self.clone();
        LatticeFunction::memoized(self.rank(), move |x| me.value(x))
    }

    pub fn to_plane_wave_function(&self) -> LatticeFunction {
        let me = self.clone();
        LatticeFunction::memoized(self.rank(), move |x| me.plane_wave(x))
    }
}

/// `Phi_p(x)` for distinct nonzero `p`.
pub fn bethe_phi(p: &[Scalar], x: &LatticePoint, params: &Params) -> Result<Scalar> {
    if p.len() != x.rank() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            actual: x.rank(),
        });
    }
    Ok(BetheFunction::new(p, params)?.value(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{apply_x, delta_function};
    use crate::scalar::{int, ratio};

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c.to_vec())
    }

    fn params(k: usize) -> Params {
        Params::new(ratio(2, 3), ratio(-1, 2), ratio(5, 4), ratio(3, 7), k).unwrap()
    }

    fn probe(k: usize) -> LatticeFunction {
        // A generic function with distinct values everywhere nearby.
        LatticeFunction::new(k, |x| {
            let mut v = int(1);
            for (i, c) in x.coords().iter().enumerate() {
                v += ratio(c * c + (i as i64 + 2) * c, (i as i64) + 3);
            }
            v.clone() * v + ratio(x.sum(), 7)
        })
    }

    #[test]
    fn singleton_block_is_a_shift() {
        let p = params(3);
        let f = probe(3);
        let h = apply_h_j(&[2], &f, &p).unwrap();
        let x = apply_x(2, &f).unwrap();
        for y in [pt(&[0, 0, 0]), pt(&[1, -2, 3])] {
            assert_eq!(h.eval(&y), x.eval(&y));
        }
    }

    #[test]
    fn two_block_hand_expansion() {
        let p = params(2);
        let f = probe(2);
        let q = p.q();
        let bg1 = int(1) + &p.beta * &p.gamma;
        let expected = -(&p.alpha * &p.gamma) / &bg1 * f.eval(&pt(&[0, 0]))
            + (f.eval(&pt(&[-1, 0])) + &q * f.eval(&pt(&[0, -1]))) / &bg1
            - &p.beta * &p.delta / &q * &q * f.eval(&pt(&[-1, -1])) / &bg1;
        let h = apply_h_j(&[1, 2], &f, &p).unwrap();
        assert_eq!(h.eval(&pt(&[0, 0])), expected);
        let hr = apply_h_j_rewritten(&[1, 2], &f, &p).unwrap();
        assert_eq!(hr.eval(&pt(&[0, 0])), expected);
    }

    #[test]
    fn rewritten_singleton_telescopes() {
        let p = params(2);
        let sym = h_j_rewritten_symbol(&[1], &p).unwrap();
        assert_eq!(sym, LaurentPolynomial::variable(2, 1));
    }

    #[test]
    fn rewritten_rejects_beta_zero() {
        let p = Params::new(int(1), int(0), int(2), int(3), 2).unwrap();
        assert_eq!(h_j_rewritten_symbol(&[1, 2], &p), Err(Error::BetaZero));
    }

    #[test]
    fn invalid_blocks() {
        let p = params(3);
        assert!(h_j_symbol(&[], &p).is_err());
        assert!(h_j_symbol(&[2, 1], &p).is_err());
        assert!(h_j_symbol(&[1, 4], &p).is_err());
    }

    #[test]
    fn hamiltonian_small_cases() {
        let p = params(1);
        let f = probe(1);
        let h = apply_h(&f, &p).unwrap();
        assert_eq!(h.eval(&pt(&[4])), f.eval(&pt(&[3])));

        let p = params(2);
        let f = probe(2);
        let h = apply_h(&f, &p).unwrap();
        assert_eq!(h.eval(&pt(&[1, 0])), f.eval(&pt(&[0, 0])) + f.eval(&pt(&[1, -1])));
    }

    #[test]
    fn three_forms_agree() {
        let p = params(4);
        let f = probe(4);
        let a = apply_h(&f, &p).unwrap();
        let b = apply_h_global(&f, &p).unwrap();
        let c = apply_h_rewritten(&f, &p).unwrap();
        for x in [pt(&[0, 0, 0, 0]), pt(&[1, 1, 0, 1]), pt(&[2, -1, 2, -1]), pt(&[3, 2, 1, 0])] {
            assert_eq!(a.eval(&x), b.eval(&x), "{x:?}");
            assert_eq!(a.eval(&x), c.eval(&x), "{x:?}");
        }
    }

    #[test]
    fn delta_operator() {
        let f = probe(1);
        let d = apply_delta(&f);
        assert_eq!(d.eval(&pt(&[5])), f.eval(&pt(&[4])));
        let y = pt(&[0, 1, -1]);
        let dd = apply_delta(&delta_function(&y));
        for i in 1..=3 {
            assert_eq!(dd.eval(&y.shifted(i, 1)), int(1));
        }
        assert_eq!(dd.eval(&y), int(0));
    }

    #[test]
    fn propagation_examples() {
        let p = params(2);
        let f = delta_function(&pt(&[1, 0]));
        let g = propagate(&f, &p);
        assert_eq!(g.eval(&pt(&[1, 0])), int(1));
        assert_eq!(g.eval(&pt(&[0, 1])), &p.alpha * &p.delta);
        assert_eq!(g.eval(&pt(&[3, 3])), int(0));
    }

    #[test]
    fn bethe_examples() {
        let p = params(1);
        let two = int(2);
        assert_eq!(bethe_phi(std::slice::from_ref(&two), &pt(&[3]), &p).unwrap(), ratio(1, 8));
        assert_eq!(bethe_phi(&[two], &pt(&[-2]), &p).unwrap(), int(4));

        let p = params(2);
        let (p1, p2) = (ratio(3, 2), ratio(-2, 5));
        let expected = (int(1) + (&p.alpha + &p.beta * &p2) * (&p.gamma + &p.delta * &p1) / (&p2 - &p1))
            + (int(1) + (&p.alpha + &p.beta * &p1) * (&p.gamma + &p.delta * &p2) / (&p1 - &p2));
        assert_eq!(bethe_phi(&[p1, p2], &pt(&[0, 0]), &p).unwrap(), expected);
    }

    #[test]
    fn bethe_rejects_degenerate_spectrum() {
        let p = params(2);
        assert_eq!(
            bethe_phi(&[int(1), int(1)], &pt(&[0, 0]), &p),
            Err(Error::DegenerateSpectrum)
        );
        assert_eq!(
            bethe_phi(&[int(0), int(1)], &pt(&[0, 0]), &p),
            Err(Error::DegenerateSpectrum)
        );
    }
}
