//! Lazily evaluated functions `L -> Scalar`.
//!
//! Operators such as `T_i` send finitely supported functions to functions of
//! infinite support, so functions are kept as composable evaluators rather
//! than tables. An optional per-function cache makes repeated queries cheap;
//! concurrent writers only ever insert the same value for a key.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::Zero;

use crate::lattice::LatticePoint;
use crate::scalar::Scalar;

type Evaluator = dyn Fn(&LatticePoint) -> Scalar + Send + Sync;

struct Inner {
    rank: usize,
    eval: Box<Evaluator>,
    cache: Option<RwLock<HashMap<LatticePoint, Scalar>>>,
}

/// A function on the lattice `Z^k`. Cloning is cheap and shares the cache.
#[derive(Clone)]
pub struct LatticeFunction {
    inner: Arc<Inner>,
}

impl LatticeFunction {
    pub fn new<F>(rank: usize, f: F) -> Self
    where
        F: Fn(&LatticePoint) -> Scalar + Send + Sync + 'static,
    {
        Self::build(rank, Box::new(f), false)
    }

    pub fn memoized<F>(rank: usize, f: F) -> Self
    where
        F: Fn(&LatticePoint) -> Scalar + Send + Sync + 'static,
    {
        Self::build(rank, Box::new(f), true)
    }

    fn build(rank: usize, eval: Box<Evaluator>, memo: bool) -> Self {
        LatticeFunction {
            inner: Arc::new(Inner {
                rank,
                eval,
                cache: memo.then(|| RwLock::new(HashMap::new())),
            }),
        }
    }

    /// A memoized wrapper around `self`; evaluations agree with `self`.
    pub fn memoize(&self) -> Self {
        if self.is_memoized() {
            return self.clone();
        }
        let f = self.clone();
        Self::memoized(self.rank(), move |x| f.eval(x))
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(rank, |_| Scalar::zero())
    }

    pub fn constant(rank: usize, c: Scalar) -> Self {
        Self::new(rank, move |_| c.clone())
    }

    pub fn rank(&self) -> usize {
        self.inner.rank
    }

    pub fn is_memoized(&self) -> bool {
        self.inner.cache.is_some()
    }

    pub fn cache_len(&self) -> usize {
        self.inner
            .cache
            .as_ref()
            .map_or(0, |c| c.read().expect("cache lock").len())
    }

    pub fn eval(&self, x: &LatticePoint) -> Scalar {
        debug_assert_eq!(x.rank(), self.inner.rank, "point rank mismatch");
        let Some(cache) = &self.inner.cache else {
            return (self.inner.eval)(x);
        };
        if let Some(v) = cache.read().expect("cache lock").get(x) {
            return v.clone();
        }
        // Evaluate without holding the lock: the evaluator may recurse into
        // this same function at other points.
        let v = (self.inner.eval)(x);
        cache
            .write()
            .expect("cache lock")
            .entry(x.clone())
            .or_insert_with(|| v.clone());
        v
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let f = self.clone();
        let c = c.clone();
        Self::new(self.rank(), move |x| &c * f.eval(x))
    }

    pub fn add(&self, other: &LatticeFunction) -> Self {
        let (f, g) = (self.clone(), other.clone());
        Self::new(self.rank(), move |x| f.eval(x) + g.eval(x))
    }

    pub fn sub(&self, other: &LatticeFunction) -> Self {
        let (f, g) = (self.clone(), other.clone());
        Self::new(self.rank(), move |x| f.eval(x) - g.eval(x))
    }

    /// `sum_n c_n f_n`.
    pub fn linear_combination(rank: usize, parts: Vec<(Scalar, LatticeFunction)>) -> Self {
        Self::new(rank, move |x| {
            parts
                .iter()
                .filter(|(c, _)| !c.is_zero())
                .fold(Scalar::zero(), |acc, (c, f)| acc + c * f.eval(x))
        })
    }
}

impl fmt::Debug for LatticeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LatticeFunction")
            .field("rank", &self.rank())
            .field("memoized", &self.is_memoized())
            .field("cached_points", &self.cache_len())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use std::sync::atomic::{AtomicUsize, Ordering};

    #[test]
    fn memoized_agrees_and_caches() {
        let calls = Arc::new(AtomicUsize::new(0));
        let c2 = calls.clone();
        let f = LatticeFunction::memoized(2, move |x| {
            c2.fetch_add(1, Ordering::SeqCst);
            int(x[0] * 10 + x[1])
        });
        let g = LatticeFunction::new(2, |x| int(x[0] * 10 + x[1]));
        let p = LatticePoint::from([3, 4]);
        assert_eq!(f.eval(&p), g.eval(&p));
        assert_eq!(f.eval(&p), int(34));
        assert_eq!(calls.load(Ordering::SeqCst), 1);
        assert_eq!(f.cache_len(), 1);
        assert_eq!(g.memoize().eval(&p), g.eval(&p));
    }

    #[test]
    fn concurrent_evaluation_is_consistent() {
        let f = LatticeFunction::memoized(1, |x| int(x[0] * x[0]));
        std::thread::scope(|s| {
            for t in 0..4 {
                let f = f.clone();
                s.spawn(move || {
                    for m in -20..20 {
                        assert_eq!(f.eval(&LatticePoint::from([m + t - t])), int(m * m));
                    }
                });
            }
        });
        assert_eq!(f.cache_len(), 40);
    }

    #[test]
    fn linear_structure() {
        let f = LatticeFunction::new(1, |x| int(x[0]));
        let g = LatticeFunction::constant(1, int(5));
        let h = LatticeFunction::linear_combination(1, vec![(int(2), f.clone()), (int(3), g.clone())]);
        let p = LatticePoint::from([7]);
        assert_eq!(h.eval(&p), int(29));
        assert_eq!(f.sub(&g).eval(&p), int(2));
        assert_eq!(f.add(&g).scale(&int(-1)).eval(&p), int(-12));
    }
}
