//! The lattice `Z^k`, type `A_{k-1}` root combinatorics and the Weyl group
//! `S_k` acting by coordinate permutations.
//!
//! Indices follow the 1-based convention of the mathematics: `v_1, ..., v_k`
//! span the lattice, `s_i` (with `1 <= i < k`) swaps coordinates `i` and
//! `i + 1`, and the simple root `a_i` is `e_i - e_{i+1}`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The q-integer `[n] = 1 + q + ... + q^{n-1}`.
///
/// Evaluated in polynomial form, so `q = 1` gives `[n] = n`.
pub fn q_integer(n: usize, q: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    let mut pow = Scalar::one();
    for _ in 0..n {
        acc += &pow;
        pow *= q;
    }
    acc
}

/// `[n]! = [1][2]...[n]`, with `[0]! = 1`.
pub fn q_factorial(n: usize, q: &Scalar) -> Scalar {
    (1..=n).fold(Scalar::one(), |acc, a| acc * q_integer(a, q))
}

/// A point `m_1 v_1 + ... + m_k v_k` of the lattice.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn zero(k: usize) -> Self {
        LatticePoint(vec![0; k])
    }

    /// The basis vector `v_i`.
    pub fn basis(k: usize, i: usize) -> Result<Self> {
        check_index(i, k)?;
        let mut coords = vec![0; k];
        coords[i - 1] = 1;
        Ok(LatticePoint(coords))
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    /// `e_i(x)`, 1-based.
    pub fn coord(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    /// `x + delta * v_i` (1-based `i`).
    pub fn shifted(&self, i: usize, delta: i64) -> Self {
        let mut out = self.clone();
        out.0[i - 1] += delta;
        out
    }

    /// The reflection `s_i x`, swapping coordinates `i` and `i + 1`.
    pub fn reflected(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.0.swap(i - 1, i);
        out
    }

    /// True if `x` lies in the closed fundamental chamber, i.e. `m_1 >= ... >= m_k`.
    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// The unique dominant point of the orbit `W x`.
    pub fn sorted_dominant(&self) -> Self {
        let mut coords = self.0.clone();
        coords.sort_unstable_by(|a, b| b.cmp(a));
        LatticePoint(coords)
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Index<usize> for LatticePoint {
    type Output = i64;

    /// 0-based storage access.
    fn index(&self, idx: usize) -> &i64 {
        &self.0[idx]
    }
}

impl IndexMut<usize> for LatticePoint {
    fn index_mut(&mut self, idx: usize) -> &mut i64 {
        &mut self.0[idx]
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }
}

impl<const N: usize> From<[i64; N]> for LatticePoint {
    fn from(coords: [i64; N]) -> Self {
        LatticePoint(coords.to_vec())
    }
}

fn check_index(i: usize, max: usize) -> Result<()> {
    if i == 0 || i > max {
        return Err(Error::IndexOutOfRange { index: i, max });
    }
    Ok(())
}

pub(crate) fn check_reflection_index(i: usize, k: usize) -> Result<()> {
    check_index(i, k.saturating_sub(1))
}

pub(crate) fn check_basis_index(i: usize, k: usize) -> Result<()> {
    check_index(i, k)
}

/// `a_i(x) = m_i - m_{i+1}`.
pub fn simple_root_value(i: usize, x: &LatticePoint) -> Result<i64> {
    check_reflection_index(i, x.rank())?;
    Ok(x.coord(i) - x.coord(i + 1))
}

/// A permutation of `{1, ..., k}`, stored 0-based as images.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation((0..k).collect())
    }

    /// Builds from 1-based images, e.g. `[2, 1, 3]`.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        let mut out = Vec::with_capacity(k);
        for &img in images {
            if img == 0 || img > k || seen[img - 1] {
                return None;
            }
            seen[img - 1] = true;
            out.push(img - 1);
        }
        Some(Permutation(out))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `sigma(i)`, 1-based in and out.
    pub fn image(&self, i: usize) -> usize {
        self.0[i - 1] + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v + 1).collect()
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn inversions(&self) -> usize {
        let p = &self.0;
        (0..p.len())
            .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count()
    }

    /// The action `w x` on lattice points: `(w x)_{sigma(i)} = x_i`.
    pub fn act(&self, x: &LatticePoint) -> LatticePoint {
        let mut out = vec![0; x.rank()];
        for (i, &img) in self.0.iter().enumerate() {
            out[img] = x[i];
        }
        LatticePoint(out)
    }
}

/// A word `s_{i_1} s_{i_2} ... s_{i_r}` in the simple reflections together
/// with the permutation it represents.
///
/// Words built by this module are reduced: their length equals the number of
/// inversions of the permutation.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct WeylWord {
    letters: Vec<usize>,
    permutation: Permutation,
}

impl WeylWord {
    pub fn identity(k: usize) -> Self {
        WeylWord {
            letters: Vec::new(),
            permutation: Permutation::identity(k),
        }
    }

    /// Builds a word from letters, computing its permutation. The word is
    /// rejected unless it is reduced.
    pub fn from_letters(k: usize, letters: Vec<usize>) -> Result<Self> {
        let mut perm = Permutation::identity(k);
        // Letters act right to left on v_1..v_k.
        for &i in letters.iter().rev() {
            check_reflection_index(i, k)?;
            let swap = Permutation::simple_transposition(k, i);
            perm = swap.compose(&perm);
        }
        let word = WeylWord {
            letters,
            permutation: perm,
        };
        if word.letters.len() != word.permutation.inversions() {
            return Err(Error::ConstraintNotSatisfied("reduced word"));
        }
        Ok(word)
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn permutation(&self) -> &Permutation {
        &self.permutation
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `w x`, computed by applying the letters right to left.
    pub fn act(&self, x: &LatticePoint) -> LatticePoint {
        self.letters
            .iter()
            .rev()
            .fold(x.clone(), |acc, &i| acc.reflected(i))
    }
}

impl Permutation {
    fn simple_transposition(k: usize, i: usize) -> Permutation {
        let mut p: Vec<usize> = (0..k).collect();
        p.swap(i - 1, i);
        Permutation(p)
    }
}

/// The shortest `w_x` with `w_x x` weakly decreasing.
///
/// Built by a stable bubble sort that never swaps equal coordinates, so each
/// swap removes exactly one inversion and the resulting word is reduced.
pub fn shortest_chamber_word(x: &LatticePoint) -> WeylWord {
    let k = x.rank();
    let mut cur = x.coords().to_vec();
    let mut swaps = Vec::new();
    let mut perm = Permutation::identity(k);
    // Insertion sort: move each coordinate left past strictly smaller ones.
    for start in 1..k {
        let mut pos = start;
        while pos > 0 && cur[pos - 1] < cur[pos] {
            cur.swap(pos - 1, pos);
            // Reflection s_pos (1-based) swaps 0-based slots pos-1 and pos.
            swaps.push(pos);
            perm = Permutation::simple_transposition(k, pos).compose(&perm);
            pos -= 1;
        }
    }
    swaps.reverse();
    WeylWord {
        letters: swaps,
        permutation: perm,
    }
}

/// `(d^+, d^-)`: for each `i`, the number of later (resp. earlier) indices
/// with the same coordinate.
pub fn descent_counts(x: &LatticePoint) -> (Vec<usize>, Vec<usize>) {
    let c = x.coords();
    let k = c.len();
    let mut plus = vec![0; k];
    let mut minus = vec![0; k];
    for i in 0..k {
        for j in i + 1..k {
            if c[i] == c[j] {
                plus[i] += 1;
                minus[j] += 1;
            }
        }
    }
    (plus, minus)
}

/// Run lengths `(c_1, ..., c_M)` of equal coordinates of a dominant point.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClusterCoordinate(Vec<usize>);

impl ClusterCoordinate {
    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Half-open 0-based index ranges of each cluster within the point.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.0
            .iter()
            .map(|&c| {
                let r = start..start + c;
                start += c;
                r
            })
            .collect()
    }
}

pub fn cluster_coordinate(x: &LatticePoint) -> Result<ClusterCoordinate> {
    if !x.is_dominant() {
        return Err(Error::NotDominant(x.coords().to_vec()));
    }
    let mut sizes: Vec<usize> = Vec::new();
    let c = x.coords();
    for (i, v) in c.iter().enumerate() {
        if i > 0 && c[i - 1] == *v {
            *sizes.last_mut().expect("nonempty") += 1;
        } else {
            sizes.push(1);
        }
    }
    Ok(ClusterCoordinate(sizes))
}

/// Positive roots `e_i - e_j` (`i < j`) that are negative on `x`, as 1-based pairs.
pub fn inversion_set(x: &LatticePoint) -> Vec<(usize, usize)> {
    let c = x.coords();
    let mut out = Vec::new();
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            if c[i] < c[j] {
                out.push((i + 1, j + 1));
            }
        }
    }
    out
}

/// Index blocks `J_1, ..., J_N` of equal coordinates (1-based, each sorted,
/// blocks ordered by their smallest member).
pub fn equal_coordinate_blocks(x: &LatticePoint) -> Vec<Vec<usize>> {
    let mut blocks: Vec<(i64, Vec<usize>)> = Vec::new();
    for (i, &v) in x.coords().iter().enumerate() {
        match blocks.iter_mut().find(|(val, _)| *val == v) {
            Some((_, b)) => b.push(i + 1),
            None => blocks.push((v, vec![i + 1])),
        }
    }
    blocks.into_iter().map(|(_, b)| b).collect()
}
