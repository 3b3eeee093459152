//! The tensor algebra `T(V)` with concatenation, the shuffle diagonal, its
//! reduced version, and the two `*`-actions of `T(V)` on `T(V) ⊗ T(V)`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalars::{kernel_basis, LinComb, Scalar, SparseMatrix, SubspaceBasis};
use crate::trees::{Mode, Permutation};

/// A word over generator labels; the empty word is the unit.
///
/// Ordered by length first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Self {
        Self(letters)
    }

    pub fn unit() -> Self {
        Self(Vec::new())
    }

    pub fn letter(i: u32) -> Self {
        Self(vec![i])
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl From<&[u32]> for Word {
    fn from(letters: &[u32]) -> Self {
        Self(letters.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        let sep = if self.0.iter().any(|&l| l >= 10) { "." } else { "" };
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "{sep}")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Basis key of `T(V) ⊗ T(V)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WordPair(pub Word, pub Word);

impl fmt::Display for WordPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}", self.0, self.1)
    }
}

/// Element of `T(V)`.
pub type TensorVector = LinComb<Word>;
/// Element of `T(V) ⊗ T(V)`.
pub type PairVector = LinComb<WordPair>;

pub fn word_vector(letters: &[u32]) -> TensorVector {
    LinComb::basis(Word::from(letters))
}

/// True iff the vector has no component on the empty word.
pub fn is_reduced(x: &TensorVector) -> bool {
    x.get(&Word::unit()).is_none()
}

/// True iff no pair has an empty component.
pub fn is_reduced_pair(xi: &PairVector) -> bool {
    xi.keys().all(|WordPair(a, b)| !a.is_unit() && !b.is_unit())
}

/// Bilinear concatenation product `a • b`.
pub fn concat(a: &TensorVector, b: &TensorVector) -> TensorVector {
    let mut out = LinComb::zero();
    for (u, cu) in a.iter() {
        for (v, cv) in b.iter() {
            out.add_term(u.concat(v), cu * cv);
        }
    }
    out
}

/// `x ⊗ y`.
pub fn tensor(x: &TensorVector, y: &TensorVector) -> PairVector {
    let mut out = LinComb::zero();
    for (u, cu) in x.iter() {
        for (v, cv) in y.iter() {
            out.add_term(WordPair(u.clone(), v.clone()), cu * cv);
        }
    }
    out
}

/// Componentwise product in `T(V) ⊗ T(V)`: `(a⊗b)•(c⊗d) = ac ⊗ bd`.
pub fn pair_product(xi: &PairVector, eta: &PairVector) -> PairVector {
    let mut out = LinComb::zero();
    for (WordPair(a, b), c1) in xi.iter() {
        for (WordPair(c, d), c2) in eta.iter() {
            out.add_term(WordPair(a.concat(c), b.concat(d)), c1 * c2);
        }
    }
    out
}

/// Shuffle diagonal of a single word: all splittings of the letter positions
/// into a left and a right subsequence.
pub fn coproduct_word(w: &Word) -> PairVector {
    let n = w.len();
    let mut out = LinComb::zero();
    for mask in 0usize..(1 << n) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (i, &l) in w.letters().iter().enumerate() {
            if mask >> i & 1 == 1 {
                left.push(l);
            } else {
                right.push(l);
            }
        }
        out.add_term(WordPair(Word(left), Word(right)), Scalar::one());
    }
    out
}

/// Shuffle diagonal `Δ`, extended linearly.
pub fn coproduct(x: &TensorVector) -> PairVector {
    x.map_linear(coproduct_word)
}

/// Reduced diagonal `Δ̄(x) = Δ(x) − 1⊗x − x⊗1` on the augmentation ideal.
pub fn reduced_coproduct(x: &TensorVector) -> Result<PairVector> {
    if !is_reduced(x) {
        return Err(Error::UnitComponent);
    }
    let one = word_vector(&[]);
    Ok(coproduct(x) - tensor(&one, x) - tensor(x, &one))
}

/// Left action `x * ξ = Δ(x) • ξ`.
pub fn act_left(x: &TensorVector, xi: &PairVector) -> PairVector {
    pair_product(&coproduct(x), xi)
}

/// Right action `ξ * x = ξ • (1⊗x + x⊗1)`.
pub fn act_right(xi: &PairVector, x: &TensorVector) -> PairVector {
    let one = word_vector(&[]);
    pair_product(xi, &(tensor(&one, x) + tensor(x, &one)))
}

/// `R(x, y) = x⊗y + y⊗x`.
pub fn r_form(x: &TensorVector, y: &TensorVector) -> PairVector {
    tensor(x, y) + tensor(y, x)
}

/// Basis words of length `n` in the given mode, sorted.
pub fn words(n: usize, mode: Mode) -> Vec<Word> {
    match mode {
        Mode::Multilinear => Permutation::all(n)
            .into_iter()
            .map(|p| Word(p.images().to_vec()))
            .collect(),
        Mode::Alphabet(m) => {
            let m = m as usize;
            let mut out: Vec<Word> = (0..m.pow(n as u32))
                .map(|mut code| {
                    let mut letters = vec![0u32; n];
                    for slot in letters.iter_mut().rev() {
                        *slot = 1 + (code % m) as u32;
                        code /= m;
                    }
                    Word(letters)
                })
                .collect();
            out.sort();
            out
        }
    }
}

/// Matrix of `Δ̄` restricted to the span of `cols`.
pub fn reduced_coproduct_matrix(cols: Vec<Word>) -> SparseMatrix<WordPair, Word> {
    let images: Vec<PairVector> = cols
        .par_iter()
        .map(|w| reduced_coproduct(&LinComb::basis(w.clone())).expect("nonempty word"))
        .collect();
    let mut rows: Vec<WordPair> = images.iter().flat_map(|v| v.keys().cloned()).collect();
    rows.sort();
    rows.dedup();
    SparseMatrix::from_columns(rows, cols, &images).expect("rows cover every image")
}

/// Primitive elements among words of length `n` in the given mode.
pub fn primitive_basis_in(n: usize, mode: Mode) -> Result<SubspaceBasis<Word>> {
    if n == 0 {
        return Err(Error::InvalidArgument("word length must be at least 1".into()));
    }
    Ok(kernel_basis(&reduced_coproduct_matrix(words(n, mode))))
}

/// Reduced basis of `ker Δ̄` on the multilinear words of length `n`.
pub fn primitive_basis(n: usize) -> Result<SubspaceBasis<Word>> {
    primitive_basis_in(n, Mode::Multilinear)
}
