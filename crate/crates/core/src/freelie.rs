//! Free Lie algebras through Lyndon words: standard bracketings, their
//! evaluation in the pre-Lie and tensor algebras, and Witt dimensions.

use std::fmt;

use crate::error::{Error, Result};
use crate::prelie::{bracket, TreeVector};
use crate::scalars::int;
use crate::shuffle::{concat, word_vector, TensorVector};
use crate::trees::{DecoratedTree, Mode, Permutation, VertexLabel};

/// True iff `w` is nonempty and strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[u32]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LyndonWord(Vec<u32>);

impl LyndonWord {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if !is_lyndon(&letters) || letters.contains(&0) {
            return Err(Error::NotLyndon(letters));
        }
        Ok(Self(letters))
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.iter().any(|&l| l >= 10) { "." } else { "" };
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(sep))
    }
}

/// All Lyndon words of length `n` over `{1..m}`, in lexicographic order.
pub fn lyndon_words(m: u32, n: usize) -> Result<Vec<LyndonWord>> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument(
            "alphabet size and length must be at least 1".into(),
        ));
    }
    // Duval's generation of Lyndon words of length ≤ n, filtered by length.
    let mut out = Vec::new();
    let mut w: Vec<u32> = vec![1];
    while !w.is_empty() {
        if w.len() == n {
            out.push(LyndonWord(w.clone()));
        }
        let k = w.len();
        while w.len() < n {
            w.push(w[w.len() - k]);
        }
        while w.last() == Some(&m) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    Ok(out)
}

/// Lyndon words that are permutations of `1..n`; exactly those starting with `1`.
pub fn multilinear_lyndon_words(n: usize) -> Result<Vec<LyndonWord>> {
    if n == 0 {
        return Err(Error::InvalidArgument("length must be at least 1".into()));
    }
    Ok(Permutation::all(n)
        .into_iter()
        .map(|p| p.images().to_vec())
        .filter(|w| is_lyndon(w))
        .map(LyndonWord)
        .collect())
}

/// Lyndon words indexing a free-Lie basis of the given component.
pub fn lyndon_basis_words(n: usize, mode: Mode) -> Result<Vec<LyndonWord>> {
    match mode {
        Mode::Multilinear => multilinear_lyndon_words(n),
        Mode::Alphabet(m) => lyndon_words(m, n),
    }
}

/// Binary bracket expression with generator leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BracketExpr {
    Letter(u32),
    Bracket(Box<BracketExpr>, Box<BracketExpr>),
}

impl BracketExpr {
    pub fn letter(i: u32) -> Self {
        Self::Letter(i)
    }

    pub fn bracket(a: BracketExpr, b: BracketExpr) -> Self {
        Self::Bracket(Box::new(a), Box::new(b))
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            Self::Letter(i) => out.push(*i),
            Self::Bracket(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }
}

impl fmt::Display for BracketExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Letter(i) => write!(f, "{i}"),
            Self::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// Bracketing by the standard factorization `w = uv`, `v` the longest proper Lyndon suffix.
pub fn standard_bracketing(w: &LyndonWord) -> BracketExpr {
    fn go(w: &[u32]) -> BracketExpr {
        if w.len() == 1 {
            return BracketExpr::Letter(w[0]);
        }
        let split = (1..w.len())
            .find(|&i| is_lyndon(&w[i..]))
            .expect("last letter is Lyndon");
        BracketExpr::bracket(go(&w[..split]), go(&w[split..]))
    }
    go(&w.0)
}

/// Checks the word and brackets it.
pub fn standard_bracketing_of(letters: &[u32]) -> Result<BracketExpr> {
    Ok(standard_bracketing(&LyndonWord::new(letters.to_vec())?))
}

/// Evaluates with commutators of the grafting product.
pub fn eval_in_prelie(e: &BracketExpr) -> Result<TreeVector> {
    match e {
        BracketExpr::Letter(i) => Ok(TreeVector::from_tree(DecoratedTree::leaf(VertexLabel::ordinary(*i)?))),
        BracketExpr::Bracket(a, b) => bracket(&eval_in_prelie(a)?, &eval_in_prelie(b)?),
    }
}

/// Evaluates with commutators of concatenation.
pub fn eval_in_tensor(e: &BracketExpr) -> TensorVector {
    match e {
        BracketExpr::Letter(i) => word_vector(&[*i]),
        BracketExpr::Bracket(a, b) => {
            let (x, y) = (eval_in_tensor(a), eval_in_tensor(b));
            concat(&x, &y) - concat(&y, &x)
        }
    }
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimension of the length-`n` part of the free Lie algebra on `m` generators.
pub fn witt_dimension(m: u64, n: u64) -> Result<u64> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("rank and degree must be at least 1".into()));
    }
    let overflow = || Error::InvalidArgument(format!("Witt number ({m}, {n}) overflows"));
    let mut sum: i128 = 0;
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let power = (m as i128).checked_pow((n / d) as u32).ok_or_else(overflow)?;
        sum = sum.checked_add(mobius(d) as i128 * power).ok_or_else(overflow)?;
    }
    Ok((sum / n as i128) as u64)
}

/// The Lie element `ξ_{u,v,w}`: four chains and two cherries.
pub fn xi_element(u: u32, v: u32, w: u32) -> Result<TreeVector> {
    let leaf = |i: u32| -> Result<DecoratedTree> { Ok(DecoratedTree::leaf(VertexLabel::ordinary(i)?)) };
    let node = |i: u32, kids: Vec<DecoratedTree>| -> Result<DecoratedTree> {
        Ok(DecoratedTree::new(VertexLabel::ordinary(i)?, kids))
    };
    let chain = |a, b, c| -> Result<DecoratedTree> { node(a, vec![node(b, vec![leaf(c)?])?]) };
    let cherry = |a, b, c| -> Result<DecoratedTree> { node(a, vec![leaf(b)?, leaf(c)?]) };
    let terms: Vec<(i64, DecoratedTree)> = vec![
        (1, chain(u, v, w)?),
        (-1, chain(u, w, v)?),
        (-1, chain(v, w, u)?),
        (1, chain(w, v, u)?),
        (-1, cherry(v, u, w)?),
        (1, cherry(w, u, v)?),
    ];
    TreeVector::from_terms(0, terms.into_iter().map(|(c, t)| (t, int(c))))
}
