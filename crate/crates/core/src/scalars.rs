//! Exact rational scalars, sparse linear combinations over ordered bases, and
//! exact sparse linear algebra (rank, kernels, subspace comparison).
//!
//! Elimination runs over the integers: every row is scaled to a primitive
//! integer vector and combined fraction-free, pivoting on the sparsest
//! remaining column. Rationals only reappear during back-substitution.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// Shorthand for an integer-valued scalar.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Renders a scalar as `num/den`, e.g. `-1/1` or `3/2`.
pub fn format_fraction(q: &Scalar) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// A finite linear combination of basis keys with nonzero rational coefficients.
///
/// Keys are kept in their `Ord` order, which doubles as the deterministic basis
/// order used by every echelon form in this crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<K: Ord> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_term(key: K, coeff: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(key, coeff);
        v
    }

    pub fn basis(key: K) -> Self {
        Self::from_term(key, Scalar::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Scalar)>>(terms: I) -> Self {
        let mut v = Self::zero();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    /// Adds `coeff * key`, dropping the entry if it cancels.
    pub fn add_term(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coefficient(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn get(&self, key: &K) -> Option<&Scalar> {
        self.terms.get(key)
    }

    pub fn leading(&self) -> Option<(&K, &Scalar)> {
        self.terms.iter().next()
    }

    pub fn scaled(&self, c: &Scalar) -> Self
    where
        K: Clone,
    {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Self, c: &Scalar)
    where
        K: Clone,
    {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    /// Re-keys every term, merging keys that collide.
    pub fn map_keys<K2: Ord, F: FnMut(&K) -> K2>(&self, mut f: F) -> LinComb<K2> {
        LinComb::from_terms(self.terms.iter().map(|(k, c)| (f(k), c.clone())))
    }

    /// Applies a linear map given on basis keys.
    pub fn map_linear<K2: Ord + Clone, F: FnMut(&K) -> LinComb<K2>>(&self, mut f: F) -> LinComb<K2> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Fallible variant of [`LinComb::map_linear`].
    pub fn try_map_linear<K2, F>(&self, mut f: F) -> Result<LinComb<K2>>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> Result<LinComb<K2>>,
    {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }
}

impl<K: Ord> IntoIterator for LinComb<K> {
    type Item = (K, Scalar);
    type IntoIter = std::collections::btree_map::IntoIter<K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<K: Ord> FromIterator<(K, Scalar)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<K: Ord> AddAssign for LinComb<K> {
    fn add_assign(&mut self, rhs: Self) {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
    }
}

impl<K: Ord> SubAssign for LinComb<K> {
    fn sub_assign(&mut self, rhs: Self) {
        for (k, c) in rhs.terms {
            self.add_term(k, -c);
        }
    }
}

impl<K: Ord> Add for LinComb<K> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<K: Ord> Sub for LinComb<K> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl<K: Ord> Neg for LinComb<K> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl<K: Ord + Clone> Mul<&Scalar> for &LinComb<K> {
    type Output = LinComb<K>;
    fn mul(self, rhs: &Scalar) -> LinComb<K> {
        self.scaled(rhs)
    }
}

impl<K: Ord + fmt::Display> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            if abs.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{abs}*{k}")?;
            }
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Display> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sparse matrix with explicit, ordered row and column keys.
#[derive(Clone, Debug)]
pub struct SparseMatrix<R, C> {
    row_keys: Vec<R>,
    col_keys: Vec<C>,
    rows: Vec<Vec<(usize, Scalar)>>,
}

impl<R: Ord + Clone, C: Ord + Clone> SparseMatrix<R, C> {
    pub fn new(row_keys: Vec<R>, col_keys: Vec<C>) -> Self {
        let rows = vec![Vec::new(); row_keys.len()];
        Self {
            row_keys,
            col_keys,
            rows,
        }
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`, expressed over `row_keys`.
    pub fn from_columns(row_keys: Vec<R>, col_keys: Vec<C>, columns: &[LinComb<R>]) -> Result<Self> {
        if columns.len() != col_keys.len() {
            return Err(Error::InvalidArgument(format!(
                "{} columns supplied for {} column keys",
                columns.len(),
                col_keys.len()
            )));
        }
        let index: BTreeMap<&R, usize> = row_keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut rows = vec![Vec::new(); row_keys.len()];
        for (j, col) in columns.iter().enumerate() {
            for (k, c) in col.iter() {
                let i = *index.get(k).ok_or(Error::UndeclaredKey)?;
                rows[i].push((j, c.clone()));
            }
        }
        drop(index);
        Ok(Self {
            row_keys,
            col_keys,
            rows,
        })
    }

    /// Sets entry `(i, j)`, replacing any previous value.
    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(j < self.col_keys.len(), "column index out of range");
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) if value.is_zero() => {
                row.remove(pos);
            }
            Ok(pos) => row[pos].1 = value,
            Err(_) if value.is_zero() => {}
            Err(pos) => row.insert(pos, (j, value)),
        }
    }

    pub fn nrows(&self) -> usize {
        self.row_keys.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_keys.len()
    }

    pub fn row_keys(&self) -> &[R] {
        &self.row_keys
    }

    pub fn col_keys(&self) -> &[C] {
        &self.col_keys
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        let row = &self.rows[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => row[pos].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    /// Column `j` as a linear combination of row keys.
    pub fn column(&self, j: usize) -> LinComb<R> {
        let mut out = LinComb::zero();
        for (i, row) in self.rows.iter().enumerate() {
            if let Ok(pos) = row.binary_search_by_key(&j, |(c, _)| *c) {
                out.add_term(self.row_keys[i].clone(), row[pos].1.clone());
            }
        }
        out
    }

    /// Matrix-vector product; keys of `x` outside the column keys are an error.
    pub fn apply(&self, x: &LinComb<C>) -> Result<LinComb<R>> {
        let index: BTreeMap<&C, usize> = self.col_keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut dense: BTreeMap<usize, &Scalar> = BTreeMap::new();
        for (k, c) in x.iter() {
            dense.insert(*index.get(k).ok_or(Error::UndeclaredKey)?, c);
        }
        let mut out = LinComb::zero();
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = Scalar::zero();
            for (j, a) in row {
                if let Some(c) = dense.get(j) {
                    acc += a * *c;
                }
            }
            out.add_term(self.row_keys[i].clone(), acc);
        }
        Ok(out)
    }

    fn integer_rows(&self) -> Vec<IntRow> {
        self.rows
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| {
                let lcm = r.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
                let mut row: IntRow = r.iter().map(|(j, q)| (*j, q.numer() * (&lcm / q.denom()))).collect();
                make_primitive(&mut row);
                row
            })
            .collect()
    }

    fn eliminate(&self) -> Elimination {
        Elimination::run(self.ncols(), self.integer_rows())
    }
}

impl<R: Ord + Clone> SparseMatrix<R, usize> {
    /// Convenience constructor from small integer entries; columns are keyed `0..ncols`.
    pub fn from_dense(row_keys: Vec<R>, entries: &[Vec<i64>]) -> Self {
        let ncols = entries.first().map_or(0, Vec::len);
        let mut m = Self::new(row_keys, (0..ncols).collect());
        for (i, row) in entries.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                m.set(i, j, int(a));
            }
        }
        m
    }
}

type IntRow = Vec<(usize, BigInt)>;

fn make_primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, a) in row.iter() {
        g = g.gcd(a);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, a) in row.iter_mut() {
        *a /= &g;
    }
}

/// `mk * row_k - mr * row_r`, dropping cancelled entries.
fn combine(mk: &BigInt, row_k: &IntRow, mr: &BigInt, row_r: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(row_k.len() + row_r.len());
    let (mut a, mut b) = (row_k.iter().peekable(), row_r.iter().peekable());
    loop {
        match (a.peek(), b.peek()) {
            (Some((ja, va)), Some((jb, vb))) => {
                if ja < jb {
                    out.push((*ja, mk * va));
                    a.next();
                } else if jb < ja {
                    out.push((*jb, -(mr * vb)));
                    b.next();
                } else {
                    let v = mk * va - mr * vb;
                    if !v.is_zero() {
                        out.push((*ja, v));
                    }
                    a.next();
                    b.next();
                }
            }
            (Some((ja, va)), None) => {
                out.push((*ja, mk * va));
                a.next();
            }
            (None, Some((jb, vb))) => {
                out.push((*jb, -(mr * vb)));
                b.next();
            }
            (None, None) => break,
        }
    }
    out
}

/// Result of sparse fraction-free elimination: pivot rows in elimination order.
struct Elimination {
    ncols: usize,
    /// `(pivot column, row)`; the row only touches columns eliminated later or never.
    pivots: Vec<(usize, IntRow)>,
    eliminated: Vec<bool>,
}

impl Elimination {
    fn run(ncols: usize, input: Vec<IntRow>) -> Self {
        let mut rows: Vec<Option<IntRow>> = input.into_iter().map(Some).collect();
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            for (j, _) in row.as_ref().unwrap() {
                col_rows[*j].insert(i);
            }
        }
        let mut queue: BTreeSet<(usize, usize)> = col_rows
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_empty())
            .map(|(j, s)| (s.len(), j))
            .collect();
        let mut eliminated = vec![false; ncols];
        let mut pivots = Vec::new();

        // Moves column `j` between queue buckets around a membership change.
        fn update(
            queue: &mut BTreeSet<(usize, usize)>,
            col_rows: &mut [BTreeSet<usize>],
            eliminated: &[bool],
            j: usize,
            row: usize,
            insert: bool,
        ) {
            if !eliminated[j] {
                queue.remove(&(col_rows[j].len(), j));
            }
            if insert {
                col_rows[j].insert(row);
            } else {
                col_rows[j].remove(&row);
            }
            if !eliminated[j] && !col_rows[j].is_empty() {
                queue.insert((col_rows[j].len(), j));
            }
        }

        while let Some((_, c)) = queue.pop_first() {
            eliminated[c] = true;
            let r = *col_rows[c]
                .iter()
                .min_by_key(|&&i| (rows[i].as_ref().unwrap().len(), i))
                .expect("queued column has rows");
            let row_r = rows[r].take().unwrap();
            for (j, _) in &row_r {
                update(&mut queue, &mut col_rows, &eliminated, *j, r, false);
            }
            let a_rc = &row_r[row_r.binary_search_by_key(&c, |(j, _)| *j).unwrap()].1;
            let others: Vec<usize> = col_rows[c].iter().copied().collect();
            for k in others {
                let row_k = rows[k].take().unwrap();
                let a_kc = &row_k[row_k.binary_search_by_key(&c, |(j, _)| *j).unwrap()].1;
                let g = a_rc.gcd(a_kc);
                let (mk, mr) = (a_rc / &g, a_kc / &g);
                let mut new_row = combine(&mk, &row_k, &mr, &row_r);
                make_primitive(&mut new_row);
                let old: BTreeSet<usize> = row_k.iter().map(|(j, _)| *j).collect();
                let new: BTreeSet<usize> = new_row.iter().map(|(j, _)| *j).collect();
                for j in old.difference(&new) {
                    update(&mut queue, &mut col_rows, &eliminated, *j, k, false);
                }
                for j in new.difference(&old) {
                    update(&mut queue, &mut col_rows, &eliminated, *j, k, true);
                }
                if !new_row.is_empty() {
                    rows[k] = Some(new_row);
                }
            }
            debug_assert!(col_rows[c].is_empty());
            pivots.push((c, row_r));
        }
        Self {
            ncols,
            pivots,
            eliminated,
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One kernel vector per free column, normalized to 1 on that column.
    fn kernel_vectors(&self) -> Vec<Vec<(usize, Scalar)>> {
        let free: Vec<usize> = (0..self.ncols).filter(|&j| !self.eliminated[j]).collect();
        let mut out = Vec::with_capacity(free.len());
        let mut x: Vec<Scalar> = vec![Scalar::zero(); self.ncols];
        for &f in &free {
            for v in x.iter_mut() {
                v.set_zero();
            }
            x[f] = Scalar::one();
            let mut support = vec![f];
            for (c, row) in self.pivots.iter().rev() {
                let mut acc = BigRational::zero();
                let mut pivot = None;
                for (j, a) in row {
                    if j == c {
                        pivot = Some(a);
                    } else if !x[*j].is_zero() {
                        acc += &x[*j] * Scalar::from_integer(a.clone());
                    }
                }
                if !acc.is_zero() {
                    let p = Scalar::from_integer(pivot.expect("pivot entry").clone());
                    x[*c] = -acc / p;
                    support.push(*c);
                }
            }
            support.sort_unstable();
            out.push(support.into_iter().map(|j| (j, x[j].clone())).collect());
        }
        out
    }
}

/// Exact rank over the rationals.
pub fn rank<R: Ord + Clone, C: Ord + Clone>(m: &SparseMatrix<R, C>) -> usize {
    m.eliminate().rank()
}

/// Reduced echelon basis of `{x : Mx = 0}`, over the column keys of `m`.
pub fn kernel_basis<R: Ord + Clone, C: Ord + Clone>(m: &SparseMatrix<R, C>) -> SubspaceBasis<C> {
    let elim = m.eliminate();
    let vectors = elim
        .kernel_vectors()
        .into_iter()
        .map(|v| LinComb::from_terms(v.into_iter().map(|(j, q)| (m.col_keys[j].clone(), q))));
    SubspaceBasis::from_vectors(vectors).with_ambient(Arc::new(m.col_keys.clone()))
}

/// A subspace in reduced row echelon form with respect to key order.
///
/// Each vector's pivot is its smallest key, has coefficient 1, and does not
/// occur in any other vector. Vectors are sorted by pivot, so two bases of the
/// same subspace are identical.
#[derive(Clone, PartialEq, Eq)]
pub struct SubspaceBasis<K: Ord> {
    vectors: Vec<LinComb<K>>,
    ambient: Option<Arc<Vec<K>>>,
}

impl<K: Ord + Clone> SubspaceBasis<K> {
    pub fn empty() -> Self {
        Self {
            vectors: Vec::new(),
            ambient: None,
        }
    }

    /// Echelonizes the span of `vectors`.
    pub fn from_vectors<I: IntoIterator<Item = LinComb<K>>>(vectors: I) -> Self {
        let mut basis: BTreeMap<K, LinComb<K>> = BTreeMap::new();
        for v in vectors {
            let mut v = reduce_against(&basis, v);
            let Some((p, lead)) = v.leading().map(|(k, c)| (k.clone(), c.clone())) else {
                continue;
            };
            v = v.scaled(&lead.recip());
            for b in basis.values_mut() {
                if let Some(c) = b.get(&p).cloned() {
                    b.add_scaled(&v, &-c);
                }
            }
            basis.insert(p, v);
        }
        Self {
            vectors: basis.into_values().collect(),
            ambient: None,
        }
    }

    /// Records the ambient key universe used for compatibility checks.
    pub fn with_ambient(mut self, ambient: Arc<Vec<K>>) -> Self {
        self.ambient = Some(ambient);
        self
    }

    pub fn ambient(&self) -> Option<&[K]> {
        self.ambient.as_deref().map(Vec::as_slice)
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[LinComb<K>] {
        &self.vectors
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.vectors
            .iter()
            .map(|v| v.leading().expect("nonzero basis vector").0)
    }

    /// Remainder of `v` after reduction against the basis.
    pub fn reduce(&self, v: &LinComb<K>) -> LinComb<K> {
        let mut out = v.clone();
        for b in &self.vectors {
            let p = b.leading().unwrap().0;
            if let Some(c) = out.get(p).cloned() {
                out.add_scaled(b, &-c);
            }
        }
        out
    }

    pub fn contains(&self, v: &LinComb<K>) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.vectors.iter().all(|v| other.contains(v))
    }
}

fn reduce_against<K: Ord + Clone>(basis: &BTreeMap<K, LinComb<K>>, mut v: LinComb<K>) -> LinComb<K> {
    for (p, b) in basis {
        if let Some(c) = v.get(p).cloned() {
            v.add_scaled(b, &-c);
        }
    }
    v
}

impl<K: Ord + fmt::Display> fmt::Debug for SubspaceBasis<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.vectors.iter()).finish()
    }
}

fn check_universe<K: Ord>(b: &SubspaceBasis<K>, ambient: &[K]) -> bool {
    b.vectors
        .iter()
        .all(|v| v.keys().all(|k| ambient.binary_search(k).is_ok()))
}

/// True iff `a` and `b` span the same subspace.
pub fn subspaces_equal<K: Ord + Clone>(a: &SubspaceBasis<K>, b: &SubspaceBasis<K>) -> Result<bool> {
    match (&a.ambient, &b.ambient) {
        (Some(x), Some(y)) if x != y => return Err(Error::UniverseMismatch),
        (Some(x), None) if !is_sorted(x) || !check_universe(b, x) => return Err(Error::UniverseMismatch),
        (None, Some(y)) if !is_sorted(y) || !check_universe(a, y) => return Err(Error::UniverseMismatch),
        _ => {}
    }
    Ok(a.vectors == b.vectors)
}

fn is_sorted<K: Ord>(keys: &[K]) -> bool {
    keys.windows(2).all(|w| w[0] < w[1])
}

/// True iff `v` lies in the span of `basis`.
pub fn member_of_span<K: Ord + Clone>(v: &LinComb<K>, basis: &SubspaceBasis<K>) -> bool {
    basis.contains(v)
}
