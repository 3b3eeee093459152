//! Verification suites: exhaustive checks up to a size bound, plus seeded
//! random checks. Reports depend only on the bound, never on scheduling.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::blowup::{blow_ups, delta_tree, expected_blow_up_count, leibniz_defect};
use crate::bridge::{
    delta_matrix, lyndon_span, square_defect, verify_lemma, ComponentSpec, LemmaReport, P1Map, PeelOrder,
};
use crate::error::{Error, Result};
use crate::freelie::witt_dimension;
use crate::prelie::{associator, TreeVector};
use crate::scalars::{int, kernel_basis, rank, subspaces_equal, LinComb};
use crate::shuffle::{
    act_left, act_right, concat, coproduct, coproduct_word, pair_product, r_form, reduced_coproduct, words, PairVector,
    TensorVector, Word, WordPair,
};
use crate::trees::{enumerate_special_trees, enumerate_trees, relabel, DecoratedTree, Mode, Permutation, VertexLabel};

/// Number of random cases per randomized check.
pub const RANDOM_CASES: usize = 100;
/// Largest size checked exhaustively by the commuting-square suite.
pub const SQUARE_EXHAUSTIVE_MAX: usize = 4;
const MAX_EXAMPLES: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuiteKind {
    Square,
    Leibniz,
    Prelie,
    Oracle,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 4] = [Self::Square, Self::Leibniz, Self::Prelie, Self::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Self::Square => "square",
            Self::Leibniz => "leibniz",
            Self::Prelie => "prelie",
            Self::Oracle => "oracle",
        }
    }
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

/// One named identity checked over a list of cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub failed: usize,
    /// The first few failing cases.
    pub examples: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub kind: SuiteKind,
    pub max_n: usize,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }
}

type Outcome = std::result::Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn check<T, F>(name: &str, cases: &[T], f: F) -> CheckReport
where
    T: Sync,
    F: Fn(&T) -> Outcome + Sync,
{
    let failures: Vec<String> = cases.par_iter().map(&f).filter_map(|r| r.err()).collect();
    CheckReport {
        name: name.to_string(),
        cases: cases.len(),
        failed: failures.len(),
        examples: failures.into_iter().take(MAX_EXAMPLES).collect(),
    }
}

fn err_text(e: Error) -> String {
    e.to_string()
}

/// Runs one suite up to size `max_n`.
pub fn run_suite(kind: SuiteKind, max_n: usize) -> Result<SuiteReport> {
    if max_n == 0 {
        return Err(Error::InvalidArgument("--max-n must be at least 1".into()));
    }
    let checks = match kind {
        SuiteKind::Square => square_suite(max_n)?,
        SuiteKind::Leibniz => leibniz_suite(max_n)?,
        SuiteKind::Prelie => prelie_suite(max_n)?,
        SuiteKind::Oracle => oracle_suite(max_n)?,
    };
    Ok(SuiteReport { kind, max_n, checks })
}

/// Runs every suite, in the fixed order of [`SuiteKind::ALL`].
pub fn run_all(max_n: usize) -> Result<Vec<SuiteReport>> {
    SuiteKind::ALL.into_iter().map(|k| run_suite(k, max_n)).collect()
}

fn shifted(t: &DecoratedTree, offset: u32) -> DecoratedTree {
    t.map_labels(&mut |l| match l {
        VertexLabel::Ordinary(g) => VertexLabel::ordinary(g.id() + offset).expect("positive label"),
        VertexLabel::Special => VertexLabel::Special,
    })
}

fn multilinear_trees(max_n: usize) -> Result<Vec<DecoratedTree>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(enumerate_trees(n, Mode::Multilinear)?);
    }
    Ok(out)
}

fn random_vector(rng: &mut ChaCha8Rng, basis: &[DecoratedTree], degree: u8) -> TreeVector {
    let k = rng.gen_range(1..=4);
    let mut terms = LinComb::zero();
    for _ in 0..k {
        let t = basis[rng.gen_range(0..basis.len())].clone();
        let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        terms.add_term(t, int(c));
    }
    TreeVector::from_lincomb(degree, terms).expect("homogeneous basis")
}

fn square_suite(max_n: usize) -> Result<Vec<CheckReport>> {
    let exhaustive = max_n.min(SQUARE_EXHAUSTIVE_MAX);
    let basis = multilinear_trees(exhaustive)?;
    let mut checks = vec![check("basis trees", &basis, |t| {
        let d = square_defect(&TreeVector::from_tree(t.clone())).map_err(err_text)?;
        ensure(d.is_zero(), || format!("{t}: defect {d}"))
    })];

    let mut randoms = Vec::new();
    for n in (SQUARE_EXHAUSTIVE_MAX + 1)..=max_n {
        let trees = enumerate_trees(n, Mode::Multilinear)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5371_0000 + n as u64);
        randoms.extend((0..RANDOM_CASES).map(|_| random_vector(&mut rng, &trees, 0)));
    }
    if !randoms.is_empty() {
        checks.push(check("random vectors", &randoms, |x| {
            let d = square_defect(x).map_err(err_text)?;
            ensure(d.is_zero(), || format!("{x}: defect {d}"))
        }));
    }

    let mut special = Vec::new();
    for n in 0..=exhaustive {
        special.extend(enumerate_special_trees(n, Mode::Multilinear)?);
    }
    checks.push(check("p1 peel-order independence", &special, |t| {
        let a = P1Map::new(PeelOrder::First).tree(t).map_err(err_text)?;
        let b = P1Map::new(PeelOrder::Last).tree(t).map_err(err_text)?;
        ensure(a == b, || format!("{t}: {a} vs {b}"))
    }));
    Ok(checks)
}

fn leibniz_suite(max_n: usize) -> Result<Vec<CheckReport>> {
    let by_size: Vec<Vec<DecoratedTree>> = (1..=max_n)
        .map(|n| enumerate_trees(n, Mode::Multilinear))
        .collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for i in 1..max_n {
        for j in 1..=(max_n - i) {
            for a in &by_size[i - 1] {
                for b in &by_size[j - 1] {
                    pairs.push((a.clone(), shifted(b, i as u32)));
                }
            }
        }
    }
    let mut checks = vec![check("rule on tree pairs", &pairs, |(a, b)| {
        let (x, y) = (TreeVector::from_tree(a.clone()), TreeVector::from_tree(b.clone()));
        let d = leibniz_defect(&x, &y).map_err(err_text)?;
        ensure(d.is_zero(), || format!("({a}, {b}): defect {d}"))
    })];

    let all: Vec<DecoratedTree> = by_size.concat();
    checks.push(check("blow-up count", &all, |t| {
        let bl = blow_ups(t).map_err(err_text)?;
        ensure(bl.len() == expected_blow_up_count(t), || {
            format!("{t}: {} blow-ups, expected {}", bl.len(), expected_blow_up_count(t))
        })
    }));
    checks.push(check("contraction and arity", &all, |t| {
        for b in blow_ups(t).map_err(err_text)? {
            ensure(b.contract() == *t, || format!("{t}: {} contracts wrongly", b.tree()))?;
            let arity_ok = b
                .tree()
                .subtrees_preorder()
                .into_iter()
                .find(|s| s.label().is_special())
                .is_some_and(|s| s.children().len() >= 2);
            ensure(arity_ok, || {
                format!("{t}: {} has a special vertex of arity < 2", b.tree())
            })?;
        }
        Ok(())
    }));
    checks.push(check("symmetric-group equivariance", &all, |t| {
        let n = t.ordinary_count();
        let cycle = Permutation::from_images((1..=n as u32).map(|i| i % n as u32 + 1).collect()).map_err(err_text)?;
        let reversal = Permutation::from_images((1..=n as u32).rev().collect()).map_err(err_text)?;
        let d = delta_tree(t).map_err(err_text)?;
        for sigma in [cycle, reversal] {
            let lhs = delta_tree(&relabel(t, &sigma).map_err(err_text)?).map_err(err_text)?;
            let rhs = d
                .try_map_linear(|s| Ok(LinComb::basis(relabel(s, &sigma)?)))
                .map_err(err_text)?;
            ensure(lhs == rhs, || format!("{t} under {:?}", sigma.images()))?;
        }
        Ok(())
    }));
    Ok(checks)
}

/// Degree-0 and degree-1 trees with `v` vertices in total, labels `1..`.
fn trees_with_vertices(v: usize) -> Result<Vec<DecoratedTree>> {
    let mut out = enumerate_trees(v, Mode::Multilinear)?;
    out.extend(enumerate_special_trees(v - 1, Mode::Multilinear)?);
    Ok(out)
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    Word::new((0..len).map(|_| rng.gen_range(1..=3)).collect())
}

fn random_tensor(rng: &mut ChaCha8Rng, max_len: usize) -> TensorVector {
    let mut out = LinComb::zero();
    for _ in 0..rng.gen_range(1..=3) {
        out.add_term(random_word(rng, max_len), int(rng.gen_range(-3..=3)));
    }
    out
}

fn random_pair(rng: &mut ChaCha8Rng, max_len: usize) -> PairVector {
    let mut out = LinComb::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let a = if rng.gen_bool(0.25) {
            Word::unit()
        } else {
            random_word(rng, max_len)
        };
        let b = if rng.gen_bool(0.25) {
            Word::unit()
        } else {
            random_word(rng, max_len)
        };
        out.add_term(WordPair(a, b), int(rng.gen_range(-3..=3)));
    }
    out
}

fn words_up_to(max_len: usize, m: u32) -> Vec<Word> {
    (0..=max_len)
        .flat_map(|n| {
            if n == 0 {
                vec![Word::unit()]
            } else {
                words(n, Mode::Alphabet(m))
            }
        })
        .collect()
}

fn prelie_suite(max_n: usize) -> Result<Vec<CheckReport>> {
    let mut triples = Vec::new();
    if max_n >= 3 {
        let ordinary: Vec<Vec<DecoratedTree>> = (1..=max_n - 2)
            .map(|n| enumerate_trees(n, Mode::Multilinear))
            .collect::<Result<_>>()?;
        for i in 1..=max_n - 2 {
            let firsts = trees_with_vertices(i)?;
            for j in 1..=(max_n - i - 1) {
                for k in 1..=(max_n - i - j) {
                    for x in &firsts {
                        let off = x.ordinary_count() as u32;
                        for y in &ordinary[j - 1] {
                            for z in &ordinary[k - 1] {
                                triples.push((x.clone(), shifted(y, off), shifted(z, off + j as u32)));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut checks = vec![check("associator symmetry", &triples, |(x, y, z)| {
        let v = |t: &DecoratedTree| TreeVector::from_tree(t.clone());
        let lhs = associator(&v(x), &v(y), &v(z)).map_err(err_text)?;
        let rhs = associator(&v(x), &v(z), &v(y)).map_err(err_text)?;
        ensure(lhs == rhs, || format!("({x}, {y}, {z})"))
    })];

    let max_len = max_n.min(3);
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e11_0001);
    let inputs: Vec<(PairVector, TensorVector, TensorVector)> = (0..RANDOM_CASES)
        .map(|_| {
            (
                random_pair(&mut rng, max_len),
                random_tensor(&mut rng, max_len),
                random_tensor(&mut rng, max_len),
            )
        })
        .collect();
    checks.push(check("right bimodule identity", &inputs, |(xi, x, y)| {
        let lhs = act_right(&act_right(xi, x), y) - act_right(xi, &concat(x, y));
        let rhs = act_right(&act_right(xi, y), x) - act_right(xi, &concat(y, x));
        ensure(lhs == rhs, || format!("xi = {xi}, x = {x}, y = {y}"))
    }));
    checks.push(check("left bimodule identity", &inputs, |(xi, x, y)| {
        let lhs = act_left(&concat(x, y), xi) - act_left(x, &act_left(y, xi));
        let rhs = act_right(&act_left(x, xi), y) - act_left(x, &act_right(xi, y));
        ensure(lhs == rhs, || format!("xi = {xi}, x = {x}, y = {y}"))
    }));
    checks.push(check("reduced diagonal defect", &inputs, |(_, x, y)| {
        let lhs = reduced_coproduct(&concat(x, y)).map_err(err_text)?;
        let rhs = act_right(&reduced_coproduct(x).map_err(err_text)?, y)
            + act_left(x, &reduced_coproduct(y).map_err(err_text)?)
            + r_form(x, y);
        ensure(lhs == rhs, || format!("x = {x}, y = {y}"))
    }));

    let ws = words_up_to(max_n, 3);
    checks.push(check("coassociativity", &ws, |w| {
        let d = coproduct_word(w);
        let mut left: LinComb<(Word, Word, Word)> = LinComb::zero();
        let mut right: LinComb<(Word, Word, Word)> = LinComb::zero();
        for (WordPair(a, b), c) in d.iter() {
            for (WordPair(a1, a2), c1) in coproduct_word(a).iter() {
                left.add_term((a1.clone(), a2.clone(), b.clone()), c * c1);
            }
            for (WordPair(b1, b2), c2) in coproduct_word(b).iter() {
                right.add_term((a.clone(), b1.clone(), b2.clone()), c * c2);
            }
        }
        ensure(left == right, || format!("{w}"))
    }));
    checks.push(check("cocommutativity", &ws, |w| {
        let d = coproduct_word(w);
        let swapped: PairVector = d.map_keys(|WordPair(a, b)| WordPair(b.clone(), a.clone()));
        ensure(d == swapped, || format!("{w}"))
    }));
    let small = words_up_to(max_n, 2);
    let word_pairs: Vec<(Word, Word)> = small
        .iter()
        .flat_map(|u| {
            small
                .iter()
                .filter(|v| u.len() + v.len() <= max_n)
                .map(move |v| (u.clone(), v.clone()))
        })
        .collect();
    checks.push(check("diagonal is multiplicative", &word_pairs, |(u, v)| {
        let (x, y) = (LinComb::basis(u.clone()), LinComb::basis(v.clone()));
        let lhs = coproduct(&concat(&x, &y));
        let rhs = pair_product(&coproduct(&x), &coproduct(&y));
        ensure(lhs == rhs, || format!("({u}, {v})"))
    }));
    Ok(checks)
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Expected dimension of the Lie elements in a component.
pub fn expected_lie_dimension(spec: ComponentSpec) -> Result<u64> {
    match spec.mode() {
        Mode::Multilinear => Ok(factorial(spec.n() - 1)),
        Mode::Alphabet(m) => witt_dimension(m as u64, spec.n() as u64),
    }
}

fn spec_label(spec: &ComponentSpec) -> String {
    match spec.mode() {
        Mode::Multilinear => format!("multilinear n={}", spec.n()),
        Mode::Alphabet(m) => format!("alphabet({m}) n={}", spec.n()),
    }
}

struct OracleData {
    spec: ComponentSpec,
    lemma: LemmaReport,
    expected: u64,
    lyndon_span_equal: bool,
}

fn oracle_suite(max_n: usize) -> Result<Vec<CheckReport>> {
    let mut specs = Vec::new();
    for mode in [Mode::Multilinear, Mode::Alphabet(1), Mode::Alphabet(2)] {
        for n in 1..=max_n {
            specs.push(ComponentSpec::new(n, mode)?);
        }
    }
    let data: Vec<OracleData> = specs
        .par_iter()
        .map(|&spec| {
            let lemma = verify_lemma(spec)?;
            let kernel = crate::bridge::lie_kernel_basis(spec)?;
            let lyndon_span_equal = subspaces_equal(&lyndon_span(spec)?, &kernel)?;
            Ok(OracleData {
                spec,
                lemma,
                expected: expected_lie_dimension(spec)?,
                lyndon_span_equal,
            })
        })
        .collect::<Result<_>>()?;
    Ok(vec![
        check("kernel dimension", &data, |d| {
            ensure(d.lemma.kernel_dim as u64 == d.expected, || {
                format!("{}: {} vs {}", spec_label(&d.spec), d.lemma.kernel_dim, d.expected)
            })
        }),
        check("delta kills Lyndon bracketings", &data, |d| {
            ensure(d.lemma.lie_in_kernel, || spec_label(&d.spec))
        }),
        check("p injective on kernel", &data, |d| {
            ensure(d.lemma.p_injective, || {
                format!(
                    "{}: image {} of {}",
                    spec_label(&d.spec),
                    d.lemma.image_dim,
                    d.lemma.kernel_dim
                )
            })
        }),
        check("p(kernel) equals primitives", &data, |d| {
            ensure(d.lemma.image_is_primitive, || {
                format!("{}: primitives {}", spec_label(&d.spec), d.lemma.primitive_dim)
            })
        }),
        check("Lyndon span equals kernel", &data, |d| {
            ensure(d.lyndon_span_equal, || spec_label(&d.spec))
        }),
    ])
}

/// One row of the dimension table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionRow {
    pub n: usize,
    pub trees: usize,
    pub special_trees: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub expected: u64,
}

impl DimensionRow {
    pub fn ok(&self) -> bool {
        self.kernel_dim as u64 == self.expected && self.rank + self.kernel_dim == self.trees
    }
}

pub fn dimension_row(spec: ComponentSpec) -> Result<DimensionRow> {
    let m = delta_matrix(spec)?;
    let kernel = kernel_basis(&m);
    Ok(DimensionRow {
        n: spec.n(),
        trees: m.ncols(),
        special_trees: m.nrows(),
        rank: rank(&m),
        kernel_dim: kernel.dim(),
        expected: expected_lie_dimension(spec)?,
    })
}
