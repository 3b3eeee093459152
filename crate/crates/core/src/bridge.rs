//! The comparison maps `p : pL(V) → T̄(V)` and `p¹ : pL¹(V) → T(V)⊗T(V)`,
//! the matrix of `δ` on a graded component, and its kernel.
//!
//! `p` sends a chain to the word read from the root and kills every other
//! tree. `p¹` is the bimodule map fixed by `p¹(@) = 1⊗1`; it is evaluated by
//! peeling one grafting at a time and subtracting the correction trees, which
//! all have either fewer vertices or fewer children at the root.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;
use rayon::prelude::*;

use crate::blowup::{delta, delta_tree};
use crate::error::{Error, Result};
use crate::freelie::{eval_in_prelie, lyndon_basis_words, standard_bracketing};
use crate::prelie::TreeVector;
use crate::scalars::{kernel_basis, subspaces_equal, LinComb, Scalar, SparseMatrix, SubspaceBasis};
use crate::shuffle::{
    act_left, act_right, primitive_basis_in, reduced_coproduct, PairVector, TensorVector, Word, WordPair,
};
use crate::trees::{enumerate_special_trees, enumerate_trees, expect_degree, DecoratedTree, Mode, VertexLabel};

/// A graded component: trees with `n` ordinary vertices in the given mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ComponentSpec {
    n: usize,
    mode: Mode,
}

impl ComponentSpec {
    pub fn new(n: usize, mode: Mode) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("component size must be at least 1".into()));
        }
        if mode == Mode::Alphabet(0) {
            return Err(Error::InvalidArgument("alphabet size must be at least 1".into()));
        }
        Ok(Self { n, mode })
    }

    pub fn multilinear(n: usize) -> Result<Self> {
        Self::new(n, Mode::Multilinear)
    }

    pub fn alphabet(m: u32, n: usize) -> Result<Self> {
        Self::new(n, Mode::Alphabet(m))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }
}

/// `p` on a single degree-0 tree.
pub fn p_tree(t: &DecoratedTree) -> TensorVector {
    if !t.is_chain() {
        return LinComb::zero();
    }
    let letters = t
        .labels_preorder()
        .into_iter()
        .map(|l| match l {
            VertexLabel::Ordinary(g) => g.id(),
            VertexLabel::Special => unreachable!("degree-0 tree"),
        })
        .collect();
    LinComb::basis(Word::new(letters))
}

/// `p` extended linearly to degree-0 vectors.
pub fn p_map(x: &TreeVector) -> Result<TensorVector> {
    x.expect_degree(0)?;
    Ok(x.terms().map_linear(p_tree))
}

/// Which grafting the `p¹` recursion peels first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PeelOrder {
    /// Peel the first child of `@`; at an ordinary root, act on the left by
    /// the ordinary part.
    #[default]
    First,
    /// Peel the last child of `@`; at an ordinary root, act on the right by
    /// the last ordinary child.
    Last,
}

/// Memoized evaluator of `p¹`.
#[derive(Debug, Default)]
pub struct P1Map {
    order: PeelOrder,
    cache: BTreeMap<DecoratedTree, PairVector>,
}

fn unit_pair() -> PairVector {
    LinComb::from_term(WordPair(Word::unit(), Word::unit()), Scalar::one())
}

fn without(v: &[DecoratedTree], i: usize) -> Vec<DecoratedTree> {
    v.iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .map(|(_, t)| t.clone())
        .collect()
}

impl P1Map {
    pub fn new(order: PeelOrder) -> Self {
        Self {
            order,
            cache: BTreeMap::new(),
        }
    }

    pub fn tree(&mut self, t: &DecoratedTree) -> Result<PairVector> {
        expect_degree(t, 1)?;
        Ok(self.eval(t))
    }

    pub fn vector(&mut self, x: &TreeVector) -> Result<PairVector> {
        x.expect_degree(1)?;
        Ok(x.terms().map_linear(|t| self.eval(t)))
    }

    fn eval(&mut self, t: &DecoratedTree) -> PairVector {
        if let Some(v) = self.cache.get(t) {
            return v.clone();
        }
        let v = self.compute(t);
        self.cache.insert(t.clone(), v.clone());
        v
    }

    /// `p¹(base ★ scion)` minus `p¹` of every grafting of `scion` into one of
    /// `rest`, where `base` has root `label` and children `rest`.
    fn subtract_corrections(
        &mut self,
        mut acc: PairVector,
        label: VertexLabel,
        rest: &[DecoratedTree],
        scion: &DecoratedTree,
    ) -> PairVector {
        for (j, other) in rest.iter().enumerate() {
            for g in other.graftings(scion) {
                let mut children = rest.to_vec();
                children[j] = g;
                acc -= self.eval(&DecoratedTree::new(label, children));
            }
        }
        acc
    }

    fn compute(&mut self, t: &DecoratedTree) -> PairVector {
        let kids = t.children();
        let label = t.label();
        if label.is_special() {
            if kids.is_empty() {
                return unit_pair();
            }
            // @⟨rest⟩ ★ a = @⟨rest, a⟩ + Σ @⟨.., r ★ a, ..⟩
            let i = match self.order {
                PeelOrder::First => 0,
                PeelOrder::Last => kids.len() - 1,
            };
            let rest = without(kids, i);
            let base = self.eval(&DecoratedTree::new(label, rest.clone()));
            let acc = act_right(&base, &p_tree(&kids[i]));
            return self.subtract_corrections(acc, label, &rest, &kids[i]);
        }
        let s = kids
            .iter()
            .position(DecoratedTree::contains_special)
            .expect("degree-1 tree");
        let last_ordinary = (0..kids.len()).rev().find(|&j| j != s);
        match (self.order, last_ordinary) {
            (PeelOrder::Last, Some(j)) => {
                // r⟨rest⟩ ★ T = r⟨rest, T⟩ + Σ r⟨.., c ★ T, ..⟩, with `@` inside `rest`
                let rest = without(kids, j);
                let base = self.eval(&DecoratedTree::new(label, rest.clone()));
                let acc = act_right(&base, &p_tree(&kids[j]));
                self.subtract_corrections(acc, label, &rest, &kids[j])
            }
            _ => {
                // r⟨ordinary⟩ ★ S = r⟨ordinary, S⟩ + Σ r⟨.., T ★ S, ..⟩
                let ordinary = without(kids, s);
                let x = DecoratedTree::new(label, ordinary.clone());
                let inner = self.eval(&kids[s]);
                let acc = act_left(&p_tree(&x), &inner);
                self.subtract_corrections(acc, label, &ordinary, &kids[s])
            }
        }
    }
}

/// `p¹` on degree-1 vectors.
pub fn p1_map(x: &TreeVector) -> Result<PairVector> {
    P1Map::new(PeelOrder::First).vector(x)
}

/// `Δ̄(p(x)) − p¹(δ(x))`; vanishes for every degree-0 `x`.
pub fn square_defect(x: &TreeVector) -> Result<PairVector> {
    square_defect_with(x, &mut P1Map::default())
}

/// [`square_defect`] reusing a `p¹` cache.
pub fn square_defect_with(x: &TreeVector, p1: &mut P1Map) -> Result<PairVector> {
    let lhs = reduced_coproduct(&p_map(x)?)?;
    Ok(lhs - p1.vector(&delta(x)?)?)
}

/// Matrix of `δ` on a component: columns are the degree-0 trees, rows the
/// degree-1 trees, both in enumeration order.
pub fn delta_matrix(spec: ComponentSpec) -> Result<SparseMatrix<DecoratedTree, DecoratedTree>> {
    let cols = enumerate_trees(spec.n, spec.mode)?;
    let rows = enumerate_special_trees(spec.n, spec.mode)?;
    let images: Vec<LinComb<DecoratedTree>> = cols.par_iter().map(delta_tree).collect::<Result<_>>()?;
    SparseMatrix::from_columns(rows, cols, &images)
}

/// Reduced basis of `ker δ` on a component: the Lie elements.
pub fn lie_kernel_basis(spec: ComponentSpec) -> Result<SubspaceBasis<DecoratedTree>> {
    Ok(kernel_basis(&delta_matrix(spec)?))
}

/// Basis vectors as degree-0 tree vectors.
pub fn basis_tree_vectors(b: &SubspaceBasis<DecoratedTree>) -> Vec<TreeVector> {
    b.vectors()
        .iter()
        .map(|v| TreeVector::from_lincomb(0, v.clone()).expect("degree-0 basis"))
        .collect()
}

/// Pre-Lie evaluations of the standard bracketings of the component's Lyndon words.
pub fn lyndon_bracket_vectors(spec: ComponentSpec) -> Result<Vec<TreeVector>> {
    lyndon_basis_words(spec.n, spec.mode)?
        .par_iter()
        .map(|w| eval_in_prelie(&standard_bracketing(w)))
        .collect()
}

/// Span of [`lyndon_bracket_vectors`], over the component's tree basis.
pub fn lyndon_span(spec: ComponentSpec) -> Result<SubspaceBasis<DecoratedTree>> {
    let vectors = lyndon_bracket_vectors(spec)?;
    let ambient = Arc::new(enumerate_trees(spec.n, spec.mode)?);
    Ok(SubspaceBasis::from_vectors(vectors.into_iter().map(TreeVector::into_terms)).with_ambient(ambient))
}

/// Outcome of comparing `ker δ` with the free-Lie and primitive oracles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub spec: ComponentSpec,
    pub kernel_dim: usize,
    pub image_dim: usize,
    pub primitive_dim: usize,
    /// `δ` kills every evaluated Lyndon bracketing.
    pub lie_in_kernel: bool,
    /// `p` is injective on `ker δ`.
    pub p_injective: bool,
    /// `p(ker δ)` equals the primitives.
    pub image_is_primitive: bool,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.lie_in_kernel && self.p_injective && self.image_is_primitive
    }
}

/// Checks `δ ∘ i = 0`, injectivity of `p` on `ker δ`, and `p(ker δ) = ker Δ̄`.
pub fn verify_lemma(spec: ComponentSpec) -> Result<LemmaReport> {
    let brackets = lyndon_bracket_vectors(spec)?;
    let deltas: Vec<TreeVector> = brackets.par_iter().map(delta).collect::<Result<_>>()?;
    let lie_in_kernel = deltas.iter().all(TreeVector::is_zero);

    let kernel = lie_kernel_basis(spec)?;
    let images: Vec<TensorVector> = basis_tree_vectors(&kernel).iter().map(p_map).collect::<Result<_>>()?;
    let image = SubspaceBasis::from_vectors(images);
    let primitives = primitive_basis_in(spec.n, spec.mode)?;
    Ok(LemmaReport {
        spec,
        kernel_dim: kernel.dim(),
        image_dim: image.dim(),
        primitive_dim: primitives.dim(),
        lie_in_kernel,
        p_injective: image.dim() == kernel.dim(),
        image_is_primitive: subspaces_equal(&image, &primitives)?,
    })
}
