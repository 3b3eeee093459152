//! Decorated rooted trees in canonical form.
//!
//! A [`DecoratedTree`] always stores its children sorted by [`Ord`], so two
//! trees are isomorphic (as labeled rooted trees) exactly when they are equal.
//! The order compares, in turn: label kind (ordinary before special), label
//! id, number of children, and then the sorted children lexicographically.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Index of a generator of the alphabet; always at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorLabel(u32);

impl GeneratorLabel {
    pub fn new(id: u32) -> Result<Self> {
        if id == 0 {
            return Err(Error::InvalidArgument("generator labels start at 1".into()));
        }
        Ok(Self(id))
    }

    pub fn id(self) -> u32 {
        self.0
    }
}

impl fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Decoration of a vertex: a generator (degree 0) or the special dummy (degree 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexLabel {
    Ordinary(GeneratorLabel),
    Special,
}

impl VertexLabel {
    pub fn ordinary(id: u32) -> Result<Self> {
        GeneratorLabel::new(id).map(Self::Ordinary)
    }

    pub fn is_special(self) -> bool {
        matches!(self, Self::Special)
    }

    pub fn degree(self) -> u8 {
        u8::from(self.is_special())
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ordinary(g) => write!(f, "{g}"),
            Self::Special => write!(f, "@"),
        }
    }
}

/// Rooted tree with decorated vertices, kept in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DecoratedTree {
    label: VertexLabel,
    children: Vec<DecoratedTree>,
}

impl Ord for DecoratedTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.label
            .cmp(&other.label)
            .then_with(|| self.children.len().cmp(&other.children.len()))
            .then_with(|| self.children.iter().cmp(other.children.iter()))
    }
}

impl PartialOrd for DecoratedTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order on canonical trees; `Equal` exactly for isomorphic trees.
pub fn canonical_compare(a: &DecoratedTree, b: &DecoratedTree) -> Ordering {
    a.cmp(b)
}

impl DecoratedTree {
    /// Builds a tree; the children are sorted into canonical order.
    pub fn new(label: VertexLabel, mut children: Vec<DecoratedTree>) -> Self {
        children.sort();
        Self { label, children }
    }

    pub fn leaf(label: VertexLabel) -> Self {
        Self {
            label,
            children: Vec::new(),
        }
    }

    /// Single ordinary vertex. Panics on label 0.
    pub fn vertex(id: u32) -> Self {
        Self::leaf(VertexLabel::ordinary(id).expect("nonzero generator label"))
    }

    /// The bare special vertex `@`.
    pub fn special() -> Self {
        Self::leaf(VertexLabel::Special)
    }

    pub fn label(&self) -> VertexLabel {
        self.label
    }

    pub fn children(&self) -> &[DecoratedTree] {
        &self.children
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.children.iter().map(Self::vertex_count).sum::<usize>()
    }

    /// Number of ordinary (non-special) vertices.
    pub fn ordinary_count(&self) -> usize {
        self.vertex_count() - self.degree() as usize
    }

    /// Number of special vertices.
    pub fn degree(&self) -> u8 {
        self.label.degree() + self.children.iter().map(Self::degree).sum::<u8>()
    }

    pub fn contains_special(&self) -> bool {
        self.label.is_special() || self.children.iter().any(Self::contains_special)
    }

    /// Re-sorts every child list. Trees built through this API are already
    /// canonical, so this is the identity on them.
    pub fn canonicalize(&self) -> Self {
        Self::new(self.label, self.children.iter().map(Self::canonicalize).collect())
    }

    /// Labels in preorder (root first, children in canonical order).
    pub fn labels_preorder(&self) -> Vec<VertexLabel> {
        let mut out = Vec::with_capacity(self.vertex_count());
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut Vec<VertexLabel>) {
        out.push(self.label);
        for c in &self.children {
            c.collect_labels(out);
        }
    }

    /// Generator ids of the ordinary vertices, sorted.
    pub fn generator_multiset(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self
            .labels_preorder()
            .into_iter()
            .filter_map(|l| match l {
                VertexLabel::Ordinary(g) => Some(g.id()),
                VertexLabel::Special => None,
            })
            .collect();
        ids.sort_unstable();
        ids
    }

    /// True iff every vertex has at most one child. Only defined in degree 0.
    pub fn is_linear(&self) -> Result<bool> {
        expect_degree(self, 0)?;
        Ok(self.is_chain())
    }

    pub(crate) fn is_chain(&self) -> bool {
        match self.children.as_slice() {
            [] => true,
            [c] => c.is_chain(),
            _ => false,
        }
    }

    /// Applies `f` to every vertex label and re-canonicalizes.
    pub fn map_labels<F: FnMut(VertexLabel) -> VertexLabel>(&self, f: &mut F) -> Self {
        let label = f(self.label);
        Self::new(label, self.children.iter().map(|c| c.map_labels(f)).collect())
    }

    /// Fallible variant of [`DecoratedTree::map_labels`].
    pub fn try_map_labels<F: FnMut(VertexLabel) -> Result<VertexLabel>>(&self, f: &mut F) -> Result<Self> {
        let label = f(self.label)?;
        let children = self
            .children
            .iter()
            .map(|c| c.try_map_labels(f))
            .collect::<Result<_>>()?;
        Ok(Self::new(label, children))
    }

    /// Replaces the labels of ordinary vertices, visited in preorder, by `labels`.
    pub fn with_preorder_labels(&self, labels: &mut impl Iterator<Item = GeneratorLabel>) -> Self {
        let label = match self.label {
            VertexLabel::Ordinary(_) => VertexLabel::Ordinary(labels.next().expect("enough labels")),
            VertexLabel::Special => VertexLabel::Special,
        };
        let children = self.children.iter().map(|c| c.with_preorder_labels(labels)).collect();
        Self::new(label, children)
    }

    /// Attaches extra subtrees below vertices addressed by preorder index.
    ///
    /// `attachments[i]` lists the trees grafted as new children of vertex `i`.
    pub fn attach(&self, attachments: &[Vec<DecoratedTree>]) -> Self {
        let mut index = 0;
        self.attach_rec(attachments, &mut index)
    }

    fn attach_rec(&self, attachments: &[Vec<DecoratedTree>], index: &mut usize) -> Self {
        let here = *index;
        *index += 1;
        let mut children: Vec<DecoratedTree> = self.children.iter().map(|c| c.attach_rec(attachments, index)).collect();
        if let Some(extra) = attachments.get(here) {
            children.extend(extra.iter().cloned());
        }
        Self::new(self.label, children)
    }

    /// All trees obtained by grafting `scion` as a new child of one vertex,
    /// one entry per vertex of `self` (duplicates kept).
    pub fn graftings(&self, scion: &DecoratedTree) -> Vec<DecoratedTree> {
        let mut out = Vec::with_capacity(self.vertex_count());
        let mut with_root = self.children.clone();
        with_root.push(scion.clone());
        out.push(Self::new(self.label, with_root));
        for (i, child) in self.children.iter().enumerate() {
            for g in child.graftings(scion) {
                let mut children = self.children.clone();
                children[i] = g;
                out.push(Self::new(self.label, children));
            }
        }
        out
    }

    /// Replaces the subtree rooted at preorder index `target` by `f(subtree)`.
    pub fn replace_subtree<F: FnOnce(&DecoratedTree) -> DecoratedTree>(&self, target: usize, f: F) -> Self {
        let mut f = Some(f);
        let mut index = 0;
        self.replace_rec(target, &mut index, &mut f)
    }

    fn replace_rec<F: FnOnce(&DecoratedTree) -> DecoratedTree>(
        &self,
        target: usize,
        index: &mut usize,
        f: &mut Option<F>,
    ) -> Self {
        if *index == target {
            *index += self.vertex_count();
            return (f.take().expect("target visited once"))(self);
        }
        *index += 1;
        let children = self.children.iter().map(|c| c.replace_rec(target, index, f)).collect();
        Self::new(self.label, children)
    }

    /// Subtrees in preorder, paired with their preorder index.
    pub fn subtrees_preorder(&self) -> Vec<&DecoratedTree> {
        let mut out = Vec::with_capacity(self.vertex_count());
        fn walk<'a>(t: &'a DecoratedTree, out: &mut Vec<&'a DecoratedTree>) {
            out.push(t);
            for c in &t.children {
                walk(c, out);
            }
        }
        walk(self, &mut out);
        out
    }
}

pub(crate) fn expect_degree(t: &DecoratedTree, expected: u8) -> Result<()> {
    let found = t.degree();
    if found != expected {
        return Err(Error::DegreeMismatch { expected, found });
    }
    Ok(())
}

impl fmt::Display for DecoratedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)?;
        if !self.children.is_empty() {
            write!(f, "(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DecoratedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical text of a tree, e.g. `1(2(3))` or `@(1(3),2)`.
pub fn render_tree(t: &DecoratedTree) -> String {
    t.to_string()
}

/// Parses `tree := label ['(' tree (',' tree)* ')']` with labels `[1-9][0-9]*` or `@`.
/// Whitespace between tokens is ignored.
pub fn parse_tree(text: &str) -> Result<DecoratedTree> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        special_seen: false,
    };
    let t = p.tree()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("trailing input"));
    }
    Ok(t)
}

impl FromStr for DecoratedTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_tree(s)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    special_seen: bool,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn tree(&mut self) -> Result<DecoratedTree> {
        let label = self.label()?;
        let mut children = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            loop {
                children.push(self.tree()?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    Some(_) => return Err(self.error("expected ',' or ')'")),
                    None => return Err(self.error("unexpected end of input, expected ')'")),
                }
            }
        }
        Ok(DecoratedTree::new(label, children))
    }

    fn label(&mut self) -> Result<VertexLabel> {
        match self.peek() {
            Some(b'@') => {
                if self.special_seen {
                    return Err(Error::MultipleSpecial { offset: self.pos });
                }
                self.special_seen = true;
                self.pos += 1;
                Ok(VertexLabel::Special)
            }
            Some(b'0'..=b'9') => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = &self.bytes[start..self.pos];
                if digits.iter().all(|&d| d == b'0') {
                    return Err(Error::ZeroLabel { offset: start });
                }
                if digits[0] == b'0' {
                    return Err(Error::Syntax {
                        offset: start,
                        message: "leading zero in label".into(),
                    });
                }
                let id: u32 = std::str::from_utf8(digits)
                    .expect("ascii digits")
                    .parse()
                    .map_err(|_| Error::Syntax {
                        offset: start,
                        message: "label out of range".into(),
                    })?;
                Ok(VertexLabel::Ordinary(GeneratorLabel(id)))
            }
            Some(_) => Err(self.error("expected a label (positive integer or '@')")),
            None => Err(self.error("unexpected end of input, expected a label")),
        }
    }
}

/// A bijection of `{1, …, n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// `images[i - 1]` is the image of `i`.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x as usize > n || std::mem::replace(&mut seen[x as usize - 1], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..={n}"
                )));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n as u32).collect(),
        }
    }

    /// Swaps `a` and `b`.
    pub fn transposition(n: usize, a: u32, b: u32) -> Result<Self> {
        let mut images: Vec<u32> = (1..=n as u32).collect();
        for x in [a, b] {
            if x == 0 || x as usize > n {
                return Err(Error::LabelOutOfDomain { label: x, size: n });
            }
        }
        images.swap(a as usize - 1, b as usize - 1);
        Ok(Self { images })
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, i: u32) -> Result<u32> {
        if i == 0 || i as usize > self.images.len() {
            return Err(Error::LabelOutOfDomain {
                label: i,
                size: self.images.len(),
            });
        }
        Ok(self.images[i as usize - 1])
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::InvalidPermutation(
                "composing permutations of different sizes".into(),
            ));
        }
        Ok(Self {
            images: other.images.iter().map(|&i| self.images[i as usize - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize - 1] = i as u32 + 1;
        }
        Self { images }
    }

    /// All permutations of `{1..n}` in lexicographic order of their image lists.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current: Vec<u32> = (1..=n as u32).collect();
        loop {
            out.push(Self {
                images: current.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        out
    }
}

/// Replaces each ordinary label `i` by `σ(i)`; the special vertex is fixed.
pub fn relabel(t: &DecoratedTree, sigma: &Permutation) -> Result<DecoratedTree> {
    t.try_map_labels(&mut |l| match l {
        VertexLabel::Ordinary(g) => Ok(VertexLabel::Ordinary(GeneratorLabel(sigma.apply(g.id())?))),
        VertexLabel::Special => Ok(VertexLabel::Special),
    })
}

/// Which decorations enumeration uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Labels `1..=n`, each used exactly once.
    Multilinear,
    /// Labels from `1..=m`, repetition allowed, trees up to isomorphism.
    Alphabet(u32),
}

/// Parent arrays of all labeled rooted trees on `n` vertices (`None` marks the root).
fn parent_functions(n: usize) -> Vec<Vec<Option<usize>>> {
    (0..n)
        .into_par_iter()
        .flat_map_iter(|root| {
            let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
            let total = n.pow(others.len() as u32);
            (0..total).filter_map(move |mut code| {
                let mut parent = vec![None; n];
                for &v in &others {
                    parent[v] = Some(code % n);
                    code /= n;
                }
                reaches_root(&parent).then_some(parent)
            })
        })
        .collect()
}

fn reaches_root(parent: &[Option<usize>]) -> bool {
    let n = parent.len();
    (0..n).all(|start| {
        let mut v = start;
        for _ in 0..n {
            match parent[v] {
                None => return true,
                Some(p) => v = p,
            }
        }
        false
    })
}

fn build_from_parents(parent: &[Option<usize>], labels: &[VertexLabel]) -> DecoratedTree {
    let n = parent.len();
    let mut kids = vec![Vec::new(); n];
    let mut root = 0;
    for (v, p) in parent.iter().enumerate() {
        match p {
            Some(p) => kids[*p].push(v),
            None => root = v,
        }
    }
    fn build(v: usize, kids: &[Vec<usize>], labels: &[VertexLabel]) -> DecoratedTree {
        DecoratedTree::new(labels[v], kids[v].iter().map(|&c| build(c, kids, labels)).collect())
    }
    build(root, &kids, labels)
}

/// Canonical labeled trees on vertex set `labels` (one vertex per entry).
fn labeled_trees(labels: &[VertexLabel]) -> Vec<DecoratedTree> {
    let mut trees: Vec<DecoratedTree> = parent_functions(labels.len())
        .par_iter()
        .map(|p| build_from_parents(p, labels))
        .collect();
    trees.par_sort();
    trees.dedup();
    trees
}

fn ordinary_labels(n: usize) -> Vec<VertexLabel> {
    (1..=n as u32)
        .map(|i| VertexLabel::Ordinary(GeneratorLabel(i)))
        .collect()
}

/// Substitutes every label assignment from `1..=m` into the given shapes.
fn decorate_shapes(shapes: &[DecoratedTree], m: u32) -> Vec<DecoratedTree> {
    let out: BTreeSet<DecoratedTree> = shapes
        .par_iter()
        .flat_map_iter(|shape| {
            let k = shape.ordinary_count();
            let total = (m as usize).pow(k as u32);
            (0..total).map(move |mut code| {
                let mut labels = Vec::with_capacity(k);
                for _ in 0..k {
                    labels.push(GeneratorLabel(1 + (code % m as usize) as u32));
                    code /= m as usize;
                }
                shape.with_preorder_labels(&mut labels.into_iter())
            })
        })
        .collect();
    out.into_iter().collect()
}

fn shapes_of(trees: &[DecoratedTree]) -> Vec<DecoratedTree> {
    let one = VertexLabel::Ordinary(GeneratorLabel(1));
    let set: BTreeSet<DecoratedTree> = trees
        .iter()
        .map(|t| t.map_labels(&mut |l| if l.is_special() { l } else { one }))
        .collect();
    set.into_iter().collect()
}

/// All canonical degree-0 trees with `n` vertices, sorted by [`canonical_compare`].
pub fn enumerate_trees(n: usize, mode: Mode) -> Result<Vec<DecoratedTree>> {
    if n == 0 {
        return Err(Error::InvalidArgument("trees have at least one vertex".into()));
    }
    let labeled = labeled_trees(&ordinary_labels(n));
    match mode {
        Mode::Multilinear => Ok(labeled),
        Mode::Alphabet(0) => Err(Error::InvalidArgument("alphabet size must be at least 1".into())),
        Mode::Alphabet(m) => Ok(decorate_shapes(&shapes_of(&labeled), m)),
    }
}

/// All canonical degree-1 trees with `n` ordinary vertices and one special vertex.
pub fn enumerate_special_trees(n: usize, mode: Mode) -> Result<Vec<DecoratedTree>> {
    let mut labels = ordinary_labels(n);
    labels.push(VertexLabel::Special);
    let labeled = labeled_trees(&labels);
    match mode {
        Mode::Multilinear => Ok(labeled),
        Mode::Alphabet(0) => Err(Error::InvalidArgument("alphabet size must be at least 1".into())),
        Mode::Alphabet(m) => Ok(decorate_shapes(&shapes_of(&labeled), m)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> DecoratedTree {
        parse_tree(s).unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(canonical_compare(&t("@"), &t("@")), Ordering::Equal);
        assert_eq!(canonical_compare(&t("1"), &t("1(2)")), Ordering::Less);
        assert_eq!(t("1(3,2)").children(), &[t("2"), t("3")]);
    }

    #[test]
    fn parse_examples() {
        let a = t("1(2,3)");
        assert_eq!(a.label(), VertexLabel::ordinary(1).unwrap());
        assert_eq!(a.children(), &[DecoratedTree::vertex(2), DecoratedTree::vertex(3)]);
        let b = t("@(1,2)");
        assert_eq!(b.label(), VertexLabel::Special);
        assert_eq!(b.children().len(), 2);
        assert_eq!(t("1(3,2)"), a);
        assert_eq!(t(" 1 ( 2 , 3 ) "), a);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_tree("1(2"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_tree("1(,2)"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(
            parse_tree("@(1,@)"),
            Err(Error::MultipleSpecial { offset: 4 })
        ));
        assert!(matches!(parse_tree("1(0)"), Err(Error::ZeroLabel { offset: 2 })));
        assert!(matches!(parse_tree("01"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_tree("1)"), Err(Error::Syntax { offset: 1, .. })));
        assert!(matches!(parse_tree(""), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse_tree("x"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn render_examples() {
        assert_eq!(render_tree(&DecoratedTree::vertex(1)), "1");
        let chain = DecoratedTree::new(
            VertexLabel::ordinary(1).unwrap(),
            vec![DecoratedTree::new(
                VertexLabel::ordinary(2).unwrap(),
                vec![DecoratedTree::vertex(3)],
            )],
        );
        assert_eq!(render_tree(&chain), "1(2(3))");
        assert_eq!(render_tree(&t("@(2,1(3))")), "@(1(3),2)");
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_trees(1, Mode::Multilinear).unwrap().len(), 1);
        assert_eq!(enumerate_trees(3, Mode::Multilinear).unwrap().len(), 9);
        assert_eq!(enumerate_trees(4, Mode::Multilinear).unwrap().len(), 64);
        assert_eq!(
            enumerate_special_trees(0, Mode::Multilinear).unwrap(),
            vec![DecoratedTree::special()]
        );
        assert_eq!(enumerate_special_trees(1, Mode::Multilinear).unwrap().len(), 2);
        assert_eq!(enumerate_special_trees(2, Mode::Multilinear).unwrap().len(), 9);
        assert!(enumerate_trees(0, Mode::Multilinear).is_err());
        let two: Vec<String> = enumerate_trees(2, Mode::Multilinear)
            .unwrap()
            .iter()
            .map(render_tree)
            .collect();
        assert_eq!(two, vec!["1(2)", "2(1)"]);
    }

    #[test]
    fn enumeration_is_sorted_and_unique() {
        for n in 1..=5 {
            let ts = enumerate_trees(n, Mode::Multilinear).unwrap();
            assert!(ts.windows(2).all(|w| w[0] < w[1]));
            let ts = enumerate_trees(n, Mode::Alphabet(2)).unwrap();
            assert!(ts.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn relabel_examples() {
        let id = Permutation::identity(2);
        let swap = Permutation::transposition(2, 1, 2).unwrap();
        assert_eq!(relabel(&t("1(2)"), &id).unwrap(), t("1(2)"));
        assert_eq!(relabel(&t("1(2)"), &swap).unwrap(), t("2(1)"));
        assert_eq!(relabel(&t("@(1,2)"), &swap).unwrap(), t("@(1,2)"));
        assert!(matches!(
            relabel(&t("1(3)"), &swap),
            Err(Error::LabelOutOfDomain { label: 3, size: 2 })
        ));
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::from_images(vec![1, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 1]).is_err());
        let p = Permutation::from_images(vec![2, 3, 1]).unwrap();
        assert_eq!(p.compose(&p.inverse()).unwrap(), Permutation::identity(3));
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn linearity() {
        assert!(t("1(2(3))").is_linear().unwrap());
        assert!(!t("1(2,3)").is_linear().unwrap());
        assert!(t("1").is_linear().unwrap());
        assert!(matches!(
            t("1(@)").is_linear(),
            Err(Error::DegreeMismatch { expected: 0, found: 1 })
        ));
    }

    #[test]
    fn grafting_sites() {
        let g = t("1(2)").graftings(&t("3"));
        assert_eq!(g, vec![t("1(2,3)"), t("1(2(3))")]);
    }

    #[test]
    fn replace_and_attach() {
        let base = t("1(2,3(4))");
        // preorder: 1, 2, 3, 4
        assert_eq!(base.replace_subtree(2, |_| t("5")), t("1(2,5)"));
        let att = vec![vec![], vec![t("6")], vec![], vec![t("7")]];
        assert_eq!(base.attach(&att), t("1(2(6),3(4(7)))"));
    }
}
