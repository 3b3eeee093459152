//! Blow-ups of degree-0 trees and the differential `δ : Tr → Tr¹`.
//!
//! A blow-up replaces one vertex `w` by an edge between `w` and a new special
//! vertex `@`, redistributing the children of `w` so that `@` ends up with at
//! least two children. Contracting that edge gives back the original tree.
//!
//! Children are chosen by position, not by value: when `w` has equal child
//! subtrees (repeated labels), each choice is a separate blow-up. This is the
//! image of the labeled computation under substitution of labels, so `δ`
//! commutes with decorating.

use crate::error::{Error, Result};
use crate::prelie::{brace, star, TreeVector};
use crate::scalars::{LinComb, Scalar};
use crate::trees::{expect_degree, DecoratedTree, VertexLabel};

/// Position of the blown-up edge relative to the special vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeRole {
    /// The edge enters `@` from below; `@` took the place of `w`. Sign `+1`.
    Incoming,
    /// The edge leaves `@` towards its parent `w`. Sign `−1`.
    Outgoing,
}

impl EdgeRole {
    pub fn sign(self) -> i64 {
        match self {
            Self::Incoming => 1,
            Self::Outgoing => -1,
        }
    }
}

/// A blow-up `(S, e)` of a tree `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowUp {
    tree: DecoratedTree,
    role: EdgeRole,
    site: usize,
    moved: Vec<usize>,
    /// For incoming edges: the child of `@` across the special edge.
    edge_child: Option<DecoratedTree>,
}

impl BlowUp {
    /// The degree-1 tree `S`.
    pub fn tree(&self) -> &DecoratedTree {
        &self.tree
    }

    pub fn role(&self) -> EdgeRole {
        self.role
    }

    /// Preorder index, in `T`, of the vertex that was blown up.
    pub fn site(&self) -> usize {
        self.site
    }

    /// Positions (in canonical child order of the site) of the children moved under `@`.
    pub fn moved(&self) -> &[usize] {
        &self.moved
    }

    pub fn sign(&self) -> i64 {
        self.role.sign()
    }

    /// Contracts the special edge, recovering the original tree.
    pub fn contract(&self) -> DecoratedTree {
        contract_rec(&self.tree, self.edge_child.as_ref()).expect("blow-up contains its special edge")
    }
}

fn contract_rec(t: &DecoratedTree, edge_child: Option<&DecoratedTree>) -> Option<DecoratedTree> {
    match edge_child {
        Some(child) if t.label().is_special() => {
            let i = t.children().iter().position(|c| c == child)?;
            let mut merged: Vec<DecoratedTree> = child.children().to_vec();
            merged.extend(
                t.children()
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, c)| c.clone()),
            );
            return Some(DecoratedTree::new(child.label(), merged));
        }
        None => {
            if let Some(i) = t.children().iter().position(|c| c.label().is_special()) {
                let special = &t.children()[i];
                let mut merged: Vec<DecoratedTree> = special.children().to_vec();
                merged.extend(
                    t.children()
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, c)| c.clone()),
                );
                return Some(DecoratedTree::new(t.label(), merged));
            }
        }
        _ => {}
    }
    let i = t.children().iter().position(DecoratedTree::contains_special)?;
    let mut children = t.children().to_vec();
    children[i] = contract_rec(&t.children()[i], edge_child)?;
    Some(DecoratedTree::new(t.label(), children))
}

/// All blow-ups of a degree-0 tree, with multiplicity.
///
/// Ordered by site (preorder), then by the bitmask of moved children, with the
/// incoming blow-up before the outgoing one for the same mask.
pub fn blow_ups(t: &DecoratedTree) -> Result<Vec<BlowUp>> {
    expect_degree(t, 0)?;
    let mut out = Vec::new();
    for (site, sub) in t.subtrees_preorder().into_iter().enumerate() {
        let kids = sub.children();
        let c = kids.len();
        if c >= usize::BITS as usize - 1 {
            return Err(Error::InvalidArgument(format!(
                "vertex with {c} children is too wide to blow up"
            )));
        }
        for mask in 1usize..(1 << c) {
            let moved: Vec<usize> = (0..c).filter(|i| mask >> i & 1 == 1).collect();
            let inside: Vec<DecoratedTree> = moved.iter().map(|&i| kids[i].clone()).collect();
            let rest: Vec<DecoratedTree> = (0..c).filter(|i| mask >> i & 1 == 0).map(|i| kids[i].clone()).collect();

            let lowered = DecoratedTree::new(sub.label(), rest.clone());
            let mut under_special = inside.clone();
            under_special.push(lowered.clone());
            let s = DecoratedTree::new(VertexLabel::Special, under_special);
            out.push(BlowUp {
                tree: t.replace_subtree(site, |_| s),
                role: EdgeRole::Incoming,
                site,
                moved: moved.clone(),
                edge_child: Some(lowered),
            });

            if moved.len() >= 2 {
                let mut children = rest;
                children.push(DecoratedTree::new(VertexLabel::Special, inside));
                let s = DecoratedTree::new(sub.label(), children);
                out.push(BlowUp {
                    tree: t.replace_subtree(site, |_| s),
                    role: EdgeRole::Outgoing,
                    site,
                    moved,
                    edge_child: None,
                });
            }
        }
    }
    Ok(out)
}

/// `δ(T) = Σ ε · S` over the blow-ups of a basis tree.
pub fn delta_tree(t: &DecoratedTree) -> Result<LinComb<DecoratedTree>> {
    let mut out = LinComb::zero();
    for b in blow_ups(t)? {
        out.add_term(b.tree, Scalar::from_integer(b.role.sign().into()));
    }
    Ok(out)
}

/// The differential on degree-0 vectors.
pub fn delta(x: &TreeVector) -> Result<TreeVector> {
    x.expect_degree(0)?;
    let terms = x.terms().try_map_linear(delta_tree)?;
    TreeVector::from_lincomb(1, terms)
}

/// `δ(a★b) − δ(a)★b − a★δ(b) − @⟨a,b⟩`, which vanishes identically.
pub fn leibniz_defect(a: &TreeVector, b: &TreeVector) -> Result<TreeVector> {
    a.expect_degree(0)?;
    b.expect_degree(0)?;
    let lhs = delta(&star(a, b)?)?;
    let q = brace(&TreeVector::special(), &[a.clone(), b.clone()])?;
    Ok(lhs - star(&delta(a)?, b)? - star(a, &delta(b)?)? - q)
}

/// Number of blow-ups predicted from child counts: per vertex with `c`
/// children, `2^c − 1` incoming and `2^c − 1 − c` outgoing.
pub fn expected_blow_up_count(t: &DecoratedTree) -> usize {
    t.subtrees_preorder()
        .iter()
        .map(|s| {
            let c = s.children().len();
            let subsets = (1usize << c) - 1;
            subsets + (subsets - c)
        })
        .sum()
}

/// Convenience: `δ` of a single tree wrapped as a vector.
pub fn delta_of(t: &DecoratedTree) -> Result<TreeVector> {
    delta(&TreeVector::from_tree(t.clone()))
}
