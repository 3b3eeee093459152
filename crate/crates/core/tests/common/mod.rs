//! Oracles and generators shared by the integration tests. Nothing here calls
//! into the code paths it is used to check.

#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;

use prelie::scalars::{int, LinComb};
use prelie::trees::{DecoratedTree, VertexLabel};

pub fn t(s: &str) -> DecoratedTree {
    prelie::parse_tree(s).unwrap()
}

pub fn node(label: u32, children: Vec<DecoratedTree>) -> DecoratedTree {
    DecoratedTree::new(VertexLabel::ordinary(label).unwrap(), children)
}

/// Tree from a parent array (`parents[v]` for `v ≥ 1`, vertex 0 is the root)
/// and per-vertex labels.
pub fn from_parents(parents: &[usize], labels: &[VertexLabel]) -> DecoratedTree {
    let n = labels.len();
    let mut kids = vec![Vec::new(); n];
    for (i, &p) in parents.iter().enumerate() {
        kids[p].push(i + 1);
    }
    fn build(v: usize, kids: &[Vec<usize>], labels: &[VertexLabel]) -> DecoratedTree {
        DecoratedTree::new(labels[v], kids[v].iter().map(|&c| build(c, kids, labels)).collect())
    }
    build(0, &kids, labels)
}

/// Random multilinear tree on `1..=n` for `n` in the given range.
pub fn arb_tree(sizes: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = DecoratedTree> {
    sizes.prop_flat_map(|n| {
        let parents = proptest::collection::vec(any::<usize>(), n - 1);
        let labels = Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle();
        (parents, labels).prop_map(|(raw, labels)| {
            let parents: Vec<usize> = raw.iter().enumerate().map(|(i, r)| r % (i + 1)).collect();
            let labels: Vec<VertexLabel> = labels.into_iter().map(|l| VertexLabel::ordinary(l).unwrap()).collect();
            from_parents(&parents, &labels)
        })
    })
}

/// Random degree-1 tree: `n` ordinary vertices labelled `1..=n` plus `@`.
pub fn arb_special_tree(sizes: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = DecoratedTree> {
    sizes.prop_flat_map(|n| {
        let parents = proptest::collection::vec(any::<usize>(), n);
        let labels = Just((0..=n as u32).collect::<Vec<_>>()).prop_shuffle();
        (parents, labels).prop_map(|(raw, labels)| {
            let parents: Vec<usize> = raw.iter().enumerate().map(|(i, r)| r % (i + 1)).collect();
            let labels: Vec<VertexLabel> = labels
                .into_iter()
                .map(|l| {
                    if l == 0 {
                        VertexLabel::Special
                    } else {
                        VertexLabel::ordinary(l).unwrap()
                    }
                })
                .collect();
            from_parents(&parents, &labels)
        })
    })
}

/// Decodes a Prüfer sequence into the edge list of a labelled free tree on `0..n`.
pub fn prufer_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    if rest.len() == 2 {
        edges.push((rest[0], rest[1]));
    }
    edges
}

/// Orients a free tree away from `root`, labelling vertex `v` by `v + 1`.
pub fn rooted(edges: &[(usize, usize)], n: usize, root: usize) -> DecoratedTree {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    fn build(v: usize, from: Option<usize>, adj: &[Vec<usize>]) -> DecoratedTree {
        let kids = adj[v]
            .iter()
            .filter(|&&w| Some(w) != from)
            .map(|&w| build(w, Some(v), adj))
            .collect();
        node(v as u32 + 1, kids)
    }
    build(root, None, &adj)
}

/// Merges the special vertex with one neighbour, if the result is a valid
/// contraction of a blow-up (the special vertex has at least two children).
/// Returns `(sign, contracted tree)` for every edge at the special vertex.
pub fn special_edge_contractions(s: &DecoratedTree) -> Vec<(i64, DecoratedTree)> {
    fn at_special(s: &DecoratedTree) -> Vec<(i64, DecoratedTree)> {
        let kids = s.children();
        (0..kids.len())
            .map(|i| {
                let c = &kids[i];
                let mut merged = c.children().to_vec();
                merged.extend(kids.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, k)| k.clone()));
                (1, DecoratedTree::new(c.label(), merged))
            })
            .collect()
    }
    fn walk(s: &DecoratedTree) -> Vec<(i64, DecoratedTree)> {
        let mut out = Vec::new();
        for (i, c) in s.children().iter().enumerate() {
            if c.label().is_special() {
                // the edge from the special vertex up to `s`
                let mut merged: Vec<DecoratedTree> = s
                    .children()
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, k)| k.clone())
                    .collect();
                merged.extend(c.children().iter().cloned());
                out.push((-1, DecoratedTree::new(s.label(), merged)));
                for (sign, sub) in at_special(c) {
                    let mut kids = s.children().to_vec();
                    kids[i] = sub;
                    out.push((sign, DecoratedTree::new(s.label(), kids)));
                }
            } else if c.contains_special() {
                for (sign, sub) in walk(c) {
                    let mut kids = s.children().to_vec();
                    kids[i] = sub;
                    out.push((sign, DecoratedTree::new(s.label(), kids)));
                }
            }
        }
        out
    }
    let special_arity = |s: &DecoratedTree| -> usize {
        fn find(s: &DecoratedTree) -> Option<usize> {
            if s.label().is_special() {
                return Some(s.children().len());
            }
            s.children().iter().find_map(find)
        }
        find(s).unwrap()
    };
    if special_arity(s) < 2 {
        return Vec::new();
    }
    if s.label().is_special() {
        at_special(s)
    } else {
        walk(s)
    }
}

/// `δ` on a whole multilinear component, built row by row from contractions.
pub fn delta_by_contraction(special_trees: &[DecoratedTree]) -> BTreeMap<DecoratedTree, LinComb<DecoratedTree>> {
    let mut out: BTreeMap<DecoratedTree, LinComb<DecoratedTree>> = BTreeMap::new();
    for s in special_trees {
        for (sign, tree) in special_edge_contractions(s) {
            out.entry(tree).or_default().add_term(s.clone(), int(sign));
        }
    }
    out
}

/// Number of rooted trees on `n` vertices with `m` possible vertex colours,
/// by the classical Euler-transform recurrence.
pub fn rooted_tree_count(m: u64, n: usize) -> u64 {
    let mut a = vec![0u64; n + 1];
    if n >= 1 {
        a[1] = m;
    }
    for k in 1..n {
        // a(k+1) = 1/k * Σ_{j=1..k} (Σ_{d|j} d a(d)) a(k-j+1)
        let mut sum = 0u64;
        for j in 1..=k {
            let s: u64 = (1..=j).filter(|d| j % d == 0).map(|d| d as u64 * a[d]).sum();
            sum += s * a[k - j + 1];
        }
        a[k + 1] = sum / k as u64;
    }
    a[n]
}

/// AHU encoding of the underlying unlabelled rooted tree.
pub fn ahu(t: &DecoratedTree) -> String {
    let mut parts: Vec<String> = t.children().iter().map(ahu).collect();
    parts.sort();
    format!("({})", parts.concat())
}
