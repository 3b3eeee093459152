//! The free graded pre-Lie algebra on decorated rooted trees.
//!
//! The product `x ★ y` grafts the root of `y` onto every vertex of `x`. At
//! most one special vertex is ever present, so no Koszul signs arise.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::One;

use crate::error::{Error, Result};
use crate::scalars::{LinComb, Scalar};
use crate::trees::DecoratedTree;

/// Homogeneous linear combination of trees of degree 0 or 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TreeVector {
    degree: u8,
    terms: LinComb<DecoratedTree>,
}

impl TreeVector {
    pub fn zero(degree: u8) -> Self {
        Self {
            degree,
            terms: LinComb::zero(),
        }
    }

    pub fn from_tree(t: DecoratedTree) -> Self {
        Self {
            degree: t.degree(),
            terms: LinComb::basis(t),
        }
    }

    /// Single ordinary vertex.
    pub fn vertex(id: u32) -> Self {
        Self::from_tree(DecoratedTree::vertex(id))
    }

    /// The bare special vertex.
    pub fn special() -> Self {
        Self::from_tree(DecoratedTree::special())
    }

    /// Wraps a combination, checking every key has the declared degree.
    pub fn from_lincomb(degree: u8, terms: LinComb<DecoratedTree>) -> Result<Self> {
        if let Some(bad) = terms.keys().find(|t| t.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: bad.degree(),
            });
        }
        Ok(Self { degree, terms })
    }

    pub fn from_terms<I: IntoIterator<Item = (DecoratedTree, Scalar)>>(degree: u8, terms: I) -> Result<Self> {
        Self::from_lincomb(degree, LinComb::from_terms(terms))
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn terms(&self) -> &LinComb<DecoratedTree> {
        &self.terms
    }

    pub fn into_terms(self) -> LinComb<DecoratedTree> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DecoratedTree, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: &DecoratedTree) -> Scalar {
        self.terms.coefficient(t)
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        Self {
            degree: self.degree,
            terms: self.terms.scaled(c),
        }
    }

    pub(crate) fn expect_degree(&self, expected: u8) -> Result<()> {
        if self.degree != expected {
            return Err(Error::DegreeMismatch {
                expected,
                found: self.degree,
            });
        }
        Ok(())
    }
}

impl Add for TreeVector {
    type Output = Self;
    /// Panics if the degrees differ.
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.degree, rhs.degree, "adding tree vectors of different degree");
        Self {
            degree: self.degree,
            terms: self.terms + rhs.terms,
        }
    }
}

impl Sub for TreeVector {
    type Output = Self;
    /// Panics if the degrees differ.
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.degree, rhs.degree, "subtracting tree vectors of different degree");
        Self {
            degree: self.degree,
            terms: self.terms - rhs.terms,
        }
    }
}

impl Neg for TreeVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            degree: self.degree,
            terms: -self.terms,
        }
    }
}

impl fmt::Display for TreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.terms, f)
    }
}

impl fmt::Debug for TreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[deg {}] {}", self.degree, self.terms)
    }
}

fn check_total_degree(total: u8) -> Result<()> {
    if total > 1 {
        return Err(Error::DegreeOverflow(total));
    }
    Ok(())
}

/// Grafting product on basis trees: one term per vertex of `a`.
pub fn star_trees(a: &DecoratedTree, b: &DecoratedTree) -> LinComb<DecoratedTree> {
    let mut out = LinComb::zero();
    for g in a.graftings(b) {
        out.add_term(g, Scalar::one());
    }
    out
}

/// The pre-Lie product `x ★ y`.
pub fn star(x: &TreeVector, y: &TreeVector) -> Result<TreeVector> {
    let degree = x.degree + y.degree;
    check_total_degree(degree)?;
    let mut terms = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            let c = ca * cb;
            for g in a.graftings(b) {
                terms.add_term(g, c.clone());
            }
        }
    }
    Ok(TreeVector { degree, terms })
}

/// Symmetric brace on basis trees: graft each argument at some vertex of
/// `base`, summed over all assignments of arguments to vertices.
pub fn brace_trees(base: &DecoratedTree, args: &[&DecoratedTree]) -> LinComb<DecoratedTree> {
    let n = base.vertex_count();
    let k = args.len();
    let mut out = LinComb::zero();
    let mut assignment = vec![0usize; k];
    loop {
        let mut attachments: Vec<Vec<DecoratedTree>> = vec![Vec::new(); n];
        for (arg, &v) in args.iter().zip(&assignment) {
            attachments[v].push((*arg).clone());
        }
        out.add_term(base.attach(&attachments), Scalar::one());
        // odometer over {0..n}^k
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            assignment[i] += 1;
            if assignment[i] < n {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// The symmetric brace `x⟨y₁, …, y_k⟩`, multilinear in all arguments.
pub fn brace(x: &TreeVector, args: &[TreeVector]) -> Result<TreeVector> {
    let degree = x.degree + args.iter().map(|a| a.degree).sum::<u8>();
    check_total_degree(degree)?;
    let mut terms = LinComb::zero();
    // Expand the product of the argument combinations term by term.
    let mut partial: Vec<(Vec<&DecoratedTree>, Scalar)> = vec![(Vec::new(), Scalar::one())];
    for arg in args {
        let mut next = Vec::with_capacity(partial.len() * arg.len());
        for (trees, c) in &partial {
            for (t, ct) in arg.iter() {
                let mut trees = trees.clone();
                trees.push(t);
                next.push((trees, c * ct));
            }
        }
        partial = next;
    }
    for (base, cb) in x.iter() {
        for (trees, c) in &partial {
            terms.add_scaled(&brace_trees(base, trees), &(cb * c));
        }
    }
    Ok(TreeVector { degree, terms })
}

/// Commutator `[x, y] = x ★ y − y ★ x` on degree-0 vectors.
pub fn bracket(x: &TreeVector, y: &TreeVector) -> Result<TreeVector> {
    x.expect_degree(0)?;
    y.expect_degree(0)?;
    Ok(star(x, y)? - star(y, x)?)
}

/// Associator `Φ(x, y, z) = (x ★ y) ★ z − x ★ (y ★ z)`.
pub fn associator(x: &TreeVector, y: &TreeVector, z: &TreeVector) -> Result<TreeVector> {
    check_total_degree(x.degree + y.degree + z.degree)?;
    Ok(star(&star(x, y)?, z)? - star(x, &star(y, z)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;
    use crate::trees::parse_tree;

    fn tv(s: &str) -> TreeVector {
        TreeVector::from_tree(parse_tree(s).unwrap())
    }

    fn combo(terms: &[(i64, &str)]) -> TreeVector {
        let degree = parse_tree(terms[0].1).unwrap().degree();
        TreeVector::from_terms(degree, terms.iter().map(|(c, s)| (parse_tree(s).unwrap(), int(*c)))).unwrap()
    }

    /// Brace through the pre-Lie recursion only:
    /// x⟨y₁..y_k, z⟩ = x⟨y₁..y_k⟩ ★ z − Σᵢ x⟨y₁, .., yᵢ ★ z, .., y_k⟩.
    fn brace_by_recursion(x: &TreeVector, args: &[TreeVector]) -> TreeVector {
        match args.split_last() {
            None => x.clone(),
            Some((z, rest)) => {
                let mut out = star(&brace_by_recursion(x, rest), z).unwrap();
                for i in 0..rest.len() {
                    let mut modified = rest.to_vec();
                    modified[i] = star(&rest[i], z).unwrap();
                    out = out - brace_by_recursion(x, &modified);
                }
                out
            }
        }
    }

    #[test]
    fn star_examples() {
        assert_eq!(star(&tv("1"), &tv("2")).unwrap(), tv("1(2)"));
        assert_eq!(
            star(&tv("1(2)"), &tv("3")).unwrap(),
            combo(&[(1, "1(2,3)"), (1, "1(2(3))")])
        );
        assert_eq!(star(&tv("@"), &tv("1")).unwrap(), tv("@(1)"));
        assert_eq!(star(&tv("@"), &tv("1(@)")), Err(Error::DegreeOverflow(2)));
    }

    #[test]
    fn brace_examples() {
        assert_eq!(brace(&tv("1"), &[tv("2"), tv("3")]).unwrap(), tv("1(2,3)"));
        let a = tv("1(2)");
        let b = tv("3");
        assert_eq!(brace(&tv("@"), &[a, b]).unwrap(), tv("@(1(2),3)"));
        assert_eq!(brace(&tv("1(2)"), &[]).unwrap(), tv("1(2)"));
        assert!(brace(&tv("@"), &[tv("1(@)")]).is_err());
    }

    #[test]
    fn brace_matches_recursion() {
        let x = tv("1(2)");
        let args = [tv("3"), tv("4(5)"), tv("6")];
        for k in 0..=3 {
            assert_eq!(
                brace(&x, &args[..k]).unwrap(),
                brace_by_recursion(&x, &args[..k]),
                "k = {k}"
            );
        }
        let x = tv("@(1)");
        assert_eq!(brace(&x, &args[..2]).unwrap(), brace_by_recursion(&x, &args[..2]));
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(
            bracket(&tv("1"), &tv("2")).unwrap(),
            combo(&[(1, "1(2)"), (-1, "2(1)")])
        );
        let x = combo(&[(2, "1(2)"), (-1, "3")]);
        assert!(bracket(&x, &x).unwrap().is_zero());
        let inner = bracket(&tv("2"), &tv("3")).unwrap();
        let outer = bracket(&tv("1"), &inner).unwrap();
        assert_eq!(outer.len(), 6);
        assert!(bracket(&tv("@"), &tv("1")).is_err());
    }

    #[test]
    fn associator_examples() {
        let (a, b, c) = (tv("1"), tv("2"), tv("3"));
        assert_eq!(associator(&a, &b, &c).unwrap(), tv("1(2,3)"));
        assert!((associator(&a, &b, &c).unwrap() - associator(&a, &c, &b).unwrap()).is_zero());
        let (p, q) = (tv("1(2)"), tv("3"));
        assert_eq!(associator(&tv("@"), &p, &q).unwrap(), brace(&tv("@"), &[p, q]).unwrap());
    }

    #[test]
    fn grafting_term_count_before_merging() {
        let t = parse_tree("1(2(3),4)").unwrap();
        assert_eq!(t.graftings(&parse_tree("5").unwrap()).len(), 4);
    }
}
