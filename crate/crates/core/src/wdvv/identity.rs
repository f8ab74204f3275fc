//! Coefficient identities of the WDVV equations in sum form.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{group_table, GroupData, GroupName};
use crate::linalg::Equation;
use crate::rational::{binomial, Rational};
use crate::series::degree;
use crate::table::HurwitzTable;

/// `coeff * <left> * <right>`, with class counts indexed by all classes
/// (index 0 is the trivial class).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityTerm {
    #[serde(with = "crate::rational::serde_str")]
    pub coeff: Rational,
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WdvvIdentity {
    pub group: GroupName,
    /// Exponents over the nontrivial classes.
    pub base: Vec<u32>,
    /// `(a1 a2 | a3 a4)` as class indices; the other side is `(a1 a3 | a2 a4)`.
    pub quadruple: [usize; 4],
    pub lhs_terms: Vec<IdentityTerm>,
    pub rhs_terms: Vec<IdentityTerm>,
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

fn add(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// All componentwise splits `s <= base`.
fn splits(base: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in base {
        out = out.into_iter().flat_map(|p: Vec<u32>| (0..=b).map(move |k| [p.clone(), vec![k]].concat())).collect();
    }
    out
}

/// True when the entry is zero for structural reasons: an abelianization
/// obstruction, a trivial insertion beyond length three, or fewer than three insertions.
pub fn structurally_zero(g: &GroupData, counts: &[u32]) -> bool {
    let len = degree(counts);
    len < 3 || (counts[0] > 0 && len > 3) || g.monodromy_vanishes_full(counts)
}

fn side(g: &GroupData, base: &[u32], pair_left: [usize; 2], pair_right: [usize; 2]) -> Vec<IdentityTerm> {
    let n = g.num_classes();
    let mut full_base = vec![0];
    full_base.extend_from_slice(base);
    let mut merged: BTreeMap<(Vec<u32>, Vec<u32>), Rational> = BTreeMap::new();
    for s in splits(&full_base) {
        let rest: Vec<u32> = full_base.iter().zip(&s).map(|(b, k)| b - k).collect();
        let weight = full_base.iter().zip(&s).fold(num_bigint::BigInt::from(1), |acc, (&b, &k)| acc * binomial(b, k));
        let left0 = add(&add(&s, &unit(n, pair_left[0])), &unit(n, pair_left[1]));
        let right0 = add(&add(&rest, &unit(n, pair_right[0])), &unit(n, pair_right[1]));
        for mid in 0..n {
            let left = add(&left0, &unit(n, mid));
            let right = add(&right0, &unit(n, g.inverse_involution[mid]));
            if structurally_zero(g, &left) || structurally_zero(g, &right) {
                continue;
            }
            let c = Rational::from_integer(&weight * g.z[mid]);
            *merged.entry((left, right)).or_insert_with(Rational::zero) += c;
        }
    }
    merged
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((left, right), coeff)| IdentityTerm { coeff, left, right })
        .collect()
}

/// Expands `<base (a1 a2 | a3 a4)> = <base (a1 a3 | a2 a4)>` over splittings
/// of the base and all middle classes.
pub fn generate_identity(group: GroupName, base: &[u32], quadruple: [usize; 4]) -> WdvvIdentity {
    let g = group_table(group);
    let [a1, a2, a3, a4] = quadruple;
    WdvvIdentity {
        group,
        base: base.to_vec(),
        quadruple,
        lhs_terms: side(g, base, [a1, a2], [a3, a4]),
        rhs_terms: side(g, base, [a1, a3], [a2, a4]),
    }
}

impl WdvvIdentity {
    /// Largest insertion count among referenced entries.
    pub fn max_length(&self) -> u32 {
        self.lhs_terms
            .iter()
            .chain(&self.rhs_terms)
            .flat_map(|t| [degree(&t.left), degree(&t.right)])
            .max()
            .unwrap_or(0)
    }

    fn signed_terms(&self) -> impl Iterator<Item = (Rational, &IdentityTerm)> {
        self.lhs_terms.iter().map(|t| (t.coeff.clone(), t)).chain(self.rhs_terms.iter().map(|t| (-&t.coeff, t)))
    }
}

/// Source of integral values by full class counts.
pub trait EntrySource {
    /// `Ok(None)` when the entry is not known.
    fn lookup(&self, counts: &[u32]) -> Option<Rational>;
}

/// Reads a table, resolving structural zeros and trivial-class length-three
/// entries from group theory.
pub struct TableSource<'a> {
    pub table: &'a HurwitzTable,
    group: &'static GroupData,
}

impl<'a> TableSource<'a> {
    pub fn new(table: &'a HurwitzTable) -> Self {
        TableSource { table, group: group_table(table.group) }
    }
}

pub fn three_point_counts(g: &GroupData, counts: &[u32]) -> Rational {
    let classes: Vec<usize> =
        counts.iter().enumerate().flat_map(|(c, &k)| std::iter::repeat_n(c, k as usize)).collect();
    g.three_point(classes[0], classes[1], classes[2])
}

impl EntrySource for TableSource<'_> {
    fn lookup(&self, counts: &[u32]) -> Option<Rational> {
        if structurally_zero(self.group, counts) {
            return Some(Rational::zero());
        }
        if counts[0] > 0 {
            return Some(three_point_counts(self.group, counts));
        }
        self.table.get(&counts[1..]).cloned()
    }
}

/// Residual `LHS - RHS`. A factor is not looked up when its partner is zero.
pub fn evaluate_identity(id: &WdvvIdentity, source: &dyn EntrySource) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (c, t) in id.signed_terms() {
        let l = source.lookup(&t.left).ok_or_else(|| Error::MissingEntry(t.left[1..].to_vec()))?;
        if l.is_zero() {
            continue;
        }
        let r = source.lookup(&t.right).ok_or_else(|| Error::MissingEntry(t.right[1..].to_vec()))?;
        acc += c * l * r;
    }
    Ok(acc)
}

enum Factor {
    Known(Rational),
    Unknown(usize),
    Missing,
}

/// Turns an identity into a linear equation in the entries indexed by
/// `unknown`, taking everything else from `known`.
pub fn linearize(
    id: &WdvvIdentity,
    known: &dyn EntrySource,
    unknown: &dyn Fn(&[u32]) -> Option<usize>,
) -> Result<Equation> {
    let resolve = |counts: &[u32]| {
        if counts[0] == 0 {
            if let Some(k) = unknown(&counts[1..]) {
                return Factor::Unknown(k);
            }
        }
        known.lookup(counts).map_or(Factor::Missing, Factor::Known)
    };
    let mut coeffs: BTreeMap<usize, Rational> = BTreeMap::new();
    let mut constant = Rational::zero();
    for (c, t) in id.signed_terms() {
        let (l, r) = (resolve(&t.left), resolve(&t.right));
        match (l, r) {
            (Factor::Known(a), _) | (_, Factor::Known(a)) if a.is_zero() => {}
            (Factor::Known(a), Factor::Known(b)) => constant += c * a * b,
            (Factor::Known(a), Factor::Unknown(k)) | (Factor::Unknown(k), Factor::Known(a)) => {
                *coeffs.entry(k).or_insert_with(Rational::zero) += c * a;
            }
            (Factor::Unknown(_), Factor::Unknown(_)) => {
                return Err(Error::Malformed(format!("identity is quadratic in unknowns: {:?} {:?}", t.left, t.right)));
            }
            (Factor::Missing, _) => return Err(Error::MissingEntry(t.left[1..].to_vec())),
            (_, Factor::Missing) => return Err(Error::MissingEntry(t.right[1..].to_vec())),
        }
    }
    Ok(Equation { coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect(), rhs: -constant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    struct GroupOnly(&'static GroupData);

    impl EntrySource for GroupOnly {
        fn lookup(&self, counts: &[u32]) -> Option<Rational> {
            if structurally_zero(self.0, counts) {
                Some(Rational::zero())
            } else if degree(counts) == 3 {
                Some(three_point_counts(self.0, counts))
            } else {
                None
            }
        }
    }

    fn side_value(terms: &[IdentityTerm], src: &dyn EntrySource) -> Rational {
        terms.iter().map(|t| &t.coeff * src.lookup(&t.left).unwrap() * src.lookup(&t.right).unwrap()).sum()
    }

    #[test]
    fn z2z2_empty_base() {
        let id = generate_identity(GroupName::Z2xZ2, &[0, 0, 0], [1, 1, 2, 2]);
        let src = GroupOnly(group_table(GroupName::Z2xZ2));
        assert_eq!(side_value(&id.lhs_terms, &src), rat(1, 4));
        assert_eq!(side_value(&id.rhs_terms, &src), rat(1, 4));
        assert_eq!(id.lhs_terms.len(), 1);
        assert_eq!(id.lhs_terms[0].left, vec![1, 2, 0, 0]);
        assert_eq!(id.rhs_terms.len(), 1);
        assert_eq!(id.rhs_terms[0].left, vec![0, 1, 1, 1]);
        assert_eq!(evaluate_identity(&id, &src).unwrap(), rat(0, 1));
    }

    #[test]
    fn a4_middle_classes_are_a4_classes() {
        let id = generate_identity(GroupName::A4, &[0, 0, 0], [1, 3, 1, 3]);
        for t in id.lhs_terms.iter().chain(&id.rhs_terms) {
            assert_eq!(t.left.len(), 4);
        }
    }

    #[test]
    fn s4_middle_classes_follow_sign() {
        // base sigma, (tau tau | zeta zeta): the middle class must be even
        let id = generate_identity(GroupName::S4, &[0, 1, 0, 0], [1, 1, 4, 4]);
        assert!(!id.lhs_terms.is_empty());
        for t in &id.lhs_terms {
            assert!(t.left[1] == 2 && t.left[3] == 0, "{:?}", t.left);
            assert!(t.right[1] == 0 && t.right[3] == 0, "{:?}", t.right);
        }
    }

    #[test]
    fn splits_enumerate_subsets_by_multiplicity() {
        assert_eq!(splits(&[2, 1]).len(), 6);
    }
}
