//! The permutation groups Z2xZ2, A4 and S4 on four letters, with class and
//! character data computed from the elements.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupName {
    #[serde(rename = "z2z2")]
    Z2xZ2,
    #[serde(rename = "a4")]
    A4,
    #[serde(rename = "s4")]
    S4,
}

impl GroupName {
    pub const ALL: [GroupName; 3] = [GroupName::Z2xZ2, GroupName::A4, GroupName::S4];

    pub fn token(self) -> &'static str {
        match self {
            GroupName::Z2xZ2 => "z2z2",
            GroupName::A4 => "a4",
            GroupName::S4 => "s4",
        }
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for GroupName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GroupName::ALL.into_iter().find(|g| g.token() == s).ok_or_else(|| Error::UnsupportedGroup(s.to_string()))
    }
}

/// Permutation of `{0,1,2,3}`; `p.0[x]` is the image of `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub [u8; 4]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2, 3]);

    /// Builds a permutation from 1-based disjoint cycles.
    pub fn from_cycles(cycles: &[&[u8]]) -> Perm {
        let mut p = [0, 1, 2, 3];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                p[(x - 1) as usize] = c[(k + 1) % c.len()] - 1;
            }
        }
        Perm(p)
    }

    /// `(self * other)(x) = self(other(x))`
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(std::array::from_fn(|x| self.0[other.0[x] as usize]))
    }

    pub fn inverse(&self) -> Perm {
        let mut q = [0; 4];
        for (x, &y) in self.0.iter().enumerate() {
            q[y as usize] = x as u8;
        }
        Perm(q)
    }

    pub fn fixed_points(&self) -> i64 {
        self.0.iter().enumerate().filter(|(x, &y)| *x == y as usize).count() as i64
    }

    pub fn sign(&self) -> i64 {
        let mut seen = [false; 4];
        let mut sign = 1;
        for start in 0..4 {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
}

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub token: &'static str,
    pub representative: Perm,
    pub elements: Vec<Perm>,
}

#[derive(Clone, Debug)]
pub struct Irrep {
    pub name: &'static str,
    pub dim: u32,
    pub character: Vec<CycNumber>,
}

#[derive(Clone, Debug)]
pub struct GroupData {
    pub name: GroupName,
    pub elements: Vec<Perm>,
    pub classes: Vec<ConjugacyClass>,
    /// Centralizer order per class.
    pub z: Vec<u64>,
    pub inverse_involution: Vec<usize>,
    pub irreps: Vec<Irrep>,
    /// Character of the three-dimensional rotation representation.
    pub chi_v: Vec<i64>,
    abelian_coset: Vec<usize>,
}

pub fn group_table(name: GroupName) -> &'static GroupData {
    static CELLS: [OnceLock<GroupData>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let idx = GroupName::ALL.iter().position(|&g| g == name).expect("known group");
    CELLS[idx].get_or_init(|| GroupData::build(name))
}

fn closure(generators: &[Perm]) -> Vec<Perm> {
    let mut elems = vec![Perm::IDENTITY];
    let mut frontier = vec![Perm::IDENTITY];
    while let Some(g) = frontier.pop() {
        for s in generators {
            let h = g.compose(s);
            if !elems.contains(&h) {
                elems.push(h);
                frontier.push(h);
            }
        }
    }
    elems.sort();
    elems
}

impl GroupData {
    fn build(name: GroupName) -> GroupData {
        let c = Perm::from_cycles;
        let (generators, reps): (Vec<Perm>, Vec<(&'static str, Perm)>) = match name {
            GroupName::Z2xZ2 => (
                vec![c(&[&[1, 2], &[3, 4]]), c(&[&[1, 3], &[2, 4]])],
                vec![
                    ("one", Perm::IDENTITY),
                    ("z1", c(&[&[1, 2], &[3, 4]])),
                    ("z2", c(&[&[1, 3], &[2, 4]])),
                    ("z3", c(&[&[1, 4], &[2, 3]])),
                ],
            ),
            GroupName::A4 => (
                vec![c(&[&[1, 2, 3]]), c(&[&[1, 2], &[3, 4]])],
                vec![
                    ("one", Perm::IDENTITY),
                    ("s1", c(&[&[1, 2, 3]])),
                    ("s2", c(&[&[1, 3, 2]])),
                    ("zeta", c(&[&[1, 2], &[3, 4]])),
                ],
            ),
            GroupName::S4 => (
                vec![c(&[&[1, 2]]), c(&[&[1, 2, 3, 4]])],
                vec![
                    ("one", Perm::IDENTITY),
                    ("tau", c(&[&[1, 2]])),
                    ("sigma", c(&[&[1, 2, 3]])),
                    ("rho", c(&[&[1, 2, 3, 4]])),
                    ("zeta", c(&[&[1, 2], &[3, 4]])),
                ],
            ),
        };
        let elements = closure(&generators);
        let classes: Vec<ConjugacyClass> = reps
            .into_iter()
            .map(|(token, rep)| {
                let mut members: Vec<Perm> = elements.iter().map(|g| g.compose(&rep).compose(&g.inverse())).collect();
                members.sort();
                members.dedup();
                ConjugacyClass { token, representative: rep, elements: members }
            })
            .collect();
        let order = elements.len() as u64;
        let z = classes.iter().map(|cl| order / cl.elements.len() as u64).collect();
        let mut data = GroupData {
            name,
            elements,
            classes,
            z,
            inverse_involution: Vec::new(),
            irreps: Vec::new(),
            chi_v: Vec::new(),
            abelian_coset: Vec::new(),
        };
        data.inverse_involution = data.classes.iter().map(|cl| data.class_of(&cl.representative.inverse())).collect();
        data.chi_v =
            data.classes.iter().map(|cl| (cl.representative.fixed_points() - 1) * cl.representative.sign()).collect();
        data.abelian_coset = data.abelianization();
        data.irreps = data.compute_irreps();
        data
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Indices of the nontrivial classes, in table order.
    pub fn nontrivial_classes(&self) -> std::ops::Range<usize> {
        1..self.classes.len()
    }

    pub fn class_of(&self, g: &Perm) -> usize {
        self.classes.iter().position(|cl| cl.elements.contains(g)).expect("element of the group")
    }

    pub fn class_index(&self, token: &str) -> Result<usize> {
        self.classes.iter().position(|cl| cl.token == token).ok_or_else(|| Error::UnknownClass(token.to_string()))
    }

    pub fn class_tokens(&self) -> Vec<&'static str> {
        self.classes.iter().map(|cl| cl.token).collect()
    }

    pub fn nontrivial_tokens(&self) -> Vec<&'static str> {
        self.classes[1..].iter().map(|cl| cl.token).collect()
    }

    /// `(1/|G|) #{(g1,g2,g3) in c1 x c2 x c3 : g1 g2 g3 = 1}`
    pub fn three_point(&self, c1: usize, c2: usize, c3: usize) -> Rational {
        let target = &self.classes[c3].elements;
        let mut count = 0i64;
        for g1 in &self.classes[c1].elements {
            for g2 in &self.classes[c2].elements {
                if target.contains(&g1.compose(g2).inverse()) {
                    count += 1;
                }
            }
        }
        rat(count, self.order() as i64)
    }

    fn commutator_subgroup(&self) -> Vec<Perm> {
        let mut gens = Vec::new();
        for a in &self.elements {
            for b in &self.elements {
                let c = a.compose(b).compose(&a.inverse()).compose(&b.inverse());
                if !gens.contains(&c) {
                    gens.push(c);
                }
            }
        }
        closure(&gens)
    }

    /// Coset label in `G/[G,G]` for each element (the smallest element of its coset).
    fn abelianization(&self) -> Vec<usize> {
        let k = self.commutator_subgroup();
        self.elements
            .iter()
            .map(|g| {
                let rep = k.iter().map(|h| g.compose(h)).min().expect("nonempty");
                self.elements.iter().position(|e| *e == rep).expect("closed")
            })
            .collect()
    }

    /// True when no product of the given insertions can be the identity,
    /// detected in the abelianization. `counts` is indexed by all classes.
    pub fn monodromy_vanishes_full(&self, counts: &[u32]) -> bool {
        let mut acc = Perm::IDENTITY;
        for (class, &n) in counts.iter().enumerate() {
            let rep = self.classes[class].representative;
            for _ in 0..n {
                acc = acc.compose(&rep);
            }
        }
        let idx = self.elements.iter().position(|e| *e == acc).expect("closed");
        let identity = self.elements.iter().position(|e| *e == Perm::IDENTITY).expect("identity");
        self.abelian_coset[idx] != self.abelian_coset[identity]
    }

    /// As [`Self::monodromy_vanishes_full`] with exponents over nontrivial classes.
    pub fn monodromy_vanishes(&self, exponents: &[u32]) -> bool {
        let mut counts = vec![0];
        counts.extend_from_slice(exponents);
        self.monodromy_vanishes_full(&counts)
    }

    fn inner_product(&self, a: &[CycNumber], b: &[CycNumber]) -> CycNumber {
        let mut acc = CycNumber::zero();
        for (i, z) in self.z.iter().enumerate() {
            acc += (&a[i] * &b[i].conj()).scale(&rat(1, *z as i64));
        }
        acc
    }

    fn is_irreducible(&self, chi: &[CycNumber]) -> bool {
        self.inner_product(chi, chi) == CycNumber::one()
    }

    /// Linear characters as homomorphisms to 24th roots of unity, given by
    /// their exponents on each class.
    fn linear_characters(&self) -> Vec<Vec<i64>> {
        let mut gens: Vec<Perm> = Vec::new();
        while closure(&gens).len() < self.elements.len() {
            let current = closure(&gens);
            let g = *self.elements.iter().find(|e| !current.contains(e)).expect("missing element");
            gens.push(g);
        }
        let mut found: Vec<Vec<i64>> = Vec::new();
        let mut assignment = vec![0i64; gens.len()];
        loop {
            if let Some(chi) = self.extend_homomorphism(&gens, &assignment) {
                if !found.contains(&chi) {
                    found.push(chi);
                }
            }
            let mut k = 0;
            while k < assignment.len() {
                assignment[k] += 1;
                if assignment[k] < 24 {
                    break;
                }
                assignment[k] = 0;
                k += 1;
            }
            if k == assignment.len() {
                break;
            }
        }
        found
    }

    fn extend_homomorphism(&self, gens: &[Perm], exps: &[i64]) -> Option<Vec<i64>> {
        let mut image: Vec<Option<i64>> = vec![None; self.elements.len()];
        let pos = |p: &Perm| self.elements.iter().position(|e| e == p).expect("closed");
        image[pos(&Perm::IDENTITY)] = Some(0);
        let mut frontier = vec![Perm::IDENTITY];
        while let Some(g) = frontier.pop() {
            let base = image[pos(&g)].expect("visited");
            for (s, e) in gens.iter().zip(exps) {
                let h = g.compose(s);
                let v = (base + e).rem_euclid(24);
                match image[pos(&h)] {
                    None => {
                        image[pos(&h)] = Some(v);
                        frontier.push(h);
                    }
                    Some(w) if w != v => return None,
                    Some(_) => {}
                }
            }
        }
        Some(self.classes.iter().map(|cl| image[pos(&cl.representative)].expect("reached")).collect())
    }

    fn compute_irreps(&self) -> Vec<Irrep> {
        let mut linear = self.linear_characters();
        linear.sort_by_key(|exps| exps[1..].to_vec());
        let mut chars: Vec<Vec<CycNumber>> =
            linear.iter().map(|e| e.iter().map(|&k| CycNumber::zeta_pow(k)).collect()).collect();
        let standard: Vec<CycNumber> =
            self.classes.iter().map(|cl| CycNumber::from_int(cl.representative.fixed_points() - 1)).collect();
        let mut higher: Vec<Vec<CycNumber>> = Vec::new();
        for lin in &chars {
            let cand: Vec<CycNumber> = standard.iter().zip(lin).map(|(a, b)| a * b).collect();
            if self.is_irreducible(&cand) && !higher.contains(&cand) {
                higher.push(cand);
            }
        }
        let mut leftover: Vec<CycNumber> = (0..self.classes.len())
            .map(|i| CycNumber::from_int(if i == 0 { self.order() as i64 } else { 0 }))
            .collect();
        for chi in chars.iter().chain(&higher) {
            for (l, c) in leftover.iter_mut().zip(chi) {
                *l = &*l - &(c * &chi[0]);
            }
        }
        if !leftover.iter().all(Zero::is_zero) {
            let norm = self.inner_product(&leftover, &leftover).as_rational().expect("rational norm");
            let m = (1..=self.order() as i64).find(|m| int(m * m) == norm).expect("multiple of one irrep");
            let chi: Vec<CycNumber> = leftover.iter().map(|c| c.scale(&rat(1, m))).collect();
            assert!(self.is_irreducible(&chi), "leftover character is irreducible");
            higher.insert(0, chi);
        }
        let names: &[&'static str] = match self.name {
            GroupName::Z2xZ2 => &["trivial", "rho1", "rho2", "rho3"],
            GroupName::A4 => &["trivial", "chi_omega", "chi_omegabar", "chi_3"],
            GroupName::S4 => &["trivial", "sign", "chi_2", "chi_3", "chi_3_sign"],
        };
        higher
            .sort_by_key(|c| (c[0].as_rational().expect("integral dimension"), -c[1].as_rational().expect("rational")));
        chars.extend(higher);
        assert_eq!(chars.len(), names.len(), "number of irreps equals number of classes");
        chars
            .into_iter()
            .zip(names)
            .map(|(character, &name)| {
                let dim: i64 = character[0].as_rational().expect("dimension").to_integer().try_into().expect("small");
                Irrep { name, dim: dim as u32, character }
            })
            .collect()
    }

    pub fn dims(&self) -> Vec<u32> {
        self.irreps.iter().map(|r| r.dim).collect()
    }

    /// Character table, rows indexed by irreps and columns by classes.
    pub fn char_table(&self) -> Vec<Vec<CycNumber>> {
        self.irreps.iter().map(|r| r.character.clone()).collect()
    }

    /// `L[i][rho] = (1/z_i) sqrt(3 - chi_V(i)) chi_rho(i)` over nontrivial classes and irreps.
    pub fn l_matrix(&self) -> Result<Vec<Vec<CycNumber>>> {
        if self.name == GroupName::S4 {
            return Err(Error::UnsupportedGroup(self.name.to_string()));
        }
        let sqrt = |n: i64| -> CycNumber {
            match n {
                0 => CycNumber::zero(),
                1 => CycNumber::one(),
                2 => CycNumber::sqrt2(),
                3 => CycNumber::sqrt3(),
                4 => CycNumber::from_int(2),
                _ => unreachable!("3 - chi_V lies in [0, 4]"),
            }
        };
        Ok(self
            .nontrivial_classes()
            .map(|i| {
                let factor = sqrt(3 - self.chi_v[i]).scale(&rat(1, self.z[i] as i64));
                self.irreps[1..].iter().map(|rho| &factor * &rho.character[i]).collect()
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centralizers() {
        assert_eq!(group_table(GroupName::S4).z, vec![24, 4, 3, 4, 8]);
        assert_eq!(group_table(GroupName::A4).z, vec![12, 3, 3, 4]);
        assert_eq!(group_table(GroupName::Z2xZ2).z, vec![4, 4, 4, 4]);
    }

    #[test]
    fn class_sizes_sum_to_order() {
        for name in GroupName::ALL {
            let g = group_table(name);
            let total: usize = g.classes.iter().map(|c| c.elements.len()).sum();
            assert_eq!(total as u64, g.order());
            for (cl, z) in g.classes.iter().zip(&g.z) {
                assert_eq!(cl.elements.len() as u64 * z, g.order());
            }
        }
    }

    #[test]
    fn rotation_character() {
        let a4 = group_table(GroupName::A4);
        assert_eq!(a4.chi_v, vec![3, 0, 0, -1]);
        assert_eq!(group_table(GroupName::S4).chi_v, vec![3, -1, 0, 1, -1]);
        assert_eq!(group_table(GroupName::Z2xZ2).chi_v, vec![3, -1, -1, -1]);
    }

    #[test]
    fn inverse_involution() {
        assert_eq!(group_table(GroupName::A4).inverse_involution, vec![0, 2, 1, 3]);
        assert_eq!(group_table(GroupName::S4).inverse_involution, vec![0, 1, 2, 3, 4]);
        assert_eq!(group_table(GroupName::Z2xZ2).inverse_involution, vec![0, 1, 2, 3]);
    }

    #[test]
    fn character_orthogonality() {
        for name in GroupName::ALL {
            let g = group_table(name);
            for (a, ra) in g.irreps.iter().enumerate() {
                for (b, rb) in g.irreps.iter().enumerate() {
                    let ip = g.inner_product(&ra.character, &rb.character);
                    let expected = if a == b { CycNumber::one() } else { CycNumber::zero() };
                    assert_eq!(ip, expected, "{name} irreps {a},{b}");
                }
            }
            // column orthogonality: sum_rho chi_rho(i) conj(chi_rho(j)) = z_i delta_ij
            for i in 0..g.num_classes() {
                for j in 0..g.num_classes() {
                    let mut acc = CycNumber::zero();
                    for r in &g.irreps {
                        acc += &r.character[i] * &r.character[j].conj();
                    }
                    let expected = if i == j { CycNumber::from_int(g.z[i] as i64) } else { CycNumber::zero() };
                    assert_eq!(acc, expected);
                }
            }
        }
    }

    #[test]
    fn irrep_conventions() {
        let z = group_table(GroupName::Z2xZ2);
        for j in 1..4 {
            assert_eq!(z.irreps[j].character[j], CycNumber::one());
        }
        let a4 = group_table(GroupName::A4);
        assert_eq!(a4.dims(), vec![1, 1, 1, 3]);
        assert_eq!(a4.irreps[1].character[1], CycNumber::omega());
        assert_eq!(a4.irreps[2].character[1], CycNumber::omega().pow(2));
        let s4 = group_table(GroupName::S4);
        assert_eq!(s4.dims(), vec![1, 1, 2, 3, 3]);
    }

    #[test]
    fn three_point_examples() {
        let z = group_table(GroupName::Z2xZ2);
        assert_eq!(z.three_point(1, 2, 3), rat(1, 4));
        assert_eq!(z.three_point(1, 1, 2), rat(0, 1));
        let a4 = group_table(GroupName::A4);
        assert_eq!(a4.three_point(1, 1, 1), rat(4, 3));
        assert_eq!(a4.three_point(1, 1, 3), rat(0, 1));
        let s4 = group_table(GroupName::S4);
        assert_eq!(s4.three_point(4, 4, 0), rat(1, 8));
    }

    #[test]
    fn monodromy_examples() {
        let z = group_table(GroupName::Z2xZ2);
        assert!(z.monodromy_vanishes(&[2, 1, 0]));
        assert!(!z.monodromy_vanishes(&[1, 1, 1]));
        let a4 = group_table(GroupName::A4);
        assert!(!a4.monodromy_vanishes(&[4, 1, 2]));
        assert!(a4.monodromy_vanishes(&[2, 0, 1]));
        let s4 = group_table(GroupName::S4);
        assert!(!s4.monodromy_vanishes(&[1, 3, 1, 2]));
        assert!(s4.monodromy_vanishes(&[1, 3, 0, 2]));
    }

    #[test]
    fn l_matrix_entries() {
        let z = group_table(GroupName::Z2xZ2).l_matrix().unwrap();
        let half = CycNumber::from_rational(rat(1, 2));
        for row in &z {
            for v in row {
                assert!(*v == half || *v == -&half);
            }
        }
        let a4 = group_table(GroupName::A4);
        let l = a4.l_matrix().unwrap();
        // rows: s1, s2, zeta; columns: chi_omega, chi_omegabar, chi_3
        assert_eq!(l[2][2], CycNumber::from_rational(rat(-1, 2)));
        assert_eq!(l[0][0], CycNumber::omega() * CycNumber::sqrt3().scale(&rat(1, 3)));
        assert_eq!(l[0][0], l[1][1]);
        assert_eq!(l[0][1], l[1][0]);
        assert!(matches!(group_table(GroupName::S4).l_matrix(), Err(Error::UnsupportedGroup(_))));
    }
}
