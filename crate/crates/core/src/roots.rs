//! Positive roots of D4 and E6 by reflection closure, with the white nodes
//! attached to nontrivial irreducible representations.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RootType {
    D4,
    E6,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NodeLabel {
    /// Carries the nontrivial irrep with this index (0 = first nontrivial irrep).
    White(usize),
    Black,
}

/// Which E6 chain end carries the first linear character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChainOrientation {
    FirstEnd,
    LastEnd,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSystemData {
    pub root_type: RootType,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub node_labels: Vec<NodeLabel>,
    pub orientation: ChainOrientation,
}

/// D4 nodes: `[c, o1, o2, o3]`. E6 nodes: chain `[e1, b1, m, b2, e2]` then the
/// branch node attached to `m`.
fn edges(t: RootType) -> (usize, Vec<(usize, usize)>) {
    match t {
        RootType::D4 => (4, vec![(0, 1), (0, 2), (0, 3)]),
        RootType::E6 => (6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]),
    }
}

fn labels(t: RootType, orientation: ChainOrientation) -> Vec<NodeLabel> {
    use NodeLabel::*;
    match t {
        RootType::D4 => vec![Black, White(0), White(1), White(2)],
        RootType::E6 => {
            let (first, last) = match orientation {
                ChainOrientation::FirstEnd => (0, 1),
                ChainOrientation::LastEnd => (1, 0),
            };
            vec![White(first), Black, White(2), Black, White(last), Black]
        }
    }
}

pub fn cartan_matrix(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        c[a][b] = -1;
        c[b][a] = -1;
    }
    c
}

/// Positive roots of the simply laced system with Cartan matrix `cartan`.
pub fn reflection_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let simple: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut found: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut frontier = simple;
    while let Some(alpha) = frontier.pop() {
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| alpha[j] * cartan[j][i]).sum();
            let mut beta = alpha.clone();
            beta[i] -= pairing;
            if beta.iter().all(|&k| k >= 0) && beta.iter().any(|&k| k > 0) && found.insert(beta.clone()) {
                frontier.push(beta);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = found.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    roots
}

pub fn positive_roots(t: RootType) -> RootSystemData {
    positive_roots_oriented(t, ChainOrientation::FirstEnd)
}

pub fn positive_roots_oriented(t: RootType, orientation: ChainOrientation) -> RootSystemData {
    let (n, e) = edges(t);
    let cartan = cartan_matrix(n, &e);
    let positive_roots = reflection_closure(&cartan);
    RootSystemData { root_type: t, cartan, positive_roots, node_labels: labels(t, orientation), orientation }
}

impl RootSystemData {
    pub fn white_nodes(&self) -> Vec<usize> {
        let mut whites: Vec<(usize, usize)> = self
            .node_labels
            .iter()
            .enumerate()
            .filter_map(|(node, l)| match l {
                NodeLabel::White(rho) => Some((*rho, node)),
                NodeLabel::Black => None,
            })
            .collect();
        whites.sort();
        whites.into_iter().map(|(_, node)| node).collect()
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive_roots.last().expect("nonempty root system")
    }

    /// Coefficients of `alpha` at the white nodes, in irrep order.
    pub fn white_coordinates(&self, alpha: &[i64]) -> Result<Vec<i64>> {
        if !self.positive_roots.iter().any(|r| r == alpha) {
            return Err(Error::RootNotFound(alpha.to_vec()));
        }
        Ok(self.white_nodes().into_iter().map(|node| alpha[node]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reflect(cartan: &[Vec<i64>], alpha: &[i64], i: usize) -> Vec<i64> {
        let pairing: i64 = (0..alpha.len()).map(|j| alpha[j] * cartan[j][i]).sum();
        let mut beta = alpha.to_vec();
        beta[i] -= pairing;
        beta
    }

    #[test]
    fn root_counts() {
        assert_eq!(positive_roots(RootType::D4).positive_roots.len(), 12);
        assert_eq!(positive_roots(RootType::E6).positive_roots.len(), 36);
    }

    #[test]
    fn closed_under_reflections() {
        for t in [RootType::D4, RootType::E6] {
            let rs = positive_roots(t);
            let all: BTreeSet<Vec<i64>> =
                rs.positive_roots.iter().flat_map(|r| [r.clone(), r.iter().map(|k| -k).collect()]).collect();
            for r in &all {
                for i in 0..rs.cartan.len() {
                    assert!(all.contains(&reflect(&rs.cartan, r, i)));
                }
            }
            for i in 0..rs.cartan.len() {
                let mut e = vec![0; rs.cartan.len()];
                e[i] = 1;
                assert!(rs.positive_roots.contains(&e));
            }
        }
    }

    #[test]
    fn highest_roots() {
        assert_eq!(positive_roots(RootType::D4).highest_root(), &[2, 1, 1, 1]);
        let e6 = positive_roots(RootType::E6);
        assert_eq!(e6.highest_root(), &[1, 2, 3, 2, 1, 2]);
        let h = e6.highest_root().to_vec();
        // (end, middle, end) read off the chain
        assert_eq!((h[0], h[2], h[4]), (1, 3, 1));
        assert_eq!(e6.white_coordinates(&h).unwrap(), vec![1, 1, 3]);
    }

    #[test]
    fn white_coordinate_examples() {
        let d4 = positive_roots(RootType::D4);
        assert_eq!(d4.white_coordinates(&[1, 0, 0, 0]).unwrap(), vec![0, 0, 0]);
        assert_eq!(d4.white_coordinates(&[1, 1, 0, 0]).unwrap(), vec![1, 0, 0]);
        assert!(matches!(d4.white_coordinates(&[0, 1, 1, 0]), Err(Error::RootNotFound(_))));
    }

    #[test]
    fn stable_under_node_permutation() {
        for t in [RootType::D4, RootType::E6] {
            let (n, e) = edges(t);
            let perm: Vec<usize> = (0..n).rev().collect();
            let permuted: Vec<(usize, usize)> = e.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
            let roots = reflection_closure(&cartan_matrix(n, &permuted));
            let mut relabeled: Vec<Vec<i64>> =
                roots.iter().map(|r| (0..n).map(|node| r[perm[node]]).collect()).collect();
            relabeled.sort();
            let mut original = positive_roots(t).positive_roots;
            original.sort();
            assert_eq!(relabeled, original);
        }
    }
}
