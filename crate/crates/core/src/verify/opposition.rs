use rayon::prelude::*;
use serde::Serialize;

use crate::table::IntersectionTable;

/// Opposite lists over a table of intersection dimensions: `i` and `j` are
/// opposite when they meet in exactly `op_dim` dimensions.
pub struct OppositionIndex<'t> {
    table: &'t IntersectionTable,
    op_dim: u8,
    opposites: Vec<Vec<u32>>,
}

/// A rejected candidate together with a member opposite to it but to
/// neither member of the pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub candidate: usize,
    pub violator: usize,
}

/// Outcome of the opposition-witness scan for one pair, in table indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition2 {
    pub witness: Option<usize>,
    pub certificates: Vec<Certificate>,
}

impl<'t> OppositionIndex<'t> {
    pub fn new(table: &'t IntersectionTable, op_dim: u8) -> Self {
        let opposites = (0..table.len())
            .into_par_iter()
            .map(|i| {
                let row = table.row(i);
                (0..row.len())
                    .filter(|&j| row[j] == op_dim)
                    .map(|j| j as u32)
                    .collect()
            })
            .collect();
        OppositionIndex {
            table,
            op_dim,
            opposites,
        }
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    #[inline]
    pub fn opposite(&self, i: usize, j: usize) -> bool {
        self.table.get(i, j) == self.op_dim
    }

    pub fn opposites_of(&self, i: usize) -> &[u32] {
        &self.opposites[i]
    }

    /// First `U` (ascending) opposite to `cand` but to neither `s1` nor `s2`.
    pub fn violator(&self, cand: usize, s1: usize, s2: usize) -> Option<usize> {
        self.opposites[cand]
            .iter()
            .map(|&u| u as usize)
            .find(|&u| !self.opposite(u, s1) && !self.opposite(u, s2))
    }

    /// Scans candidates in ascending order and stops at the first witness.
    /// Every candidate rejected before that carries a certificate.
    pub fn condition2(&self, s1: usize, s2: usize) -> Condition2 {
        let mut certificates = Vec::new();
        for cand in (0..self.len()).filter(|&c| c != s1 && c != s2) {
            match self.violator(cand, s1, s2) {
                None => {
                    return Condition2 {
                        witness: Some(cand),
                        certificates,
                    }
                }
                Some(violator) => certificates.push(Certificate {
                    candidate: cand,
                    violator,
                }),
            }
        }
        Condition2 {
            witness: None,
            certificates,
        }
    }

    /// Whether any witness exists, without collecting certificates.
    pub fn has_witness(&self, s1: usize, s2: usize) -> bool {
        (0..self.len())
            .filter(|&c| c != s1 && c != s2)
            .any(|c| self.violator(c, s1, s2).is_none())
    }

    /// All witnesses for the pair, ascending.
    pub fn witnesses(&self, s1: usize, s2: usize) -> Vec<usize> {
        (0..self.len())
            .into_par_iter()
            .filter(|&c| c != s1 && c != s2 && self.violator(c, s1, s2).is_none())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{enumerate_subspaces, Gf2};

    #[test]
    fn lines_of_fano_plane() {
        // points of PG(2,2) as 1-subspaces: opposite means distinct
        let pts = enumerate_subspaces::<Gf2>(3, 1);
        let t = IntersectionTable::build(&pts);
        let idx = OppositionIndex::new(&t, 0);
        assert_eq!(idx.opposites_of(0).len(), 6);
        // every U != S is opposite to S, and U = S1 is not opposite to S1
        // but is opposite to S2, so any third point is a witness
        let c = idx.condition2(0, 1);
        assert_eq!(c.witness, Some(2));
        assert!(c.certificates.is_empty());
        assert_eq!(idx.witnesses(0, 1).len(), 5);
    }
}
