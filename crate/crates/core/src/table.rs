//! Pairwise intersection dimensions for a fixed list of subspaces.
//!
//! Over GF(2) with ambient dimension at most 64 the bases are packed into
//! machine words and ranks are computed with an XOR basis; other fields fall
//! back to the generic row reduction.

use rayon::prelude::*;

use crate::field::Field;
use crate::linalg::Subspace;

/// One `u64` per basis row, bit `j` set when coordinate `j` is 1.
pub(crate) fn pack_gf2<F: Field>(s: &Subspace<F>) -> Vec<u64> {
    debug_assert_eq!(F::ORDER, 2);
    s.rows()
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .fold(0u64, |acc, (j, c)| acc | ((c.value() as u64) << j))
        })
        .collect()
}

/// Rank of a set of packed GF(2) rows.
#[cfg(test)]
pub(crate) fn xor_rank(rows: impl IntoIterator<Item = u64>) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut r in rows {
        while r != 0 {
            let top = 63 - r.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = r;
                rank += 1;
                break;
            }
            r ^= basis[top];
        }
    }
    rank
}

/// Symmetric `len × len` table of `dim(S_i ∩ S_j)`.
#[derive(Clone, Debug)]
pub struct IntersectionTable {
    len: usize,
    dims: Vec<u8>,
}

/// Reduces `r` by rows with distinct top bits, given in descending top order.
#[inline]
fn reduce_by(mut r: u64, basis: &[u64]) -> u64 {
    for &row in basis {
        r = r.min(r ^ row);
    }
    r
}

/// Inserts a reduced nonzero `r` keeping descending top order.
fn insert_sorted(basis: &mut Vec<u64>, r: u64) {
    let pos = basis.partition_point(|&x| x.leading_zeros() < r.leading_zeros());
    basis.insert(pos, r);
}

impl IntersectionTable {
    pub fn build<F: Field>(members: &[Subspace<F>]) -> Self {
        let len = members.len();
        // upper triangle, row i holding j = i..len
        let row_fn: Box<dyn Fn(usize) -> Vec<u8> + Sync + Send + '_> =
            if F::ORDER == 2 && members.first().is_none_or(|m| m.ambient_dim() <= 64) {
                let packed: Vec<Vec<u64>> = members.iter().map(pack_gf2).collect();
                Box::new(move |i| {
                    let mut base = Vec::new();
                    for &r in &packed[i] {
                        let r = reduce_by(r, &base);
                        if r != 0 {
                            insert_sorted(&mut base, r);
                        }
                    }
                    let mut extra = Vec::with_capacity(64);
                    packed[i..]
                        .iter()
                        .map(|b| {
                            extra.clear();
                            for &r in b {
                                let r = reduce_by(reduce_by(r, &base), &extra);
                                if r != 0 {
                                    insert_sorted(&mut extra, r);
                                }
                            }
                            (b.len() - extra.len()) as u8
                        })
                        .collect()
                })
            } else {
                Box::new(move |i| {
                    let a = &members[i];
                    members[i..]
                        .iter()
                        .map(|b| (a.dim() + b.dim() - a.sum_unchecked(b).dim()) as u8)
                        .collect()
                })
            };
        let upper: Vec<Vec<u8>> = (0..len).into_par_iter().map(row_fn).collect();
        let mut dims = vec![0u8; len * len];
        for (i, row) in upper.iter().enumerate() {
            for (off, &v) in row.iter().enumerate() {
                dims[i * len + i + off] = v;
                dims[(i + off) * len + i] = v;
            }
        }
        IntersectionTable { len, dims }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.dims[i * self.len + j]
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.dims[i * self.len..(i + 1) * self.len]
    }

    /// Restriction to the given (sorted or not) index list, in that order.
    pub fn restrict(&self, idx: &[usize]) -> Self {
        let dims = idx
            .iter()
            .flat_map(|&i| idx.iter().map(move |&j| self.get(i, j)))
            .collect();
        IntersectionTable {
            len: idx.len(),
            dims,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::enumerate_subspaces;
    use crate::{Gf2, Gf3};

    #[test]
    fn xor_rank_small() {
        assert_eq!(xor_rank([0b011, 0b110, 0b101]), 2);
        assert_eq!(xor_rank([0b001, 0b010, 0b100]), 3);
        assert_eq!(xor_rank([]), 0);
    }

    #[test]
    fn packed_matches_generic() {
        let subs = enumerate_subspaces::<Gf2>(5, 2);
        let t = IntersectionTable::build(&subs);
        for i in (0..subs.len()).step_by(7) {
            for j in 0..subs.len() {
                assert_eq!(
                    t.get(i, j) as usize,
                    subs[i].intersection_dim(&subs[j]).unwrap()
                );
            }
        }
    }

    #[test]
    fn generic_path_gf3() {
        let subs = enumerate_subspaces::<Gf3>(4, 2);
        let t = IntersectionTable::build(&subs);
        for i in 0..subs.len() {
            assert_eq!(t.get(i, i), 2);
            for j in 0..subs.len() {
                assert_eq!(t.get(i, j), t.get(j, i));
            }
        }
    }
}
