//! The dual polar space: points are the maximal singular subspaces, lines are
//! the pencils of maximals through a next-to-maximal singular subspace.

use std::collections::HashMap;

use crate::error::{GeometryError, Result};
use crate::field::Field;
use crate::graph::Graph;
use crate::linalg::Subspace;
use crate::polar::PolarSpace;
use crate::table::IntersectionTable;

pub struct DualPolarSpace<F> {
    space: PolarSpace<F>,
    table: IntersectionTable,
    graph: Graph,
    lines: HashMap<Subspace<F>, Vec<usize>>,
}

impl<F: Field> DualPolarSpace<F> {
    pub fn new(space: PolarSpace<F>) -> Self {
        let n = space.rank();
        let table = IntersectionTable::build(space.max_singulars());
        let graph = Graph::from_table(&table, (n - 1) as u8);
        let mut lines: HashMap<Subspace<F>, Vec<usize>> = HashMap::new();
        for (id, m) in space.max_singulars().iter().enumerate() {
            for h in m.subspaces(n - 1) {
                lines.entry(h).or_default().push(id);
            }
        }
        DualPolarSpace {
            space,
            table,
            graph,
            lines,
        }
    }

    pub fn space(&self) -> &PolarSpace<F> {
        &self.space
    }

    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    /// Number of points (maximal singular subspaces).
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn table(&self) -> &IntersectionTable {
        &self.table
    }

    /// Collinearity graph on canonical IDs.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn member(&self, id: usize) -> Result<&Subspace<F>> {
        self.space
            .max_singulars()
            .get(id)
            .ok_or(GeometryError::InvalidId {
                id,
                len: self.len(),
            })
    }

    pub fn id_of(&self, s: &Subspace<F>) -> Option<usize> {
        self.space.max_id(s)
    }

    fn check(&self, id: usize) -> Result<()> {
        if id < self.len() {
            Ok(())
        } else {
            Err(GeometryError::InvalidId {
                id,
                len: self.len(),
            })
        }
    }

    pub fn intersection_dim(&self, s: usize, u: usize) -> Result<usize> {
        self.check(s)?;
        self.check(u)?;
        Ok(self.table.get(s, u) as usize)
    }

    /// `n - dim(S ∩ U)`.
    pub fn distance(&self, s: usize, u: usize) -> Result<usize> {
        Ok(self.rank() - self.intersection_dim(s, u)?)
    }

    /// Disjointness, i.e. distance equal to the diameter `n`.
    pub fn opposite(&self, s: usize, u: usize) -> Result<bool> {
        Ok(self.intersection_dim(s, u)? == 0)
    }

    pub fn collinear(&self, s: usize, u: usize) -> Result<bool> {
        Ok(self.intersection_dim(s, u)? == self.rank() - 1)
    }

    /// IDs of all maximals through the next-to-maximal singular subspace `m`.
    pub fn line(&self, m: &Subspace<F>) -> Result<&[usize]> {
        let n = self.rank();
        if m.dim() != n - 1 {
            return Err(GeometryError::WrongSubspaceDim {
                expected: n - 1,
                found: m.dim(),
            });
        }
        self.space.require_singular(m, "line subspace")?;
        Ok(self.lines.get(m).map_or(&[], |v| v.as_slice()))
    }

    /// Every line as `(M, IDs)`, in canonical order of `M`.
    pub fn lines(&self) -> Vec<(&Subspace<F>, &[usize])> {
        let mut out: Vec<_> = self
            .lines
            .iter()
            .map(|(m, ids)| (m, ids.as_slice()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(b.0));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Gf2, Vector};

    fn sub(d: usize, idx: &[usize]) -> Subspace<Gf2> {
        let rows: Vec<Vector<Gf2>> = idx.iter().map(|&i| Vector::unit(d, i)).collect();
        Subspace::from_rows(d, &rows).unwrap()
    }

    #[test]
    fn distance_examples() {
        let dps = DualPolarSpace::new(PolarSpace::<Gf2>::symplectic(3));
        // x1 x2 x3 = coords 0 2 4; y1 = 1
        let s = dps.id_of(&sub(6, &[0, 2, 4])).unwrap();
        let u = dps.id_of(&sub(6, &[1, 2, 4])).unwrap();
        let w = dps.id_of(&sub(6, &[1, 3, 5])).unwrap();
        assert_eq!(dps.distance(s, s).unwrap(), 0);
        assert_eq!(dps.distance(s, u).unwrap(), 1);
        assert_eq!(dps.graph().bfs(s)[u], 1);
        assert!(dps.opposite(s, w).unwrap());
        assert!(!dps.opposite(s, s).unwrap());
        assert!(matches!(
            dps.distance(0, 999),
            Err(GeometryError::InvalidId { .. })
        ));
    }

    #[test]
    fn lines_through_next_to_maximal() {
        let dps = DualPolarSpace::new(PolarSpace::<Gf2>::symplectic(3));
        let m = sub(6, &[2, 4]);
        let line = dps.line(&m).unwrap();
        assert_eq!(line.len(), 3);
        for &id in line {
            assert!(dps.member(id).unwrap().contains_sub(&m).unwrap());
        }
        assert!(matches!(
            dps.line(&sub(6, &[2])),
            Err(GeometryError::WrongSubspaceDim { .. })
        ));
        assert!(matches!(
            dps.line(&sub(6, &[0, 1])),
            Err(GeometryError::NotTotallySingular(_))
        ));
    }

    #[test]
    fn quadric_lines_have_two_points() {
        let dps = DualPolarSpace::new(PolarSpace::<Gf2>::hyperbolic(4));
        assert_eq!(dps.len(), 270);
        assert!(dps.lines().iter().all(|(_, ids)| ids.len() == 2));
        let s = 0;
        let far = (0..dps.len())
            .find(|&u| dps.opposite(s, u).unwrap())
            .unwrap();
        assert_eq!(dps.distance(s, far).unwrap(), 4);
        assert_eq!(dps.graph().bfs(s)[far], 4);
    }

    #[test]
    fn opposite_count_is_constant() {
        let dps = DualPolarSpace::new(PolarSpace::<Gf2>::symplectic(3));
        let counts: Vec<usize> = (0..dps.len())
            .map(|s| {
                (0..dps.len())
                    .filter(|&u| dps.opposite(s, u).unwrap())
                    .count()
            })
            .collect();
        // q^(n(n+1)/2) maximals are disjoint from a given one
        assert!(counts.iter().all(|&c| c == 64));
    }
}
