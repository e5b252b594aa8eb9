//! Half-spin Grassmann spaces of a type D polar space.
//!
//! The maximals of a hyperbolic quadric fall into two families; within one
//! family two maximals meet in a subspace of dimension `n - even`. Points of
//! the half-spin space are the members of one family, lines are the members
//! through a common singular subspace of dimension `n - 2`.

use std::collections::HashMap;
use std::fmt;

use crate::dual_polar::DualPolarSpace;
use crate::error::{GeometryError, Result};
use crate::field::Field;
use crate::graph::{Graph, UNREACHABLE};
use crate::incidence::PointLineGeometry;
use crate::linalg::Subspace;
use crate::polar::TypeTag;
use crate::table::IntersectionTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Plus,
    Minus,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Plus => "+",
            Family::Minus => "-",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "+" | "plus" => Ok(Family::Plus),
            "-" | "minus" => Ok(Family::Minus),
            _ => Err(format!("unknown family {s:?}, expected + or -")),
        }
    }
}

/// One half-spin family, borrowing the dual polar space it was cut from.
///
/// Operations take and return the dual polar space's canonical IDs; local
/// indices `0..len()` are only used by [`table`](Self::table) and
/// [`graph`](Self::graph).
pub struct HalfSpinSpace<'a, F> {
    dps: &'a DualPolarSpace<F>,
    family: Family,
    members: Vec<usize>,
    local: HashMap<usize, usize>,
    table: IntersectionTable,
    graph: Graph,
    lines: HashMap<Subspace<F>, Vec<usize>>,
}

/// Splits the maximals of a type D space into the families `(+, -)`.
///
/// The family containing ID 0 is `+`. The parity rule is checked for every
/// pair before anything is built.
pub fn split_families<F: Field>(
    dps: &DualPolarSpace<F>,
) -> Result<(HalfSpinSpace<'_, F>, HalfSpinSpace<'_, F>)> {
    let space = dps.space();
    if space.type_tag() != TypeTag::Dn {
        return Err(GeometryError::WrongType(format!(
            "{} is of type C{}, half-spin families need type D",
            space.name(),
            space.rank()
        )));
    }
    let n = dps.rank();
    let table = dps.table();
    let even = |i: usize, j: usize| (n - table.get(i, j) as usize).is_multiple_of(2);
    let (plus, minus): (Vec<usize>, Vec<usize>) = (0..dps.len()).partition(|&i| even(i, 0));
    let tag = |i: usize| plus.binary_search(&i).is_ok();
    for i in 0..dps.len() {
        for j in 0..i {
            if even(i, j) != (tag(i) == tag(j)) {
                return Err(GeometryError::InvalidPolarSpace(format!(
                    "parity rule fails for maximals {j} and {i}"
                )));
            }
        }
    }
    Ok((
        HalfSpinSpace::build(dps, Family::Plus, plus),
        HalfSpinSpace::build(dps, Family::Minus, minus),
    ))
}

impl<'a, F: Field> HalfSpinSpace<'a, F> {
    fn build(dps: &'a DualPolarSpace<F>, family: Family, members: Vec<usize>) -> Self {
        let n = dps.rank();
        let table = dps.table().restrict(&members);
        let graph = Graph::from_table(&table, (n - 2) as u8);
        let local = members.iter().enumerate().map(|(l, &g)| (g, l)).collect();
        let mut lines: HashMap<Subspace<F>, Vec<usize>> = HashMap::new();
        let maximals = dps.space().max_singulars();
        for &id in &members {
            for m in maximals[id].subspaces(n - 2) {
                lines.entry(m).or_default().push(id);
            }
        }
        HalfSpinSpace {
            dps,
            family,
            members,
            local,
            table,
            graph,
            lines,
        }
    }

    pub fn dual_polar(&self) -> &'a DualPolarSpace<F> {
        self.dps
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.dps.rank()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Global IDs of the members, ascending.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Intersection dimensions indexed by local position.
    pub fn table(&self) -> &IntersectionTable {
        &self.table
    }

    /// Collinearity graph indexed by local position.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Local position of a global ID.
    pub fn local(&self, id: usize) -> Result<usize> {
        if id >= self.dps.len() {
            return Err(GeometryError::InvalidId {
                id,
                len: self.dps.len(),
            });
        }
        self.local
            .get(&id)
            .copied()
            .ok_or(GeometryError::NotInFamily(id))
    }

    pub fn contains(&self, id: usize) -> bool {
        self.local.contains_key(&id)
    }

    fn idim(&self, s: usize, u: usize) -> Result<usize> {
        Ok(self.table.get(self.local(s)?, self.local(u)?) as usize)
    }

    pub fn collinear(&self, s: usize, u: usize) -> Result<bool> {
        Ok(s != u && self.idim(s, u)? + 2 == self.rank())
    }

    /// Intersection dimension of opposite members: 0 for even `n`, 1 for odd.
    pub fn opposite_dim(&self) -> usize {
        self.rank() % 2
    }

    pub fn opposite(&self, s: usize, u: usize) -> Result<bool> {
        Ok(self.idim(s, u)? == self.opposite_dim())
    }

    /// Graph distance between two members.
    pub fn distance(&self, s: usize, u: usize) -> Result<usize> {
        let (ls, lu) = (self.local(s)?, self.local(u)?);
        match self.graph.bfs(ls)[lu] {
            UNREACHABLE => Err(GeometryError::Precondition(format!(
                "members {s} and {u} are not connected"
            ))),
            d => Ok(d as usize),
        }
    }

    pub fn diameter(&self) -> Option<u32> {
        self.graph.diameter()
    }

    /// Members containing the singular subspace `m` of dimension `n - 2`.
    pub fn line(&self, m: &Subspace<F>) -> Result<&[usize]> {
        let n = self.rank();
        if m.dim() + 2 != n {
            return Err(GeometryError::WrongSubspaceDim {
                expected: n - 2,
                found: m.dim(),
            });
        }
        self.dps.space().require_singular(m, "line subspace")?;
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

    /// The point-line geometry on local positions.
    pub fn geometry(&self) -> PointLineGeometry {
        let lines = self
            .lines()
            .into_iter()
            .map(|(_, ids)| ids.iter().map(|id| self.local[id]).collect())
            .collect();
        PointLineGeometry::new(self.len(), lines)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Gf2, PolarSpace, Vector};

    fn dps(n: usize) -> DualPolarSpace<Gf2> {
        DualPolarSpace::new(PolarSpace::hyperbolic(n))
    }

    #[test]
    fn rank_three_is_projective_three_space() {
        let d = dps(3);
        let (plus, minus) = split_families(&d).unwrap();
        assert_eq!((plus.len(), minus.len()), (15, 15));
        let g = plus.geometry();
        assert_eq!(g.lines().len(), 35);
        assert!(g.lines().iter().all(|l| l.len() == 3));
        assert_eq!(g.check_linear_space(), Ok(()));
        assert_eq!(minus.geometry().check_linear_space(), Ok(()));
    }

    #[test]
    fn rank_four_families() {
        let d = dps(4);
        let (plus, minus) = split_families(&d).unwrap();
        assert_eq!((plus.len(), minus.len()), (135, 135));
        assert_eq!(plus.members()[0], 0);
        assert!(plus.members().iter().all(|id| !minus.contains(*id)));
        for (m, ids) in plus.lines() {
            assert_eq!(ids.len(), 3);
            for &a in ids {
                for &b in ids {
                    if a != b {
                        assert!(plus.collinear(a, b).unwrap());
                        let sa = d.member(a).unwrap();
                        assert_eq!(&sa.intersect(d.member(b).unwrap()).unwrap(), m);
                    }
                }
            }
        }
    }

    #[test]
    fn dual_polar_neighbours_switch_family() {
        let d = dps(4);
        let (plus, _) = split_families(&d).unwrap();
        for s in 0..d.len() {
            for &u in d.graph().neighbors(s) {
                assert_ne!(plus.contains(s), plus.contains(u as usize));
            }
        }
    }

    #[test]
    fn distance_is_half_dual_distance() {
        let d = dps(4);
        let (plus, _) = split_families(&d).unwrap();
        assert_eq!(plus.diameter(), Some(2));
        let g = plus.graph();
        for ls in 0..plus.len() {
            let dist = g.bfs(ls);
            for lu in 0..plus.len() {
                let (s, u) = (plus.members()[ls], plus.members()[lu]);
                assert_eq!(2 * dist[lu] as usize, d.distance(s, u).unwrap());
                assert_eq!(plus.opposite(s, u).unwrap(), dist[lu] == 2);
            }
        }
    }

    #[test]
    fn errors() {
        let d = dps(4);
        let (plus, minus) = split_families(&d).unwrap();
        let m = minus.members()[0];
        assert!(matches!(
            plus.collinear(0, m),
            Err(GeometryError::NotInFamily(_))
        ));
        assert!(matches!(
            plus.distance(0, 9999),
            Err(GeometryError::InvalidId { .. })
        ));
        let line = Subspace::from_rows(8, &[Vector::unit(8, 0)]).unwrap();
        assert!(matches!(
            plus.line(&line),
            Err(GeometryError::WrongSubspaceDim { .. })
        ));
        let sp = DualPolarSpace::new(PolarSpace::<Gf2>::symplectic(3));
        assert!(matches!(
            split_families(&sp),
            Err(GeometryError::WrongType(_))
        ));
    }

    #[test]
    fn self_relations() {
        let d = dps(4);
        let (plus, _) = split_families(&d).unwrap();
        assert!(!plus.collinear(0, 0).unwrap());
        assert!(!plus.opposite(0, 0).unwrap());
        assert_eq!(plus.distance(0, 0).unwrap(), 0);
    }
}
