//! Grassmann graphs of a finite vector space: `k`-subspaces of `GF(q)^d`,
//! adjacent when they meet in dimension `k - 1`.

use crate::error::{GeometryError, Result};
use crate::field::Field;
use crate::graph::Graph;
use crate::linalg::{enumerate_subspaces, gaussian_binomial, Subspace};
use crate::table::IntersectionTable;

pub struct GrassmannGraph<F> {
    d: usize,
    k: usize,
    vertices: Vec<Subspace<F>>,
    table: IntersectionTable,
    graph: Graph,
}

impl<F: Field> GrassmannGraph<F> {
    /// Refuses ranges where every two distinct vertices are adjacent, and
    /// vertex sets larger than `budget`.
    pub fn build(d: usize, k: usize, budget: u128) -> Result<Self> {
        if k <= 1 || k + 1 >= d {
            return Err(GeometryError::Precondition(format!(
                "need 1 < k < d-1, got d={d} k={k}"
            )));
        }
        let estimate = gaussian_binomial(d as u32, k as u32, F::ORDER as u128);
        if estimate > budget {
            return Err(GeometryError::OverBudget { estimate, budget });
        }
        let vertices = enumerate_subspaces::<F>(d, k);
        let table = IntersectionTable::build(&vertices);
        let graph = Graph::from_table(&table, (k - 1) as u8);
        Ok(GrassmannGraph {
            d,
            k,
            vertices,
            table,
            graph,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn name(&self) -> String {
        format!("G({},{},{})", self.d, self.k, F::ORDER)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Subspace<F>] {
        &self.vertices
    }

    pub fn id_of(&self, s: &Subspace<F>) -> Option<usize> {
        self.vertices.binary_search(s).ok()
    }

    pub fn table(&self) -> &IntersectionTable {
        &self.table
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    fn idim(&self, s: usize, u: usize) -> Result<usize> {
        for id in [s, u] {
            if id >= self.len() {
                return Err(GeometryError::InvalidId {
                    id,
                    len: self.len(),
                });
            }
        }
        Ok(self.table.get(s, u) as usize)
    }

    /// `k - dim(S ∩ U)`.
    pub fn distance(&self, s: usize, u: usize) -> Result<usize> {
        Ok(self.k - self.idim(s, u)?)
    }

    pub fn diameter(&self) -> usize {
        self.k.min(self.d - self.k)
    }

    pub fn adjacent(&self, s: usize, u: usize) -> Result<bool> {
        Ok(self.distance(s, u)? == 1)
    }

    pub fn opposite(&self, s: usize, u: usize) -> Result<bool> {
        Ok(self.distance(s, u)? == self.diameter())
    }

    /// Intersection dimension of opposite vertices, `max(0, 2k - d)`.
    pub fn opposite_dim(&self) -> usize {
        (2 * self.k).saturating_sub(self.d)
    }
}
