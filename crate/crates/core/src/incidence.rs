//! Abstract point-line geometries and the polar-space axioms.
//!
//! Points are `0..num_points`; a line is a sorted list of points. Everything
//! here works on the incidence structure alone, so the same checks apply to
//! a polar space built from a form and to a half-spin Grassmann space.

use std::collections::HashSet;

use crate::field::Field;
use crate::polar::{PolarSpace, TypeTag};

type Bits = Vec<u64>;

fn bit(bits: &Bits, i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

fn set(bits: &mut Bits, i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn ones(bits: &Bits) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(w, &word)| {
        (0..64)
            .filter(move |b| word >> b & 1 == 1)
            .map(move |b| w * 64 + b)
    })
}

#[derive(Clone, Debug)]
pub struct PointLineGeometry {
    num_points: usize,
    lines: Vec<Vec<usize>>,
    /// `collinear[p]`: points sharing a line with `p`, including `p` itself.
    collinear: Vec<Bits>,
    lines_on: Vec<Vec<usize>>,
}

impl PointLineGeometry {
    pub fn new(num_points: usize, lines: Vec<Vec<usize>>) -> Self {
        let mut lines: Vec<Vec<usize>> = lines
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        lines.sort();
        let words = num_points.div_ceil(64);
        let mut collinear = vec![vec![0u64; words]; num_points];
        let mut lines_on = vec![Vec::new(); num_points];
        for (p, row) in collinear.iter_mut().enumerate() {
            set(row, p);
        }
        for (li, l) in lines.iter().enumerate() {
            for &p in l {
                lines_on[p].push(li);
                for &r in l {
                    set(&mut collinear[p], r);
                }
            }
        }
        PointLineGeometry {
            num_points,
            lines,
            collinear,
            lines_on,
        }
    }

    /// Points and totally singular lines of a polar space, indexed by canonical point order.
    pub fn from_polar_space<F: Field>(space: &PolarSpace<F>) -> Self {
        let points = space.points();
        let lines = space
            .singular_subspaces(2)
            .iter()
            .map(|l| {
                l.points()
                    .iter()
                    .map(|p| points.binary_search(p).expect("singular point"))
                    .collect()
            })
            .collect();
        Self::new(points.len(), lines)
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn collinear(&self, p: usize, r: usize) -> bool {
        bit(&self.collinear[p], r)
    }

    /// Lines have at least two points, every point is on a line, and two
    /// distinct points share at most one line.
    pub fn check_partial_linear(&self) -> Result<(), String> {
        if let Some(l) = self.lines.iter().find(|l| l.len() < 2) {
            return Err(format!("line {l:?} has fewer than two points"));
        }
        if let Some(p) = (0..self.num_points).find(|&p| self.lines_on[p].is_empty()) {
            return Err(format!("point {p} is on no line"));
        }
        for p in 0..self.num_points {
            let mut seen = vec![false; self.num_points];
            for &li in &self.lines_on[p] {
                for &r in &self.lines[li] {
                    if r != p {
                        if seen[r] {
                            return Err(format!("points {p} and {r} share two lines"));
                        }
                        seen[r] = true;
                    }
                }
            }
        }
        Ok(())
    }

    /// Every two distinct points lie on exactly one line.
    pub fn check_linear_space(&self) -> Result<(), String> {
        self.check_partial_linear()?;
        for p in 0..self.num_points {
            if let Some(r) = (0..self.num_points).find(|&r| !self.collinear(p, r)) {
                return Err(format!("points {p} and {r} are not joined by a line"));
            }
        }
        Ok(())
    }

    /// Every line has at least three points.
    pub fn check_thick_lines(&self) -> Result<(), String> {
        match self.lines.iter().find(|l| l.len() < 3) {
            Some(l) => Err(format!("line {l:?} has fewer than three points")),
            None => Ok(()),
        }
    }

    /// A point is collinear with exactly one or with all points of each line.
    pub fn check_one_or_all(&self) -> Result<(), String> {
        for p in 0..self.num_points {
            for l in &self.lines {
                let c = l.iter().filter(|&&r| self.collinear(p, r)).count();
                if c != 1 && c != l.len() {
                    return Err(format!("point {p} is collinear with {c} points of {l:?}"));
                }
            }
        }
        Ok(())
    }

    /// Every point has a point not collinear with it.
    pub fn check_nondegenerate(&self) -> Result<(), String> {
        for p in 0..self.num_points {
            if (0..self.num_points).all(|r| self.collinear(p, r)) {
                return Err(format!("point {p} is collinear with every point"));
            }
        }
        Ok(())
    }

    /// Partial linear space, thick lines, one-or-all and nondegeneracy.
    pub fn check_polar_axioms(&self) -> Result<(), String> {
        self.check_partial_linear()?;
        self.check_thick_lines()?;
        self.check_one_or_all()?;
        self.check_nondegenerate()
    }

    /// Singular subspaces (sets of pairwise collinear points closed under
    /// lines) grouped by projective dimension + 1: `result[k]` holds the
    /// `k`-point-generated ones, `result[1]` the points.
    pub fn singular_subspaces(&self) -> Vec<Vec<Vec<usize>>> {
        let words = self.num_points.div_ceil(64);
        let mut levels: Vec<Vec<Bits>> = vec![Vec::new()];
        let mut current: Vec<Bits> = (0..self.num_points)
            .map(|p| {
                let mut b = vec![0u64; words];
                set(&mut b, p);
                b
            })
            .collect();
        while !current.is_empty() {
            let mut next: HashSet<Bits> = HashSet::new();
            for s in &current {
                let mut common = vec![!0u64; words];
                for p in ones(s) {
                    for (c, w) in common.iter_mut().zip(&self.collinear[p]) {
                        *c &= w;
                    }
                }
                for p in ones(&common).filter(|&p| p < self.num_points && !bit(s, p)) {
                    next.insert(self.cone(s, p));
                }
            }
            levels.push(std::mem::take(&mut current));
            let mut v: Vec<Bits> = next.into_iter().collect();
            v.sort();
            current = v;
        }
        levels
            .into_iter()
            .map(|lvl| lvl.iter().map(|b| ones(b).collect()).collect())
            .collect()
    }

    /// `s ∪ {p} ∪` every line joining `p` to a point of `s`.
    fn cone(&self, s: &Bits, p: usize) -> Bits {
        let mut out = s.clone();
        set(&mut out, p);
        for &li in &self.lines_on[p] {
            if self.lines[li].iter().any(|&r| r != p && bit(s, r)) {
                for &r in &self.lines[li] {
                    set(&mut out, r);
                }
            }
        }
        out
    }

    /// Rank and type of a polar space from its incidence structure alone.
    pub fn classify(&self) -> Result<(usize, TypeTag), String> {
        let levels = self.singular_subspaces();
        let rank = levels.len() - 1;
        if rank < 2 {
            return Err(format!("rank {rank} is too small to classify"));
        }
        let maximals = &levels[rank];
        let next: HashSet<&Vec<usize>> = levels[rank - 1].iter().collect();
        let mut counts = std::collections::HashMap::<&Vec<usize>, usize>::new();
        for h in &levels[rank - 1] {
            counts.insert(h, 0);
        }
        for m in maximals {
            for h in &levels[rank - 1] {
                if h.iter().all(|p| m.binary_search(p).is_ok()) {
                    *counts.get_mut(h).unwrap() += 1;
                }
            }
        }
        debug_assert_eq!(counts.len(), next.len());
        let mut vals = counts.values().copied();
        let first = vals.next().unwrap_or(0);
        if vals.any(|c| c != first) {
            return Err("non-uniform count of maximals through next-to-maximal subspaces".into());
        }
        match first {
            2 => Ok((rank, TypeTag::Dn)),
            c if c >= 3 => Ok((rank, TypeTag::Cn)),
            c => Err(format!("{c} maximals through a next-to-maximal subspace")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{enumerate_subspaces, Gf2};

    fn fano() -> PointLineGeometry {
        let pts = enumerate_subspaces::<Gf2>(3, 1);
        let lines = enumerate_subspaces::<Gf2>(3, 2)
            .iter()
            .map(|l| {
                l.points()
                    .iter()
                    .map(|p| pts.binary_search(p).unwrap())
                    .collect()
            })
            .collect();
        PointLineGeometry::new(7, lines)
    }

    #[test]
    fn fano_plane_is_linear() {
        let g = fano();
        assert_eq!(g.lines().len(), 7);
        assert_eq!(g.check_linear_space(), Ok(()));
        assert_eq!(g.check_one_or_all(), Ok(()));
        assert!(g.check_nondegenerate().is_err());
    }

    #[test]
    fn detects_double_lines() {
        let g = PointLineGeometry::new(3, vec![vec![0, 1, 2], vec![0, 1]]);
        assert!(g.check_partial_linear().is_err());
    }

    #[test]
    fn symplectic_polar_axioms() {
        let sp = PolarSpace::<Gf2>::symplectic(3);
        let g = PointLineGeometry::from_polar_space(&sp);
        assert_eq!(g.num_points(), 63);
        assert_eq!(g.lines().len(), 315);
        assert_eq!(g.check_polar_axioms(), Ok(()));
        assert_eq!(g.classify(), Ok((3, TypeTag::Cn)));
    }

    #[test]
    fn quadric_polar_axioms() {
        let o = PolarSpace::<Gf2>::hyperbolic(3);
        let g = PointLineGeometry::from_polar_space(&o);
        assert_eq!(g.num_points(), 35);
        assert_eq!(g.check_polar_axioms(), Ok(()));
        assert_eq!(g.classify(), Ok((3, TypeTag::Dn)));
    }
}
