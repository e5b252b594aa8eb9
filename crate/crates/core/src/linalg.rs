//! Vectors and canonical subspaces of GF(q)^d.
//!
//! A [`Subspace`] always stores its basis in reduced row-echelon form, so two
//! subspaces are equal exactly when their basis matrices are identical. The
//! derived `Ord` (lexicographic on the basis matrix) is the canonical order
//! every enumeration in the crate is sorted by.

use std::fmt;
use std::ops::{Add, Deref, Index, Sub};

use crate::error::{GeometryError, Result};
use crate::field::Field;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vector<F> {
    coords: Vec<F>,
}

impl<F: Field> Vector<F> {
    pub fn new(coords: Vec<F>) -> Self {
        Vector { coords }
    }

    /// Coordinates given as integers, reduced modulo `q`.
    pub fn from_ints(values: &[i64]) -> Self {
        Vector::new(values.iter().map(|&v| F::from_int(v)).collect())
    }

    pub fn zero(d: usize) -> Self {
        Vector::new(vec![F::zero(); d])
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = Self::zero(d);
        v.coords[i] = F::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: F) -> Self {
        Vector::new(self.coords.iter().map(|&c| c * s).collect())
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: F, other: &Self) -> Self {
        Vector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| a + s * b)
                .collect(),
        )
    }

    /// Index of the first nonzero coordinate.
    pub fn leading(&self) -> Option<usize> {
        self.coords.iter().position(|c| !c.is_zero())
    }

    /// Scalar multiple whose first nonzero coordinate is 1.
    pub fn normalized(&self) -> Self {
        match self.leading() {
            Some(i) => self.scale(self.coords[i].inverse().unwrap()),
            None => self.clone(),
        }
    }

    pub fn dot(&self, other: &Self) -> F {
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(F::zero(), |acc, (&a, &b)| acc + a * b)
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }
}

impl<F> Deref for Vector<F> {
    type Target = [F];
    fn deref(&self) -> &[F] {
        &self.coords
    }
}

impl<F> Index<usize> for Vector<F> {
    type Output = F;
    fn index(&self, i: usize) -> &F {
        &self.coords[i]
    }
}

impl<F: Field> Add for &Vector<F> {
    type Output = Vector<F>;
    fn add(self, rhs: Self) -> Vector<F> {
        self.add_scaled(F::one(), rhs)
    }
}

impl<F: Field> Sub for &Vector<F> {
    type Output = Vector<F>;
    fn sub(self, rhs: Self) -> Vector<F> {
        self.add_scaled(-F::one(), rhs)
    }
}

impl<F: fmt::Debug> fmt::Debug for Vector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, ")")
    }
}

/// Reduces `rows` (all of length `d`) to reduced row-echelon form in place,
/// dropping zero rows. Returns the pivot columns.
fn reduce<F: Field>(rows: &mut Vec<Vec<F>>, d: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..d {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][col].inverse().unwrap();
        if inv != F::one() {
            rows[r].iter_mut().for_each(|c| *c *= inv);
        }
        for i in 0..rows.len() {
            if i == r {
                continue;
            }
            let factor = rows[i][col];
            if factor.is_zero() {
                continue;
            }
            for j in col..d {
                let delta = factor * rows[r][j];
                rows[i][j] -= delta;
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A subspace of GF(q)^d held as its canonical RREF basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace<F> {
    ambient: usize,
    rows: Vec<Vector<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(d: usize) -> Self {
        Subspace {
            ambient: d,
            rows: Vec::new(),
        }
    }

    pub fn full(d: usize) -> Self {
        Subspace {
            ambient: d,
            rows: (0..d).map(|i| Vector::unit(d, i)).collect(),
        }
    }

    /// Canonical span of `rows` inside GF(q)^d.
    pub fn from_rows(d: usize, rows: &[Vector<F>]) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != d) {
            return Err(GeometryError::DimensionMismatch {
                expected: d,
                found: bad.len(),
            });
        }
        Ok(Self::span_unchecked(
            d,
            rows.iter().map(|r| r.coords.clone()),
        ))
    }

    /// Span of a single vector.
    pub fn point(v: &Vector<F>) -> Self {
        Self::span_unchecked(v.len(), std::iter::once(v.coords.clone()))
    }

    pub(crate) fn span_unchecked(d: usize, rows: impl IntoIterator<Item = Vec<F>>) -> Self {
        let mut rows: Vec<Vec<F>> = rows.into_iter().collect();
        reduce(&mut rows, d);
        Subspace {
            ambient: d,
            rows: rows.into_iter().map(Vector::new).collect(),
        }
    }

    /// Vector dimension.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rows(&self) -> &[Vector<F>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.leading().unwrap()).collect()
    }

    fn check_ambient(&self, d: usize) -> Result<()> {
        if d == self.ambient {
            Ok(())
        } else {
            Err(GeometryError::DimensionMismatch {
                expected: self.ambient,
                found: d,
            })
        }
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        other.check_ambient(self.ambient)?;
        Ok(self.sum_unchecked(other))
    }

    pub(crate) fn sum_unchecked(&self, other: &Self) -> Self {
        Self::span_unchecked(
            self.ambient,
            self.rows
                .iter()
                .chain(&other.rows)
                .map(|r| r.coords.clone()),
        )
    }

    /// `self + <v>`
    pub fn extend(&self, v: &Vector<F>) -> Result<Self> {
        self.check_ambient(v.len())?;
        Ok(Self::span_unchecked(
            self.ambient,
            self.rows
                .iter()
                .chain(std::iter::once(v))
                .map(|r| r.coords.clone()),
        ))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        other.check_ambient(self.ambient)?;
        Ok(self.intersect_unchecked(other))
    }

    /// Zassenhaus: reduce `[a | a]` over `[b | 0]`; rows with a zero left
    /// half carry a basis of the intersection on the right.
    pub(crate) fn intersect_unchecked(&self, other: &Self) -> Self {
        let d = self.ambient;
        if self.is_zero() || other.is_zero() {
            return Self::zero(d);
        }
        let mut m: Vec<Vec<F>> = self
            .rows
            .iter()
            .map(|a| a.coords.iter().chain(a.coords.iter()).copied().collect())
            .chain(other.rows.iter().map(|b| {
                b.coords
                    .iter()
                    .copied()
                    .chain(std::iter::repeat_n(F::zero(), d))
                    .collect()
            }))
            .collect();
        let pivots = reduce(&mut m, 2 * d);
        let tail = pivots.iter().position(|&p| p >= d).unwrap_or(pivots.len());
        Self::span_unchecked(d, m.drain(tail..).map(|row| row[d..].to_vec()))
    }

    /// Vector dimension of `self ∩ other`, via the modular law.
    pub fn intersection_dim(&self, other: &Self) -> Result<usize> {
        let s = self.sum(other)?;
        Ok(self.dim() + other.dim() - s.dim())
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the subspace.
    pub(crate) fn residue_of(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for row in &self.rows {
            let p = row.leading().unwrap();
            let c = w[p];
            if !c.is_zero() {
                for (wj, &rj) in w.iter_mut().zip(&row.coords).skip(p) {
                    *wj -= c * rj;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &Vector<F>) -> Result<bool> {
        self.check_ambient(v.len())?;
        Ok(self.contains_unchecked(v))
    }

    pub(crate) fn contains_unchecked(&self, v: &[F]) -> bool {
        self.residue_of(v).iter().all(|c| c.is_zero())
    }

    /// `other ⊆ self`
    pub fn contains_sub(&self, other: &Self) -> Result<bool> {
        other.check_ambient(self.ambient)?;
        Ok(other.dim() <= self.dim() && other.rows.iter().all(|r| self.contains_unchecked(r)))
    }

    /// The vector `Σ coeffs[i] * rows[i]`.
    pub fn combine(&self, coeffs: &[F]) -> Vector<F> {
        debug_assert_eq!(coeffs.len(), self.dim());
        let mut out = Vector::zero(self.ambient);
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if !c.is_zero() {
                out = out.add_scaled(*c, row);
            }
        }
        out
    }

    /// Every vector of the subspace, `q^dim` of them.
    pub fn vectors(&self) -> Vec<Vector<F>> {
        all_coefficient_vectors::<F>(self.dim())
            .map(|c| self.combine(&c))
            .collect()
    }

    /// All `k`-dimensional subspaces contained in `self`, canonically sorted.
    pub fn subspaces(&self, k: usize) -> Vec<Self> {
        let mut out: Vec<Self> = enumerate_rref_bases::<F>(self.dim(), k)
            .into_iter()
            .map(|coeffs| {
                Self::span_unchecked(self.ambient, coeffs.iter().map(|c| self.combine(c).coords))
            })
            .collect();
        out.sort();
        out
    }

    /// The projective points (1-dimensional subspaces) of `self`.
    pub fn points(&self) -> Vec<Self> {
        self.subspaces(1)
    }

    /// `{ v : <f, v> = 0 for every row f }` with the standard dot product.
    pub fn annihilator(&self) -> Self {
        let d = self.ambient;
        let pivots = self.pivots();
        let free = (0..d).filter(|c| !pivots.contains(c));
        let basis = free.map(|f| {
            let mut v = vec![F::zero(); d];
            v[f] = F::one();
            for (row, &p) in self.rows.iter().zip(&pivots) {
                v[p] = -row[f];
            }
            v
        });
        Self::span_unchecked(d, basis)
    }

    /// Text form: a `d=<ambient> q=<q>` header followed by one basis row per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("d={} q={}\n", self.ambient, F::ORDER);
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses [`to_text`](Self::to_text) output (any spanning rows are accepted).
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(GeometryError::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let mut d = None;
        let mut q = None;
        for tok in header.split_whitespace() {
            let parse = |v: &str| {
                v.parse::<usize>().map_err(|_| GeometryError::Parse {
                    line: hline,
                    msg: format!("bad header value {v:?}"),
                })
            };
            match tok.split_once('=') {
                Some(("d", v)) => d = Some(parse(v)?),
                Some(("q", v)) => q = Some(parse(v)?),
                _ => {
                    return Err(GeometryError::Parse {
                        line: hline,
                        msg: format!("unexpected header token {tok:?}"),
                    })
                }
            }
        }
        let (Some(d), Some(q)) = (d, q) else {
            return Err(GeometryError::Parse {
                line: hline,
                msg: "header must be \"d=<ambient> q=<q>\"".into(),
            });
        };
        if q != F::ORDER as usize {
            return Err(GeometryError::Parse {
                line: hline,
                msg: format!("field order {q} does not match GF({})", F::ORDER),
            });
        }
        let mut rows = Vec::new();
        for (ln, line) in lines {
            let coords = line
                .split_whitespace()
                .map(|t| match t.parse::<u8>() {
                    Ok(v) if v < F::ORDER => Ok(F::from_int(v as i64)),
                    _ => Err(GeometryError::Parse {
                        line: ln,
                        msg: format!("bad coordinate {t:?}"),
                    }),
                })
                .collect::<Result<Vec<F>>>()?;
            if coords.len() != d {
                return Err(GeometryError::Parse {
                    line: ln,
                    msg: format!("expected {d} coordinates, found {}", coords.len()),
                });
            }
            rows.push(Vector::new(coords));
        }
        Self::from_rows(d, &rows)
    }
}

impl<F: fmt::Debug> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            for c in r.iter() {
                write!(f, "{c:?}")?;
            }
        }
        write!(f, ">")
    }
}

impl<F: fmt::Debug> fmt::Display for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// All coefficient vectors of length `k`, in lexicographic order.
pub fn all_coefficient_vectors<F: Field>(k: usize) -> impl Iterator<Item = Vec<F>> {
    let q = F::ORDER as u64;
    let total = q.pow(k as u32);
    (0..total).map(move |mut idx| {
        let mut c = vec![F::zero(); k];
        for slot in c.iter_mut().rev() {
            *slot = F::from_int((idx % q) as i64);
            idx /= q;
        }
        c
    })
}

/// Every `k × d` matrix in reduced row-echelon form with `k` nonzero rows,
/// i.e. one basis per `k`-dimensional subspace of GF(q)^d.
pub fn enumerate_rref_bases<F: Field>(d: usize, k: usize) -> Vec<Vec<Vec<F>>> {
    let mut out = Vec::new();
    if k > d {
        return out;
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free cells: row i, columns after its pivot that are not pivots
        let cells: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let pivots = &pivots;
                (pivots[i] + 1..d)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        for fill in all_coefficient_vectors::<F>(cells.len()) {
            let mut m = vec![vec![F::zero(); d]; k];
            for (i, &p) in pivots.iter().enumerate() {
                m[i][p] = F::one();
            }
            for (&(i, c), v) in cells.iter().zip(fill) {
                m[i][c] = v;
            }
            out.push(m);
        }
        // next k-combination of 0..d
        let Some(i) = (0..k).rev().find(|&i| pivots[i] < d - k + i) else {
            break;
        };
        pivots[i] += 1;
        for j in i + 1..k {
            pivots[j] = pivots[j - 1] + 1;
        }
    }
    out
}

/// All `k`-dimensional subspaces of GF(q)^d, canonically sorted.
pub fn enumerate_subspaces<F: Field>(d: usize, k: usize) -> Vec<Subspace<F>> {
    let mut out: Vec<Subspace<F>> = enumerate_rref_bases::<F>(d, k)
        .into_iter()
        .map(|m| Subspace {
            ambient: d,
            rows: m.into_iter().map(Vector::new).collect(),
        })
        .collect();
    out.sort();
    out
}

/// One solution of `rows · z = rhs` (free variables set to zero), or `None`
/// if the system is inconsistent.
pub fn solve_linear<F: Field>(rows: &[Vec<F>], rhs: &[F], d: usize) -> Option<Vector<F>> {
    debug_assert_eq!(rows.len(), rhs.len());
    let mut m: Vec<Vec<F>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| r.iter().copied().chain(std::iter::once(b)).collect())
        .collect();
    let pivots = reduce(&mut m, d + 1);
    if pivots.last() == Some(&d) {
        return None;
    }
    let mut z = vec![F::zero(); d];
    for (row, &p) in m.iter().zip(&pivots) {
        z[p] = row[d];
    }
    Some(Vector::new(z))
}

/// Gaussian binomial coefficient `[d choose k]_q`.
pub fn gaussian_binomial(d: u32, k: u32, q: u128) -> u128 {
    if k > d {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow(d - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}
