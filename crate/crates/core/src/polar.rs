//! Polar spaces of symplectic and hyperbolic quadratic forms.
//!
//! Coordinates are ordered `(x1, y1, x2, y2, ..., xn, yn)`. The standard
//! symplectic form pairs `Ω(x_i, y_i) = 1 = -Ω(y_i, x_i)`; the standard
//! hyperbolic quadric is `Q(v) = Σ v[2i] v[2i+1]`, whose polar form pairs
//! `x_i` with `y_i` symmetrically.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::field::Field;
use crate::linalg::{all_coefficient_vectors, Subspace, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormKind {
    #[serde(rename = "symplectic")]
    Symplectic,
    /// Hyperbolic quadratic form.
    #[serde(rename = "quadric")]
    Quadratic,
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormKind::Symplectic => "symplectic",
            FormKind::Quadratic => "quadric",
        })
    }
}

/// Polar space type, by the number of maximals through a next-to-maximal singular subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeTag {
    /// At least three.
    Cn,
    /// Exactly two.
    Dn,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeTag::Cn => "Cn",
            TypeTag::Dn => "Dn",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form<F> {
    kind: FormKind,
    gram: Vec<Vec<F>>,
    /// Upper-triangular coefficients `c[i][j]`, `i <= j`, of `Q(v) = Σ c[i][j] v_i v_j`.
    quad: Option<Vec<Vec<F>>>,
}

impl<F: Field> Form<F> {
    /// The standard symplectic form on GF(q)^{2n}.
    pub fn symplectic(n: usize) -> Self {
        let d = 2 * n;
        let mut gram = vec![vec![F::zero(); d]; d];
        for i in 0..n {
            gram[2 * i][2 * i + 1] = F::one();
            gram[2 * i + 1][2 * i] = -F::one();
        }
        Form {
            kind: FormKind::Symplectic,
            gram,
            quad: None,
        }
    }

    /// The standard hyperbolic quadric `Q = x1 y1 + ... + xn yn` on GF(q)^{2n}.
    pub fn hyperbolic(n: usize) -> Self {
        let d = 2 * n;
        let mut coeffs = vec![vec![F::zero(); d]; d];
        for i in 0..n {
            coeffs[2 * i][2 * i + 1] = F::one();
        }
        Self::from_quadratic(coeffs).expect("standard quadric is valid")
    }

    pub fn standard(kind: FormKind, n: usize) -> Self {
        match kind {
            FormKind::Symplectic => Self::symplectic(n),
            FormKind::Quadratic => Self::hyperbolic(n),
        }
    }

    /// A symplectic form from its Gram matrix; must be alternating and non-degenerate.
    pub fn from_gram(gram: Vec<Vec<F>>) -> Result<Self> {
        let d = gram.len();
        if gram.iter().any(|r| r.len() != d) {
            return Err(GeometryError::InvalidForm(
                "Gram matrix is not square".into(),
            ));
        }
        for i in 0..d {
            if !gram[i][i].is_zero() {
                return Err(GeometryError::InvalidForm("form is not alternating".into()));
            }
            for j in 0..i {
                if gram[i][j] != -gram[j][i] {
                    return Err(GeometryError::InvalidForm("form is not alternating".into()));
                }
            }
        }
        let form = Form {
            kind: FormKind::Symplectic,
            gram,
            quad: None,
        };
        form.check_nondegenerate()?;
        Ok(form)
    }

    /// A quadratic form from upper-triangular coefficients; its polar form must be non-degenerate.
    pub fn from_quadratic(coeffs: Vec<Vec<F>>) -> Result<Self> {
        let d = coeffs.len();
        if coeffs.iter().any(|r| r.len() != d) {
            return Err(GeometryError::InvalidForm(
                "coefficient matrix is not square".into(),
            ));
        }
        let mut quad = coeffs;
        let mut gram = vec![vec![F::zero(); d]; d];
        for i in 0..d {
            for j in 0..i {
                // fold lower-triangular entries into the upper triangle
                let c = quad[i][j];
                quad[j][i] += c;
                quad[i][j] = F::zero();
            }
        }
        for i in 0..d {
            gram[i][i] = quad[i][i] + quad[i][i];
            for j in i + 1..d {
                gram[i][j] = quad[i][j];
                gram[j][i] = quad[i][j];
            }
        }
        let form = Form {
            kind: FormKind::Quadratic,
            gram,
            quad: Some(quad),
        };
        form.check_nondegenerate()?;
        Ok(form)
    }

    fn check_nondegenerate(&self) -> Result<()> {
        let d = self.dim();
        if !d.is_multiple_of(2) {
            return Err(GeometryError::InvalidForm(format!(
                "odd ambient dimension {d}"
            )));
        }
        let rank = Subspace::span_unchecked(d, self.gram.iter().cloned()).dim();
        if rank < d {
            return Err(GeometryError::InvalidForm(format!(
                "degenerate form: radical of dimension {}",
                d - rank
            )));
        }
        Ok(())
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<F>] {
        &self.gram
    }

    fn check_len(&self, v: &Vector<F>) -> Result<()> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            })
        }
    }

    pub fn eval_bilinear(&self, u: &Vector<F>, v: &Vector<F>) -> Result<F> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(self.bilinear(u, v))
    }

    #[inline]
    pub(crate) fn bilinear(&self, u: &[F], v: &[F]) -> F {
        let mut acc = F::zero();
        for (i, &ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                acc += ui * self.gram[i][j] * vj;
            }
        }
        acc
    }

    pub fn eval_quadratic(&self, v: &Vector<F>) -> Result<F> {
        self.check_len(v)?;
        if self.quad.is_none() {
            return Err(GeometryError::Unsupported("quadratic evaluation"));
        }
        Ok(self.quadratic(v))
    }

    fn quadratic(&self, v: &[F]) -> F {
        let quad = self.quad.as_ref().unwrap();
        let mut acc = F::zero();
        for i in 0..v.len() {
            if v[i].is_zero() {
                continue;
            }
            for j in i..v.len() {
                acc += quad[i][j] * v[i] * v[j];
            }
        }
        acc
    }

    /// Symplectic: every vector. Quadratic: `Q(v) = 0`.
    pub fn is_singular_vector(&self, v: &[F]) -> bool {
        match self.kind {
            FormKind::Symplectic => true,
            FormKind::Quadratic => self.quadratic(v).is_zero(),
        }
    }

    /// Basis check: every basis vector singular and every pair of basis vectors orthogonal.
    pub fn is_totally_singular(&self, s: &Subspace<F>) -> bool {
        let rows = s.rows();
        rows.iter().enumerate().all(|(i, a)| {
            self.is_singular_vector(a)
                && rows[i + 1..].iter().all(|b| self.bilinear(a, b).is_zero())
        })
    }

    /// `{v : B(v, x) = 0 for all x in X}`
    pub fn perp(&self, x: &Subspace<F>) -> Subspace<F> {
        let d = self.dim();
        let functionals = x.rows().iter().map(|row| {
            (0..d)
                .map(|i| {
                    row.iter()
                        .enumerate()
                        .fold(F::zero(), |acc, (j, &c)| acc + self.gram[i][j] * c)
                })
                .collect::<Vec<F>>()
        });
        Subspace::span_unchecked(d, functionals).annihilator()
    }
}

/// Number of maximal totally singular subspaces of the standard form of Witt index `n`.
pub fn max_singular_count(kind: FormKind, n: u32, q: u128) -> u128 {
    match kind {
        FormKind::Symplectic => (1..=n).map(|i| q.pow(i) + 1).product(),
        FormKind::Quadratic => (0..n).map(|i| q.pow(i) + 1).product(),
    }
}

/// A polar space with every totally singular subspace enumerated.
#[derive(Clone)]
pub struct PolarSpace<F> {
    form: Form<F>,
    rank: usize,
    type_tag: TypeTag,
    /// `levels[k]`: all totally singular subspaces of vector dimension `k`, sorted.
    levels: Vec<Vec<Subspace<F>>>,
}

impl<F: Field> fmt::Debug for PolarSpace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PolarSpace")
            .field("name", &self.name())
            .field("type_tag", &self.type_tag)
            .field("points", &self.points().len())
            .field("max_singulars", &self.max_singulars().len())
            .finish()
    }
}

/// Uniform count of maximals through each next-to-maximal singular subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TypeClassification {
    pub tag: TypeTag,
    pub maximals_per_next_to_max: usize,
}

impl<F: Field> PolarSpace<F> {
    pub fn new(form: Form<F>) -> Result<Self> {
        let d = form.dim();
        let mut levels = vec![vec![Subspace::zero(d)]];
        loop {
            let next = extend_level(&form, levels.last().unwrap());
            if next.is_empty() {
                break;
            }
            levels.push(next);
        }
        let rank = levels.len() - 1;
        if 2 * rank != d {
            return Err(GeometryError::InvalidForm(format!(
                "Witt index {rank} is not maximal for ambient dimension {d}"
            )));
        }
        let mut space = PolarSpace {
            form,
            rank,
            type_tag: TypeTag::Cn,
            levels,
        };
        space.type_tag = space.classify_type()?.tag;
        Ok(space)
    }

    pub fn standard(kind: FormKind, n: usize) -> Result<Self> {
        Self::new(Form::standard(kind, n))
    }

    pub fn symplectic(n: usize) -> Self {
        Self::new(Form::symplectic(n)).expect("standard symplectic space")
    }

    pub fn hyperbolic(n: usize) -> Self {
        Self::new(Form::hyperbolic(n)).expect("standard hyperbolic space")
    }

    pub fn form(&self) -> &Form<F> {
        &self.form
    }

    /// Witt index `n`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.form.dim()
    }

    pub fn type_tag(&self) -> TypeTag {
        self.type_tag
    }

    pub fn kind(&self) -> FormKind {
        self.form.kind()
    }

    /// `Sp(2n,q)` or `O+(2n,q)`.
    pub fn name(&self) -> String {
        match self.kind() {
            FormKind::Symplectic => format!("Sp({},{})", self.ambient_dim(), F::ORDER),
            FormKind::Quadratic => format!("O+({},{})", self.ambient_dim(), F::ORDER),
        }
    }

    pub fn points(&self) -> &[Subspace<F>] {
        &self.levels[1]
    }

    /// Maximal singular subspaces; the index in this slice is the canonical ID.
    pub fn max_singulars(&self) -> &[Subspace<F>] {
        &self.levels[self.rank]
    }

    /// All totally singular subspaces of vector dimension `k`.
    pub fn singular_subspaces(&self, k: usize) -> &[Subspace<F>] {
        self.levels.get(k).map_or(&[], |l| l.as_slice())
    }

    pub fn max_id(&self, s: &Subspace<F>) -> Option<usize> {
        self.max_singulars().binary_search(s).ok()
    }

    pub fn is_totally_singular(&self, s: &Subspace<F>) -> bool {
        s.ambient_dim() == self.ambient_dim() && self.form.is_totally_singular(s)
    }

    pub fn perp(&self, x: &Subspace<F>) -> Result<Subspace<F>> {
        if x.ambient_dim() != self.ambient_dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.ambient_dim(),
                found: x.ambient_dim(),
            });
        }
        Ok(self.form.perp(x))
    }

    pub(crate) fn require_singular(&self, s: &Subspace<F>, what: &str) -> Result<()> {
        if s.ambient_dim() != self.ambient_dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.ambient_dim(),
                found: s.ambient_dim(),
            });
        }
        if !self.form.is_totally_singular(s) {
            return Err(GeometryError::NotTotallySingular(format!("{what} {s}")));
        }
        Ok(())
    }

    /// Whether two singular points span a totally singular line (or coincide).
    pub fn collinear_points(&self, p: &Subspace<F>, r: &Subspace<F>) -> Result<bool> {
        for x in [p, r] {
            if x.dim() != 1 {
                return Err(GeometryError::WrongSubspaceDim {
                    expected: 1,
                    found: x.dim(),
                });
            }
            self.require_singular(x, "point")?;
        }
        Ok(self.form.is_totally_singular(&p.sum_unchecked(r)))
    }

    /// Counts maximals through every next-to-maximal singular subspace.
    pub fn classify_type(&self) -> Result<TypeClassification> {
        let n = self.rank;
        let mut counts: HashMap<Subspace<F>, usize> = HashMap::new();
        for m in self.max_singulars() {
            for h in m.subspaces(n - 1) {
                *counts.entry(h).or_default() += 1;
            }
        }
        if counts.len() != self.singular_subspaces(n - 1).len() {
            return Err(GeometryError::InvalidPolarSpace(
                "some next-to-maximal singular subspace lies in no maximal".into(),
            ));
        }
        let mut values = counts.values().copied();
        let first = values.next().unwrap_or(0);
        if values.any(|c| c != first) {
            return Err(GeometryError::InvalidPolarSpace(
                "non-uniform number of maximals through next-to-maximal subspaces".into(),
            ));
        }
        let tag = match first {
            2 => TypeTag::Dn,
            c if c >= 3 => TypeTag::Cn,
            c => {
                return Err(GeometryError::InvalidPolarSpace(format!(
                    "{c} maximals through a next-to-maximal subspace"
                )))
            }
        };
        Ok(TypeClassification {
            tag,
            maximals_per_next_to_max: first,
        })
    }
}

/// All totally singular `(k+1)`-spaces from the `k`-spaces in `level`.
///
/// Each `S` is extended by singular points of `S^⊥` taken modulo `S`: the
/// residues of `S^⊥`'s basis against `S` span a complement of `S` in `S^⊥`,
/// and singularity is constant on cosets of `S` inside `S^⊥`.
/// Every totally singular `(k+1)`-space `T` is produced once, from its
/// predecessor `S = {x ∈ T : x[p] = 0}` where `p` is the last pivot of `T`.
/// From `S` that means extending by `v` whose leading column `p` lies past
/// every pivot of `S` and is zero in every row of `S`.
fn extend_level<F: Field>(form: &Form<F>, level: &[Subspace<F>]) -> Vec<Subspace<F>> {
    let d = form.dim();
    let mut next: Vec<Subspace<F>> = level
        .par_iter()
        .flat_map_iter(|s| {
            let perp = form.perp(s);
            let complement =
                Subspace::span_unchecked(d, perp.rows().iter().map(|r| s.residue_of(r)));
            let first_free = s.pivots().last().map_or(0, |p| p + 1);
            let k = complement.dim();
            let mut out = Vec::new();
            for coeffs in all_coefficient_vectors::<F>(k) {
                // one representative per projective point: leading coefficient 1
                match coeffs.iter().find(|c| !c.is_zero()) {
                    Some(c) if *c == F::one() => {}
                    _ => continue,
                }
                let v = complement.combine(&coeffs);
                let lead = v.leading().expect("nonzero combination");
                if lead < first_free || s.rows().iter().any(|r| !r[lead].is_zero()) {
                    continue;
                }
                if form.is_singular_vector(&v) {
                    out.push(s.extend(&v).expect("same ambient"));
                }
            }
            out
        })
        .collect();
    next.sort();
    debug_assert!(next.windows(2).all(|w| w[0] != w[1]));
    next
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Gf2, Gf3};

    fn x(d: usize, i: usize) -> Vector<Gf2> {
        Vector::unit(d, 2 * (i - 1))
    }
    fn y(d: usize, i: usize) -> Vector<Gf2> {
        Vector::unit(d, 2 * (i - 1) + 1)
    }

    #[test]
    fn symplectic_pairing() {
        let f = Form::<Gf2>::symplectic(3);
        assert_eq!(f.eval_bilinear(&x(6, 1), &y(6, 1)).unwrap(), Gf2::new(1));
        let v = Vector::from_ints(&[1, 1, 0, 1, 1, 0]);
        assert_eq!(f.eval_bilinear(&v, &v).unwrap(), Gf2::new(0));
        assert_eq!(
            f.eval_quadratic(&v).unwrap_err(),
            GeometryError::Unsupported("quadratic evaluation")
        );
        let g = Form::<Gf3>::symplectic(3);
        let (x1, y1) = (Vector::unit(6, 0), Vector::unit(6, 1));
        assert_eq!(g.eval_bilinear(&x1, &y1).unwrap(), Gf3::new(1));
        assert_eq!(g.eval_bilinear(&y1, &x1).unwrap(), Gf3::new(2));
    }

    #[test]
    fn quadric_values_and_polarization() {
        let f = Form::<Gf2>::hyperbolic(3);
        let e1 = Vector::unit(6, 0);
        let e2 = Vector::unit(6, 1);
        assert_eq!(f.eval_quadratic(&e1).unwrap(), Gf2::new(0));
        assert_eq!(f.eval_bilinear(&e1, &e2).unwrap(), Gf2::new(1));
        let g = Form::<Gf3>::hyperbolic(2);
        let all = Subspace::<Gf3>::full(4).vectors();
        for u in all.iter().step_by(5) {
            for v in &all {
                let lhs = g.eval_quadratic(&(u + v)).unwrap();
                let rhs = g.eval_quadratic(u).unwrap()
                    + g.eval_quadratic(v).unwrap()
                    + g.eval_bilinear(u, v).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn rejects_degenerate_and_non_alternating() {
        let mut gram = Form::<Gf3>::symplectic(2).gram().to_vec();
        gram[0][1] = Gf3::new(0);
        gram[1][0] = Gf3::new(0);
        assert!(matches!(
            Form::from_gram(gram),
            Err(GeometryError::InvalidForm(_))
        ));
        let mut gram = Form::<Gf3>::symplectic(2).gram().to_vec();
        gram[0][0] = Gf3::new(1);
        assert!(matches!(
            Form::from_gram(gram),
            Err(GeometryError::InvalidForm(_))
        ));
        let mut coeffs = vec![vec![Gf2::new(0); 4]; 4];
        coeffs[0][1] = Gf2::new(1);
        assert!(matches!(
            Form::from_quadratic(coeffs),
            Err(GeometryError::InvalidForm(_))
        ));
    }

    #[test]
    fn elliptic_quadric_is_rejected() {
        // x1 y1 + x2^2 + x2 y2 + y2^2 has Witt index 1 over GF(2)
        let mut c = vec![vec![Gf2::new(0); 4]; 4];
        c[0][1] = Gf2::new(1);
        c[2][2] = Gf2::new(1);
        c[2][3] = Gf2::new(1);
        c[3][3] = Gf2::new(1);
        let f = Form::from_quadratic(c).unwrap();
        assert!(matches!(
            PolarSpace::new(f),
            Err(GeometryError::InvalidForm(_))
        ));
    }

    #[test]
    fn total_singularity() {
        let sp = PolarSpace::<Gf2>::symplectic(3);
        assert!(sp.is_totally_singular(&Subspace::zero(6)));
        let xs = Subspace::from_rows(6, &[x(6, 1), x(6, 2), x(6, 3)]).unwrap();
        assert!(sp.is_totally_singular(&xs));
        let hyp = Subspace::from_rows(6, &[x(6, 1), y(6, 1)]).unwrap();
        assert!(!sp.is_totally_singular(&hyp));
    }

    #[test]
    fn perp_of_point() {
        let sp = PolarSpace::<Gf2>::symplectic(3);
        assert_eq!(sp.perp(&Subspace::zero(6)).unwrap(), Subspace::full(6));
        let p = Subspace::point(&x(6, 1));
        let expected =
            Subspace::from_rows(6, &[x(6, 1), x(6, 2), x(6, 3), y(6, 2), y(6, 3)]).unwrap();
        let perp = sp.perp(&p).unwrap();
        assert_eq!(perp, expected);
        // brute force over all 64 vectors
        let brute: Vec<_> = Subspace::<Gf2>::full(6)
            .vectors()
            .into_iter()
            .filter(|v| sp.form().eval_bilinear(v, &x(6, 1)).unwrap() == Gf2::new(0))
            .collect();
        assert_eq!(brute.len(), 32);
        assert!(brute.iter().all(|v| perp.contains(v).unwrap()));
    }

    #[test]
    fn point_collinearity() {
        let sp = PolarSpace::<Gf2>::symplectic(3);
        let p1 = Subspace::point(&x(6, 1));
        assert!(sp.collinear_points(&p1, &p1).unwrap());
        assert!(sp
            .collinear_points(&p1, &Subspace::point(&x(6, 2)))
            .unwrap());
        assert!(!sp
            .collinear_points(&p1, &Subspace::point(&y(6, 1)))
            .unwrap());
        let q = PolarSpace::<Gf2>::hyperbolic(3);
        let nonsing = Subspace::point(&Vector::from_ints(&[1, 1, 0, 0, 0, 0]));
        assert!(matches!(
            q.collinear_points(&nonsing, &nonsing),
            Err(GeometryError::NotTotallySingular(_))
        ));
    }

    #[test]
    fn maximal_counts_match_product_formula() {
        let cases: [(FormKind, usize, usize); 3] = [
            (FormKind::Symplectic, 3, 135),
            (FormKind::Quadratic, 3, 30),
            (FormKind::Quadratic, 4, 270),
        ];
        for (kind, n, expected) in cases {
            let s = PolarSpace::<Gf2>::standard(kind, n).unwrap();
            assert_eq!(s.max_singulars().len(), expected);
            assert_eq!(max_singular_count(kind, n as u32, 2), expected as u128);
            assert!(s.max_singulars().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn type_classification() {
        let o8 = PolarSpace::<Gf2>::hyperbolic(4);
        assert_eq!(
            o8.classify_type().unwrap(),
            TypeClassification {
                tag: TypeTag::Dn,
                maximals_per_next_to_max: 2
            }
        );
        let sp6 = PolarSpace::<Gf2>::symplectic(3);
        assert_eq!(
            sp6.classify_type().unwrap(),
            TypeClassification {
                tag: TypeTag::Cn,
                maximals_per_next_to_max: 3
            }
        );
        let sp63 = PolarSpace::<Gf3>::symplectic(3);
        assert_eq!(sp63.max_singulars().len(), 1120);
        assert_eq!(
            sp63.classify_type().unwrap(),
            TypeClassification {
                tag: TypeTag::Cn,
                maximals_per_next_to_max: 4
            }
        );
    }

    #[test]
    fn maximals_are_maximal() {
        for s in [
            PolarSpace::<Gf2>::symplectic(3),
            PolarSpace::<Gf2>::hyperbolic(3),
        ] {
            for m in s.max_singulars() {
                let perp = s.perp(m).unwrap();
                assert!(perp.contains_sub(m).unwrap());
                assert_eq!(
                    perp, *m,
                    "maximal totally singular subspaces are self-perpendicular"
                );
                for p in s.points() {
                    if !m.contains_sub(p).unwrap() {
                        assert!(!s.is_totally_singular(&m.sum(p).unwrap()));
                    }
                }
            }
        }
    }
}
