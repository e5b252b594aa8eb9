//! Frames: hyperbolic bases `x_1..x_n, y_1..y_n` with `B(x_i, y_j) = δ_ij`,
//! all other pairings zero and every vector singular. The `2n` points
//! `<x_i>, <y_i>` are pairwise collinear except for the `n` pairs.

use crate::error::{GeometryError, Result};
use crate::field::Field;
use crate::linalg::{all_coefficient_vectors, solve_linear, Subspace, Vector};
use crate::polar::{Form, PolarSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame<F> {
    pairs: Vec<(Vector<F>, Vector<F>)>,
}

impl<F: Field> Frame<F> {
    /// Representative vector pairs `(x_i, y_i)` with `B(x_i, y_i) = 1`.
    pub fn pairs(&self) -> &[(Vector<F>, Vector<F>)] {
        &self.pairs
    }

    /// Point pairs `(p_i, q_i) = (<x_i>, <y_i>)`.
    pub fn points(&self) -> Vec<(Subspace<F>, Subspace<F>)> {
        self.pairs
            .iter()
            .map(|(x, y)| (Subspace::point(x), Subspace::point(y)))
            .collect()
    }

    /// All `2n` representative vectors, `x`s then `y`s.
    pub fn vectors(&self) -> Vec<Vector<F>> {
        self.pairs
            .iter()
            .map(|(x, _)| x.clone())
            .chain(self.pairs.iter().map(|(_, y)| y.clone()))
            .collect()
    }

    /// Checks the pairing pattern, singularity, and that the vectors form a basis.
    pub fn validate(&self, space: &PolarSpace<F>) -> std::result::Result<(), String> {
        let form = space.form();
        let n = space.rank();
        if self.pairs.len() != n {
            return Err(format!("{} pairs, rank is {n}", self.pairs.len()));
        }
        let vecs = self.vectors();
        if vecs.iter().any(|v| v.len() != space.ambient_dim()) {
            return Err("vector of wrong length".into());
        }
        if let Some(v) = vecs.iter().find(|v| !form.is_singular_vector(v)) {
            return Err(format!("{v:?} is not singular"));
        }
        for (i, (xi, yi)) in self.pairs.iter().enumerate() {
            for (j, (xj, yj)) in self.pairs.iter().enumerate() {
                let expect = if i == j { F::one() } else { F::zero() };
                if form.bilinear(xi, yj) != expect {
                    return Err(format!("B(x{}, y{}) != {expect}", i + 1, j + 1));
                }
                if !form.bilinear(xi, xj).is_zero() || !form.bilinear(yi, yj).is_zero() {
                    return Err(format!("pair {} and {} not orthogonal", i + 1, j + 1));
                }
            }
        }
        if Subspace::span_unchecked(space.ambient_dim(), vecs.iter().map(|v| v.to_vec())).dim()
            != space.ambient_dim()
        {
            return Err("frame vectors do not span the ambient space".into());
        }
        Ok(())
    }

    /// Whether `s` is spanned by the frame vectors it contains.
    pub fn spans(&self, s: &Subspace<F>) -> bool {
        let inside: Vec<Vec<F>> = self
            .vectors()
            .into_iter()
            .filter(|v| s.contains_unchecked(v))
            .map(|v| v.to_vec())
            .collect();
        Subspace::span_unchecked(s.ambient_dim(), inside).dim() == s.dim()
    }
}

/// The frame of the standard basis: `x_i = e_{2i-1}`, `y_i = e_{2i}`.
pub fn standard_frame<F: Field>(space: &PolarSpace<F>) -> Frame<F> {
    let d = space.ambient_dim();
    Frame {
        pairs: (0..space.rank())
            .map(|i| (Vector::unit(d, 2 * i), Vector::unit(d, 2 * i + 1)))
            .collect(),
    }
}

/// `z` with `B(w, z) = 0` for every `w` in `ortho` and `B(target, z) = 1`,
/// adjusted by a multiple of the singular vector `target` so that `z` is singular.
fn hyperbolic_partner<F: Field>(
    form: &Form<F>,
    target: &Vector<F>,
    ortho: &[&Vector<F>],
) -> Option<Vector<F>> {
    let d = form.dim();
    let functional = |w: &Vector<F>| -> Vec<F> {
        (0..d)
            .map(|l| {
                w.iter()
                    .enumerate()
                    .fold(F::zero(), |acc, (k, &c)| acc + c * form.gram()[k][l])
            })
            .collect()
    };
    let mut rows: Vec<Vec<F>> = ortho.iter().map(|w| functional(w)).collect();
    let mut rhs = vec![F::zero(); rows.len()];
    rows.push(functional(target));
    rhs.push(F::one());
    let z = solve_linear(&rows, &rhs, d)?;
    if form.is_singular_vector(&z) {
        return Some(z);
    }
    // Q(z - λt) = Q(z) - λ B(z, t) = Q(z) - λ
    let lambda = form.eval_quadratic(&z).ok()?;
    Some(z.add_scaled(-lambda, target))
}

/// Extends the rows of `base` by rows of `target` not already in the span.
fn extend_basis<F: Field>(base: &[Vector<F>], target: &Subspace<F>) -> Vec<Vector<F>> {
    let d = target.ambient_dim();
    let mut span = Subspace::span_unchecked(d, base.iter().map(|v| v.to_vec()));
    let mut extra = Vec::new();
    for r in target.rows() {
        if !span.contains_unchecked(r) {
            span = span.extend(r).expect("same ambient");
            extra.push(r.clone());
        }
    }
    extra
}

/// A frame whose vectors span both `a` and `b`.
///
/// Bases are chosen compatibly (a basis of `a ∩ b`, extended to `a` and to
/// `b`), the extensions are paired off hyperbolically, the remaining
/// totally singular part receives hyperbolic partners inside the
/// orthogonal complement of the pairs found so far, and finally the
/// complement is completed to a full hyperbolic basis. Every choice is made
/// in canonical vector order.
pub fn frame_through<F: Field>(
    space: &PolarSpace<F>,
    a: &Subspace<F>,
    b: &Subspace<F>,
) -> Result<Frame<F>> {
    space.require_singular(a, "A")?;
    space.require_singular(b, "B")?;
    let form = space.form();
    let d = space.ambient_dim();
    let common: Vec<Vector<F>> = a.intersect_unchecked(b).rows().to_vec();
    let mut a_ext = extend_basis(&common, a);
    let mut b_ext = extend_basis(&common, b);

    let mut pairs: Vec<(Vector<F>, Vector<F>)> = Vec::new();
    // pair off a_ext against b_ext
    loop {
        let found = a_ext.iter().enumerate().find_map(|(i, x)| {
            b_ext
                .iter()
                .position(|y| !form.bilinear(x, y).is_zero())
                .map(|j| (i, j))
        });
        let Some((i, j)) = found else { break };
        let x = a_ext.remove(i);
        let y0 = b_ext.remove(j);
        let y = y0.scale(form.bilinear(&x, &y0).inverse().unwrap());
        for other in a_ext.iter_mut() {
            let lambda = form.bilinear(other, &y);
            *other = other.add_scaled(-lambda, &x);
        }
        for other in b_ext.iter_mut() {
            let mu = form.bilinear(&x, other);
            *other = other.add_scaled(-mu, &y);
        }
        pairs.push((x, y));
    }

    // the rest spans a totally singular subspace orthogonal to every pair
    let rest: Vec<Vector<F>> = common.into_iter().chain(a_ext).chain(b_ext).collect();
    let mut partners: Vec<Vector<F>> = Vec::new();
    for (i, r) in rest.iter().enumerate() {
        let ortho: Vec<&Vector<F>> = pairs
            .iter()
            .flat_map(|(x, y)| [x, y])
            .chain(
                rest.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, v)| v),
            )
            .chain(partners.iter())
            .collect();
        let z = hyperbolic_partner(form, r, &ortho).ok_or_else(|| {
            GeometryError::Construction(format!("no hyperbolic partner for {r:?}"))
        })?;
        partners.push(z);
    }
    pairs.extend(rest.into_iter().zip(partners));

    // complete to a hyperbolic basis of the whole space
    while pairs.len() < space.rank() {
        let used: Vec<Vec<F>> = pairs
            .iter()
            .flat_map(|(x, y)| [x.to_vec(), y.to_vec()])
            .collect();
        let complement = form.perp(&Subspace::span_unchecked(d, used));
        let u = all_coefficient_vectors::<F>(complement.dim())
            .skip(1)
            .map(|c| complement.combine(&c))
            .find(|v| form.is_singular_vector(v))
            .ok_or_else(|| GeometryError::Construction("no singular vector left".into()))?;
        let ortho: Vec<&Vector<F>> = pairs.iter().flat_map(|(x, y)| [x, y]).collect();
        let z = hyperbolic_partner(form, &u, &ortho)
            .ok_or_else(|| GeometryError::Construction("no hyperbolic partner".into()))?;
        pairs.push((u, z));
    }
    Ok(Frame { pairs })
}

/// A maximal singular subspace `U ⊇ P` with `U ∩ S = P ∩ S`, for `S` maximal.
///
/// Takes a frame spanning both `P` and `S`; every pair has exactly one
/// vector in `S`. From each pair `U` takes `P`'s vector if `P` has one, and
/// otherwise the partner of the vector lying in `S`.
pub fn opposite_extension<F: Field>(
    space: &PolarSpace<F>,
    p: &Subspace<F>,
    s: &Subspace<F>,
) -> Result<Subspace<F>> {
    space.require_singular(s, "S")?;
    if s.dim() != space.rank() {
        return Err(GeometryError::WrongSubspaceDim {
            expected: space.rank(),
            found: s.dim(),
        });
    }
    let frame = frame_through(space, p, s)?;
    let mut chosen = Vec::with_capacity(space.rank());
    for (x, y) in frame.pairs() {
        // keep the frame point of P, otherwise avoid S
        let take_y =
            !p.contains_unchecked(x) && (p.contains_unchecked(y) || s.contains_unchecked(x));
        let pick = if take_y { y } else { x };
        chosen.push(pick.to_vec());
    }
    let u = Subspace::span_unchecked(space.ambient_dim(), chosen);
    let ok = u.dim() == space.rank()
        && space.is_totally_singular(&u)
        && u.contains_sub(p)?
        && u.intersect_unchecked(s) == p.intersect_unchecked(s);
    if !ok {
        return Err(GeometryError::Construction(format!(
            "no maximal singular subspace through {p} meeting {s} in {}",
            p.intersect_unchecked(s)
        )));
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Gf2, Gf3};

    fn xs<F: Field>(d: usize, idx: &[usize]) -> Vec<Vector<F>> {
        idx.iter().map(|&i| Vector::unit(d, 2 * (i - 1))).collect()
    }
    fn ys<F: Field>(d: usize, idx: &[usize]) -> Vec<Vector<F>> {
        idx.iter()
            .map(|&i| Vector::unit(d, 2 * (i - 1) + 1))
            .collect()
    }

    #[test]
    fn standard_frame_is_valid() {
        let sp = PolarSpace::<Gf2>::symplectic(3);
        let f = standard_frame(&sp);
        assert_eq!(f.validate(&sp), Ok(()));
        for (x, y) in f.pairs() {
            assert_eq!(sp.form().eval_bilinear(x, y).unwrap(), Gf2::new(1));
        }
        let o = PolarSpace::<Gf3>::hyperbolic(2);
        assert_eq!(standard_frame(&o).validate(&o), Ok(()));
    }

    #[test]
    fn validate_catches_bad_frames() {
        let sp = PolarSpace::<Gf2>::symplectic(2);
        let mut f = standard_frame(&sp);
        f.pairs.swap(0, 1);
        assert_eq!(f.validate(&sp), Ok(()));
        f.pairs[1].1 = f.pairs[0].1.clone();
        assert!(f.validate(&sp).is_err());
    }

    #[test]
    fn frame_through_single_subspace() {
        let sp = PolarSpace::<Gf2>::symplectic(3);
        let a = Subspace::from_rows(6, &xs(6, &[1, 2, 3])).unwrap();
        let f = frame_through(&sp, &a, &a).unwrap();
        assert_eq!(f.validate(&sp), Ok(()));
        assert!(f.spans(&a));
    }

    #[test]
    fn frame_through_frame_spans() {
        let sp = PolarSpace::<Gf2>::symplectic(3);
        let a = Subspace::from_rows(6, &xs(6, &[1, 2, 3])).unwrap();
        let mut brows = ys(6, &[1, 2]);
        brows.extend(xs(6, &[3]));
        let b = Subspace::from_rows(6, &brows).unwrap();
        let f = frame_through(&sp, &a, &b).unwrap();
        assert_eq!(f.validate(&sp), Ok(()));
        assert!(f.spans(&a) && f.spans(&b));
        let vecs = f.vectors();
        for v in xs::<Gf2>(6, &[1, 2, 3]).iter().chain(&ys(6, &[1, 2])) {
            assert!(vecs.contains(v), "{v:?} missing from {vecs:?}");
        }
    }

    #[test]
    fn frame_through_rejects_nonsingular() {
        let sp = PolarSpace::<Gf2>::symplectic(2);
        let bad = Subspace::from_rows(4, &[Vector::unit(4, 0), Vector::unit(4, 1)]).unwrap();
        assert!(matches!(
            frame_through(&sp, &bad, &Subspace::zero(4)),
            Err(GeometryError::NotTotallySingular(_))
        ));
    }

    #[test]
    fn every_pair_in_sp4_3() {
        let sp = PolarSpace::<Gf3>::symplectic(2);
        let all: Vec<_> = (1..=2)
            .flat_map(|k| sp.singular_subspaces(k).to_vec())
            .collect();
        for a in all.iter().step_by(3) {
            for b in &all {
                let f = frame_through(&sp, a, b).unwrap();
                assert_eq!(f.validate(&sp), Ok(()));
                assert!(f.spans(a) && f.spans(b));
            }
        }
    }

    #[test]
    fn opposite_of_zero_is_disjoint() {
        let sp = PolarSpace::<Gf2>::symplectic(3);
        let s = Subspace::from_rows(6, &xs(6, &[1, 2, 3])).unwrap();
        let u = opposite_extension(&sp, &Subspace::zero(6), &s).unwrap();
        assert_eq!(u.dim(), 3);
        assert!(u.intersect(&s).unwrap().is_zero());
        assert_eq!(u, Subspace::from_rows(6, &ys(6, &[1, 2, 3])).unwrap());
    }

    #[test]
    fn opposite_extension_requires_maximal() {
        let sp = PolarSpace::<Gf2>::symplectic(3);
        let s = Subspace::from_rows(6, &xs(6, &[1, 2])).unwrap();
        assert!(matches!(
            opposite_extension(&sp, &Subspace::zero(6), &s),
            Err(GeometryError::WrongSubspaceDim { .. })
        ));
    }
}
