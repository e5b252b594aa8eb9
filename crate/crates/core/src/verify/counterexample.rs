use super::opposition::OppositionIndex;
use super::{Mode, Verdict};
use crate::dual_polar::DualPolarSpace;
use crate::error::{GeometryError, Result};
use crate::field::Field;
use crate::linalg::{Subspace, Vector};
use crate::polar::{FormKind, PolarSpace};

fn x<F: Field>(d: usize, i: usize) -> Vector<F> {
    Vector::unit(d, 2 * (i - 1))
}

fn y<F: Field>(d: usize, i: usize) -> Vector<F> {
    Vector::unit(d, 2 * (i - 1) + 1)
}

/// The three maximals and `N = <x3, ..., xn>` in the standard frame, before
/// any singularity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardSpans<F> {
    pub s1: Subspace<F>,
    pub s2: Subspace<F>,
    pub s: Subspace<F>,
    pub n: Subspace<F>,
}

/// `S1 = <x1..xn>`, `S2 = <y1, y2, x3..xn>`, `S = <x1+y2, x2-y1, x3..xn>`.
pub fn standard_spans<F: Field>(rank: usize) -> Result<StandardSpans<F>> {
    if rank < 2 {
        return Err(GeometryError::Precondition(format!(
            "rank {rank} is below 2"
        )));
    }
    let d = 2 * rank;
    let tail: Vec<Vector<F>> = (3..=rank).map(|i| x(d, i)).collect();
    let with = |head: Vec<Vector<F>>| {
        let rows: Vec<Vector<F>> = head.into_iter().chain(tail.iter().cloned()).collect();
        Subspace::from_rows(d, &rows)
    };
    Ok(StandardSpans {
        s1: with(vec![x(d, 1), x(d, 2)])?,
        s2: with(vec![y(d, 1), y(d, 2)])?,
        s: with(vec![&x(d, 1) + &y(d, 2), &x(d, 2) - &y(d, 1)])?,
        n: with(vec![])?,
    })
}

/// A validated triple `(S1, S2, S)` of maximals in a symplectic space.
#[derive(Clone, Debug)]
pub struct CounterexampleInstance<F> {
    pub spans: StandardSpans<F>,
    pub s1_id: usize,
    pub s2_id: usize,
    pub s_id: usize,
}

impl<F: Field> CounterexampleInstance<F> {
    /// Fails with `NotTotallySingular` when one of the spans is not a
    /// maximal of the space.
    pub fn build(dps: &DualPolarSpace<F>) -> Result<Self> {
        let space = dps.space();
        if space.kind() != FormKind::Symplectic || space.rank() < 3 {
            return Err(GeometryError::Precondition(format!(
                "need a symplectic space of rank at least 3, got {}",
                space.name()
            )));
        }
        let spans = standard_spans::<F>(space.rank())?;
        let mut ids = [0; 3];
        for (slot, (name, sub)) in
            ids.iter_mut()
                .zip([("S1", &spans.s1), ("S2", &spans.s2), ("S", &spans.s)])
        {
            if !space.is_totally_singular(sub) {
                let rows = sub.rows();
                let witness = (0..rows.len())
                    .flat_map(|i| (i + 1..rows.len()).map(move |j| (i, j)))
                    .find_map(|(i, j)| {
                        let v = space.form().eval_bilinear(&rows[i], &rows[j]).ok()?;
                        (!v.is_zero()).then(|| format!("form({:?}, {:?}) = {v}", rows[i], rows[j]))
                    })
                    .unwrap_or_default();
                return Err(GeometryError::NotTotallySingular(format!(
                    "{name} = {sub} in {}: {witness}",
                    space.name()
                )));
            }
            *slot = dps.id_of(sub).ok_or_else(|| {
                GeometryError::Construction(format!("{name} = {sub} is not a maximal"))
            })?;
        }
        let common = spans.s1.intersect(&spans.s2)?.intersect(&spans.s)?;
        if common != spans.n || spans.s1.intersect(&spans.s2)? != spans.n {
            return Err(GeometryError::Construction(format!(
                "S1∩S2 = {} differs from N = {}",
                spans.s1.intersect(&spans.s2)?,
                spans.n
            )));
        }
        Ok(CounterexampleInstance {
            spans,
            s1_id: ids[0],
            s2_id: ids[1],
            s_id: ids[2],
        })
    }
}

/// The witness condition holds for the triple while `S1`, `S2` are not collinear.
///
/// A space where the triple cannot be built yields a failed verdict naming
/// the reason, not an error.
pub fn verify_counterexample<F: Field>(dps: &DualPolarSpace<F>) -> Result<Verdict> {
    let space = dps.space();
    let mut v = Verdict::new("counterexample", &space.name(), Mode::Exhaustive);
    v.detail("maximals", dps.len());
    let inst = match CounterexampleInstance::build(dps) {
        Ok(inst) => inst,
        Err(e @ GeometryError::NotTotallySingular(_)) => {
            v.fail(format!("construction failed: {e}"));
            return Ok(v);
        }
        Err(e) => return Err(e),
    };
    let n = dps.rank();
    let (s1, s2, s) = (inst.s1_id, inst.s2_id, inst.s_id);
    let idim = dps.intersection_dim(s1, s2)?;
    v.detail("ids", [s1, s2, s]);
    v.detail("S1∩S2_dim", idim);
    v.detail("S1∩S_dim", dps.intersection_dim(s1, s)?);
    v.detail("S2∩S_dim", dps.intersection_dim(s2, s)?);
    v.detail("N", inst.spans.n.to_string());
    let non_collinear = idim + 1 != n;
    v.detail("non_collinear", non_collinear);
    if !non_collinear {
        v.fail(format!(
            "S1 and S2 are collinear (meet in dimension {idim})"
        ));
    }
    let idx = OppositionIndex::new(dps.table(), 0);
    v.detail("opposite_to_S", idx.opposites_of(s).len());
    v.pairs_checked = dps.len() as u64;
    for u in 0..dps.len() {
        if idx.opposite(u, s) && !idx.opposite(u, s1) && !idx.opposite(u, s2) {
            v.fail(format!("{u} is opposite to S but to neither S1 nor S2"));
        }
    }
    Ok(v)
}

/// For collinear dual polar pairs, every third point of their line is a
/// opposition witness.
pub fn verify_dual_polar_line_witnesses<F: Field>(dps: &DualPolarSpace<F>) -> Result<Verdict> {
    let idx = OppositionIndex::new(dps.table(), 0);
    let mut v = Verdict::new(
        "dual-polar-line-witnesses",
        &dps.space().name(),
        Mode::Exhaustive,
    );
    let mut pairs = 0u64;
    for (m, ids) in dps.lines() {
        for a in 0..ids.len() {
            for b in a + 1..ids.len() {
                pairs += 1;
                for (c, &w) in ids.iter().enumerate() {
                    if c != a && c != b {
                        if let Some(u) = idx.violator(w, ids[a], ids[b]) {
                            v.fail(format!(
                                "third point {w} on line {m} fails for ({}, {}): {u} violates",
                                ids[a], ids[b]
                            ));
                        }
                    }
                }
            }
        }
    }
    v.pairs_checked = pairs;
    v.detail("lines", dps.lines().len());
    Ok(v)
}

/// The two parametrised lines meet exactly where the substitution predicts,
/// and every line joining collinear `p ∈ S1∖N`, `q ∈ S2∖N` meets `S∖N`.
pub fn verify_parametrized_lines<F: Field>(space: &PolarSpace<F>) -> Result<Verdict> {
    if space.kind() != FormKind::Symplectic {
        return Err(GeometryError::Precondition(format!(
            "{} is not symplectic",
            space.name()
        )));
    }
    let rank = space.rank();
    let d = 2 * rank;
    let spans = standard_spans::<F>(rank)?;
    let mut v = Verdict::new("lines", &space.name(), Mode::Exhaustive);

    let u = &x::<F>(d, 1) + &y(d, 2);
    let w = &x::<F>(d, 2) - &y(d, 1);
    let l = Subspace::from_rows(d, &[u.clone(), w.clone()])?;
    let mut per_a = Vec::new();
    for a in F::elements() {
        let pv = x::<F>(d, 1).add_scaled(a, &x(d, 2));
        let qv = y::<F>(d, 2).add_scaled(-a, &y(d, 1));
        let (p, q) = (Subspace::point(&pv), Subspace::point(&qv));
        if !space.collinear_points(&p, &q)? {
            v.fail(format!(
                "a = {a}: p = {p} and q = {q} are not perpendicular"
            ));
        }
        let pq = p.sum(&q)?;
        let (lp, pqp) = (l.points(), pq.points());
        if lp.len() != F::ORDER as usize + 1 || pqp.len() != F::ORDER as usize + 1 {
            v.fail(format!("a = {a}: a line does not have q+1 points"));
        }
        let common: Vec<&Subspace<F>> = lp.iter().filter(|r| pqp.contains(r)).collect();
        let expected = Subspace::point(&u.add_scaled(a, &w));
        // t = a on L and s = 1 on pq name the same vector
        if u.add_scaled(a, &w) != pv.add_scaled(F::one(), &qv) {
            v.fail(format!(
                "a = {a}: substitution t = a, s = 1 gives different vectors"
            ));
        }
        if common != [&expected] {
            v.fail(format!("a = {a}: L ∩ pq = {common:?}, expected {expected}"));
        }
        per_a.push(serde_json::json!({
            "a": a.value(),
            "p": p.to_string(),
            "q": q.to_string(),
            "common": common.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        }));
        v.pairs_checked += 1;
    }
    v.detail("parameters", per_a);

    let StandardSpans { s1, s2, s, n } = &spans;
    let mut meeting_pairs = 0u64;
    for p in s1.points().iter().filter(|p| !n.contains_sub(p).unwrap()) {
        for q in s2.points().iter().filter(|q| !n.contains_sub(q).unwrap()) {
            if !space.collinear_points(p, q)? {
                continue;
            }
            meeting_pairs += 1;
            let line = p.sum(q)?;
            let meets = line
                .points()
                .iter()
                .any(|r| s.contains_sub(r).unwrap() && !n.contains_sub(r).unwrap());
            if !meets {
                v.fail(format!("line {p} + {q} misses S∖N"));
            }
        }
    }
    v.pairs_checked += meeting_pairs;
    v.detail("meeting_pairs", meeting_pairs);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Gf2, Gf3};

    #[test]
    fn spans_in_characteristic_two() {
        let sp = DualPolarSpace::new(PolarSpace::<Gf2>::symplectic(3));
        let inst = CounterexampleInstance::build(&sp).unwrap();
        assert_eq!(inst.spans.n.dim(), 1);
        assert_eq!(sp.intersection_dim(inst.s1_id, inst.s2_id).unwrap(), 1);
        // x1 + y2 = e0 + e3, x2 + y1 = e1 + e2
        let s = &inst.spans.s;
        assert!(s.contains(&Vector::from_ints(&[1, 0, 0, 1, 0, 0])).unwrap());
        assert!(s.contains(&Vector::from_ints(&[0, 1, 1, 0, 0, 0])).unwrap());
    }

    #[test]
    fn characteristic_three_span_is_not_isotropic() {
        let sp = PolarSpace::<Gf3>::symplectic(3);
        let spans = standard_spans::<Gf3>(3).unwrap();
        assert!(sp.is_totally_singular(&spans.s1));
        assert!(sp.is_totally_singular(&spans.s2));
        let u = Vector::from_ints(&[1, 0, 0, 1, 0, 0]);
        let w = Vector::from_ints(&[0, -1, 1, 0, 0, 0]);
        assert!(spans.s.contains(&w).unwrap());
        assert_eq!(sp.form().eval_bilinear(&u, &w).unwrap(), Gf3::from_int(1));
    }

    #[test]
    fn rejects_quadric() {
        let o = DualPolarSpace::new(PolarSpace::<Gf2>::hyperbolic(3));
        assert!(matches!(
            CounterexampleInstance::build(&o),
            Err(GeometryError::Precondition(_))
        ));
    }

    #[test]
    fn parametrized_lines_rank_two() {
        let v = verify_parametrized_lines(&PolarSpace::<Gf3>::symplectic(2)).unwrap();
        assert!(v.passed, "{:?}", v.failures);
        assert!(v.pairs_checked >= 3);
    }
}
