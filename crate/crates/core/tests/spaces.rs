use std::sync::OnceLock;

use polargeom::verify::{verify_dual_polar_distances, verify_half_spin_distances, witness_set};
use polargeom::{
    max_singular_count, split_families, DualPolarSpace, Field, FormKind, Gf2, Gf3,
    PointLineGeometry, PolarSpace, Sampling, TypeTag,
};

fn o10() -> &'static DualPolarSpace<Gf2> {
    static D: OnceLock<DualPolarSpace<Gf2>> = OnceLock::new();
    D.get_or_init(|| DualPolarSpace::new(PolarSpace::hyperbolic(5)))
}

fn count<F: Field>(kind: FormKind, n: usize) -> usize {
    PolarSpace::<F>::standard(kind, n)
        .unwrap()
        .max_singulars()
        .len()
}

#[test]
fn maximal_counts_match_products() {
    use FormKind::*;
    let cases: [(FormKind, usize, u8, usize); 7] = [
        (Symplectic, 3, 2, 135),
        (Symplectic, 4, 2, 2295),
        (Symplectic, 3, 3, 1120),
        (Quadratic, 3, 2, 30),
        (Quadratic, 4, 2, 270),
        (Quadratic, 3, 3, 80),
        (Quadratic, 5, 2, 4590),
    ];
    for (kind, n, q, expected) in cases {
        assert_eq!(
            max_singular_count(kind, n as u32, q as u128),
            expected as u128
        );
        let got = match (q, kind, n) {
            (2, Quadratic, 5) => o10().len(),
            (2, ..) => count::<Gf2>(kind, n),
            _ => count::<Gf3>(kind, n),
        };
        assert_eq!(got, expected, "{kind} n={n} q={q}");
    }
}

#[test]
fn polar_axioms_hold() {
    for space in [
        PolarSpace::<Gf2>::symplectic(3),
        PolarSpace::<Gf2>::hyperbolic(3),
    ] {
        let g = PointLineGeometry::from_polar_space(&space);
        assert_eq!(g.check_polar_axioms(), Ok(()), "{}", space.name());
        assert!(g.lines().iter().all(|l| l.len() == 3));
    }
    let g = PointLineGeometry::from_polar_space(&PolarSpace::<Gf3>::symplectic(2));
    assert_eq!(g.check_polar_axioms(), Ok(()));
    assert!(g.lines().iter().all(|l| l.len() == 4));
}

#[test]
fn dual_polar_diameter_is_rank() {
    for n in 2..=4 {
        for space in [
            PolarSpace::<Gf2>::symplectic(n),
            PolarSpace::<Gf2>::hyperbolic(n),
        ] {
            let d = DualPolarSpace::new(space);
            assert_eq!(d.graph().diameter(), Some(n as u32), "{}", d.space().name());
        }
    }
}

#[test]
fn dual_polar_line_sizes() {
    let sp = DualPolarSpace::new(PolarSpace::<Gf3>::symplectic(3));
    assert!(sp.lines().iter().all(|(_, ids)| ids.len() == 4));
    let o = DualPolarSpace::new(PolarSpace::<Gf3>::hyperbolic(3));
    assert_eq!(o.space().type_tag(), TypeTag::Dn);
    assert!(o.lines().iter().all(|(_, ids)| ids.len() == 2));
}

#[test]
fn sampled_distances_on_larger_spaces() {
    let s = Sampling::Sampled {
        pairs: 10_000,
        seed: 1,
    };
    let sp = DualPolarSpace::new(PolarSpace::<Gf2>::symplectic(4));
    let v = verify_dual_polar_distances(&sp, s).unwrap();
    assert!(v.passed && v.pairs_checked >= 10_000, "{v:?}");
    let v = verify_dual_polar_distances(o10(), s).unwrap();
    assert!(v.passed && v.pairs_checked >= 10_000, "{v:?}");
}

#[test]
fn family_split_parity() {
    for n in 3..=4 {
        let d = DualPolarSpace::new(PolarSpace::<Gf2>::hyperbolic(n));
        let (plus, minus) = split_families(&d).unwrap();
        assert_eq!(plus.len(), minus.len());
        assert_eq!(plus.len() + minus.len(), d.len());
    }
    let (plus, minus) = split_families(o10()).unwrap();
    assert_eq!((plus.len(), minus.len()), (2295, 2295));
}

#[test]
fn rank_five_half_spin() {
    let (plus, _) = split_families(o10()).unwrap();
    let s = plus.members()[0];
    let far = *plus
        .members()
        .iter()
        .find(|&&u| o10().intersection_dim(s, u).unwrap() == 1)
        .unwrap();
    assert!(plus.opposite(s, far).unwrap());
    assert_eq!(plus.distance(s, far).unwrap(), 2);
    assert!(plus.lines().iter().all(|(_, ids)| ids.len() == 3));
    assert_eq!(plus.graph().degree(0), 310);
    let v = verify_half_spin_distances(
        &plus,
        Sampling::Sampled {
            pairs: 10_000,
            seed: 5,
        },
    )
    .unwrap();
    assert!(v.passed && v.pairs_checked >= 10_000, "{v:?}");
}

#[test]
fn third_line_point_is_a_witness() {
    let d = DualPolarSpace::new(PolarSpace::<Gf2>::hyperbolic(4));
    let (plus, _) = split_families(&d).unwrap();
    let (_, ids) = plus.lines()[0];
    let w = witness_set(&plus, ids[0], ids[1]).unwrap();
    assert!(w.contains(&ids[2]));
}
