
use superstab::combinat::Permutation;
use superstab::exactalg::{parse_rf, RFMatrix, RationalFunction};
use superstab::fixedpoints::VersionTag;
use superstab::rmatrix::{
    closed_form_r, geometric_r, ltc_check, unitarity_check, yang_baxter_check, yangian_identification, yangian_r,
    Flavor, RMatrix,
};

#[test]
fn yang_baxter_all_eight() {
    for r in VersionTag::ALL {
        assert!(yang_baxter_check(&closed_form_r(r)).unwrap(), "geometric {r}");
        assert!(yang_baxter_check(&yangian_r(r).0).unwrap(), "yangian {r}");
    }
}

#[test]
fn yang_baxter_rejects_a_bad_matrix() {
    let one = RationalFunction::one;
    let z = RationalFunction::zero;
    let m = RFMatrix::from_rows(vec![
        vec![one(), z(), z(), z()],
        vec![z(), one(), one(), z()],
        vec![z(), one(), one(), z()],
        vec![z(), z(), z(), one()],
    ])
    .unwrap();
    let bad = RMatrix::new(m, Flavor::GeometricR, VersionTag::R00).unwrap();
    assert!(!yang_baxter_check(&bad).unwrap());
}

#[test]
fn local_tensor_coordinates_n2_n3() {
    for r in VersionTag::ALL {
        assert!(unitarity_check(r).unwrap());
        for n in 2..=3 {
            for sigma in Permutation::all(n) {
                for a in 1..n {
                    assert!(ltc_check(r, n, &sigma, a).unwrap(), "{r} {sigma} {a}");
                    let g = geometric_r(r, n, &sigma, a).unwrap();
                    assert!(g.preserves_sectors());
                }
            }
        }
    }
}

#[test]
fn geometric_r_n2_corner() {
    let g = geometric_r(VersionTag::R10, 2, &Permutation::parse("2,1").unwrap(), 1).unwrap();
    let last = g.matrix().get(3, 3).clone();
    assert_eq!(last, parse_rf("(z1 - z2 + h)/(z2 - z1 + h)").unwrap());
}

#[test]
fn yangian_comparison() {
    for r in VersionTag::ALL {
        let rep = yangian_identification(r).unwrap();
        assert_eq!(rep.agrees(), r == VersionTag::R11, "{r}: {:?}", rep.mismatches);
        assert!(rep.agrees() || rep.conjugate_agrees, "{r}");
    }
}
