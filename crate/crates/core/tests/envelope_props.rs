use superstab::combinat::{enumerate_subsets, Permutation, Subset};
use superstab::envelope::{find_representative, gkm_check, stab, verify_axioms, GKMClass};
use superstab::exactalg::{parse_poly, Polynomial, VarId};
use superstab::fixedpoints::VersionTag;
use superstab::weightfn::WeightFunctionSpec;

fn spec(r: VersionTag, sigma: &str, n: usize, i: &str) -> WeightFunctionSpec {
    let sigma = if sigma == "id" { Permutation::identity(n) } else { Permutation::parse(sigma).unwrap() };
    WeightFunctionSpec::new(r, sigma, Subset::parse(n, i).unwrap()).unwrap()
}

fn p(s: &str) -> Polynomial {
    parse_poly(s).unwrap()
}

#[test]
fn p1_tables() {
    for r in VersionTag::ALL {
        let c = stab(&spec(r, "id", 2, "1")).unwrap();
        assert_eq!(c.gkm, GKMClass::from_list(2, 1, vec![p("z2 - z1"), p("0")]).unwrap());
        let c = stab(&spec(r, "id", 2, "2")).unwrap();
        assert_eq!(c.gkm, GKMClass::from_list(2, 1, vec![p("h"), p("z2 - z1 + h")]).unwrap());
        let c = stab(&spec(r, "2,1", 2, "1")).unwrap();
        assert_eq!(c.gkm, GKMClass::from_list(2, 1, vec![p("z1 - z2 + h"), p("h")]).unwrap());
        let c = stab(&spec(r, "2,1", 2, "2")).unwrap();
        assert_eq!(c.gkm, GKMClass::from_list(2, 1, vec![p("0"), p("z1 - z2")]).unwrap());
    }
}

#[test]
fn projective_space_n4() {
    let want = GKMClass::from_list(
        4,
        1,
        vec![
            p("h*(z3 - z1)*(z4 - z1)*(z3 - z2 + h)*(z4 - z2 + h)*(z4 - z3 + h)"),
            p("(z3 - z2)*(z4 - z2)*(z2 - z1 + h)*(z3 - z1 + h)*(z4 - z1 + h)*(z4 - z3 + h)"),
            p("0"),
            p("0"),
        ],
    )
    .unwrap();
    for r in [VersionTag::R01, VersionTag::R11] {
        let c = stab(&spec(r, "id", 4, "2")).unwrap();
        assert_eq!(c.gkm, want, "{r}");
    }
    let displayed = p("(t1 - z1 + h)*(z3 - t1)*(z4 - t1)*(z4 - z3 + h)*(-t1^2 + t1*(z3 + z4 + 2*h) + h^2 + h*(-2*z1 - 2*z2 + z3 + z4) + z1^2 + z2^2 + z3*z4 - (z1 + z2)*(z3 + z4))");
    for j in enumerate_subsets(4, 1).unwrap() {
        let b = [(VarId::t(1), Polynomial::var(VarId::z(j.elems()[0])))];
        assert_eq!(&displayed.substitute(&b), want.get(&j).unwrap(), "{j}");
    }
    let rep = find_representative(&want, 6).unwrap();
    for j in enumerate_subsets(4, 1).unwrap() {
        let b = [(VarId::t(1), Polynomial::var(VarId::z(j.elems()[0])))];
        assert_eq!(&rep.substitute(&b), want.get(&j).unwrap());
    }
    assert!(find_representative(&want, 5).is_err());
}

#[test]
fn axioms_exhaustive_n3() {
    for n in 1..=3 {
        for r in VersionTag::ALL {
            for sigma in Permutation::all(n) {
                for k in 0..=n {
                    for i in enumerate_subsets(n, k).unwrap() {
                        let s = WeightFunctionSpec::new(r, sigma.clone(), i).unwrap();
                        let c = stab(&s).unwrap();
                        assert!(gkm_check(&c.gkm).is_empty(), "{s}");
                        let rep = verify_axioms(&c);
                        assert!(rep.all_pass(), "{s}: {rep:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn representatives_n3() {
    for r in VersionTag::ALL {
        for i in ["1", "2", "1,3"] {
            let c = stab(&spec(r, "2,3,1", 3, i)).unwrap();
            let rep = find_representative(&c.gkm, 6).unwrap();
            for (j, want) in c.gkm.components() {
                let b: Vec<(VarId, Polynomial)> = j
                    .elems()
                    .iter()
                    .enumerate()
                    .map(|(a, &e)| (VarId::t(a + 1), Polynomial::var(VarId::z(e))))
                    .collect();
                assert_eq!(&rep.substitute(&b), want, "{r} {i} {j}");
            }
        }
    }
}
