use superstab::combinat::{enumerate_subsets, Permutation, Subset};
use superstab::exactalg::{divides_linear, LinearForm, VarId};
use superstab::fixedpoints::{dimension_d, repelling_euler, VersionTag};
use superstab::weightfn::{spade_divides, support_violations, verify_general_r, weight_function, WeightFunctionSpec};

fn all_specs(n: usize) -> Vec<WeightFunctionSpec> {
    let mut out = Vec::new();
    for r in VersionTag::ALL {
        for sigma in Permutation::all(n) {
            for k in 0..=n {
                for i in enumerate_subsets(n, k).unwrap() {
                    out.push(WeightFunctionSpec::new(r, sigma.clone(), i).unwrap());
                }
            }
        }
    }
    out
}

fn hbar() -> LinearForm {
    LinearForm::var(VarId::H)
}

#[test]
fn restriction_properties_up_to_n3() {
    for n in 1..=3 {
        for spec in all_specs(n) {
            let w = weight_function(&spec);
            let (ev, eh) = repelling_euler(spec.r, n, &spec.sigma, &spec.subset);
            let d = dimension_d(spec.r, n, spec.k());
            let principal = w.restrict_detailed(&spec.subset).unwrap();
            assert_eq!(principal.value, ev.mul(&eh), "principal {spec}");
            if spec.sigma.is_identity() {
                assert_eq!(principal.survivors.len(), 1, "survivors {spec}");
            }
            for j in enumerate_subsets(n, spec.k()).unwrap() {
                let p = w.restrict(&j).unwrap();
                assert_eq!(p, w.restrict_via_expansion(&j).unwrap(), "{spec} at {j}");
                if !p.is_zero() {
                    assert_eq!(p.homogeneous_degree(), Some(d as u32), "{spec} at {j}");
                }
                if j != spec.subset {
                    assert!(divides_linear(&p, &hbar()), "{spec} at {j}");
                }
            }
        }
    }
}

#[test]
fn spade_divisibility_up_to_n3() {
    for n in 2..=3 {
        for spec in all_specs(n) {
            let w = weight_function(&spec);
            for i in enumerate_subsets(n, spec.k()).unwrap() {
                let p = w.restrict(&i).unwrap();
                assert!(spade_divides(&p, spec.r, &spec.sigma, &i), "{spec} at {i}: {p}");
            }
        }
    }
}

#[test]
fn support_is_triangular_up_to_n3() {
    for spec in all_specs(3) {
        let w = weight_function(&spec);
        assert!(support_violations(&spec, &w).unwrap().is_empty(), "{spec}");
    }
}

#[test]
fn recursion_n3() {
    for r in VersionTag::ALL {
        for sigma in Permutation::all(3) {
            for k in 0..=3 {
                for i in enumerate_subsets(3, k).unwrap() {
                    for a in 1..3 {
                        let rep = verify_general_r(r, &sigma, a, &i, 11).unwrap();
                        assert!(rep.holds(), "{r} {sigma} a={a} {i}: {rep:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn symmetric_in_t() {
    let spec = WeightFunctionSpec::new(
        VersionTag::R11,
        Permutation::parse("3,1,2").unwrap(),
        Subset::parse(3, "1,3").unwrap(),
    )
    .unwrap();
    let w = weight_function(&spec);
    let swapped = w.permute_t(&Permutation::parse("2,1").unwrap());
    assert_eq!(w.to_ratfun(), swapped.to_ratfun());
}
