use proptest::prelude::*;
use superstab::combinat::{binomial, enumerate_subsets, Permutation, Subset};
use superstab::exactalg::json::{poly_from_json, poly_to_json, rf_from_json, rf_to_json};
use superstab::exactalg::{
    divides_linear, linear_multiplicity, parse_poly, rf_solve, LinearFactorProduct, LinearForm, Polynomial, RFMatrix,
    Rational, RationalFunction, VarId,
};

const VARS: [VarId; 5] = [VarId::T(1), VarId::T(2), VarId::Z(1), VarId::Z(2), VarId::H];

fn rational() -> impl Strategy<Value = Rational> {
    prop_oneof![
        (-9i64..=9, 1i64..=7).prop_map(|(a, b)| Rational::new(a, b)),
        (any::<i64>(), 1i64..=i64::MAX).prop_map(|(a, b)| Rational::new(a, b)),
    ]
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::array::uniform5(0u32..=2), -5i64..=5), 0..5).prop_map(|terms| {
        terms.into_iter().fold(Polynomial::zero(), |acc, (exps, c)| {
            let mono = VARS.iter().zip(exps).fold(Polynomial::int(c), |m, (v, e)| m.mul(&Polynomial::var(*v).pow(e)));
            acc.add(&mono)
        })
    })
}

fn form() -> impl Strategy<Value = LinearForm> {
    (prop::array::uniform5(-2i64..=2), -3i64..=3).prop_map(|(cs, k)| {
        let coeffs: Vec<(VarId, i64)> = VARS.iter().copied().zip(cs).collect();
        LinearForm::from_ints(&coeffs, k)
    })
}

fn nonconstant_form() -> impl Strategy<Value = LinearForm> {
    form().prop_filter("non-constant", |f| !f.is_constant())
}

fn point() -> impl Strategy<Value = [i64; 5]> {
    prop::array::uniform5(-20i64..=20)
}

fn at(p: [i64; 5]) -> impl Fn(VarId) -> Rational + Copy {
    move |v| {
        let i = VARS.iter().position(|w| *w == v).expect("known variable");
        Rational::from(p[i] * 7 + i as i64 * 3 + 101)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
            prop_assert_eq!(b.recip().recip(), b.clone());
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn polynomial_ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(p.add(&q), q.add(&p));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert!(p.sub(&p).is_zero());
        prop_assert_eq!(p.mul(&Polynomial::one()), p.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly(), q in poly(), x in point()) {
        let v = at(x);
        prop_assert_eq!(p.mul(&q).eval_with(v), &p.eval_with(v) * &q.eval_with(v));
        prop_assert_eq!(p.add(&q).eval_with(v), &p.eval_with(v) + &q.eval_with(v));
    }

    #[test]
    fn exact_division_recovers_factor(p in poly(), q in poly()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!(p.mul(&q).div_exact(&q), Some(p));
    }

    #[test]
    fn substitution_commutes_with_evaluation(p in poly(), q in poly(), x in point()) {
        let v = at(x);
        let s = p.substitute(&[(VarId::T(1), q.clone())]);
        let qv = q.eval_with(v);
        let shifted = move |w: VarId| if w == VarId::T(1) { qv.clone() } else { v(w) };
        prop_assert_eq!(s.eval_with(v), p.eval_with(shifted));
    }

    #[test]
    fn linear_divisibility(p in poly(), l in nonconstant_form()) {
        prop_assume!(!p.is_zero());
        let lp = l.to_poly();
        prop_assert!(divides_linear(&p.mul(&lp), &l));
        let m = linear_multiplicity(&p, &l);
        prop_assert_eq!(linear_multiplicity(&p.mul(&lp).mul(&lp), &l), m + 2);
    }

    #[test]
    fn product_expansion_matches_evaluation(fs in prop::collection::vec((nonconstant_form(), -2i32..=2), 0..5), x in point()) {
        let prod = fs.iter().fold(LinearFactorProduct::one(), |acc, (f, e)| if *e == 0 { acc } else { acc.with(f, *e) });
        let v = at(x);
        if let Ok(direct) = prod.eval_with(&v) {
            prop_assert_eq!(prod.to_ratfun().eval_with(v).unwrap(), direct);
        }
        prop_assert_eq!(prod.mul(&prod.inverse()).to_ratfun(), RationalFunction::one());
    }

    #[test]
    fn rational_function_arithmetic(a in poly(), b in poly(), c in poly(), d in poly()) {
        prop_assume!(!b.is_zero() && !d.is_zero());
        let x = RationalFunction::new(a.clone(), b.clone()).unwrap();
        let y = RationalFunction::new(c.clone(), d.clone()).unwrap();
        let sum = RationalFunction::new(a.mul(&d).add(&c.mul(&b)), b.mul(&d)).unwrap();
        prop_assert_eq!(x.add(&y), sum);
        prop_assert_eq!(x.mul(&y).sub(&y.mul(&x)), RationalFunction::zero());
        if !c.is_zero() {
            prop_assert_eq!(x.div(&y).unwrap().mul(&y), x.clone());
        }
        let scaled = RationalFunction::new(a.mul(&d), b.mul(&d)).unwrap();
        prop_assert_eq!(scaled, x);
    }

    #[test]
    fn json_round_trips(p in poly(), q in poly()) {
        prop_assert_eq!(poly_from_json(&poly_to_json(&p, 2, 2)).unwrap(), p.clone());
        prop_assume!(!q.is_zero());
        let r = RationalFunction::new(p, q).unwrap();
        prop_assert_eq!(rf_from_json(&rf_to_json(&r, 2, 2)).unwrap(), r);
    }

    #[test]
    fn display_reparses(p in poly()) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn solve_recovers_solution(entries in prop::collection::vec((nonconstant_form(), -3i64..=3), 9), xs in prop::collection::vec(form(), 3)) {
        let m = RFMatrix::from_fn(3, 3, |i, j| {
            let (f, c) = &entries[3 * i + j];
            let base = RationalFunction::from_poly(f.to_poly());
            if i == j { base.add(&RationalFunction::int(*c)).mul(&RationalFunction::var(VarId::H)).add(&RationalFunction::one()) } else { base }
        });
        let x = RFMatrix::from_fn(3, 1, |i, _| RationalFunction::from_poly(xs[i].to_poly()));
        let b = m.mul(&x).unwrap();
        match rf_solve(&m, &b) {
            Ok(sol) => prop_assert!(sol.differences(&x).is_empty()),
            Err(e) => {
                let singular = matches!(e, superstab::Error::SingularMatrix { .. });
                prop_assert!(singular);
            }
        }
    }

    #[test]
    fn permutation_group_laws(n in 1usize..=6, seed in any::<u64>()) {
        let all = Permutation::all(n);
        let a = &all[(seed as usize) % all.len()];
        let b = &all[(seed as usize / 7) % all.len()];
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        let ab = a.compose(b).unwrap();
        for i in 1..=n {
            prop_assert_eq!(ab.apply(i), a.apply(b.apply(i)));
        }
        prop_assert_eq!(ab.sign(), a.sign() * b.sign());
        prop_assert_eq!(Permutation::parse(&a.to_string()).unwrap(), a.clone());
    }

    #[test]
    fn subsets_are_counted_and_permuted(n in 0usize..=8, k in 0usize..=8, seed in any::<u64>()) {
        prop_assume!(k <= n);
        let subs = enumerate_subsets(n, k).unwrap();
        prop_assert_eq!(subs.len(), binomial(n, k));
        prop_assert!(subs.windows(2).all(|w| w[0] < w[1]));
        if n > 0 {
            let all = Permutation::all(n.min(5));
            let sigma = &all[(seed as usize) % all.len()];
            let small: Vec<Subset> = enumerate_subsets(sigma.n(), k.min(sigma.n())).unwrap();
            let mut images: Vec<Subset> = small.iter().map(|s| sigma.apply_subset(s)).collect();
            images.sort();
            prop_assert_eq!(images, small);
        }
        for s in subs.iter().take(5) {
            prop_assert_eq!(s.complement().complement(), s.clone());
            prop_assert_eq!(Subset::parse(n, &subset_text(s)).unwrap(), s.clone());
        }
    }
}

fn subset_text(s: &Subset) -> String {
    if s.k() == 0 {
        "none".into()
    } else {
        s.elems().iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
    }
}
