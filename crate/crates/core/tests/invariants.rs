use std::cmp::Ordering;

use proptest::prelude::*;

use monores::cli::{analyze, hilbert_identity, AnalysisReport, VerifyLevel};
use monores::groebner::{
    buchberger, ideal_member, is_groebner, is_toric_binomial, reduce_basis, toric_kernel, BuchbergerOptions,
};
use monores::patil::{betti_lookup, closed_form_resolution, extract_parameters, patil_generators};
use monores::poly::{divide, Coeff, Monomial, MonomialOrder, Polynomial, Term, WeightedGrading, NVARS};
use monores::resolution::{build_resolution, build_resolution_with, hilbert_numerator, minimalize};
use monores::semigroup::{validate_sequence, SequenceSpec};

fn arb_spec() -> impl Strategy<Value = SequenceSpec> {
    (2u64..16, 1u64..7, 2u64..30)
        .prop_filter_map("invalid", |(m0, d, n)| validate_sequence(m0, m0 + d, m0 + 2 * d, n).ok())
}

fn arb_mono() -> impl Strategy<Value = Monomial> {
    prop::array::uniform5(0u32..5).prop_map(|mut e| {
        e[NVARS - 1] = 0;
        Monomial::new(e)
    })
}

fn arb_order() -> impl Strategy<Value = MonomialOrder> {
    (1u64..6, 1u64..6, 1u64..6, 1u64..6, any::<bool>()).prop_map(|(a, b, c, d, y_first)| {
        let g = WeightedGrading::new(a, b, c, d);
        if y_first {
            MonomialOrder::grevlex_y_first(g)
        } else {
            MonomialOrder::grevlex(g)
        }
    })
}

fn arb_poly(order: MonomialOrder) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-4i128..5, arb_mono()), 1..5).prop_map(move |ts| {
        Polynomial::from_terms(order, ts.into_iter().map(|(c, m)| Term::new(Coeff::int(c), m)).collect())
    })
}

fn ring() -> MonomialOrder {
    MonomialOrder::grevlex(WeightedGrading::new(2, 3, 5, 7))
}

proptest! {
    #[test]
    fn order_axioms(o in arb_order(), a in arb_mono(), b in arb_mono(), w in arb_mono()) {
        let ab = o.compare(&a, &b);
        prop_assert_eq!(ab, o.compare(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        prop_assert_eq!(o.compare(&a.mul(&w), &b.mul(&w)), ab);
        prop_assert_ne!(o.compare(&a, &Monomial::ONE), Ordering::Less);
        if o.degree(&a) > o.degree(&b) {
            prop_assert_eq!(ab, Ordering::Greater);
        }
    }

    #[test]
    fn division_reconstructs(f in arb_poly(ring()), gs in prop::collection::vec(arb_poly(ring()), 1..4)) {
        let gs: Vec<Polynomial> = gs.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gs.is_empty());
        let d = divide(&f, &gs);
        let mut sum = d.remainder.clone();
        for (q, g) in d.quotients.iter().zip(&gs) {
            sum = &sum + &(q * g);
        }
        prop_assert_eq!(&sum, &f);
        for t in d.remainder.terms() {
            for g in &gs {
                prop_assert!(!g.lead_mono().unwrap().divides(&t.mono));
            }
        }
    }

    #[test]
    fn arithmetic_is_exact(f in arb_poly(ring()), g in arb_poly(ring()), a in arb_mono(), b in arb_mono()) {
        prop_assert_eq!(&(&(&f + &g) - &g), &f);
        let o = ring();
        let fa = Polynomial::monomial(o, a);
        let fb = Polynomial::monomial(o, b);
        let (x, y) = (fa.is_homogeneous(&o.grading).unwrap(), fb.is_homogeneous(&o.grading).unwrap());
        prop_assert_eq!((&fa * &fb).is_homogeneous(&o.grading), Some(x + y));
        prop_assert_eq!(&(&f * &g), &(&g * &f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn toric_kernel_is_homogeneous_binomials(spec in arb_spec()) {
        let ideal = toric_kernel(&spec);
        let g = spec.grading();
        for p in ideal.reduced_gb.polynomials() {
            prop_assert!(is_toric_binomial(&p, &spec));
            prop_assert!(p.is_homogeneous(&g).is_some());
            prop_assert_eq!(p.lead_coeff(), Some(Coeff::int(1)));
        }
        prop_assert!(buchberger(&ideal.reduced_gb.polynomials()).replay_transcript());
    }

    #[test]
    fn buchberger_is_idempotent(spec in arb_spec()) {
        let gb = toric_kernel(&spec).reduced_gb;
        let once = reduce_basis(&buchberger(&gb.polynomials()));
        let twice = reduce_basis(&buchberger(&reduce_basis(&once).polynomials()));
        prop_assert_eq!(once.polynomials(), twice.polynomials());
    }

    #[test]
    fn template_generates_the_ideal(spec in arb_spec()) {
        let ideal = toric_kernel(&spec);
        if let Ok(params) = extract_parameters(&ideal) {
            let gens = patil_generators(&params, &spec).unwrap();
            let gb = buchberger(&gens);
            for p in ideal.reduced_gb.polynomials() {
                prop_assert!(ideal_member(&p, &gb));
            }
            for p in &gens {
                prop_assert!(ideal_member(p, &ideal.reduced_gb));
            }
            let y_first = MonomialOrder::grevlex_y_first(spec.grading());
            let reordered: Vec<Polynomial> = gens.iter().map(|p| p.with_order(y_first)).collect();
            prop_assert!(is_groebner(&reordered));
        }
    }

    #[test]
    fn lookup_and_closed_form_agree(spec in arb_spec()) {
        let ideal = toric_kernel(&spec);
        let generic = minimalize(&build_resolution(&ideal.reduced_gb.polynomials()));
        let n = generic.ranks();
        prop_assert!(n.len() <= 3);
        prop_assert_eq!(1 + n.get(1).copied().unwrap_or(0), n[0] + n.get(2).copied().unwrap_or(0));
        if let Ok(params) = extract_parameters(&ideal) {
            prop_assert_eq!(betti_lookup(&params).0.to_vec(), n);
            let cf = closed_form_resolution(&params, &spec).unwrap();
            prop_assert!(cf.compositions_vanish());
            prop_assert!(cf.is_minimal());
            prop_assert_eq!(hilbert_numerator(&cf), hilbert_numerator(&generic));
        }
    }

    #[test]
    fn minimalize_keeps_numerator(spec in arb_spec()) {
        let res = build_resolution(&toric_kernel(&spec).reduced_gb.polynomials());
        let min = minimalize(&res);
        prop_assert_eq!(hilbert_numerator(&min), hilbert_numerator(&res));
        prop_assert!(res.compositions_vanish());
        prop_assert!(res.length() <= 4);
        for (a, b) in min.ranks().iter().zip(res.ranks()) {
            prop_assert!(*a <= b);
        }
        prop_assert!(hilbert_identity(&min, &spec, 150));
    }

    #[test]
    fn betti_independent_of_pair_strategy(spec in arb_spec()) {
        let gens = toric_kernel(&spec).reduced_gb.polynomials();
        let normal = minimalize(&build_resolution(&gens));
        let fifo = minimalize(&build_resolution_with(
            &gens,
            BuchbergerOptions { normal_strategy: false, ..Default::default() },
        ));
        prop_assert_eq!(normal.ranks(), fifo.ranks());
    }

    #[test]
    fn report_round_trips(spec in arb_spec()) {
        let r = analyze(spec.as_array(), VerifyLevel::Full, None);
        prop_assert!(!r.flags.failed());
        let s = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<AnalysisReport>(&s).unwrap(), r);
    }
}
