//! Property tests over randomly generated terms, formulas and realizers.

mod common;

use common::{cover, formula, formula_in_x, sigma_formula, term, values};
use fa_core::corpus::{self, CorpusSpec};
use fa_core::induct::{pind_check, pind_soundness_demo};
use fa_core::realize::{self, seq, Realizer};
use fa_core::{
    bit_length, classify, eval_term, nnf, parse_formula, parse_term, Budget, Error, Formula, Nat,
    Term, Valuation,
};
use proptest::prelude::*;

/// Independent machine-word evaluator; `None` on overflow.
fn oracle(t: &Term, v: &Valuation) -> Option<u128> {
    let len = |n: u128| 128 - u64::from(n.leading_zeros());
    Some(match t {
        Term::Zero => 0,
        Term::Var(x) => v.get(x)?.try_into().ok()?,
        Term::Succ(a) => oracle(a, v)?.checked_add(1)?,
        Term::Add(a, b) => oracle(a, v)?.checked_add(oracle(b, v)?)?,
        Term::Mul(a, b) => oracle(a, v)?.checked_mul(oracle(b, v)?)?,
        Term::Len(a) => len(oracle(a, v)?) as u128,
        Term::Half(a) => oracle(a, v)? >> 1,
        Term::Smash(a, b) => {
            let e = len(oracle(a, v)?) * len(oracle(b, v)?);
            1u128.checked_shl(u32::try_from(e).ok().filter(|&e| e < 128)?)?
        }
    })
}

fn truth(f: &Formula, v: &Valuation) -> Option<bool> {
    match realize::brute_truth(f, v, &Budget::default()) {
        Ok((t, _)) => Some(t),
        Err(Error::BudgetExceeded(_)) => None,
        Err(e) => panic!("{f}: {e}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn term_round_trip(t in term()) {
        let back = parse_term(&t.to_string()).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(back.free_vars(), t.free_vars());
    }

    #[test]
    fn formula_round_trip(f in formula()) {
        let back = parse_formula(&f.to_string()).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.free_vars(), f.free_vars());
        prop_assert!(back.is_renamed_apart());
    }

    #[test]
    fn eval_matches_word_oracle(t in term(), vals in values()) {
        let v = cover(&Formula::eq(t.clone(), Term::Zero), &vals);
        if let Some(want) = oracle(&t, &v) {
            let (got, cost) = eval_term(&t, &v, &Budget::default()).unwrap();
            prop_assert_eq!(got.clone(), Nat::from(want));
            prop_assert!(cost.peak_bits >= bit_length(&got));
            prop_assert!(cost.steps >= 1);
            // deterministic, including the cost
            prop_assert_eq!(eval_term(&t, &v, &Budget::default()).unwrap(), (got, cost));
        }
    }

    #[test]
    fn half_and_length_on_words(n in any::<u64>()) {
        let v = Valuation::new().with("x", Nat::from(n));
        let b = Budget::default();
        let half = eval_term(&parse_term("half(x)").unwrap(), &v, &b).unwrap().0;
        prop_assert_eq!(half, Nat::from(n / 2));
        let len = eval_term(&parse_term("|x|").unwrap(), &v, &b).unwrap().0;
        prop_assert_eq!(len, Nat::from(64 - n.leading_zeros()));
    }

    #[test]
    fn classification_invariants(f in formula()) {
        let c = classify(&f);
        prop_assert!(!c.sharply_bounded || (c.sigma_b1 && c.pi_b1));
        let dual = classify(&nnf(&Formula::not(f.clone())));
        prop_assert_eq!(c.sigma_b1, dual.pi_b1);
        prop_assert_eq!(c.pi_b1, dual.sigma_b1);
        prop_assert_eq!(c.sharply_bounded, dual.sharply_bounded);
    }

    #[test]
    fn nnf_shape(f in formula()) {
        let g = nnf(&f);
        prop_assert!(!g.uses_negation_or_implication());
        prop_assert_eq!(nnf(&g), g.clone());
        prop_assert_eq!(classify(&g), classify(&f));
        prop_assert_eq!(g.free_vars(), f.free_vars());
    }

    #[test]
    fn nnf_keeps_truth(f in formula(), vals in values()) {
        let v = cover(&f, &vals);
        if let (Some(a), Some(b)) = (truth(&f, &v), truth(&nnf(&f), &v)) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn sequence_round_trip(items in proptest::collection::vec(0u32..1 << 16, 0..=8)) {
        let items: Vec<Nat> = items.into_iter().map(Nat::from).collect();
        let r = seq::encode_seq(&items, &Budget::default()).unwrap();
        prop_assert_eq!(seq::decode_seq(&r).unwrap(), items.clone());
        prop_assert_eq!(seq::seq_len(&r).unwrap(), items.len() as u64);
        for (i, item) in items.iter().enumerate() {
            prop_assert_eq!(&seq::beta(i as u64 + 1, &r).unwrap(), item);
        }
    }

    #[test]
    fn decoding_is_canonical(n in any::<u64>()) {
        let r = Realizer::from(Nat::from(n));
        if let Ok(items) = seq::decode_seq(&r) {
            prop_assert_eq!(seq::encode(&items), r);
        }
    }

    #[test]
    fn build_iff_true_and_checked(f in sigma_formula(), vals in values()) {
        let v = cover(&f, &vals);
        let b = Budget::default();
        let Some(t) = truth(&f, &v) else { return Ok(()) };
        let Ok((r, _)) = realize::build_realizer(&f, &v, &b) else { return Ok(()) };
        prop_assert_eq!(r.is_some(), t);
        if let Some(r) = r {
            prop_assert!(realize::check_realizer(&f, &r, &v, &b).unwrap().0);
        }
    }

    #[test]
    fn corrupted_realizers_certify_only_truths(
        f in sigma_formula(),
        vals in values(),
        flips in proptest::collection::vec(any::<u16>(), 1..4),
        noise in any::<u64>(),
    ) {
        let v = cover(&f, &vals);
        let b = Budget::default();
        let Some(t) = truth(&f, &v) else { return Ok(()) };
        let Ok((built, _)) = realize::build_realizer(&f, &v, &b) else { return Ok(()) };
        let base = built.map_or_else(|| Nat::from(noise), Realizer::into_value);
        let mut candidates = vec![Nat::from(noise)];
        let width = bit_length(&base) + 2;
        let mut flipped = base;
        for i in flips {
            let bit = u64::from(i) % width;
            flipped.set_bit(bit, !flipped.bit(bit));
            candidates.push(flipped.clone());
        }
        for c in candidates {
            let r = Realizer::from(c);
            if let Ok((accepted, _)) = realize::check_realizer(&f, &r, &v, &b) {
                prop_assert!(!accepted || t, "{} accepted for false {}", r, f);
            }
        }
    }

    #[test]
    fn checking_is_stable_under_nnf(f in sigma_formula(), vals in values(), noise in any::<u32>()) {
        let v = cover(&f, &vals);
        let b = Budget::default();
        let g = nnf(&f);
        let Ok((built, _)) = realize::build_realizer(&f, &v, &b) else { return Ok(()) };
        for r in [built.unwrap_or_else(Realizer::canonical), Realizer::from(Nat::from(noise))] {
            if let (Ok(a), Ok(c)) = (realize::check_realizer(&f, &r, &v, &b), realize::check_realizer(&g, &r, &v, &b)) {
                prop_assert_eq!(a.0, c.0);
            }
        }
    }

    #[test]
    fn pind_invariants(f in formula_in_x(), n in 0u32..24, extra in 0u32..16) {
        prop_assume!(classify(&f).sigma_b1);
        let b = Budget::default();
        let n = Nat::from(n);
        let Ok((small, _)) = pind_check(&f, "x", &n, &b) else { return Ok(()) };
        if small.premises_hold() {
            prop_assert_eq!(small.conclusion_ok_up_to.as_ref(), Some(&n));
        }
        if let Some(m) = &small.conclusion_ok_up_to {
            if *m < n {
                // the first counterexample is a step failure, since its half is below it
                prop_assert_eq!(small.first_step_failure.clone(), Some(m + 1u32));
            }
        }
        let larger = &n + extra;
        let (big, _) = pind_check(&f, "x", &larger, &b).unwrap();
        prop_assert_eq!(big.base_ok, small.base_ok);
        if small.first_step_failure.is_some() {
            prop_assert_eq!(&big.first_step_failure, &small.first_step_failure);
        }
        prop_assert!(pind_soundness_demo(&f, "x", &larger, &b).unwrap());
    }

    #[test]
    fn corpus_generation(seed in any::<u64>()) {
        let spec = CorpusSpec::new(seed, 20);
        let corpus = corpus::generate(&spec);
        prop_assert_eq!(&corpus, &corpus::generate(&spec));
        for (f, c) in &corpus {
            prop_assert!(c.sigma_b1);
            prop_assert!(f.free_vars().iter().all(|x| x == corpus::FREE_VAR));
            prop_assert_eq!(&parse_formula(&f.to_string()).unwrap(), f);
        }
    }
}
