use proptest::prelude::*;

use foldobs::gf2poly::{partitions, BitVec, Gf2Matrix, WMonomial, WPoly};
use foldobs::obstruct::{
    classify_codim1, cp_verdict, min_threshold, numbers_check, numbers_check_opts, quotient_dim, quotient_dim_opts, rank2_reduction, rank2_rows,
    relation_violation, rp_verdict, CharNumbers, Codim1Class, MapClass, NumberEntry, OneGenRing, Outcome, Witness,
};
use foldobs::parity2::binom_parity;

fn projective_numbers(n: u32) -> CharNumbers {
    let ring = OneGenRing::projective(n as usize).unwrap();
    let numbers = partitions(n, 1, None)
        .map(|p| NumberEntry { value: ring.product_nonzero(p.parts()) as u8, partition: p.parts().to_vec() })
        .collect();
    CharNumbers { n, numbers }
}

/// Numbers of `CP^m`: `w = (1+y)^(m+1)` with `deg y = 2`, top class `y^m`.
fn complex_projective_numbers(m: u32) -> CharNumbers {
    let n = 2 * m;
    let numbers = partitions(n, 1, None)
        .map(|p| {
            let nonzero = p.parts().iter().all(|&q| q % 2 == 0 && binom_parity(m as u64 + 1, (q / 2) as i64) == 1);
            NumberEntry { value: nonzero as u8, partition: p.parts().to_vec() }
        })
        .collect();
    CharNumbers { n, numbers }
}

#[test]
fn codim1_shapes_match_quotient_dims() {
    for n in 2..=200 {
        let (class, rep) = classify_codim1(n).unwrap();
        assert_eq!(class.expected_dim(), rep.quotient_dim, "n = {n}");
    }
    assert_eq!(Codim1Class::from_shape(16), Codim1Class::A1);
    assert_eq!(Codim1Class::from_shape(11), Codim1Class::B1);
    assert_eq!(Codim1Class::from_shape(9), Codim1Class::C2);
    assert_eq!(Codim1Class::from_shape(12), Codim1Class::NullCobordant);
}

#[test]
fn dropping_r0_never_raises_the_rank() {
    for n in 3..=80 {
        for k in [1, 2, 3, 7] {
            if k >= n {
                continue;
            }
            let with = quotient_dim_opts(n, k, true).unwrap();
            let without = quotient_dim_opts(n, k, false).unwrap();
            assert!(with.quotient_dim <= without.quotient_dim && without.quotient_dim <= with.quotient_dim + 1);
        }
    }
}

#[test]
fn complements_span_the_quotient() {
    for n in 3..=60 {
        for k in 1..=4 {
            if k >= n {
                continue;
            }
            let r = quotient_dim(n, k).unwrap();
            assert_eq!(r.complement.len(), r.quotient_dim);
            assert_eq!(r.dim_im_rho, n / (k + 1));
            for &(i, j) in &r.complement {
                assert_eq!((k + 1) * i + j, n);
            }
        }
    }
}

#[test]
fn projective_classes_below_powers_of_two_are_nonzero() {
    for d in 2..=8 {
        let n = (1usize << d) - 2;
        let ring = OneGenRing::projective(n).unwrap();
        for j in 0..=n {
            assert!(ring.class_nonzero(j), "w{j}(RP{n})");
        }
    }
}

#[test]
fn minimal_threshold_frozen() {
    let ring = OneGenRing::projective(13).unwrap();
    assert_eq!(min_threshold(&ring), 6);
    assert_eq!(relation_violation(&ring, 4), Some((vec![4, 6], vec![5, 5])));
    assert_eq!(relation_violation(&ring, 6), None);
}

fn arb_ring() -> impl Strategy<Value = OneGenRing> {
    (2usize..40, any::<u64>(), any::<bool>()).prop_map(|(n, bits, o)| {
        let mut c: Vec<bool> = (0..=n).map(|i| bits >> (i % 64) & 1 == 1).collect();
        c[0] = true;
        OneGenRing::new(&c, o)
    })
}

proptest! {
    #[test]
    fn violations_are_monotone_in_the_threshold(ring in arb_ring()) {
        let m = min_threshold(&ring);
        for l in 0..=ring.n + 1 {
            prop_assert_eq!(relation_violation(&ring, l).is_some(), l < m, "l = {}", l);
        }
    }

    #[test]
    fn violation_witnesses_are_genuine(ring in arb_ring(), l in 0usize..20) {
        if let Some((nz, z)) = relation_violation(&ring, l) {
            prop_assert_eq!(nz.len(), z.len());
            prop_assert_eq!(nz.iter().sum::<u32>(), z.iter().sum::<u32>());
            prop_assert!(nz.iter().chain(&z).all(|&p| p as usize >= l));
            prop_assert!(ring.product_nonzero(&nz));
            prop_assert!(!ring.product_nonzero(&z));
        }
    }
}

#[test]
fn rp_verdicts_respect_hypotheses_and_witnesses() {
    for n in 2..=80 {
        for target in 1..=n {
            let vs = rp_verdict(n, target).unwrap();
            let ring = OneGenRing::projective(n).unwrap();
            let k = n - target;
            for v in &vs.verdicts {
                if !v.hypotheses_hold() {
                    assert_ne!(v.outcome, Outcome::Obstructed, "{n} {target} {v:?}");
                }
                assert_eq!(v.is_obstructed(), v.witness.is_some(), "{n} {target} {v:?}");
                match &v.witness {
                    Some(Witness::Relation { lhs, rhs }) => {
                        assert!(ring.product_nonzero(lhs) && !ring.product_nonzero(rhs));
                        let lo = (k + 1 + v.map_class.delta()) as u32;
                        assert!(lhs.iter().chain(rhs).all(|&p| p >= lo), "{n} {target} {v:?}");
                    }
                    Some(Witness::NonzeroClass { degree }) => {
                        assert!(ring.class_nonzero(*degree as usize));
                        assert!(*degree as usize >= k + 2);
                    }
                    _ => {}
                }
            }
        }
    }
}

#[test]
fn rp_verdict_frozen_examples() {
    let vs = rp_verdict(13, 12).unwrap();
    assert!(vs.obstructed(MapClass::Morin) && vs.obstructed(MapClass::Fold));
    assert_eq!(vs.min_threshold, Some(6));
    assert!(rp_verdict(11, 10).unwrap().obstructed(MapClass::Fold));
    // the circle folds onto the line
    assert!(!rp_verdict(1, 1).unwrap().any_obstructed());
    assert!(rp_verdict(5, 6).is_err());
}

#[test]
fn cp_verdicts_frozen() {
    assert!(cp_verdict(2, 4).unwrap().obstructed(MapClass::Corank1));
    assert!(cp_verdict(4, 7).unwrap().obstructed(MapClass::Corank1));
    assert!(cp_verdict(4, 8).unwrap().obstructed(MapClass::Corank1));
    assert!(cp_verdict(4, 6).unwrap().obstructed(MapClass::Corank1));
    assert!(!cp_verdict(4, 4).unwrap().obstructed(MapClass::Corank1));
    assert!(cp_verdict(3, 7).is_err());
}

#[test]
fn genuine_manifolds_satisfy_the_universal_relations() {
    for n in 2..=20 {
        let cn = projective_numbers(n);
        let v = numbers_check(&cn, 1, MapClass::Corank1, 0).unwrap();
        assert_eq!(v.verdict.outcome, Outcome::NoObstruction, "RP{n}: {:?}", v.verdict.witness);
    }
    for m in 1..=10 {
        let cn = complex_projective_numbers(m);
        let v = numbers_check(&cn, 1, MapClass::Corank1, 0).unwrap();
        assert_eq!(v.verdict.outcome, Outcome::NoObstruction, "CP{m}: {:?}", v.verdict.witness);
    }
}

#[test]
fn numbers_detect_fold_obstruction() {
    // w12[RP12] = 1 while the codim -1 quotient at n = 12 is trivial
    let v = numbers_check(&projective_numbers(12), 1, MapClass::Fold, 0).unwrap();
    assert!(v.verdict.is_obstructed());
    // RP11 bounds, so its numbers are all zero
    let v = numbers_check(&projective_numbers(11), 1, MapClass::Fold, 0).unwrap();
    assert!(!v.verdict.is_obstructed());
}

#[test]
fn numbers_input_validation() {
    let mut cn = projective_numbers(6);
    cn.numbers.pop();
    assert!(numbers_check(&cn, 1, MapClass::Fold, 0).is_err());
    let mut cn = projective_numbers(6);
    cn.numbers[0].value = 2;
    assert!(numbers_check(&cn, 1, MapClass::Fold, 0).is_err());
    assert!(numbers_check(&projective_numbers(6), 6, MapClass::Fold, 0).is_err());
    let v = numbers_check(&projective_numbers(6), 2, MapClass::Morin, 0).unwrap();
    assert_eq!(v.verdict.outcome, Outcome::Inconclusive);
}

/// Span of the 2-plane relations computed from scratch: the degree-`n` parts
/// of `w1^a (1+w1)^a w2^b (1+w1+w2)^b / (1+w1+w2)` with `w3 = w4 = ... = 0`.
fn rank2_oracle(n: u32) -> Gf2Matrix {
    let keep = |p: WPoly| {
        let mut out = WPoly::zero(n);
        for m in p.terms().filter(|m| m.parts().iter().all(|&q| q <= 2)) {
            out.toggle(m.clone());
        }
        out
    };
    let mono = |parts: Vec<u32>| WPoly::from_monomial(n, WMonomial::new(parts).unwrap());
    let one_w1 = mono(vec![]).add(&mono(vec![1])).unwrap();
    let total = one_w1.add(&mono(vec![2])).unwrap();
    let inv = keep(total.series_inv().unwrap());
    let h = n / 2;
    let mut span = Gf2Matrix::new(h as usize + 1);
    for b in 0..=h {
        for a in 0..n.saturating_sub(2 * b) {
            let mut p = mono([vec![1; a as usize], vec![2; b as usize]].concat());
            for _ in 0..a {
                p = keep(p.mul(&one_w1).unwrap());
            }
            for _ in 0..b {
                p = keep(p.mul(&total).unwrap());
            }
            let e = keep(p.mul(&inv).unwrap()).component(n);
            // column h - j holds w1^(n-2j) w2^j
            let cols: Vec<usize> =
                e.terms().map(|m| h as usize - m.parts().iter().filter(|&&q| q == 2).count()).collect();
            span.insert(&BitVec::from_ones(h as usize + 1, &cols)).unwrap();
        }
    }
    span
}

#[test]
fn rank2_rows_are_genuine_relations() {
    for n in 2..=26u32 {
        let full = rank2_oracle(n);
        for (m, row) in rank2_rows(n as usize).iter().enumerate() {
            assert!(full.contains(row).unwrap(), "n = {n}, m = {}", m + 1);
        }
        let r = rank2_reduction(n as usize).unwrap();
        assert_eq!(r.basis.len(), n as usize / 2 + 1);
        assert!(r.rank <= full.rank());
    }
}

#[test]
fn rank2_leaves_only_w1_power() {
    for n in 2..=120 {
        let r = rank2_reduction(n).unwrap();
        assert!(r.quotient_dim <= 1, "n = {n}");
        if r.quotient_dim == 1 {
            assert_eq!(r.complement, vec![format!("w1^{n}")]);
        }
    }
}

#[test]
fn high_codimension_residual() {
    // with the unit relation the top class dies too; without it w16 survives
    let zero = CharNumbers::indicator(16, &[]);
    assert!(numbers_check(&zero, 5, MapClass::Fold, 5).unwrap().residual.is_empty());
    let v = numbers_check_opts(&zero, 5, MapClass::Fold, 5, false).unwrap();
    let res: Vec<&str> = v.residual.iter().map(|r| r.monomial.as_str()).collect();
    assert_eq!(res, ["w16"]);

    let top = CharNumbers::indicator(16, &[WMonomial::w(16)]);
    assert!(numbers_check(&top, 5, MapClass::Fold, 5).unwrap().verdict.is_obstructed());
    let v = numbers_check_opts(&top, 5, MapClass::Fold, 5, false).unwrap();
    assert!(!v.verdict.is_obstructed());
    assert!(v.verdict.notes.iter().any(|n| n.starts_with("external:")), "{:?}", v.verdict.notes);
}

#[test]
fn zero_functional_is_never_obstructed() {
    for n in 2..=16u32 {
        for k in 1..n as usize {
            for mc in MapClass::ALL {
                let v = numbers_check(&CharNumbers::indicator(n, &[]), k, mc, k.min(3)).unwrap();
                assert!(!v.verdict.is_obstructed(), "n={n} k={k} {mc}");
            }
        }
    }
}
