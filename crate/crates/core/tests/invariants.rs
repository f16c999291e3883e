//! Property tests for the symmetry and move-set invariants.

use proptest::prelude::*;

use fragchain::basis::{combinadic_rank, combinadic_unrank, binomial};
use fragchain::fragment::{is_frozen, motif_frozen_predicate};
use fragchain::spectra::{build_cat_state, CatSign, StateVector};
use fragchain::{BasisState, Chain, SectorKey, SymmetryBlock};

fn arb_chain_state() -> impl Strategy<Value = (u32, u32)> {
    prop::sample::select(vec![4u32, 6, 8, 10, 12])
        .prop_flat_map(|l| (Just(l), 0..(1u32 << l)))
}

proptest! {
    #[test]
    fn moves_preserve_quantum_numbers((l, w) in arb_chain_state()) {
        let c = Chain::new(l).unwrap();
        let s = BasisState(w);
        let key = c.sector_key(s).unwrap();
        for (_, t) in c.allowed_moves(s).unwrap() {
            prop_assert_eq!(c.sector_key(t).unwrap(), key);
        }
    }

    #[test]
    fn moves_are_reversible((l, w) in arb_chain_state()) {
        let c = Chain::new(l).unwrap();
        let s = BasisState(w);
        for (i, t) in c.allowed_moves(s).unwrap() {
            let back = c.allowed_moves(t).unwrap();
            prop_assert!(back.contains(&(i, s)));
        }
    }

    #[test]
    fn conjugation_commutes_with_moves((l, w) in arb_chain_state()) {
        let c = Chain::new(l).unwrap();
        let s = BasisState(w);
        let xs = c.charge_conjugate(s).unwrap();
        let mut direct: Vec<(u32, BasisState)> = c
            .allowed_moves(s)
            .unwrap()
            .into_iter()
            .map(|(i, t)| (i, c.charge_conjugate(t).unwrap()))
            .collect();
        let mut flipped = c.allowed_moves(xs).unwrap();
        direct.sort();
        flipped.sort();
        prop_assert_eq!(direct, flipped);
    }

    #[test]
    fn translation_maps_moves_to_shifted_moves((l, w) in arb_chain_state()) {
        let c = Chain::new(l).unwrap();
        let s = BasisState(w);
        let ts = c.translate(s, 1).unwrap();
        let mut expected: Vec<(u32, BasisState)> = c
            .allowed_moves(s)
            .unwrap()
            .into_iter()
            .map(|(i, t)| ((i + 1) % l, c.translate(t, 1).unwrap()))
            .collect();
        let mut shifted = c.allowed_moves(ts).unwrap();
        expected.sort();
        shifted.sort();
        prop_assert_eq!(expected, shifted);
    }

    #[test]
    fn conjugation_involution_and_translation_period((l, w) in arb_chain_state()) {
        let c = Chain::new(l).unwrap();
        let s = BasisState(w);
        prop_assert_eq!(c.charge_conjugate(c.charge_conjugate(s).unwrap()).unwrap(), s);
        prop_assert_eq!(c.translate(s, l).unwrap(), s);
        // Translation preserves both quantum numbers.
        let t = c.translate(s, 3).unwrap();
        prop_assert_eq!(c.sector_key(t).unwrap(), c.sector_key(s).unwrap());
        // Conjugation negates m and keeps n_dw.
        let x = c.charge_conjugate(s).unwrap();
        prop_assert_eq!(c.magnetization(x).unwrap(), -c.magnetization(s).unwrap());
        prop_assert_eq!(
            c.domain_wall_count(x).unwrap(),
            c.domain_wall_count(s).unwrap()
        );
    }

    #[test]
    fn combinadic_rank_roundtrip((l, w) in arb_chain_state()) {
        let s = BasisState(w);
        let k = w.count_ones();
        let rank = combinadic_rank(s);
        prop_assert!(rank < binomial(l, k));
        prop_assert_eq!(combinadic_unrank(l, k, rank), Some(s));
    }

    #[test]
    fn state_sits_in_exactly_its_block((l, w) in arb_chain_state()) {
        let c = Chain::new(l).unwrap();
        let s = BasisState(w);
        let key = c.sector_key(s).unwrap();
        let block = SymmetryBlock::enumerate(&c, key).unwrap();
        prop_assert!(block.position_of(s).is_some());
        // A different domain-wall block never contains it.
        let other = SectorKey { m: key.m, n_dw: (key.n_dw + 2) % (l + 2) };
        if let Ok(other_block) = SymmetryBlock::enumerate(&c, other) {
            prop_assert!(other_block.position_of(s).is_none());
        }
    }

    #[test]
    fn frozen_matches_motif_oracle_on_balanced_states((l, w) in arb_chain_state()) {
        let c = Chain::new(l).unwrap();
        let s = BasisState(w);
        if c.magnetization(s).unwrap() == 0 {
            prop_assert_eq!(
                is_frozen(&c, s).unwrap(),
                motif_frozen_predicate(&c, s).unwrap()
            );
        }
    }

    #[test]
    fn cat_states_are_normalized_conjugation_eigenstates((l, w) in arb_chain_state()) {
        let c = Chain::new(l).unwrap();
        let s = BasisState(w);
        let v = StateVector::basis_vector(vec![s], s).unwrap();
        for (sign, eig) in [(CatSign::Plus, 1.0), (CatSign::Minus, -1.0)] {
            let cat = build_cat_state(&c, &v, sign).unwrap();
            prop_assert!((cat.norm() - 1.0).abs() < 1e-12);
            let x = fragchain::operators::build_conjugation(&c, cat.basis()).unwrap();
            let image = x.apply_complex(cat.amplitudes()).unwrap();
            for (a, b) in image.iter().zip(cat.amplitudes()) {
                prop_assert!((a - eig * b).norm() < 1e-12);
            }
        }
    }
}
