// Copyright 2026 The pathauth Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use common::{arb_condition, arb_graph, satisfaction};
use pathauth_core::path::{canonical_equal, head, length, parse_any, render, simplify, suffix, PathCondition};
use proptest::prelude::*;

proptest! {
    #![proptest_config(common::config(512))]

    #[test]
    fn render_then_parse_is_equivalent(pc in arb_condition()) {
        let text = render(&pc).unwrap();
        let back = parse_any(&text).unwrap();
        prop_assert!(canonical_equal(&back, &pc), "{text}");
        let again = render(&back).unwrap();
        prop_assert_eq!(render(&parse_any(&again).unwrap()).unwrap(), again);
    }

    #[test]
    fn simplify_is_idempotent_and_simple(pc in arb_condition()) {
        let s = simplify(&pc);
        prop_assert!(s.is_simple(), "{s}");
        prop_assert_eq!(simplify(&s), s);
    }

    #[test]
    fn simplify_keeps_length(pc in arb_condition()) {
        prop_assert_eq!(length(&simplify(&pc)), length(&pc));
        prop_assert_eq!(length(&PathCondition::reverse(pc.clone())), length(&pc));
    }

    #[test]
    fn simplify_preserves_satisfaction(pc in arb_condition(), g in arb_graph()) {
        prop_assert_eq!(satisfaction(&g, &pc), satisfaction(&g, &simplify(&pc)));
    }

    #[test]
    fn head_and_suffix_recompose(pc in arb_condition(), g in arb_graph()) {
        let s = simplify(&pc);
        prop_assume!(!s.is_diamond());
        let h = head(&s).unwrap();
        let recomposed = PathCondition::concat(PathCondition::edge(h), suffix(&s).unwrap());
        prop_assert_eq!(satisfaction(&g, &s), satisfaction(&g, &recomposed));
    }

    #[test]
    fn reversal_swaps_endpoints(pc in arb_condition(), g in arb_graph()) {
        let fwd = satisfaction(&g, &pc);
        let rev = satisfaction(&g, &simplify(&PathCondition::reverse(pc)));
        let ids = common::ids(&g);
        for (i, u) in ids.iter().enumerate() {
            for (j, v) in ids.iter().enumerate() {
                prop_assert_eq!(fwd[i].contains(v), rev[j].contains(u));
            }
        }
    }
}
