//! Properties of the verdict tables and embedding routes.

use curvechain::bounds::{max_cyclic_chain, max_cyclic_join_k1};
use curvechain::decide::{
    braid_virtual_bound, decide_braid_virtual, decide_pure_braid, decide_raag_cycle, plan_route,
    raag_cycle_threshold, raag_cycle_z_threshold, validate_route,
};
use curvechain::{Answer, EmbeddingRoute, Surface};
use proptest::prelude::*;

fn surface() -> impl Strategy<Value = Surface> {
    (0u32..=8, 0u32..=12, 0u32..=5).prop_map(|(g, p, b)| Surface::new(g, p, b))
}

fn closed() -> impl Strategy<Value = Surface> {
    (0u32..=8, 0u32..=12).prop_map(|(g, p)| Surface::punctured(g, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn yes_exactly_up_to_the_threshold(s in surface(), n in 0u64..30) {
        let t = braid_virtual_bound(s).value;
        let v = decide_braid_virtual(n, s);
        prop_assert_eq!(v.threshold, Some(t));
        prop_assert_eq!(v.answer == Answer::Yes, n <= t);
        prop_assert_eq!(decide_pure_braid(n, s).answer, v.answer);
    }

    #[test]
    fn thresholds_grow_with_the_surface(s in surface()) {
        let t = braid_virtual_bound(s).value;
        for bigger in [
            Surface::new(s.genus + 1, s.punctures, s.boundary),
            Surface::new(s.genus, s.punctures + 1, s.boundary),
            Surface::new(s.genus, s.punctures, s.boundary + 1),
        ] {
            prop_assert!(braid_virtual_bound(bigger).value >= t);
        }
    }

    #[test]
    fn routes_exist_on_the_yes_region_and_validate(s in surface(), n in 0u64..30) {
        let yes = decide_braid_virtual(n, s).answer == Answer::Yes;
        match plan_route(n, s) {
            Ok(r) => {
                prop_assert!(yes);
                prop_assert_eq!(r.conclusion, s);
                if let Err(v) = validate_route(&r) {
                    prop_assert!(false, "{}: {:?}", r.to_text(), v);
                }
                if let Some(last) = r.steps.last() {
                    prop_assert_eq!(last.target, s);
                }
                let back = EmbeddingRoute::from_text(n, s, &r.to_text()).unwrap();
                prop_assert_eq!(back, r);
            }
            Err(_) => prop_assert!(!yes),
        }
    }

    #[test]
    fn join_threshold_never_exceeds_the_cycle_threshold(s in closed()) {
        let (c, _) = raag_cycle_threshold(s).unwrap();
        if let Some((z, _)) = raag_cycle_z_threshold(s).unwrap() {
            prop_assert!(z <= c);
        }
    }

    #[test]
    fn raag_tables_agree_with_the_chain_bounds(s in closed()) {
        if let Some(b) = max_cyclic_chain(s).value {
            prop_assert_eq!(raag_cycle_threshold(s).unwrap().0, b);
        }
        if let Some(b) = max_cyclic_join_k1(s).value {
            prop_assert_eq!(raag_cycle_z_threshold(s).unwrap().map(|x| x.0), Some(b));
        }
    }

    #[test]
    fn raag_verdicts_follow_the_threshold(s in closed(), m in 3u64..30) {
        let v = decide_raag_cycle(m, s).unwrap();
        prop_assert_eq!(v.answer == Answer::Yes, m <= v.threshold.unwrap());
    }
}

#[test]
fn boundary_is_refused_by_the_raag_tables() {
    assert!(raag_cycle_threshold(Surface::new(1, 1, 1)).is_err());
    assert!(decide_raag_cycle(3, Surface::new(2, 0, 1)).is_err());
}

#[test]
fn verdict_json_has_stable_fields() {
    let v = decide_braid_virtual(5, Surface::punctured(0, 7));
    let j: serde_json::Value = serde_json::to_value(&v).unwrap();
    assert_eq!(j["answer"], "yes");
    assert_eq!(j["threshold"], 5);
    assert!(j["citation"].as_str().unwrap().starts_with("Thm main_1"));
    assert!(j["notes"].is_array());
}
