//! Chained triples and Y-chained quadruples: searches, certificates and the
//! upper bounds they must respect.

use curvechain::bounds::{max_chained_triple, max_y_quadruple};
use curvechain::engine::{cut_system, enumerate_arcs};
use curvechain::witness::{
    complete_triple, sphere_linear_chain, verify_chained_triple, verify_cyclic_chain, verify_y_quadruple,
};
use curvechain::{ChainKind, Error, SearchSpace, Surface, TripleVariant};

#[test]
fn star_triple_of_length_one_on_the_four_holed_sphere() {
    let sp = SearchSpace::standard(0, 4, 2).unwrap();
    let f = sp.chained_triple(1, TripleVariant::Star).expect("Lemma induction_start is sharp at m = 1");
    let c = verify_chained_triple(&f, TripleVariant::Star).unwrap();
    assert!(c.certified(), "{}", c.summary());
    assert_eq!(c.flags.condition_star, Some(true));
    assert_eq!(c.arcs.len(), 2);
}

#[test]
fn no_star_triple_of_length_two_at_weight_three() {
    let sp = SearchSpace::standard(0, 4, 3).unwrap();
    assert!(sp.chained_triple(2, TripleVariant::Star).is_none());
}

#[test]
fn y_quadruple_of_length_one_on_the_four_holed_sphere() {
    let sp = SearchSpace::standard(0, 4, 2).unwrap();
    let f = sp.y_quadruple(1).expect("Lemma Y_04 allows m = 1");
    let c = verify_y_quadruple(&f).unwrap();
    assert!(c.certified(), "{}", c.summary());
    assert_eq!(c.kind, Some(ChainKind::YQuadruple));
}

#[test]
fn ovals_on_six_punctures_complete_to_a_plain_triple() {
    let chain = sphere_linear_chain(6, 4).unwrap();
    let arcs = enumerate_arcs(&chain.triangulation, 1);
    let f = complete_triple(&chain, &arcs, TripleVariant::Plain).unwrap().expect("m = p-2 is reached");
    let c = verify_chained_triple(&f, TripleVariant::Plain).unwrap();
    assert!(c.certified(), "{}", c.summary());
    assert_eq!(c.length as u64, max_chained_triple(Surface::punctured(0, 6), TripleVariant::Plain).value.unwrap());
    assert!(sphere_linear_chain(6, 5).is_err());
}

#[test]
fn recursive_triple_on_s12() {
    let sp = SearchSpace::standard(1, 2, 2).unwrap();
    let f = sp.chained_triple(2, TripleVariant::RecursiveEnd).expect("Lemma R_trple_12 allows m = 2");
    let c = verify_chained_triple(&f, TripleVariant::RecursiveEnd).unwrap();
    assert!(c.certified(), "{}", c.summary());
    assert!(c.arcs.last().unwrap().recursive);
}

/// The disjoint recursive arcs of a length-2 Y-quadruple on S_{1,2}
/// separate, as the proof of Lemma Y_12 requires.
#[test]
fn y_quadruple_on_s12_has_separating_recursive_arcs() {
    let sp = SearchSpace::standard(1, 2, 2).unwrap();
    let f = sp.y_quadruple(2).expect("m = 2 is allowed");
    let c = verify_y_quadruple(&f).unwrap();
    assert!(c.certified(), "{}", c.summary());
    let sys = f.systems();
    let d2 = sys[sys.len() - 2].clone();
    let pieces = cut_system(&[d2]).unwrap();
    assert_eq!(pieces.len(), 2, "{pieces:?}");
}

/// The three edges of the ideal triangulation of S_{1,1} are pairwise
/// disjoint, non-isotopic arcs on the one puncture, and the curve of
/// weights (1,1,2) meets each of them. This is a Y-chained quadruple of
/// length one, although Lemma Y_11 says none exists.
#[test]
fn torus_carries_a_y_quadruple_of_edge_arcs() {
    let sp = SearchSpace::standard(1, 1, 2).unwrap();
    let f = sp.y_quadruple(1).expect("edge arcs with a slope meeting all three");
    let c = verify_y_quadruple(&f).unwrap();
    assert!(c.certified(), "{}", c.summary());
    assert!(f.systems().iter().filter(|s| s.has_arcs()).all(|a| a.weights().iter().all(|&w| w == 0)));
    assert_eq!(max_y_quadruple(Surface::punctured(1, 1)).value, None);
}

#[test]
fn searches_stay_within_the_upper_bounds() {
    for (g, p) in [(1, 2), (0, 5)] {
        let s = Surface::punctured(g, p);
        let sp = SearchSpace::standard(g, p, 3).unwrap();
        for v in [TripleVariant::Plain, TripleVariant::Star, TripleVariant::RecursiveEnd] {
            if let Some(top) = max_chained_triple(s, v).value {
                let m = top as usize + 1;
                assert!(sp.chained_triple(m, v).is_none(), "{s} {v:?} m={m}");
            }
        }
        let top = max_y_quadruple(s).value.unwrap() as usize;
        assert!(sp.y_quadruple(top + 1).is_none(), "{s} Y m={}", top + 1);
        assert!(sp.cyclic_chain(6).is_none(), "{s} C6");
    }
}

#[test]
fn layouts_are_checked() {
    let sp = SearchSpace::standard(0, 4, 2).unwrap();
    let f = sp.chained_triple(1, TripleVariant::Plain).unwrap();
    assert!(matches!(verify_cyclic_chain(&f), Err(Error::MalformedSystem(_))));
    assert!(matches!(verify_y_quadruple(&f), Err(Error::MalformedSystem(_))));
    let mut only_curves = f.clone();
    only_curves.curves.retain(|(_, c)| !c.has_arcs());
    assert!(matches!(verify_chained_triple(&only_curves, TripleVariant::Plain), Err(Error::MalformedSystem(_))));
}
