use num_bigint::BigInt;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use ribbon_sandpile::jacobian::BernardiAction;
use ribbon_sandpile::oracles::{firing_reachability, OracleBudget};
use ribbon_sandpile::random::{random_embedded_graph, random_eulerian_digraph, random_ribbon_graph, rng};
use ribbon_sandpile::ribbon::{bidirect, complement_components, dual, medial, EdgeId, Layer, Subtransversal, VertexId};
use ribbon_sandpile::rotor::{
    orient_tree, rotor_action_undirected, rotor_equivalent, route, Arborescence, ChipRotorState, GameOptions, RotorConfig,
    RotorRouter,
};
use ribbon_sandpile::sandpile::{count_arborescences, linearly_equivalent, ChipConfig, SandpileGroup};
use ribbon_sandpile::tours::{arb_to_tour, enumerate_compatible_tours, tour_to_arb, TourRotor};
use ribbon_sandpile::fixtures;

fn chips(r: &mut impl Rng, n: usize, bound: i64) -> ChipConfig {
    let mut x = ChipConfig((0..n).map(|_| r.gen_range(-bound..=bound)).collect());
    let s = x.sum();
    x.0[0] -= s;
    x
}

fn random_state(r: &mut impl Rng, d: &ribbon_sandpile::ribbon::RibbonDigraph) -> ChipRotorState {
    let n = d.vertex_count();
    let x = ChipConfig((0..n).map(|_| r.gen_range(-2..=2)).collect());
    let rotors = d.vertices().map(|v| d.out_arcs(v).choose(r).copied()).collect();
    ChipRotorState::new(x, RotorConfig::new(d, rotors).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn surfaces_and_derived_graphs(seed in any::<u64>(), n in 1usize..5, extra in 0usize..4) {
        let mut r = rng(seed);
        let g = random_ribbon_graph(&mut r, n, n - 1 + extra, true);
        let euler = g.vertex_count() as i64 - g.edge_count() as i64 + g.faces().faces.len() as i64;
        prop_assert_eq!(euler, 2 - 2 * g.genus() as i64);
        let d = bidirect(&g);
        prop_assert!(d.is_balanced());
        prop_assert_eq!(d.genus(), g.genus());
        let dd = dual(&dual(&g));
        prop_assert_eq!((dd.vertex_count(), dd.edge_count(), dd.genus()), (g.vertex_count(), g.edge_count(), g.genus()));
        if g.edge_count() > 0 {
            let m = medial(&g);
            prop_assert!(m.vertices().all(|v| m.in_degree(v) == 2 && m.out_degree(v) == 2));
            prop_assert_eq!(m.genus(), g.genus());
        }
    }

    #[test]
    fn cutting_more_never_joins(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_ribbon_graph(&mut r, 3, 4, true);
        let mut s = Subtransversal::empty(g.edge_count());
        let mut last = complement_components(&g, &s).components;
        prop_assert_eq!(last, 1);
        let mut order: Vec<usize> = (0..g.edge_count()).collect();
        order.shuffle(&mut r);
        for e in order {
            s.0[e] = Some(if r.gen_bool(0.5) { Layer::Primal } else { Layer::Dual });
            let now = complement_components(&g, &s).components;
            prop_assert!(now >= last);
            last = now;
        }
    }

    #[test]
    fn group_order_counts_arborescences(seed in any::<u64>()) {
        let d = random_eulerian_digraph(&mut rng(seed), 5, 10);
        let order = SandpileGroup::new(&d).unwrap().order();
        for v in d.vertices() {
            prop_assert_eq!(count_arborescences(&d, v), order.clone());
        }
        prop_assert_eq!(BigInt::from(enumerate_compatible_tours(&d).unwrap().len()), order);
    }

    #[test]
    fn directed_cycles_sum_to_zero(seed in any::<u64>()) {
        let d = random_eulerian_digraph(&mut rng(seed), 5, 10);
        // every compatible tour is a closed walk through all arcs
        let tour = enumerate_compatible_tours(&d).unwrap().swap_remove(0);
        prop_assert!(ChipConfig::chi_sum(&d, tour.arcs().iter().copied()).is_zero());
    }

    #[test]
    fn linear_equivalence_matches_firing_search(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_eulerian_digraph(&mut r, 4, 7);
        let n = d.vertex_count();
        let x = chips(&mut r, n, 2);
        let y = chips(&mut r, n, 2);
        let fast = linearly_equivalent(&d, &x, &y).unwrap();
        prop_assert_eq!(fast, linearly_equivalent(&d, &y, &x).unwrap());
        let budget = OracleBudget { chip_bound: 12, ..OracleBudget::default() };
        if let Ok(slow) = firing_reachability(&d, &x, &y, &budget) {
            prop_assert_eq!(fast, slow);
        }
    }

    #[test]
    fn rotor_equivalence_is_an_equivalence(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_eulerian_digraph(&mut r, 4, 8);
        let a = random_state(&mut r, &d);
        let mut b = random_state(&mut r, &d);
        b.chips.0[0] += a.chips.sum() - b.chips.sum();
        prop_assert!(rotor_equivalent(&d, &a, &a).unwrap());
        prop_assert_eq!(rotor_equivalent(&d, &a, &b).unwrap(), rotor_equivalent(&d, &b, &a).unwrap());
        let mut c = b.clone();
        for _ in 0..5 {
            c = route(&d, &c, VertexId(r.gen_range(0..d.vertex_count()))).unwrap();
        }
        prop_assert!(rotor_equivalent(&d, &b, &c).unwrap());
        prop_assert_eq!(rotor_equivalent(&d, &a, &b).unwrap(), rotor_equivalent(&d, &a, &c).unwrap());
    }

    #[test]
    fn rotor_action_is_a_group_action(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_eulerian_digraph(&mut r, 5, 10);
        let rr = RotorRouter::new(&d).unwrap();
        let n = d.vertex_count();
        let root = VertexId(r.gen_range(0..n));
        let tour = enumerate_compatible_tours(&d).unwrap().swap_remove(0);
        let first = *d.out_arcs(root).choose(&mut r).unwrap();
        let t: Arborescence = tour_to_arb(&d, &tour, first).unwrap();
        let x = chips(&mut r, n, 3);
        let y = chips(&mut r, n, 3);
        let xy = rr.act(root, &(&x + &y), &t).unwrap();
        prop_assert_eq!(&xy, &rr.act(root, &x, &rr.act(root, &y, &t).unwrap()).unwrap());
        let opts = GameOptions { root_arc: Some(*d.out_arcs(root).choose(&mut r).unwrap()), shuffle_seed: Some(seed) };
        prop_assert_eq!(&xy, &rr.act_with(root, &(&x + &y), &t, &opts).unwrap());
        // -x undoes x
        prop_assert_eq!(rr.act(root, &(-&x), &rr.act(root, &x, &t).unwrap()).unwrap(), t);
    }

    #[test]
    fn tree_action_through_tours(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..5);
        let g = random_ribbon_graph(&mut r, n, n + 1, false);
        let d = bidirect(&g);
        let u = VertexId(r.gen_range(0..n));
        let uv = d.out_arcs(u)[0];
        let tour = enumerate_compatible_tours(&d).unwrap().swap_remove(0);
        let tree = ribbon_sandpile::rotor::forget_orientation(&tour_to_arb(&d, &tour, uv).unwrap());
        let x = chips(&mut r, n, 2);
        let direct = rotor_action_undirected(&g, u, &x, &tree).unwrap();
        let tr = TourRotor::new(&d).unwrap();
        let tu = orient_tree(&g, &d, u, &tree).unwrap();
        let moved = tr.act(&x, &arb_to_tour(&d, &tu, uv).unwrap()).unwrap();
        let via_tours = ribbon_sandpile::rotor::forget_orientation(&tour_to_arb(&d, &moved, uv).unwrap());
        prop_assert_eq!(direct, via_tours);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn quasitree_counts_and_round_trips(seed in any::<u64>(), n in 1usize..4) {
        let mut r = rng(seed);
        let m = r.gen_range((n - 1).max(1)..=4);
        let eg = random_embedded_graph(&mut r, n, m, true);
        let qs = eg.enumerate_quasitrees().unwrap();
        let jac = eg.jacobian().unwrap();
        let tours = enumerate_compatible_tours(eg.medial()).unwrap();
        prop_assert_eq!(BigInt::from(qs.len()), jac.order());
        prop_assert_eq!(jac.order(), SandpileGroup::new(eg.medial()).unwrap().order());
        prop_assert_eq!(qs.len(), tours.len());
        for q in &qs {
            prop_assert_eq!(&eg.tour_to_quasitree(&eg.quasitree_to_tour(q).unwrap()).unwrap(), q);
        }
        for t in &tours {
            prop_assert_eq!(&eg.quasitree_to_tour(&eg.tour_to_quasitree(t).unwrap()).unwrap(), t);
        }
    }

    #[test]
    fn bernardi_action_ignores_first_edge(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..4);
        let m = r.gen_range((n - 1).max(1)..=4);
        let eg = random_embedded_graph(&mut r, n, m, true);
        let base = BernardiAction::new(&eg, EdgeId(0)).unwrap();
        let x: Vec<i64> = (0..m).map(|_| r.gen_range(-2..=2)).collect();
        for e0 in 1..m {
            let other = BernardiAction::new(&eg, EdgeId(e0)).unwrap();
            for q in base.quasitrees() {
                prop_assert_eq!(base.act(&x, q).unwrap(), other.act(&x, q).unwrap());
            }
        }
    }
}

#[test]
fn fixtures_satisfy_group_counts() {
    for d in [fixtures::fig1(), fixtures::c3(), bidirect(&fixtures::k4p()), fixtures::torus().medial().clone()] {
        let order = SandpileGroup::new(&d).unwrap().order();
        assert_eq!(BigInt::from(enumerate_compatible_tours(&d).unwrap().len()), order);
    }
}
