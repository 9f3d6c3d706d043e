mod common;

use common::{adversary_graphs, basis_enumeration_feasible, ex, exs, hall_holds, min_cut};
use powergame::balanced::{beta, is_balanced, necessary_condition, AdversaryIncidence};
use powergame::generators::{planted_bipartite, random_bipartite, random_clique};
use powergame::model::EnvironmentGraph;
use powergame::scalar::Exact;
use powergame::solvers::{
    bipartition, extended_power_condition, lp_feasibility, max_flow, solve, solve_bipartite,
    solve_complete, three_player_closed_form, FlowNetwork, Method,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bipartite_instances() -> impl Strategy<Value = EnvironmentGraph<Exact>> {
    (
        1usize..=5,
        1usize..=5,
        0.2f64..1.0,
        any::<u64>(),
        any::<bool>(),
    )
        .prop_map(|(l, r, density, seed, planted)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            if planted {
                planted_bipartite(l, r, density, 6, &mut rng)
            } else {
                random_bipartite(l, r, density, 0..=12, &mut rng)
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn simplex_agrees_with_basis_enumeration(g in adversary_graphs(5, 8)) {
        let inc = AdversaryIncidence::new(&g);
        let found = lp_feasibility(&inc).unwrap();
        prop_assert_eq!(found.is_some(), basis_enumeration_feasible(&g));
        if let Some(v) = found {
            prop_assert!(inc.check_demand(v.as_slice()).is_ok());
        }
    }

    #[test]
    fn dispatcher_output_is_balanced(g in common::graphs(6, 10)) {
        let s = solve(&g).unwrap();
        if let Some(u) = s.equilibrium() {
            prop_assert!(is_balanced(&g, u));
            let v = beta(&g, u).unwrap();
            prop_assert!(AdversaryIncidence::new(&g).check_demand(v.as_slice()).is_ok());
        }
        // The dispatcher's verdict matches the general-purpose route.
        let lp = lp_feasibility(&AdversaryIncidence::new(&g)).unwrap();
        prop_assert_eq!(s.is_feasible(), lp.is_some());
    }

    #[test]
    fn peeling_matches_power_condition_and_simplex(
        n in 2usize..=7,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g: EnvironmentGraph<Exact> = random_clique(n, 0..=15, &mut rng);
        let peeled = solve_complete(&g).unwrap();
        let condition = necessary_condition(&g).holds();
        let lp = lp_feasibility(&AdversaryIncidence::new(&g)).unwrap();
        prop_assert_eq!(peeled.is_some(), lp.is_some());
        // On pairs equal powers are needed; beyond that the condition decides.
        if n >= 3 {
            prop_assert_eq!(peeled.is_some(), condition);
        } else {
            prop_assert_eq!(peeled.is_some(), g.power(0) == g.power(1));
        }
        if let Some(u) = peeled {
            prop_assert!(is_balanced(&g, &u));
        }
    }

    #[test]
    fn bipartite_routes_agree(g in bipartite_instances()) {
        let b = bipartition(&g).expect("camps are bipartite by construction");
        let hall = extended_power_condition(&g, &b, 20).unwrap();
        let flow = solve_bipartite(&g, &b).unwrap();
        let lp = lp_feasibility(&AdversaryIncidence::new(&g)).unwrap();
        prop_assert_eq!(hall.holds(), flow.equilibrium().is_some());
        prop_assert_eq!(hall.holds(), lp.is_some());
        // Independent subset check on both camps.
        prop_assert_eq!(hall.holds(), hall_holds(&g, &b.left) && hall_holds(&g, &b.right));
        if let Some(u) = flow.equilibrium() {
            prop_assert!(is_balanced(&g, u));
            prop_assert!(beta(&g, u).unwrap().as_slice().iter().all(|x| x.is_integer()));
        }
        if let Some(v) = hall.violation {
            prop_assert!(v.neighbourhood_power < v.subset_power);
        }
    }

    #[test]
    fn max_flow_equals_min_cut(g in bipartite_instances()) {
        let b = bipartition(&g).unwrap();
        let net = FlowNetwork::build(&g, &b).unwrap();
        let flow = max_flow(&net);
        prop_assert_eq!(flow.value, min_cut(&net));
        let camp = |side: &[usize]| side.iter().fold(ex(0), |a, &i| a + g.power(i));
        let (left, right) = (camp(&b.left), camp(&b.right));
        prop_assert!(flow.value <= left.min(right));
        for (arc, f) in net.arcs().iter().zip(&flow.flows) {
            prop_assert!(*f >= ex(0) && *f <= arc.capacity);
        }
        if flow.value == left && flow.value == right {
            prop_assert!(solve_bipartite(&g, &b).unwrap().equilibrium().is_some());
        }
    }

    #[test]
    fn triangle_solution_is_the_closed_form(p in prop::collection::vec(0i64..=30, 3)) {
        let g = EnvironmentGraph::new(exs(&p), &[], &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let lp = lp_feasibility(&AdversaryIncidence::new(&g)).unwrap();
        let closed = three_player_closed_form(ex(p[0]), ex(p[1]), ex(p[2]));
        prop_assert_eq!(lp.map(|v| v.into_vec()), closed.map(|v| v.into_vec()));
    }

    #[test]
    fn float_and_exact_verdicts_agree(g in adversary_graphs(6, 10)) {
        let exact = solve(&g).unwrap();
        let float = solve(&g.to_f64()).unwrap();
        prop_assert_eq!(exact.method, float.method);
        prop_assert_eq!(exact.is_feasible(), float.is_feasible());
        if let Some(u) = float.equilibrium() {
            prop_assert!(is_balanced(&g.to_f64(), u));
        }
    }
}

#[test]
fn five_cycle_is_routed_to_the_simplex() {
    let cycle = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)];
    let g = EnvironmentGraph::new(exs(&[2; 5]), &[], &cycle).unwrap();
    let s = solve(&g).unwrap();
    assert_eq!(s.method, Method::Lp);
    assert!(basis_enumeration_feasible(&g));
    assert_eq!(
        beta(&g, s.equilibrium().unwrap()).unwrap().into_vec(),
        exs(&[1; 5])
    );
}

#[test]
fn odd_cycle_with_uneven_powers() {
    // On an odd cycle the system has a unique solution, here with a
    // negative entry.
    let cycle = [(0, 1), (1, 2), (0, 2)];
    let g = EnvironmentGraph::new(exs(&[1, 1, 4]), &[], &cycle).unwrap();
    assert!(!basis_enumeration_feasible(&g));
    assert!(!solve(&g).unwrap().is_feasible());
}
