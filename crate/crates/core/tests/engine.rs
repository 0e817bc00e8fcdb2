use tilde_core::engine::{
    compute_s, enforce_claim_before_t, enforce_claim_outside, engine_step, extend,
    find_initial_tilde, find_triangle_or_bipartite, replay, resolve_case, Case, Dichotomy,
    EngineError, Outcome, RotationContext, Rule, SetS, SpectrumOptions,
};
use tilde_core::graph::{complete, complete_bipartite, sample_conditioned, wheel};
use tilde_core::oracle::oracle_find_tilde;
use tilde_core::structures::verify_tagged_cycle;
use tilde_core::{alpha_tilde, Graph, Switch, VertexSet};

/// Path `0..len`, apex `len` adjacent to positions `t..=t+s`, plus `extra`.
fn fixture(len: usize, t: usize, s: usize, extra: &[(usize, usize)]) -> (Graph, Switch) {
    let apex = len;
    let mut edges: Vec<(usize, usize)> = (1..len).map(|i| (i - 1, i)).collect();
    edges.extend((t..=t + s).map(|p| (apex, p - 1)));
    edges.extend_from_slice(extra);
    let n = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap() + 1;
    let g = Graph::from_edges(n, edges).unwrap();
    let sw = Switch {
        path: (0..len).collect(),
        apex,
        t,
        s,
    };
    sw.verify(&g).unwrap();
    (g, sw)
}

fn better(outcome: &Outcome) -> &Switch {
    match outcome {
        Outcome::BetterSwitch(sw) => sw,
        other => panic!("expected a better switch, got {other:?}"),
    }
}

fn found(outcome: &Outcome) -> usize {
    match outcome {
        Outcome::FoundTagged(tc) => tc.len(),
        other => panic!("expected a tagged cycle, got {other:?}"),
    }
}

fn holds_with_large_b(g: &Graph) -> bool {
    alpha_tilde(g).is_ok_and(|w| w.b >= 3 && tilde_core::graph::min_degree(g) >= w.k)
}

fn context(case: Case) -> RotationContext {
    RotationContext {
        s_set: VertexSet::EMPTY,
        min_s: 0,
        case,
        t_set: VertexSet::EMPTY,
        t_out: VertexSet::EMPTY,
        a_set: VertexSet::EMPTY,
        t_star: Vec::new(),
        q_set: VertexSet::EMPTY,
    }
}

#[test]
fn triangle_or_bipartite() {
    let k33 = complete_bipartite(3, 3).unwrap();
    assert!(matches!(
        find_triangle_or_bipartite(&k33).unwrap(),
        Dichotomy::Bipartite(_)
    ));
    assert!(matches!(
        find_triangle_or_bipartite(&complete(4).unwrap()).unwrap(),
        Dichotomy::Triangle(_)
    ));
    let k33_plus = k33.with_edge(0, 1).unwrap();
    let Dichotomy::Triangle([x, y, z]) = find_triangle_or_bipartite(&k33_plus).unwrap() else {
        panic!("expected a triangle");
    };
    assert!(k33_plus.has_edge(x, y) && k33_plus.has_edge(y, z) && k33_plus.has_edge(x, z));
}

#[test]
fn initial_tilde_examples() {
    let w6 = wheel(6).unwrap();
    let tc = find_initial_tilde(&w6).unwrap();
    verify_tagged_cycle(&w6, &tc).unwrap();

    // diamond 0-1-2-3 with chord 1-3, plus universal vertex 4
    let g = Graph::from_edges(
        5,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (1, 3),
            (4, 0),
            (4, 1),
            (4, 2),
            (4, 3),
        ],
    )
    .unwrap();
    let tc = find_initial_tilde(&g).unwrap();
    verify_tagged_cycle(&g, &tc).unwrap();
    assert_eq!(tc.len(), 3);

    let g = sample_conditioned(9, 0.8, 3, holds_with_large_b).unwrap();
    let tc = find_initial_tilde(&g).unwrap();
    verify_tagged_cycle(&g, &tc).unwrap();
    assert!(matches!(tc.len(), 3 | 4));
    assert!(oracle_find_tilde(&g, tc.len()).unwrap().is_some());
}

#[test]
fn closing_edge_gives_one_longer() {
    let (g, sw) = fixture(4, 1, 1, &[(0, 3)]);
    let r = engine_step(&g, &sw, 1, 3).unwrap();
    assert_eq!(r.trace.rule, Rule::ClosingEdge);
    assert_eq!(found(&r.outcome), 4);
    let SetS::Resolved(r) = compute_s(&g, &sw, 1, 3).unwrap() else {
        panic!("closing edge should resolve");
    };
    assert_eq!(found(&r.outcome), 4);
}

#[test]
fn p2_on_apex_at_t1() {
    let (g, sw) = fixture(4, 1, 1, &[(4, 3)]);
    let r = engine_step(&g, &sw, 1, 3).unwrap();
    assert_eq!(r.trace.rule, Rule::P2AdjacentApex);
    let len = found(&r.outcome);
    assert!(len == 4 || len == 5);
}

#[test]
fn outside_neighbour_of_p2_lowers_t() {
    let (g, sw) = fixture(5, 2, 1, &[(4, 6)]);
    let r = enforce_claim_outside(&g, &sw, 1, 3).unwrap().unwrap();
    assert_eq!(r.trace.rule, Rule::P2Outside);
    assert_eq!(better(&r.outcome).t, 1);

    let (g, sw) = fixture(5, 2, 1, &[]);
    assert!(enforce_claim_outside(&g, &sw, 1, 3).unwrap().is_none());
}

#[test]
fn early_neighbour_of_p2_reroutes() {
    let (g, sw) = fixture(6, 3, 1, &[(5, 0)]);
    let r = enforce_claim_before_t(&g, &sw).unwrap().unwrap();
    let next = better(&r.outcome);
    assert_eq!((next.t, next.s), (2, 1));

    let (g, sw) = fixture(6, 3, 1, &[]);
    assert!(enforce_claim_before_t(&g, &sw).unwrap().is_none());

    let (g, sw) = fixture(7, 4, 1, &[(6, 1)]);
    let r = enforce_claim_before_t(&g, &sw).unwrap().unwrap();
    assert_eq!(better(&r.outcome).t, 2);
}

#[test]
fn double_edge_widens_the_apex() {
    let (g, sw) = fixture(6, 2, 1, &[(6, 5), (2, 5)]);
    let r = resolve_case(&g, &sw, &context(Case::B), 2, 3).unwrap();
    assert_eq!(r.trace.rule, Rule::T2DoubleEdge);
    let next = better(&r.outcome);
    assert_eq!((next.t, next.s), (2, 2));
}

#[test]
fn p1_on_t_and_before_lowers_t() {
    let (g, sw) = fixture(7, 3, 1, &[(0, 2)]);
    let r = resolve_case(&g, &sw, &context(Case::A), 1, 3).unwrap();
    assert_eq!(r.trace.rule, Rule::T3P1TAndBefore);
    assert!(better(&r.outcome).t < 3);
}

#[test]
fn planted_case_a_edge_at_t1() {
    let (g, sw) = fixture(7, 1, 1, &[(0, 3), (2, 6)]);
    assert_eq!(g.n(), 8);
    let SetS::Context(ctx) = compute_s(&g, &sw, 1, 2).unwrap() else {
        panic!("expected a context");
    };
    assert_eq!(ctx.case, Case::A);
    assert_eq!(ctx.s_set.to_vec(), vec![5]);
    let r = engine_step(&g, &sw, 1, 2).unwrap();
    assert_eq!(r.trace.rule, Rule::T1CaseA);
    assert_eq!(r.trace.edge, Some((2, 6)));
    let Outcome::FoundTagged(tc) = &r.outcome else {
        panic!("expected a tagged cycle");
    };
    assert_eq!(tc.len(), 7);
    verify_tagged_cycle(&g, tc).unwrap();
    assert!(replay(&g, 1, 2, &r.trace).unwrap());
}

#[test]
fn extend_examples() {
    let g = sample_conditioned(10, 0.8, 11, holds_with_large_b).unwrap();
    let w = alpha_tilde(&g).unwrap();
    let tc = oracle_find_tilde(&g, 4).unwrap().expect("a tagged 4-cycle");
    let report = extend(&g, &tc, w.a, w.b, SpectrumOptions::default()).unwrap();
    verify_tagged_cycle(&g, &report.tagged).unwrap();
    assert!(matches!(report.tagged.len(), 5 | 6));
    assert!(report.improvements <= g.n() * g.n());
    assert!(!report.oracle_assisted);
    for step in &report.trace {
        assert!(replay(&g, w.a, w.b, step).unwrap());
    }

    let top = oracle_find_tilde(&g, 9).unwrap().expect("a tagged 9-cycle");
    assert!(matches!(
        extend(&g, &top, w.a, w.b, SpectrumOptions::default()),
        Err(EngineError::Precondition(_))
    ));
}
