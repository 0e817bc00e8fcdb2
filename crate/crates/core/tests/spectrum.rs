use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tilde_core::certificate::{verify_certificate, Certificate};
use tilde_core::engine::{
    engine_step, full_spectrum, replay, small_b_spectrum, Outcome, Route, SpectrumOptions,
    SpectrumVerdict,
};
use tilde_core::graph::{
    complete, complete_bipartite, cycle, min_degree, petersen, sample_conditioned, two_color,
    TwoColoring,
};
use tilde_core::oracle::oracle_spectrum;
use tilde_core::structures::{best_switch_from_path, verify_cycle, verify_tagged_cycle};
use tilde_core::{alpha_tilde, Graph, VertexSet};

fn holds(g: &Graph) -> bool {
    alpha_tilde(g).is_ok_and(|w| min_degree(g) >= w.k)
}

fn lengths(v: &SpectrumVerdict) -> Vec<usize> {
    v.certificate().expect("a certificate").lengths()
}

#[test]
fn balanced_complete_bipartite_is_the_exception() {
    let g = complete_bipartite(4, 4).unwrap();
    let v = full_spectrum(&g, SpectrumOptions::default()).unwrap();
    assert!(matches!(v, SpectrumVerdict::BipartiteException { .. }));
    assert_eq!(lengths(&v), vec![4, 6, 8]);
}

#[test]
fn below_the_threshold_is_not_applicable() {
    for g in [cycle(5).unwrap(), petersen()] {
        let v = full_spectrum(&g, SpectrumOptions::default()).unwrap();
        assert!(matches!(v, SpectrumVerdict::NotApplicable { .. }), "{v:?}");
    }
    let SpectrumVerdict::NotApplicable {
        min_degree,
        witness,
    } = full_spectrum(&cycle(5).unwrap(), SpectrumOptions::default()).unwrap()
    else {
        unreachable!()
    };
    assert_eq!((min_degree, witness.unwrap().k), (2, 3));
}

#[test]
fn conditioned_instance_matches_the_oracle() {
    let g = sample_conditioned(11, 0.8, 0, |g| {
        holds(g) && matches!(two_color(g), TwoColoring::OddCycle(_))
    })
    .unwrap();
    let v = full_spectrum(&g, SpectrumOptions::default()).unwrap();
    assert_eq!(lengths(&v), (3..=11).collect::<Vec<_>>());
    assert_eq!(lengths(&v), oracle_spectrum(&g).unwrap().lengths());
    verify_certificate(&Certificate::from_verdict(&g, &v), &g).unwrap();
}

#[test]
fn engine_route_certificate_is_sound() {
    let g = sample_conditioned(12, 0.75, 5, |g| {
        holds(g)
            && alpha_tilde(g).unwrap().b >= 3
            && matches!(two_color(g), TwoColoring::OddCycle(_))
    })
    .unwrap();
    let v = full_spectrum(&g, SpectrumOptions::default()).unwrap();
    let cert = v.certificate().unwrap();
    assert_eq!(cert.route, Route::Engine);
    for (len, c) in &cert.cycles {
        assert_eq!(c.len(), *len);
        verify_cycle(&g, c).unwrap();
    }
    for tc in &cert.tagged {
        verify_tagged_cycle(&g, tc).unwrap();
    }
    let w = alpha_tilde(&g).unwrap();
    for step in &cert.trace {
        assert!(replay(&g, w.a, w.b, step).unwrap());
    }
}

#[test]
fn small_b_examples() {
    let k5 = small_b_spectrum(&complete(5).unwrap()).unwrap();
    assert_eq!(k5.lengths(), vec![3, 4, 5]);
    let k6 = small_b_spectrum(&complete(6).unwrap()).unwrap();
    assert_eq!(k6.lengths(), vec![3, 4, 5, 6]);

    let g = sample_conditioned(10, 0.9, 1, |g| holds(g) && alpha_tilde(g).unwrap().b <= 2).unwrap();
    let cert = small_b_spectrum(&g).unwrap();
    assert_eq!(cert.lengths(), (3..=10).collect::<Vec<_>>());
    assert_eq!(cert.lengths(), oracle_spectrum(&g).unwrap().lengths());
    for (len, c) in &cert.cycles {
        assert_eq!(c.len(), *len);
        verify_cycle(&g, c).unwrap();
    }
}

/// Strips edges from `K_n` in random order while the condition keeps holding.
fn sparse_conditioned(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = complete(n).unwrap();
    let mut edges: Vec<_> = g.edges().collect();
    edges.shuffle(rng);
    let stop: f64 = rng.gen_range(0.0..0.05);
    for e in edges {
        let h = Graph::from_edges(n, g.edges().filter(|&f| f != e)).unwrap();
        if holds(&h) {
            g = h;
        }
        if rng.gen::<f64>() < stop {
            break;
        }
    }
    g
}

fn random_path(g: &Graph, len: usize, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
    for _ in 0..100 {
        let mut p = vec![rng.gen_range(0..g.n())];
        let mut used = VertexSet::singleton(p[0]);
        while p.len() < len {
            let next = (g.neighbours(*p.last().unwrap()) - used).to_vec();
            let Some(&v) = next.choose(rng) else { break };
            used.insert(v);
            p.push(v);
        }
        if p.len() == len {
            return Some(p);
        }
    }
    None
}

#[test]
fn engine_steps_always_extend_or_improve() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut steps = 0;
    let mut graphs = 0;
    while steps < 10_000 {
        let n = rng.gen_range(7..=14);
        let g = sparse_conditioned(n, &mut rng);
        let w = alpha_tilde(&g).unwrap();
        if w.b < 3 || matches!(two_color(&g), TwoColoring::Bipartite(_)) {
            continue;
        }
        graphs += 1;
        for _ in 0..40 {
            let len = rng.gen_range(4..=n);
            let Some(p) = random_path(&g, len, &mut rng) else {
                continue;
            };
            let Some(sw) = best_switch_from_path(&g, &p) else {
                continue;
            };
            let r = engine_step(&g, &sw, w.a, w.b).unwrap_or_else(|e| panic!("{e}\n{sw}"));
            match &r.outcome {
                Outcome::FoundTagged(tc) => {
                    verify_tagged_cycle(&g, tc).unwrap();
                    assert!(tc.len() == sw.ell() + 1 || tc.len() == sw.ell() + 2);
                }
                Outcome::BetterSwitch(next) => {
                    next.verify(&g).unwrap();
                    assert!(next.improves_on(&sw));
                    assert_eq!(next.ell(), sw.ell());
                }
            }
            assert!(replay(&g, w.a, w.b, &r.trace).unwrap());
            steps += 1;
        }
    }
    assert!(graphs > 0);
}

#[test]
fn sparse_conditioned_graphs_are_pancyclic() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let n = rng.gen_range(5..=11);
        let g = sparse_conditioned(n, &mut rng);
        let v = full_spectrum(&g, SpectrumOptions::default()).unwrap();
        assert_eq!(lengths(&v), oracle_spectrum(&g).unwrap().lengths());
        verify_certificate(&Certificate::from_verdict(&g, &v), &g).unwrap();
    }
}
