use std::sync::{Arc, Mutex};

use evokit::engine::{
    BestAverageWorstStatistics, SimpleEvolution, Statistics, SymbolicRegressionSettings,
};
use evokit::evaluation::RegressionProblem;
use evokit::events::{Event, EventKind};
use evokit::gp::TerminalSet;
use evokit::Error;
use proptest::prelude::*;

fn settings(seed: u64, pop: usize, gens: usize) -> SymbolicRegressionSettings {
    SymbolicRegressionSettings {
        seed,
        population_size: pop,
        max_generation: gens,
        max_workers: 1,
        termination: None,
        ..SymbolicRegressionSettings::default()
    }
}

fn evolution(s: &SymbolicRegressionSettings) -> SimpleEvolution {
    let cfg = s
        .build(
            Arc::new(RegressionProblem::reference()),
            Arc::new(TerminalSet::default()),
        )
        .unwrap();
    SimpleEvolution::new(cfg).unwrap()
}

fn record_all(evo: &mut SimpleEvolution) -> Arc<Mutex<Vec<(EventKind, usize)>>> {
    let log = Arc::new(Mutex::new(Vec::new()));
    for kind in EventKind::ALL {
        let sink = log.clone();
        evo.events_mut().subscribe(kind, move |e| {
            let g = match e {
                Event::EvolutionStarted { .. } => 0,
                Event::GenerationStarted { generation, .. }
                | Event::FitnessEvaluated { generation, .. }
                | Event::GenerationEnded { generation, .. } => *generation,
                Event::EvolutionEnded { generations, .. } => *generations,
            };
            sink.lock().unwrap().push((e.kind(), g));
            Ok(())
        });
    }
    log
}

#[test]
fn event_order_per_generation() {
    let s = settings(2, 12, 3);
    let mut evo = evolution(&s);
    let log = record_all(&mut evo);
    evo.evolve().unwrap();
    let log = log.lock().unwrap();

    assert_eq!(log.first(), Some(&(EventKind::EvolutionStarted, 0)));
    assert_eq!(log.last(), Some(&(EventKind::EvolutionEnded, 3)));
    // generation 0 evaluates the whole initial population
    let initial = log
        .iter()
        .take_while(|(k, _)| *k != EventKind::GenerationStarted)
        .count();
    assert_eq!(initial, 1 + 12);
    for g in 1..=3 {
        let slice: Vec<EventKind> = log
            .iter()
            .filter(|(_, gen)| *gen == g)
            .map(|(k, _)| *k)
            .collect();
        let slice = if g == 3 {
            &slice[..slice.len() - 1]
        } else {
            &slice[..]
        };
        assert_eq!(slice.first(), Some(&EventKind::GenerationStarted));
        assert_eq!(slice.last(), Some(&EventKind::GenerationEnded));
        assert!(slice[1..slice.len() - 1]
            .iter()
            .all(|k| *k == EventKind::FitnessEvaluated));
    }
}

#[test]
fn fitness_events_arrive_in_id_order() {
    let mut evo = evolution(&settings(4, 20, 2));
    let ids = Arc::new(Mutex::new(Vec::new()));
    let sink = ids.clone();
    evo.events_mut()
        .subscribe(EventKind::FitnessEvaluated, move |e| {
            if let Event::FitnessEvaluated {
                generation,
                individual,
                ..
            } = e
            {
                assert!(individual.is_evaluated());
                sink.lock().unwrap().push((*generation, individual.id()));
            }
            Ok(())
        });
    evo.evolve().unwrap();
    let ids = ids.lock().unwrap();
    assert!(ids.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn one_generation_run() {
    let mut evo = evolution(&settings(0, 10, 1));
    let log = record_all(&mut evo);
    let out = evo.evolve().unwrap();
    assert_eq!(out.generations, 1);
    assert_eq!(out.stats.len(), 1);
    assert!(!out.terminated_early);
    let started = log
        .lock()
        .unwrap()
        .iter()
        .filter(|(k, _)| *k == EventKind::GenerationStarted)
        .count();
    assert_eq!(started, 1);
}

#[test]
fn hook_error_aborts_run() {
    let mut evo = evolution(&settings(0, 10, 5));
    evo.events_mut()
        .subscribe(EventKind::GenerationEnded, |_| Err("stop".into()));
    assert!(matches!(evo.evolve(), Err(Error::Hook(_))));
}

#[test]
fn statistics_collector_matches_outcome() {
    let mut s = settings(8, 30, 6);
    let stats = Arc::new(BestAverageWorstStatistics::new());
    s.statistics = vec![stats.clone() as Arc<dyn Statistics>];
    let mut evo = evolution(&s);
    let out = evo.evolve().unwrap().clone();
    assert_eq!(stats.rows(), out.stats);
    for row in &out.stats {
        assert!(row.best <= row.average && row.average <= row.worst);
    }
}

#[test]
fn worker_counts_agree() {
    let mut a = settings(13, 40, 8);
    let mut b = a.clone();
    a.max_workers = 1;
    b.max_workers = 4;
    let oa = evolution(&a).evolve().unwrap().clone();
    let ob = evolution(&b).evolve().unwrap().clone();
    assert_eq!(oa.stats, ob.stats);
    assert_eq!(oa.best.genome().to_text(), ob.best.genome().to_text());
    assert_eq!(oa.evaluations, ob.evaluations);
}

#[test]
fn execute_requires_a_run() {
    let evo = evolution(&settings(0, 4, 1));
    let bindings = [("x".to_string(), 1.0)].into_iter().collect();
    assert!(matches!(evo.execute(&bindings), Err(Error::NotEvolved)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn elitism_keeps_best_and_size(seed in 0u64..1000, pop in 5usize..30, gens in 1usize..8) {
        let mut evo = evolution(&settings(seed, pop, gens));
        let sizes = Arc::new(Mutex::new(Vec::new()));
        let sink = sizes.clone();
        evo.events_mut().subscribe(EventKind::GenerationEnded, move |e| {
            if let Event::GenerationEnded { population, .. } = e {
                sink.lock().unwrap().push(population.individual_count());
            }
            Ok(())
        });
        let out = evo.evolve().unwrap();
        prop_assert!(out.stats.windows(2).all(|w| w[1].best <= w[0].best));
        prop_assert!(sizes.lock().unwrap().iter().all(|&n| n == pop));
        let best = out.best.fitness().value().unwrap();
        prop_assert!(out.stats.iter().all(|r| best <= r.best));
    }
}
