//! Synchronous event bus through which statistics observe a run.
//!
//! Payloads hand out shared references only, so subscribers can read but
//! never mutate population state.

use std::collections::HashMap;
use std::fmt;

use crate::engine::GenerationStats;
use crate::error::{Error, Result};
use crate::individual::Individual;
use crate::population::Population;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    EvolutionStarted,
    GenerationStarted,
    FitnessEvaluated,
    GenerationEnded,
    EvolutionEnded,
}

impl EventKind {
    pub const ALL: [EventKind; 5] = [
        EventKind::EvolutionStarted,
        EventKind::GenerationStarted,
        EventKind::FitnessEvaluated,
        EventKind::GenerationEnded,
        EventKind::EvolutionEnded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EventKind::EvolutionStarted => "evolution_started",
            EventKind::GenerationStarted => "generation_started",
            EventKind::FitnessEvaluated => "fitness_evaluated",
            EventKind::GenerationEnded => "generation_ended",
            EventKind::EvolutionEnded => "evolution_ended",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Event<'a> {
    EvolutionStarted {
        population: &'a Population,
    },
    GenerationStarted {
        generation: usize,
        population: &'a Population,
    },
    FitnessEvaluated {
        generation: usize,
        subpopulation: usize,
        individual: &'a Individual,
    },
    GenerationEnded {
        generation: usize,
        /// One row per subpopulation, in index order.
        stats: &'a [GenerationStats],
        population: &'a Population,
    },
    EvolutionEnded {
        generations: usize,
        best: &'a Individual,
        terminated_early: bool,
    },
}

impl Event<'_> {
    pub fn kind(&self) -> EventKind {
        match self {
            Event::EvolutionStarted { .. } => EventKind::EvolutionStarted,
            Event::GenerationStarted { .. } => EventKind::GenerationStarted,
            Event::FitnessEvaluated { .. } => EventKind::FitnessEvaluated,
            Event::GenerationEnded { .. } => EventKind::GenerationEnded,
            Event::EvolutionEnded { .. } => EventKind::EvolutionEnded,
        }
    }
}

pub type HookResult = std::result::Result<(), Box<dyn std::error::Error + Send + Sync>>;

type Callback = Box<dyn FnMut(&Event<'_>) -> HookResult + Send>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubscriptionId(u64);

#[derive(Default)]
pub struct EventBus {
    subscribers: HashMap<EventKind, Vec<(SubscriptionId, Callback)>>,
    next_id: u64,
}

impl fmt::Debug for EventBus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: HashMap<_, _> = self
            .subscribers
            .iter()
            .map(|(k, v)| (k.name(), v.len()))
            .collect();
        f.debug_struct("EventBus")
            .field("subscribers", &counts)
            .finish()
    }
}

impl EventBus {
    pub fn new() -> Self {
        EventBus::default()
    }

    pub fn subscribe<F>(&mut self, kind: EventKind, callback: F) -> SubscriptionId
    where
        F: FnMut(&Event<'_>) -> HookResult + Send + 'static,
    {
        let id = SubscriptionId(self.next_id);
        self.next_id += 1;
        self.subscribers
            .entry(kind)
            .or_default()
            .push((id, Box::new(callback)));
        id
    }

    /// Removes a subscription; returns whether it existed.
    pub fn unsubscribe(&mut self, id: SubscriptionId) -> bool {
        for subs in self.subscribers.values_mut() {
            if let Some(pos) = subs.iter().position(|(sid, _)| *sid == id) {
                drop(subs.remove(pos));
                return true;
            }
        }
        false
    }

    pub fn subscriber_count(&self, kind: EventKind) -> usize {
        self.subscribers.get(&kind).map_or(0, Vec::len)
    }

    /// Invokes every subscriber of the event's kind in registration order and
    /// returns how many ran. The first failing subscriber aborts the publish.
    pub fn publish(&mut self, event: &Event<'_>) -> Result<usize> {
        let Some(subs) = self.subscribers.get_mut(&event.kind()) else {
            return Ok(0);
        };
        for (_, callback) in subs.iter_mut() {
            callback(event).map_err(|e| Error::Hook(format!("{}: {e}", event.kind())))?;
        }
        Ok(subs.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::{Arc, Mutex};

    fn with_population<R>(f: impl FnOnce(&Population) -> R) -> R {
        use crate::evaluation::{RegressionProblem, SymbolicRegressionEvaluator};
        use crate::gp::{FunctionSet, GrowCreator, TerminalSet};
        use crate::population::Subpopulation;
        let eval = SymbolicRegressionEvaluator::new(Arc::new(RegressionProblem::reference()), 0.0)
            .unwrap();
        let creator = GrowCreator {
            max_depth: 2,
            functions: Arc::new(FunctionSet::default()),
            terminals: Arc::new(TerminalSet::default()),
        };
        let pop = Population::single(Subpopulation::new(Arc::new(eval), Arc::new(creator)));
        f(&pop)
    }

    #[test]
    fn publish_without_subscribers_is_noop() {
        let mut bus = EventBus::new();
        with_population(|p| {
            assert_eq!(
                bus.publish(&Event::EvolutionStarted { population: p })
                    .unwrap(),
                0
            );
        });
    }

    #[test]
    fn subscribers_run_once_in_order() {
        let log = Arc::new(Mutex::new(Vec::new()));
        let mut bus = EventBus::new();
        for tag in ["a", "b", "c"] {
            let log = log.clone();
            bus.subscribe(EventKind::GenerationStarted, move |_| {
                log.lock().unwrap().push(tag);
                Ok(())
            });
        }
        with_population(|p| {
            let n = bus
                .publish(&Event::GenerationStarted {
                    generation: 1,
                    population: p,
                })
                .unwrap();
            assert_eq!(n, 3);
        });
        assert_eq!(*log.lock().unwrap(), ["a", "b", "c"]);
    }

    #[test]
    fn events_are_isolated() {
        let hits = Arc::new(Mutex::new(0));
        let mut bus = EventBus::new();
        let h = hits.clone();
        bus.subscribe(EventKind::GenerationEnded, move |_| {
            *h.lock().unwrap() += 1;
            Ok(())
        });
        with_population(|p| {
            bus.publish(&Event::EvolutionStarted { population: p })
                .unwrap();
        });
        assert_eq!(*hits.lock().unwrap(), 0);
    }

    #[test]
    fn failing_subscriber_aborts_publish() {
        let later = Arc::new(Mutex::new(false));
        let mut bus = EventBus::new();
        bus.subscribe(EventKind::EvolutionStarted, |_| Err("boom".into()));
        let l = later.clone();
        bus.subscribe(EventKind::EvolutionStarted, move |_| {
            *l.lock().unwrap() = true;
            Ok(())
        });
        let err = with_population(|p| bus.publish(&Event::EvolutionStarted { population: p }));
        assert!(matches!(err, Err(Error::Hook(msg)) if msg.contains("boom")));
        assert!(!*later.lock().unwrap());
    }

    #[test]
    fn subscribers_see_a_read_only_view() {
        let seen = Arc::new(Mutex::new(None));
        let mut bus = EventBus::new();
        let s = seen.clone();
        bus.subscribe(EventKind::EvolutionStarted, move |e| {
            if let Event::EvolutionStarted { population } = e {
                // only shared access is possible through the payload
                let p: &Population = population;
                *s.lock().unwrap() = Some(p.individual_count());
            }
            Ok(())
        });
        with_population(|p| {
            let before = p.individual_count();
            bus.publish(&Event::EvolutionStarted { population: p })
                .unwrap();
            assert_eq!(p.individual_count(), before);
        });
        assert_eq!(*seen.lock().unwrap(), Some(0));
    }

    #[test]
    fn unsubscribe_removes_callback() {
        let mut bus = EventBus::new();
        let id = bus.subscribe(EventKind::EvolutionStarted, |_| Ok(()));
        assert_eq!(bus.subscriber_count(EventKind::EvolutionStarted), 1);
        assert!(bus.unsubscribe(id));
        assert!(!bus.unsubscribe(id));
        assert_eq!(bus.subscriber_count(EventKind::EvolutionStarted), 0);
    }

    #[test]
    fn names_round_trip() {
        for k in EventKind::ALL {
            assert_eq!(EventKind::from_name(k.name()), Some(k));
        }
        assert_eq!(EventKind::from_name("nope"), None);
    }
}
