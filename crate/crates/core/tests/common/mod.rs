// Independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::HashMap;

use phwg::arrivals::{rate, Arrival, CustomerId, RateModel};
use phwg::engine::{EventKind, TraceEvent};
use phwg::geometry::{intersects, Space};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Served {
    pub id: CustomerId,
    pub arrival: f64,
    pub start: f64,
    pub departure: f64,
}

/// Event-by-event simulation recomputing the active set and every rate from
/// scratch. Departures win ties with arrivals; equal departures go by id.
pub fn naive_simulate(sp: &Space, model: &RateModel, arrivals: &[Arrival]) -> Vec<Served> {
    let mut present: Vec<usize> = Vec::new();
    let mut z: Vec<f64> = arrivals.iter().map(|a| a.h).collect();
    let mut start: Vec<Option<f64>> = vec![None; arrivals.len()];
    let mut out = Vec::new();
    let mut next = 0;
    let mut t = 0.0;
    loop {
        let active: Vec<usize> = present
            .iter()
            .copied()
            .filter(|&i| {
                !present
                    .iter()
                    .any(|&j| j < i && intersects(&arrivals[j].set, &arrivals[i].set, sp).unwrap())
            })
            .collect();
        for &i in &active {
            start[i].get_or_insert(t);
        }
        let config: Vec<_> = active.iter().map(|&i| (arrivals[i].x, arrivals[i].id)).collect();
        let rates: Vec<f64> = active
            .iter()
            .map(|&i| rate(model, arrivals[i].id, &config, sp).unwrap())
            .collect();
        let dep = active
            .iter()
            .zip(&rates)
            .map(|(&i, &r)| (t + z[i] / r, i))
            .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let t_arr = arrivals.get(next).map_or(f64::INFINITY, |a| a.t);
        match dep {
            Some((q, i)) if q <= t_arr => {
                for (&j, &r) in active.iter().zip(&rates) {
                    z[j] -= (q - t) * r;
                }
                t = q;
                present.retain(|&j| j != i);
                out.push(Served {
                    id: arrivals[i].id,
                    arrival: arrivals[i].t,
                    start: start[i].unwrap(),
                    departure: q,
                });
            }
            _ if next < arrivals.len() => {
                for (&j, &r) in active.iter().zip(&rates) {
                    z[j] -= (t_arr - t) * r;
                }
                t = t_arr;
                present.push(next);
                next += 1;
            }
            _ => return out,
        }
    }
}

/// Rate-`c` Poisson hail: each customer starts once every earlier
/// conflicting customer has left and then works alone at rate `c`.
pub fn hail_recursion(sp: &Space, arrivals: &[Arrival], c: f64) -> Vec<Served> {
    let mut out: Vec<Served> = Vec::with_capacity(arrivals.len());
    for a in arrivals {
        let mut s = a.t;
        for (b, prev) in arrivals.iter().zip(&out) {
            if intersects(&b.set, &a.set, sp).unwrap() {
                s = s.max(prev.departure);
            }
        }
        out.push(Served {
            id: a.id,
            arrival: a.t,
            start: s,
            departure: s + a.h / c,
        });
    }
    out
}

/// Single-server FCFS queue at rate `c`.
pub fn fcfs_recursion(arrivals: &[Arrival], c: f64) -> Vec<Served> {
    let mut free = 0.0_f64;
    arrivals
        .iter()
        .map(|a| {
            let s = a.t.max(free);
            free = s + a.h / c;
            Served {
                id: a.id,
                arrival: a.t,
                start: s,
                departure: free,
            }
        })
        .collect()
}

/// Departure records of a trace, keyed by id.
pub fn departures(events: &[TraceEvent]) -> HashMap<CustomerId, Served> {
    let arrivals: HashMap<_, _> = events
        .iter()
        .filter(|e| e.kind == EventKind::Arrival)
        .map(|e| (e.id, e.time))
        .collect();
    events
        .iter()
        .filter(|e| e.kind == EventKind::Departure)
        .map(|e| {
            (
                e.id,
                Served {
                    id: e.id,
                    arrival: arrivals[&e.id],
                    start: e.start.expect("departures carry their start"),
                    departure: e.time,
                },
            )
        })
        .collect()
}

/// Work received by each customer, integrating from-scratch rates over the
/// piecewise constant active sets read off the trace.
pub fn served_work(sp: &Space, model: &RateModel, arrivals: &[Arrival], events: &[TraceEvent]) -> HashMap<CustomerId, f64> {
    let by_id: HashMap<_, _> = arrivals.iter().map(|a| (a.id, a)).collect();
    let deps = departures(events);
    // Service intervals [start, departure) define the active set at any time.
    let mut cuts: Vec<f64> = deps.values().flat_map(|s| [s.start, s.departure]).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut work: HashMap<CustomerId, f64> = HashMap::new();
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mid = 0.5 * (a + b);
        let mut active: Vec<_> = deps
            .values()
            .filter(|s| s.start <= mid && mid < s.departure)
            .map(|s| s.id)
            .collect();
        active.sort_unstable();
        let config: Vec<_> = active.iter().map(|id| (by_id[id].x, *id)).collect();
        for id in &active {
            *work.entry(*id).or_default() += (b - a) * rate(model, *id, &config, sp).unwrap();
        }
    }
    work
}

pub fn assert_close(a: f64, b: f64, rel: f64, what: &str) {
    let scale = a.abs().max(b.abs()).max(1.0);
    assert!((a - b).abs() <= rel * scale, "{what}: {a} vs {b}");
}
