//! Pareto dominance for two minimized objectives.

use alloc::vec::Vec;

/// A point in objective space with whatever it scores.
#[derive(Clone, Debug, PartialEq)]
pub struct ScoredPoint<T> {
    pub x: f64,
    pub y: f64,
    pub payload: T,
}

impl<T> ScoredPoint<T> {
    pub fn new(x: f64, y: f64, payload: T) -> Self {
        debug_assert!(x.is_finite() && y.is_finite());
        ScoredPoint { x, y, payload }
    }

    pub fn coords(&self) -> (f64, f64) {
        (self.x, self.y)
    }
}

/// `a` is no worse on both objectives and strictly better on one.
pub fn dominates(a: (f64, f64), b: (f64, f64)) -> bool {
    a.0 <= b.0 && a.1 <= b.1 && (a.0 < b.0 || a.1 < b.1)
}

/// Points not dominated by any other point, ordered by `(x, y)`. Exact
/// duplicates dominate each other only weakly, so all copies survive.
pub fn pareto_front<T>(points: Vec<ScoredPoint<T>>) -> Vec<ScoredPoint<T>> {
    let mut points = points;
    points.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    let mut front = Vec::new();
    let mut best_y = f64::INFINITY;
    // (x, y) of the group currently being kept, if any
    let mut kept: Option<(f64, f64)> = None;
    for p in points {
        if kept == Some(p.coords()) {
            front.push(p);
        } else if p.y < best_y {
            best_y = p.y;
            kept = Some(p.coords());
            front.push(p);
        } else {
            kept = None;
        }
    }
    front
}

/// Area dominated by `points` and bounded by `reference` (both objectives
/// minimized). Points outside the reference box contribute nothing.
pub fn hypervolume(points: &[(f64, f64)], reference: (f64, f64)) -> f64 {
    let mut pts: Vec<(f64, f64)> = points.iter().copied().filter(|&(x, y)| x < reference.0 && y < reference.1).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut area = 0.0;
    let mut ceiling = reference.1;
    for (x, y) in pts {
        if y < ceiling {
            area += (reference.0 - x) * (ceiling - y);
            ceiling = y;
        }
    }
    area
}
