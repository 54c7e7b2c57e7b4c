//! Breadth-first searches over group elements, keyed by where they move the origin.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::hypgeom::MobiusTransform;
use crate::word::Word;

/// Side of the index cells in hyperbolic polar coordinates `(r, θ)`.
const CELL: f64 = 1e-4;
/// Orbit points closer than this, relative to their distance from the
/// origin in hyperboloid coordinates, are the same element. Rounding in a
/// product grows with its displacement, so an absolute threshold fails far out.
const SAME_POINT: f64 = 1e-6;
const ANGLE_CELLS: i64 = (2.0 * std::f64::consts::PI / CELL) as i64 + 1;

/// `cosh d(i, m·i)`.
#[inline]
pub(crate) fn cosh_displacement(m: &MobiusTransform) -> f64 {
    0.5 * (m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d)
}

#[inline]
fn orbit_xy(m: &MobiusTransform) -> (f64, f64) {
    (
        0.5 * (m.a * m.a + m.b * m.b - m.c * m.c - m.d * m.d),
        m.a * m.c + m.b * m.d,
    )
}

/// Cell coordinates and the neighbouring cells a near match could fall in.
fn cells(p: (f64, f64)) -> ((i64, i64), [i64; 2], [i64; 2]) {
    let fr = p.0.hypot(p.1).asinh() / CELL;
    let ft = (p.1.atan2(p.0) + std::f64::consts::PI) / CELL;
    let (cr, ct) = (fr.floor() as i64, (ft.floor() as i64).rem_euclid(ANGLE_CELLS));
    let near = |f: f64| -> i64 {
        let r = f - f.floor();
        if r < 0.1 {
            -1
        } else if r > 0.9 {
            1
        } else {
            0
        }
    };
    ((cr, ct), [0, near(fr)], [0, near(ft)])
}

/// Set of orbit points with approximate lookup.
#[derive(Default)]
pub(crate) struct OrbitIndex {
    cells: HashMap<(i64, i64), Vec<u32>>,
    points: Vec<(f64, f64)>,
}

impl OrbitIndex {
    fn find(&self, p: (f64, f64)) -> Option<u32> {
        let ((cr, ct), drs, dts) = cells(p);
        let tol = SAME_POINT * (1.0 + p.0.abs() + p.1.abs());
        for (i, &dr) in drs.iter().enumerate() {
            for (j, &dt) in dts.iter().enumerate() {
                if (i > 0 && dr == 0) || (j > 0 && dt == 0) {
                    continue;
                }
                let key = (cr + dr, (ct + dt).rem_euclid(ANGLE_CELLS));
                let Some(ids) = self.cells.get(&key) else {
                    continue;
                };
                for &id in ids {
                    let q = self.points[id as usize];
                    if (q.0 - p.0).abs() + (q.1 - p.1).abs() < tol {
                        return Some(id);
                    }
                }
            }
        }
        None
    }

    /// Inserts unless present; returns whether it was new.
    fn insert(&mut self, p: (f64, f64)) -> bool {
        if self.find(p).is_some() {
            return false;
        }
        let id = self.points.len() as u32;
        self.points.push(p);
        self.cells.entry(cells(p).0).or_default().push(id);
        true
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Node {
    pub m: MobiusTransform,
    pub parent: u32,
    /// Index of the step that produced this node; unused at the root.
    pub step: u16,
}

/// Elements reached by a search, with the steps that produced them.
pub(crate) struct Ball {
    pub nodes: Vec<Node>,
    /// The search stopped at the depth limit with work left.
    pub truncated: bool,
}

impl Ball {
    pub fn word(&self, mut id: u32, steps: &[Word]) -> Word {
        let mut path = Vec::new();
        while id != 0 {
            let n = &self.nodes[id as usize];
            path.push(n.step as usize);
            id = n.parent;
        }
        path.iter()
            .rev()
            .fold(Word::empty(), |w, &s| w.concat(&steps[s]))
    }
}

/// All elements reachable from the identity by right-multiplying by
/// `steps`, through elements `m` with `cosh d(i, m·i) ≤ cosh(radius)`.
///
/// Levels are expanded in parallel and merged in frontier order, so the
/// result does not depend on the thread count.
pub(crate) fn search(steps: &[MobiusTransform], radius: f64, max_depth: usize, max_nodes: usize) -> Ball {
    let bound = radius.cosh();
    let mut index = OrbitIndex::default();
    index.insert(orbit_xy(&MobiusTransform::IDENTITY));
    let mut nodes = vec![Node {
        m: MobiusTransform::IDENTITY,
        parent: 0,
        step: 0,
    }];
    let mut frontier: Vec<u32> = vec![0];
    let mut depth = 0usize;
    let mut truncated = false;
    while !frontier.is_empty() {
        if depth >= max_depth {
            truncated = true;
            break;
        }
        let children: Vec<Vec<Node>> = frontier
            .par_iter()
            .map(|&id| {
                let parent = nodes[id as usize].m;
                steps
                    .iter()
                    .enumerate()
                    .filter_map(|(k, s)| {
                        let m = parent * *s;
                        (cosh_displacement(&m) <= bound).then_some(Node {
                            m,
                            parent: id,
                            step: k as u16,
                        })
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for node in children.into_iter().flatten() {
            if index.insert(orbit_xy(&node.m)) {
                next.push(nodes.len() as u32);
                nodes.push(node);
            }
        }
        frontier = next;
        depth += 1;
        if nodes.len() > max_nodes && !frontier.is_empty() {
            truncated = true;
            break;
        }
    }
    Ball { nodes, truncated }
}
