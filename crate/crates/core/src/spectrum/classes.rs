//! Conjugacy classes of closed geodesics from the elements of a ball.

use std::collections::{BTreeMap, HashMap};

use super::ball::{cosh_displacement, search, Ball};
use super::domain::{axis_normal, Domain};
use super::GeodesicClass;
use crate::hypgeom::model::{act, Axis, Vec3};
use crate::hypgeom::{trace_to_length, MobiusTransform};
use crate::word::Word;

/// Lengths within this of the cutoff are kept, so a value computed a few
/// ulps either side of it does not flicker in and out.
const CUTOFF_SLACK: f64 = 1e-9;

/// Words that are the identity in a surface group can come out of a long
/// product with a trace just above 2; no geodesic is this short.
const IDENTITY_LENGTH: f64 = 1e-4;

/// Primitive classes from a free group, keyed exactly by their cyclic words.
pub(crate) fn free_group_classes(
    ball: &Ball,
    steps: &[Word],
    cutoff: f64,
) -> Vec<GeodesicClass> {
    let mut best: HashMap<Word, f64> = HashMap::new();
    for (id, node) in ball.nodes.iter().enumerate() {
        let Ok(len) = trace_to_length(&node.m) else {
            continue;
        };
        if len > cutoff + CUTOFF_SLACK {
            continue;
        }
        let word = ball.word(id as u32, steps);
        if word.is_proper_power() {
            continue;
        }
        let key = word.canonical_cyclic();
        best.entry(key)
            .and_modify(|l| *l = l.min(len))
            .or_insert(len);
    }
    let mut out: Vec<GeodesicClass> = best
        .into_iter()
        .map(|(word, length)| GeodesicClass { word, length })
        .collect();
    out.sort_by(|x, y| x.length.total_cmp(&y.length).then_with(|| x.word.cmp(&y.word)));
    out
}

fn angle(p: &Vec3) -> f64 {
    let a = p[2].atan2(p[1]);
    if a > std::f64::consts::PI - 1e-7 {
        a - 2.0 * std::f64::consts::PI
    } else {
        a
    }
}

const ANGLE_CELL: f64 = 1e-7;

fn angle_key(a: &Vec3, b: &Vec3) -> (f64, f64) {
    let (x, y) = (angle(a), angle(b));
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// Geodesics keyed by their unordered endpoint pair.
#[derive(Default)]
struct AxisIndex {
    cells: HashMap<(i64, i64), Vec<usize>>,
    keys: Vec<(f64, f64)>,
}

impl AxisIndex {
    fn find(&self, k: (f64, f64)) -> Option<usize> {
        let (cx, cy) = ((k.0 / ANGLE_CELL).floor() as i64, (k.1 / ANGLE_CELL).floor() as i64);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.cells.get(&(cx + dx, cy + dy)) {
                    for &id in ids {
                        let q = self.keys[id];
                        if (q.0 - k.0).abs() < ANGLE_CELL && (q.1 - k.1).abs() < ANGLE_CELL {
                            return Some(id);
                        }
                    }
                }
            }
        }
        None
    }

    fn insert(&mut self, k: (f64, f64)) -> (usize, bool) {
        if let Some(id) = self.find(k) {
            return (id, false);
        }
        let id = self.keys.len();
        self.keys.push(k);
        let cell = ((k.0 / ANGLE_CELL).floor() as i64, (k.1 / ANGLE_CELL).floor() as i64);
        self.cells.entry(cell).or_default().push(id);
        (id, true)
    }
}

fn find_root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

struct AxisRecord {
    node: u32,
    length: f64,
    ends: (Vec3, Vec3),
    normal: Vec3,
}

/// Outcome of grouping the axes that cross a fundamental domain.
pub(crate) struct AxisClasses {
    pub classes: Vec<GeodesicClass>,
    /// Every class's chords through the domain add up to its length.
    pub complete: bool,
}

/// Primitive classes of a cocompact group.
///
/// Every closed geodesic crosses the domain in finitely many chords, one
/// for each lift of it meeting the domain. Lifts are identified through
/// the elements moving the domain to an adjacent tile; a class is
/// confirmed when its chord lengths add up to its length.
pub(crate) fn closed_surface_classes(
    ball: &Ball,
    steps: &[Word],
    domain: &Domain,
    cutoff: f64,
) -> AxisClasses {
    let mut index = AxisIndex::default();
    let mut axes: Vec<AxisRecord> = Vec::new();
    for (id, node) in ball.nodes.iter().enumerate() {
        let Ok(len) = trace_to_length(&node.m) else {
            continue;
        };
        if len > cutoff + CUTOFF_SLACK || len < IDENTITY_LENGTH {
            continue;
        }
        let Some(normal) = axis_normal(&node.m) else {
            continue;
        };
        if !domain.meets(&normal) {
            continue;
        }
        let Ok(axis) = Axis::of(&node.m) else {
            continue;
        };
        let (slot, fresh) = index.insert(angle_key(&axis.attracting, &axis.repelling));
        if fresh {
            axes.push(AxisRecord {
                node: id as u32,
                length: len,
                ends: (axis.attracting, axis.repelling),
                normal,
            });
        } else if len < axes[slot].length {
            axes[slot].length = len;
            axes[slot].node = id as u32;
        }
    }

    // Elements carrying the domain onto a tile that touches it.
    let reach = (2.0 * domain.radius + 0.1).cosh();
    let neighbours: Vec<MobiusTransform> = ball
        .nodes
        .iter()
        .skip(1)
        .filter(|n| cosh_displacement(&n.m) <= reach)
        .map(|n| n.m)
        .collect();

    let mut parent: Vec<usize> = (0..axes.len()).collect();
    for i in 0..axes.len() {
        let (a, r) = axes[i].ends;
        for h in &neighbours {
            let key = angle_key(&act(h, &a), &act(h, &r));
            if let Some(j) = index.find(key) {
                let (x, y) = (find_root(&mut parent, i), find_root(&mut parent, j));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..axes.len() {
        let root = find_root(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    let mut complete = true;
    let mut classes = Vec::with_capacity(groups.len());
    for members in groups.values() {
        let rep = members
            .iter()
            .copied()
            .min_by(|&x, &y| axes[x].length.total_cmp(&axes[y].length))
            .expect("nonempty group");
        let length = axes[rep].length;
        let chords: f64 = members.iter().map(|&i| domain.chord(&axes[i].normal)).sum();
        if (chords - length).abs() > 1e-6 * length.max(1.0) {
            complete = false;
        }
        if length <= cutoff + CUTOFF_SLACK {
            classes.push(GeodesicClass {
                word: ball.word(axes[rep].node, steps),
                length,
            });
        }
    }
    classes.sort_by(|x, y| x.length.total_cmp(&y.length).then_with(|| x.word.cmp(&y.word)));
    AxisClasses { classes, complete }
}

/// Uncertified enumeration over generator words, for groups whose
/// fundamental domain could not be certified.
///
/// Classes are keyed by cyclic word, then merged when both length and
/// trace agree, which absorbs coincidences forced by a relator.
pub(crate) fn word_classes(
    generators: &[MobiusTransform],
    cutoff: f64,
    max_word_length: usize,
    merge_tolerance: f64,
) -> Vec<GeodesicClass> {
    let mut steps: Vec<MobiusTransform> = generators.to_vec();
    steps.extend(generators.iter().map(|g| g.inverse()));
    let letters: Vec<i8> = (1..=generators.len() as i8)
        .chain((1..=generators.len() as i8).map(|k| -k))
        .collect();
    let mut best: BTreeMap<Word, f64> = BTreeMap::new();
    let mut frontier: Vec<(Word, MobiusTransform)> = vec![(Word::empty(), MobiusTransform::IDENTITY)];
    // Words whose matrix already moves `i` far beyond the cutoff still
    // matter, so this search is bounded by word length only.
    for _ in 0..max_word_length {
        let mut next = Vec::new();
        for (w, m) in &frontier {
            for (k, s) in steps.iter().enumerate() {
                let l = letters[k];
                if w.letters().last() == Some(&-l) {
                    continue;
                }
                let mut w2 = w.clone();
                w2.push(l);
                let m2 = *m * *s;
                if let Ok(len) = trace_to_length(&m2) {
                    if len <= cutoff + CUTOFF_SLACK && !w2.is_proper_power() {
                        let key = w2.canonical_cyclic();
                        if !key.is_empty() {
                            best.entry(key).and_modify(|x| *x = x.min(len)).or_insert(len);
                        }
                    }
                }
                next.push((w2, m2));
            }
        }
        frontier = next;
        if frontier.len() > 4_000_000 {
            break;
        }
    }
    let mut classes: Vec<(GeodesicClass, f64)> = best
        .into_iter()
        .map(|(word, length)| {
            let t = word.evaluate(generators).map(|m| m.trace().abs()).unwrap_or(0.0);
            (GeodesicClass { word, length }, t)
        })
        .collect();
    classes.sort_by(|x, y| x.0.length.total_cmp(&y.0.length).then_with(|| x.0.word.cmp(&y.0.word)));
    let mut out: Vec<(GeodesicClass, f64)> = Vec::new();
    for (c, t) in classes {
        let dup = out.iter().rev().take_while(|(o, _)| c.length - o.length <= merge_tolerance).any(
            |(o, ot)| (o.length - c.length).abs() <= merge_tolerance && (ot - t).abs() <= 1e-7,
        );
        if !dup {
            out.push((c, t));
        }
    }
    out.into_iter().map(|(c, _)| c).collect()
}

/// Runs the ball search for a certified domain. For a cocompact group of
/// covolume `area` the ball holds about `2π(cosh R − 1)/area` elements; a
/// search far beyond that is not converging and is cut off as truncated.
pub(crate) fn ball_for(domain: &Domain, cutoff: f64, max_depth: usize, area: Option<f64>) -> Ball {
    let steps: Vec<MobiusTransform> = domain.pairings.iter().map(|e| e.m).collect();
    let radius = cutoff + 3.0 * domain.radius;
    let max_nodes = area.map_or(usize::MAX, |a| {
        (4.0 * std::f64::consts::TAU * (radius.cosh() - 1.0) / a) as usize + 10_000
    });
    search(&steps, radius, max_depth, max_nodes)
}
