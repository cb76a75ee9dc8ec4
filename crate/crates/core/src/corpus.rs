//! Exhaustive enumeration of convex lattice polygons in a box.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice2::Point;
use crate::polygon::LatticePolygon;

/// Largest box side accepted for exhaustive enumeration.
pub const MAX_EXHAUSTIVE_COORDINATE: i64 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dedup {
    None,
    /// One representative per translation class: the one touching both
    /// coordinate axes.
    #[default]
    Translation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub max_coordinate: i64,
    pub dedup: Dedup,
    pub limit: Option<usize>,
}

impl CorpusSpec {
    pub fn new(max_coordinate: i64) -> Self {
        CorpusSpec {
            max_coordinate,
            dedup: Dedup::Translation,
            limit: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_EXHAUSTIVE_COORDINATE).contains(&self.max_coordinate) {
            return Err(Error::Argument(format!(
                "max coordinate must be in 1..={MAX_EXHAUSTIVE_COORDINATE}, got {}",
                self.max_coordinate
            )));
        }
        Ok(())
    }
}

/// Every strictly convex lattice polygon with vertices in
/// `{0, …, max_coordinate}²`, deduplicated as `spec.dedup` asks.
///
/// Each polygon is grown from its lowest (then leftmost) vertex through
/// points in increasing angular order with strict left turns, so every
/// vertex set is produced exactly once. The order is deterministic.
pub fn enumerate(spec: &CorpusSpec) -> Result<Vec<LatticePolygon>> {
    spec.validate()?;
    let n = spec.max_coordinate;
    let limit = spec.limit.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    let mut starts: Vec<Point> = (0..=n)
        .flat_map(|y| (0..=n).map(move |x| Point::new(x, y)))
        .collect();
    if spec.dedup == Dedup::Translation {
        // lowest vertex lies on the x-axis
        starts.retain(|p| p.y == 0);
    }
    for v0 in starts {
        if out.len() >= limit {
            break;
        }
        let mut above: Vec<Point> = (0..=n)
            .flat_map(|y| (0..=n).map(move |x| Point::new(x, y)))
            .filter(|p| p.y > v0.y || (p.y == v0.y && p.x > v0.x))
            .collect();
        above.sort_by(|&a, &b| {
            let (da, db) = (a - v0, b - v0);
            0.cmp(&da.cross(db)).then_with(|| da.dot(da).cmp(&db.dot(db)))
        });
        let mut chain = vec![v0];
        grow(&above, 0, &mut chain, &mut |vertices| {
            let keep = match spec.dedup {
                Dedup::None => true,
                Dedup::Translation => vertices.iter().map(|p| p.x).min() == Some(0),
            };
            if keep && out.len() < limit {
                out.push(
                    LatticePolygon::new(vertices).expect("enumerated chains are convex polygons"),
                );
            }
            out.len() < limit
        });
    }
    Ok(out)
}

fn left_turn(a: Point, b: Point, c: Point) -> bool {
    (b - a).cross(c - b) > 0
}

/// Extends `chain` with candidates from `from..` in angular order. `emit`
/// returns false to stop.
fn grow(
    candidates: &[Point],
    from: usize,
    chain: &mut Vec<Point>,
    emit: &mut impl FnMut(&[Point]) -> bool,
) -> bool {
    let v0 = chain[0];
    for k in from..candidates.len() {
        let p = candidates[k];
        let last = chain[chain.len() - 1];
        if chain.len() >= 2 {
            if !left_turn(chain[chain.len() - 2], last, p) {
                continue;
            }
            // same ray from v0 as the previous point: not a new angle
            if (last - v0).cross(p - v0) == 0 {
                continue;
            }
        }
        chain.push(p);
        if chain.len() >= 3 && left_turn(last, p, v0) && !emit(chain) {
            return false;
        }
        if !grow(candidates, k + 1, chain, emit) {
            return false;
        }
        chain.pop();
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Brute force: every subset of the grid whose hull has all of them as
    /// vertices.
    fn brute_force(n: i64) -> HashSet<Vec<Point>> {
        let grid: Vec<Point> = (0..=n)
            .flat_map(|y| (0..=n).map(move |x| Point::new(x, y)))
            .collect();
        let mut out = HashSet::new();
        for mask in 0u32..(1 << grid.len()) {
            if mask.count_ones() < 3 {
                continue;
            }
            let pts: Vec<Point> = (0..grid.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| grid[i])
                .collect();
            if let Ok(p) = LatticePolygon::convex_hull(&pts) {
                if p.vertices().len() == pts.len() {
                    let mut v = p.vertices().to_vec();
                    v.sort();
                    out.insert(v);
                }
            }
        }
        out
    }

    fn as_sets(polys: &[LatticePolygon]) -> HashSet<Vec<Point>> {
        polys
            .iter()
            .map(|p| {
                let mut v = p.vertices().to_vec();
                v.sort();
                v
            })
            .collect()
    }

    #[test]
    fn unit_box() {
        let polys = enumerate(&CorpusSpec::new(1)).unwrap();
        assert_eq!(polys.len(), 5);
        assert_eq!(polys.iter().filter(|p| p.vertices().len() == 4).count(), 1);
    }

    #[test]
    fn matches_subset_brute_force() {
        for n in 1..=3 {
            let spec = CorpusSpec {
                max_coordinate: n,
                dedup: Dedup::None,
                limit: None,
            };
            let polys = enumerate(&spec).unwrap();
            let sets = as_sets(&polys);
            assert_eq!(sets.len(), polys.len(), "duplicates at n = {n}");
            assert_eq!(sets, brute_force(n), "n = {n}");
        }
    }

    #[test]
    fn translation_dedup_keeps_one_per_class() {
        let all = enumerate(&CorpusSpec {
            max_coordinate: 3,
            dedup: Dedup::None,
            limit: None,
        })
        .unwrap();
        let classes: HashSet<Vec<Point>> = all
            .iter()
            .map(|p| {
                let (lo, _) = p.bounding_box();
                let mut v: Vec<Point> = p.vertices().iter().map(|&q| q - lo).collect();
                v.sort();
                v
            })
            .collect();
        let dedup = enumerate(&CorpusSpec::new(3)).unwrap();
        assert_eq!(as_sets(&dedup), classes);
    }

    #[test]
    fn limit_and_bounds() {
        let spec = CorpusSpec {
            limit: Some(10),
            ..CorpusSpec::new(4)
        };
        assert_eq!(enumerate(&spec).unwrap().len(), 10);
        assert!(enumerate(&CorpusSpec::new(7)).is_err());
        assert!(enumerate(&CorpusSpec::new(0)).is_err());
    }
}
