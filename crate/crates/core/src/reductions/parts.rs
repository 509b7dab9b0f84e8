use serde::{Deserialize, Serialize};

use super::ReductionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ColorSet {
    A,
    B,
    C,
}

impl ColorSet {
    pub const ALL: [ColorSet; 3] = [ColorSet::A, ColorSet::B, ColorSet::C];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Endpoints of one forbidding path: `cl` is incident to `u`, `far` to `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathEnds {
    pub u: usize,
    pub v: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartAssignment {
    pub cl: Vec<ColorSet>,
    pub far: Vec<ColorSet>,
}

impl PartAssignment {
    /// The part of path `i` incident to node `g`.
    pub fn near(&self, paths: &[PathEnds], i: usize, g: usize) -> ColorSet {
        if paths[i].u == g {
            self.cl[i]
        } else {
            self.far[i]
        }
    }
}

/// Assigns one of A, B, C to every part so that the two parts of a path
/// differ and parts meeting at a node differ. Nodes of degree 3 go first,
/// then degree 2, then degree 1, each in ascending order.
pub fn assign_parts(nodes: usize, paths: &[PathEnds]) -> Result<PartAssignment, ReductionError> {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for (i, p) in paths.iter().enumerate() {
        if p.u >= nodes || p.v >= nodes || p.u == p.v {
            return Err(ReductionError::Parts(format!("path {i} has bad endpoints")));
        }
        incident[p.u].push(i);
        incident[p.v].push(i);
    }
    if let Some(g) = (0..nodes).find(|&g| incident[g].len() > 3) {
        return Err(ReductionError::Parts(format!("node {g} has {} incident parts", incident[g].len())));
    }
    if let Some(i) = (0..paths.len()).find(|&i| incident[paths[i].u].len() == 3 && incident[paths[i].v].len() == 3) {
        return Err(ReductionError::Parts(format!("path {i} joins two degree-3 nodes")));
    }

    // slot 2*i is cl(P_i), slot 2*i+1 is far(P_i)
    let mut slot: Vec<Option<ColorSet>> = vec![None; 2 * paths.len()];
    let near = |i: usize, g: usize| if paths[i].u == g { 2 * i } else { 2 * i + 1 };
    let other = |i: usize, g: usize| if paths[i].u == g { 2 * i + 1 } else { 2 * i };

    for g in (0..nodes).filter(|&g| incident[g].len() == 3) {
        for (&i, set) in incident[g].iter().zip(ColorSet::ALL) {
            slot[near(i, g)] = Some(set);
        }
    }
    for g in (0..nodes).filter(|&g| incident[g].len() == 2) {
        let (pa, pb) = (incident[g][0], incident[g][1]);
        let (x, y) = (slot[other(pa, g)], slot[other(pb, g)]);
        let (sa, sb) = match (x, y) {
            (Some(x), Some(y)) if x != y => (y, x),
            (None, None) => (ColorSet::A, ColorSet::B),
            (Some(x), _) | (None, Some(x)) => {
                let rest: Vec<ColorSet> = ColorSet::ALL.into_iter().filter(|&s| s != x).collect();
                (rest[0], rest[1])
            }
        };
        slot[near(pa, g)] = Some(sa);
        slot[near(pb, g)] = Some(sb);
    }
    for g in (0..nodes).filter(|&g| incident[g].len() == 1) {
        let i = incident[g][0];
        let taken = slot[other(i, g)];
        slot[near(i, g)] = ColorSet::ALL.into_iter().find(|&s| Some(s) != taken);
    }

    let cl: Vec<ColorSet> = (0..paths.len()).map(|i| slot[2 * i].expect("every part assigned")).collect();
    let far: Vec<ColorSet> = (0..paths.len()).map(|i| slot[2 * i + 1].expect("every part assigned")).collect();
    let out = PartAssignment { cl, far };
    if let Some(i) = (0..paths.len()).find(|&i| out.cl[i] == out.far[i]) {
        return Err(ReductionError::Parts(format!("both parts of path {i} got {:?}", out.cl[i])));
    }
    for (g, inc) in incident.iter().enumerate() {
        let mut sets: Vec<ColorSet> = inc.iter().map(|&i| out.near(paths, i, g)).collect();
        sets.sort();
        sets.dedup();
        if sets.len() != inc.len() {
            return Err(ReductionError::Parts(format!("parts at node {g} share a set")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ColorSet::*;

    fn ends(list: &[(usize, usize)]) -> Vec<PathEnds> {
        list.iter().map(|&(u, v)| PathEnds { u, v }).collect()
    }

    #[test]
    fn single_path() {
        let pa = assign_parts(2, &ends(&[(0, 1)])).unwrap();
        assert_eq!((pa.cl[0], pa.far[0]), (A, B));
    }

    #[test]
    fn degree_three_gets_abc() {
        let paths = ends(&[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]);
        let pa = assign_parts(7, &paths).unwrap();
        assert_eq!(&pa.cl[..3], &[A, B, C]);
    }

    #[test]
    fn degree_two_with_equal_far_parts() {
        // node 2 sees far parts B and B from the two degree-3 nodes
        let paths = ends(&[(0, 2), (1, 2), (0, 3), (0, 4), (1, 3), (1, 4)]);
        let pa = assign_parts(5, &paths).unwrap();
        assert_eq!((pa.cl[0], pa.cl[1]), (A, A));
        assert_eq!((pa.far[0], pa.far[1]), (B, C));
    }

    #[test]
    fn adjacent_degree_three_is_refused() {
        let paths = ends(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
        assert!(matches!(assign_parts(4, &paths), Err(ReductionError::Parts(_))));
    }
}
