//! Explicit planar diagrams of rational tangles, used for writhe, state
//! counts, and as an independent check of the algebraic bracket.
//!
//! A crossing lists four endpoint ids counterclockwise. The under strand runs
//! slot 0 to slot 2 and the over strand slot 1 to slot 3, so the A-smoothing
//! joins slots (0,1) and (2,3) while the B-smoothing joins (0,3) and (1,2).

use crate::conway::ConwaySeq;
use num_traits::{Signed, ToPrimitive};

const NW: usize = 0;
const NE: usize = 1;
const SW: usize = 2;
const SE: usize = 3;

#[derive(Clone, Debug)]
pub struct TangleDiagram {
    points: usize,
    crossings: Vec<[usize; 4]>,
    joins: Vec<(usize, usize)>,
    /// NW, NE, SW, SE
    ports: [usize; 4],
}

impl TangleDiagram {
    /// Two horizontal arcs.
    pub fn zero() -> Self {
        Self { points: 4, crossings: vec![], joins: vec![(0, 1), (2, 3)], ports: [0, 1, 2, 3] }
    }

    /// Two vertical arcs.
    pub fn infinity() -> Self {
        Self { points: 4, crossings: vec![], joins: vec![(0, 2), (1, 3)], ports: [0, 1, 2, 3] }
    }

    /// `[1]` when `positive`, otherwise its mirror `[-1]`.
    pub fn crossing(positive: bool) -> Self {
        // slots of [1]: NE, NW, SW, SE; of [-1]: NW, SW, SE, NE
        let ports = if positive { [1, 0, 2, 3] } else { [0, 3, 1, 2] };
        Self { points: 4, crossings: vec![[0, 1, 2, 3]], joins: vec![], ports }
    }

    /// `|a|` horizontal half-twists.
    pub fn twist(a: i64) -> Self {
        if a == 0 {
            return Self::zero();
        }
        let unit = Self::crossing(a > 0);
        (1..a.abs()).fold(unit.clone(), |t, _| t.sum(&unit))
    }

    /// Canonical diagram of `C(a)`; the fraction is `IF(a_n, …, a_1)`.
    pub fn conway(a: &ConwaySeq) -> Self {
        let e: Vec<i64> = a
            .entries()
            .iter()
            .map(|x| x.to_i64().filter(|v| v.abs() < 1 << 20).expect("twist too large for an explicit diagram"))
            .collect();
        let mut t = Self::twist(e[e.len() - 1]);
        for &x in e[..e.len() - 1].iter().rev() {
            t = t.reciprocal().sum(&Self::twist(x));
        }
        t
    }

    fn offset(&self, k: usize) -> Self {
        Self {
            points: self.points,
            crossings: self.crossings.iter().map(|c| c.map(|x| x + k)).collect(),
            joins: self.joins.iter().map(|&(a, b)| (a + k, b + k)).collect(),
            ports: self.ports.map(|x| x + k),
        }
    }

    /// Horizontal tangle sum.
    pub fn sum(&self, other: &Self) -> Self {
        let o = other.offset(self.points);
        let mut joins = self.joins.clone();
        joins.extend(o.joins.iter().copied());
        joins.push((self.ports[NE], o.ports[NW]));
        joins.push((self.ports[SE], o.ports[SW]));
        let mut crossings = self.crossings.clone();
        crossings.extend(o.crossings);
        Self {
            points: self.points + other.points,
            crossings,
            joins,
            ports: [self.ports[NW], o.ports[NE], self.ports[SW], o.ports[SE]],
        }
    }

    /// Quarter turn counterclockwise; the fraction `F` becomes `-1/F`.
    pub fn rotate(&self) -> Self {
        let p = self.ports;
        Self { ports: [p[NE], p[SE], p[NW], p[SW]], ..self.clone() }
    }

    /// Switches every crossing; the fraction `F` becomes `-F`.
    pub fn mirror(&self) -> Self {
        Self { crossings: self.crossings.iter().map(|&[a, b, c, d]| [b, c, d, a]).collect(), ..self.clone() }
    }

    pub fn reciprocal(&self) -> Self {
        self.rotate().mirror()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Numerator closure: NW to NE and SW to SE.
    pub fn numerator_closure(&self) -> ClosedDiagram {
        let mut joins = self.joins.clone();
        joins.push((self.ports[NW], self.ports[NE]));
        joins.push((self.ports[SW], self.ports[SE]));
        ClosedDiagram { points: self.points, crossings: self.crossings.clone(), joins }
    }

    pub fn ports(&self) -> [usize; 4] {
        self.ports
    }

    /// Union-find over the points after smoothing each crossing by `state`
    /// (bit `i` set means B at crossing `i`).
    pub fn smoothing(&self, state: &[bool]) -> UnionFind {
        smooth(self.points, &self.crossings, &self.joins, state)
    }
}

#[derive(Clone, Debug)]
pub struct ClosedDiagram {
    points: usize,
    crossings: Vec<[usize; 4]>,
    joins: Vec<(usize, usize)>,
}

impl ClosedDiagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Number of circles after smoothing (bit `i` set means B at crossing `i`).
    pub fn loops(&self, state: &[bool]) -> usize {
        smooth(self.points, &self.crossings, &self.joins, state).components()
    }

    /// Circles in the all-A state.
    pub fn all_a_loops(&self) -> usize {
        self.loops(&vec![false; self.crossings.len()])
    }

    /// Per-crossing signs (`+1` right-handed) from one traversal; `None` for
    /// links, where a single traversal does not cover every crossing.
    pub fn crossing_signs(&self) -> Option<Vec<i8>> {
        let c = self.crossings.len();
        if c == 0 {
            return Some(vec![]);
        }
        let mut slot_of = vec![None; self.points];
        for (i, cr) in self.crossings.iter().enumerate() {
            for (k, &p) in cr.iter().enumerate() {
                slot_of[p] = Some((i, k));
            }
        }
        let mut adj = vec![Vec::with_capacity(2); self.points];
        for &(a, b) in &self.joins {
            adj[a].push(b);
            adj[b].push(a);
        }
        // follow an arc from a crossing endpoint to the next crossing endpoint
        let arc_end = |start: usize| -> (usize, usize) {
            let (mut prev, mut cur) = (start, adj[start][0]);
            loop {
                if let Some(s) = slot_of[cur] {
                    return s;
                }
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
            }
        };
        let mut under_in = vec![None; c];
        let mut over_in = vec![None; c];
        let (mut ci, mut k) = (0usize, 0usize);
        for _ in 0..2 * c {
            if k % 2 == 0 {
                under_in[ci] = Some(k);
            } else {
                over_in[ci] = Some(k);
            }
            let exit = self.crossings[ci][(k + 2) % 4];
            (ci, k) = arc_end(exit);
        }
        (ci == 0 && k == 0).then_some(())?;
        under_in
            .iter()
            .zip(&over_in)
            .map(|(u, o)| match ((*u)?, (*o)?) {
                (0, 3) | (2, 1) => Some(1),
                _ => Some(-1),
            })
            .collect()
    }

    pub fn writhe(&self) -> Option<i64> {
        self.crossing_signs().map(|s| s.iter().map(|&x| x as i64).sum())
    }
}

fn smooth(points: usize, crossings: &[[usize; 4]], joins: &[(usize, usize)], state: &[bool]) -> UnionFind {
    let mut uf = UnionFind::new(points);
    for &(a, b) in joins {
        uf.union(a, b);
    }
    for (cr, &b) in crossings.iter().zip(state) {
        if b {
            uf.union(cr[0], cr[3]);
            uf.union(cr[1], cr[2]);
        } else {
            uf.union(cr[0], cr[1]);
            uf.union(cr[2], cr[3]);
        }
    }
    uf
}

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), components: n }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.components -= 1;
        }
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn components(&self) -> usize {
        self.components
    }
}
