//! Butterfly networks `BF(r)`.
//!
//! `BF(r)` has `r + 1` levels of `2^r` rows. Vertex `[w,i]` (row `w`, level
//! `i`) is joined to `[w,i+1]` by a straight edge and to `[w ^ 2^i, i+1]` by
//! a cross edge, so the bit flipped between levels `i` and `i + 1` has weight
//! `2^i`. The dense index of `[w,i]` is `i * 2^r + w`.

use std::fmt;

use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};

/// Largest dimension [`Butterfly::new`] accepts (about 1.1M vertices).
pub const MAX_DIMENSION: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ButterflyError {
    #[error("butterfly dimension must be at least {min}, got {r}")]
    DimensionTooSmall { r: usize, min: usize },
    #[error("butterfly dimension {r} exceeds the limit of {max}")]
    DimensionTooLarge { r: usize, max: usize },
    #[error("{0} is not a vertex of the butterfly")]
    OutOfRange(ButterflyCoordinate),
    #[error("{a} and {b} are not on consecutive levels")]
    NotConsecutive {
        a: ButterflyCoordinate,
        b: ButterflyCoordinate,
    },
    #[error("{a} and {b}: rows differ by {xor}, but levels ({level},{next}) flip only weight {weight}", next = level + 1)]
    WrongBit {
        a: ButterflyCoordinate,
        b: ButterflyCoordinate,
        level: usize,
        xor: usize,
        weight: usize,
    },
    #[error("cannot parse butterfly label {0:?}")]
    BadLabel(String),
}

/// Row/level address of a butterfly vertex, written `[w,i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ButterflyCoordinate {
    pub row: usize,
    pub level: usize,
}

impl ButterflyCoordinate {
    pub fn new(row: usize, level: usize) -> Self {
        ButterflyCoordinate { row, level }
    }
}

impl fmt::Display for ButterflyCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.row, self.level)
    }
}

impl std::str::FromStr for ButterflyCoordinate {
    type Err = ButterflyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ButterflyError::BadLabel(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (w, i) = inner.split_once(',').ok_or_else(bad)?;
        Ok(ButterflyCoordinate {
            row: w.trim().parse().map_err(|_| bad())?,
            level: i.trim().parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Straight,
    Cross,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiamondKind {
    /// Levels 0 and 1.
    Vertical,
    /// Levels r-1 and r.
    Horizontal,
}

/// A 4-cycle between two consecutive levels on rows `w` and `w ^ 2^level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diamond {
    pub kind: DiamondKind,
    /// The lower of the two levels.
    pub level: usize,
    /// `(w, w ^ 2^level)` with `w` the smaller row.
    pub rows: (usize, usize),
    /// Dense indices in cycle order: `[w,i]`, `[w,i+1]`, `[w',i]`, `[w',i+1]`.
    pub vertices: [Vertex; 4],
}

impl Diamond {
    pub fn edges(&self) -> [Edge; 4] {
        let [a, b, c, d] = self.vertices;
        [Edge::new(a, b), Edge::new(b, c), Edge::new(c, d), Edge::new(d, a)]
    }

    /// The two degree-2 vertices of the diamond (level 0 for vertical,
    /// level r for horizontal).
    pub fn binding_vertices(&self) -> [Vertex; 2] {
        let [a, b, c, d] = self.vertices;
        match self.kind {
            DiamondKind::Vertical => [a, c],
            DiamondKind::Horizontal => [b, d],
        }
    }
}

#[derive(Clone, Debug)]
pub struct Butterfly {
    r: usize,
    graph: Graph,
}

impl Butterfly {
    pub fn new(r: usize) -> Result<Butterfly, ButterflyError> {
        if r < 1 {
            return Err(ButterflyError::DimensionTooSmall { r, min: 1 });
        }
        if r > MAX_DIMENSION {
            return Err(ButterflyError::DimensionTooLarge { r, max: MAX_DIMENSION });
        }
        let rows = 1usize << r;
        let index = |w: usize, i: usize| i * rows + w;
        let mut edges = Vec::with_capacity(r * rows * 2);
        for i in 0..r {
            for w in 0..rows {
                edges.push((index(w, i), index(w, i + 1)));
                edges.push((index(w, i), index(w ^ (1 << i), i + 1)));
            }
        }
        let labels = (0..(r + 1) * rows)
            .map(|v| ButterflyCoordinate::new(v % rows, v / rows).to_string())
            .collect();
        let graph = Graph::from_edges((r + 1) * rows, edges)
            .and_then(|g| g.with_labels(labels))
            .expect("butterfly edges are simple");
        Ok(Butterfly { r, graph })
    }

    pub fn dimension(&self) -> usize {
        self.r
    }

    pub fn rows(&self) -> usize {
        1 << self.r
    }

    pub fn levels(&self) -> usize {
        self.r + 1
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn contains(&self, c: ButterflyCoordinate) -> bool {
        c.row < self.rows() && c.level <= self.r
    }

    pub fn index(&self, c: ButterflyCoordinate) -> Result<Vertex, ButterflyError> {
        if !self.contains(c) {
            return Err(ButterflyError::OutOfRange(c));
        }
        Ok(c.level * self.rows() + c.row)
    }

    /// `index` for coordinates known to be valid.
    pub fn vertex(&self, row: usize, level: usize) -> Vertex {
        debug_assert!(row < self.rows() && level <= self.r);
        level * self.rows() + row
    }

    pub fn coordinate(&self, v: Vertex) -> ButterflyCoordinate {
        ButterflyCoordinate::new(v % self.rows(), v / self.rows())
    }

    pub fn level_vertices(&self, level: usize) -> Vec<Vertex> {
        (0..self.rows()).map(|w| self.vertex(w, level)).collect()
    }

    pub fn edge_kind(&self, a: ButterflyCoordinate, b: ButterflyCoordinate) -> Result<EdgeKind, ButterflyError> {
        edge_kind(self.r, a, b)
    }

    /// Edge between two coordinates, validated.
    pub fn edge(&self, a: ButterflyCoordinate, b: ButterflyCoordinate) -> Result<Edge, ButterflyError> {
        self.edge_kind(a, b)?;
        Ok(Edge::new(self.index(a)?, self.index(b)?))
    }

    /// Mirror image: the vertex whose row differs in the weight-1 bit.
    pub fn mirror(&self, v: Vertex) -> Vertex {
        let c = self.coordinate(v);
        self.vertex(c.row ^ 1, c.level)
    }

    pub fn binding_diamonds(&self) -> Result<Vec<Diamond>, ButterflyError> {
        if self.r < 2 {
            return Err(ButterflyError::DimensionTooSmall { r: self.r, min: 2 });
        }
        let mut out = self.diamonds_at(0, DiamondKind::Vertical);
        out.extend(self.diamonds_at(self.r - 1, DiamondKind::Horizontal));
        Ok(out)
    }

    fn diamonds_at(&self, level: usize, kind: DiamondKind) -> Vec<Diamond> {
        let bit = 1 << level;
        (0..self.rows())
            .filter(|w| w & bit == 0)
            .map(|w| {
                let w2 = w | bit;
                Diamond {
                    kind,
                    level,
                    rows: (w, w2),
                    vertices: [
                        self.vertex(w, level),
                        self.vertex(w, level + 1),
                        self.vertex(w2, level),
                        self.vertex(w2, level + 1),
                    ],
                }
            })
            .collect()
    }

    pub fn decompose_subcopies(&self) -> Result<SubcopyDecomposition, ButterflyError> {
        if self.r < 3 {
            return Err(ButterflyError::DimensionTooSmall { r: self.r, min: 3 });
        }
        Ok(SubcopyDecomposition { r: self.r })
    }
}

pub fn build_butterfly(r: usize) -> Result<Butterfly, ButterflyError> {
    Butterfly::new(r)
}

/// Classifies the pair `a`, `b` as a straight or cross edge of `BF(r)`.
pub fn edge_kind(r: usize, a: ButterflyCoordinate, b: ButterflyCoordinate) -> Result<EdgeKind, ButterflyError> {
    let rows = 1usize << r;
    for c in [a, b] {
        if c.row >= rows || c.level > r {
            return Err(ButterflyError::OutOfRange(c));
        }
    }
    let (lo, hi) = if a.level <= b.level { (a, b) } else { (b, a) };
    if hi.level != lo.level + 1 {
        return Err(ButterflyError::NotConsecutive { a, b });
    }
    let xor = lo.row ^ hi.row;
    let weight = 1 << lo.level;
    match xor {
        0 => Ok(EdgeKind::Straight),
        x if x == weight => Ok(EdgeKind::Cross),
        _ => Err(ButterflyError::WrongBit {
            a,
            b,
            level: lo.level,
            xor,
            weight,
        }),
    }
}

/// The four copies of `BF(r-2)` spanned by levels `0..=r-2` of `BF(r)`.
///
/// Copy `q` holds the rows whose two highest bits (weights `2^(r-2)` and
/// `2^(r-1)`) read `q`; the map `[w,i] -> [w mod 2^(r-2), i]` is an
/// isomorphism onto `BF(r-2)`.
#[derive(Clone, Copy, Debug)]
pub struct SubcopyDecomposition {
    r: usize,
}

impl SubcopyDecomposition {
    pub fn sub_dimension(&self) -> usize {
        self.r - 2
    }

    fn sub_rows(&self) -> usize {
        1 << (self.r - 2)
    }

    /// Vertex of `BF(r)` corresponding to vertex `v` of `BF(r-2)` in copy `q`.
    pub fn embed(&self, copy: usize, v: Vertex) -> Vertex {
        assert!(copy < 4);
        let sub_rows = self.sub_rows();
        let (row, level) = (v % sub_rows, v / sub_rows);
        level * (1 << self.r) + copy * sub_rows + row
    }

    /// Copy index and `BF(r-2)` vertex for a vertex on levels `0..=r-2`.
    pub fn project(&self, v: Vertex) -> Option<(usize, Vertex)> {
        let rows = 1usize << self.r;
        let (row, level) = (v % rows, v / rows);
        if level > self.r - 2 {
            return None;
        }
        let sub_rows = self.sub_rows();
        Some((row / sub_rows, level * sub_rows + row % sub_rows))
    }

    /// Sorted vertex set of copy `q`.
    pub fn copy_vertices(&self, copy: usize) -> Vec<Vertex> {
        let n_sub = (self.r - 1) * self.sub_rows();
        let mut out: Vec<Vertex> = (0..n_sub).map(|v| self.embed(copy, v)).collect();
        out.sort_unstable();
        out
    }

    pub fn copies(&self) -> [Vec<Vertex>; 4] {
        [0, 1, 2, 3].map(|q| self.copy_vertices(q))
    }

    /// Vertices on levels `r-1` and `r`, outside every copy.
    pub fn remainder(&self) -> Vec<Vertex> {
        let rows = 1usize << self.r;
        ((self.r - 1) * rows..(self.r + 1) * rows).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(row: usize, level: usize) -> ButterflyCoordinate {
        ButterflyCoordinate::new(row, level)
    }

    #[test]
    fn small_sizes() {
        let b1 = Butterfly::new(1).unwrap();
        assert_eq!((b1.graph().vertex_count(), b1.graph().edge_count()), (4, 4));
        assert!((0..4).all(|v| b1.graph().degree(v) == 2));
        let b2 = Butterfly::new(2).unwrap();
        assert_eq!((b2.graph().vertex_count(), b2.graph().edge_count()), (12, 16));
        let b3 = Butterfly::new(3).unwrap();
        assert_eq!((b3.graph().vertex_count(), b3.graph().edge_count()), (32, 48));
    }

    #[test]
    fn rejects_bad_dimension() {
        assert!(matches!(
            Butterfly::new(0),
            Err(ButterflyError::DimensionTooSmall { .. })
        ));
        assert!(matches!(
            Butterfly::new(MAX_DIMENSION + 1),
            Err(ButterflyError::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn edge_kinds() {
        assert_eq!(edge_kind(3, c(0, 0), c(0, 1)), Ok(EdgeKind::Straight));
        assert_eq!(edge_kind(3, c(2, 2), c(6, 3)), Ok(EdgeKind::Cross));
        assert_eq!(edge_kind(3, c(6, 3), c(2, 2)), Ok(EdgeKind::Cross));
        assert!(matches!(
            edge_kind(3, c(0, 0), c(2, 1)),
            Err(ButterflyError::WrongBit { xor: 2, weight: 1, .. })
        ));
        assert!(matches!(
            edge_kind(3, c(0, 0), c(0, 2)),
            Err(ButterflyError::NotConsecutive { .. })
        ));
        assert!(matches!(
            edge_kind(3, c(8, 0), c(8, 1)),
            Err(ButterflyError::OutOfRange(_))
        ));
    }

    #[test]
    fn labels_and_coordinates() {
        let b = Butterfly::new(3).unwrap();
        let v = b.index(c(5, 2)).unwrap();
        assert_eq!(v, 21);
        assert_eq!(b.graph().label(v), "[5,2]");
        assert_eq!(b.coordinate(v), c(5, 2));
        assert_eq!("[5,2]".parse::<ButterflyCoordinate>().unwrap(), c(5, 2));
        assert_eq!(b.mirror(v), b.index(c(4, 2)).unwrap());
    }

    #[test]
    fn bf2_diamonds_cover_all_edges() {
        let b = Butterfly::new(2).unwrap();
        let d = b.binding_diamonds().unwrap();
        assert_eq!(d.len(), 4);
        let mut all: Vec<Edge> = d.iter().flat_map(|x| x.edges()).collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 16);
        assert_eq!(all, b.graph().edges());
    }

    #[test]
    fn diamonds_need_dimension_two() {
        assert!(Butterfly::new(1).unwrap().binding_diamonds().is_err());
    }

    #[test]
    fn subcopy_embedding_round_trips() {
        let b = Butterfly::new(5).unwrap();
        let d = b.decompose_subcopies().unwrap();
        for q in 0..4 {
            for v in 0..32 {
                assert_eq!(d.project(d.embed(q, v)), Some((q, v)));
            }
        }
        assert!(Butterfly::new(2).unwrap().decompose_subcopies().is_err());
    }
}
