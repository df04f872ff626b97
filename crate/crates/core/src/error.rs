use crate::coords::CoordSet;
use crate::face::Face;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UsoError {
    #[error("dimension {n} outside supported range 1..={max}")]
    DimensionOutOfRange { n: usize, max: usize },
    #[error("vertex {vertex} does not belong to the {n}-cube")]
    VertexOutOfRange { vertex: CoordSet, n: usize },
    #[error("coordinate {coord} outside 1..={n}")]
    CoordinateOutOfRange { coord: usize, n: usize },
    #[error("outmap table has {found} entries, expected {expected}")]
    TableLength { expected: usize, found: usize },
    #[error("outmap of vertex {vertex} names coordinates beyond dimension {n}")]
    OutmapOutOfRange { vertex: CoordSet, n: usize },
    #[error("edge on coordinate {coord} at vertex {vertex} has {outgoing} outgoing endpoints")]
    EdgeInconsistent {
        vertex: CoordSet,
        coord: usize,
        outgoing: u8,
    },
    #[error("face {face} has no sink")]
    ZeroSinks { face: Face },
    #[error("face {face} has several sinks, e.g. {first} and {second}")]
    MultipleSinks {
        face: Face,
        first: CoordSet,
        second: CoordSet,
    },
    #[error(
        "cannot flip edge on coordinate {coord} at {vertex}: outmaps differ off that coordinate"
    )]
    FlipPreconditionViolated { vertex: CoordSet, coord: usize },
    #[error("matching uses vertex {vertex} twice")]
    MatchingOverlap { vertex: CoordSet },
    #[error("face {face} is not a hypersink: vertex {vertex} leaves it")]
    HypersinkViolated { face: Face, vertex: CoordSet },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("expected {expected} fiber orientations, found {found}")]
    FiberCount { expected: usize, found: usize },
    #[error("vertices {u} and {v} admit no join step; the orientation is not a USO")]
    NoJoinStep { u: CoordSet, v: CoordSet },
    #[error("vertex {vertex} is the global sink and has no cover")]
    IsSink { vertex: CoordSet },
    #[error("vertex {vertex} reaches no vertex with a smaller reachmap")]
    Uncovered { vertex: CoordSet },
    #[error("empty vertex set")]
    EmptySet,
    #[error("dimension {n} too large for this operation (limit {max})")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("dimension {n} too small for this construction (need at least {min})")]
    DimensionTooSmall { n: usize, min: usize },
}
