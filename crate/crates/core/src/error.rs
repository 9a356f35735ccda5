use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("letter {letter:?} is not in the rank-{rank} alphabet")]
    Alphabet { letter: char, rank: usize },

    #[error("word reduces to the identity and has no cyclic form")]
    TrivialCyclicWord,

    #[error("invalid ribbon graph: {0}")]
    Ribbon(String),

    #[error("circle order is undefined for coincident points")]
    Degenerate,

    #[error("malformed boundary position: {0}")]
    Position(String),

    #[error("a side must be a proper nonempty clopen set of ends")]
    ImproperSide,

    #[error("cylinder prefixes must be nonempty")]
    EmptyPrefix,

    #[error("arc is inessential")]
    InessentialArc,

    #[error("arcs of a multiarc must be pairwise disjoint")]
    NotDisjoint,

    #[error("an arc or sphere system must be nonempty")]
    EmptySystem,

    #[error("the spheres do not cross")]
    NoCrossing,

    #[error("distance cap must be positive")]
    BadCap,

    #[error("slope {0} is not a reduced fraction")]
    Slope(String),

    #[error("model violation: {0}")]
    ModelViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
