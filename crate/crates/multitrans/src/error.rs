use thiserror::Error;

/// Library-level failure conditions.
///
/// Variants map onto the CLI exit-code contract: `Parse` exits 2, the
/// invariant-style variants exit 3, and `Capability` exits 4.
#[derive(Debug, Error)]
pub enum Error {
    /// Input that does not describe a usable system (bad table entries,
    /// edges out of range, a graph that prunes to nothing, ...).
    #[error("invalid system: {0}")]
    InvalidSystem(String),

    /// A cylinder word or point set that does not live in the system.
    #[error("inadmissible cylinder: {0}")]
    InadmissibleCylinder(String),

    /// Bounds that contradict each other or exceed the data horizon.
    #[error("bad bounds: {0}")]
    Bounds(String),

    /// A computation that would exceed a hard resource cap.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An exact answer was requested from a representation that cannot
    /// provide one (e.g. exact family membership of a truncated set).
    #[error("capability: {0}")]
    Capability(String),

    /// Two lanes that must agree produced different exact answers.
    /// This indicates a defect in the toolkit itself, never in the input.
    #[error("self-check failed: {0}")]
    SelfCheck(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
