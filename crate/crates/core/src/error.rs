use thiserror::Error;

#[derive(Debug, Error)]
pub enum TdgError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("invalid distance factor: {0}")]
    InvalidFactor(String),
    #[error("factor table too short: distance {distance} but table has {len} entries")]
    FactorTableTooShort { distance: u32, len: usize },
    #[error("invalid utilities: {0}")]
    InvalidUtilities(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),
    #[error("target occupied: node {node}")]
    TargetOccupied { node: usize },
    #[error("self swap: agent {agent}")]
    SelfSwap { agent: usize },
    #[error("agent {agent} out of range (n = {n})")]
    AgentOutOfRange { agent: usize, n: usize },
    #[error("no topological order: friendship graph is cyclic")]
    NoTopologicalOrder,
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("script step {index} rejected: {reason}")]
    ScriptStep { index: usize, reason: String },
    #[error("state space too large: more than {limit} states")]
    StateSpaceTooLarge { limit: usize },
    #[error("budget exceeded: {count} assignments to enumerate, budget is {budget}")]
    BudgetExceeded { count: String, budget: u64 },
    #[error("diameter too small: {diameter} (need at least 3)")]
    DiameterTooSmall { diameter: u32 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid exact-3-cover instance: {0}")]
    InvalidX3c(String),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("{name} = {value} out of range {min}..={max}")]
    OutOfRange {
        name: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("{method} construction produced an assignment that is not jump stable")]
    UnstableConstruction { method: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = TdgError> = std::result::Result<T, E>;
