use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown letter `{0}`")]
    UnknownLetter(char),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("duplicate state name `{0}`")]
    DuplicateState(String),
    #[error("nondeterministic transition from `{state}` on `{letter}`")]
    Nondeterministic { state: String, letter: char },
    #[error("no initial state")]
    MissingInitial,
    #[error("useless states: {}", .0.join(", "))]
    UselessStates(Vec<String>),
    #[error("automaton accepts the empty language")]
    EmptyLanguage,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("regex error at offset {offset}: {message}")]
    Regex { offset: usize, message: String },

    #[error("automaton is not minimum: it has distinct equivalent states")]
    NotMinimized,
    #[error("forbidden pattern: `{p}` and `{q}` both enter `{r}` on `{letter}`")]
    ForbiddenPattern {
        p: String,
        q: String,
        r: String,
        letter: char,
    },
    #[error("automaton is not reversible")]
    NotReversible,
    #[error("automata are not equivalent")]
    NotEquivalent,
    #[error("no morphism between the automata")]
    NoMorphism,
    #[error("state `{0}` has incoming transitions on more than one letter")]
    HypothesisViolated(String),
    #[error("states `{0}` and `{1}` are not equivalent")]
    NotEquivalentStates(String, String),
    #[error("the language has a unique minimal reversible automaton")]
    UniqueMinimal,
    #[error("invalid witness: {0}")]
    WitnessInvalid(String),
    #[error("n = {n} is smaller than the required {required}")]
    NTooSmall { n: usize, required: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
