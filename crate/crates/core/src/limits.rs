/// Default cap on the number of lattice points any single operation may visit.
pub const DEFAULT_MAX_POINTS: usize = 1_000_000;

/// Resource and safety knobs shared by the enumerating operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_points: usize,
    /// Run confluence-dependent operations even for non-good parameters.
    pub force: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_points: DEFAULT_MAX_POINTS,
            force: false,
        }
    }
}

impl Limits {
    pub fn with_max_points(max_points: usize) -> Self {
        Limits {
            max_points,
            ..Limits::default()
        }
    }

    pub fn forced(self) -> Self {
        Limits { force: true, ..self }
    }
}
