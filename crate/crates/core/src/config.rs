/// Enumeration limits shared by every exhaustive operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest group (or element set) that may be enumerated.
    pub max_elements: usize,
    /// Step budget for the standard-form rewriter.
    pub max_rewrite_steps: usize,
}

pub const DEFAULT_MAX_ELEMENTS: usize = 100_000;
pub const MAX_ELEMENTS_ENV: &str = "MOORE_MAX_ELEMENTS";

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_elements: DEFAULT_MAX_ELEMENTS, max_rewrite_steps: 1_000_000 }
    }
}

impl Bounds {
    /// Defaults, with `MOORE_MAX_ELEMENTS` overriding the enumeration bound.
    pub fn from_env() -> Self {
        let mut b = Bounds::default();
        if let Some(v) = std::env::var(MAX_ELEMENTS_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            b.max_elements = v;
        }
        b
    }

    pub fn with_max_elements(mut self, n: usize) -> Self {
        self.max_elements = n;
        self
    }
}
