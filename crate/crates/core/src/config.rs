/// Enumeration caps, grid resolution and sampling parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Denominator `D` of the membership grid `{0, 1/D, .., 1}`.
    pub denominator: u32,
    /// Largest order for which ideals are enumerated by scanning every mask.
    pub subset_cap: usize,
    /// Largest order for the closure-system enumeration.
    pub closure_cap: usize,
    /// Largest ideal family the closure-system strategy may build.
    pub family_cap: usize,
    /// Largest order accepted by the hemiring generator.
    pub generator_cap: usize,
    /// Largest grid fuzzy ideal family that may be enumerated.
    pub fuzzy_budget: usize,
    /// Largest number of grid fuzzy subsets scanned exhaustively; above this,
    /// statements over arbitrary fuzzy subsets draw `samples` random ones.
    pub exhaustive_fuzzy_limit: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            denominator: 20,
            subset_cap: 16,
            closure_cap: 64,
            family_cap: 100_000,
            generator_cap: 4,
            fuzzy_budget: 200_000,
            exhaustive_fuzzy_limit: 4096,
            samples: 500,
            seed: 0x5eed_0f1d_ea15,
        }
    }
}

impl Config {
    pub fn with_denominator(denominator: u32) -> Self {
        Config { denominator, ..Config::default() }
    }

    pub fn validate(&self) -> crate::Result<()> {
        if self.denominator == 0 {
            return Err(crate::Error::Input("grid denominator must be at least 1".into()));
        }
        if self.closure_cap == 0 || self.family_cap == 0 || self.generator_cap == 0 {
            return Err(crate::Error::Input("caps must be positive".into()));
        }
        if self.fuzzy_budget == 0 || self.samples == 0 {
            return Err(crate::Error::Input("budgets must be positive".into()));
        }
        Ok(())
    }
}
