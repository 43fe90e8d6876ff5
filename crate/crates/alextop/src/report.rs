//! Validation outcome shared by the axiom checkers: a list of violations,
//! empty exactly when the checked object is valid.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport<V> {
    violations: Vec<V>,
}

impl<V> ValidationReport<V> {
    pub fn valid() -> Self {
        ValidationReport { violations: Vec::new() }
    }

    pub fn from_violations(violations: Vec<V>) -> Self {
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[V] {
        &self.violations
    }
}

impl<V> Default for ValidationReport<V> {
    fn default() -> Self {
        Self::valid()
    }
}
