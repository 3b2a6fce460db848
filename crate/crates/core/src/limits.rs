use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Hard bounds beyond which enumeration-based operations refuse to run.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest group order for class, normaliser and intersection work.
    pub max_order: u128,
    /// Largest degree accepted by constructors that build new actions.
    pub max_degree: usize,
    /// Largest group order for character tables.
    pub max_character_order: u128,
    /// Optional wall-clock deadline checked inside long loops.
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 10_000_000,
            max_degree: 10_000,
            max_character_order: 100_000,
            deadline: None,
        }
    }
}

impl Limits {
    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.deadline = Some(Instant::now() + timeout);
        self
    }

    pub fn check_order(&self, order: u128, what: &str) -> Result<()> {
        if order > self.max_order {
            return Err(Error::resource(format!(
                "{what}: group order {order} exceeds bound {}",
                self.max_order
            )));
        }
        Ok(())
    }

    pub fn check_degree(&self, degree: usize, what: &str) -> Result<()> {
        if degree > self.max_degree {
            return Err(Error::resource(format!(
                "{what}: degree {degree} exceeds bound {}",
                self.max_degree
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::resource("deadline exceeded")),
            _ => Ok(()),
        }
    }
}
