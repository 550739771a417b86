//! Solver configuration: which boundary policy runs, how resets are scoped,
//! and the knobs of the underlying CDCL machinery.

/// What decides between restarting and resetting at a restart boundary.
#[derive(Clone, PartialEq, Debug)]
pub enum PolicyKind {
    /// Always restart; activities are never touched.
    Baseline,
    /// Reset with a fixed probability per boundary.
    Fixed { reset_probability: f64 },
    /// Thompson sampling over Beta posteriors; `decay` discounts old
    /// outcomes so the posteriors never harden (None keeps classic updates).
    Thompson { decay: Option<f64> },
    /// Sliding-window UCB over the last `window` credited outcomes.
    SwUcb { window: usize, explore: f64 },
}

/// How much of the activity order a reset destroys.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum ResetScope {
    /// Re-randomize every activity.
    Full,
    /// Re-randomize every activity, then pin the previous top `k` variables
    /// above the noise in their old order. `Top(0)` behaves like `Full`; any
    /// `k >= num_vars` reproduces the entire previous order.
    Top(u32),
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub policy: PolicyKind,
    pub reset_scope: ResetScope,
    pub seed: u64,
    /// Stop with an indeterminate outcome after this many conflicts.
    pub conflict_budget: Option<u64>,
    /// Conflicts per Luby step: boundary i fires after luby(i) * unit.
    pub luby_unit: u64,
    /// EVSIDS decay factor for variable activities.
    pub activity_decay: f64,
    /// Smoothing factor for the reward tracker's moving average.
    pub ema_decay: f64,
    /// Ablation: classify a window as a success when its reward is *below*
    /// the moving average instead of above it.
    pub flip_success: bool,
    /// Learnt clauses tolerated before the first database reduction.
    pub learnt_limit: usize,
    /// Record the decision literal sequence in the run stats.
    pub record_decisions: bool,
}

impl Default for SolverConfig {
    fn default() -> SolverConfig {
        SolverConfig {
            policy: PolicyKind::Baseline,
            reset_scope: ResetScope::Full,
            seed: 0,
            conflict_budget: None,
            luby_unit: 256,
            activity_decay: 0.95,
            ema_decay: 0.8,
            flip_success: false,
            learnt_limit: 2000,
            record_decisions: false,
        }
    }
}

#[derive(Clone, PartialEq, Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("reset probability {0} is outside [0, 1]")]
    ResetProbability(f64),
    #[error("posterior decay {0} is outside (0, 1)")]
    PosteriorDecay(f64),
    #[error("UCB window must hold at least one outcome")]
    Window,
    #[error("exploration coefficient {0} must be positive")]
    Explore(f64),
    #[error("activity decay {0} is outside (0, 1]")]
    ActivityDecay(f64),
    #[error("moving-average decay {0} is outside (0, 1)")]
    EmaDecay(f64),
    #[error("the Luby unit must be at least one conflict")]
    LubyUnit,
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        match self.policy {
            PolicyKind::Baseline => {}
            PolicyKind::Fixed { reset_probability: p } => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(ConfigError::ResetProbability(p));
                }
            }
            PolicyKind::Thompson { decay: Some(d) } => {
                if !(d > 0.0 && d < 1.0) {
                    return Err(ConfigError::PosteriorDecay(d));
                }
            }
            PolicyKind::Thompson { decay: None } => {}
            PolicyKind::SwUcb { window, explore } => {
                if window == 0 {
                    return Err(ConfigError::Window);
                }
                if !(explore > 0.0) {
                    return Err(ConfigError::Explore(explore));
                }
            }
        }
        if !(self.activity_decay > 0.0 && self.activity_decay <= 1.0) {
            return Err(ConfigError::ActivityDecay(self.activity_decay));
        }
        if !(self.ema_decay > 0.0 && self.ema_decay < 1.0) {
            return Err(ConfigError::EmaDecay(self.ema_decay));
        }
        if self.luby_unit == 0 {
            return Err(ConfigError::LubyUnit);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        assert_eq!(SolverConfig::default().validate(), Ok(()));
    }

    #[test]
    fn out_of_range_knobs_are_rejected() {
        let mut c = SolverConfig { policy: PolicyKind::Fixed { reset_probability: 1.5 }, ..SolverConfig::default() };
        assert_eq!(c.validate(), Err(ConfigError::ResetProbability(1.5)));

        c.policy = PolicyKind::Thompson { decay: Some(1.0) };
        assert_eq!(c.validate(), Err(ConfigError::PosteriorDecay(1.0)));

        c.policy = PolicyKind::SwUcb { window: 0, explore: 0.2 };
        assert_eq!(c.validate(), Err(ConfigError::Window));

        c.policy = PolicyKind::SwUcb { window: 30, explore: 0.0 };
        assert_eq!(c.validate(), Err(ConfigError::Explore(0.0)));

        c.policy = PolicyKind::Baseline;
        c.ema_decay = 1.0;
        assert_eq!(c.validate(), Err(ConfigError::EmaDecay(1.0)));

        c.ema_decay = 0.8;
        c.luby_unit = 0;
        assert_eq!(c.validate(), Err(ConfigError::LubyUnit));
    }
}
