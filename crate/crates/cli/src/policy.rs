//! Translating command-line policy flags into solver configuration.

use std::fmt;
use std::str::FromStr;

use resat_core::engine::{PolicyKind, ResetScope, SolverConfig};

/// The `--policy` flag value. Knob flags (`--decay`, `--window`, ...) are
/// folded in later by [`build_config`], so two runs with the same choice can
/// still differ in configuration.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum PolicyChoice {
    Baseline,
    Fixed(f64),
    Thompson,
    ThompsonDecay,
    SwUcb,
}

impl FromStr for PolicyChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<PolicyChoice, String> {
        match s {
            "baseline" => Ok(PolicyChoice::Baseline),
            "thompson" => Ok(PolicyChoice::Thompson),
            "thompson-decay" => Ok(PolicyChoice::ThompsonDecay),
            "swucb" => Ok(PolicyChoice::SwUcb),
            other => match other.strip_prefix("fixed=") {
                Some(p) => {
                    let p: f64 =
                        p.parse().map_err(|_| format!("'{p}' is not a probability"))?;
                    if !(0.0..=1.0).contains(&p) {
                        return Err(format!("reset probability {p} is outside [0, 1]"));
                    }
                    Ok(PolicyChoice::Fixed(p))
                }
                None => Err(format!(
                    "unknown policy '{other}' \
                     (expected baseline, fixed=<p>, thompson, thompson-decay, or swucb)"
                )),
            },
        }
    }
}

/// Search knobs shared by `solve` and `batch`.
#[derive(clap::Args, Clone, Debug)]
pub struct SearchFlags {
    /// Posterior decay for thompson-decay, in (0, 1)
    #[arg(long, default_value_t = 0.8)]
    pub decay: f64,

    /// Reward moving-average decay, in (0, 1)
    #[arg(long = "ema-decay", default_value_t = 0.8)]
    pub ema_decay: f64,

    /// Sliding window size for swucb, in boundaries
    #[arg(long, default_value_t = 30)]
    pub window: usize,

    /// Exploration constant for swucb
    #[arg(long, default_value_t = 0.2)]
    pub explore: f64,

    /// Preserve the top-k activity order on reset instead of resetting fully
    #[arg(long = "partial-k")]
    pub partial_k: Option<u32>,

    /// Seed for all randomized boundary behavior
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Count a window as a success when its learning rate drops below the
    /// moving average instead of above (ablation)
    #[arg(long = "flip-success", default_value_t = false)]
    pub flip_success: bool,
}

/// Builds a full solver configuration from a policy choice plus knobs.
/// Validation happens in [`SolverConfig::validate`] when the solver is built.
pub fn build_config(choice: PolicyChoice, flags: &SearchFlags) -> SolverConfig {
    let policy = match choice {
        PolicyChoice::Baseline => PolicyKind::Baseline,
        PolicyChoice::Fixed(p) => PolicyKind::Fixed { reset_probability: p },
        PolicyChoice::Thompson => PolicyKind::Thompson { decay: None },
        PolicyChoice::ThompsonDecay => PolicyKind::Thompson { decay: Some(flags.decay) },
        PolicyChoice::SwUcb => {
            PolicyKind::SwUcb { window: flags.window, explore: flags.explore }
        }
    };
    SolverConfig {
        policy,
        reset_scope: flags.partial_k.map_or(ResetScope::Full, ResetScope::Top),
        seed: flags.seed,
        ema_decay: flags.ema_decay,
        flip_success: flags.flip_success,
        ..SolverConfig::default()
    }
}

/// Stable label for CSV/JSON output; carries the knobs that matter for the
/// chosen policy so records from different configurations never collide.
pub fn describe(choice: PolicyChoice, flags: &SearchFlags) -> String {
    let mut label = match choice {
        PolicyChoice::Baseline => "baseline".to_string(),
        PolicyChoice::Fixed(p) => format!("fixed={p}"),
        PolicyChoice::Thompson => "thompson".to_string(),
        PolicyChoice::ThompsonDecay => format!("thompson-decay(d={})", flags.decay),
        PolicyChoice::SwUcb => format!("swucb(w={} c={})", flags.window, flags.explore),
    };
    if let Some(k) = flags.partial_k {
        label.push_str(&format!("+top{k}"));
    }
    if flags.flip_success {
        label.push_str("+flip");
    }
    label
}

impl fmt::Display for PolicyChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolicyChoice::Baseline => write!(f, "baseline"),
            PolicyChoice::Fixed(p) => write!(f, "fixed={p}"),
            PolicyChoice::Thompson => write!(f, "thompson"),
            PolicyChoice::ThompsonDecay => write!(f, "thompson-decay"),
            PolicyChoice::SwUcb => write!(f, "swucb"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_values_parse_to_choices() {
        assert_eq!("baseline".parse(), Ok(PolicyChoice::Baseline));
        assert_eq!("thompson".parse(), Ok(PolicyChoice::Thompson));
        assert_eq!("thompson-decay".parse(), Ok(PolicyChoice::ThompsonDecay));
        assert_eq!("swucb".parse(), Ok(PolicyChoice::SwUcb));
        assert_eq!("fixed=0.2".parse(), Ok(PolicyChoice::Fixed(0.2)));
        assert_eq!("fixed=0".parse(), Ok(PolicyChoice::Fixed(0.0)));
    }

    #[test]
    fn out_of_range_and_unknown_values_are_rejected() {
        assert!("fixed=1.5".parse::<PolicyChoice>().unwrap_err().contains("outside"));
        assert!("fixed=-0.1".parse::<PolicyChoice>().is_err());
        assert!("fixed=abc".parse::<PolicyChoice>().is_err());
        assert!("ucb".parse::<PolicyChoice>().unwrap_err().contains("unknown policy"));
    }

    fn default_flags() -> SearchFlags {
        SearchFlags {
            decay: 0.8,
            ema_decay: 0.8,
            window: 30,
            explore: 0.2,
            partial_k: None,
            seed: 0,
            flip_success: false,
        }
    }

    #[test]
    fn knobs_land_in_the_config() {
        let flags = SearchFlags { partial_k: Some(4), seed: 7, ..default_flags() };
        let config = build_config(PolicyChoice::ThompsonDecay, &flags);
        assert_eq!(config.policy, PolicyKind::Thompson { decay: Some(0.8) });
        assert_eq!(config.reset_scope, ResetScope::Top(4));
        assert_eq!(config.seed, 7);
        assert!(config.validate().is_ok());

        let config = build_config(PolicyChoice::SwUcb, &default_flags());
        assert_eq!(config.policy, PolicyKind::SwUcb { window: 30, explore: 0.2 });
        assert_eq!(config.reset_scope, ResetScope::Full);
    }

    #[test]
    fn labels_distinguish_configurations() {
        let flags = default_flags();
        assert_eq!(describe(PolicyChoice::Baseline, &flags), "baseline");
        assert_eq!(describe(PolicyChoice::Fixed(0.5), &flags), "fixed=0.5");
        assert_eq!(describe(PolicyChoice::ThompsonDecay, &flags), "thompson-decay(d=0.8)");
        let partial = SearchFlags { partial_k: Some(2), ..default_flags() };
        assert_eq!(describe(PolicyChoice::Thompson, &partial), "thompson+top2");
        let flipped = SearchFlags { flip_success: true, ..default_flags() };
        assert_eq!(describe(PolicyChoice::SwUcb, &flipped), "swucb(w=30 c=0.2)+flip");
    }
}
