//! Library side of the `resat` binary. Everything the subcommands do lives
//! here so it can be driven from tests without spawning processes; `main.rs`
//! only parses arguments and maps results to exit codes.

pub mod batch;
pub mod cactus;
pub mod generate;
pub mod input;
pub mod policy;
pub mod run;
