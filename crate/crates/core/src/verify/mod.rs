//! Verification suites: property and oracle checks grouped by acceptance criterion.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

mod big;
mod classical;
mod hh;
mod tate;

pub use classical::{golden_file_name, golden_kinds};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub passed: bool,
    pub blocking: bool,
    pub detail: String,
}

impl Check {
    pub fn new(criterion: u8, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check { criterion, name: name.into(), passed, blocking: true, detail: detail.into() }
    }

    /// A failed check carrying the error that stopped it.
    pub fn error(criterion: u8, name: impl Into<String>, e: &Error) -> Check {
        Check::new(criterion, name, false, format!("error: {e}"))
    }

    pub fn from_result(criterion: u8, name: impl Into<String>, r: Result<(bool, String)>) -> Check {
        let name = name.into();
        match r {
            Ok((ok, detail)) => Check::new(criterion, name, ok, detail),
            Err(e) => Check::error(criterion, name, &e),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Classical,
    Big,
    Tate,
    Hh,
    All,
}

impl Suite {
    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::Classical => &[1, 2, 3, 4],
            Suite::Big => &[5],
            Suite::Tate => &[6, 7],
            Suite::Hh => &[8, 9, 10, 11],
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Classical => "classical",
            Suite::Big => "big",
            Suite::Tate => "tate",
            Suite::Hh => "hh",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "classical" => Ok(Suite::Classical),
            "big" => Ok(Suite::Big),
            "tate" => Ok(Suite::Tate),
            "hh" => Ok(Suite::Hh),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite {s:?} (classical, big, tate, hh, all)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub limit: usize,
    pub golden_dir: PathBuf,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { limit: crate::tate::DEFAULT_LIMIT, golden_dir: default_golden_dir() }
    }
}

pub fn default_golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("polys")
}

pub fn run_criterion(k: u8, cfg: &VerifyConfig) -> Vec<Check> {
    match k {
        1 => classical::ghost_homomorphism(),
        2 => classical::golden_files(&cfg.golden_dir),
        3 => classical::padic_isomorphism(),
        4 => classical::verschiebung_restriction(),
        5 => big::big_witt(&cfg.golden_dir),
        6 => tate::q_suite(cfg.limit),
        7 => tate::noncommutative(cfg.limit),
        8 => hh::commutative_oracle(cfg.limit),
        9 => hh::hesselholt_sequence(cfg.limit),
        10 => hh::cyclic_identities(cfg.limit),
        11 => hh::fbv_stretch(cfg.limit),
        _ => vec![Check::new(k, "unknown criterion", false, "")],
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<Check> {
    suite.criteria().iter().flat_map(|&k| run_criterion(k, cfg)).collect()
}

/// Whether every blocking check passed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed || !c.blocking)
}
