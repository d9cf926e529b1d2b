//! Std companion to `rqcodes-core`: matrix files, report serialization and
//! threaded drivers used by the `rqcodes` binary.

pub mod format;
pub mod parallel;
pub mod report;

use rqcodes_core::{Error, Limits};

/// Environment variable that overrides the enumeration guard.
pub const ENUM_LIMIT_ENV: &str = "RQCODES_ENUM_LIMIT";

/// Default limits with the enumeration guard taken from `override_limit`,
/// else from [`ENUM_LIMIT_ENV`], else the built-in default.
pub fn limits_from_env(override_limit: Option<u64>) -> Result<Limits, Error> {
    let mut limits = Limits::default();
    if let Some(v) = override_limit {
        limits.enum_limit = v;
    } else if let Ok(text) = std::env::var(ENUM_LIMIT_ENV) {
        limits.enum_limit = text
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{ENUM_LIMIT_ENV} is not a positive integer: {text:?}")))?;
    }
    if limits.enum_limit == 0 {
        return Err(Error::InvalidParameter("the enumeration limit must be positive".into()));
    }
    Ok(limits)
}

/// Process exit status for an error: 3 for size guards, 2 for everything else.
pub fn exit_code(e: &Error) -> u8 {
    if e.is_resource() {
        3
    } else {
        2
    }
}
