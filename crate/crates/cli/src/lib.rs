//! Command-line front end for the `twheis` library.

pub mod args;
pub mod commands;
pub mod report;

use twheis::Error;

/// Exit status for a library error: 2 for malformed input, 3 for internal
/// invariant violations, 1 for unmet mathematical preconditions.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_parse() {
        2
    } else if e.is_internal() {
        3
    } else {
        1
    }
}
