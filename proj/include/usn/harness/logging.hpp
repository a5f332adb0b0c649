#pragma once

namespace usn::harness {

/// Applies USN_LOG=debug|info (default info) to the global logger; logs go
/// to stderr.
void configure_logging_from_env();

}  // namespace usn::harness
