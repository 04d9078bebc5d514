#pragma once

namespace dpc {

/// Entry point behind the `dpc` binary: subcommands cluster, gen, bench.
/// Returns 0 on success, 2 on usage errors, 1 on runtime failures.
int cli_main(int argc, const char* const* argv);

}  // namespace dpc
