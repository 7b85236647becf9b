#pragma once

namespace opspace {

// Full command-line driver. Returns the process exit code: 0 on success
// (and on passing verifications), 1 when an operation or check fails,
// 2 for usage errors.
int run_cli(int argc, char** argv);

} // namespace opspace
