#pragma once

namespace qbps {

// Full command-line surface.  Returns the process exit code: 0 success,
// 1 failed check, 2 usage error, 3 resource limit.  Engine errors are
// reported as one-line JSON objects on stderr.
int run_cli(int argc, char** argv);

}  // namespace qbps
