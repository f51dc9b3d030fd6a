#pragma once

#include <string>
#include <vector>

namespace bundlex {

/* Command dispatch for the bundlex binary; args excludes the program
 * name. Returns the process exit code: 0 on success (for verify, a
 * passing report), 1 when verification ran and failed, 2 on malformed
 * input of any kind (bad flags, unreadable files, invalid spec data, a
 * non-numeric BUNDLEX_SEED). Diagnostics go to stderr. */
int run_command(const std::vector<std::string>& args);

}  // namespace bundlex
