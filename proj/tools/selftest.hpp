#pragma once

#include "trivec/cli/cli.hpp"

namespace trivec::selftest {

// Runs the acceptance criteria for `trivec selftest`.
bool run(const cli::SelftestRequest& req, nlohmann::json& verdict);

}  // namespace trivec::selftest
