#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "trivec/algebra/field.hpp"

namespace trivec::cli {

enum Exit : int { ok = 0, usage = 1, disagreement = 2 };

struct SelftestRequest {
  std::optional<int> criterion;  // all when empty
  u64 seed = 0;
  unsigned threads = 0;
};

struct Hooks {
  // fills the verdict and returns true when every requested criterion passed
  std::function<bool(const SelftestRequest&, nlohmann::json& verdict)> selftest;
};

// args excludes the program name. One JSON report goes to `out`; diagnostics
// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks = {});

// hex SHA-256 of a file's bytes
std::string file_digest(const std::string& path);

}  // namespace trivec::cli
