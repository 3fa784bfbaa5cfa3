#include "selftest.hpp"

#include "criteria.hpp"

namespace trivec::selftest {

bool run(const cli::SelftestRequest& req, nlohmann::json& verdict) {
  acceptance::CriterionOptions opt{req.seed, req.threads};
  nlohmann::json results = nlohmann::json::array();
  bool all = true;
  const int lo = req.criterion ? *req.criterion : 1, hi = req.criterion ? *req.criterion : acceptance::kCriteria;
  for (int id = lo; id <= hi; ++id) {
    auto r = acceptance::run_criterion(id, opt);
    all = all && r.pass;
    results.push_back({{"criterion", id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
  }
  verdict = {{"pass", all}, {"criteria", results}};
  return all;
}

}  // namespace trivec::selftest
