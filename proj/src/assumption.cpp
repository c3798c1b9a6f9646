#include <algorithm>
#include <cmath>

#include "slepian/varying_masks.hpp"

namespace slepian {

assumption_report assumption_diagnostic(const spectrum_provider& provider, const std::vector<double>& schedule,
                                        int tracked, double floor, double distinct_tol) {
  if (tracked < 1) throw domain_error("need at least one tracked eigenvalue");
  assumption_report rep;
  rep.schedule = schedule;
  rep.tracked = tracked;
  rep.floor = floor;
  rep.distinct_tol = distinct_tol;
  const int window_request = tracked + 10;

  spectrum prev;
  for (std::size_t s = 0; s < schedule.size(); ++s) {
    spectrum cur = provider(schedule[s], window_request);
    const int window = static_cast<int>(std::min<Eigen::Index>(window_request, cur.size()));
    const int top = std::min(tracked, window);
    std::vector<double> vals(cur.values.data(), cur.values.data() + top);

    for (int i = 0; i + 1 < top; ++i) {
      if (vals[i + 1] < floor) break;
      if (vals[i] - vals[i + 1] <= distinct_tol) {
        rep.all_distinct = false;
        rep.non_distinct_steps.push_back(static_cast<int>(s));
        break;
      }
    }
    rep.values.push_back(std::move(vals));

    if (s > 0) {
      const int w = static_cast<int>(std::min(prev.size(), cur.size()));
      const int wp = std::min<int>(w, window_request);
      const Eigen::MatrixXd overlap =
          (prev.vectors.leftCols(wp).adjoint() * cur.vectors.leftCols(wp)).cwiseAbs();
      const std::vector<int> pi = max_weight_assignment(overlap);
      const int t = std::min(tracked, wp);
      auto ordered = [&](double a, double b) { return a >= floor && b >= floor && std::abs(a - b) > distinct_tol; };
      for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j) {
          if (pi[i] <= pi[j]) continue;
          if (!ordered(prev.values(i), prev.values(j))) continue;
          if (!ordered(cur.values(pi[i]), cur.values(pi[j]))) continue;
          rep.crossings.push_back({static_cast<int>(s) - 1, i + 1, j + 1, overlap(i, pi[i])});
        }
    }
    prev = std::move(cur);
  }
  rep.ordering_preserved = rep.crossings.empty();
  return rep;
}

assumption_report assumption_diagnostic(const concentration_problem& problem, const std::vector<double>& schedule,
                                        int tracked, double floor, double distinct_tol) {
  auto provider = [&problem](double eps, int window) {
    spectrum full = full_hermitian_eig(problem.dense(eps).dense);
    const Eigen::Index w = std::min<Eigen::Index>(window, full.size());
    return spectrum{full.values.head(w), full.vectors.leftCols(w)};
  };
  return assumption_diagnostic(provider, schedule, tracked, floor, distinct_tol);
}

}  // namespace slepian
