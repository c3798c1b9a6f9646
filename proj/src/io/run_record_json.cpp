#include "io/run_record_json.hpp"

#include <json.hpp>

#include "slepian/io.hpp"

namespace slepian::io {

std::string run_record_json(const run_record& rec, const echo_map& config, const std::vector<std::string>& vector_files) {
  nlohmann::ordered_json j;
  j["format"] = "slepian-run-record";
  j["version"] = 1;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [section, keys] : config)
    for (const auto& [k, v] : keys) cfg[section][k] = v;
  j["config"] = cfg;
  j["complete"] = rec.complete;
  j["requested"] = rec.config.count;
  j["accepted_count"] = rec.accepted();
  j["schedule"] = rec.schedule;

  auto accepted = nlohmann::ordered_json::array();
  for (int q = 0; q < rec.accepted(); ++q) {
    nlohmann::ordered_json a;
    a["q"] = q + 1;
    a["eps"] = rec.accept_eps[q];
    a["ratio"] = rec.ratios[q];
    a["reference"] = rec.references[q];
    a["difference"] = std::abs(rec.ratios[q] - rec.references[q]);
    a["vector_csv"] = q < static_cast<int>(vector_files.size()) ? vector_files[q] : "";
    accepted.push_back(a);
  }
  j["accepted"] = accepted;

  auto trace = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < rec.trace.size(); ++i) {
    const auto& st = rec.trace[i];
    nlohmann::ordered_json t;
    t["step"] = i;
    t["eps"] = st.eps;
    t["target"] = st.target;
    t["kappa"] = st.kappa;
    t["ratio"] = st.ratio;
    t["reference"] = st.reference;
    t["accepted"] = st.accepted;
    t["overshoot"] = st.overshoot;
    t["converged"] = st.converged;
    t["residual"] = st.residual;
    t["applications"] = st.applications;
    trace.push_back(t);
  }
  j["trace"] = trace;
  return j.dump(2) + "\n";
}

std::string run_timing_csv(const run_record& rec) {
  std::string out = "step,eps,seconds\n";
  for (std::size_t i = 0; i < rec.trace.size(); ++i)
    out += std::to_string(i) + "," + format_number(rec.trace[i].eps) + "," + format_number(rec.trace[i].seconds) + "\n";
  return out;
}

std::string assumption_json(const assumption_report& rep) {
  nlohmann::ordered_json j;
  j["tracked"] = rep.tracked;
  j["floor"] = rep.floor;
  j["distinct_tol"] = rep.distinct_tol;
  j["ordering_preserved"] = rep.ordering_preserved;
  j["all_distinct"] = rep.all_distinct;
  j["crossing_count"] = rep.crossings.size();
  auto crossings = nlohmann::ordered_json::array();
  for (const auto& c : rep.crossings)
    crossings.push_back({{"step", c.step},
                         {"eps_from", rep.schedule[c.step]},
                         {"eps_to", rep.schedule[c.step + 1]},
                         {"upper", c.upper},
                         {"lower", c.lower},
                         {"overlap", c.overlap}});
  j["crossings"] = crossings;
  j["non_distinct_steps"] = rep.non_distinct_steps;
  j["schedule"] = rep.schedule;
  j["values"] = rep.values;
  return j.dump(2) + "\n";
}

}  // namespace slepian::io
