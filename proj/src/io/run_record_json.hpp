#pragma once

#include <map>
#include <string>
#include <vector>

#include "slepian/varying_masks.hpp"

namespace slepian::io {

using echo_map = std::map<std::string, std::map<std::string, std::string>>;

// The run record without wall-clock data, so that reruns are byte-identical.
// Accepted vectors are referenced by their CSV file names.
std::string run_record_json(const run_record& rec, const echo_map& config, const std::vector<std::string>& vector_files);

// Per-step wall-clock seconds, kept apart from the record.
std::string run_timing_csv(const run_record& rec);

std::string assumption_json(const assumption_report& rep);

}  // namespace slepian::io
