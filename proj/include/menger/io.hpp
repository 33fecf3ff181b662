#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "menger/golab.hpp"
#include "menger/length.hpp"
#include "menger/shapes.hpp"

namespace menger {

/// Unreadable or ill-formed input file.
class MalformedInput : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

using json = nlohmann::ordered_json;

/// 12 significant digits; infinities as "inf".
std::string format_number(double x);
/// Number rounded to 12 significant digits, or the string "inf".
json number_json(double x);

MetricSpace parse_point_set(std::string_view text);
MetricSpace read_point_set(const std::filesystem::path& path);
json point_set_json(const MetricSpace& space);

/// "0,1,2" or "0-4" ranges mixed with commas.
IndexSet parse_index_list(std::string_view text);
json index_set_json(const IndexSet& s);

json tree_json(const SteinerTree& tree);
json smt_result_json(const SmtResult& r);
json estimate_json(const LengthEstimate& e);
json cover_json(const ProofCover& pc);
json shape_sidecar_json(const SampledShape& s);

json convergence_json(const ConvergenceReport& rep);
std::string convergence_csv(const ConvergenceReport& rep);

}  // namespace menger
