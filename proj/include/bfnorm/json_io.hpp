#pragma once

#include <json.hpp>

#include "bfnorm/reldeg.hpp"
#include "bfnorm/search.hpp"
#include "bfnorm/subspace.hpp"

namespace bfnorm {

/// "0x1f" style rendering used for vectors of F_2^m in JSON output.
std::string hex_int(std::uint32_t v);

nlohmann::json flat_to_json(const AffineFlat& flat);
nlohmann::json report_to_json(const NormalityReport& report);
/// JSON-lines record: id, m, degree, status, min_rel_degree, witness, rel_degrees.
nlohmann::json record_to_json(const FunctionRecord& record);
nlohmann::json entry_to_json(const DTableEntry& entry);
nlohmann::json distribution_to_json(const RelDegDistribution& dist);
nlohmann::json work_factor_to_json(const WorkFactor& w);

}  // namespace bfnorm
