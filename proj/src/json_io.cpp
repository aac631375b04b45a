#include "bfnorm/json_io.hpp"

#include <cstdio>

#include "bfnorm/text_format.hpp"

namespace bfnorm {

using nlohmann::json;

std::string hex_int(std::uint32_t v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%x", v);
  return buf;
}

json flat_to_json(const AffineFlat& flat) {
  json basis = json::array();
  for (auto b : flat.subspace().basis()) basis.push_back(hex_int(b));
  return {{"dim", flat.dim()}, {"basis", basis}, {"rep", hex_int(flat.rep())}};
}

json report_to_json(const NormalityReport& report) {
  json j = {{"status", to_string(report.status)},
            {"r", report.r_used},
            {"min_rel_degree", report.min_rel_degree},
            {"min_rel_degree_exact", report.min_rel_degree_exact}};
  j["witness"] = report.witness ? flat_to_json(*report.witness) : json(nullptr);
  j["witness_degree"] = report.witness_degree ? json(*report.witness_degree) : json(nullptr);
  return j;
}

json record_to_json(const FunctionRecord& record) {
  json j = {{"id", record.id}, {"m", record.m}, {"degree", record.degree}};
  if (record.report) {
    const json r = report_to_json(*record.report);
    for (const auto& key : {"status", "min_rel_degree", "min_rel_degree_exact", "witness", "witness_degree"})
      j[key] = r[key];
  }
  if (!record.rel_degrees.empty()) {
    json rd = json::object();
    for (const auto& [r, d] : record.rel_degrees) rd[std::to_string(r)] = d;
    j["rel_degrees"] = rd;
  }
  return j;
}

json entry_to_json(const DTableEntry& e) {
  json j = {{"m", e.m},
            {"r", e.r},
            {"k", e.k},
            {"variant", e.degree_exactly_k ? "degree_equal" : "degree_at_most"},
            {"mode", to_string(e.mode)},
            {"value", e.value},
            {"functions_scanned", e.functions_scanned},
            {"note", e.note}};
  j["seed"] = e.seed ? json(*e.seed) : json(nullptr);
  if (e.witness)
    j["witness"] = {{"anf", format_anf(truth_table_to_anf(*e.witness))}, {"hex", to_hex(*e.witness)}};
  else
    j["witness"] = nullptr;
  return j;
}

json distribution_to_json(const RelDegDistribution& dist) {
  json rows = json::object();
  for (const auto& [r, row] : dist.counts) rows[std::to_string(r)] = row;
  return {{"m", dist.m}, {"functions", dist.functions}, {"counts", rows}};
}

json work_factor_to_json(const WorkFactor& w) {
  return {{"r", w.r},           {"s", w.s},         {"t", w.t},
          {"m", w.m},           {"class_count", w.class_count},
          {"value", w.value_string()}, {"log2", w.log2}};
}

}  // namespace bfnorm
