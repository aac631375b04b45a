#include <fstream>
#include <istream>
#include <thread>

#include "bfnorm/search.hpp"
#include "bfnorm/text_format.hpp"

namespace bfnorm {

namespace {

constexpr std::size_t kBatchLines = 512;

struct PendingLine {
  std::size_t line_number;
  std::string id;
  std::string text;
};

}  // namespace

FunctionRecord analyze_function(const BoolFun& f, std::string id, const ScanOptions& options, FlatTableCache& tables) {
  FunctionRecord rec;
  rec.id = std::move(id);
  rec.m = f.num_vars();
  rec.degree = degree(f);
  if (options.classify) {
    const int r = normality_dim(rec.m);
    rec.report = classify_normality_paired(f, *tables.get(rec.m, r - 1));
  }
  for (int r : options.dims) rec.rel_degrees[r] = r_degree(f, r, *tables.get(rec.m, r));
  return rec;
}

RelDegDistribution scan_stream(std::istream& in, const ScanOptions& options, FlatTableCache& tables,
                               const std::function<void(const FunctionRecord&)>& sink) {
  if (options.m < 1 || options.m > kMaxVars) throw Error("scan requires 1 <= m <= 16");
  for (int r : options.dims)
    if (r < 0 || r > options.m) throw Error("dimension " + std::to_string(r) + " out of range");
  // Warm the cache before workers share it.
  if (options.classify) tables.get(options.m, normality_dim(options.m) - 1);
  for (int r : options.dims) tables.get(options.m, r);

  RelDegDistribution dist;
  dist.m = options.m;
  for (int r : options.dims) dist.counts[r];

  const unsigned threads = std::max(1u, options.threads);
  std::vector<PendingLine> batch;
  std::vector<FunctionRecord> records;
  std::vector<std::string> errors;

  auto flush = [&] {
    records.assign(batch.size(), {});
    errors.assign(batch.size(), {});
    auto work = [&](unsigned t) {
      for (std::size_t i = t; i < batch.size(); i += threads) {
        try {
          BoolFun f = parse_function(batch[i].text, options.m, options.format == InputFormat::Hex);
          if (!options.permutation.empty()) f = permute_variables(f, options.permutation);
          records[i] = analyze_function(f, batch[i].id, options, tables);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      }
    };
    if (threads == 1 || batch.size() < 2) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (!errors[i].empty())
        throw Error("line " + std::to_string(batch[i].line_number) + ": " + errors[i]);
      for (const auto& [r, d] : records[i].rel_degrees) dist.add(r, d);
      ++dist.functions;
      if (sink) sink(records[i]);
    }
    batch.clear();
  };

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    PendingLine p{line_number, std::to_string(line_number), line};
    if (const auto colon = line.find(':'); colon != std::string::npos && line.compare(first, 4, "hex:") != 0) {
      const auto id_end = line.find_last_not_of(" \t", colon == 0 ? 0 : colon - 1);
      p.id = colon == 0 ? std::string() : line.substr(first, id_end - first + 1);
      p.text = line.substr(colon + 1);
    }
    batch.push_back(std::move(p));
    if (batch.size() == kBatchLines) flush();
  }
  flush();
  return dist;
}

RelDegDistribution scan_file(const std::filesystem::path& path, const ScanOptions& options, FlatTableCache& tables,
                             const std::function<void(const FunctionRecord&)>& sink) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return scan_stream(in, options, tables, sink);
}

}  // namespace bfnorm
