#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "bfnorm/json_io.hpp"
#include "bfnorm/reldeg.hpp"
#include "bfnorm/search.hpp"
#include "bfnorm/spectra.hpp"
#include "bfnorm/subspace.hpp"
#include "bfnorm/text_format.hpp"

namespace bfnorm::cli {

namespace {

using nlohmann::json;

constexpr const char* kTableDirEnv = "BFNORM_TABLE_DIR";

struct FunctionInput {
  std::string text;
  std::string file;
  std::string format = "anf";
  int m = 0;
  std::string permute;
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" ") == std::string::npos) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError("invalid integer list '" + text + "'");
    }
  }
  return out;
}

DegreeBand parse_band(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError("band must be written s:t");
  try {
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("band must be written s:t");
  }
}

std::string read_first_function(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line[first] != '#') return line;
  }
  throw Error("no function found in input");
}

BoolFun load_function(const FunctionInput& in) {
  std::string text = in.text;
  if (!in.file.empty()) {
    if (in.file == "-") {
      text = read_first_function(std::cin);
    } else {
      std::ifstream f(in.file);
      if (!f) throw Error("cannot open " + in.file);
      text = read_first_function(f);
    }
  }
  if (text.empty()) throw CLI::ValidationError("a function is required (positional argument or --file)");
  bool hex = in.format == "hex";
  std::string_view body = text;
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
  if (body.starts_with("hex:")) {
    hex = true;
    body.remove_prefix(4);
  }
  int m = in.m;
  if (m == 0) {
    if (!hex) throw CLI::ValidationError("-m is required for ANF input");
    m = infer_vars_from_hex(body);
  }
  BoolFun f = parse_function(body, m, hex);
  if (!in.permute.empty()) f = permute_variables(f, parse_int_list(in.permute));
  return f;
}

void add_function_options(CLI::App* cmd, FunctionInput& in) {
  cmd->add_option("function", in.text, "ANF text, or hex truth table (prefix hex: or --format hex)");
  cmd->add_option("--file", in.file, "read the function from a file ('-' for stdin)");
  cmd->add_option("--format", in.format, "input format")->check(CLI::IsMember({"anf", "hex"}));
  cmd->add_option("-m,--m", in.m, "number of variables")->check(CLI::Range(1, kMaxVars));
  cmd->add_option("--permute", in.permute, "variable permutation p1,...,pm applied on input");
}

std::unique_ptr<FlatTableCache> make_cache(const std::vector<std::string>& table_files) {
  std::optional<std::filesystem::path> dir;
  if (const char* env = std::getenv(kTableDirEnv); env && *env) dir = env;
  auto cache = std::make_unique<FlatTableCache>(dir);
  for (const auto& path : table_files) cache->insert(std::make_shared<const FlatTable>(load_flat_table(path)));
  return cache;
}

unsigned effective_threads(unsigned requested) {
  return requested ? requested : std::max(1u, std::thread::hardware_concurrency());
}

void print_config(std::ostream& err, const std::string& command, json config) {
  config["command"] = command;
  err << "# config " << config.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Degree, relative degree and normality of Boolean functions"};
  app.require_subcommand(1);

  // analyze
  FunctionInput analyze_in;
  bool analyze_json = false;
  auto* analyze = app.add_subcommand("analyze", "degree, valuation, weight, ANF and truth table");
  add_function_options(analyze, analyze_in);
  analyze->add_flag("--json", analyze_json, "print a JSON object");

  // normality
  FunctionInput norm_in;
  std::string method = "both";
  std::vector<std::string> norm_tables;
  auto* normality = app.add_subcommand("normality", "classify as Normal, WeaklyNormal or Abnormal");
  add_function_options(normality, norm_in);
  normality->add_option("--method", method, "classifier")->check(CLI::IsMember({"naive", "paired", "both"}));
  normality->add_option("--flat-table", norm_tables, "prebuilt BFLT table (repeatable)")->allow_extra_args(false);

  // flats
  int flats_m = 0, flats_r = 0;
  std::string flats_out;
  auto* flats = app.add_subcommand("flats", "build and save a flat table");
  flats->add_option("-m,--m", flats_m, "ambient dimension")->required()->check(CLI::Range(1, kMaxVars));
  flats->add_option("-r,--r", flats_r, "subspace dimension")->required()->check(CLI::Range(0, kMaxVars));
  flats->add_option("-o,--output", flats_out, "output path (default flats_m<m>_r<r>.bflt)");

  // table
  bool exhaustive = false, wf = false;
  unsigned table_threads = 0;
  int wf_r = 0, wf_m = 0;
  std::string wf_band;
  std::uint64_t wf_classes = 0;
  auto* table = app.add_subcommand("table", "D_r table entries and work factors");
  table->add_flag("--exhaustive-m5", exhaustive, "exhaustive rows r=2,3 of D(k,5)");
  table->add_flag("--work-factor", wf, "brute-force work factor W(r,s,t,m)");
  table->add_option("-r,--r", wf_r, "flat dimension for --work-factor");
  table->add_option("-m,--m", wf_m, "number of variables for --work-factor");
  table->add_option("--band", wf_band, "s:t for --work-factor");
  table->add_option("--classes", wf_classes, "class count (default: built-in count for B(s,t,m))");
  table->add_option("--threads", table_threads, "worker threads (default: all cores)");

  // walsh
  FunctionInput walsh_in;
  bool walsh_bent = false, walsh_dual = false, walsh_summary = false;
  auto* walsh = app.add_subcommand("walsh", "Walsh spectrum, bentness, dual");
  add_function_options(walsh, walsh_in);
  walsh->add_flag("--bent", walsh_bent, "report bentness");
  walsh->add_flag("--dual", walsh_dual, "print the dual bent function");
  walsh->add_flag("--summary", walsh_summary, "print value multiplicities instead of the spectrum");

  // search
  int search_m = 0, search_r = 0;
  std::string search_band;
  std::uint64_t trials = 1000, seed = 1;
  std::string search_table, search_bases, search_format = "anf";
  bool degree_equal = false;
  auto* search = app.add_subcommand("search", "randomized lower bound for D_r(k,m)");
  search->add_option("-m,--m", search_m, "number of variables")->required()->check(CLI::Range(1, kMaxVars));
  search->add_option("-r,--r", search_r, "flat dimension")->required()->check(CLI::Range(0, kMaxVars));
  search->add_option("--band", search_band, "s:t degree band")->required();
  search->add_option("--trials", trials, "number of samples")->check(CLI::PositiveNumber);
  search->add_option("--seed", seed, "random seed");
  search->add_option("--flat-table", search_table, "prebuilt BFLT table for (m, r)");
  search->add_option("--bases", search_bases, "file of base functions to shift");
  search->add_option("--format", search_format, "format of --bases")->check(CLI::IsMember({"anf", "hex"}));
  search->add_flag("--degree-equal", degree_equal, "only count samples of degree exactly t");

  // batch
  std::string batch_file = "-", batch_format = "anf", batch_dims, batch_permute;
  int batch_m = 0;
  unsigned batch_threads = 0;
  std::vector<std::string> batch_tables;
  bool batch_no_classify = false;
  auto* batch = app.add_subcommand("batch", "classify a file of functions, JSON lines out");
  batch->add_option("--file", batch_file, "input file ('-' for stdin)");
  batch->add_option("--format", batch_format, "input format")->check(CLI::IsMember({"anf", "hex"}));
  batch->add_option("-m,--m", batch_m, "number of variables")->required()->check(CLI::Range(1, kMaxVars));
  batch->add_option("--dims", batch_dims, "comma-separated r values for relative-degree histograms");
  batch->add_option("--permute", batch_permute, "variable permutation p1,...,pm");
  batch->add_option("--threads", batch_threads, "worker threads (default: all cores)");
  batch->add_option("--flat-table", batch_tables, "prebuilt BFLT table (repeatable)")->allow_extra_args(false);
  batch->add_flag("--no-classify", batch_no_classify, "skip the normality verdict");

  std::vector<std::string> argv_store;
  argv_store.push_back("bfnorm");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*analyze) {
      const BoolFun f = load_function(analyze_in);
      const Anf a = truth_table_to_anf(f);
      print_config(err, "analyze", {{"m", f.num_vars()}, {"permute", analyze_in.permute}});
      json j = {{"m", f.num_vars()},
                {"degree", degree(a)},
                {"valuation", a.is_zero() ? json(nullptr) : json(valuation(a))},
                {"weight", f.count()},
                {"monomials", a.count()},
                {"anf", format_anf(a)},
                {"hex", to_hex(f)}};
      if (analyze_json) {
        out << j.dump() << "\n";
      } else {
        out << "m: " << j["m"] << "\n"
            << "degree: " << j["degree"] << "\n"
            << "valuation: " << (a.is_zero() ? std::string("undefined") : std::to_string(valuation(a))) << "\n"
            << "weight: " << j["weight"] << "\n"
            << "monomials: " << j["monomials"] << "\n"
            << "anf: " << format_anf(a) << "\n"
            << "hex: " << to_hex(f) << "\n";
      }
      return 0;
    }

    if (*normality) {
      const BoolFun f = load_function(norm_in);
      auto cache = make_cache(norm_tables);
      const int m = f.num_vars();
      const int r = normality_dim(m);
      print_config(err, "normality", {{"m", m}, {"method", method}, {"r", r}, {"permute", norm_in.permute}});
      std::optional<NormalityReport> naive_report, paired_report;
      if (method != "paired") naive_report = classify_normality_naive(f, *cache->get(m, r));
      if (method != "naive") paired_report = classify_normality_paired(f, *cache->get(m, r - 1));
      if (naive_report && paired_report && naive_report->status != paired_report->status) {
        err << "error: classifier disagreement: naive=" << to_string(naive_report->status)
            << " paired=" << to_string(paired_report->status) << "\n";
        return 1;
      }
      const auto& primary = naive_report ? *naive_report : *paired_report;
      out << "status: " << to_string(primary.status) << "\n";
      json j = {{"m", m}, {"degree", degree(f)}, {"status", to_string(primary.status)}};
      if (naive_report) j["naive"] = report_to_json(*naive_report);
      if (paired_report) j["paired"] = report_to_json(*paired_report);
      out << j.dump() << "\n";
      return 0;
    }

    if (*flats) {
      if (flats_r > flats_m) throw CLI::ValidationError("-r must not exceed -m");
      const auto path = flats_out.empty() ? FlatTableCache::file_name(flats_m, flats_r) : flats_out;
      print_config(err, "flats", {{"m", flats_m}, {"r", flats_r}, {"output", path}});
      const FlatTable t = build_flat_table(flats_m, flats_r);
      save_flat_table(t, path);
      out << json{{"m", flats_m},
                  {"r", flats_r},
                  {"spaces", t.space_count()},
                  {"cosets_per_space", t.cosets_per_space()},
                  {"flats", t.flat_count()},
                  {"path", path}}
                 .dump()
          << "\n";
      return 0;
    }

    if (*table) {
      if (exhaustive == wf) throw CLI::ValidationError("choose exactly one of --exhaustive-m5 or --work-factor");
      if (wf) {
        if (wf_m == 0 || wf_band.empty()) throw CLI::ValidationError("--work-factor needs -m, -r and --band");
        const DegreeBand band = parse_band(wf_band);
        std::uint64_t classes = wf_classes;
        if (!classes) {
          auto known = known_class_count(band.s, band.t, wf_m);
          if (!known) throw Error("no built-in class count for B(" + wf_band + "," + std::to_string(wf_m) + "); pass --classes");
          classes = *known;
        }
        print_config(err, "table", {{"work_factor", true}, {"r", wf_r}, {"band", wf_band}, {"m", wf_m}, {"classes", classes}});
        out << work_factor_to_json(work_factor(wf_r, band.s, band.t, wf_m, classes)).dump() << "\n";
        return 0;
      }
      const unsigned threads = effective_threads(table_threads);
      print_config(err, "table", {{"exhaustive_m5", true}, {"threads", threads}});
      const auto result = exhaustive_m5_rows(threads);
      for (int r : {3, 2}) {
        out << "D_" << r << "(k,5):";
        for (const auto& e : result.entries)
          if (e.r == r) out << ' ' << e.value;
        out << "\n";
      }
      for (const auto& e : result.entries) out << entry_to_json(e).dump() << "\n";
      out << json{{"functions_scanned", result.functions_scanned},
                  {"full_scans", result.full_scans},
                  {"naive_verified", result.naive_verified},
                  {"naive_mismatches", result.naive_mismatches},
                  {"seconds", result.seconds}}
                 .dump()
          << "\n";
      return result.naive_mismatches ? 1 : 0;
    }

    if (*walsh) {
      const BoolFun f = load_function(walsh_in);
      print_config(err, "walsh", {{"m", f.num_vars()}});
      const auto spectrum = walsh_transform(f);
      if (walsh_summary) {
        for (const auto& [v, n] : spectrum.multiplicities()) out << v << ": " << n << "\n";
      } else {
        out << "[";
        for (std::size_t i = 0; i < spectrum.values.size(); ++i) out << (i ? ", " : "") << spectrum.values[i];
        out << "]\n";
      }
      if (walsh_bent || walsh_dual) {
        const bool bent = f.num_vars() % 2 == 0 && is_bent(f);
        out << "bent: " << (bent ? "true" : "false") << "\n";
        if (walsh_dual) {
          if (!bent) throw Error("dual requires a bent function");
          const BoolFun d = dual_bent(f);
          out << "dual: " << format_anf(truth_table_to_anf(d)) << "\n";
          out << "dual_hex: " << to_hex(d) << "\n";
        }
      }
      return 0;
    }

    if (*search) {
      if (search_r > search_m) throw CLI::ValidationError("-r must not exceed -m");
      const DegreeBand band = parse_band(search_band);
      std::vector<BoolFun> bases;
      if (!search_bases.empty()) {
        std::ifstream in(search_bases);
        if (!in) throw Error("cannot open " + search_bases);
        std::string line;
        while (std::getline(in, line)) {
          const auto first = line.find_first_not_of(" \t\r");
          if (first == std::string::npos || line[first] == '#') continue;
          bases.push_back(parse_function(line, search_m, search_format == "hex"));
        }
      }
      print_config(err, "search", {{"m", search_m}, {"r", search_r}, {"band", search_band}, {"trials", trials},
                                   {"seed", seed}, {"bases", search_bases}, {"degree_equal", degree_equal}});
      const FlatTable t = search_table.empty() ? build_flat_table(search_m, search_r) : load_flat_table(search_table);
      const auto entry = random_lower_bound(search_m, search_r, band, trials, seed, t, bases, degree_equal);
      out << entry_to_json(entry).dump() << "\n";
      return 0;
    }

    if (*batch) {
      ScanOptions opt;
      opt.format = batch_format == "hex" ? InputFormat::Hex : InputFormat::Anf;
      opt.m = batch_m;
      opt.dims = parse_int_list(batch_dims);
      opt.permutation = parse_int_list(batch_permute);
      opt.threads = effective_threads(batch_threads);
      opt.classify = !batch_no_classify;
      auto cache = make_cache(batch_tables);
      print_config(err, "batch", {{"file", batch_file}, {"format", batch_format}, {"m", batch_m}, {"dims", opt.dims},
                                  {"permute", opt.permutation}, {"threads", opt.threads}});
      auto sink = [&](const FunctionRecord& rec) { out << record_to_json(rec).dump() << "\n"; };
      RelDegDistribution dist;
      if (batch_file == "-")
        dist = scan_stream(std::cin, opt, *cache, sink);
      else
        dist = scan_file(batch_file, opt, *cache, sink);
      out << json{{"distribution", distribution_to_json(dist)}}.dump() << "\n";
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace bfnorm::cli
