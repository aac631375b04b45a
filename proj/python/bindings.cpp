#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bfnorm/core.hpp"
#include "bfnorm/json_io.hpp"
#include "bfnorm/reldeg.hpp"
#include "bfnorm/search.hpp"
#include "bfnorm/spectra.hpp"
#include "bfnorm/subspace.hpp"
#include "bfnorm/text_format.hpp"

namespace py = pybind11;
using namespace bfnorm;

namespace {

py::dict report_dict(const NormalityReport& r) {
  py::dict d;
  d["status"] = to_string(r.status);
  d["r"] = r.r_used;
  d["min_rel_degree"] = r.min_rel_degree;
  d["min_rel_degree_exact"] = r.min_rel_degree_exact;
  if (r.witness) {
    auto b = r.witness->subspace().basis();
    d["witness_basis"] = std::vector<std::uint32_t>(b.begin(), b.end());
    d["witness_rep"] = r.witness->rep();
    d["witness_degree"] = *r.witness_degree;
  } else {
    d["witness_basis"] = py::none();
    d["witness_rep"] = py::none();
    d["witness_degree"] = py::none();
  }
  return d;
}

py::dict entry_dict(const DTableEntry& e) { return py::module_::import("json").attr("loads")(entry_to_json(e).dump()); }

}  // namespace

PYBIND11_MODULE(_bfnorm, m) {
  m.doc() = "Degree, relative degree and normality of Boolean functions";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<BoolFun>(m, "BoolFun")
      .def(py::init<int>(), py::arg("m"))
      .def_static(
          "from_anf", [](const std::string& text, int vars) { return anf_to_truth_table(parse_anf(text, vars)); },
          py::arg("text"), py::arg("m"))
      .def_static(
          "from_hex", [](const std::string& text, std::optional<int> vars) {
            return from_hex(text, vars ? *vars : infer_vars_from_hex(text));
          },
          py::arg("text"), py::arg("m") = py::none())
      .def_static(
          "from_bits", [](const std::vector<int>& bits) {
            if (bits.empty() || !std::has_single_bit(bits.size())) throw Error("bit list length must be 2^m");
            BoolFun f(std::countr_zero(bits.size()));
            for (std::size_t i = 0; i < bits.size(); ++i)
              if (bits[i]) f.set(static_cast<std::uint32_t>(i), true);
            return f;
          },
          py::arg("bits"))
      .def_static(
          "random", [](int vars, int s, int t, std::uint64_t seed) { return random_in_band(vars, {s, t}, seed); },
          py::arg("m"), py::arg("s"), py::arg("t"), py::arg("seed"))
      .def_static("random_bent", &random_maiorana_mcfarland, py::arg("m"), py::arg("seed"), py::arg("scramble") = true)
      .def_property_readonly("m", &BoolFun::num_vars)
      .def("__getitem__", [](const BoolFun& f, std::uint32_t x) {
        if (x >= f.num_bits()) throw py::index_error();
        return f.get(x);
      })
      .def("__len__", &BoolFun::num_bits)
      .def("bits", [](const BoolFun& f) {
        std::vector<int> out(f.num_bits());
        for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = f.get(i);
        return out;
      })
      .def("weight", &BoolFun::count)
      .def("degree", [](const BoolFun& f) { return degree(f); })
      .def("valuation", [](const BoolFun& f) { return valuation(f); })
      .def("anf", [](const BoolFun& f) { return format_anf(truth_table_to_anf(f)); })
      .def("hex", [](const BoolFun& f) { return to_hex(f); })
      .def("__xor__", [](const BoolFun& a, const BoolFun& b) { return a ^ b; })
      .def("__eq__", [](const BoolFun& a, const BoolFun& b) { return a == b; })
      .def("__repr__", [](const BoolFun& f) {
        return "BoolFun(m=" + std::to_string(f.num_vars()) + ", anf='" + format_anf(truth_table_to_anf(f)) + "')";
      });

  py::class_<FlatTable, std::shared_ptr<FlatTable>>(m, "FlatTable")
      .def_property_readonly("m", &FlatTable::ambient_dim)
      .def_property_readonly("r", &FlatTable::dim)
      .def_property_readonly("space_count", &FlatTable::space_count)
      .def_property_readonly("flat_count", &FlatTable::flat_count)
      .def("basis", [](const FlatTable& t, std::size_t i) {
        if (i >= t.space_count()) throw py::index_error();
        auto b = t.basis(i);
        return std::vector<std::uint32_t>(b.begin(), b.end());
      })
      .def("coset_reps", [](const FlatTable& t, std::size_t i) {
        if (i >= t.space_count()) throw py::index_error();
        auto r = t.reps(i);
        return std::vector<std::uint32_t>(r.begin(), r.end());
      })
      .def("save", [](const FlatTable& t, const std::string& path) { save_flat_table(t, path); });

  m.def("gaussian_binomial", &gaussian_binomial, py::arg("m"), py::arg("r"));
  m.def(
      "build_flat_table", [](int vars, int r) { return std::make_shared<FlatTable>(build_flat_table(vars, r)); },
      py::arg("m"), py::arg("r"));
  m.def(
      "load_flat_table", [](const std::string& path) { return std::make_shared<FlatTable>(load_flat_table(path)); },
      py::arg("path"));

  m.def(
      "rel_degree",
      [](const BoolFun& f, const std::vector<std::uint32_t>& generators, std::uint32_t rep) {
        return rel_degree(f, AffineFlat(LinearSubspace::span(f.num_vars(), generators), rep));
      },
      py::arg("f"), py::arg("basis"), py::arg("rep") = 0);
  m.def(
      "r_degree", [](const BoolFun& f, int r, const FlatTable& t) { return r_degree(f, r, t); }, py::arg("f"),
      py::arg("r"), py::arg("table"));
  m.def(
      "classify_naive", [](const BoolFun& f, const FlatTable& t) { return report_dict(classify_normality_naive(f, t)); },
      py::arg("f"), py::arg("table_r"));
  m.def(
      "classify_paired",
      [](const BoolFun& f, const FlatTable& t) { return report_dict(classify_normality_paired(f, t)); }, py::arg("f"),
      py::arg("table_rm1"));

  m.def("walsh", [](const BoolFun& f) { return walsh_transform(f).values; }, py::arg("f"));
  m.def("is_bent", &is_bent, py::arg("f"));
  m.def("dual_bent", &dual_bent, py::arg("f"));

  m.def(
      "work_factor",
      [](int r, int s, int t, int vars, std::optional<std::uint64_t> classes) {
        std::uint64_t n = classes ? *classes : known_class_count(s, t, vars).value_or(0);
        const auto w = work_factor(r, s, t, vars, n);
        return py::make_tuple(py::int_(py::str(w.value_string())), w.log2);
      },
      py::arg("r"), py::arg("s"), py::arg("t"), py::arg("m"), py::arg("class_count") = py::none());
  m.def(
      "known_class_count", [](int s, int t, int vars) { return known_class_count(s, t, vars); }, py::arg("s"),
      py::arg("t"), py::arg("m"));

  m.def(
      "random_lower_bound",
      [](int vars, int r, int s, int t, std::uint64_t trials, std::uint64_t seed, const FlatTable& table,
         const std::vector<BoolFun>& bases, bool degree_equal) {
        DTableEntry e;
        {
          py::gil_scoped_release release;
          e = random_lower_bound(vars, r, {s, t}, trials, seed, table, bases, degree_equal);
        }
        return entry_dict(e);
      },
      py::arg("m"), py::arg("r"), py::arg("s"), py::arg("t"), py::arg("trials"), py::arg("seed"), py::arg("table"),
      py::arg("bases") = std::vector<BoolFun>{}, py::arg("degree_equal") = false);
  m.def(
      "exhaustive_m5_rows",
      [](unsigned threads) {
        ExhaustiveM5Result res;
        {
          py::gil_scoped_release release;
          res = exhaustive_m5_rows(threads);
        }
        py::list entries;
        for (const auto& e : res.entries) entries.append(entry_dict(e));
        py::dict d;
        d["entries"] = entries;
        d["functions_scanned"] = res.functions_scanned;
        d["full_scans"] = res.full_scans;
        d["naive_mismatches"] = res.naive_mismatches;
        return d;
      },
      py::arg("threads") = 0);
}
