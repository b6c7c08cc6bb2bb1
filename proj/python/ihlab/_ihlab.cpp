#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <variant>

#include "ihlab/cli.hpp"
#include "ihlab/errors.hpp"
#include "ihlab/io.hpp"
#include "ihlab/lie.hpp"
#include "ihlab/perverse.hpp"
#include "ihlab/verbitsky.hpp"

namespace py = pybind11;
using namespace ihlab;

namespace {

ScalarDomain domain_for(const GradedAlgebraModel& m, const std::string& mode) {
  if (mode == "exact") return ScalarDomain::exact();
  if (mode == "modp") return ScalarDomain::modular(prime_from_environment());
  if (mode == "auto") return ScalarDomain::automatic(m.total_dim(), prime_from_environment());
  throw InputError("mode must be exact, modp or auto, got '" + mode + "'");
}

// Accepts ints, strings ("1/2") or anything whose str() is a rational.
RationalVector to_class(const py::sequence& seq) {
  RationalVector v;
  for (const auto& x : seq) v.push_back(parse_rational(py::str(x).cast<std::string>()));
  return v;
}

std::vector<std::string> from_class(const RationalVector& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(format_rational(x));
  return out;
}

template <class Fn>
auto with_field(const GradedAlgebraModel& m, const std::string& mode, Fn&& fn) {
  return std::visit([&](const auto& f) { return fn(Algebra<std::decay_t<decltype(f)>>::from(f, m)); },
                    make_field(domain_for(m, mode)));
}

py::list report_list(const CheckReport& r) {
  py::list out;
  for (const auto& c : r.checks) {
    py::dict d;
    d["name"] = c.name;
    d["status"] = to_string(c.status);
    d["witnesses"] = c.witnesses;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_ihlab, mod) {
  mod.doc() = "Graded Frobenius algebras, LLV closures and perverse filtrations";

  py::register_exception<InputError>(mod, "InputError", PyExc_ValueError);
  py::register_exception<PreconditionError>(mod, "PreconditionError", PyExc_ValueError);
  py::register_exception<StructuralError>(mod, "StructuralError", PyExc_RuntimeError);
  py::register_exception<ConstructionError>(mod, "ConstructionError", PyExc_RuntimeError);
  py::register_exception<ArithmeticObstruction>(mod, "ArithmeticObstruction", PyExc_RuntimeError);

  py::class_<GradedAlgebraModel>(mod, "Model")
      .def_readonly("name", &GradedAlgebraModel::name)
      .def_readonly("n", &GradedAlgebraModel::n)
      .def_readonly("dims", &GradedAlgebraModel::dims)
      .def_property_readonly("b2", &GradedAlgebraModel::b2)
      .def_property_readonly("total_dim", &GradedAlgebraModel::total_dim)
      .def_property_readonly("marking",
                             [](const GradedAlgebraModel& m) -> py::object {
                               if (!m.marking) return py::none();
                               return py::make_tuple(from_class(m.marking->sigma), from_class(m.marking->sigmabar));
                             })
      .def("to_json", [](const GradedAlgebraModel& m) { return model_to_json(m, true); })
      .def("__repr__", [](const GradedAlgebraModel& m) {
        return "<ihlab.Model " + m.name + " n=" + std::to_string(m.n) + " b2=" + std::to_string(m.b2()) + ">";
      });

  mod.def(
      "build_sh",
      [](const std::string& lattice, int n, std::uint64_t seed) {
        return build_sh(load_lattice_fixture(lattice, n).lattice, n, seed);
      },
      py::arg("lattice"), py::arg("n") = 1, py::arg("seed") = 42,
      "Builds the H^2-generated model of a built-in lattice (k3, toy5, k3n).");

  mod.def(
      "load_model", [](const std::string& path, std::uint64_t seed) { return load_model(path, seed).model; },
      py::arg("path"), py::arg("seed") = 42);
  mod.def(
      "parse_model", [](const std::string& text, std::uint64_t seed) { return parse_model(text, seed).model; },
      py::arg("text"), py::arg("seed") = 42);

  mod.def(
      "validate",
      [](const GradedAlgebraModel& m, const std::string& mode) {
        return report_list(validate_model(m, domain_for(m, mode)));
      },
      py::arg("model"), py::arg("mode") = "auto");

  mod.def(
      "llv_dimension",
      [](const GradedAlgebraModel& m, std::uint64_t seed, const std::string& mode, std::optional<std::size_t> budget) {
        LlvResult r;
        {
          py::gil_scoped_release release;
          r = llv_dimension(m, seed, domain_for(m, mode), budget);
        }
        py::dict d;
        d["dimension"] = r.dimension;
        d["expected"] = r.expected;
        d["ambient"] = r.ambient;
        d["conclusive"] = r.conclusive();
        d["matches"] = r.matches();
        d["mode"] = r.domain.name();
        d["certification_mode"] = r.certification_mode;
        d["certified_dimension"] = r.certified_dimension;
        return d;
      },
      py::arg("model"), py::arg("seed") = 42, py::arg("mode") = "auto", py::arg("budget") = py::none());

  mod.def(
      "perverse_table",
      [](const GradedAlgebraModel& m, const py::sequence& gamma, const std::string& mode) {
        auto g = to_class(gamma);
        return with_field(m, mode, [&](const auto& alg) { return perverse_table(alg, g); });
      },
      py::arg("model"), py::arg("gamma"), py::arg("mode") = "auto");

  mod.def(
      "hodge_numbers",
      [](const GradedAlgebraModel& m, const std::string& mode) {
        if (!m.marking) throw StructuralError("model has no Hodge marking");
        return with_field(m, mode, [&](const auto& alg) { return hodge_numbers(alg, *m.marking); });
      },
      py::arg("model"), py::arg("mode") = "auto");

  mod.def(
      "sample_isotropic",
      [](const GradedAlgebraModel& m, std::uint64_t seed, std::size_t count) {
        std::vector<std::vector<std::string>> out;
        for (const auto& v : sample_isotropic(m.lattice, seed, count)) out.push_back(from_class(v));
        return out;
      },
      py::arg("model"), py::arg("seed") = 42, py::arg("count") = 10);

  mod.def(
      "run",
      [](const std::string& command, const std::string& model, const std::string& lattice, int n,
         std::uint64_t seed, std::optional<std::string> mode, std::optional<std::size_t> budget,
         std::optional<std::string> class_spec, std::size_t count, const std::string& output,
         const std::string& timestamp) {
        RunConfig cfg;
        cfg.command = command;
        cfg.model_path = model;
        cfg.lattice = lattice;
        cfg.n = n;
        cfg.seed = seed;
        cfg.mode = mode;
        cfg.budget = budget;
        cfg.class_spec = class_spec;
        cfg.count = count;
        cfg.output_path = output;
        cfg.timestamp = timestamp;
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run(cfg, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("command"), py::arg("model") = "", py::kw_only(), py::arg("lattice") = "", py::arg("n") = 1,
      py::arg("seed") = 42, py::arg("mode") = py::none(), py::arg("budget") = py::none(),
      py::arg("class_spec") = py::none(), py::arg("count") = 10, py::arg("output") = "",
      py::arg("timestamp") = "",
      "Runs a CLI command in-process; returns (exit_code, stdout, stderr).");
}
