#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aomega/operators.hpp"
#include "aomega/runner.hpp"

namespace py = pybind11;
using namespace aomega;

namespace {

std::string run_config_json(const std::string& text) {
  const ExperimentConfig cfg = config_from_json(ojson::parse(text));
  return run_experiments(cfg).to_json().dump(2);
}

Measure measure_from_atoms(const std::vector<std::pair<double, cplx>>& atoms) {
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const auto& [t, mass] : atoms) out.push_back({t, mass});
  return Measure::from_atoms(std::move(out));
}

}  // namespace

PYBIND11_MODULE(aomega, m) {
  m.doc() = "weighted convolution algebras on the half line";

  py::register_exception<ConfigError>(m, "ConfigError");

  py::class_<Weight>(m, "Weight")
      .def_static("power", &Weight::power, py::arg("a"))
      .def_static("exponential", &Weight::exponential, py::arg("a"))
      .def_static("exp_sqrt", &Weight::exp_sqrt, py::arg("a"))
      .def_static("fractional_power", &Weight::fractional_power, py::arg("a"))
      .def_static("binary_pow", &Weight::binary_pow, py::arg("b"))
      .def_static("product", &Weight::product)
      .def_static("pow", &Weight::pow, py::arg("base"), py::arg("k"))
      .def("eval", &Weight::eval, py::arg("t"))
      .def("log_eval", &Weight::log_eval, py::arg("t"))
      .def("__repr__", &Weight::describe);

  py::class_<WeightFamily>(m, "WeightFamily")
      .def_static("power_n", &WeightFamily::power_n, py::arg("n_max"))
      .def_static("frac_power", &WeightFamily::frac_power, py::arg("n_max"))
      .def_static("exp_sqrt_n", &WeightFamily::exp_sqrt_n, py::arg("n_max"))
      .def_static("exp_n", &WeightFamily::exp_n, py::arg("n_max"))
      .def_static("binary_pow_n", &WeightFamily::binary_pow_n, py::arg("n_max"))
      .def("member", &WeightFamily::member, py::arg("n"),
           py::return_value_policy::reference_internal)
      .def_property_readonly("n_max", &WeightFamily::n_max)
      .def_property_readonly("name", &WeightFamily::name);

  py::class_<Grid>(m, "Grid")
      .def_static("make", &Grid::make, py::arg("h"), py::arg("T"))
      .def_static("standard", &Grid::standard)
      .def_readonly("h", &Grid::h)
      .def_readonly("T", &Grid::T)
      .def_readonly("n", &Grid::n)
      .def("node", &Grid::node, py::arg("j"));

  py::class_<GridFunction>(m, "GridFunction")
      .def_static("zeros", &GridFunction::zeros, py::arg("grid"))
      .def_static("box", &GridFunction::box, py::arg("grid"), py::arg("lo"),
                  py::arg("hi"), py::arg("scale") = cplx{1.0})
      .def_static("bump", &GridFunction::bump, py::arg("grid"), py::arg("center"),
                  py::arg("radius"), py::arg("scale") = cplx{1.0})
      .def_static("exp_decay", &GridFunction::exp_decay, py::arg("grid"),
                  py::arg("rate"), py::arg("scale") = cplx{1.0})
      .def_static("from_samples", &GridFunction::from_samples, py::arg("grid"),
                  py::arg("samples"))
      .def_readonly("grid", &GridFunction::grid)
      .def_property_readonly("values",
                             [](const GridFunction& f) { return f.v; })
      .def("__len__", &GridFunction::size);

  py::class_<Measure>(m, "Measure")
      .def_static("dirac", &Measure::dirac, py::arg("t"), py::arg("mass") = cplx{1.0})
      .def_static("from_atoms", &measure_from_atoms, py::arg("atoms"))
      .def_static("from_density", &Measure::from_density, py::arg("density"))
      .def_property_readonly("atoms",
                             [](const Measure& m_) {
                               std::vector<std::pair<double, cplx>> out;
                               for (const Atom& a : m_.atoms())
                                 out.emplace_back(a.t, a.mass);
                               return out;
                             })
      .def_property_readonly("is_zero", &Measure::is_zero);

  m.def("convolve", &convolve, py::arg("f"), py::arg("g"));
  m.def("weighted_norm", &weighted_norm, py::arg("f"), py::arg("w"));
  m.def("measure_norm", &measure_norm, py::arg("mu"), py::arg("w"));
  m.def("laplace", &laplace, py::arg("f"), py::arg("z"));
  m.def("alpha_support", &alpha_support, py::arg("f"), py::arg("eps_rel") = 1e-12);
  m.def("apply_X", &apply_X, py::arg("f"));
  m.def("approximate_identity", &approximate_identity, py::arg("k"), py::arg("grid"));
  m.def("convolve_measures", &convolve_measures, py::arg("mu"), py::arg("nu"));
  m.def("convolve_measure_function", &convolve_measure_function, py::arg("mu"),
        py::arg("f"));
  m.def(
      "dilation_apply",
      [](double c, const GridFunction& f) { return dilation_apply({c}, f); },
      py::arg("c"), py::arg("f"));
  m.def(
      "derivation_apply",
      [](const Measure& mu, const GridFunction& f) {
        return derivation_apply({mu}, f);
      },
      py::arg("mu"), py::arg("f"));
  m.def("run_config", &run_config_json, py::arg("config_json"),
        "run an experiment config (JSON string) and return the report as JSON");
  m.def("catalog", [] { return builtin_catalog().dump(2); },
        "JSON catalog of built-in weights, families, functions, and checks");
}
