#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nljcm/analysis.hpp"
#include "nljcm/cli.hpp"
#include "nljcm/coupling.hpp"
#include "nljcm/dynamics.hpp"
#include "nljcm/oracle.hpp"
#include "nljcm/propagator.hpp"
#include "nljcm/specialfn.hpp"

namespace py = pybind11;
using namespace nljcm;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

std::vector<double> to_vector(py::array_t<double, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 1) {
    throw std::invalid_argument("expected a one-dimensional array of times");
  }
  return {a.data(), a.data() + a.size()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-ion k-quantum nonlinear Jaynes-Cummings dynamics (C++ core)";

  py::register_exception<TruncationError>(m, "TruncationError", PyExc_RuntimeError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<InsufficientDataError>(m, "InsufficientDataError", PyExc_ValueError);

  m.def("laguerre", &laguerre, py::arg("n"), py::arg("k"), py::arg("x"));
  m.def("log_factorial_ratio", &log_factorial_ratio, py::arg("p"), py::arg("q"));

  py::enum_<DickeLevel>(m, "DickeLevel")
      .value("Up", DickeLevel::Up)
      .value("Mid", DickeLevel::Mid)
      .value("Down", DickeLevel::Down);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double eta, double rabi, int k, int n_max, double tail_tol) {
             ModelParams p{eta, rabi, k, n_max, tail_tol};
             p.validate();
             return p;
           }),
           py::arg("eta"), py::arg("rabi"), py::arg("k"), py::arg("n_max"),
           py::arg("tail_tol") = 1e-12)
      .def_readwrite("eta", &ModelParams::eta)
      .def_readwrite("rabi", &ModelParams::rabi)
      .def_readwrite("k", &ModelParams::k)
      .def_readwrite("n_max", &ModelParams::n_max)
      .def_readwrite("tail_tol", &ModelParams::tail_tol)
      .def("validate", &ModelParams::validate);

  py::enum_<ChainClass>(m, "ChainClass")
      .value("Full", ChainClass::Full)
      .value("TwoLevel", ChainClass::TwoLevel)
      .value("Frozen", ChainClass::Frozen);

  py::class_<ChainCoefficients>(m, "ChainCoefficients")
      .def_readonly("n", &ChainCoefficients::n)
      .def_readonly("k", &ChainCoefficients::k)
      .def_readonly("a_coef", &ChainCoefficients::a_coef)
      .def_readonly("b_coef", &ChainCoefficients::b_coef)
      .def_readonly("chain_class", &ChainCoefficients::chain_class)
      .def("frequency", &ChainCoefficients::frequency);

  m.def("chain_coefficients", &chain_coefficients, py::arg("params"), py::arg("n"));
  m.def("coupling_operator_element", &coupling_operator_element, py::arg("params"),
        py::arg("row"), py::arg("col"));

  py::class_<PropagatorBlock>(m, "PropagatorBlock")
      .def_readonly("n", &PropagatorBlock::n)
      .def_readonly("t", &PropagatorBlock::t)
      .def_readonly("chain_class", &PropagatorBlock::chain_class)
      .def_readonly("u", &PropagatorBlock::u)
      .def("ground_column_populations", &PropagatorBlock::ground_column_populations);
  m.def("chain_propagator", &chain_propagator, py::arg("coeffs"), py::arg("t"));

  py::class_<InitialMotionalState>(m, "InitialMotionalState")
      .def_static("coherent", &InitialMotionalState::coherent, py::arg("alpha_sq"))
      .def_static("fock", &InitialMotionalState::fock, py::arg("n0"))
      .def_property_readonly("is_coherent",
                             [](const InitialMotionalState& s) {
                               return s.kind == InitialMotionalState::Kind::Coherent;
                             })
      .def_readonly("alpha_sq", &InitialMotionalState::alpha_sq)
      .def_readonly("n0", &InitialMotionalState::n0);

  m.def("recommended_n_max", &recommended_n_max, py::arg("state"), py::arg("tail_tol") = 1e-12,
        py::arg("k") = 1);
  m.def(
      "phonon_distribution",
      [](const InitialMotionalState& s, int n_max, double tail_tol) {
        const auto d = phonon_distribution(s, n_max, tail_tol);
        return py::make_tuple(to_array(d.weights), d.tail);
      },
      py::arg("state"), py::arg("n_max"), py::arg("tail_tol") = 1e-12,
      "Returns (weights, tail).");

  py::class_<PopulationTrace>(m, "PopulationTrace")
      .def_property_readonly("times", [](const PopulationTrace& t) { return to_array(t.times); })
      .def_property_readonly("rho_11", [](const PopulationTrace& t) { return to_array(t.rho_11); })
      .def_property_readonly("rho_00", [](const PopulationTrace& t) { return to_array(t.rho_00); })
      .def_property_readonly("rho_m1m1",
                             [](const PopulationTrace& t) { return to_array(t.rho_m1m1); })
      .def_readonly("tail_bound", &PopulationTrace::tail_bound)
      .def_readonly("params", &PopulationTrace::params)
      .def("__len__", &PopulationTrace::size);

  m.def(
      "populations",
      [](const ModelParams& p, const InitialMotionalState& s,
         py::array_t<double, py::array::c_style | py::array::forcecast> times, unsigned threads) {
        const auto t = to_vector(times);
        py::gil_scoped_release release;
        return populations(p, s, t, threads);
      },
      py::arg("params"), py::arg("state"), py::arg("times"), py::arg("threads") = 1);

  m.def(
      "oracle_populations",
      [](const ModelParams& p, const InitialMotionalState& s,
         py::array_t<double, py::array::c_style | py::array::forcecast> times) {
        const auto t = to_vector(times);
        py::gil_scoped_release release;
        const auto dist = phonon_distribution(s, p.n_max, p.tail_tol);
        return evolve(build_hamiltonian(p), dist, t);
      },
      py::arg("params"), py::arg("state"), py::arg("times"),
      "Brute-force populations on the full truncated space of `params`.");

  m.def(
      "compare_to_oracle",
      [](const ModelParams& p, const InitialMotionalState& s,
         py::array_t<double, py::array::c_style | py::array::forcecast> times, int margin) {
        const auto t = to_vector(times);
        OracleComparison cmp;
        {
          py::gil_scoped_release release;
          cmp = compare_to_oracle(p, s, t, margin);
        }
        py::dict out;
        out["max_abs_error"] = cmp.max_abs_error;
        out["oracle_n_max"] = cmp.oracle_n_max;
        out["seconds"] = cmp.seconds;
        out["analytic"] = cmp.analytic;
        out["brute_force"] = cmp.brute_force;
        return out;
      },
      py::arg("params"), py::arg("state"), py::arg("times"), py::arg("oracle_margin") = 10);

  py::class_<EnvelopeReport>(m, "EnvelopeReport")
      .def_readonly("level", &EnvelopeReport::level)
      .def_readonly("window", &EnvelopeReport::window)
      .def_readonly("window_centers", &EnvelopeReport::window_centers)
      .def_readonly("amplitudes", &EnvelopeReport::amplitudes)
      .def_readonly("collapse_found", &EnvelopeReport::collapse_found)
      .def_readonly("revival_found", &EnvelopeReport::revival_found)
      .def_readonly("collapse_time", &EnvelopeReport::collapse_time)
      .def_readonly("revival_time", &EnvelopeReport::revival_time)
      .def("contrast", &EnvelopeReport::contrast);

  m.def("envelope", &envelope, py::arg("trace"), py::arg("level"), py::arg("window"));
  m.def("rabi_period", &rabi_period, py::arg("params"), py::arg("n_bar"));
  m.def("first_order_revival_time", &first_order_revival_time, py::arg("params"),
        py::arg("n_bar"));

  m.def(
      "figure_preset",
      [](const std::string& name) {
        const auto id = cli::parse_figure_id(name);
        if (!id) throw std::invalid_argument("unknown figure preset '" + name + "'");
        cli::RunConfig c = cli::preset_config(*id);
        cli::default_figure_grid(c);
        return py::make_tuple(cli::model_params(c), c.initial, c.t_max_us, c.t_points);
      },
      py::arg("name"), "Returns (params, state, t_max_us, t_points) for a figure preset.");
}
