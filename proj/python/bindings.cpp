#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "commands.hpp"
#include "dahakz/kz.hpp"

namespace py = pybind11;
using namespace dahakz;

namespace {

std::complex<double> to_py(const Complex& z) { return {z.re.convert_to<double>(), z.im.convert_to<double>()}; }

}  // namespace

PYBIND11_MODULE(_dahakz, m) {
  m.doc() = "Exact DAHA/AHA combinatorics and KZ monodromy";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ScopeError>(m, "ScopeError", PyExc_ArithmeticError);
  py::register_exception<ToleranceError>(m, "ToleranceError", PyExc_ArithmeticError);
  py::register_exception<ResonanceError>(m, "ResonanceError", PyExc_ArithmeticError);

  m.def("subcommands", &cli::subcommands);
  m.def("keys_for", &cli::keys_for, py::arg("command"));
  m.def(
      "run_json",
      [](const std::string& cmd, const std::map<std::string, std::string>& values, bool selftest) {
        cli::Outcome o;
        {
          py::gil_scoped_release nogil;
          o = cli::run(cmd, values, selftest);
        }
        return py::make_tuple(o.exit_code, o.doc.dump());
      },
      py::arg("command"), py::arg("config") = std::map<std::string, std::string>{}, py::arg("selftest") = false,
      "Run a subcommand; returns (exit code, JSON document).");

  m.def(
      "rank_one_oracle",
      [](const std::string& gamma, const std::string& h) {
        auto [a, b] = rank_one_oracle(parse_rational(gamma), parse_rational(h));
        return py::make_tuple(to_py(a), to_py(b));
      },
      py::arg("gamma"), py::arg("h"), "(a(-gamma), b(-gamma)) as Python complex numbers.");

  m.def(
      "rank_one_monodromy",
      [](const std::string& gamma, const std::string& h, int bits) {
        auto R = RootDatum::type_A(1);
        Rational g = parse_rational(gamma), hh = parse_rational(h);
        Daha H(AffineWeyl(R), HeckeParams::uniform(R, hh));
        auto mono = monodromy(kz_problem(H, degenerate_standard(H, Weight{g / 2}, 1), bits));
        auto [a, b] = rank_one_constants(mono, g, hh);
        return py::make_tuple(to_py(a), to_py(b));
      },
      py::arg("gamma"), py::arg("h"), py::arg("bits") = 256,
      "Structure constants read off the numerical monodromy of the A1 fiber with (nu : alpha^vee) = gamma.");
}
