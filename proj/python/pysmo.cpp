#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "smo/analytic.hpp"
#include "smo/catalog.hpp"
#include "smo/cli.hpp"
#include "smo/distinguisher.hpp"
#include "smo/errors.hpp"
#include "smo/io.hpp"
#include "smo/primes.hpp"
#include "smo/rankin_selberg.hpp"
#include "smo/smoothing.hpp"

namespace py = pybind11;
using namespace smo;

namespace {

RepresentationSpec spec_from_object(const py::object& obj) {
  if (py::isinstance<py::str>(obj)) return load_spec(obj.cast<std::string>());
  if (py::isinstance<py::dict>(obj)) {
    const auto text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
    return load_spec(text);
  }
  throw PreconditionError("representation spec must be a dict, a JSON string or a path");
}

py::dict spec_to_dict(const RepresentationSpec& spec) {
  const auto text = spec_to_json(spec).dump();
  return py::module_::import("json").attr("loads")(text).cast<py::dict>();
}

py::array_t<std::complex<double>> series_array(const RSCoefficientSeries& s) {
  py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(s.a.size()));
  auto view = out.mutable_unchecked<1>();
  for (std::size_t n = 0; n < s.a.size(); ++n) view(static_cast<py::ssize_t>(n)) = s.a[n];
  return out;
}

}  // namespace

PYBIND11_MODULE(pysmo, m) {
  m.doc() = "Rankin-Selberg coefficients, smoothed sums and the distinguisher for characters and level-one eigenforms.";

  static py::exception<PreconditionError> precondition(m, "PreconditionError", PyExc_ValueError);
  static py::exception<NumericError> numeric(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const PreconditionError& e) {
      py::set_error(precondition, e.what());
    } catch (const NumericError& e) {
      py::set_error(numeric, e.what());
    }
  });

  py::class_<Representation>(m, "Representation")
      .def_property_readonly("label", &Representation::label)
      .def_property_readonly("degree", &Representation::degree)
      .def_property_readonly("spec", [](const Representation& r) { return spec_to_dict(r.spec()); })
      .def_property_readonly("local_bound", &Representation::local_bound)
      .def("ramified_primes", &Representation::ramified_primes)
      .def("satake", [](const Representation& r, std::uint32_t p) { return satake_at(r, p).alphas; }, py::arg("p"))
      .def("archimedean", [](const Representation& r) { return archimedean_data(r).b_params; })
      .def("conductor",
           [](const Representation& r) {
             const auto c = analytic_conductor(r);
             return py::make_tuple(c.arithmetic, c.analytic);
           })
      .def("coefficient",
           [](const Representation& r, std::size_t n) {
             // Exact q-expansion coefficient as a Python int.
             return py::int_(py::str(r.form().coefficient(n).str()));
           },
           py::arg("n"))
      .def("__repr__", [](const Representation& r) { return "<Representation " + r.label() + ">"; });

  m.def("dirichlet_character", &dirichlet_character, py::arg("modulus"), py::arg("index"), py::arg("label") = "");
  m.def("eigenform", &eigenform, py::arg("weight"), py::arg("prime_bound") = kDefaultPrimeBound,
        py::arg("label") = "");
  m.def("representation",
        [](const py::object& spec, std::uint32_t prime_bound) {
          return make_representation(spec_from_object(spec), prime_bound);
        },
        py::arg("spec"), py::arg("prime_bound") = kDefaultPrimeBound);
  m.def("primitive_character_indices", &primitive_character_indices, py::arg("modulus"));

  py::class_<RSCoefficientSeries>(m, "RSCoefficientSeries")
      .def_readonly("n_max", &RSCoefficientSeries::n_max)
      .def_readonly("degree_a", &RSCoefficientSeries::degree_a)
      .def_readonly("degree_b", &RSCoefficientSeries::degree_b)
      .def_readonly("label_a", &RSCoefficientSeries::label_a)
      .def_readonly("label_b", &RSCoefficientSeries::label_b)
      .def_readonly("ramified_primes", &RSCoefficientSeries::ramified_primes)
      .def_property_readonly("coefficients", &series_array)
      .def("__getitem__",
           [](const RSCoefficientSeries& s, std::size_t n) {
             if (n < 1 || n > s.n_max) throw py::index_error("n outside [1, n_max]");
             return s[n];
           })
      .def("__len__", [](const RSCoefficientSeries& s) { return s.n_max; })
      .def("touches_ramified", &RSCoefficientSeries::touches_ramified)
      .def("to_csv", [](const RSCoefficientSeries& s) {
        std::ostringstream out;
        write_series_csv(out, s);
        return out.str();
      });

  m.def("rs_series", &rs_series, py::arg("a"), py::arg("b"), py::arg("n_max"),
        py::call_guard<py::gil_scoped_release>());
  m.def("local_coefficients",
        [](std::vector<Complex> alphas, std::vector<Complex> betas, int max_exponent) {
          return local_coefficients(SatakeClass{2, std::move(alphas)}, SatakeClass{2, std::move(betas)}, max_exponent)
              .coefficients;
        },
        py::arg("alphas"), py::arg("betas"), py::arg("max_exponent"));

  py::class_<BrumleySweep>(m, "BrumleySweep")
      .def_readonly("m", &BrumleySweep::m)
      .def_readonly("samples", &BrumleySweep::samples)
      .def_readonly("min_residual", &BrumleySweep::min_residual)
      .def_readonly("max_imag", &BrumleySweep::max_imag);
  m.def("brumley_sweep", &brumley_sweep, py::arg("m"), py::arg("samples"), py::arg("seed"));

  py::class_<PairConductor>(m, "PairConductor")
      .def_readonly("arithmetic", &PairConductor::arithmetic)
      .def_readonly("analytic", &PairConductor::analytic)
      .def_readonly("b_pair", &PairConductor::b_pair)
      .def_readonly("root_number", &PairConductor::root_number);
  m.def("pair_conductor", &pair_conductor, py::arg("a"), py::arg("b"));

  py::class_<SmoothedSum>(m, "SmoothedSum")
      .def_readonly("x", &SmoothedSum::x)
      .def_readonly("value", &SmoothedSum::value)
      .def_readonly("terms_used", &SmoothedSum::terms_used)
      .def_readonly("error_bound", &SmoothedSum::error_bound);
  m.def("smoothed_sum", py::overload_cast<const RSCoefficientSeries&, double, unsigned>(&smoothed_sum),
        py::arg("series"), py::arg("x"), py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());

  py::enum_<Verdict>(m, "Verdict")
      .value("Distinct", Verdict::Distinct)
      .value("IndistinguishableUpTo", Verdict::IndistinguishableUpTo);
  py::class_<DistinguishReport>(m, "DistinguishReport")
      .def_readonly("verdict", &DistinguishReport::verdict)
      .def_readonly("x", &DistinguishReport::x)
      .def_readonly("evidence_prime", &DistinguishReport::evidence_prime)
      .def_readonly("evidence_ramified", &DistinguishReport::evidence_ramified)
      .def_readonly("sum_self", &DistinguishReport::sum_self)
      .def_readonly("sum_cross", &DistinguishReport::sum_cross)
      .def_readonly("margin", &DistinguishReport::margin)
      .def_readonly("error_bound", &DistinguishReport::error_bound)
      .def_readonly("sums_agree", &DistinguishReport::sums_agree)
      .def_readonly("q", &DistinguishReport::q)
      .def_readonly("n", &DistinguishReport::n)
      .def_readonly("h", &DistinguishReport::h)
      .def_readonly("threshold_x", &DistinguishReport::threshold_x);
  m.def("distinguish", &distinguish, py::arg("a"), py::arg("b"), py::arg("x"), py::arg("h") = 10.0);
  m.def("first_disagreement", &first_disagreement, py::arg("a"), py::arg("b"), py::arg("limit"),
        py::arg("include_ramified") = false);

  m.def("weight", &weight, py::arg("x"));
  m.def("mellin", [](Complex s) { return mellin(s).value; }, py::arg("s"));
  m.def("log_gamma", &log_gamma, py::arg("z"));
  m.def("gamma_ratio",
        [](Complex s, std::vector<Complex> b, int mm, int m_prime) {
          return gamma_ratio(GammaRatioInput{s, std::move(b), 1, mm, m_prime});
        },
        py::arg("s"), py::arg("b_list"), py::arg("m") = 1, py::arg("m_prime") = 1);
  m.def("stirling_bound_ratio",
        [](Complex s, std::vector<Complex> b, int mm, int m_prime) {
          return stirling_bound_ratio(GammaRatioInput{s, std::move(b), 1, mm, m_prime});
        },
        py::arg("s"), py::arg("b_list"), py::arg("m") = 1, py::arg("m_prime") = 1);

  m.def("prime_count", [](std::uint64_t limit) { return sieve(limit).size(); }, py::arg("limit"));
  m.def("primes", [](std::uint64_t limit) {
    const auto t = sieve(limit);
    return std::vector<std::uint32_t>(t.primes().begin(), t.primes().end());
  }, py::arg("limit"));
  m.def("window_count", py::overload_cast<double, int>(&window_count), py::arg("x"), py::arg("m"));

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line front end; returns (exit_code, stdout, stderr).");
}
