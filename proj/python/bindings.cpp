#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "derange/arith.hpp"
#include "derange/egf.hpp"
#include "derange/identities.hpp"
#include "derange/oracle.hpp"
#include "derange/sequences.hpp"

namespace py = pybind11;
using namespace derange;

namespace {

py::int_ to_py(const BigInt& value) { return py::int_(py::str(value.get_str(10))); }

BigInt from_py(const py::int_& value) {
  return BigInt(py::str(static_cast<py::handle>(value)).cast<std::string>(), 10);
}

py::object to_fraction(const Rational& value) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_py(value.get_num()), to_py(value.get_den()));
}

py::list series_to_list(const TruncatedSeries& series) {
  py::list out;
  for (const auto& c : series.coeffs()) out.append(to_fraction(c));
  return out;
}

py::list terms_to_list(const TermSequence& terms) {
  py::list out;
  for (const auto& t : terms) out.append(to_py(t));
  return out;
}

TermSequence list_to_terms(const std::vector<py::int_>& values) {
  TermSequence out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(from_py(v));
  return out;
}

py::dict evaluation_dict(const Evaluation& e) {
  py::dict d;
  d["params"] = e.params;
  d["lhs"] = e.lhs;
  d["rhs"] = e.rhs;
  d["note"] = e.note;
  return d;
}

py::dict report_dict(const IdentityReport& report) {
  py::dict d;
  d["identity"] = std::string(identity_name(report.id));
  d["grid"] = report.grid;
  d["passed"] = report.passed();
  py::list counterexamples;
  for (const auto& c : report.counterexamples) counterexamples.append(evaluation_dict(c));
  py::list witnesses;
  for (const auto& w : report.witnesses) witnesses.append(evaluation_dict(w));
  d["counterexamples"] = counterexamples;
  d["witnesses"] = witnesses;
  d["elapsed_seconds"] = std::chrono::duration<double>(report.elapsed).count();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact derangement-family sequences, truncated EGF algebra and identity checks";

  m.def("factorial", [](unsigned n) { return to_py(factorial(n)); }, py::arg("n"));
  m.def("binomial", [](unsigned n, std::int64_t k) { return to_py(binomial(n, k)); },
        py::arg("n"), py::arg("k"));
  m.def("rising_factorial", [](unsigned r, unsigned q) { return to_py(rising_factorial(r, q)); },
        py::arg("r"), py::arg("q"));

  m.def("derangement", [](unsigned n) { return to_py(derangement(n)); }, py::arg("n"));
  m.def("derangement_nearest_int", [](unsigned n) { return to_py(derangement_nearest_int(n)); },
        py::arg("n"));
  m.def("r_derangement", [](unsigned n, unsigned r) { return to_py(r_derangement(n, r)); },
        py::arg("n"), py::arg("r"));
  m.def("r_derangement_recurrence",
        [](unsigned n, unsigned r) { return to_py(r_derangement_recurrence(n, r)); },
        py::arg("n"), py::arg("r"));
  m.def("b_derangement", [](unsigned n) { return to_py(b_derangement(n)); }, py::arg("n"));
  m.def("lah", [](unsigned n1, unsigned n2) { return to_py(lah(n1, n2)); }, py::arg("n1"),
        py::arg("n2"));
  m.def("b_stirling_k0", [](unsigned n, unsigned r) { return to_py(b_stirling_k0(n, r)); },
        py::arg("n"), py::arg("r"));

  // Series come back as lists of fractions.Fraction (ordinary coefficients).
  m.def("series_exp", [](int sign, std::size_t order) { return series_to_list(series_exp(sign, order)); },
        py::arg("sign"), py::arg("order"));
  m.def("series_reciprocal_pole",
        [](long mult, unsigned p, std::size_t order) {
          return series_to_list(series_reciprocal_pole(mult, p, order));
        },
        py::arg("m"), py::arg("p"), py::arg("order"));
  m.def("egf_r_derangement",
        [](unsigned r, std::size_t order) { return series_to_list(egf_r_derangement(r, order)); },
        py::arg("r"), py::arg("order"));
  m.def("egf_b_derangement",
        [](std::size_t order) { return series_to_list(egf_b_derangement(order)); },
        py::arg("order"));
  m.def("egf_r_derangement_terms",
        [](unsigned r, std::size_t order) { return terms_to_list(to_terms(egf_r_derangement(r, order))); },
        py::arg("r"), py::arg("order"));
  m.def("binomial_convolution",
        [](const std::vector<py::int_>& a, const std::vector<py::int_>& b) {
          return terms_to_list(binomial_convolution(list_to_terms(a), list_to_terms(b)));
        },
        py::arg("a"), py::arg("b"));
  m.def("cauchy_product_terms",
        [](const std::vector<py::int_>& a, const std::vector<py::int_>& b) {
          return terms_to_list(
              to_terms(cauchy_product(from_terms(list_to_terms(a)), from_terms(list_to_terms(b)))));
        },
        py::arg("a"), py::arg("b"),
        "Term sequence of the product of the EGFs of a and b.");

  m.def("count_r_derangements",
        [](unsigned n, unsigned r) { return to_py(oracle::count_r_derangements(oracle::Config(n, r, false))); },
        py::arg("n"), py::arg("r"));
  m.def("count_signed_derangements",
        [](unsigned n) { return to_py(oracle::count_signed_derangements(oracle::Config(n, 0, true))); },
        py::arg("n"));
  m.def("count_ordered_partitions",
        [](unsigned n1, unsigned n2) { return to_py(oracle::count_ordered_partitions(n1, n2)); },
        py::arg("n1"), py::arg("n2"));
  m.def("cycle_decomposition",
        [](const std::vector<unsigned>& images) { return oracle::cycle_decomposition(images); },
        py::arg("images"),
        "Canonical cycles of a permutation given as 1-based images.");

  m.def("identity_names", [] {
    std::vector<std::string> names;
    for (IdentityId id : kAllIdentities) names.emplace_back(identity_name(id));
    return names;
  });
  m.def("verify",
        [](const std::string& name, std::optional<unsigned> r_max, std::optional<unsigned> n_max) {
          const Grids grids = apply_overrides(Grids{}, GridOverrides{r_max, n_max});
          if (name == "all") {
            py::list out;
            for (const auto& report : check_all(grids)) out.append(report_dict(report));
            return py::object(out);
          }
          const auto id = parse_identity(name);
          if (!id) throw py::value_error("unknown identity '" + name + "'");
          return py::object(report_dict(check(*id, grids)));
        },
        py::arg("identity"), py::arg("r_max") = py::none(), py::arg("n_max") = py::none());

  py::register_exception<oracle::CapExceeded>(m, "CapExceeded", PyExc_ValueError);
  py::register_exception<NonIntegralTerm>(m, "NonIntegralTerm", PyExc_ArithmeticError);
  py::register_exception<OrderMismatch>(m, "OrderMismatch", PyExc_ValueError);
}
