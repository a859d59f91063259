#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stralg/scenario.hpp"

namespace py = pybind11;
using namespace stralg;

namespace {

TrigForm form_from_json_str(const std::string& text) {
  return trigform_from_json(json::parse(text));
}

std::string form_to_json_str(const TrigForm& f) { return to_json(f).dump(); }

IntersectionRing ring_from(int h11,
                           const std::vector<std::array<double, 4>>& kappa,
                           double vol_mu) {
  return IntersectionRing::from_entries(h11, kappa, vol_mu);
}

}  // namespace

PYBIND11_MODULE(_stralg, m) {
  m.doc() =
      "string algebroid workbench: exact exterior calculus on flat complex "
      "tori, Courant/Picard structures, dilaton functionals and moduli "
      "metrics";

  py::register_exception<Error>(m, "StralgError");

  py::class_<TrigForm>(m, "Form")
      .def_static("from_json", &form_from_json_str, py::arg("text"))
      .def("to_json", &form_to_json_str)
      .def_property_readonly("degree", &TrigForm::degree)
      .def_property_readonly("matrix_size", &TrigForm::msize)
      .def("norm", [](const TrigForm& f) { return norm_max(f); })
      .def("__add__", [](const TrigForm& a, const TrigForm& b) { return a + b; })
      .def("__sub__", [](const TrigForm& a, const TrigForm& b) { return a - b; })
      .def("__rmul__", [](const TrigForm& a, double s) { return cplx(s) * a; });

  m.def("standard_kaehler_form",
        [](int n, double scale) {
          return standard_kaehler_form(TorusFrame{n}, scale);
        },
        py::arg("n"), py::arg("scale") = 1.0);
  m.def("wedge",
        [](const TrigForm& a, const TrigForm& b) { return wedge(a, b); });
  m.def("d", [](const TrigForm& a) { return exterior_d(a); });
  m.def("del_", [](const TrigForm& a) { return del(a); });
  m.def("delbar", [](const TrigForm& a) { return delbar(a); });
  m.def("dc", [](const TrigForm& a) { return dc(a); });
  m.def("integrate", [](const TrigForm& a) {
    cplx v = integrate(a);
    return std::make_pair(v.real(), v.imag());
  });
  m.def("volume_form", [](int n) {
    TorusFrame f{n};
    return wedge_power_over_factorial(standard_kaehler_form(f), n);
  });

  m.def(
      "m_ell",
      [](int n, double lam, double ell) {
        TorusFrame f{n};
        PairingSpec p = PairingSpec::trace(1);
        Configuration W(lam * standard_kaehler_form(f),
                        TrigForm::zero(f, 2, 1), TrigForm::zero(f, 1, 1),
                        Connection::flat(f, p), ell);
        return m_ell(W);
      },
      py::arg("n"), py::arg("lam"), py::arg("ell"),
      "dilaton functional of lam * omega0 on T^n_C");

  m.def("hs_residuals", []() {
    Configuration W = flat_hs_fixture(PairingSpec::signed_two_block(1, 1), 6);
    CalabiResiduals r = hs_residual(W);
    std::map<std::string, double> out{{"hym", r.hym},
                                      {"f02", r.f02},
                                      {"balanced", r.balanced},
                                      {"anomaly", r.anomaly}};
    return out;
  });

  m.def("deformation_dimension", &deformation_dimension, py::arg("h1_end"));

  m.def("potential_K",
        [](int h11, const std::vector<std::array<double, 4>>& kappa,
           double vol_mu, const std::vector<double>& re_a, double ell) {
          IntersectionRing ring = ring_from(h11, kappa, vol_mu);
          Eigen::VectorXd t(h11);
          for (int i = 0; i < h11; ++i) t[i] = re_a[i];
          return potential_K(ring, t, ell);
        });

  m.def("cone_metric_matrix",
        [](int h11, const std::vector<std::array<double, 4>>& kappa,
           double vol_mu, const std::vector<double>& re_a, double ell) {
          IntersectionRing ring = ring_from(h11, kappa, vol_mu);
          Eigen::VectorXd t(h11);
          for (int i = 0; i < h11; ++i) t[i] = re_a[i];
          Eigen::MatrixXd G = cone_metric_matrix(ring, t, ell);
          std::vector<std::vector<double>> out(G.rows());
          for (int i = 0; i < G.rows(); ++i) {
            out[i].resize(G.cols());
            for (int j = 0; j < G.cols(); ++j) out[i][j] = G(i, j);
          }
          return out;
        });

  m.def("conjecture_margin",
        [](int h11, const std::vector<std::array<double, 4>>& kappa,
           double vol_mu, const std::vector<double>& re_a,
           const std::vector<double>& re_adot) {
          IntersectionRing ring = ring_from(h11, kappa, vol_mu);
          Eigen::VectorXd t(h11), x(h11);
          for (int i = 0; i < h11; ++i) {
            t[i] = re_a[i];
            x[i] = re_adot[i];
          }
          return conjecture_margin_ring(ring, t, x);
        });

  m.def(
      "run_scenario",
      [](const std::string& name) {
        Scenario s = load_scenario(name);
        json rep = run_scenario(s, 1);
        return std::make_pair(report_passed(rep), rep.dump());
      },
      py::arg("name"), "run a builtin scenario; returns (passed, report)");

  m.def("suite_names", [] { return suite_names(); });
}
