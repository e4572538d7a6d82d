#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "saddletip/airy.hpp"
#include "saddletip/asymptotics.hpp"
#include "saddletip/ml_tipping.hpp"
#include "saddletip/seaice_tipping.hpp"
#include "saddletip/sweep.hpp"
#include "saddletip/tipping.hpp"
#include "saddletip/version.hpp"

namespace py = pybind11;
using namespace saddletip;

namespace {

py::object event_to_py(const std::optional<TippingEvent>& ev) {
  if (!ev) return py::none();
  py::dict d;
  d["t"] = ev->t_tip;
  d["param"] = ev->param_at_tip;
  d["threshold"] = ev->threshold_used;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tipping points of slowly drifted saddle-node systems under periodic forcing";
  m.attr("__version__") = kVersion;

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<RegimeError>(m, "RegimeError", PyExc_RuntimeError);
  py::register_exception<HysteresisLossError>(m, "HysteresisLossError", PyExc_RuntimeError);
  py::register_exception<PoleError>(m, "PoleError", PyExc_ArithmeticError);

  m.def("airy_ai", &airy_ai, py::arg("x"));
  m.def("airy_ai_prime", &airy_ai_prime, py::arg("x"));
  m.def("airy_first_zero", &airy_first_zero);
  m.def("airy_log_ratio", &airy_log_ratio, py::arg("x"));

  py::class_<Prediction>(m, "Prediction")
      .def_readonly("value", &Prediction::value)
      .def_readonly("delay_component", &Prediction::delay_component)
      .def_readonly("shift_component", &Prediction::shift_component)
      .def_property_readonly(
          "regime", [](const Prediction& p) { return to_string(p.regime); })
      .def_readonly("warnings", &Prediction::notes)
      .def_property_readonly("mapped_value",
                             [](const Prediction& p) -> py::object {
                               if (!p.mapped_value) return py::none();
                               return py::float_(*p.mapped_value);
                             })
      .def("__repr__", [](const Prediction& p) {
        return "Prediction(value=" + std::to_string(p.value) + ", regime=" +
               to_string(p.regime) + ")";
      });

  py::class_<CriticalAmplitude>(m, "CriticalAmplitude")
      .def_readonly("a_star", &CriticalAmplitude::a_star)
      .def_readonly("A_m", &CriticalAmplitude::A_m)
      .def_readonly("A1", &CriticalAmplitude::A1)
      .def_readonly("A_c", &CriticalAmplitude::A_c)
      .def_property_readonly("k",
                             [](const CriticalAmplitude& c) -> py::object {
                               if (!c.k) return py::none();
                               return py::int_(*c.k);
                             })
      .def("__repr__", [](const CriticalAmplitude& c) {
        return "CriticalAmplitude(A_c=" + std::to_string(c.A_c) + ")";
      });

  py::class_<CanonicalParams>(m, "CanonicalParams")
      .def(py::init([](double mu, double A, double Omega, double a0) {
             return CanonicalParams::make(mu, A, Omega, a0);
           }),
           py::arg("mu"), py::arg("A"), py::arg("Omega"), py::arg("a0"))
      .def_readwrite("mu", &CanonicalParams::mu)
      .def_readwrite("A", &CanonicalParams::A)
      .def_readwrite("Omega", &CanonicalParams::Omega)
      .def_readwrite("a0", &CanonicalParams::a0)
      .def_readwrite("x0", &CanonicalParams::x0)
      .def_property_readonly("lambda_exponent", &CanonicalParams::lambda)
      .def_property_readonly("c_ratio", &CanonicalParams::c_ratio);

  m.def("delayed_tipping", &delayed_tipping, py::arg("mu"));
  m.def("hf_tipping", &hf_tipping, py::arg("mu"), py::arg("A"), py::arg("Omega"));
  m.def("quadratic_tipping", &quadratic_tipping, py::arg("D"), py::arg("k0"),
        py::arg("k1"), py::arg("k2"), py::arg("mu"));
  m.def("slow_equilibrium", &slow_equilibrium, py::arg("a"), py::arg("mu"));
  m.def("lf_first_root",
        py::overload_cast<double, double, double>(&lf_first_root), py::arg("A"),
        py::arg("c"), py::arg("a0"));
  m.def("lf_tipping", &lf_tipping, py::arg("mu"), py::arg("A"), py::arg("c"),
        py::arg("a0"));
  m.def("lf_critical_amplitudes", &lf_critical_amplitudes, py::arg("mu"),
        py::arg("Omega"), py::arg("a0"), py::arg("k_max") = 10);
  m.def("lf_nu_critical", &lf_nu_critical, py::arg("mu"), py::arg("Omega"),
        py::arg("a0"), py::arg("k_max") = 10);
  m.def("predict_canonical", &predict_canonical, py::arg("params"));
  m.def(
      "simulate_canonical_tipping",
      [](const CanonicalParams& p, double dt) {
        return event_to_py(simulate_canonical_tipping(p, dt));
      },
      py::arg("params"), py::arg("dt") = 0.0);
  m.def(
      "escape_probability",
      [](const CanonicalParams& p, double eps, double a_lo, double a_hi,
         int n_paths, std::uint64_t seed, double dt) {
        const EscapeEstimate e =
            escape_probability(p, eps, {a_lo, a_hi}, n_paths, seed, dt);
        py::dict d;
        d["p_hat"] = e.p_hat;
        d["ci95"] = py::make_tuple(e.ci_lo, e.ci_hi);
        d["n_paths"] = e.n_paths;
        d["n_escaped"] = e.n_escaped;
        return d;
      },
      py::arg("params"), py::arg("eps"), py::arg("a_lo"), py::arg("a_hi"),
      py::arg("n_paths") = 10000, py::arg("seed") = 0, py::arg("dt") = 0.0);

  py::class_<MLParams>(m, "MLParams")
      .def(py::init<>())
      .def_readwrite("g_ca", &MLParams::g_ca)
      .def_readwrite("g_k", &MLParams::g_k)
      .def_readwrite("g_l", &MLParams::g_l)
      .def_readwrite("v_ca", &MLParams::v_ca)
      .def_readwrite("v_k", &MLParams::v_k)
      .def_readwrite("v_l", &MLParams::v_l)
      .def_readwrite("v1", &MLParams::v1)
      .def_readwrite("v2", &MLParams::v2)
      .def_readwrite("v3", &MLParams::v3)
      .def_readwrite("v4", &MLParams::v4)
      .def_readwrite("phi", &MLParams::phi)
      .def_readwrite("gamma", &MLParams::gamma)
      .def_readwrite("mu_hat", &MLParams::mu_hat)
      .def_readwrite("A_hat", &MLParams::A_hat)
      .def_readwrite("Omega_hat", &MLParams::Omega_hat)
      .def_readwrite("I0", &MLParams::I0);

  py::class_<MLNormalized>(m, "MLNormalized")
      .def_readonly("v_c", &MLNormalized::v_c)
      .def_readonly("I_c", &MLNormalized::I_c)
      .def_readonly("k0", &MLNormalized::k0)
      .def_readonly("k1", &MLNormalized::k1)
      .def_readonly("k2", &MLNormalized::k2)
      .def_readonly("D", &MLNormalized::D)
      .def("mu_from_hat", &MLNormalized::mu_from_hat)
      .def("amp_from_hat", &MLNormalized::amp_from_hat)
      .def("omega_from_hat", &MLNormalized::omega_from_hat)
      .def("bias_from_b", &MLNormalized::bias_from_b);

  m.def("ml_normalize", &ml_normalize, py::arg("params"));
  m.def("ml_unforced_tipping", &ml_unforced_tipping, py::arg("normalized"),
        py::arg("mu"));
  m.def("ml_hf_tipping", &ml_hf_tipping, py::arg("normalized"), py::arg("A"),
        py::arg("Omega"), py::arg("mu"));
  m.def("ml_lf_tipping", &ml_lf_tipping, py::arg("normalized"), py::arg("mu"),
        py::arg("A"), py::arg("C"), py::arg("b0"));
  m.def("ml_lf_critical", &ml_lf_critical, py::arg("normalized"), py::arg("mu"),
        py::arg("Omega"), py::arg("b0"), py::arg("k_max") = 10);
  m.def("predict_ml", &predict_ml, py::arg("normalized"), py::arg("mu"),
        py::arg("A"), py::arg("Omega"), py::arg("b0"));
  m.def(
      "simulate_ml_tipping",
      [](const MLParams& phys, const MLNormalized& n, double mu, double A,
         double Omega, double b0, double dt_hat) {
        return event_to_py(simulate_ml_tipping(phys, n, mu, A, Omega, b0, dt_hat));
      },
      py::arg("params"), py::arg("normalized"), py::arg("mu"), py::arg("A"),
      py::arg("Omega"), py::arg("b0"), py::arg("dt_hat") = 0.0);

  py::class_<SeaIceParams>(m, "SeaIceParams")
      .def(py::init<>())
      .def_static("defaults", &SeaIceParams::defaults)
      .def_readwrite("L_i", &SeaIceParams::L_i)
      .def_readwrite("cml_Hml", &SeaIceParams::cml_Hml)
      .def_readwrite("alpha_i", &SeaIceParams::alpha_i)
      .def_readwrite("alpha_ml", &SeaIceParams::alpha_ml)
      .def_readwrite("F_B", &SeaIceParams::F_B)
      .def_readwrite("h_alpha", &SeaIceParams::h_alpha)
      .def_readwrite("mu_tilde", &SeaIceParams::mu_tilde)
      .def_readonly("synthetic_forcing", &SeaIceParams::synthetic_forcing);

  py::class_<SeaIceNormalized>(m, "SeaIceNormalized")
      .def_readonly("E_c", &SeaIceNormalized::E_c)
      .def_readonly("dF0_c", &SeaIceNormalized::dF0_c)
      .def_readonly("Omega", &SeaIceNormalized::Omega)
      .def_readonly("mu", &SeaIceNormalized::mu)
      .def_readonly("G1", &SeaIceNormalized::G1)
      .def_readonly("G2", &SeaIceNormalized::G2)
      .def_readonly("G4", &SeaIceNormalized::G4)
      .def("H", &SeaIceNormalized::H)
      .def("dF0_from_b", &SeaIceNormalized::dF0_from_b);

  m.def("seaice_normalize", &seaice_normalize, py::arg("params"));
  m.def("seaice_xstar", &seaice_xstar, py::arg("normalized"));
  m.def("seaice_tipping", &seaice_tipping, py::arg("normalized"), py::arg("mu"));
  m.def("seaice_tipping_averaged", &seaice_tipping_averaged,
        py::arg("normalized"), py::arg("mu"));
  m.def("seaice_bistable", &seaice_bistable, py::arg("normalized"));
  m.def("scale_ft", &scale_ft, py::arg("params"), py::arg("factor"));
  m.def("shift_ft_mean", &shift_ft_mean, py::arg("params"), py::arg("delta"));
  m.def("scale_cml", &scale_cml, py::arg("params"), py::arg("factor"));
  m.def("with_h_alpha", &with_h_alpha, py::arg("params"), py::arg("h_alpha"));
  m.def(
      "simulate_seaice_tipping",
      [](const SeaIceParams& p, const SeaIceNormalized& n, double b0,
         double x_floor, double dt) {
        return event_to_py(simulate_seaice_tipping(p, n, b0, x_floor, dt));
      },
      py::arg("params"), py::arg("normalized"), py::arg("b0") = 1.5,
      py::arg("x_floor") = -0.5, py::arg("dt") = 0.0);
}
