#pragma once

#include "stralg/gauge.hpp"
#include "stralg/courant.hpp"

namespace stralg {

enum class VolumeKind {
  Standard,    // mu = omega0^n/n!  (density 1 w.r.t. the canonical volume)
  Holomorphic  // mu = (-1)^{n(n-1)/2} i^n Omega ^ Omegabar, Omega = dz^1..dz^n
};

inline double volume_density(VolumeKind k, int n) {
  return k == VolumeKind::Standard ? 1.0 : std::pow(2.0, n);
}

// Point of the configuration space W (horizontal lifts): a triple
// (omega, b, a) relative to a base splitting with connection theta0,
// together with the level ell != 2 and the volume form choice.
struct Configuration {
  TrigForm omega;     // real (1,1), positive on the grid
  TrigForm b;         // real 2-form
  TrigForm a;         // k-valued (compact-real) 1-form
  Connection theta0;  // base connection
  double ell = 1.0;
  VolumeKind mu = VolumeKind::Standard;
  int gridN = 0;  // 0 = frame default

  Configuration() = default;
  Configuration(TrigForm omega_, TrigForm b_, TrigForm a_, Connection theta0_,
                double ell_, VolumeKind mu_ = VolumeKind::Standard,
                int gridN_ = 0);

  TrigForm theta_R() const { return theta0.theta + a; }
  int resolution() const {
    return gridN > 0 ? gridN : default_grid_resolution(omega.frame().n);
  }
};

struct TangentW {
  TrigForm omega_dot;  // real (1,1)
  TrigForm b_dot;      // real 2-form
  TrigForm a_dot;      // k-valued 1-form

  static TangentW zero(TorusFrame f, const PairingSpec& p) {
    return TangentW{TrigForm::zero(f, 2, 1), TrigForm::zero(f, 2, 1),
                    TrigForm::zero(f, 1, p.msize())};
  }
};

// The complex structure J|_W (dot-b reading of the (0,2)-slot).
TangentW complex_structure_J(const Configuration& W, const TangentW& v);

// Cached grid data for one configuration: dilaton function, weight
// e^{-ell f}, volume density and the certified functional value.
class DilatonContext {
 public:
  explicit DilatonContext(const Configuration& W, bool certify = true);

  const Configuration& config() const { return W_; }
  double M() const { return M_; }
  double certificate_gap() const { return cert_gap_; }

  double m_ell() const { return M_; }
  double lambda_ell(const TangentW& v) const;
  double omega_ell(const TangentW& v1, const TangentW& v2) const;
  double g_ell(const TangentW& v1, const TangentW& v2) const;
  double g_ell(const TangentW& v) const { return g_ell(v, v); }

  // <mu_ell(W), (s,B)> with (s,B) in the splitting induced by W.
  double moment(const TrigForm& s, const TrigForm& B) const;

  // weighted integrals used by the closed-form displays
  double int_top(const TrigForm& top) const;     // int (top) e^{-ell f}
  double int_lambda(const TrigForm& two) const;  // int a ^ e^{-lf} w^{n-1}/(n-1)!

 private:
  Configuration W_;
  GridForm fdil_;     // dilaton function
  GridForm weight_;   // e^{-ell f}
  GridForm vol_;      // omega^n/n! density (= e^{2f} mu density)
  GridForm omega_g_;  // sampled omega
  TrigForm wn1_;      // omega^{n-1}/(n-1)!
  TrigForm wn2_;      // omega^{n-2}/(n-2)! (n >= 2)
  double M_ = 0.0;
  double cert_gap_ = 0.0;
};

double m_ell(const Configuration& W);

// Infinitesimal action of a Lie algebra element (s,B) of Aut(E_R) at W,
// expressed in the W-splitting: (0, -B, -d^{theta_R} s).
TangentW infinitesimal_action(const Configuration& W, const TrigForm& s,
                              const TrigForm& B);

struct CalabiResiduals {
  double hym = 0;       // F ^ omega^{n-1}
  double f02 = 0;       // F^{0,2}
  double balanced = 0;  // d(e^{-ell f} omega^{n-1})
  double anomaly = 0;   // dd^c omega + <F ^ F>
  double max() const { return std::max({hym, f02, balanced, anomaly}); }
};

CalabiResiduals calabi_residual(const Configuration& W);
// The Hull-Strominger residuals: level 1 with the holomorphic volume form.
CalabiResiduals hs_residual(const Configuration& W);

// Group moves used by the equivariance checks.
Configuration act_b_shift(const Configuration& W, const TrigForm& tau_real);
Configuration act_const_gauge(const Configuration& W, const Mat& g_const);

// Compact-form data (omega + upsilon, h) for a holomorphic base (P,H,theta):
// verifies d upsilon = H + 2i del omega + CS(theta) - CS(theta^h)
// - d<theta ^ theta^h> and returns the induced real datum, the lifting and
// the Chern-correspondence triple.
struct CompactFormData {
  TrigForm H_R;            // = d^c omega
  GridConnection theta_R;  // Chern connection of h
  Lifting lift;            // L_W in the real-model splitting
  ChernTriple W;           // (omega, 0, 0)
};

CompactFormData compact_form_data(const TrigForm& omega,
                                  const TrigForm& upsilon,
                                  const HermitianReduction& h,
                                  const HoloData& base, double tol = 1e-6);

// The flat Hull-Strominger reference solution on T^3_C: omega = 2 omega0
// (so that f = 0 for the holomorphic volume), flat connection.
Configuration flat_hs_fixture(const PairingSpec& p, int gridN = 0);

}  // namespace stralg
