#pragma once

#include "stralg/cohomology.hpp"
#include "stralg/dilaton.hpp"

namespace stralg {

// --- intersection-ring layer -------------------------------------------------

// Cubic intersection data on H^{1,1}: kappa totally symmetric.
struct IntersectionRing {
  int h11 = 1;
  std::vector<double> kappa;  // dense h11^3, symmetrized
  double vol_mu = 1.0;

  double& at(int i, int j, int k) {
    return kappa[(static_cast<std::size_t>(i) * h11 + j) * h11 + k];
  }
  double get(int i, int j, int k) const {
    return kappa[(static_cast<std::size_t>(i) * h11 + j) * h11 + k];
  }
  double cubic(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
               const Eigen::VectorXd& c) const;

  static IntersectionRing from_entries(
      int h11, const std::vector<std::array<double, 4>>& entries,
      double vol_mu = 1.0);
  // the quintic threefold: h11 = 1, kappa_111 = 5
  static IntersectionRing quintic(double vol_mu = 1.0);
  // degree (3,3) hypersurface in P^2 x P^2: kappa_112 = kappa_122 = 3
  static IntersectionRing bicubic(double vol_mu = 1.0);
};

// Complexified (1,1)-class in the ring basis.
struct ComplexifiedClass {
  Eigen::VectorXd re, im;
};

// Kaehler potential K = -(2-l)/2 log((Re a)^n/n!) - (l/2) log vol_mu (n = 3).
double potential_K(const IntersectionRing& ring, const Eigen::VectorXd& re_a,
                   double ell);

// Moduli metric on the complexified cone (n = 3); errors outside the cone.
double cone_metric(const IntersectionRing& ring, const Eigen::VectorXd& re_a,
                   double ell, const ComplexifiedClass& adot);
// Bilinear version and the full 2 h11 x 2 h11 Gram matrix in the (Re,Im)
// coordinates.
double cone_metric_bilinear(const IntersectionRing& ring,
                            const Eigen::VectorXd& re_a, double ell,
                            const ComplexifiedClass& v1,
                            const ComplexifiedClass& v2);
Eigen::MatrixXd cone_metric_matrix(const IntersectionRing& ring,
                                   const Eigen::VectorXd& re_a, double ell);

// Value of the dilaton functional on the Kaehler solution in class re_a.
double ring_m_ell(const IntersectionRing& ring, const Eigen::VectorXd& re_a,
                  double ell);

// Fibre-wise semi-topological metric from cohomological data.
double fibre_metric(const CohomClass& adot_re, const CohomClass& adot_im,
                    const CohomClass& bdot_re, const CohomClass& bdot_im,
                    const CohomClass& b_class, double M, double ell);

// RHS - LHS of the conjectured inequality at level 1:
//   Re adot . Re bdot < (1/(2 M1)) (Re adot . b)^2.
double conjecture_margin(const CohomClass& adot_re, const CohomClass& bdot_re,
                         const CohomClass& b_class, double M1);
// Ring-based variant on trivial-bundle Kaehler instances.
double conjecture_margin_ring(const IntersectionRing& ring,
                              const Eigen::VectorXd& re_a,
                              const Eigen::VectorXd& re_adot);

// Futaki map s -> [<s, F_h>] in Aeppli cohomology; errors when s is not
// holomorphic (delbar^h s != 0).
CohomClass futaki(const TrigForm& s, const Connection& theta_h,
                  double tol = 1e-9);

// Deformation-family dimension count: two bundle deformation parameters
// of dimension h1_end each, plus the level ell and the deformation size.
int deformation_dimension(int h1_end);

// --- linearized operators on flat backgrounds -------------------------------

struct KAlgebra {
  PairingSpec pairing;
  std::vector<Mat> basis;  // anti-hermitian block generators

  static KAlgebra u1();
  static KAlgebra su2();
};

// Background with constant omega, flat connection, constant dilaton; all
// linearized operators are mode-diagonal here.
struct FlatBackground {
  TorusFrame frame;
  TrigForm omega;  // constant real (1,1), positive
  double ell = 1.0;
  KAlgebra alg;
  double weight = 1.0;  // e^{-ell f}
  TrigForm wn1, wn2;    // omega powers over factorials
  cplx vol_coeff = 1.0; // coefficient of the top blade in omega^n/n!
};

FlatBackground make_flat_background(const TrigForm& omega_const, double ell,
                                    const KAlgebra& alg,
                                    VolumeKind mu = VolumeKind::Standard);

// Random form with values in the span of the algebra generators (the honest
// ad P_h-valued test data for the mode-diagonal operators).
template <class Gen>
TrigForm k_valued_form(Gen& gen, const KAlgebra& alg, int degree, int kmax,
                       int terms) {
  TorusFrame f = gen.frame();
  TrigForm r(f, degree, alg.pairing.msize());
  std::uniform_int_distribution<std::size_t> bd(0, alg.basis.size() - 1);
  for (int t = 0; t < terms; ++t) {
    Blade real_blade;
    std::vector<int> axes(f.dim());
    for (int i = 0; i < f.dim(); ++i) axes[i] = i;
    std::shuffle(axes.begin(), axes.end(), gen.engine());
    real_blade.assign(axes.begin(), axes.begin() + degree);
    std::sort(real_blade.begin(), real_blade.end());
    Mat v = gen.scalar() * alg.basis[bd(gen.engine())];
    TrigForm term(f, degree, alg.pairing.msize());
    add_real_basis_term(term, real_blade, gen.random_mode(kmax), v);
    r += term;
  }
  return 0.5 * (r + compact_conj(r));
}

// Lambda_omega and primitive part for constant omega (exact, mode-wise).
TrigForm lambda_const(const TrigForm& omega_const, const TrigForm& alpha);
TrigForm primitive_const(const TrigForm& omega_const, const TrigForm& alpha);

// P-hat (u, xi) = (0, d xi + 2<u,F>, d^h u); F = 0 on flat backgrounds.
TangentW p_hat(const FlatBackground& bg, const TrigForm& u,
               const TrigForm& xi);

// The four linear expressions of the combined linearization.
std::array<TrigForm, 4> linearized_L(const FlatBackground& bg,
                                     const TangentW& v);
double linearized_L_norm(const FlatBackground& bg, const TangentW& v);

// Adjoint P-hat* = (P*_0, P*_1) with respect to (g_ell, <,>_ell).
std::pair<TrigForm, TrigForm> p_hat_adjoint(const FlatBackground& bg,
                                            const TangentW& v);

// The indefinite L2 pairing on the domain of P-hat.
double l2_ell_pairing(const FlatBackground& bg, const TrigForm& u1,
                      const TrigForm& xi1, const TrigForm& u2,
                      const TrigForm& xi2, double M);

struct ModeKernelReport {
  std::vector<std::pair<Mode, int>> kernel_dims;  // nonzero modes
  int constant_mode_kernel = 0;
  int total_nonconstant_kernel = 0;
  bool square = true;  // per-mode matrices are square (zero-index shape)
  int domain_dim_per_mode = 0;
};

// Per-mode kernel scan of the gauge-fixing operator L = P-hat* P-hat over
// |k|_inf <= kmax (xi-slot restricted to Im d*).
ModeKernelReport condition_a(const FlatBackground& bg, int kmax);

struct GaugeFixReport {
  double gauge_condition_b = 0;  // residual of the b-slot gauge condition
  double gauge_condition_a = 0;  // residual of the a-slot gauge condition
  double phat_star_norm = 0;     // |P-hat* (v - P y)|
};

// Solves P* P y = P* v mode by mode and returns v - P y (constant-mode
// kernel quotiented); throws on a singular nonzero mode.
TangentW gauge_fix(const FlatBackground& bg, const TangentW& v,
                   GaugeFixReport* report = nullptr);

// --- fibre variations --------------------------------------------------------

struct FibreVariation {
  TrigForm omega_dot;  // real (1,1)
  TrigForm b_dot;      // real 2-form
  TrigForm s, s_prime; // sections of ad P_h
};

struct VariationClasses {
  CohomClass adot_re, adot_im;  // Aeppli (1,1)
  CohomClass bdot_re, bdot_im;  // Bott-Chern (n-1,n-1)
};

// Gauge-fixed fibre variation -> (complexified Aeppli, Bott-Chern)
// variations via the canonical representatives.
VariationClasses variation_classes(const FlatBackground& bg,
                                   const FibreVariation& v,
                                   double pre_tol = 1e-8);

// Residuals of the gauge-fixed fibre system for the input check.
double fibre_system_residual(const FlatBackground& bg,
                             const FibreVariation& v);

}  // namespace stralg
