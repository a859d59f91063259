#pragma once

#include <functional>
#include <map>

#include "stralg/trigform.hpp"

namespace stralg {

// Dense matrix field over the regular lattice: Npts * m * m complex values,
// point-major, row-major over the 2n axes (last axis fastest).
struct GridData {
  int m = 1;
  std::vector<cplx> v;

  Eigen::Map<Mat> at(std::size_t pt) {
    return Eigen::Map<Mat>(v.data() + pt * m * m, m, m);
  }
  Eigen::Map<const Mat> at(std::size_t pt) const {
    return Eigen::Map<const Mat>(v.data() + pt * m * m, m, m);
  }
};

// Lattice-sampled differential form; the evaluation layer for nonlinear
// pointwise operations (log, inverse, exp, norms). TrigForm -> GridForm
// sampling is exact at the lattice points; the way back is exact when
// N > 2 max|k| (Nyquist).
class GridForm {
 public:
  GridForm() = default;
  GridForm(TorusFrame f, int N, int degree, int m = 1)
      : frame_(f), N_(N), degree_(degree), msize_(m) {}

  static GridForm zero(TorusFrame f, int N, int degree, int m = 1) {
    return GridForm(f, N, degree, m);
  }
  static GridForm constant(TorusFrame f, int N, const Mat& value);

  const TorusFrame& frame() const { return frame_; }
  int resolution() const { return N_; }
  int degree() const { return degree_; }
  int msize() const { return msize_; }
  bool approximate() const { return approximate_; }
  void set_approximate(bool a) { approximate_ = a; }
  bool empty() const { return comps_.empty(); }

  std::size_t npts() const {
    std::size_t p = 1;
    for (int i = 0; i < frame_.dim(); ++i) p *= static_cast<std::size_t>(N_);
    return p;
  }

  std::map<Blade, GridData>& components() { return comps_; }
  const std::map<Blade, GridData>& components() const { return comps_; }

  GridData& component(const Blade& b);
  const GridData* find(const Blade& b) const {
    auto it = comps_.find(b);
    return it == comps_.end() ? nullptr : &it->second;
  }

  GridForm& operator+=(const GridForm& o);
  GridForm& operator-=(const GridForm& o);
  GridForm& operator*=(cplx s);

 private:
  TorusFrame frame_;
  int N_ = 0;
  int degree_ = 0;
  int msize_ = 1;
  bool approximate_ = false;
  std::map<Blade, GridData> comps_;
};

inline GridForm operator+(GridForm a, const GridForm& b) { return a += b; }
inline GridForm operator-(GridForm a, const GridForm& b) { return a -= b; }
inline GridForm operator*(cplx s, GridForm a) { return a *= s; }
inline GridForm operator-(GridForm a) { return a *= -1.0; }

// --- transforms -----------------------------------------------------------

GridForm to_grid(const TrigForm& a, int N);
// Forward transform; coefficients below trim_tol * max are dropped. The
// result is flagged approximate unless the input was Nyquist-clean.
TrigForm from_grid(const GridForm& a, double trim_tol = 1e-13);

// --- algebra (pointwise) ---------------------------------------------------

GridForm wedge(const GridForm& a, const GridForm& b);
GridForm wedge(const TrigForm& a, const GridForm& b);
GridForm wedge(const GridForm& a, const TrigForm& b);
GridForm wedge_pair(const GridForm& a, const GridForm& b,
                    const PairingSpec& p);
GridForm wedge_comm(const GridForm& a, const GridForm& b);
GridForm proj_pq(const GridForm& a, int p, int q);
GridForm j_form(const GridForm& a);
GridForm conj_form(const GridForm& a);
GridForm compact_conj(const GridForm& a);
inline GridForm re_part(const GridForm& a) {
  return 0.5 * (a + conj_form(a));
}

// --- calculus (spectral derivatives) ---------------------------------------

GridForm del(const GridForm& a);
GridForm delbar(const GridForm& a);
GridForm exterior_d(const GridForm& a);
GridForm dc(const GridForm& a);

// --- pointwise nonlinear ----------------------------------------------------

// 0-form helpers; all flag the result approximate.
GridForm matrix_exp(const GridForm& a);
// Principal log of a pointwise positive-definite Hermitian field.
GridForm matrix_log_pd(const GridForm& a);
GridForm matrix_sqrt_pd(const GridForm& a);
GridForm matrix_inverse(const GridForm& a);
GridForm pointwise_scalar_map(const GridForm& a,
                              const std::function<cplx(cplx)>& fn);
GridForm pointwise_mul(const GridForm& a, const GridForm& b);  // 0-forms

double norm_max(const GridForm& a);
cplx integrate(const GridForm& a);

// Mean over the lattice of (top coefficient of a) * weight; `a` exact
// trig data, weight a scalar grid 0-form.
cplx integrate_weighted(const TrigForm& a, const GridForm& weight);

// --- hermitian (1,1) utilities ---------------------------------------------

// A real (1,1)-form alpha = i sum H_ab dz^a ^ dzbar^b; extracts the n x n
// field H (Hermitian when alpha is real).
GridData hermitian_field(const GridForm& alpha11);
GridForm from_hermitian_field(const TorusFrame& f, int N, const GridData& H);

// Pointwise positivity of a real (1,1)-form (H > 0); returns min eigenvalue.
double min_eigenvalue(const GridForm& omega11);
void require_positive(const GridForm& omega11, const std::string& what);

// Dilaton function f with omega^n/n! = e^{2f} mu; mu given as density
// relative to the canonical volume e_1..e_n (standard choice = 1,
// holomorphic choice = 2^n). Errors on non-positivity.
GridForm dilaton_function(const GridForm& omega11, const GridForm& mu_density);
// Trace Lambda_omega alpha = tr(H^-1 A) and primitive part alpha_0.
GridForm lambda_contraction(const GridForm& omega11, const GridForm& alpha11);
GridForm primitive_part(const GridForm& omega11, const GridForm& alpha11);
// Pointwise inner product of real (1,1)-forms: tr(H^-1 A H^-1 B).
GridForm inner_product_11(const GridForm& omega11, const GridForm& a,
                          const GridForm& b);

}  // namespace stralg
