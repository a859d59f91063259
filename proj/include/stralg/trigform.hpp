#pragma once

#include <map>
#include <optional>

#include "stralg/core.hpp"

namespace stralg {

using ModeMap = std::map<Mode, Mat>;

// Matrix-valued differential form with trigonometric-polynomial coefficients
// on a flat torus. Stored per blade of the complex covector basis
// (dz^1..dz^n, dzbar^1..dzbar^n), per Fourier mode. m = 1 encodes scalar
// forms. All operations are exact in the coefficients.
class TrigForm {
 public:
  TrigForm() = default;
  TrigForm(TorusFrame f, int degree, int m = 1)
      : frame_(f), degree_(degree), msize_(m) {}

  static TrigForm zero(TorusFrame f, int degree, int m = 1) {
    return TrigForm(f, degree, m);
  }
  // Constant 0-form with the given matrix value.
  static TrigForm constant(TorusFrame f, const Mat& value) {
    TrigForm r(f, 0, static_cast<int>(value.rows()));
    r.add_term({}, Mode(f.dim(), 0), value);
    return r;
  }
  static TrigForm constant(TorusFrame f, cplx value) {
    Mat v(1, 1);
    v(0, 0) = value;
    return constant(f, v);
  }

  const TorusFrame& frame() const { return frame_; }
  int degree() const { return degree_; }
  int msize() const { return msize_; }
  bool approximate() const { return approximate_; }
  void set_approximate(bool a) { approximate_ = a; }
  bool empty() const { return comps_.empty(); }
  const std::map<Blade, ModeMap>& components() const { return comps_; }

  std::size_t support_size() const {
    std::size_t s = 0;
    for (auto& [b, mm] : comps_) s = std::max(s, mm.size());
    return s;
  }
  int max_abs_mode() const {
    int m = 0;
    for (auto& [b, mm] : comps_)
      for (auto& [k, v] : mm)
        for (int c : k) m = std::max(m, std::abs(c));
    return m;
  }

  void add_term(const Blade& blade, const Mode& k, const Mat& value) {
    if (static_cast<int>(blade.size()) != degree_)
      throw DegreeError("add_term: blade size does not match form degree");
    if (static_cast<int>(k.size()) != frame_.dim())
      throw Error("add_term: mode length mismatch");
    if (value.rows() != msize_ || value.cols() != msize_)
      throw Error("add_term: matrix size mismatch");
    auto& mm = comps_[blade];
    auto it = mm.find(k);
    if (it == mm.end()) {
      if (value.cwiseAbs().maxCoeff() > 0.0) mm.emplace(k, value);
    } else {
      it->second += value;
      if (it->second.cwiseAbs().maxCoeff() == 0.0) mm.erase(it);
    }
    if (mm.empty()) comps_.erase(blade);
    if (mm.size() > frame_.mode_cap)
      throw SupportOverflow("Fourier support exceeded the configured cap (" +
                            std::to_string(frame_.mode_cap) + " modes)");
  }
  void add_term(const Blade& blade, const Mode& k, cplx value) {
    Mat v(1, 1);
    v(0, 0) = value;
    add_term(blade, k, v);
  }

  void prune(double tol = 0.0) {
    for (auto bit = comps_.begin(); bit != comps_.end();) {
      for (auto it = bit->second.begin(); it != bit->second.end();) {
        if (it->second.cwiseAbs().maxCoeff() <= tol)
          it = bit->second.erase(it);
        else
          ++it;
      }
      if (bit->second.empty())
        bit = comps_.erase(bit);
      else
        ++bit;
    }
  }

  TrigForm& operator+=(const TrigForm& o) {
    check_compatible(o);
    for (auto& [b, mm] : o.comps_)
      for (auto& [k, v] : mm) add_term(b, k, v);
    approximate_ = approximate_ || o.approximate_;
    return *this;
  }
  TrigForm& operator-=(const TrigForm& o) {
    check_compatible(o);
    for (auto& [b, mm] : o.comps_)
      for (auto& [k, v] : mm) add_term(b, k, Mat(-v));
    approximate_ = approximate_ || o.approximate_;
    return *this;
  }
  TrigForm& operator*=(cplx s) {
    for (auto& [b, mm] : comps_)
      for (auto& [k, v] : mm) v *= s;
    if (s == 0.0) comps_.clear();
    return *this;
  }

 private:
  void check_compatible(const TrigForm& o) const {
    if (frame_ != o.frame_) throw FrameMismatch("TrigForm frame mismatch");
    if (degree_ != o.degree_) throw DegreeError("TrigForm degree mismatch");
    if (msize_ != o.msize_) throw Error("TrigForm matrix size mismatch");
  }

  TorusFrame frame_;
  int degree_ = 0;
  int msize_ = 1;
  bool approximate_ = false;
  std::map<Blade, ModeMap> comps_;
};

inline TrigForm operator+(TrigForm a, const TrigForm& b) { return a += b; }
inline TrigForm operator-(TrigForm a, const TrigForm& b) { return a -= b; }
inline TrigForm operator*(cplx s, TrigForm a) { return a *= s; }
inline TrigForm operator*(TrigForm a, cplx s) { return a *= s; }
inline TrigForm operator-(TrigForm a) { return a *= -1.0; }

// Graded product with matrix multiplication on values. Scalar (m = 1)
// coefficients broadcast against matrix-valued ones.
TrigForm wedge(const TrigForm& a, const TrigForm& b);
// <a ^ b> with the bilinear form applied block-wise to the values.
TrigForm wedge_pair(const TrigForm& a, const TrigForm& b,
                    const PairingSpec& p);
// Graded commutator [a ^ b] = a^b - (-1)^{|a||b|} b^a.
TrigForm wedge_comm(const TrigForm& a, const TrigForm& b);

TrigForm del(const TrigForm& a);     // Dolbeault del
TrigForm delbar(const TrigForm& a);  // Dolbeault delbar
TrigForm exterior_d(const TrigForm& a);
TrigForm dc(const TrigForm& a);  // d^c = i(delbar - del)

// Projection onto bidegree (p,q); sums of projections over p+q=deg recover
// the form exactly.
TrigForm proj_pq(const TrigForm& a, int p, int q);
// J acts on a (p,q)-form as multiplication by i^{q-p}.
TrigForm j_form(const TrigForm& a);

// Conjugation of complex differential forms (entrywise on matrix values).
TrigForm conj_form(const TrigForm& a);
// Real structure singling out k-valued forms in the compact form:
// form conjugation combined with A -> -A^dagger on values.
TrigForm compact_conj(const TrigForm& a);

inline TrigForm re_part(const TrigForm& a) {
  return 0.5 * (a + conj_form(a));
}
inline TrigForm im_part(const TrigForm& a) {
  return cplx(0.0, -0.5) * (a - conj_form(a));
}

double norm_max(const TrigForm& a);
bool is_real(const TrigForm& a, double tol = 1e-12);
bool is_compact_real(const TrigForm& a, double tol = 1e-12);

// Integral over the torus of a scalar top-degree form (unit covolume,
// canonical complex orientation).
cplx integrate(const TrigForm& a);
// Value of integrate on the full complex-basis top blade.
cplx top_blade_integral_factor(int n);

// Trace of a degree-0 matrix form against the pairing, entry extraction.
TrigForm pairing_with_scalar(const TrigForm& g_valued, const TrigForm& s,
                             const PairingSpec& p);

// omega0 = (i/2) sum_j dz^j ^ dzbar^j, the standard Kaehler form.
TrigForm standard_kaehler_form(TorusFrame f, double scale = 1.0);
// omega^k / k! computed by repeated wedge.
TrigForm wedge_power_over_factorial(const TrigForm& omega, int k);

// Conversion from the real coordinate basis: a term c * e^{i<k,x>}
// dx^{I} expands into complex-basis blades.
void add_real_basis_term(TrigForm& dst, const Blade& real_blade, const Mode& k,
                         const Mat& value);

}  // namespace stralg
