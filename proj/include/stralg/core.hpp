#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace stralg {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

constexpr double kPi = 3.14159265358979323846;

// Tolerance ladder shared across the library: exact trig-poly identities,
// grid/gauge identities, quadrature identities.
constexpr double kTolExact = 1e-9;
constexpr double kTolGrid = 1e-8;
constexpr double kTolQuad = 1e-6;

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};
struct FrameMismatch : Error {
  explicit FrameMismatch(const std::string& msg) : Error(msg) {}
};
struct SupportOverflow : Error {
  explicit SupportOverflow(const std::string& msg) : Error(msg) {}
};
struct PositivityError : Error {
  explicit PositivityError(const std::string& msg) : Error(msg) {}
};
struct ConstraintViolation : Error {
  explicit ConstraintViolation(const std::string& msg) : Error(msg) {}
};
struct DegreeError : Error {
  explicit DegreeError(const std::string& msg) : Error(msg) {}
};

// Flat complex torus of complex dimension n. Real coordinates x^1..x^{2n}
// with dz^j = dx^j + i dx^{n+j}; modes are e^{i<k,x>}, k in Z^{2n}.
// Integration is normalized to unit covolume (the constant Fourier mode),
// oriented so that the standard Kaehler volume omega0^n/n! integrates to +1.
struct TorusFrame {
  int n = 1;
  std::size_t mode_cap = 100000;  // max Fourier support per coefficient

  int dim() const { return 2 * n; }
  bool operator==(const TorusFrame& o) const { return n == o.n; }
  bool operator!=(const TorusFrame& o) const { return n != o.n; }
};

inline int default_grid_resolution(int n) { return n <= 2 ? 16 : 8; }

// Covector basis indices 0..2n-1: j in [0,n) is dz^{j+1}, j in [n,2n) is
// dzbar^{j-n+1}. A blade is a strictly increasing index list.
using Blade = std::vector<int>;
using Mode = std::vector<int>;

inline bool is_dz(int idx, int n) { return idx < n; }

// Sign of merging two disjoint sorted blades; 0 if they intersect.
inline int merge_sign(const Blade& a, const Blade& b, Blade& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  int swaps = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else {
      swaps += static_cast<int>(a.size() - i);
      out.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return (swaps % 2 == 0) ? 1 : -1;
}

// Removes index `idx` from blade; sign (-1)^position, 0 if absent.
inline int remove_sign(const Blade& b, int idx, Blade& out) {
  out.clear();
  int pos = -1;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] == idx) {
      pos = static_cast<int>(i);
    } else {
      out.push_back(b[i]);
    }
  }
  if (pos < 0) return 0;
  return (pos % 2 == 0) ? 1 : -1;
}

inline int blade_p_degree(const Blade& b, int n) {
  int p = 0;
  for (int v : b)
    if (v < n) ++p;
  return p;
}

inline Mode negate(const Mode& k) {
  Mode r(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) r[i] = -k[i];
  return r;
}

inline bool is_zero_mode(const Mode& k) {
  for (int v : k)
    if (v != 0) return false;
  return true;
}

// Bi-invariant symmetric bilinear form on block-diagonal matrix algebras:
// <a,b> = sum_i c_i tr(a_i b_i) over the diagonal blocks.
struct PairingSpec {
  std::vector<int> blocks{1};
  std::vector<double> weights{1.0};

  int msize() const {
    int m = 0;
    for (int b : blocks) m += b;
    return m;
  }
  cplx pair(const Mat& a, const Mat& b) const {
    cplx s = 0.0;
    int off = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      int sz = blocks[i];
      s += weights[i] *
           (a.block(off, off, sz, sz) * b.block(off, off, sz, sz)).trace();
      off += sz;
    }
    return s;
  }
  // Signed two-block form -eps tr_0 + eps tr_1 (the default used throughout).
  static PairingSpec signed_two_block(int m0, int m1, double eps = 1.0) {
    PairingSpec p;
    p.blocks = {m0, m1};
    p.weights = {-eps, eps};
    return p;
  }
  static PairingSpec trace(int m, double w = 1.0) {
    PairingSpec p;
    p.blocks = {m};
    p.weights = {w};
    return p;
  }
};

}  // namespace stralg
