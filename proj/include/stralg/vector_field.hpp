#pragma once

#include "stralg/trigform.hpp"

namespace stralg {

// Complex vector field on the torus in the flat complex frame:
// V = sum_j V^j d/dz^j + V^{n+j} d/dzbar^j, each component a scalar
// trig-poly 0-form. Contraction against complex-basis blades is then
// plain blade arithmetic.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(TorusFrame f)
      : frame_(f), comp_(f.dim(), TrigForm(f, 0, 1)) {}

  const TorusFrame& frame() const { return frame_; }
  TrigForm& operator[](int a) { return comp_[a]; }
  const TrigForm& operator[](int a) const { return comp_[a]; }
  int dim() const { return frame_.dim(); }

  // Constant coordinate field d/dx^j expressed in the complex frame.
  static VectorField coordinate_real(TorusFrame f, int j);

  VectorField& operator+=(const VectorField& o) {
    for (int a = 0; a < dim(); ++a) comp_[a] += o.comp_[a];
    return *this;
  }
  VectorField& operator*=(cplx s) {
    for (auto& c : comp_) c *= s;
    return *this;
  }

 private:
  TorusFrame frame_;
  std::vector<TrigForm> comp_;
};

inline VectorField operator*(cplx s, VectorField v) {
  v *= s;
  return v;
}
inline VectorField operator+(VectorField a, const VectorField& b) {
  return a += b;
}

// Derivative of the coefficients along complex direction a
// (a < n: d/dz^{a+1}, else d/dzbar^{a-n+1}); no blade change.
TrigForm coeff_derivative(const TrigForm& f, int a);

// Interior product i_V alpha.
TrigForm contract(const VectorField& v, const TrigForm& alpha);
// V acting on a scalar or matrix 0-form.
TrigForm apply_vf(const VectorField& v, const TrigForm& f);
// Lie bracket of vector fields (flat frame, component-wise).
VectorField vf_bracket(const VectorField& v, const VectorField& w);
// Cartan formula L_V = i_V d + d i_V.
TrigForm lie_derivative(const VectorField& v, const TrigForm& alpha);

double norm_max(const VectorField& v);

}  // namespace stralg
