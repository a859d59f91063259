#include "stralg/vector_field.hpp"

namespace stralg {

VectorField VectorField::coordinate_real(TorusFrame f, int j) {
  VectorField v(f);
  int n = f.n;
  // d/dx^j = d/dz^j + d/dzbar^j ; d/dx^{n+j} = i d/dz^j - i d/dzbar^j
  if (j < n) {
    v[j] = TrigForm::constant(f, cplx(1.0, 0.0));
    v[n + j] = TrigForm::constant(f, cplx(1.0, 0.0));
  } else {
    v[j - n] = TrigForm::constant(f, cplx(0.0, 1.0));
    v[j] = TrigForm::constant(f, cplx(0.0, -1.0));
  }
  return v;
}

TrigForm coeff_derivative(const TrigForm& f, int a) {
  int n = f.frame().n;
  TrigForm r(f.frame(), f.degree(), f.msize());
  r.set_approximate(f.approximate());
  for (auto& [b, mm] : f.components()) {
    for (auto& [k, v] : mm) {
      int j = a < n ? a : a - n;
      cplx factor = a < n ? cplx(k[n + j] * 0.5, k[j] * 0.5)
                          : cplx(-k[n + j] * 0.5, k[j] * 0.5);
      if (factor == 0.0) continue;
      r.add_term(b, k, Mat(factor * v));
    }
  }
  return r;
}

TrigForm contract(const VectorField& v, const TrigForm& alpha) {
  if (v.frame() != alpha.frame())
    throw FrameMismatch("contract: frame mismatch");
  if (alpha.degree() == 0)
    return TrigForm::zero(alpha.frame(), 0, alpha.msize());
  TrigForm r(alpha.frame(), alpha.degree() - 1, alpha.msize());
  r.set_approximate(alpha.approximate());
  Blade reduced;
  for (auto& [b, mm] : alpha.components()) {
    for (int a : b) {
      if (v[a].empty()) continue;
      int sign = remove_sign(b, a, reduced);
      TrigForm part(alpha.frame(), alpha.degree() - 1, alpha.msize());
      for (auto& [k, val] : mm) part.add_term(reduced, k, Mat(double(sign) * val));
      r += wedge(v[a], part);
    }
  }
  return r;
}

TrigForm apply_vf(const VectorField& v, const TrigForm& f) {
  TrigForm r(f.frame(), f.degree(), f.msize());
  for (int a = 0; a < v.dim(); ++a) {
    if (v[a].empty()) continue;
    r += wedge(v[a], coeff_derivative(f, a));
  }
  return r;
}

VectorField vf_bracket(const VectorField& v, const VectorField& w) {
  VectorField r(v.frame());
  for (int a = 0; a < v.dim(); ++a)
    r[a] = apply_vf(v, w[a]) - apply_vf(w, v[a]);
  return r;
}

TrigForm lie_derivative(const VectorField& v, const TrigForm& alpha) {
  TrigForm r = contract(v, exterior_d(alpha));
  if (alpha.degree() > 0) r += exterior_d(contract(v, alpha));
  return r;
}

double norm_max(const VectorField& v) {
  double m = 0.0;
  for (int a = 0; a < v.dim(); ++a) m = std::max(m, norm_max(v[a]));
  return m;
}

}  // namespace stralg
