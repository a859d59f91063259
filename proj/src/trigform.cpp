#include "stralg/trigform.hpp"

namespace stralg {

namespace {

Mat broadcast_mul(const Mat& a, const Mat& b) {
  if (a.rows() == 1 && a.cols() == 1 && b.rows() > 1) return a(0, 0) * b;
  if (b.rows() == 1 && b.cols() == 1 && a.rows() > 1) return b(0, 0) * a;
  if (a.cols() != b.rows())
    throw Error("wedge: incompatible matrix sizes");
  return a * b;
}

}  // namespace

TrigForm wedge(const TrigForm& a, const TrigForm& b) {
  if (a.frame() != b.frame()) throw FrameMismatch("wedge: frame mismatch");
  int m = std::max(a.msize(), b.msize());
  if (a.msize() != b.msize() && std::min(a.msize(), b.msize()) != 1)
    throw Error("wedge: incompatible matrix sizes");
  TrigForm r(a.frame(), a.degree() + b.degree(), m);
  r.set_approximate(a.approximate() || b.approximate());
  Blade merged;
  for (auto& [ba, mma] : a.components()) {
    for (auto& [bb, mmb] : b.components()) {
      int sign = merge_sign(ba, bb, merged);
      if (sign == 0) continue;
      for (auto& [ka, va] : mma) {
        for (auto& [kb, vb] : mmb) {
          Mode k(ka.size());
          for (std::size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
          r.add_term(merged, k, Mat(double(sign) * broadcast_mul(va, vb)));
        }
      }
    }
  }
  return r;
}

TrigForm wedge_pair(const TrigForm& a, const TrigForm& b,
                    const PairingSpec& p) {
  if (a.frame() != b.frame())
    throw FrameMismatch("wedge_pair: frame mismatch");
  if (a.msize() != p.msize() || b.msize() != p.msize())
    throw Error("wedge_pair: matrix size does not match pairing spec");
  TrigForm r(a.frame(), a.degree() + b.degree(), 1);
  r.set_approximate(a.approximate() || b.approximate());
  Blade merged;
  for (auto& [ba, mma] : a.components()) {
    for (auto& [bb, mmb] : b.components()) {
      int sign = merge_sign(ba, bb, merged);
      if (sign == 0) continue;
      for (auto& [ka, va] : mma) {
        for (auto& [kb, vb] : mmb) {
          Mode k(ka.size());
          for (std::size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
          r.add_term(merged, k, double(sign) * p.pair(va, vb));
        }
      }
    }
  }
  return r;
}

TrigForm wedge_comm(const TrigForm& a, const TrigForm& b) {
  TrigForm ab = wedge(a, b);
  TrigForm ba = wedge(b, a);
  double sgn = (a.degree() * b.degree()) % 2 == 0 ? 1.0 : -1.0;
  return ab - sgn * ba;
}

namespace {

// variant: 0 = del (adds dz^j), 1 = delbar (adds dzbar^j)
TrigForm dolbeault(const TrigForm& a, int variant) {
  int n = a.frame().n;
  TrigForm r(a.frame(), a.degree() + 1, a.msize());
  r.set_approximate(a.approximate());
  Blade merged;
  for (auto& [b, mm] : a.components()) {
    for (auto& [k, v] : mm) {
      for (int j = 0; j < n; ++j) {
        // d/dz^j -> (i k_j + k_{n+j})/2 ; d/dzbar^j -> (i k_j - k_{n+j})/2
        cplx factor = variant == 0
                          ? cplx(k[n + j] * 0.5, k[j] * 0.5)
                          : cplx(-k[n + j] * 0.5, k[j] * 0.5);
        if (factor == 0.0) continue;
        Blade db{variant == 0 ? j : n + j};
        int sign = merge_sign(db, b, merged);
        if (sign == 0) continue;
        r.add_term(merged, k, Mat(double(sign) * factor * v));
      }
    }
  }
  return r;
}

}  // namespace

TrigForm del(const TrigForm& a) { return dolbeault(a, 0); }
TrigForm delbar(const TrigForm& a) { return dolbeault(a, 1); }
TrigForm exterior_d(const TrigForm& a) { return del(a) + delbar(a); }
TrigForm dc(const TrigForm& a) {
  return cplx(0.0, 1.0) * (delbar(a) - del(a));
}

TrigForm proj_pq(const TrigForm& a, int p, int q) {
  if (p + q != a.degree())
    throw DegreeError("proj_pq: p+q does not match degree");
  TrigForm r(a.frame(), a.degree(), a.msize());
  r.set_approximate(a.approximate());
  int n = a.frame().n;
  for (auto& [b, mm] : a.components()) {
    if (blade_p_degree(b, n) != p) continue;
    for (auto& [k, v] : mm) r.add_term(b, k, v);
  }
  return r;
}

TrigForm j_form(const TrigForm& a) {
  TrigForm r(a.frame(), a.degree(), a.msize());
  r.set_approximate(a.approximate());
  int n = a.frame().n;
  const cplx ipow[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  for (auto& [b, mm] : a.components()) {
    int p = blade_p_degree(b, n);
    int q = a.degree() - p;
    cplx f = ipow[((q - p) % 4 + 4) % 4];
    for (auto& [k, v] : mm) r.add_term(b, k, Mat(f * v));
  }
  return r;
}

namespace {

// Maps a sorted complex-basis blade through j <-> j+n and returns the sorted
// image with the permutation sign.
int conj_blade(const Blade& b, int n, Blade& out) {
  out.clear();
  for (int v : b) out.push_back(v < n ? v + n : v - n);
  // bubble-sort sign; blades are tiny
  int sign = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (out[i] > out[j]) {
        std::swap(out[i], out[j]);
        sign = -sign;
      }
  return sign;
}

}  // namespace

TrigForm conj_form(const TrigForm& a) {
  TrigForm r(a.frame(), a.degree(), a.msize());
  r.set_approximate(a.approximate());
  int n = a.frame().n;
  Blade cb;
  for (auto& [b, mm] : a.components()) {
    int sign = conj_blade(b, n, cb);
    for (auto& [k, v] : mm)
      r.add_term(cb, negate(k), Mat(double(sign) * v.conjugate()));
  }
  return r;
}

TrigForm compact_conj(const TrigForm& a) {
  TrigForm r(a.frame(), a.degree(), a.msize());
  r.set_approximate(a.approximate());
  int n = a.frame().n;
  Blade cb;
  for (auto& [b, mm] : a.components()) {
    int sign = conj_blade(b, n, cb);
    for (auto& [k, v] : mm)
      r.add_term(cb, negate(k), Mat(-double(sign) * v.adjoint()));
  }
  return r;
}

double norm_max(const TrigForm& a) {
  double m = 0.0;
  for (auto& [b, mm] : a.components())
    for (auto& [k, v] : mm) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

bool is_real(const TrigForm& a, double tol) {
  return norm_max(a - conj_form(a)) <= tol * (1.0 + norm_max(a));
}

bool is_compact_real(const TrigForm& a, double tol) {
  return norm_max(a - compact_conj(a)) <= tol * (1.0 + norm_max(a));
}

cplx top_blade_integral_factor(int n) {
  // dz^1..dz^n dzbar^1..dzbar^n = (-1)^{n(n-1)/2} (-2i)^n e_1..e_n and the
  // canonical volume e_1..e_n integrates to 1.
  cplx f = (n * (n - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  for (int j = 0; j < n; ++j) f *= cplx(0.0, -2.0);
  return f;
}

cplx integrate(const TrigForm& a) {
  int n = a.frame().n;
  if (a.degree() != 2 * n)
    throw DegreeError("integrate: form is not top-degree");
  if (a.msize() != 1) throw Error("integrate: form is not scalar-valued");
  Blade top(2 * n);
  for (int i = 0; i < 2 * n; ++i) top[i] = i;
  auto bit = a.components().find(top);
  if (bit == a.components().end()) return 0.0;
  Mode zero(a.frame().dim(), 0);
  auto kit = bit->second.find(zero);
  if (kit == bit->second.end()) return 0.0;
  return kit->second(0, 0) * top_blade_integral_factor(n);
}

TrigForm pairing_with_scalar(const TrigForm& g_valued, const TrigForm& s,
                             const PairingSpec& p) {
  return wedge_pair(s, g_valued, p);
}

TrigForm standard_kaehler_form(TorusFrame f, double scale) {
  TrigForm w(f, 2, 1);
  Mode zero(f.dim(), 0);
  for (int j = 0; j < f.n; ++j)
    w.add_term({j, f.n + j}, zero, cplx(0.0, 0.5 * scale));
  return w;
}

TrigForm wedge_power_over_factorial(const TrigForm& omega, int k) {
  TrigForm r = TrigForm::constant(omega.frame(), cplx(1.0, 0.0));
  for (int i = 1; i <= k; ++i) r = (1.0 / i) * wedge(r, omega);
  return r;
}

void add_real_basis_term(TrigForm& dst, const Blade& real_blade, const Mode& k,
                         const Mat& value) {
  int n = dst.frame().n;
  // dx^j = (dz^j + dzbar^j)/2 ; dx^{n+j} = (dz^j - dzbar^j)/(2i)
  std::vector<std::pair<Blade, cplx>> terms{{Blade{}, cplx(1.0, 0.0)}};
  Blade merged;
  for (int idx : real_blade) {
    std::vector<std::pair<Blade, cplx>> next;
    int j = idx < n ? idx : idx - n;
    cplx cz = idx < n ? cplx(0.5, 0.0) : cplx(0.0, -0.5);
    cplx czb = idx < n ? cplx(0.5, 0.0) : cplx(0.0, 0.5);
    for (auto& [b, c] : terms) {
      for (auto [cov, coef] : {std::pair<int, cplx>{j, cz},
                               std::pair<int, cplx>{n + j, czb}}) {
        int sign = merge_sign(b, Blade{cov}, merged);
        if (sign == 0) continue;
        next.emplace_back(merged, c * coef * double(sign));
      }
    }
    terms = std::move(next);
  }
  for (auto& [b, c] : terms) dst.add_term(b, k, Mat(c * value));
}

}  // namespace stralg
