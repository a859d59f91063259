#include "stralg/random_forms.hpp"

namespace stralg {

double FormGen::uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng_);
}

cplx FormGen::scalar() { return cplx(uniform(-1, 1), uniform(-1, 1)); }

Mode FormGen::random_mode(int kmax) {
  std::uniform_int_distribution<int> d(-kmax, kmax);
  Mode k(frame_.dim());
  for (auto& v : k) v = d(rng_);
  return k;
}

Mat FormGen::matrix(int m) {
  Mat a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = scalar();
  return a;
}

Mat FormGen::hermitian(int m) {
  Mat a = matrix(m);
  return 0.5 * (a + a.adjoint());
}

Mat FormGen::anti_hermitian(int m) {
  Mat a = matrix(m);
  return 0.5 * (a - a.adjoint());
}

Mat FormGen::block_diagonal(const PairingSpec& p,
                            const std::function<Mat(int)>& block) {
  int m = p.msize();
  Mat a = Mat::Zero(m, m);
  int off = 0;
  for (int sz : p.blocks) {
    a.block(off, off, sz, sz) = block(sz);
    off += sz;
  }
  return a;
}

namespace {

std::vector<Blade> all_blades(int dim, int degree) {
  std::vector<Blade> out;
  Blade cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == degree) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < dim; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace

TrigForm FormGen::form(int degree, int kmax, int terms, int m) {
  TrigForm r(frame_, degree, m);
  auto blades = all_blades(frame_.dim(), degree);
  std::uniform_int_distribution<std::size_t> bd(0, blades.size() - 1);
  for (int t = 0; t < terms; ++t)
    r.add_term(blades[bd(rng_)], random_mode(kmax), matrix(m));
  return r;
}

TrigForm FormGen::real_form(int degree, int kmax, int terms) {
  TrigForm r = form(degree, kmax, terms, 1);
  return re_part(r);
}

TrigForm FormGen::real_11_form(int kmax, int terms) {
  TrigForm r(frame_, 2, 1);
  int n = frame_.n;
  std::uniform_int_distribution<int> ad(0, n - 1);
  for (int t = 0; t < terms; ++t) {
    int a = ad(rng_), b = ad(rng_);
    r.add_term({a, n + b}, random_mode(kmax), cplx(0, 1) * scalar());
  }
  return re_part(r);
}

TrigForm FormGen::compact_form(int degree, int kmax, int terms,
                               const PairingSpec& p) {
  TrigForm r(frame_, degree, p.msize());
  auto blades = all_blades(frame_.dim(), degree);
  std::uniform_int_distribution<std::size_t> bd(0, blades.size() - 1);
  for (int t = 0; t < terms; ++t) {
    Mat v = block_diagonal(p, [&](int sz) { return matrix(sz); });
    r.add_term(blades[bd(rng_)], random_mode(kmax), v);
  }
  // project onto the compact real structure
  return 0.5 * (r + compact_conj(r));
}

TrigForm FormGen::algebra_form(int degree, int kmax, int terms,
                               const PairingSpec& p) {
  TrigForm r(frame_, degree, p.msize());
  auto blades = all_blades(frame_.dim(), degree);
  std::uniform_int_distribution<std::size_t> bd(0, blades.size() - 1);
  for (int t = 0; t < terms; ++t) {
    Mat v = block_diagonal(p, [&](int sz) { return matrix(sz); });
    r.add_term(blades[bd(rng_)], random_mode(kmax), v);
  }
  return r;
}

VectorField FormGen::vector_field(int kmax, int terms) {
  VectorField v(frame_);
  std::uniform_int_distribution<int> ad(0, frame_.dim() - 1);
  for (int t = 0; t < terms; ++t) {
    int a = ad(rng_);
    TrigForm c(frame_, 0, 1);
    c.add_term({}, random_mode(kmax), scalar());
    v[a] += c;
  }
  return v;
}

}  // namespace stralg
