#include "stralg/gridform.hpp"

#include <fftw3.h>

#include <unsupported/Eigen/MatrixFunctions>

namespace stralg {

namespace {

std::size_t pow_int(int base, int e) {
  std::size_t p = 1;
  for (int i = 0; i < e; ++i) p *= static_cast<std::size_t>(base);
  return p;
}

// In-place DFT over the full 2n-dim lattice. sign = FFTW_BACKWARD maps
// mode coefficients to point values (e^{+i<k,x>} at x = 2 pi j / N).
void run_fft(std::vector<cplx>& data, int N, int dims, int sign) {
  std::vector<int> shape(dims, N);
  fftw_plan plan = fftw_plan_dft(
      dims, shape.data(), reinterpret_cast<fftw_complex*>(data.data()),
      reinterpret_cast<fftw_complex*>(data.data()), sign, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

std::size_t mode_to_index(const Mode& k, int N, int dims) {
  std::size_t idx = 0;
  for (int a = 0; a < dims; ++a) {
    int r = ((k[a] % N) + N) % N;
    idx = idx * static_cast<std::size_t>(N) + static_cast<std::size_t>(r);
  }
  return idx;
}

Mode index_to_mode(std::size_t idx, int N, int dims) {
  Mode k(dims);
  for (int a = dims - 1; a >= 0; --a) {
    int r = static_cast<int>(idx % static_cast<std::size_t>(N));
    idx /= static_cast<std::size_t>(N);
    k[a] = r <= N / 2 ? r : r - N;
  }
  return k;
}

void check_same(const GridForm& a, const GridForm& b, const char* op) {
  if (a.frame() != b.frame()) throw FrameMismatch(std::string(op) + ": frame");
  if (a.resolution() != b.resolution())
    throw Error(std::string(op) + ": grid resolution mismatch");
}

}  // namespace

GridForm GridForm::constant(TorusFrame f, int N, const Mat& value) {
  GridForm r(f, N, 0, static_cast<int>(value.rows()));
  auto& gd = r.component({});
  for (std::size_t p = 0; p < r.npts(); ++p) gd.at(p) = value;
  return r;
}

GridData& GridForm::component(const Blade& b) {
  if (static_cast<int>(b.size()) != degree_)
    throw DegreeError("GridForm::component: blade size mismatch");
  auto it = comps_.find(b);
  if (it == comps_.end()) {
    GridData gd;
    gd.m = msize_;
    gd.v.assign(npts() * msize_ * msize_, cplx(0.0, 0.0));
    it = comps_.emplace(b, std::move(gd)).first;
  }
  return it->second;
}

GridForm& GridForm::operator+=(const GridForm& o) {
  check_same(*this, o, "GridForm +");
  for (auto& [b, gd] : o.comps_) {
    auto& mine = component(b);
    for (std::size_t i = 0; i < gd.v.size(); ++i) mine.v[i] += gd.v[i];
  }
  approximate_ = approximate_ || o.approximate_;
  return *this;
}

GridForm& GridForm::operator-=(const GridForm& o) {
  check_same(*this, o, "GridForm -");
  for (auto& [b, gd] : o.comps_) {
    auto& mine = component(b);
    for (std::size_t i = 0; i < gd.v.size(); ++i) mine.v[i] -= gd.v[i];
  }
  approximate_ = approximate_ || o.approximate_;
  return *this;
}

GridForm& GridForm::operator*=(cplx s) {
  for (auto& [b, gd] : comps_)
    for (auto& x : gd.v) x *= s;
  return *this;
}

GridForm to_grid(const TrigForm& a, int N) {
  GridForm r(a.frame(), N, a.degree(), a.msize());
  r.set_approximate(a.approximate());
  int dims = a.frame().dim();
  int m = a.msize();
  std::size_t npts = pow_int(N, dims);
  std::vector<cplx> scratch;
  for (auto& [b, mm] : a.components()) {
    auto& gd = r.component(b);
    for (int rr = 0; rr < m; ++rr) {
      for (int cc = 0; cc < m; ++cc) {
        scratch.assign(npts, cplx(0.0, 0.0));
        bool any = false;
        for (auto& [k, v] : mm) {
          cplx x = v(rr, cc);
          if (x == 0.0) continue;
          scratch[mode_to_index(k, N, dims)] += x;
          any = true;
        }
        if (!any) continue;
        run_fft(scratch, N, dims, FFTW_BACKWARD);
        for (std::size_t p = 0; p < npts; ++p)
          gd.v[p * m * m + static_cast<std::size_t>(cc) * m + rr] = scratch[p];
      }
    }
  }
  return r;
}

TrigForm from_grid(const GridForm& a, double trim_tol) {
  TrigForm r(a.frame(), a.degree(), a.msize());
  int dims = a.frame().dim();
  int N = a.resolution();
  int m = a.msize();
  std::size_t npts = a.npts();
  std::vector<cplx> scratch(npts);
  // coefficient tensors per mode, assembled entry by entry
  for (auto& [b, gd] : a.components()) {
    std::map<Mode, Mat> coeffs;
    for (int rr = 0; rr < m; ++rr) {
      for (int cc = 0; cc < m; ++cc) {
        for (std::size_t p = 0; p < npts; ++p)
          scratch[p] = gd.v[p * m * m + static_cast<std::size_t>(cc) * m + rr];
        run_fft(scratch, N, dims, FFTW_FORWARD);
        double mx = 0.0;
        for (auto& x : scratch) mx = std::max(mx, std::abs(x));
        double cut = trim_tol * mx;
        for (std::size_t idx = 0; idx < npts; ++idx) {
          cplx c = scratch[idx] / static_cast<double>(npts);
          if (std::abs(c) * static_cast<double>(npts) <= cut) continue;
          Mode k = index_to_mode(idx, N, dims);
          auto it = coeffs.find(k);
          if (it == coeffs.end())
            it = coeffs.emplace(k, Mat::Zero(m, m)).first;
          it->second(rr, cc) = c;
        }
      }
    }
    for (auto& [k, v] : coeffs) r.add_term(b, k, v);
  }
  // exact only if the grid data was band-limited; callers decide, we flag
  r.set_approximate(true);
  return r;
}

namespace {

Mat broadcast_mul_g(const Eigen::Map<const Mat>& a,
                    const Eigen::Map<const Mat>& b) {
  if (a.rows() == 1 && b.rows() > 1) return a(0, 0) * b;
  if (b.rows() == 1 && a.rows() > 1) return b(0, 0) * a;
  return a * b;
}

}  // namespace

GridForm wedge(const GridForm& a, const GridForm& b) {
  check_same(a, b, "wedge");
  int m = std::max(a.msize(), b.msize());
  GridForm r(a.frame(), a.resolution(), a.degree() + b.degree(), m);
  r.set_approximate(a.approximate() || b.approximate());
  std::size_t npts = a.npts();
  Blade merged;
  for (auto& [ba, ga] : a.components()) {
    for (auto& [bb, gb] : b.components()) {
      int sign = merge_sign(ba, bb, merged);
      if (sign == 0) continue;
      auto& gr = r.component(merged);
      for (std::size_t p = 0; p < npts; ++p)
        gr.at(p) += double(sign) * broadcast_mul_g(ga.at(p), gb.at(p));
    }
  }
  return r;
}

GridForm wedge(const TrigForm& a, const GridForm& b) {
  return wedge(to_grid(a, b.resolution()), b);
}
GridForm wedge(const GridForm& a, const TrigForm& b) {
  return wedge(a, to_grid(b, a.resolution()));
}

GridForm wedge_pair(const GridForm& a, const GridForm& b,
                    const PairingSpec& p) {
  check_same(a, b, "wedge_pair");
  GridForm r(a.frame(), a.resolution(), a.degree() + b.degree(), 1);
  r.set_approximate(a.approximate() || b.approximate());
  std::size_t npts = a.npts();
  Blade merged;
  for (auto& [ba, ga] : a.components()) {
    for (auto& [bb, gb] : b.components()) {
      int sign = merge_sign(ba, bb, merged);
      if (sign == 0) continue;
      auto& gr = r.component(merged);
      for (std::size_t pt = 0; pt < npts; ++pt)
        gr.v[pt] += double(sign) * p.pair(ga.at(pt), gb.at(pt));
    }
  }
  return r;
}

GridForm wedge_comm(const GridForm& a, const GridForm& b) {
  GridForm ab = wedge(a, b);
  GridForm ba = wedge(b, a);
  double sgn = (a.degree() * b.degree()) % 2 == 0 ? 1.0 : -1.0;
  return ab - sgn * ba;
}

GridForm proj_pq(const GridForm& a, int p, int q) {
  if (p + q != a.degree()) throw DegreeError("proj_pq: p+q mismatch");
  GridForm r(a.frame(), a.resolution(), a.degree(), a.msize());
  r.set_approximate(a.approximate());
  int n = a.frame().n;
  for (auto& [b, gd] : a.components()) {
    if (blade_p_degree(b, n) != p) continue;
    r.component(b) = gd;
  }
  return r;
}

GridForm j_form(const GridForm& a) {
  GridForm r = a;
  int n = a.frame().n;
  const cplx ipow[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  for (auto& [b, gd] : r.components()) {
    int p = blade_p_degree(b, n);
    int q = a.degree() - p;
    cplx f = ipow[((q - p) % 4 + 4) % 4];
    for (auto& x : gd.v) x *= f;
  }
  return r;
}

namespace {
int conj_blade_g(const Blade& b, int n, Blade& out) {
  out.clear();
  for (int v : b) out.push_back(v < n ? v + n : v - n);
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

GridForm conj_form(const GridForm& a) {
  GridForm r(a.frame(), a.resolution(), a.degree(), a.msize());
  r.set_approximate(a.approximate());
  int n = a.frame().n;
  Blade cb;
  std::size_t npts = a.npts();
  for (auto& [b, gd] : a.components()) {
    int sign = conj_blade_g(b, n, cb);
    auto& gr = r.component(cb);
    for (std::size_t p = 0; p < npts; ++p)
      gr.at(p) += double(sign) * gd.at(p).conjugate();
  }
  return r;
}

GridForm compact_conj(const GridForm& a) {
  GridForm r(a.frame(), a.resolution(), a.degree(), a.msize());
  r.set_approximate(a.approximate());
  int n = a.frame().n;
  Blade cb;
  std::size_t npts = a.npts();
  for (auto& [b, gd] : a.components()) {
    int sign = conj_blade_g(b, n, cb);
    auto& gr = r.component(cb);
    for (std::size_t p = 0; p < npts; ++p)
      gr.at(p) += -double(sign) * gd.at(p).adjoint();
  }
  return r;
}

namespace {

// Spectral coefficient derivative along complex direction a.
GridData spectral_derivative(const GridData& gd, const TorusFrame& f, int N,
                             int a) {
  int dims = f.dim();
  int n = f.n;
  int m = gd.m;
  std::size_t npts = pow_int(N, dims);
  GridData out;
  out.m = m;
  out.v.assign(gd.v.size(), cplx(0.0, 0.0));
  std::vector<cplx> scratch(npts);
  for (int rr = 0; rr < m; ++rr) {
    for (int cc = 0; cc < m; ++cc) {
      for (std::size_t p = 0; p < npts; ++p)
        scratch[p] = gd.v[p * m * m + static_cast<std::size_t>(cc) * m + rr];
      run_fft(scratch, N, dims, FFTW_FORWARD);
      for (std::size_t idx = 0; idx < npts; ++idx) {
        Mode k = index_to_mode(idx, N, dims);
        int j = a < n ? a : a - n;
        // Nyquist bins carry no derivative information
        bool nyq = (N % 2 == 0) && (k[j] == N / 2 || k[n + j] == N / 2);
        cplx factor =
            nyq ? cplx(0.0, 0.0)
                : (a < n ? cplx(k[n + j] * 0.5, k[j] * 0.5)
                         : cplx(-k[n + j] * 0.5, k[j] * 0.5));
        scratch[idx] *= factor / static_cast<double>(npts);
      }
      run_fft(scratch, N, dims, FFTW_BACKWARD);
      for (std::size_t p = 0; p < npts; ++p)
        out.v[p * m * m + static_cast<std::size_t>(cc) * m + rr] = scratch[p];
    }
  }
  return out;
}

GridForm dolbeault_grid(const GridForm& a, int variant) {
  int n = a.frame().n;
  GridForm r(a.frame(), a.resolution(), a.degree() + 1, a.msize());
  r.set_approximate(a.approximate());
  std::size_t npts = a.npts();
  Blade merged;
  for (auto& [b, gd] : a.components()) {
    for (int j = 0; j < n; ++j) {
      int dir = variant == 0 ? j : n + j;
      Blade db{dir};
      int sign = merge_sign(db, b, merged);
      if (sign == 0) continue;
      GridData dd = spectral_derivative(gd, a.frame(), a.resolution(), dir);
      auto& gr = r.component(merged);
      for (std::size_t i = 0; i < dd.v.size(); ++i)
        gr.v[i] += double(sign) * dd.v[i];
    }
  }
  return r;
}

}  // namespace

GridForm del(const GridForm& a) { return dolbeault_grid(a, 0); }
GridForm delbar(const GridForm& a) { return dolbeault_grid(a, 1); }
GridForm exterior_d(const GridForm& a) { return del(a) + delbar(a); }
GridForm dc(const GridForm& a) {
  return cplx(0.0, 1.0) * (delbar(a) - del(a));
}

GridForm matrix_exp(const GridForm& a) {
  if (a.degree() != 0) throw DegreeError("matrix_exp: 0-forms only");
  GridForm r = a;
  r.set_approximate(true);
  r.component({});  // exp(0) = Id: materialize the zero field
  for (auto& [b, gd] : r.components())
    for (std::size_t p = 0; p < a.npts(); ++p) {
      Mat x = gd.at(p);
      gd.at(p) = x.exp();
    }
  return r;
}

GridForm matrix_log_pd(const GridForm& a) {
  if (a.degree() != 0) throw DegreeError("matrix_log_pd: 0-forms only");
  GridForm r = a;
  r.set_approximate(true);
  for (auto& [b, gd] : r.components())
    for (std::size_t p = 0; p < a.npts(); ++p) {
      Eigen::SelfAdjointEigenSolver<Mat> es(gd.at(p));
      if (es.eigenvalues().minCoeff() <= 0.0)
        throw PositivityError("matrix_log_pd: field is not positive-definite");
      Mat d = es.eigenvalues().array().log().matrix().asDiagonal();
      gd.at(p) = es.eigenvectors() * d * es.eigenvectors().adjoint();
    }
  return r;
}

GridForm matrix_sqrt_pd(const GridForm& a) {
  GridForm r = a;
  r.set_approximate(true);
  for (auto& [b, gd] : r.components())
    for (std::size_t p = 0; p < a.npts(); ++p) {
      Eigen::SelfAdjointEigenSolver<Mat> es(gd.at(p));
      if (es.eigenvalues().minCoeff() <= 0.0)
        throw PositivityError("matrix_sqrt_pd: field is not positive-definite");
      Mat d = es.eigenvalues().array().sqrt().matrix().asDiagonal();
      gd.at(p) = es.eigenvectors() * d * es.eigenvectors().adjoint();
    }
  return r;
}

GridForm matrix_inverse(const GridForm& a) {
  GridForm r = a;
  r.set_approximate(true);
  for (auto& [b, gd] : r.components())
    for (std::size_t p = 0; p < a.npts(); ++p) {
      Mat x = gd.at(p);
      gd.at(p) = x.inverse();
    }
  return r;
}

GridForm pointwise_scalar_map(const GridForm& a,
                              const std::function<cplx(cplx)>& fn) {
  GridForm r = a;
  r.set_approximate(true);
  for (auto& [b, gd] : r.components())
    for (auto& x : gd.v) x = fn(x);
  return r;
}

GridForm pointwise_mul(const GridForm& a, const GridForm& b) {
  check_same(a, b, "pointwise_mul");
  if (a.degree() != 0 || b.degree() != 0)
    throw DegreeError("pointwise_mul: 0-forms only");
  return wedge(a, b);
}

double norm_max(const GridForm& a) {
  double m = 0.0;
  for (auto& [b, gd] : a.components())
    for (auto& x : gd.v) m = std::max(m, std::abs(x));
  return m;
}

cplx integrate(const GridForm& a) {
  int n = a.frame().n;
  if (a.degree() != 2 * n)
    throw DegreeError("integrate: form is not top-degree");
  if (a.msize() != 1) throw Error("integrate: form is not scalar-valued");
  Blade top(2 * n);
  for (int i = 0; i < 2 * n; ++i) top[i] = i;
  const GridData* gd = a.find(top);
  if (!gd) return 0.0;
  cplx s = 0.0;
  for (auto& x : gd->v) s += x;
  return s / static_cast<double>(a.npts()) * top_blade_integral_factor(n);
}

cplx integrate_weighted(const TrigForm& a, const GridForm& weight) {
  GridForm ag = to_grid(a, weight.resolution());
  int n = a.frame().n;
  if (a.degree() != 2 * n) throw DegreeError("integrate_weighted: not top");
  Blade top(2 * n);
  for (int i = 0; i < 2 * n; ++i) top[i] = i;
  const GridData* gd = ag.find(top);
  const GridData* w = weight.find({});
  if (!gd || !w) return 0.0;
  cplx s = 0.0;
  for (std::size_t p = 0; p < ag.npts(); ++p) s += gd->v[p] * w->v[p];
  return s / static_cast<double>(ag.npts()) * top_blade_integral_factor(n);
}

GridData hermitian_field(const GridForm& alpha11) {
  int n = alpha11.frame().n;
  if (alpha11.degree() != 2) throw DegreeError("hermitian_field: degree 2");
  if (alpha11.msize() != 1) throw Error("hermitian_field: scalar forms only");
  std::size_t npts = alpha11.npts();
  GridData H;
  H.m = n;
  H.v.assign(npts * n * n, cplx(0.0, 0.0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const GridData* gd = alpha11.find({a, n + b});
      if (!gd) continue;
      // alpha = i H_ab dz^a ^ dzbar^b
      for (std::size_t p = 0; p < npts; ++p)
        H.v[p * n * n + static_cast<std::size_t>(b) * n + a] =
            cplx(0.0, -1.0) * gd->v[p];
    }
  return H;
}

GridForm from_hermitian_field(const TorusFrame& f, int N, const GridData& H) {
  int n = f.n;
  GridForm r(f, N, 2, 1);
  std::size_t npts = r.npts();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto& gd = r.component({a, n + b});
      for (std::size_t p = 0; p < npts; ++p)
        gd.v[p] += cplx(0.0, 1.0) *
                   H.v[p * n * n + static_cast<std::size_t>(b) * n + a];
    }
  return r;
}

double min_eigenvalue(const GridForm& omega11) {
  GridData H = hermitian_field(omega11);
  int n = omega11.frame().n;
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < omega11.npts(); ++p) {
    Eigen::SelfAdjointEigenSolver<Mat> es(H.at(p));
    m = std::min(m, es.eigenvalues().minCoeff());
  }
  return m;
}

void require_positive(const GridForm& omega11, const std::string& what) {
  double m = min_eigenvalue(omega11);
  if (m <= 0.0)
    throw PositivityError(what + ": (1,1)-form is not positive on the grid "
                                 "(min eigenvalue " +
                          std::to_string(m) + ")");
}

GridForm dilaton_function(const GridForm& omega11,
                          const GridForm& mu_density) {
  int n = omega11.frame().n;
  GridData H = hermitian_field(omega11);
  const GridData* mu = mu_density.find({});
  if (!mu) throw Error("dilaton_function: empty volume density");
  GridForm f(omega11.frame(), omega11.resolution(), 0, 1);
  auto& gd = f.component({});
  for (std::size_t p = 0; p < omega11.npts(); ++p) {
    Mat h2 = 2.0 * H.at(p);
    Eigen::SelfAdjointEigenSolver<Mat> es(h2);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw PositivityError(
          "dilaton_function: omega is not a hermitian form at a grid point");
    double det = 1.0;
    for (int i = 0; i < n; ++i) det *= es.eigenvalues()[i];
    double mud = mu->v[p].real();
    if (mud <= 0.0)
      throw PositivityError("dilaton_function: volume density must be > 0");
    gd.v[p] = 0.5 * std::log(det / mud);
  }
  f.set_approximate(true);
  return f;
}

GridForm lambda_contraction(const GridForm& omega11, const GridForm& alpha11) {
  GridData H = hermitian_field(omega11);
  GridData A = hermitian_field(alpha11);
  GridForm r(omega11.frame(), omega11.resolution(), 0, 1);
  auto& gd = r.component({});
  for (std::size_t p = 0; p < omega11.npts(); ++p) {
    Mat h = H.at(p);
    Eigen::LLT<Mat> llt(h);
    if (llt.info() != Eigen::Success)
      throw PositivityError("lambda_contraction: omega not positive");
    gd.v[p] = llt.solve(Mat(A.at(p))).trace();
  }
  r.set_approximate(true);
  return r;
}

GridForm primitive_part(const GridForm& omega11, const GridForm& alpha11) {
  GridForm lam = lambda_contraction(omega11, alpha11);
  int n = omega11.frame().n;
  return alpha11 - (1.0 / n) * wedge(lam, omega11);
}

GridForm inner_product_11(const GridForm& omega11, const GridForm& a,
                          const GridForm& b) {
  GridData H = hermitian_field(omega11);
  GridData A = hermitian_field(a);
  GridData B = hermitian_field(b);
  GridForm r(omega11.frame(), omega11.resolution(), 0, 1);
  auto& gd = r.component({});
  for (std::size_t p = 0; p < omega11.npts(); ++p) {
    Eigen::LLT<Mat> llt(Mat(H.at(p)));
    if (llt.info() != Eigen::Success)
      throw PositivityError("inner_product_11: omega not positive");
    Mat x = llt.solve(Mat(A.at(p)));
    Mat y = llt.solve(Mat(B.at(p)));
    gd.v[p] = (x * y).trace();
  }
  r.set_approximate(true);
  return r;
}

}  // namespace stralg
