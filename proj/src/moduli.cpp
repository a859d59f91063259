#include "stralg/moduli.hpp"

#include <set>

namespace stralg {

// --- intersection ring -------------------------------------------------------

double IntersectionRing::cubic(const Eigen::VectorXd& a,
                               const Eigen::VectorXd& b,
                               const Eigen::VectorXd& c) const {
  double s = 0.0;
  for (int i = 0; i < h11; ++i)
    for (int j = 0; j < h11; ++j)
      for (int k = 0; k < h11; ++k) s += get(i, j, k) * a[i] * b[j] * c[k];
  return s;
}

IntersectionRing IntersectionRing::from_entries(
    int h11, const std::vector<std::array<double, 4>>& entries,
    double vol_mu) {
  IntersectionRing r;
  r.h11 = h11;
  r.vol_mu = vol_mu;
  r.kappa.assign(static_cast<std::size_t>(h11) * h11 * h11, 0.0);
  for (auto& e : entries) {
    int i = static_cast<int>(e[0]), j = static_cast<int>(e[1]),
        k = static_cast<int>(e[2]);
    double v = e[3];
    int idx[3] = {i, j, k};
    std::sort(idx, idx + 3);
    // write all distinct permutations
    do {
      r.at(idx[0], idx[1], idx[2]) = v;
    } while (std::next_permutation(idx, idx + 3));
  }
  return r;
}

IntersectionRing IntersectionRing::quintic(double vol_mu) {
  return from_entries(1, {{0, 0, 0, 5.0}}, vol_mu);
}

IntersectionRing IntersectionRing::bicubic(double vol_mu) {
  return from_entries(2, {{0, 0, 1, 3.0}, {0, 1, 1, 3.0}}, vol_mu);
}

namespace {

void require_cone(const IntersectionRing& ring, const Eigen::VectorXd& t,
                  double& V) {
  V = ring.cubic(t, t, t);
  if (V <= 0.0)
    throw PositivityError(
        "intersection ring: (Re a)^3 <= 0, point is outside the cone");
}

}  // namespace

double potential_K(const IntersectionRing& ring, const Eigen::VectorXd& re_a,
                   double ell) {
  double V;
  require_cone(ring, re_a, V);
  return -(2.0 - ell) / 2.0 * std::log(V / 6.0) -
         ell / 2.0 * std::log(ring.vol_mu);
}

double ring_m_ell(const IntersectionRing& ring, const Eigen::VectorXd& re_a,
                  double ell) {
  double V;
  require_cone(ring, re_a, V);
  return std::pow(V / (6.0 * ring.vol_mu), (2.0 - ell) / 2.0) * ring.vol_mu;
}

double cone_metric_bilinear(const IntersectionRing& ring,
                            const Eigen::VectorXd& t, double ell,
                            const ComplexifiedClass& v1,
                            const ComplexifiedClass& v2) {
  double V;
  require_cone(ring, t, V);
  auto prim = [&](const Eigen::VectorXd& z) {
    double lam = ring.cubic(z, t, t) / V;
    return Eigen::VectorXd(z - lam * t);
  };
  auto term = [&](const Eigen::VectorXd& z, const Eigen::VectorXd& w) {
    Eigen::VectorXd z0 = prim(z), w0 = prim(w);
    double lefschetz = -3.0 * (2.0 - ell) / V * ring.cubic(z0, w0, t);
    double trace = 3.0 * (2.0 - ell) / (2.0 * V * V) * ring.cubic(z, t, t) *
                   ring.cubic(w, t, t);
    return lefschetz + trace;
  };
  return term(v1.re, v2.re) + term(v1.im, v2.im);
}

double cone_metric(const IntersectionRing& ring, const Eigen::VectorXd& re_a,
                   double ell, const ComplexifiedClass& adot) {
  return cone_metric_bilinear(ring, re_a, ell, adot, adot);
}

Eigen::MatrixXd cone_metric_matrix(const IntersectionRing& ring,
                                   const Eigen::VectorXd& re_a, double ell) {
  int h = ring.h11;
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2 * h, 2 * h);
  for (int i = 0; i < 2 * h; ++i) {
    for (int j = 0; j < 2 * h; ++j) {
      ComplexifiedClass vi{Eigen::VectorXd::Zero(h), Eigen::VectorXd::Zero(h)};
      ComplexifiedClass vj{Eigen::VectorXd::Zero(h), Eigen::VectorXd::Zero(h)};
      if (i < h)
        vi.re[i] = 1.0;
      else
        vi.im[i - h] = 1.0;
      if (j < h)
        vj.re[j] = 1.0;
      else
        vj.im[j - h] = 1.0;
      G(i, j) = cone_metric_bilinear(ring, re_a, ell, vi, vj);
    }
  }
  return G;
}

double fibre_metric(const CohomClass& adot_re, const CohomClass& adot_im,
                    const CohomClass& bdot_re, const CohomClass& bdot_im,
                    const CohomClass& b_class, double M, double ell) {
  if (ell == 2.0) throw Error("fibre_metric: ell = 2 excluded");
  if (M <= 0.0) throw Error("fibre_metric: M_ell must be positive");
  double c = (2.0 - ell) / (2.0 * M);
  double ra_b = duality_pairing(adot_re, b_class).real();
  double ia_b = duality_pairing(adot_im, b_class).real();
  double ra_rb = duality_pairing(adot_re, bdot_re).real();
  double ia_ib = duality_pairing(adot_im, bdot_im).real();
  return c * (c * ra_b * ra_b - ra_rb + c * ia_b * ia_b - ia_ib);
}

double conjecture_margin(const CohomClass& adot_re, const CohomClass& bdot_re,
                         const CohomClass& b_class, double M1) {
  double ab = duality_pairing(adot_re, b_class).real();
  double lhs = duality_pairing(adot_re, bdot_re).real();
  return ab * ab / (2.0 * M1) - lhs;
}

double conjecture_margin_ring(const IntersectionRing& ring,
                              const Eigen::VectorXd& re_a,
                              const Eigen::VectorXd& re_adot) {
  double M1 = ring_m_ell(ring, re_a, 1.0);
  ComplexifiedClass v{re_adot, Eigen::VectorXd::Zero(ring.h11)};
  return 2.0 * M1 * cone_metric(ring, re_a, 1.0, v);
}

CohomClass futaki(const TrigForm& s, const Connection& theta_h, double tol) {
  TrigForm dbar_s = delbar(s) + wedge_comm(proj_pq(theta_h.theta, 0, 1), s);
  if (norm_max(dbar_s) > tol * (1.0 + norm_max(s)))
    throw ConstraintViolation(
        "futaki: section is not holomorphic (delbar^h s residual " +
        std::to_string(norm_max(dbar_s)) + ")");
  TrigForm F11 = proj_pq(curvature(theta_h), 1, 1);
  return reduce_class(wedge_pair(s, F11, theta_h.pairing),
                      CohomFlavor::Aeppli, 1e-9);
}

int deformation_dimension(int h1_end) {
  if (h1_end < 0) throw Error("deformation_dimension: h1 must be >= 0");
  // two bundle deformations plus (ell, epsilon)
  return 2 * h1_end + 2;
}

// --- flat-background operators -----------------------------------------------

KAlgebra KAlgebra::u1() {
  KAlgebra k;
  k.pairing = PairingSpec::trace(1, -1.0);
  Mat b(1, 1);
  b(0, 0) = cplx(0, 1);
  k.basis = {b};
  return k;
}

KAlgebra KAlgebra::su2() {
  KAlgebra k;
  k.pairing = PairingSpec::trace(2, -1.0);
  Mat s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, cplx(0, -1), cplx(0, 1), 0;
  s3 << 1, 0, 0, -1;
  k.basis = {cplx(0, 1) * s1, cplx(0, 1) * s2, cplx(0, 1) * s3};
  return k;
}

namespace {

TrigForm wpow(const TrigForm& w, int k) {
  TrigForm r = TrigForm::constant(w.frame(), cplx(1.0, 0.0));
  for (int i = 0; i < k; ++i) r = wedge(r, w);
  return r;
}

Mat const_hermitian(const TrigForm& omega_const) {
  int n = omega_const.frame().n;
  Mat H = Mat::Zero(n, n);
  Mode zero(omega_const.frame().dim(), 0);
  for (auto& [b, mm] : omega_const.components()) {
    auto it = mm.find(zero);
    if (it == mm.end()) continue;
    int a = b[0], bb = b[1] - n;
    H(a, bb) = cplx(0, -1) * it->second(0, 0);
  }
  return H;
}

// top-blade mode map of a (possibly matrix-valued) 2n-form
const ModeMap* top_component(const TrigForm& T) {
  int n = T.frame().n;
  Blade top(2 * n);
  for (int i = 0; i < 2 * n; ++i) top[i] = i;
  auto it = T.components().find(top);
  return it == T.components().end() ? nullptr : &it->second;
}

}  // namespace

FlatBackground make_flat_background(const TrigForm& omega_const, double ell,
                                    const KAlgebra& alg, VolumeKind mu) {
  if (omega_const.max_abs_mode() != 0)
    throw Error("make_flat_background: omega must be constant");
  if (ell == 2.0) throw Error("make_flat_background: ell = 2 excluded");
  FlatBackground bg;
  bg.frame = omega_const.frame();
  bg.omega = omega_const;
  bg.ell = ell;
  bg.alg = alg;
  int n = bg.frame.n;
  Mat H = const_hermitian(omega_const);
  Eigen::SelfAdjointEigenSolver<Mat> es(2.0 * H);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw PositivityError("make_flat_background: omega not positive");
  double det = 1.0;
  for (int i = 0; i < n; ++i) det *= es.eigenvalues()[i];
  double f = 0.5 * std::log(det / volume_density(mu, n));
  bg.weight = std::exp(-ell * f);
  bg.wn1 = wedge_power_over_factorial(omega_const, n - 1);
  bg.wn2 = n >= 2 ? wedge_power_over_factorial(omega_const, n - 2)
                  : TrigForm::zero(bg.frame, 0, 1);
  TrigForm vol = wedge_power_over_factorial(omega_const, n);
  const ModeMap* tc = top_component(vol);
  Mode zero(bg.frame.dim(), 0);
  bg.vol_coeff = tc ? tc->at(zero)(0, 0) : cplx(0.0, 0.0);
  return bg;
}

TrigForm lambda_const(const TrigForm& omega_const, const TrigForm& alpha) {
  int n = alpha.frame().n;
  Mat H = const_hermitian(omega_const);
  Mat Hinv = H.inverse();
  if (alpha.msize() != 1) throw Error("lambda_const: scalar forms only");
  // collect (1,1)-matrices per mode
  std::map<Mode, Mat> Ak;
  for (auto& [b, mm] : alpha.components()) {
    if (b.size() != 2 || b[0] >= n || b[1] < n) continue;
    int a = b[0], bb = b[1] - n;
    for (auto& [k, v] : mm) {
      auto it = Ak.find(k);
      if (it == Ak.end()) it = Ak.emplace(k, Mat::Zero(n, n)).first;
      it->second(a, bb) += cplx(0, -1) * v(0, 0);
    }
  }
  TrigForm r(alpha.frame(), 0, 1);
  for (auto& [k, A] : Ak) {
    cplx tr = (Hinv * A).trace();
    if (tr != 0.0) r.add_term({}, k, tr);
  }
  return r;
}

TrigForm primitive_const(const TrigForm& omega_const, const TrigForm& alpha) {
  int n = alpha.frame().n;
  TrigForm lam = lambda_const(omega_const, alpha);
  return proj_pq(alpha, 1, 1) - (1.0 / n) * wedge(lam, omega_const);
}

TangentW p_hat(const FlatBackground& bg, const TrigForm& u,
               const TrigForm& xi) {
  TangentW v;
  v.omega_dot = TrigForm::zero(bg.frame, 2, 1);
  v.b_dot = exterior_d(xi);  // F = 0 on flat backgrounds
  v.a_dot = exterior_d(u);
  return v;
}

std::array<TrigForm, 4> linearized_L(const FlatBackground& bg,
                                     const TangentW& v) {
  int n = bg.frame.n;
  double l = bg.ell;
  TrigForm L1 = wedge(exterior_d(v.a_dot), wpow(bg.omega, n - 1));
  TrigForm X = double(n - 1) * wedge(v.omega_dot, wpow(bg.omega, n - 2)) -
               (l / 2.0) * wedge(lambda_const(bg.omega, v.omega_dot),
                                 wpow(bg.omega, n - 1));
  TrigForm L2 = bg.weight * exterior_d(X);
  TrigForm L3 = delbar(proj_pq(v.a_dot, 0, 1));
  TrigForm L4 = dc(v.omega_dot) - exterior_d(v.b_dot);
  return {L1, L2, L3, L4};
}

double linearized_L_norm(const FlatBackground& bg, const TangentW& v) {
  auto L = linearized_L(bg, v);
  return std::max({norm_max(L[0]), norm_max(L[1]), norm_max(L[2]),
                   norm_max(L[3])});
}

namespace {

// *(g-valued 2n-form) = coefficient over the volume form
TrigForm star_top(const FlatBackground& bg, const TrigForm& T) {
  TrigForm r(bg.frame, 0, T.msize());
  const ModeMap* tc = top_component(T);
  if (!tc) return r;
  for (auto& [k, v] : *tc) r.add_term({}, k, Mat(v / bg.vol_coeff));
  return r;
}

std::vector<Blade> one_blades(int dim) {
  std::vector<Blade> b;
  for (int a = 0; a < dim; ++a) b.push_back({a});
  return b;
}

std::vector<Blade> blades_of_degree(int dim, int deg) {
  std::vector<Blade> out;
  Blade cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == deg) {
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

// constant matrix of xi -> J xi ^ omega^{n-1}/(n-1)! in blade coordinates
Eigen::MatrixXcd star_matrix(const FlatBackground& bg) {
  int dim = bg.frame.dim();
  auto rows = blades_of_degree(dim, dim - 1);
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
  Mode zero(dim, 0);
  for (int a = 0; a < dim; ++a) {
    TrigForm z(bg.frame, 1, 1);
    z.add_term({a}, zero, cplx(1.0, 0.0));
    TrigForm img = wedge(j_form(z), bg.wn1);
    for (int r = 0; r < dim; ++r) {
      auto it = img.components().find(rows[static_cast<std::size_t>(r)]);
      if (it == img.components().end()) continue;
      auto kit = it->second.find(zero);
      if (kit == it->second.end()) continue;
      M(r, a) = kit->second(0, 0);
    }
  }
  return M;
}

// *eta for a (2n-1)-form: -solve(J xi ^ w^{n-1}/(n-1)! = eta)
TrigForm star_2n1(const FlatBackground& bg, const Eigen::MatrixXcd& Mstar,
                  const TrigForm& eta) {
  int dim = bg.frame.dim();
  auto rows = blades_of_degree(dim, dim - 1);
  std::set<Mode> modes;
  for (auto& [b, mm] : eta.components())
    for (auto& [k, v] : mm) modes.insert(k);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(Mstar);
  TrigForm out(bg.frame, 1, 1);
  for (const Mode& k : modes) {
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);
    for (int r = 0; r < dim; ++r) {
      auto it = eta.components().find(rows[static_cast<std::size_t>(r)]);
      if (it == eta.components().end()) continue;
      auto kit = it->second.find(k);
      if (kit == it->second.end()) continue;
      rhs(r) = kit->second(0, 0);
    }
    Eigen::VectorXcd xi = lu.solve(rhs);
    for (int a = 0; a < dim; ++a)
      if (xi(a) != 0.0) out.add_term({a}, k, -xi(a));
  }
  return out;
}

}  // namespace

std::pair<TrigForm, TrigForm> p_hat_adjoint(const FlatBackground& bg,
                                            const TangentW& v) {
  int n = bg.frame.n;
  double l = bg.ell;
  // P*_0 = e^{-lf} * ( d J a ^ omega^{n-1} ) / (n-1)!  (F = 0)
  TrigForm T = wedge(exterior_d(j_form(v.a_dot)), bg.wn1);
  TrigForm u_out = bg.weight * star_top(bg, T);

  TrigForm b11 = proj_pq(v.b_dot, 1, 1);
  TrigForm X = double(n - 1) * wedge(b11, wpow(bg.omega, n - 2)) -
               (l / 2.0) * wedge(lambda_const(bg.omega, v.b_dot),
                                 wpow(bg.omega, n - 1));
  double fact = 1.0;
  for (int i = 2; i <= n - 1; ++i) fact *= i;
  Eigen::MatrixXcd Mstar = star_matrix(bg);
  TrigForm xi_out = (1.0 / fact) * star_2n1(bg, Mstar, exterior_d(X));
  return {u_out, xi_out};
}

double l2_ell_pairing(const FlatBackground& bg, const TrigForm& u1,
                      const TrigForm& xi1, const TrigForm& u2,
                      const TrigForm& xi2, double M) {
  int n = bg.frame.n;
  const PairingSpec& p = bg.alg.pairing;
  TrigForm vol = wedge_power_over_factorial(bg.omega, n);
  cplx uu = integrate(wedge(wedge_pair(u1, u2, p), vol));
  cplx xx = integrate(wedge(wedge(xi1, j_form(xi2)), bg.wn1));
  return (2.0 - bg.ell) / M * (uu.real() + 0.5 * bg.weight * xx.real());
}

namespace {

struct ModeSystem {
  Eigen::MatrixXcd L;      // (r + 2n - 1)^2
  Eigen::MatrixXcd xibas;  // 2n x (2n-1) complement basis
  int r = 0;
};

// Gram matrix for algebra coordinates: A[i][j] = tr(basis_i^dag basis_j)
Eigen::MatrixXcd algebra_gram(const KAlgebra& alg) {
  int r = static_cast<int>(alg.basis.size());
  Eigen::MatrixXcd A(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      A(i, j) = (alg.basis[i].adjoint() * alg.basis[j]).trace();
  return A;
}

Eigen::VectorXcd algebra_coords(const KAlgebra& alg,
                                const Eigen::MatrixXcd& gram, const Mat& x) {
  int r = static_cast<int>(alg.basis.size());
  Eigen::VectorXcd b(r);
  for (int i = 0; i < r; ++i) b(i) = (alg.basis[i].adjoint() * x).trace();
  return gram.ldlt().solve(b);
}

// 1-form coefficient vector at a single mode
Eigen::VectorXcd oneform_coeffs(const TrigForm& xi, const Mode& k, int dim) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  for (int a = 0; a < dim; ++a) {
    auto it = xi.components().find({a});
    if (it == xi.components().end()) continue;
    auto kit = it->second.find(k);
    if (kit == it->second.end()) continue;
    v(a) = kit->second(0, 0);
  }
  return v;
}

Mat mode_matrix(const TrigForm& u, const Mode& k, int m) {
  auto it = u.components().find({});
  if (it == u.components().end()) return Mat::Zero(m, m);
  auto kit = it->second.find(k);
  return kit == it->second.end() ? Mat(Mat::Zero(m, m)) : kit->second;
}

ModeSystem assemble_mode(const FlatBackground& bg, const Mode& k, double M) {
  int dim = bg.frame.dim();
  int r = static_cast<int>(bg.alg.basis.size());
  int m = bg.alg.pairing.msize();
  ModeSystem sys;
  sys.r = r;

  // hermitian metric on 1-form coefficients: G[a][b] = <zeta_a, zeta_b>
  Eigen::MatrixXcd G(dim, dim);
  Mode zero(dim, 0);
  for (int a = 0; a < dim; ++a) {
    int ca = a < bg.frame.n ? a + bg.frame.n : a - bg.frame.n;  // conj index
    TrigForm za(bg.frame, 1, 1), zb(bg.frame, 1, 1);
    za.add_term({ca}, zero, cplx(1.0, 0.0));
    for (int b = 0; b < dim; ++b) {
      zb = TrigForm(bg.frame, 1, 1);
      zb.add_term({b}, zero, cplx(1.0, 0.0));
      TrigForm t = wedge(wedge(za, j_form(zb)), bg.wn1);
      const ModeMap* tc = top_component(t);
      G(a, b) = tc && tc->count(zero) ? tc->at(zero)(0, 0) / bg.vol_coeff
                                      : cplx(0.0, 0.0);
    }
  }

  // d phi_k coefficients
  TrigForm phi(bg.frame, 0, 1);
  phi.add_term({}, k, cplx(1.0, 0.0));
  Eigen::VectorXcd w = oneform_coeffs(exterior_d(phi), k, dim);

  // complement basis of Im d* = {x : w^dag G x = 0}
  Eigen::MatrixXcd row = (w.adjoint() * G);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(row, Eigen::ComputeFullV);
  sys.xibas = svd.matrixV().rightCols(dim - 1);

  int D = r + dim - 1;
  sys.L = Eigen::MatrixXcd::Zero(D, D);
  Eigen::MatrixXcd agram = algebra_gram(bg.alg);

  for (int col = 0; col < D; ++col) {
    TrigForm u(bg.frame, 0, m);
    TrigForm xi(bg.frame, 1, 1);
    if (col < r) {
      u.add_term({}, k, bg.alg.basis[static_cast<std::size_t>(col)]);
    } else {
      Eigen::VectorXcd x = sys.xibas.col(col - r);
      for (int a = 0; a < dim; ++a)
        if (x(a) != 0.0) xi.add_term({a}, k, x(a));
    }
    TangentW pv = p_hat(bg, u, xi);
    auto [uo, xo] = p_hat_adjoint(bg, pv);
    Eigen::VectorXcd ucoord = algebra_coords(bg.alg, agram, mode_matrix(uo, k, m));
    Eigen::VectorXcd xcoeff = oneform_coeffs(xo, k, dim);
    Eigen::VectorXcd xcoord = sys.xibas.adjoint() * xcoeff;
    for (int i = 0; i < r; ++i) sys.L(i, col) = ucoord(i);
    for (int i = 0; i < dim - 1; ++i) sys.L(r + i, col) = xcoord(i);
  }
  (void)M;
  return sys;
}

}  // namespace

ModeKernelReport condition_a(const FlatBackground& bg, int kmax) {
  ModeKernelReport rep;
  int dim = bg.frame.dim();
  rep.constant_mode_kernel = static_cast<int>(bg.alg.basis.size());
  rep.domain_dim_per_mode = static_cast<int>(bg.alg.basis.size()) + dim - 1;

  std::vector<Mode> modes;
  Mode k(dim, -kmax);
  while (true) {
    if (!is_zero_mode(k)) modes.push_back(k);
    int i = dim - 1;
    while (i >= 0) {
      if (++k[i] <= kmax) break;
      k[i] = -kmax;
      --i;
    }
    if (i < 0) break;
  }
  for (const Mode& kk : modes) {
    ModeSystem sys = assemble_mode(bg, kk, 1.0);
    rep.square = rep.square && sys.L.rows() == sys.L.cols();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys.L);
    double smax = svd.singularValues().maxCoeff();
    int kernel = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) <= 1e-9 * smax) ++kernel;
    if (kernel > 0) rep.kernel_dims.push_back({kk, kernel});
    rep.total_nonconstant_kernel += kernel;
  }
  return rep;
}

TangentW gauge_fix(const FlatBackground& bg, const TangentW& v,
                   GaugeFixReport* report) {
  int dim = bg.frame.dim();
  int m = bg.alg.pairing.msize();
  int r = static_cast<int>(bg.alg.basis.size());
  auto [u_rhs, xi_rhs] = p_hat_adjoint(bg, v);

  std::set<Mode> modes;
  for (auto& [b, mm] : u_rhs.components())
    for (auto& [kk, vv] : mm) modes.insert(kk);
  for (auto& [b, mm] : xi_rhs.components())
    for (auto& [kk, vv] : mm) modes.insert(kk);

  TrigForm u_sol(bg.frame, 0, m);
  TrigForm xi_sol(bg.frame, 1, 1);
  Eigen::MatrixXcd agram = algebra_gram(bg.alg);

  for (const Mode& k : modes) {
    if (is_zero_mode(k)) {
      // constant-mode kernel of L is quotiented; P* v has no constant mode
      continue;
    }
    ModeSystem sys = assemble_mode(bg, k, 1.0);
    Eigen::VectorXcd rhs(sys.L.rows());
    Eigen::VectorXcd ucoord =
        algebra_coords(bg.alg, agram, mode_matrix(u_rhs, k, m));
    Eigen::VectorXcd xcoord =
        sys.xibas.adjoint() * oneform_coeffs(xi_rhs, k, dim);
    for (int i = 0; i < sys.r; ++i) rhs(i) = ucoord(i);
    for (int i = 0; i < dim - 1; ++i) rhs(sys.r + i) = xcoord(i);

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        sys.L, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues()(svd.singularValues().size() - 1) <
        1e-9 * svd.singularValues()(0))
      throw Error("gauge_fix: singular mode system at a nonzero mode");
    Eigen::VectorXcd y = svd.solve(rhs);
    for (int i = 0; i < sys.r; ++i)
      if (y(i) != 0.0)
        u_sol.add_term({}, k, Mat(y(i) * bg.alg.basis[static_cast<std::size_t>(i)]));
    Eigen::VectorXcd xi_co = sys.xibas * y.tail(dim - 1);
    for (int a = 0; a < dim; ++a)
      if (xi_co(a) != 0.0) xi_sol.add_term({a}, k, xi_co(a));
  }

  TangentW py = p_hat(bg, u_sol, xi_sol);
  TangentW out;
  out.omega_dot = v.omega_dot - py.omega_dot;
  out.b_dot = v.b_dot - py.b_dot;
  out.a_dot = v.a_dot - py.a_dot;

  if (report) {
    int n = bg.frame.n;
    TrigForm b11 = proj_pq(out.b_dot, 1, 1);
    TrigForm X = double(n - 1) * wedge(b11, wpow(bg.omega, n - 2)) -
                 (bg.ell / 2.0) * wedge(lambda_const(bg.omega, out.b_dot),
                                        wpow(bg.omega, n - 1));
    report->gauge_condition_b = bg.weight * norm_max(exterior_d(X));
    report->gauge_condition_a =
        norm_max(wedge(exterior_d(j_form(out.a_dot)), wpow(bg.omega, n - 1)));
    auto [ur, xr] = p_hat_adjoint(bg, out);
    report->phat_star_norm = std::max(norm_max(ur), norm_max(xr));
  }
  return out;
}

double fibre_system_residual(const FlatBackground& bg,
                             const FibreVariation& v) {
  int n = bg.frame.n;
  double l = bg.ell;
  // F = 0: the five equations of the gauge-fixed fibre system
  TrigForm e1 = wedge(exterior_d(j_form(exterior_d(v.s))), wpow(bg.omega, n - 1));
  TrigForm X1 = double(n - 1) * wedge(v.omega_dot, wpow(bg.omega, n - 2)) -
                (l / 2.0) * wedge(lambda_const(bg.omega, v.omega_dot),
                                  wpow(bg.omega, n - 1));
  TrigForm e2 = exterior_d(X1);
  TrigForm e3 = dc(v.omega_dot) - exterior_d(v.b_dot);
  TrigForm X2 =
      double(n - 1) * wedge(proj_pq(v.b_dot, 1, 1), wpow(bg.omega, n - 2)) -
      (l / 2.0) *
          wedge(lambda_const(bg.omega, v.b_dot), wpow(bg.omega, n - 1));
  TrigForm e4 = exterior_d(X2);
  TrigForm e5 =
      wedge(exterior_d(j_form(exterior_d(v.s_prime))), wpow(bg.omega, n - 1));
  return std::max({norm_max(e1), norm_max(e2), norm_max(e3), norm_max(e4),
                   norm_max(e5)});
}

VariationClasses variation_classes(const FlatBackground& bg,
                                   const FibreVariation& v, double pre_tol) {
  double res = fibre_system_residual(bg, v);
  if (res > pre_tol)
    throw ConstraintViolation(
        "variation_classes: input does not solve the gauge-fixed fibre "
        "system (residual " +
        std::to_string(res) + ")");
  int n = bg.frame.n;
  double l = bg.ell;
  double fact = 1.0;
  for (int i = 2; i <= n - 1; ++i) fact *= i;
  double cnl = (n * (2.0 - l) - 2.0) / (2.0 * n);

  VariationClasses out;
  // F = 0: the class representatives lose their <s,F> corrections
  out.adot_re = reduce_class(v.omega_dot, CohomFlavor::Aeppli, 1e-9);
  out.adot_im = reduce_class(proj_pq(v.b_dot, 1, 1), CohomFlavor::Aeppli, 1e-9);

  TrigForm w0dot = primitive_const(bg.omega, v.omega_dot);
  TrigForm b0dot = primitive_const(bg.omega, proj_pq(v.b_dot, 1, 1));
  TrigForm re_nu =
      (bg.weight / fact) *
      (double(n - 1) * wedge(w0dot, wpow(bg.omega, n - 2)) +
       cnl * wedge(lambda_const(bg.omega, v.omega_dot), wpow(bg.omega, n - 1)));
  TrigForm im_nu =
      (bg.weight / fact) *
      (double(n - 1) * wedge(b0dot, wpow(bg.omega, n - 2)) +
       cnl * wedge(lambda_const(bg.omega, v.b_dot), wpow(bg.omega, n - 1)));
  out.bdot_re = reduce_class(re_nu, CohomFlavor::BottChern, 1e-9);
  out.bdot_im = reduce_class(im_nu, CohomFlavor::BottChern, 1e-9);
  return out;
}

}  // namespace stralg
