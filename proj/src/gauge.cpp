#include "stralg/gauge.hpp"

#include "stralg/cohomology.hpp"
#include "stralg/quadrature.hpp"

namespace stralg {

HermitianReduction HermitianReduction::from_exponent(const TrigForm& u, int N,
                                                     const PairingSpec& p) {
  GridForm ug = to_grid(u, N);
  return HermitianReduction{matrix_exp(ug), p};
}

TrigForm curvature(const Connection& c) {
  return exterior_d(c.theta) + wedge(c.theta, c.theta);
}

GridForm curvature_grid(const GridForm& theta) {
  return exterior_d(theta) + wedge(theta, theta);
}

TrigForm covariant_d(const TrigForm& theta, const TrigForm& s) {
  return exterior_d(s) + wedge_comm(theta, s);
}

GridForm covariant_d(const GridForm& theta, const GridForm& s) {
  return exterior_d(s) + wedge_comm(theta, s);
}

TrigForm cs_difference(const Connection& theta_prime,
                       const Connection& theta) {
  TrigForm a = theta_prime.theta - theta.theta;
  TrigForm f = curvature(theta);
  const PairingSpec& p = theta.pairing;
  return 2.0 * wedge_pair(a, f, p) +
         wedge_pair(a, covariant_d(theta.theta, a), p) +
         (2.0 / 3.0) * wedge_pair(a, wedge(a, a), p);
}

GridForm cs_difference(const GridForm& theta_prime, const GridForm& theta,
                       const PairingSpec& p) {
  GridForm a = theta_prime - theta;
  GridForm f = curvature_grid(theta);
  return 2.0 * wedge_pair(a, f, p) + wedge_pair(a, covariant_d(theta, a), p) +
         (2.0 / 3.0) * wedge_pair(a, wedge(a, a), p);
}

GridForm gauge_transform(const GridForm& g, const GridForm& theta) {
  GridForm ginv = matrix_inverse(g);
  return wedge(g, wedge(theta, ginv)) - wedge(exterior_d(g), ginv);
}

GridForm gauge_a(const GridForm& g, const GridForm& theta) {
  GridForm ginv = matrix_inverse(g);
  return wedge(ginv, wedge(theta, g)) + wedge(ginv, exterior_d(g)) - theta;
}

GridForm gauge_exp(const TrigForm& s, int N) {
  return matrix_exp(to_grid(s, N));
}

GridForm transform_reduction(const GridForm& g, const GridForm& h) {
  GridForm ginv = matrix_inverse(g);
  return wedge(adjoint_form(ginv), wedge(h, ginv));
}

namespace {

void require_pd(const GridForm& h, const char* what) {
  const GridData* gd = h.find({});
  if (!gd) throw PositivityError(std::string(what) + ": empty reduction");
  for (std::size_t p = 0; p < h.npts(); ++p) {
    Eigen::SelfAdjointEigenSolver<Mat> es(gd->at(p));
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw PositivityError(std::string(what) +
                            ": reduction not positive-definite on the grid");
  }
}

GridForm chern_connection_raw(const GridForm& h, const TrigForm& theta01) {
  int N = h.resolution();
  GridForm hinv = matrix_inverse(h);
  GridForm t01 = to_grid(theta01, N);
  GridForm t01_dag = to_grid(adjoint_form(theta01), N);
  return t01 + wedge(hinv, del(h)) - wedge(hinv, wedge(t01_dag, h));
}

}  // namespace

GridConnection chern_connection(const HermitianReduction& h,
                                const TrigForm& theta01, double int_tol,
                                double post_tol) {
  require_pd(h.h, "chern_connection");
  // integrability of the (0,1)-part
  TrigForm f02 = delbar(theta01) + wedge(theta01, theta01);
  if (norm_max(f02) > int_tol * (1.0 + norm_max(theta01)))
    throw ConstraintViolation(
        "chern_connection: (0,1)-connection is not integrable (F^{0,2} "
        "residual " +
        std::to_string(norm_max(f02)) + ")");
  GridForm th = chern_connection_raw(h.h, theta01);
  GridForm F = curvature_grid(th);
  double r02 = norm_max(proj_pq(F, 0, 2));
  double r20 = norm_max(proj_pq(F, 2, 0));
  double scale = std::max(1.0, norm_max(F));
  if (r02 > post_tol * scale || r20 > post_tol * scale)
    throw ConstraintViolation(
        "chern_connection: posterior curvature type check failed (F^{0,2} "
        "residual " +
        std::to_string(r02) + ", F^{2,0} residual " + std::to_string(r20) +
        ")");
  GridConnection out{th, h.pairing};
  out.theta.set_approximate(true);
  return out;
}

GridForm bott_chern_secondary(const HermitianReduction& h1,
                              const HermitianReduction& h0,
                              const TrigForm& theta01, int quad_order) {
  require_pd(h0.h, "bott_chern_secondary");
  require_pd(h1.h, "bott_chern_secondary");
  GridForm h0s = matrix_sqrt_pd(h0.h);
  GridForm h0si = matrix_inverse(h0s);
  GridForm mid = wedge(h0si, wedge(h1.h, h0si));
  GridForm S = matrix_log_pd(mid);
  GridForm X = wedge(h0s, wedge(S, h0si));  // hdot_t h_t^-1, constant in t

  auto [nodes, weights] = gauss_legendre01(quad_order);
  GridForm acc(h0.h.frame(), h0.h.resolution(), 2, 1);
  for (int i = 0; i < quad_order; ++i) {
    GridForm ts = S;
    ts *= nodes[i];
    GridForm ht = wedge(h0s, wedge(matrix_exp(ts), h0s));
    GridForm th = chern_connection_raw(ht, theta01);
    GridForm F = curvature_grid(th);
    GridForm term = wedge_pair(X, F, h0.pairing);
    term *= weights[i];
    acc += term;
  }
  // Prefactor +i: the normalization under which the transgression identity
  // 2i del R + CS(theta^{h'}) - CS(theta^h) - d<..> = dB^{2,0}, the
  // statement dd^c R = <F1^F1> - <F0^F0>, and dd^c-closedness of
  // omega' - omega + R all hold with d^c = i(delbar - del).
  acc *= cplx(0.0, 1.0);
  GridForm out = re_part(proj_pq(acc, 1, 1));
  out.set_approximate(true);
  return out;
}

double transgression_identity_residual(const HermitianReduction& h_prime,
                                       const HermitianReduction& h,
                                       const TrigForm& theta01,
                                       int quad_order) {
  GridForm R = bott_chern_secondary(h_prime, h, theta01, quad_order);
  GridForm thp = chern_connection_raw(h_prime.h, theta01);
  GridForm th = chern_connection_raw(h.h, theta01);
  GridForm T = cplx(0.0, 2.0) * del(R) + cs_difference(thp, th, h.pairing);
  TrigForm Tt = from_grid(T);
  TrigForm resid = reduce_by_d_image(Tt, 2, 0);
  return norm_max(resid);
}

}  // namespace stralg
