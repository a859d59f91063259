#include "stralg/picard.hpp"

#include "stralg/quadrature.hpp"

namespace stralg {

namespace {

// i_V alpha on the grid, V given by 2n complex-frame 0-form components.
GridForm contract_grid(const std::vector<GridForm>& V, const GridForm& alpha) {
  GridForm r(alpha.frame(), alpha.resolution(),
             std::max(alpha.degree() - 1, 0), alpha.msize());
  if (alpha.degree() == 0) return r;
  Blade reduced;
  for (auto& [b, gd] : alpha.components()) {
    for (int a : b) {
      if (V[a].empty()) continue;
      int sign = remove_sign(b, a, reduced);
      GridForm part(alpha.frame(), alpha.resolution(), alpha.degree() - 1,
                    alpha.msize());
      auto& pd = part.component(reduced);
      for (std::size_t i = 0; i < gd.v.size(); ++i)
        pd.v[i] = double(sign) * gd.v[i];
      r += wedge(V[a], part);
    }
  }
  return r;
}

GridForm conj_ad(const GridForm& g, const GridForm& x) {
  return wedge(g, wedge(x, matrix_inverse(g)));
}

}  // namespace

PicardElement PicardElement::identity(const HoloData& base, int N) {
  int m = base.theta.pairing.msize();
  PicardElement p{GridForm::constant(base.H.frame(), N, Mat::Identity(m, m)),
                  GridForm(base.H.frame(), N, 2, 1), base};
  return p;
}

double pic_constraint_residual(const PicardElement& p) {
  int N = p.resolution();
  GridForm theta = to_grid(p.base.theta.theta, N);
  GridForm ginv = matrix_inverse(p.g);
  GridForm theta_t = gauge_transform(ginv, theta);
  GridForm rhs = cs_difference(theta_t, theta, p.base.theta.pairing);
  GridForm lhs = exterior_d(p.tau);
  return norm_max(lhs - rhs);
}

PicLieGrid to_grid(const PicLieElement& z, int N) {
  return PicLieGrid{to_grid(z.s, N), to_grid(z.B, N)};
}

double lie_invariant_residual(const PicLieElement& z, const HoloData& base) {
  TrigForm F = curvature(base.theta);
  return norm_max(exterior_d(
      z.B - 2.0 * wedge_pair(z.s, F, base.theta.pairing)));
}

double lie_invariant_residual(const PicLieGrid& z, const HoloData& base) {
  GridForm F = to_grid(curvature(base.theta), z.s.resolution());
  return norm_max(exterior_d(
      z.B - 2.0 * wedge_pair(z.s, F, base.theta.pairing)));
}

PicardElement pic_compose(const PicardElement& p1, const PicardElement& p2,
                          double tol) {
  int N = p1.resolution();
  GridForm theta = to_grid(p1.base.theta.theta, N);
  GridForm a1 = gauge_a(p1.g, theta);
  GridForm a2 = gauge_a(p2.g, theta);
  GridForm a1_conj = conj_ad(matrix_inverse(p2.g), a1);
  PicardElement out{wedge(p1.g, p2.g),
                    p1.tau + p2.tau +
                        wedge_pair(a1_conj, a2, p1.base.theta.pairing),
                    p1.base};
  double r = pic_constraint_residual(out);
  if (r > tol)
    throw ConstraintViolation(
        "pic_compose: product violates the Picard constraint (residual " +
        std::to_string(r) + ")");
  return out;
}

PicardElement pic_inverse(const PicardElement& p) {
  return PicardElement{matrix_inverse(p.g), -p.tau, p.base};
}

GridSection to_grid(const CourantSection& s, int N) {
  GridSection g;
  g.V.reserve(s.V.dim());
  for (int a = 0; a < s.V.dim(); ++a) g.V.push_back(to_grid(s.V[a], N));
  g.r = to_grid(s.r, N);
  g.xi = to_grid(s.xi, N);
  return g;
}

GridSection section_sub(const GridSection& a, const GridSection& b) {
  GridSection r = a;
  for (std::size_t i = 0; i < r.V.size(); ++i) r.V[i] -= b.V[i];
  r.r -= b.r;
  r.xi -= b.xi;
  return r;
}

double norm_max(const GridSection& s) {
  double m = std::max(norm_max(s.r), norm_max(s.xi));
  for (auto& v : s.V) m = std::max(m, norm_max(v));
  return m;
}

GridForm grid_pairing(const GridSection& a, const GridSection& b,
                      const PairingSpec& p) {
  GridForm v = 0.5 * (contract_grid(b.V, a.xi) + contract_grid(a.V, b.xi));
  return v + wedge_pair(a.r, b.r, p);
}

GridSection pic_act(const PicardElement& p, const GridSection& s) {
  int N = p.resolution();
  const PairingSpec& pr = p.base.theta.pairing;
  GridForm theta = to_grid(p.base.theta.theta, N);
  GridForm ag = gauge_a(p.g, theta);
  GridSection out = s;
  GridForm iva = contract_grid(s.V, ag);
  out.r = conj_ad(p.g, s.r + iva);
  out.xi = s.xi + contract_grid(s.V, p.tau) - wedge_pair(iva, ag, pr) -
           2.0 * wedge_pair(ag, s.r, pr);
  return out;
}

GridSection pic_act(const PicardElement& p, const CourantSection& s) {
  return pic_act(p, to_grid(s, p.resolution()));
}

PicLieGrid pic_adjoint(const PicardElement& p, const PicLieGrid& z) {
  int N = p.resolution();
  const PairingSpec& pr = p.base.theta.pairing;
  GridForm theta = to_grid(p.base.theta.theta, N);
  GridForm ag = gauge_a(p.g, theta);
  GridForm ds = covariant_d(theta, z.s);
  PicLieGrid out;
  out.s = conj_ad(p.g, z.s);
  out.B = z.B - wedge_pair(ag, wedge_comm(z.s, ag), pr) -
          2.0 * wedge_pair(ds, ag, pr);
  return out;
}

PicLieGrid pic_adjoint(const PicardElement& p, const PicLieElement& z) {
  return pic_adjoint(p, to_grid(z, p.resolution()));
}

PicLieElement lie_bracket(const PicLieElement& z0, const PicLieElement& z1,
                          const HoloData& base) {
  const TrigForm& th = base.theta.theta;
  TrigForm d0 = covariant_d(th, z0.s);
  TrigForm d1 = covariant_d(th, z1.s);
  return PicLieElement{wedge_comm(z0.s, z1.s),
                       2.0 * wedge_pair(d0, d1, base.theta.pairing)};
}

CohomClass aeppli_hom(const PicLieElement& z, const HoloData& base,
                      ExactnessWitness* witness) {
  TrigForm F11 = proj_pq(curvature(base.theta), 1, 1);
  TrigForm rep = proj_pq(z.B, 1, 1) -
                 2.0 * wedge_pair(z.s, F11, base.theta.pairing);
  return reduce_class(rep, CohomFlavor::Aeppli, 1e-9, witness);
}

CohomClass aeppli_hom(const PicLieGrid& z, const HoloData& base,
                      double closed_tol) {
  GridForm F11 =
      to_grid(proj_pq(curvature(base.theta), 1, 1), z.s.resolution());
  GridForm rep = proj_pq(z.B, 1, 1) -
                 2.0 * wedge_pair(z.s, F11, base.theta.pairing);
  return reduce_class(from_grid(rep), CohomFlavor::Aeppli, closed_tol);
}

CohomClass dr_hom(const PicLieElement& z, const HoloData& base) {
  TrigForm F = curvature(base.theta);
  TrigForm rep = z.B - 2.0 * wedge_pair(z.s, F, base.theta.pairing);
  return reduce_class(rep, CohomFlavor::DeRham, 1e-9);
}

std::vector<PicardElement> exp_path(const PicLieElement& z,
                                    const HoloData& base, int N,
                                    const std::vector<double>& t_grid,
                                    int quad_order) {
  const PairingSpec& pr = base.theta.pairing;
  TrigForm F = curvature(base.theta);
  TrigForm lin = z.B - 2.0 * wedge_pair(z.s, F, pr);
  GridForm s_grid = to_grid(z.s, N);
  GridForm theta = to_grid(base.theta.theta, N);
  GridForm F_grid = to_grid(F, N);
  auto [nodes, weights] = gauss_legendre01(quad_order);

  std::vector<PicardElement> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    GridForm mu(base.H.frame(), N, 2, 1);
    for (int i = 0; i < quad_order; ++i) {
      double u = t * nodes[i];
      GridForm su = s_grid;
      su *= u;
      GridForm gu = matrix_exp(su);
      GridForm gu_inv = matrix_exp(GridForm(-1.0 * su));
      GridForm au = gauge_a(gu, theta);
      GridForm theta_u = theta + au;
      GridForm Fu = conj_ad(gu_inv, F_grid);
      GridForm dsu = covariant_d(theta_u, s_grid);
      GridForm term = 2.0 * wedge_pair(s_grid, Fu, pr) +
                      wedge_pair(au, dsu, pr);
      term *= t * weights[i];
      mu += term;
    }
    GridForm ts = s_grid;
    ts *= t;
    GridForm tau = to_grid(t * lin, N) + mu;
    out.push_back(PicardElement{matrix_exp(ts), tau, base});
  }
  return out;
}

HamiltonianResult hamiltonian_member(const PicLieElement& z,
                                     const HoloData& base, double tol) {
  HamiltonianResult r;
  CohomClass c = aeppli_hom(z, base, &r.witness);
  r.class_norm = norm_max(c.rep);
  r.member = r.class_norm <= tol * (1.0 + norm_max(z.B));
  return r;
}

}  // namespace stralg
