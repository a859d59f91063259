#include "stralg/courant.hpp"

namespace stralg {

double CourantData::anomaly_residual() const {
  TrigForm F = curvature(theta);
  return norm_max(exterior_d(H) + wedge_pair(F, F, theta.pairing));
}

void CourantData::require_anomaly(double tol) const {
  double r = anomaly_residual();
  if (r > tol)
    throw ConstraintViolation("CourantData: dH + <F^F> != 0 (residual " +
                              std::to_string(r) + ")");
}

double HoloData::anomaly_residual() const {
  TrigForm F = curvature(theta);
  return norm_max(exterior_d(H) + wedge_pair(F, F, theta.pairing));
}

double HoloData::f02_residual() const {
  return norm_max(proj_pq(curvature(theta), 0, 2));
}

CourantSection CourantSection::operator+(const CourantSection& o) const {
  CourantSection r = *this;
  r.V += o.V;
  r.r += o.r;
  r.xi += o.xi;
  return r;
}

CourantSection CourantSection::operator-(const CourantSection& o) const {
  CourantSection r = *this;
  r.V += -1.0 * o.V;
  r.r -= o.r;
  r.xi -= o.xi;
  return r;
}

namespace {
VectorField scale_vf(const VectorField& v, const TrigForm& phi) {
  VectorField r(v.frame());
  for (int a = 0; a < v.dim(); ++a) r[a] = wedge(phi, v[a]);
  return r;
}
}  // namespace

CourantSection CourantSection::scaled(const TrigForm& phi) const {
  CourantSection r = *this;
  r.V = scale_vf(V, phi);
  r.r = wedge(phi, this->r);
  r.xi = wedge(phi, xi);
  return r;
}

double norm_max(const CourantSection& s) {
  return std::max({norm_max(s.V), norm_max(s.r), norm_max(s.xi)});
}

TrigForm e0_pairing(const CourantSection& s1, const CourantSection& s2,
                    const PairingSpec& p) {
  TrigForm v = 0.5 * (contract(s2.V, s1.xi) + contract(s1.V, s2.xi));
  return v + wedge_pair(s1.r, s2.r, p);
}

CourantSection e0_bracket(const CourantSection& s1, const CourantSection& s2,
                          const CourantData& data) {
  const PairingSpec& p = data.theta.pairing;
  const TrigForm& th = data.theta.theta;
  TrigForm F = curvature(data.theta);

  CourantSection out;
  out.V = vf_bracket(s1.V, s2.V);

  // -F(V,W) + d^theta_V t - d^theta_W r - [r,t]
  TrigForm FVW = contract(s2.V, contract(s1.V, F));
  TrigForm dthr = covariant_d(th, s1.r);
  TrigForm dtht = covariant_d(th, s2.r);
  out.r = -FVW + contract(s1.V, dtht) - contract(s2.V, dthr) -
          wedge_comm(s1.r, s2.r);

  // L_V eta - i_W d xi + i_V i_W H
  TrigForm xi = lie_derivative(s1.V, s2.xi) -
                contract(s2.V, exterior_d(s1.xi)) +
                contract(s1.V, contract(s2.V, data.H));
  // + 2<d^theta r, t> + 2<i_V F, t> - 2<i_W F, r>
  xi += 2.0 * wedge_pair(dthr, s2.r, p);
  xi += 2.0 * wedge_pair(contract(s1.V, F), s2.r, p);
  xi -= 2.0 * wedge_pair(contract(s2.V, F), s1.r, p);
  out.xi = xi;
  return out;
}

AxiomReport axioms_residual(const CourantData& data,
                            const std::vector<CourantSection>& sections,
                            const std::vector<TrigForm>& test_functions) {
  AxiomReport rep;
  const PairingSpec& p = data.theta.pairing;
  auto bracket = [&](const CourantSection& a, const CourantSection& b) {
    return e0_bracket(a, b, data);
  };
  for (std::size_t i = 0; i + 2 < sections.size(); i += 3) {
    const CourantSection& u = sections[i];
    const CourantSection& v = sections[i + 1];
    const CourantSection& w = sections[i + 2];

    // (D1) Jacobi in Leibniz form
    CourantSection d1 =
        bracket(u, bracket(v, w)) - bracket(bracket(u, v), w) -
        bracket(v, bracket(u, w));
    rep.d1 = std::max(rep.d1, norm_max(d1));

    // (D2) anchor is bracket-preserving
    VectorField d2 = bracket(u, v).V;
    d2 += -1.0 * vf_bracket(u.V, v.V);
    rep.d2 = std::max(rep.d2, norm_max(d2));

    // (D3) Leibniz rule for functions
    if (!test_functions.empty()) {
      const TrigForm& phi = test_functions[(i / 3) % test_functions.size()];
      CourantSection d3 = bracket(u, v.scaled(phi)) -
                          v.scaled(apply_vf(u.V, phi)) -
                          bracket(u, v).scaled(phi);
      rep.d3 = std::max(rep.d3, norm_max(d3));
    }

    // (D4) invariance of the pairing
    TrigForm d4 = apply_vf(u.V, e0_pairing(v, w, p)) -
                  e0_pairing(bracket(u, v), w, p) -
                  e0_pairing(v, bracket(u, w), p);
    rep.d4 = std::max(rep.d4, norm_max(d4));

    // (D5) symmetrized bracket
    CourantSection d5 = bracket(u, v) + bracket(v, u);
    d5.xi -= 2.0 * exterior_d(e0_pairing(u, v, p));
    rep.d5 = std::max(rep.d5, norm_max(d5));
  }
  return rep;
}

CourantSection gb_action(const TrigForm& gamma, const TrigForm& beta,
                         const CourantSection& s, const PairingSpec& p) {
  CourantSection out = s;
  TrigForm ivb = contract(s.V, beta);
  out.r = s.r + ivb;
  out.xi = s.xi + contract(s.V, gamma) - wedge_pair(ivb, beta, p) -
           2.0 * wedge_pair(beta, s.r, p);
  return out;
}

TrigForm twisted_h(const TrigForm& gamma, const TrigForm& beta,
                   const CourantData& data) {
  const PairingSpec& p = data.theta.pairing;
  TrigForm F = curvature(data.theta);
  return data.H + exterior_d(gamma) - 2.0 * wedge_pair(beta, F, p) -
         wedge_pair(beta, covariant_d(data.theta.theta, beta), p) -
         (2.0 / 3.0) * wedge_pair(beta, wedge(beta, beta), p);
}

std::pair<double, double> lifting_check(const Lifting& L,
                                        const CourantData& data) {
  TrigForm hp = twisted_h(L.gamma, L.beta, data);
  double r1 = std::max(norm_max(proj_pq(hp, 1, 2)), norm_max(proj_pq(hp, 0, 3)));
  TrigForm F = curvature(data.theta);
  TrigForm r2f = proj_pq(F, 0, 2) +
                 proj_pq(covariant_d(data.theta.theta, L.beta), 0, 2) +
                 wedge(L.beta, L.beta);
  return {r1, norm_max(r2f)};
}

HoloData reduce_lifting(const Lifting& L, const CourantData& data,
                        double tol) {
  auto [r1, r2] = lifting_check(L, data);
  if (r1 > tol || r2 > tol)
    throw ConstraintViolation("reduce_lifting: lifting equations violated (" +
                              std::to_string(r1) + ", " + std::to_string(r2) +
                              ")");
  const PairingSpec& p = data.theta.pairing;
  TrigForm F = curvature(data.theta);
  TrigForm H = proj_pq(data.H, 3, 0) + proj_pq(data.H, 2, 1) +
               del(proj_pq(L.gamma, 1, 1)) -
               2.0 * wedge_pair(L.beta, proj_pq(F, 2, 0), p);
  HoloData out{H, Connection{data.theta.theta + L.beta, p}};
  double ra = out.anomaly_residual();
  if (ra > std::max(tol, 1e-8) * (1.0 + norm_max(out.H)))
    throw ConstraintViolation(
        "reduce_lifting: reduced data violates dH + <F^F> = 0 (residual " +
        std::to_string(ra) + ")");
  return out;
}

ChernTriple chern_correspondence(const Lifting& L, const PairingSpec& p) {
  TrigForm beta_star = compact_conj(L.beta);
  TrigForm g11 = proj_pq(L.gamma, 1, 1) - wedge_pair(L.beta, beta_star, p);
  TrigForm g02 = proj_pq(L.gamma, 0, 2);
  ChernTriple t;
  t.omega = im_part(-g11);
  t.b = re_part(g11) + g02 + conj_form(g02);
  t.a = L.beta + beta_star;
  return t;
}

Lifting lifting_from_chern(const ChernTriple& t, const PairingSpec& p) {
  TrigForm a01 = proj_pq(t.a, 0, 1);
  TrigForm a10 = proj_pq(t.a, 1, 0);
  Lifting L;
  L.beta = a01;
  L.gamma = cplx(0, -1) * t.omega + proj_pq(t.b, 1, 1) + proj_pq(t.b, 0, 2) +
            wedge_pair(a01, a10, p);
  return L;
}

}  // namespace stralg
