#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "stralg/dilaton.hpp"
#include "stralg/random_forms.hpp"

using namespace stralg;

namespace {

// generic positive configuration on T^2 with small perturbations
Configuration sample_config(FormGen& gen, const PairingSpec& p, double ell,
                            double amp = 0.15) {
  TorusFrame f = gen.frame();
  TrigForm omega = standard_kaehler_form(f) + amp * gen.real_11_form(1, 3);
  TrigForm b = amp * gen.real_form(2, 1, 3);
  TrigForm a = amp * gen.compact_form(1, 1, 3, p);
  return Configuration(omega, b, a, Connection::flat(f, p), ell);
}

TangentW sample_tangent(FormGen& gen, const PairingSpec& p) {
  TangentW v;
  v.omega_dot = gen.real_11_form(1, 3);
  v.b_dot = gen.real_form(2, 1, 3);
  v.a_dot = gen.compact_form(1, 1, 3, p);
  return v;
}

Configuration shifted(const Configuration& W, const TangentW& v, double eps) {
  Configuration out = W;
  out.omega = W.omega + eps * v.omega_dot;
  out.b = W.b + eps * v.b_dot;
  out.a = W.a + eps * v.a_dot;
  return out;
}

// central difference with one Richardson extrapolation level (step 1e-4)
template <class F>
double fd_derivative(F&& fn, double eps = 1e-4) {
  auto cd = [&](double e) { return (fn(e) - fn(-e)) / (2.0 * e); };
  double d1 = cd(eps), d2 = cd(eps / 2);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

TEST_CASE("complex structure J on tangents") {
  TorusFrame f{2};
  PairingSpec p = PairingSpec::trace(2);
  FormGen gen(f, 3);
  Configuration W = sample_config(gen, p, 1.3);

  // J^2 = -Id (all slots, general b_dot)
  for (int i = 0; i < 4; ++i) {
    TangentW v = sample_tangent(gen, p);
    TangentW jjv = complex_structure_J(W, complex_structure_J(W, v));
    CHECK(norm_max(jjv.omega_dot + v.omega_dot) < 1e-12);
    CHECK(norm_max(jjv.b_dot + v.b_dot) < 1e-12);
    CHECK(norm_max(jjv.a_dot + v.a_dot) < 1e-12);
  }

  // the quoted slot displays hold in the splitting induced by W itself
  // (a = 0); away from it the tangent transport adds the <a_dot ^ a> shift
  Configuration W0 = W;
  W0.a = TrigForm::zero(f, 1, p.msize());

  // (omega_dot, 0, 0) -> (0, omega_dot, 0)
  TangentW v = TangentW::zero(f, p);
  v.omega_dot = gen.real_11_form(1, 3);
  TangentW jv = complex_structure_J(W0, v);
  CHECK(norm_max(jv.omega_dot) < 1e-14);
  CHECK(norm_max(jv.b_dot - v.omega_dot) < 1e-14);

  // a-only input
  TangentW va = TangentW::zero(f, p);
  va.a_dot = gen.compact_form(1, 1, 3, p);
  TangentW jva = complex_structure_J(W0, va);
  CHECK(norm_max(jva.omega_dot) < 1e-14);
  CHECK(norm_max(jva.b_dot) < 1e-14);
  CHECK(norm_max(j_form(jva.a_dot) + va.a_dot) < 1e-13);
}

TEST_CASE("dilaton functional") {
  TorusFrame f{2};
  PairingSpec p = PairingSpec::trace(1);
  Connection flat = Connection::flat(f, p);
  auto w0 = standard_kaehler_form(f);
  TrigForm z2 = TrigForm::zero(f, 2, 1);
  TrigForm z1 = TrigForm::zero(f, 1, 1);

  // omega0 with mu = omega0^n/n!: M_ell = 1 for all ell
  for (double ell : {0.0, 1.0, 1.5, 2.5}) {
    Configuration W(w0, z2, z1, flat, ell);
    CHECK(m_ell(W) == doctest::Approx(1.0).epsilon(1e-12));
  }

  // omega = lambda omega0: M_ell = lambda^{n(2-ell)/2}
  for (double ell : {0.0, 1.0, 1.7}) {
    double lam = 1.42;
    Configuration W(lam * w0, z2, z1, flat, ell);
    CHECK(m_ell(W) ==
          doctest::Approx(std::pow(lam, f.n * (2.0 - ell) / 2.0)).epsilon(1e-10));
  }

  // ell = 0 gives the volume
  Configuration W0(1.3 * w0, z2, z1, flat, 0.0);
  CHECK(m_ell(W0) == doctest::Approx(std::pow(1.3, f.n)).epsilon(1e-10));

  // ell = 2 is rejected at construction
  CHECK_THROWS_AS(Configuration(w0, z2, z1, flat, 2.0), Error);
}

TEST_CASE("lambda_ell: closed form and finite differences") {
  TorusFrame f{2};
  PairingSpec p = PairingSpec::trace(2);
  FormGen gen(f, 11);
  Configuration W = sample_config(gen, p, 1.4);
  DilatonContext ctx(W);

  // b_dot = 0 -> 0
  TangentW v0 = TangentW::zero(f, p);
  v0.omega_dot = gen.real_11_form(1, 3);
  CHECK(ctx.lambda_ell(v0) == 0.0);

  // constant b_dot at omega = omega0: closed-form wedge integral
  Configuration Wf(standard_kaehler_form(f), TrigForm::zero(f, 2, 1),
                   TrigForm::zero(f, 1, p.msize()), Connection::flat(f, p),
                   1.4);
  DilatonContext cf(Wf);
  TangentW vc = TangentW::zero(f, p);
  vc.b_dot = standard_kaehler_form(f, 0.7);  // 0.7 * omega0
  // int 0.7 w0 ^ w0^{n-1}/(n-1)! = 0.7 n; prefactor (l-2)/(2M)
  CHECK(cf.lambda_ell(vc) ==
        doctest::Approx((1.4 - 2.0) / 2.0 * 0.7 * f.n).epsilon(1e-10));

  // lambda_ell = -(J d log M_ell) by central differences
  for (int i = 0; i < 3; ++i) {
    TangentW v = sample_tangent(gen, p);
    TangentW jv = complex_structure_J(W, v);
    double fd = fd_derivative([&](double e) {
      return std::log(DilatonContext(shifted(W, jv, e), false).M());
    });
    CHECK(ctx.lambda_ell(v) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("Omega_ell and g_ell") {
  TorusFrame f{2};
  PairingSpec p = PairingSpec::signed_two_block(1, 1);
  FormGen gen(f, 13);
  Configuration W = sample_config(gen, p, 1.6);
  DilatonContext ctx(W);

  TangentW v1 = sample_tangent(gen, p);
  TangentW v2 = sample_tangent(gen, p);

  // antisymmetry
  CHECK(ctx.omega_ell(v1, v2) ==
        doctest::Approx(-ctx.omega_ell(v2, v1)).epsilon(1e-12));

  // g(v) = Omega(v, Jv)
  CHECK(ctx.g_ell(v1) ==
        doctest::Approx(ctx.omega_ell(v1, complex_structure_J(W, v1)))
            .epsilon(1e-8));

  // g symmetric
  CHECK(ctx.g_ell(v1, v2) == doctest::Approx(ctx.g_ell(v2, v1)).epsilon(1e-10));

  // Omega_ell matches the finite-difference -d J d log M on 2-parameter
  // variations: Omega(v1,v2) = D_{v1} lambda(v2) - D_{v2} lambda(v1)
  double d1 = fd_derivative([&](double e) {
    return DilatonContext(shifted(W, v1, e), false).lambda_ell(v2);
  });
  double d2 = fd_derivative([&](double e) {
    return DilatonContext(shifted(W, v2, e), false).lambda_ell(v1);
  });
  CHECK(ctx.omega_ell(v1, v2) == doctest::Approx(d1 - d2).epsilon(2e-5));

  // closedness of Omega_ell on a 3-parameter family (finite differences):
  // dOmega(v1,v2,v3) = D1 O(v2,v3) - D2 O(v1,v3) + D3 O(v1,v2)
  TangentW v3 = sample_tangent(gen, p);
  double t1 = fd_derivative([&](double e) {
    return DilatonContext(shifted(W, v1, e), false).omega_ell(v2, v3);
  });
  double t2 = fd_derivative([&](double e) {
    return DilatonContext(shifted(W, v2, e), false).omega_ell(v1, v3);
  });
  double t3 = fd_derivative([&](double e) {
    return DilatonContext(shifted(W, v3, e), false).omega_ell(v1, v2);
  });
  CHECK(std::abs(t1 - t2 + t3) < 1e-4);
}

TEST_CASE("moment map") {
  TorusFrame f{2};
  PairingSpec p = PairingSpec::trace(2);
  FormGen gen(f, 17);
  Configuration W = sample_config(gen, p, 1.5);
  DilatonContext ctx(W);

  // B = d xi on a balanced-type solution: Stokes kills the pairing.
  // (flat Kaehler solution: d(e^{-l f} w^{n-1}) = 0 exactly)
  Configuration Wk(standard_kaehler_form(f), TrigForm::zero(f, 2, 1),
                   TrigForm::zero(f, 1, p.msize()), Connection::flat(f, p),
                   1.5);
  DilatonContext ck(Wk);
  TrigForm xi = gen.real_form(1, 1, 4);
  CHECK(std::abs(ck.moment(TrigForm::zero(f, 0, 2), exterior_d(xi))) < 1e-12);

  // moment-action identity: <mu(W), z> = -lambda(z . W)
  TrigForm F = curvature(Connection{W.theta_R(), p});
  TrigForm s = gen.compact_form(0, 1, 3, p);
  TrigForm B = 2.0 * wedge_pair(s, F, p) + exterior_d(gen.real_form(1, 1, 3)) +
               re_part(gen.form(2, 0, 1));
  TangentW zw = infinitesimal_action(W, s, B);
  CHECK(ctx.moment(s, B) == doctest::Approx(-ctx.lambda_ell(zw)).epsilon(1e-9));

  // constant B at omega = lambda omega0: closed form
  double lam = 1.2, ell = 1.5;
  Configuration Wl(lam * standard_kaehler_form(f), TrigForm::zero(f, 2, 1),
                   TrigForm::zero(f, 1, p.msize()), Connection::flat(f, p),
                   ell);
  DilatonContext cl(Wl);
  TrigForm Bc = standard_kaehler_form(f, 1.0);  // constant (1,1)
  // int w0 ^ (lam w0)^{n-1}/(n-1)! e^{-l f}: f = (n/2) log lam constant
  double efl = std::pow(lam, -ell * f.n / 2.0);
  double expect = (ell - 2.0) / (2.0 * cl.M()) * efl * f.n *
                  std::pow(lam, f.n - 1);
  CHECK(cl.moment(TrigForm::zero(f, 0, p.msize()), Bc) ==
        doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("moment map equivariance at tested group elements") {
  TorusFrame f{2};
  PairingSpec p = PairingSpec::trace(2);
  FormGen gen(f, 23);
  Configuration W = sample_config(gen, p, 1.5);
  DilatonContext ctx(W);

  TrigForm F = curvature(Connection{W.theta_R(), p});
  TrigForm s = gen.compact_form(0, 1, 3, p);
  TrigForm B = 2.0 * wedge_pair(s, F, p) + exterior_d(gen.real_form(1, 1, 3));

  // b-shift: tau acts only on b, mu does not see b, Ad is trivial
  Configuration Wb = act_b_shift(W, gen.real_form(2, 1, 3));
  DilatonContext cb(Wb);
  CHECK(cb.moment(s, B) == doctest::Approx(ctx.moment(s, B)).epsilon(1e-12));

  // constant unitary gauge move: theta_R conjugates; the moment pairing is
  // invariant under (s,B) -> (g s g^-1, B)
  Mat u = gen.anti_hermitian(2);
  Mat g = u.exp();
  Configuration Wg = act_const_gauge(W, g);
  DilatonContext cg(Wg);
  TrigForm s_conj(f, 0, 2);
  Mat gi = g.inverse();
  for (auto& [bl, mm] : s.components())
    for (auto& [k, v] : mm) s_conj.add_term(bl, k, Mat(g * v * gi));
  CHECK(cg.moment(s_conj, B) == doctest::Approx(ctx.moment(s, B)).epsilon(1e-10));
}

TEST_CASE("Calabi and Hull-Strominger residuals") {
  TorusFrame f3{3};
  PairingSpec p = PairingSpec::signed_two_block(1, 1);

  // flat fixture: all four residuals vanish to 1e-12
  Configuration hs = flat_hs_fixture(p);
  CalabiResiduals r = hs_residual(hs);
  CHECK(r.hym < 1e-12);
  CHECK(r.f02 < 1e-12);
  CHECK(r.balanced < 1e-12);
  CHECK(r.anomaly < 1e-12);

  // perturbed omega has a positive balanced residual
  FormGen gen(f3, 31);
  Configuration pert = hs;
  pert.omega = hs.omega + 0.1 * gen.real_11_form(1, 2);
  CalabiResiduals rp = hs_residual(pert);
  CHECK(rp.balanced > 1e-6);

  // abelian instanton mode: on the flat torus the delbar-closed trace-free
  // modes are exactly the harmonic (constant) ones - points of the Jacobian
  // of flat line bundles; a generic nonzero mode fails the HYM equation
  TorusFrame f2{2};
  PairingSpec pu = PairingSpec::trace(1);
  TrigForm ahol(f2, 1, 1);
  ahol.add_term({2}, Mode(4, 0), cplx(0.4, 0.1));  // constant dzbar^1
  TrigForm a = ahol + compact_conj(ahol);
  Configuration Wi(standard_kaehler_form(f2), TrigForm::zero(f2, 2, 1), a,
                   Connection::flat(f2, pu), 1.0);
  CalabiResiduals ri = calabi_residual(Wi);
  CHECK(ri.f02 < 1e-12);
  CHECK(ri.hym < 1e-9);

  TrigForm bad(f2, 1, 1);
  Mode k{1, 0, -1, 0};
  bad.add_term({2}, k, cplx(0.4, 0.1));
  Configuration Wb(standard_kaehler_form(f2), TrigForm::zero(f2, 2, 1),
                   bad + compact_conj(bad), Connection::flat(f2, pu), 1.0);
  CHECK(calabi_residual(Wb).hym > 1e-3);
}

TEST_CASE("signature behavior of g_ell (n = 3)") {
  TorusFrame f{3};
  PairingSpec p = PairingSpec::trace(1);
  FormGen gen(f, 41);
  TrigForm omega = standard_kaehler_form(f) + 0.1 * gen.real_11_form(1, 2);
  TrigForm z2 = TrigForm::zero(f, 2, 1);
  TrigForm z1 = TrigForm::zero(f, 1, 1);

  auto block_eigs = [&](double ell) {
    Configuration W(omega, z2, z1, Connection::flat(f, p), ell,
                    VolumeKind::Standard, 6);
    DilatonContext ctx(W);
    // random (omega_dot, b_dot^{1,1}) tangents, a_dot = 0
    std::vector<TangentW> vs;
    for (int i = 0; i < 5; ++i) {
      TangentW v = TangentW::zero(f, p);
      v.omega_dot = gen.real_11_form(1, 2);
      v.b_dot = gen.real_11_form(1, 2);
      vs.push_back(v);
    }
    Eigen::MatrixXd G(vs.size(), vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        G(i, j) = ctx.g_ell(vs[i], vs[j]);
        G(j, i) = G(i, j);
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    return std::make_pair(es.eigenvalues().minCoeff(),
                          es.eigenvalues().maxCoeff());
  };

  // 2 - 2/n = 4/3 < 1.8 < 2: positive definite block
  auto [lo18, hi18] = block_eigs(1.8);
  CHECK(lo18 > 0.0);
  // ell = 2.5 > 2: negative definite block
  auto [lo25, hi25] = block_eigs(2.5);
  CHECK(hi25 < 0.0);
}

TEST_CASE("compact form data") {
  TorusFrame f{2};
  int N = 12;
  PairingSpec p = PairingSpec::trace(2);

  // Kaehler case: H = 0, theta = theta^h = 0, upsilon = 0, omega constant
  HoloData base{TrigForm::zero(f, 3, 1), Connection::flat(f, p)};
  auto h = HermitianReduction::identity(f, N, p);
  TrigForm w0 = standard_kaehler_form(f);
  CompactFormData cfd =
      compact_form_data(w0, TrigForm::zero(f, 2, 1), h, base);
  CHECK(norm_max(cfd.H_R) < 1e-13);  // d^c of a constant form
  CHECK(norm_max(cfd.theta_R.theta) < 1e-12);
  CHECK(norm_max(cfd.W.omega - w0) < 1e-13);
  CHECK(norm_max(cfd.W.b) < 1e-14);
  CHECK(norm_max(cfd.W.a) < 1e-14);

  // round trip through the Chern correspondence
  ChernTriple t = chern_correspondence(cfd.lift, p);
  CHECK(norm_max(t.omega - cfd.W.omega) < 1e-12);
  CHECK(norm_max(t.b - cfd.W.b) < 1e-12);
  CHECK(norm_max(t.a - cfd.W.a) < 1e-12);

  // real-datum invariant dH_R + <F ^ F> = 0 (grid tolerance)
  GridForm FR = curvature_grid(cfd.theta_R.theta);
  GridForm inv = to_grid(exterior_d(cfd.H_R), N) + wedge_pair(FR, FR, p);
  CHECK(norm_max(inv) < 1e-8);

  // nonconstant omega with the matching upsilon: d ups = 2i del omega
  FormGen gen(f, 51);
  TrigForm w = standard_kaehler_form(f) + 0.1 * gen.real_11_form(1, 2);
  // solve d ups = 2i del w in least squares; here just verify the error path
  CHECK_THROWS_AS(
      compact_form_data(w, TrigForm::zero(f, 2, 1), h, base, 1e-10),
      ConstraintViolation);
}
