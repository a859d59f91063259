#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stralg/gridform.hpp"
#include "stralg/io.hpp"
#include "stralg/random_forms.hpp"
#include "stralg/vector_field.hpp"

using namespace stralg;

namespace {

TrigForm dx(TorusFrame f, int j) {
  TrigForm r(f, 1, 1);
  Mat one = Mat::Ones(1, 1);
  add_real_basis_term(r, {j}, Mode(f.dim(), 0), one);
  return r;
}

TrigForm wave(TorusFrame f, const Mode& k) {
  TrigForm r(f, 0, 1);
  r.add_term({}, k, cplx(1.0, 0.0));
  return r;
}

}  // namespace

TEST_CASE("wedge basics") {
  TorusFrame f{2};
  auto d1 = dx(f, 0), d2 = dx(f, 1);
  auto w = wedge(d1, d2);

  // dx1 ^ dx2 against the same form built directly in the real basis
  TrigForm expect(f, 2, 1);
  add_real_basis_term(expect, {0, 1}, Mode(4, 0), Mat::Ones(1, 1));
  CHECK(norm_max(w - expect) < 1e-15);

  // alpha ^ alpha = 0 for scalar odd degree
  FormGen gen(f, 7);
  auto a = gen.form(1, 2, 5);
  CHECK(norm_max(wedge(a, a)) < 1e-13);
  auto a3 = gen.form(3, 2, 5);
  CHECK(norm_max(wedge(a3, a3)) < 1e-13);

  // graded commutativity on random scalar forms
  for (int i = 0; i < 5; ++i) {
    auto p = gen.form(1, 2, 4);
    auto q = gen.form(2, 2, 4);
    CHECK(norm_max(wedge(p, q) - wedge(q, p)) < 1e-12);  // (-1)^{1*2} = +1
    auto r = gen.form(1, 2, 4);
    CHECK(norm_max(wedge(p, r) + wedge(r, p)) < 1e-12);
  }
}

TEST_CASE("exterior derivative") {
  TorusFrame f{2};
  CHECK(norm_max(exterior_d(TrigForm::constant(f, cplx(3.0, 1.0)))) == 0.0);

  // d e^{i<k,x>} = i sum k_j dx^j e^{i<k,x>}
  Mode k{1, -2, 0, 3};
  auto g = wave(f, k);
  auto dg = exterior_d(g);
  TrigForm expect(f, 1, 1);
  for (int j = 0; j < 4; ++j) {
    if (k[j] == 0) continue;
    Mat v(1, 1);
    v(0, 0) = cplx(0.0, double(k[j]));
    add_real_basis_term(expect, {j}, k, v);
  }
  CHECK(norm_max(dg - expect) < 1e-14);

  FormGen gen(f, 11);
  for (int i = 0; i < 5; ++i) {
    auto a = gen.form(1, 2, 6);
    CHECK(norm_max(exterior_d(exterior_d(a))) < 1e-12);
    CHECK(norm_max(del(del(a))) < 1e-12);
    CHECK(norm_max(delbar(delbar(a))) < 1e-12);
    CHECK(norm_max(del(delbar(a)) + delbar(del(a))) < 1e-12);
    // Leibniz
    auto b = gen.form(1, 2, 6);
    auto lhs = exterior_d(wedge(a, b));
    auto rhs = wedge(exterior_d(a), b) - wedge(a, exterior_d(b));
    CHECK(norm_max(lhs - rhs) < 1e-12);
  }

  // d^c omega - d(i omega) = -2i del(omega) on random real (1,1)
  for (int i = 0; i < 3; ++i) {
    auto w = gen.real_11_form(2, 5);
    auto lhs = dc(w) - exterior_d(cplx(0, 1) * w);
    auto rhs = cplx(0, -2) * del(w);
    CHECK(norm_max(lhs - rhs) < 1e-12);
    CHECK(is_real(dc(w)));
  }
}

TEST_CASE("integration and Stokes") {
  for (int n : {1, 2, 3}) {
    TorusFrame f{n};
    auto w0 = standard_kaehler_form(f);
    auto vol = wedge_power_over_factorial(w0, n);
    CHECK(integrate(vol).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(integrate(vol).imag()) < 1e-14);

    // oscillatory top mode integrates to zero
    TrigForm osc = vol;
    Mode k(f.dim(), 0);
    k[0] = 1;
    osc = wedge(wave(f, k), vol);
    CHECK(std::abs(integrate(osc)) < 1e-14);

    // Stokes
    FormGen gen(f, 3);
    for (int i = 0; i < 4; ++i) {
      auto a = gen.form(2 * n - 1, 2, 6);
      CHECK(std::abs(integrate(exterior_d(a))) < 1e-13);
    }
  }
}

TEST_CASE("(p,q) projections and J") {
  TorusFrame f{3};
  FormGen gen(f, 23);
  auto a = gen.form(2, 2, 8);
  TrigForm sum = TrigForm::zero(f, 2, 1);
  for (int p = 0; p <= 2; ++p) sum += proj_pq(a, p, 2 - p);
  CHECK(norm_max(sum - a) < 1e-14);
  // projections are idempotent and orthogonal
  auto p11 = proj_pq(a, 1, 1);
  CHECK(norm_max(proj_pq(p11, 1, 1) - p11) < 1e-14);
  CHECK(norm_max(proj_pq(proj_pq(a, 2, 0), 2, 0) - proj_pq(a, 2, 0)) < 1e-14);

  // conj intertwines (p,q) <-> (q,p)
  CHECK(norm_max(conj_form(proj_pq(a, 2, 0)) - proj_pq(conj_form(a), 0, 2)) <
        1e-14);

  // J^2 = -1 on 1-forms
  auto x = gen.form(1, 2, 6);
  CHECK(norm_max(j_form(j_form(x)) + x) < 1e-14);
}

TEST_CASE("grid round trip is Nyquist-exact") {
  TorusFrame f{2};
  FormGen gen(f, 5);
  auto a = gen.form(2, 3, 10);  // max |k| = 3, N = 8 > 6
  auto g = to_grid(a, 8);
  auto back = from_grid(g);
  CHECK(norm_max(back - a) < 1e-12 * (1.0 + norm_max(a)));

  // spectral derivative on the grid agrees with the exact one
  auto da = exterior_d(a);
  auto dg = exterior_d(g);
  CHECK(norm_max(from_grid(dg) - da) < 1e-11 * (1.0 + norm_max(da)));
}

TEST_CASE("dilaton function") {
  TorusFrame f{2};
  int N = 8;
  auto w0 = standard_kaehler_form(f);
  auto mu1 = GridForm::constant(f, N, Mat::Ones(1, 1));

  auto fw = dilaton_function(to_grid(w0, N), mu1);
  CHECK(norm_max(fw) < 1e-13);

  double lam = 1.7;
  auto fl = dilaton_function(to_grid(lam * w0, N), mu1);
  const GridData* gd = fl.find({});
  REQUIRE(gd != nullptr);
  for (auto& v : gd->v)
    CHECK(v.real() == doctest::Approx(f.n / 2.0 * std::log(lam)).epsilon(1e-12));

  // degenerate omega errors out
  TrigForm degen(f, 2, 1);
  degen.add_term({0, f.n + 0}, Mode(f.dim(), 0), cplx(0, 0.5));  // rank 1
  CHECK_THROWS_AS(dilaton_function(to_grid(degen, N), mu1), PositivityError);
}

TEST_CASE("lambda contraction") {
  TorusFrame f{3};
  int N = 4;
  auto w0g = to_grid(standard_kaehler_form(f), N);
  auto lam = lambda_contraction(w0g, w0g);
  const GridData* gd = lam.find({});
  REQUIRE(gd != nullptr);
  for (auto& v : gd->v) CHECK(v.real() == doctest::Approx(3.0).epsilon(1e-12));

  // Lambda_{omega0} ((i/2) dz^1 ^ dzbar^1) = 1
  TrigForm a(f, 2, 1);
  a.add_term({0, 3}, Mode(6, 0), cplx(0.0, 0.5));
  auto l2 = lambda_contraction(w0g, to_grid(a, N));
  CHECK(l2.find({})->v[0].real() == doctest::Approx(1.0).epsilon(1e-12));

  // primitive part of omega vanishes
  CHECK(norm_max(primitive_part(w0g, w0g)) < 1e-13);
}

TEST_CASE("errors: support cap and frame mismatch") {
  TorusFrame small{1, 8};  // tiny mode cap
  FormGen gen(small, 2);
  TrigForm a(small, 0, 1);
  for (int i = -4; i <= 4; ++i) {
    Mode k{i, 0};
    if (static_cast<int>(a.support_size()) < 8) {
      try {
        a.add_term({}, k, cplx(1.0, 0.0));
      } catch (const SupportOverflow&) {
      }
    }
  }
  TrigForm b = a;
  CHECK_THROWS_AS(wedge(wedge(a, b), wedge(a, b)), SupportOverflow);

  TorusFrame other{2};
  CHECK_THROWS_AS(wedge(a, TrigForm::constant(other, cplx(1, 0))),
                  FrameMismatch);
}

TEST_CASE("vector fields and contraction") {
  TorusFrame f{2};
  // i_{d/dx^1} dx^1 = 1, i_{d/dx^1} dx^2 = 0
  auto v = VectorField::coordinate_real(f, 0);
  CHECK(norm_max(contract(v, dx(f, 0)) - TrigForm::constant(f, cplx(1, 0))) <
        1e-14);
  CHECK(norm_max(contract(v, dx(f, 1))) < 1e-14);

  // Cartan: L_V d = d L_V
  FormGen gen(f, 31);
  auto w = gen.vector_field(1, 4);
  auto a = gen.form(1, 1, 4);
  CHECK(norm_max(lie_derivative(w, exterior_d(a)) -
                 exterior_d(lie_derivative(w, a))) < 1e-11);

  // [V,W] f = V(W f) - W(V f)
  auto u = gen.vector_field(1, 4);
  auto fn = gen.form(0, 1, 4);
  auto lhs = apply_vf(vf_bracket(w, u), fn);
  auto rhs = apply_vf(w, apply_vf(u, fn)) - apply_vf(u, apply_vf(w, fn));
  CHECK(norm_max(lhs - rhs) < 1e-11);
}

TEST_CASE("json round trip") {
  TorusFrame f{2};
  FormGen gen(f, 77);
  auto a = gen.form(2, 2, 6, 2);
  auto j = to_json(a);
  auto b = trigform_from_json(j);
  CHECK(norm_max(a - b) < 1e-15);

  auto g = to_grid(gen.form(1, 1, 3), 4);
  auto jg = to_json(g);
  auto gb = gridform_from_json(jg);
  CHECK(norm_max(g - gb) < 1e-15);
}

TEST_CASE("weighted integration") {
  TorusFrame f{2};
  auto w0 = standard_kaehler_form(f);
  auto vol = wedge_power_over_factorial(w0, f.n);
  auto weight = GridForm::constant(f, 8, Mat::Ones(1, 1) * 2.5);
  CHECK(integrate_weighted(vol, weight).real() ==
        doctest::Approx(2.5).epsilon(1e-13));
}
