#include "stralg/cohomology.hpp"

#include <functional>
#include <set>

namespace stralg {

namespace {

std::vector<Blade> blades_of_bidegree(int n, int p, int q) {
  std::vector<Blade> out;
  if (p < 0 || q < 0 || p > n || q > n) return out;
  std::vector<Blade> zs, zbs;
  std::function<void(int, int, Blade&, std::vector<Blade>&, int)> rec =
      [&](int start, int todo, Blade& cur, std::vector<Blade>& dst, int hi) {
        if (todo == 0) {
          dst.push_back(cur);
          return;
        }
        for (int i = start; i < hi; ++i) {
          cur.push_back(i);
          rec(i + 1, todo - 1, cur, dst, hi);
          cur.pop_back();
        }
      };
  Blade cur;
  rec(0, p, cur, zs, n);
  rec(n, q, cur, zbs, 2 * n);
  for (auto& a : zs)
    for (auto& b : zbs) {
      Blade m = a;
      m.insert(m.end(), b.begin(), b.end());
      out.push_back(m);
    }
  return out;
}

struct FlavorSpec {
  std::vector<Blade> target;
  // (source blades, operator): op 0 = d, 1 = delbar, 2 = del delbar, 3 = del
  std::vector<std::pair<std::vector<Blade>, int>> sources;
};

TrigForm apply_op(const TrigForm& a, int op) {
  switch (op) {
    case 0:
      return exterior_d(a);
    case 1:
      return delbar(a);
    case 2:
      return del(delbar(a));
    default:
      return del(a);
  }
}

FlavorSpec flavor_spec(CohomFlavor fl, int n, int degree, int p, int q) {
  FlavorSpec s;
  switch (fl) {
    case CohomFlavor::DeRham: {
      for (int pp = 0; pp <= degree; ++pp) {
        auto b = blades_of_bidegree(n, pp, degree - pp);
        s.target.insert(s.target.end(), b.begin(), b.end());
      }
      std::vector<Blade> src;
      for (int pp = 0; pp <= degree - 1; ++pp) {
        auto b = blades_of_bidegree(n, pp, degree - 1 - pp);
        src.insert(src.end(), b.begin(), b.end());
      }
      s.sources.push_back({src, 0});
      break;
    }
    case CohomFlavor::Dolbeault:
      s.target = blades_of_bidegree(n, p, q);
      s.sources.push_back({blades_of_bidegree(n, p, q - 1), 1});
      break;
    case CohomFlavor::BottChern:
      s.target = blades_of_bidegree(n, p, q);
      s.sources.push_back({blades_of_bidegree(n, p - 1, q - 1), 2});
      break;
    case CohomFlavor::Aeppli:
      s.target = blades_of_bidegree(n, p, q);
      s.sources.push_back({blades_of_bidegree(n, p - 1, q), 3});
      s.sources.push_back({blades_of_bidegree(n, p, q - 1), 1});
      break;
    case CohomFlavor::DelQuotient: {
      auto b30 = blades_of_bidegree(n, 3, 0);
      auto b21 = blades_of_bidegree(n, 2, 1);
      s.target = b30;
      s.target.insert(s.target.end(), b21.begin(), b21.end());
      s.sources.push_back({blades_of_bidegree(n, 2, 0), 0});
      break;
    }
  }
  return s;
}

double closedness_residual(const TrigForm& a, CohomFlavor fl) {
  switch (fl) {
    case CohomFlavor::DeRham:
    case CohomFlavor::BottChern:
    case CohomFlavor::DelQuotient:
      return norm_max(exterior_d(a));
    case CohomFlavor::Dolbeault:
      return norm_max(delbar(a));
    case CohomFlavor::Aeppli:
      return norm_max(del(delbar(a)));
  }
  return 0.0;
}

Eigen::MatrixXcd mode_operator(const FlavorSpec& s, const TorusFrame& f,
                               const Mode& k) {
  std::size_t cols = 0;
  for (auto& [src, op] : s.sources) cols += src.size();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(
      static_cast<long>(s.target.size()), static_cast<long>(cols));
  long col = 0;
  for (auto& [src, op] : s.sources) {
    for (auto& b : src) {
      TrigForm e(f, static_cast<int>(b.size()), 1);
      e.add_term(b, k, cplx(1.0, 0.0));
      TrigForm im = apply_op(e, op);
      for (std::size_t r = 0; r < s.target.size(); ++r) {
        auto it = im.components().find(s.target[r]);
        if (it == im.components().end()) continue;
        auto kit = it->second.find(k);
        if (kit == it->second.end()) continue;
        M(static_cast<long>(r), col) = kit->second(0, 0);
      }
      ++col;
    }
  }
  return M;
}

}  // namespace

CohomClass reduce_class(const TrigForm& a, CohomFlavor fl, double closed_tol,
                        ExactnessWitness* witness) {
  if (a.msize() != 1) throw Error("reduce_class: scalar-valued forms only");
  const TorusFrame& f = a.frame();
  int n = f.n;
  int degree = a.degree();
  int p = -1, q = -1;
  if (fl == CohomFlavor::Dolbeault || fl == CohomFlavor::BottChern ||
      fl == CohomFlavor::Aeppli) {
    for (auto& [b, mm] : a.components()) {
      int bp = blade_p_degree(b, n);
      if (p < 0) {
        p = bp;
        q = degree - bp;
      } else if (bp != p) {
        throw DegreeError("reduce_class: mixed bidegree input");
      }
    }
    if (p < 0) {  // zero form: adopt balanced bidegree
      p = degree / 2;
      q = degree - p;
    }
  }

  double cres = closedness_residual(a, fl);
  if (cres > closed_tol * (1.0 + norm_max(a)))
    throw ConstraintViolation(
        "reduce_class: closedness condition violated (residual " +
        std::to_string(cres) + ")");

  FlavorSpec spec = flavor_spec(fl, n, degree, p, q);

  std::set<Mode> modes;
  for (auto& [b, mm] : a.components())
    for (auto& [k, v] : mm) modes.insert(k);

  TrigForm rep(f, degree, 1);
  rep.set_approximate(a.approximate());
  int phi_deg =
      fl == CohomFlavor::BottChern ? std::max(degree - 2, 0) : std::max(degree - 1, 0);
  TrigForm wphi(f, phi_deg, 1);
  TrigForm wpsi(f, std::max(degree - 1, 0), 1);

  for (const Mode& k : modes) {
    Eigen::VectorXcd alpha =
        Eigen::VectorXcd::Zero(static_cast<long>(spec.target.size()));
    for (std::size_t r = 0; r < spec.target.size(); ++r) {
      auto it = a.components().find(spec.target[r]);
      if (it == a.components().end()) continue;
      auto kit = it->second.find(k);
      if (kit == it->second.end()) continue;
      alpha(static_cast<long>(r)) = kit->second(0, 0);
    }
    Eigen::MatrixXcd M = mode_operator(spec, f, k);
    Eigen::VectorXcd coeff = Eigen::VectorXcd::Zero(M.cols());
    if (M.cols() > 0 && M.norm() > 0) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
          M, Eigen::ComputeThinU | Eigen::ComputeThinV);
      svd.setThreshold(1e-9);
      coeff = svd.solve(alpha);
      alpha -= M * coeff;
    }
    for (std::size_t r = 0; r < spec.target.size(); ++r)
      if (alpha(static_cast<long>(r)) != 0.0)
        rep.add_term(spec.target[r], k, alpha(static_cast<long>(r)));
    if (witness) {
      long col = 0;
      for (std::size_t si = 0; si < spec.sources.size(); ++si) {
        for (auto& b : spec.sources[si].first) {
          cplx c = coeff(col++);
          if (c != 0.0) {
            if (si == 0)
              wphi.add_term(b, k, c);
            else
              wpsi.add_term(b, k, c);
          }
        }
      }
    }
  }
  rep.prune(0.0);
  CohomClass c;
  c.flavor = fl;
  c.degree = degree;
  c.p = p;
  c.q = q;
  c.rep = rep;
  c.real = is_real(rep, 1e-10);
  if (witness) {
    witness->phi = wphi;
    witness->psi = wpsi;
  }
  return c;
}

bool is_zero_class(const CohomClass& c, double tol) {
  return norm_max(c.rep) <= tol;
}

cplx duality_pairing(const CohomClass& a, const CohomClass& b) {
  int n = a.rep.frame().n;
  if (a.rep.degree() + b.rep.degree() != 2 * n)
    throw DegreeError("duality_pairing: degrees are not complementary");
  if (a.p >= 0 && b.p >= 0 && (a.p + b.p != n || a.q + b.q != n))
    throw DegreeError("duality_pairing: bidegrees are not complementary");
  return integrate(wedge(a.rep, b.rep));
}

CohomClass del_connecting(const CohomClass& aeppli11) {
  if (aeppli11.flavor != CohomFlavor::Aeppli)
    throw Error("del_connecting: expects an Aeppli class");
  TrigForm da = del(aeppli11.rep);
  return reduce_class(da, CohomFlavor::DelQuotient, 1e-9);
}

TrigForm reduce_by_d_image(const TrigForm& a, int src_p, int src_q) {
  const TorusFrame& f = a.frame();
  int n = f.n;
  FlavorSpec spec;
  for (int pp = 0; pp <= a.degree(); ++pp) {
    auto b = blades_of_bidegree(n, pp, a.degree() - pp);
    spec.target.insert(spec.target.end(), b.begin(), b.end());
  }
  spec.sources.push_back({blades_of_bidegree(n, src_p, src_q), 0});

  std::set<Mode> modes;
  for (auto& [b, mm] : a.components())
    for (auto& [k, v] : mm) modes.insert(k);

  TrigForm rep(f, a.degree(), 1);
  rep.set_approximate(a.approximate());
  for (const Mode& k : modes) {
    Eigen::VectorXcd alpha =
        Eigen::VectorXcd::Zero(static_cast<long>(spec.target.size()));
    for (std::size_t r = 0; r < spec.target.size(); ++r) {
      auto it = a.components().find(spec.target[r]);
      if (it == a.components().end()) continue;
      auto kit = it->second.find(k);
      if (kit == it->second.end()) continue;
      alpha(static_cast<long>(r)) = kit->second(0, 0);
    }
    Eigen::MatrixXcd M = mode_operator(spec, f, k);
    if (M.cols() > 0 && M.norm() > 0) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
          M, Eigen::ComputeThinU | Eigen::ComputeThinV);
      svd.setThreshold(1e-9);
      alpha -= M * svd.solve(alpha);
    }
    for (std::size_t r = 0; r < spec.target.size(); ++r)
      if (alpha(static_cast<long>(r)) != 0.0)
        rep.add_term(spec.target[r], k, alpha(static_cast<long>(r)));
  }
  rep.prune(0.0);
  return rep;
}

int constant_cohomology_dimension(CohomFlavor fl, int n, int p, int q) {
  TorusFrame f{n};
  FlavorSpec spec = flavor_spec(fl, n, p + q, p, q);
  Mode zero(f.dim(), 0);
  Eigen::MatrixXcd M = mode_operator(spec, f, zero);
  long rank = 0;
  if (M.cols() > 0 && M.norm() > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    svd.setThreshold(1e-9);
    rank = svd.rank();
  }
  // all constants are closed for every flavor
  return static_cast<int>(spec.target.size()) - static_cast<int>(rank);
}

}  // namespace stralg
