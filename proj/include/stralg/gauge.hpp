#pragma once

#include "stralg/gridform.hpp"
#include "stralg/trigform.hpp"

namespace stralg {

// Connection on the trivialized principal bundle: a g-valued 1-form,
// block-diagonal per the pairing spec.
struct Connection {
  TrigForm theta;  // g-valued 1-form
  PairingSpec pairing;

  static Connection flat(TorusFrame f, const PairingSpec& p) {
    return Connection{TrigForm::zero(f, 1, p.msize()), p};
  }
};

// Grid-valued connection (gauge transforms and Chern connections live here;
// exact trig-poly exponentials do not exist).
struct GridConnection {
  GridForm theta;
  PairingSpec pairing;
};

// Reduction to the maximal compact subgroup: pointwise positive Hermitian
// block-diagonal matrix field.
struct HermitianReduction {
  GridForm h;  // 0-form
  PairingSpec pairing;

  static HermitianReduction identity(TorusFrame f, int N,
                                     const PairingSpec& p) {
    return HermitianReduction{
        GridForm::constant(f, N, Mat::Identity(p.msize(), p.msize())), p};
  }
  // h = exp(u) for a Hermitian trig field u (sampled on the grid).
  static HermitianReduction from_exponent(const TrigForm& u, int N,
                                          const PairingSpec& p);
};

// Entrywise-conjugate + transpose on values, form conjugation on blades
// (the dagger pairing a (0,1)-form with its (1,0) counterpart).
inline TrigForm adjoint_form(const TrigForm& a) { return -compact_conj(a); }
inline GridForm adjoint_form(const GridForm& a) {
  return -1.0 * compact_conj(a);
}

// F_theta = d theta + theta ^ theta.
TrigForm curvature(const Connection& c);
GridForm curvature_grid(const GridForm& theta);

// d^theta s = ds + [theta ^ s].
TrigForm covariant_d(const TrigForm& theta, const TrigForm& s);
GridForm covariant_d(const GridForm& theta, const GridForm& s);

// CS(theta') - CS(theta) - d<theta' ^ theta> as a basic scalar 3-form:
// 2<a,F_theta> + <a,d^theta a> + (1/3)<a,[a,a]>, a = theta' - theta.
TrigForm cs_difference(const Connection& theta_prime, const Connection& theta);
GridForm cs_difference(const GridForm& theta_prime, const GridForm& theta,
                       const PairingSpec& p);

// Gauge action g.theta = g theta g^-1 - (dg) g^-1 and a^g = g^-1.theta - theta.
GridForm gauge_transform(const GridForm& g, const GridForm& theta);
GridForm gauge_a(const GridForm& g, const GridForm& theta);
// Grid-valued gauge transformation g = exp(s) for a trig algebra field s.
GridForm gauge_exp(const TrigForm& s, int N);

// Chern connection of the reduction h for the holomorphic structure given
// by the (0,1)-connection form theta01:
//   theta^h = theta01 + h^-1 del h - h^-1 (theta01)^dagger h.
// Pre: theta01 integrable (F^{0,2} <= int_tol); posterior residual check
// F_h^{0,2}, F_h^{2,0} <= post_tol.
GridConnection chern_connection(const HermitianReduction& h,
                                const TrigForm& theta01,
                                double int_tol = 1e-9,
                                double post_tol = 1e-8);

// Path data for the Bott-Chern secondary class along the exponential path
// h_t = e^{t iu} h0 with h1 = e^{iu} h0.
struct BottChernPath {
  GridForm iu;  // X = iu, Hermitian w.r.t. h0
  std::vector<double> nodes, weights;
};

// R~(h1,h0) = -2i int_0^1 <h'_t h_t^-1, F_{h_t}> dt by Gauss-Legendre
// quadrature; real (1,1) grid form, flagged approximate.
GridForm bott_chern_secondary(const HermitianReduction& h1,
                              const HermitianReduction& h0,
                              const TrigForm& theta01, int quad_order = 8);

// Residual of 2i del R~(h',h) + CS(theta^{h'}) - CS(theta^h)
// - d<theta^{h'} ^ theta^h> = d B^{2,0} after the best mode-wise B^{2,0}.
double transgression_identity_residual(const HermitianReduction& h_prime,
                                       const HermitianReduction& h,
                                       const TrigForm& theta01,
                                       int quad_order = 8);

// gauge-transformed reduction (g^dagger)^-1 h g^-1 (metric pushforward).
GridForm transform_reduction(const GridForm& g, const GridForm& h);

}  // namespace stralg
