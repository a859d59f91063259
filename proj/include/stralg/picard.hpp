#pragma once

#include "stralg/cohomology.hpp"
#include "stralg/courant.hpp"

namespace stralg {

// Element (g,tau) of Pic(Q0) for the model given by `base`: g a grid-valued
// gauge transformation, tau a complex 2-form, subject to
//   d tau = CS(g^-1 theta) - CS(theta) - d<g^-1 theta ^ theta>.
struct PicardElement {
  GridForm g;    // 0-form, pointwise invertible
  GridForm tau;  // 2-form
  HoloData base;

  static PicardElement identity(const HoloData& base, int N);
  int resolution() const { return g.resolution(); }
};

// Residual of the defining constraint (grid norm).
double pic_constraint_residual(const PicardElement& p);

// Lie algebra element (s,B) with d(B - 2<s,F_theta>) = 0 (exact trig data).
struct PicLieElement {
  TrigForm s;  // g-valued 0-form
  TrigForm B;  // complex 2-form
};

// Grid-backed Lie element (outputs of the adjoint action live here).
struct PicLieGrid {
  GridForm s;
  GridForm B;
};

PicLieGrid to_grid(const PicLieElement& z, int N);

double lie_invariant_residual(const PicLieElement& z, const HoloData& base);
double lie_invariant_residual(const PicLieGrid& z, const HoloData& base);

// Group law (gg', tau + tau' + <g'^-1 a^g ^ a^{g'}>); the output constraint
// is re-verified to `tol`.
PicardElement pic_compose(const PicardElement& p1, const PicardElement& p2,
                          double tol = 1e-6);
PicardElement pic_inverse(const PicardElement& p);

// Sections of E0 sampled on the grid (the Picard action produces these).
struct GridSection {
  std::vector<GridForm> V;  // 2n components in the complex frame
  GridForm r;
  GridForm xi;
};

GridSection to_grid(const CourantSection& s, int N);
GridSection section_sub(const GridSection& a, const GridSection& b);
double norm_max(const GridSection& s);
GridForm grid_pairing(const GridSection& a, const GridSection& b,
                      const PairingSpec& p);

// The action V + g(r + i_V a^g) + xi + i_V tau - <i_V a^g, a^g> - 2<a^g, r>.
GridSection pic_act(const PicardElement& p, const GridSection& s);
GridSection pic_act(const PicardElement& p, const CourantSection& s);

// Adjoint action (g s, B - <a^g ^ [s,a^g]> - 2<d^theta s ^ a^g>).
PicLieGrid pic_adjoint(const PicardElement& p, const PicLieElement& z);
PicLieGrid pic_adjoint(const PicardElement& p, const PicLieGrid& z);

// Lie bracket ([s0,s1], 2<d^theta s0 ^ d^theta s1>).
PicLieElement lie_bracket(const PicLieElement& z0, const PicLieElement& z1,
                          const HoloData& base);

// Aeppli homomorphism [B^{1,1} - 2<s, F^{1,1}>] and the de Rham variant
// [B - 2<s,F>].
CohomClass aeppli_hom(const PicLieElement& z, const HoloData& base,
                      ExactnessWitness* witness = nullptr);
CohomClass aeppli_hom(const PicLieGrid& z, const HoloData& base,
                      double closed_tol = 1e-7);
CohomClass dr_hom(const PicLieElement& z, const HoloData& base);

// Exponential path g_t = e^{ts}, tau_t = t(B - 2<s,F>) + mu_t with mu_t the
// quadrature of 2<s,F_{theta_u}> + <a_u ^ d^{theta_u} s>.
std::vector<PicardElement> exp_path(const PicLieElement& z,
                                    const HoloData& base, int N,
                                    const std::vector<double>& t_grid,
                                    int quad_order = 8);

struct HamiltonianResult {
  bool member = false;
  double class_norm = 0.0;
  ExactnessWitness witness;  // B^{1,1} - 2<s,F^{1,1}> = del phi + delbar psi
};

HamiltonianResult hamiltonian_member(const PicLieElement& z,
                                     const HoloData& base,
                                     double tol = 1e-10);

}  // namespace stralg
