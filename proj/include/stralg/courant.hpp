#pragma once

#include "stralg/gauge.hpp"
#include "stralg/vector_field.hpp"

namespace stralg {

// Classification data of the smooth complex string algebroid model E0:
// a complex 3-form H_c and a connection theta_c subject to the anomaly
// constraint dH_c + <F ^ F> = 0.
struct CourantData {
  TrigForm H;
  Connection theta;

  double anomaly_residual() const;
  void require_anomaly(double tol = 1e-9) const;
};

// Section V + r + xi of E0.
struct CourantSection {
  VectorField V;
  TrigForm r;   // g-valued 0-form
  TrigForm xi;  // complex 1-form

  static CourantSection zero(TorusFrame f, const PairingSpec& p) {
    return CourantSection{VectorField(f), TrigForm::zero(f, 0, p.msize()),
                          TrigForm::zero(f, 1, 1)};
  }
  CourantSection operator+(const CourantSection& o) const;
  CourantSection operator-(const CourantSection& o) const;
  CourantSection scaled(const TrigForm& phi) const;  // 0-form multiple
};

double norm_max(const CourantSection& s);

// Lifting data (gamma, beta) of T^{0,1}X to E0.
struct Lifting {
  TrigForm gamma;  // degree 2, (1,1)+(0,2)
  TrigForm beta;   // g-valued (0,1)-form
};

// Holomorphic model data (P, H, theta): H of type (3,0)+(2,1), F^{0,2} = 0,
// dH + <F ^ F> = 0.
struct HoloData {
  TrigForm H;
  Connection theta;

  double anomaly_residual() const;
  double f02_residual() const;
};

// Symmetric bilinear pairing (polarized): <s1,s2> = (xi1(V2)+xi2(V1))/2
// + <r1,r2>; returns a scalar 0-form.
TrigForm e0_pairing(const CourantSection& s1, const CourantSection& s2,
                    const PairingSpec& p);

// The Dorfman bracket of the model E0.
CourantSection e0_bracket(const CourantSection& s1, const CourantSection& s2,
                          const CourantData& data);

struct AxiomReport {
  double d1 = 0, d2 = 0, d3 = 0, d4 = 0, d5 = 0;
  double max() const {
    return std::max({d1, d2, d3, d4, d5});
  }
};

// Max residuals of the Courant axioms (D1)-(D5) over the given sections
// (consumed in consecutive triples) and test functions.
AxiomReport axioms_residual(const CourantData& data,
                            const std::vector<CourantSection>& sections,
                            const std::vector<TrigForm>& test_functions);

// The orthogonal (gamma,beta)-automorphism of E0.
CourantSection gb_action(const TrigForm& gamma, const TrigForm& beta,
                         const CourantSection& s, const PairingSpec& p);

// Twisted three-form H'_c of the (gamma,beta)-shift.
TrigForm twisted_h(const TrigForm& gamma, const TrigForm& beta,
                   const CourantData& data);

// Residual norms of the two lifting equations: the (1,2)+(0,3) part of the
// twisted H and F^{0,2} + delbar^theta beta + [beta,beta]/2.
std::pair<double, double> lifting_check(const Lifting& L,
                                        const CourantData& data);

// Reduction by a valid lifting: the representative
// (P_L, H^{3,0+2,1} + del gamma^{1,1} - 2<beta, F^{2,0}>, theta + beta).
HoloData reduce_lifting(const Lifting& L, const CourantData& data,
                        double tol = 1e-9);

// Chern correspondence triple (omega, b, a).
struct ChernTriple {
  TrigForm omega;  // real (1,1)
  TrigForm b;      // real 2-form
  TrigForm a;      // k-valued (compact-real) 1-form
};

ChernTriple chern_correspondence(const Lifting& L, const PairingSpec& p);
// Inverse affine map: L = (-gamma,-beta) T^{0,1} with
// gamma = -i omega + b^{1,1+0,2} + <a^{0,1} ^ a^{1,0}>, beta = a^{0,1}.
Lifting lifting_from_chern(const ChernTriple& t, const PairingSpec& p);

}  // namespace stralg
