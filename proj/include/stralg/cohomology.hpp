#pragma once

#include "stralg/trigform.hpp"

namespace stralg {

enum class CohomFlavor { DeRham, Dolbeault, BottChern, Aeppli, DelQuotient };

// A cohomology class with its canonical (minimal-norm-per-mode)
// representative. DelQuotient models H^1(Omega^{2,0}_cl) as
// Ker d on Omega^{3,0+2,1} modulo d Omega^{2,0}.
struct CohomClass {
  CohomFlavor flavor = CohomFlavor::DeRham;
  int degree = 0;
  int p = -1, q = -1;  // bidegree where applicable
  TrigForm rep;
  bool real = false;
};

// Witness of the exact part subtracted during reduction. For Aeppli the
// exact part is del(phi) + delbar(psi); for the other flavors only `phi`
// is used (d phi, delbar phi, del delbar phi, d phi respectively).
struct ExactnessWitness {
  TrigForm phi;
  TrigForm psi;
};

// Verifies the flavor's closedness condition, then subtracts the
// least-squares exact part independently per Fourier mode.
CohomClass reduce_class(const TrigForm& a, CohomFlavor flavor,
                        double closed_tol = 1e-10,
                        ExactnessWitness* witness = nullptr);

bool is_zero_class(const CohomClass& c, double tol = 1e-10);

// Integral pairing between complementary bidegrees, e.g. Aeppli (1,1)
// against Bott-Chern (n-1,n-1); representative-independent.
cplx duality_pairing(const CohomClass& a, const CohomClass& b);

// Connecting map H^{1,1}_A -> H^1(Omega^{2,0}_cl) induced by del.
CohomClass del_connecting(const CohomClass& aeppli11);

// Dimension of the constant-mode cohomology, computed by the same
// linear-algebra reduction (rank of the exactness operator on constants).
int constant_cohomology_dimension(CohomFlavor flavor, int n, int p, int q);

// Least-squares removal of d(Omega^{src_p,src_q}) from `a`, independently
// per Fourier mode; returns the residual form.
TrigForm reduce_by_d_image(const TrigForm& a, int src_p, int src_q);

}  // namespace stralg
