#pragma once

#include <functional>
#include <random>

#include "stralg/trigform.hpp"
#include "stralg/vector_field.hpp"

namespace stralg {

// Seeded generators for property tests and verification suites. All
// randomness flows through an explicit engine so reports can log the seed.
class FormGen {
 public:
  FormGen(TorusFrame f, std::uint64_t seed) : frame_(f), rng_(seed) {}

  TorusFrame frame() const { return frame_; }
  std::mt19937_64& engine() { return rng_; }

  double uniform(double lo, double hi);
  cplx scalar();
  Mode random_mode(int kmax);
  Mat matrix(int m);
  Mat hermitian(int m);
  Mat anti_hermitian(int m);
  Mat block_diagonal(const PairingSpec& p,
                     const std::function<Mat(int)>& block);

  // Complex scalar- or matrix-valued form, `terms` random modes, |k| <= kmax.
  TrigForm form(int degree, int kmax, int terms, int m = 1);
  // Real scalar form (conjugation-invariant).
  TrigForm real_form(int degree, int kmax, int terms);
  // Real (1,1)-form.
  TrigForm real_11_form(int kmax, int terms);
  // k-valued (block anti-hermitian, compact-real) p-form.
  TrigForm compact_form(int degree, int kmax, int terms, const PairingSpec& p);
  // g-valued (block, no reality) p-form.
  TrigForm algebra_form(int degree, int kmax, int terms, const PairingSpec& p);
  VectorField vector_field(int kmax, int terms);

 private:
  TorusFrame frame_;
  std::mt19937_64 rng_;
};

}  // namespace stralg
