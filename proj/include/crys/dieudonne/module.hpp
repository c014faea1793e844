#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crys/dieudonne/ring.hpp"
#include "crys/dieudonne/witt_matrix.hpp"

namespace crys {

/// Finite-length module over the Dieudonne ring, presented as
/// sum_i W_N / p^{e_i} on generators g_i together with the images F(g_j), V(g_j)
/// as columns of `frobenius` and `verschiebung`. F acts sigma-semilinearly and
/// V sigma^{-1}-semilinearly.
class DieudonneModule {
public:
  DieudonneModule(WittRingPtr ring, std::vector<int> exponents, WittMatrix frobenius,
                  WittMatrix verschiebung);

  const WittRingPtr &ring() const { return ring_; }
  const std::vector<int> &exponents() const { return exponents_; }
  const WittMatrix &frobenius() const { return frobenius_; }
  const WittMatrix &verschiebung() const { return verschiebung_; }
  int num_generators() const { return static_cast<int>(exponents_.size()); }

  /// Reduces coordinate i modulo p^{e_i}.
  std::vector<WittVector> normalize(std::vector<WittVector> v) const;
  std::vector<WittVector> apply_frobenius(const std::vector<WittVector> &v) const;
  std::vector<WittVector> apply_verschiebung(const std::vector<WittVector> &v) const;
  std::vector<WittVector> apply(const DieudonneElement &x, const std::vector<WittVector> &v) const;
  std::vector<WittVector> generator(int i) const;

  /// Invariant factors of the underlying W_N-module, via local Smith reduction.
  std::vector<int> invariant_exponents() const;

  DieudonneModule direct_sum(const DieudonneModule &o) const;

private:
  WittRingPtr ring_;
  std::vector<int> exponents_;
  WittMatrix frobenius_, verschiebung_;
};

struct AxiomReport {
  bool pass = true;
  std::string witness;
};

/// Checks that F and V preserve the relations and that FV = VF = p on a
/// spanning set, including non-fixed scalar multiples of each generator.
AxiomReport check_dieudonne_axioms(const DieudonneModule &m);

int w_length(const DieudonneModule &m);

/// D_n^m = D / (D F^m + D V^n), on generators V^{n-1}, ..., V, 1, F, ..., F^{m-1}.
/// Requires N >= m + n.
DieudonneModule quotient_module(int m, int n, const WittRingPtr &ring);

/// Length of D_n^m from the Smith reduction of its presentation on the
/// monomials V^L .. F^L, independent of the closed-form generators.
int presentation_length(int m, int n, const WittRingPtr &ring);

/// Rebuilds at truncation N + 1 and compares exponents and F/V matrices.
bool quotient_module_stable(int m, int n, const WittRingPtr &ring);

/// Free module of rank h with sigma-semilinear F given by a matrix.
struct PDivisibleModule {
  WittMatrix frobenius;
  int height() const { return frobenius.rows(); }
  /// Elementary exponents of coker F; pD in F(D) means all are <= 1.
  std::vector<int> frobenius_cokernel() const { return cokernel_exponents(frobenius); }
  bool satisfies_pd_in_fd() const;
};

} // namespace crys
