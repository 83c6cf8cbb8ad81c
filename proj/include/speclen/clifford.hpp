#pragma once

#include <array>
#include <vector>

#include "speclen/matrix.hpp"

namespace speclen {

/** Tolerance for algebraic identities between small-integer-valued matrices. */
inline constexpr double kAlgebraTol = 1e-12;

/**
 * An ordered set of d x d complex matrices obeying {g^a, g^b} = 2 eta^{ab} I_d
 * for the diagonal flat metric eta given by `signature`.
 */
struct CliffordRep {
  std::vector<CMatrix> generators;
  std::vector<int> signature;  // diagonal entries of eta, each +1 or -1
  int dimension = 0;           // matrix size d
};

/** Max over (a, b) of the entrywise anticommutator residual |{g^a, g^b} - 2 eta^{ab} I|. */
double clifford_residual(const CliffordRep& rep);

/** Validate sizes, signature entries, and the anticommutation residual; throws on violation. */
CliffordRep make_clifford_rep(std::vector<CMatrix> generators, std::vector<int> signature);

/** The Pauli matrices (sigma_x, sigma_y, sigma_z). */
std::array<CMatrix, 3> pauli_matrices();

/**
 * The Dirac representation in signature (+,-,-,-): gamma^0 = blockdiag(I2, -I2),
 * gamma^k = offdiag(sigma_k, -sigma_k). Entries are exact 0, +-1, +-i.
 */
CliffordRep minkowski_gammas();

/**
 * Euclidean generators in n dimensions (signature all +1), size 2^floor(n/2),
 * built by the Pauli tensor-product recursion; odd n appends the chirality
 * element of the even-dimensional set below it.
 */
CliffordRep euclidean_gammas(int n);

/**
 * Position-dependent generators gamma^mu = gamma^a e_a^mu for an invertible
 * vielbein (row index a, column index mu, row-major). The results satisfy
 * {gamma^mu, gamma^nu} = 2 g^{mu nu} I with g^{mu nu} = e_a^mu e_b^nu eta^{ab}.
 * Throws std::domain_error with a conditioning diagnostic if e is singular.
 */
std::vector<CMatrix> curved_gammas(const CliffordRep& rep, const std::vector<double>& vielbein);

/** The inverse-metric components g^{mu nu} = e_a^mu e_b^nu eta^{ab} for the same vielbein. */
std::vector<double> inverse_metric_from_vielbein(const CliffordRep& rep,
                                                 const std::vector<double>& vielbein);

struct DiracFormMatrices {
  CMatrix beta;                 // gamma^0
  std::array<CMatrix, 3> a;     // a_k = gamma^0 gamma^k
};

/**
 * The (beta, a_1, a_2, a_3) matrices of the first-order form of the Dirac
 * equation: all four square to I4 and mutually anticommute. Only the 4x4
 * representation with signature (+,-,-,-) is accepted.
 */
DiracFormMatrices original_dirac_form(const CliffordRep& rep);

/**
 * Spinor lift of connection coefficients: w^S_mu = (1/2) sum_{a,b} w_{mu a b}
 * gamma^a gamma^b, with w antisymmetric in (a, b). omega[mu] holds the n x n
 * coefficient block row-major; throws if any block is not antisymmetric.
 */
std::vector<CMatrix> spin_lift(const std::vector<std::vector<double>>& omega,
                               const CliffordRep& rep);

}  // namespace speclen
