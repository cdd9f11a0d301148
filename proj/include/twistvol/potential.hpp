#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "twistvol/jones.hpp"

namespace twistvol {

using ComplexVector = std::vector<std::complex<double>>;

/// Point (z_1, ..., z_{2p-1}) at which the potential is evaluated.
struct PotentialInput {
  int p = 2;
  ComplexVector z;

  int dimension() const noexcept { return 2 * p - 1; }
  /// Throws DomainError unless p >= 2 and z has 2p-1 entries.
  void validate() const;
};

/// f(z) = -Li2(1/z_1) + sum_{i=1}^{2p-2} (Li2(z_i) - Li2(z_i/z_{i+1}) + Li2(1/z_{i+1})) + Li2(z_{2p-1}),
/// principal branch. A Li2 argument on [1, inf) other than the boundary point
/// 1 itself throws DomainError naming the term.
std::complex<double> potential_f(const PotentialInput& input);

/// Lattice variant with z_i = exp(2 pi i n_i / N):
/// sum_{i=1}^{2p-2} [L(n_i) - L(n_{i+1}) + L(n_{i+1} - n_i)] - L(n_{2p-1}),
/// where L(k) = Li2(exp(2 pi i k / N)).
std::complex<double> potential_f_lattice(const LatticeIndex& n, std::int64_t modulus, int p);

/// Analytic gradient from dLi2/dw = -log(1-w)/w.
ComplexVector grad_f(const PotentialInput& input);

/// Signed left-minus-right sides of the 2p-1 exponentiated critical equations
///   1 - z_1/z_2 = (1 - z_1)(1 - 1/z_1)
///   (1 - z_i/z_{i+1})(1 - 1/z_i) = (1 - z_i)(1 - z_{i-1}/z_i),  i = 2..2p-2
///   1 - 1/z_{2p-1} = (1 - z_{2p-1})(1 - z_{2p-2}/z_{2p-1}).
ComplexVector critical_system(const PotentialInput& input);

/// Component-wise |left - right| of critical_system. Zero coordinates throw.
std::vector<double> critical_residual(const PotentialInput& input);

/// d(critical_system)/dz, row-major, dimension x dimension.
std::vector<ComplexVector> critical_jacobian(const PotentialInput& input);

struct SolverConfig {
  int starts = 64;               ///< pseudo-random starts besides the structured one
  std::uint64_t seed = 20240601;
  int max_iterations = 200;
  int max_halvings = 30;
  double tolerance = 1e-12;      ///< residual max-norm for acceptance
  double margin = 1e-6;          ///< |Re a_i - 1| and distance to [0, inf)
  unsigned threads = 0;          ///< 0 selects hardware concurrency
};

struct CriticalPoint {
  int p = 2;
  ComplexVector a;
  double residual = 0.0;         ///< max-norm of critical_residual at a
  double volume = 0.0;           ///< Im f(a)
  std::complex<double> potential;
  int start_index = -1;          ///< 0 is the structured start e^{i pi/3}
  double min_re_margin = 0.0;    ///< min_i |Re a_i - 1|
  double min_cut_distance = 0.0; ///< min_i dist(a_i, [0, inf))
  double gradient_norm = 0.0;    ///< max-norm of grad_f at a
  /// k_i = z_i df/dz_i / (2 pi i), rounded. All zero at a stationary point of
  /// the principal-branch f; nonzero entries mark a solution of the
  /// exponentiated system only.
  std::vector<int> branch_shift;
};

/// All distinct admissible critical points reached from the configured starts,
/// in order of first discovery.
std::vector<CriticalPoint> critical_points(int p, const SolverConfig& config = {});

/// Newton multi-start; returns the admissible solution with the largest
/// Im f (ties go to the earliest start). Throws SolverError when none is
/// found. For a mirrored knot use solve_critical_for_knot.
CriticalPoint solve_critical(int p, const SolverConfig& config = {});

/// solve_critical for |p|; for p <= -2 the point and f(a) are conjugated and
/// the volume reported is that of the mirror image, Im f at the |p| solution.
CriticalPoint solve_critical_for_knot(const TwistKnotSpec& spec, const SolverConfig& config = {});

struct GridMax {
  LatticeIndex best_index;
  double best_value = 0.0;  ///< max Im potential_f_lattice over the triangular lattice
};

/// Exhaustive maximization of Im potential_f_lattice; the first maximizer in
/// enumeration order wins.
GridMax grid_max_im_f(int p, std::int64_t modulus, double term_budget = 0.0);

}  // namespace twistvol
