#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistvol/log_complex.hpp"
#include "twistvol/qseries.hpp"

namespace twistvol {

/// Twist knot with 2p half twists, p not in {0, 1}. p >= 2 is evaluated with
/// the nested sum directly; p <= -2 is its mirror image and is evaluated as
/// the complex conjugate of the |p| value.
class TwistKnotSpec {
 public:
  explicit TwistKnotSpec(int p);

  int p() const noexcept { return p_; }
  int base_p() const noexcept { return p_ < 0 ? -p_ : p_; }
  bool mirrored() const noexcept { return p_ < 0; }
  /// Number of summation indices, 2|p| - 1.
  int dimension() const noexcept { return 2 * base_p() - 1; }

 private:
  int p_;
};

/// Summation index (n_1, ..., n_d) with N-1 >= n_d >= ... >= n_1 >= 0.
/// indices[0] holds n_1.
struct LatticeIndex {
  std::vector<std::int64_t> indices;

  bool is_triangular(std::int64_t modulus) const;
  /// Throws DomainError unless the index has the given dimension and is
  /// triangular for this modulus.
  void validate(std::int64_t modulus, int dimension) const;
};

struct JonesValue {
  std::complex<double> value;  ///< may be infinite when |J_N| exceeds double range
  double log_abs = 0.0;        ///< log|J_N|, always finite for nonzero J_N
  double arg = 0.0;
  std::int64_t N = 1;
  int p = 2;
  long precision_bits = 0;     ///< MPFR working precision that was used
};

struct JonesOptions {
  double term_budget = 0.0;    ///< 0 selects default_term_budget()
  unsigned threads = 0;        ///< 0 selects hardware concurrency
  long precision_bits = 0;     ///< 0 selects and escalates automatically
};

/// Term budget from TWISTVOL_TERM_BUDGET, else 2e9.
double default_term_budget();

/// Number of triangular indices, C(N + d - 1, d), as a double.
double lattice_size(std::int64_t modulus, int dimension);

/// Throws BudgetError when the lattice exceeds the budget.
void check_budget(std::int64_t modulus, int dimension, double budget, const char* what);

/// One summand of the nested sum (without the q^{1-N} prefactor):
/// (q^{1-N})_{n_d} q^{-N n_d} prod_{i=1}^{d-1} (-1)^{n_i}
///   q^{(-1)^i N n_i + C(n_i, 2) - n_i n_{i+1}} [n_{i+1}; n_i].
/// Conjugated for mirrored specs.
LogComplex jones_term(const TwistKnotSpec& spec, const PochhammerTable& table, const LatticeIndex& idx);
LogComplex jones_term(const TwistKnotSpec& spec, const RootOfUnity& ru, const LatticeIndex& idx);

struct MaxTerm {
  double log_abs = 0.0;  ///< log of the largest |term| over the lattice
  LatticeIndex index;    ///< first maximizer in enumeration order
};

/// Exhaustive maximum of |term| over the triangular lattice. Enumeration
/// order: n_d outermost ascending, inner indices ascending.
MaxTerm max_term(const TwistKnotSpec& spec, std::int64_t modulus, double term_budget = 0.0);

/// J_N at q = exp(2 pi i / N), summed in MPFR over the triangular lattice in
/// a fixed order. The result is bit-identical for any thread count.
JonesValue colored_jones(const TwistKnotSpec& spec, std::int64_t modulus, const JonesOptions& options = {});

struct VolumeRow {
  std::int64_t N = 0;
  double v = 0.0;  ///< 2 pi log|J_N| / N
  std::optional<JonesValue> jones;
  std::optional<std::string> error;
};

/// v_N = 2 pi log|J_N| / N for each N. Budget failures are recorded per row
/// and the remaining N are still computed.
std::vector<VolumeRow> volume_sequence(const TwistKnotSpec& spec, const std::vector<std::int64_t>& n_values,
                                       const JonesOptions& options = {});

struct LimitFit {
  double limit = 0.0;
  double residual = 0.0;  ///< RMS of the fit residuals
  double log_coefficient = 0.0;
  double inverse_coefficient = 0.0;
};

struct SequencePoint {
  std::int64_t N;
  double v;
};

/// Least-squares fit of v_N = v + c1 log(N)/N + c2/N. Needs at least four
/// distinct N; throws ExtrapolationError when the design is degenerate.
LimitFit extrapolate_limit(const std::vector<SequencePoint>& points);

}  // namespace twistvol
