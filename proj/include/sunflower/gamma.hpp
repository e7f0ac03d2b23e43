#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sunflower/params.hpp"
#include "sunflower/real.hpp"
#include "sunflower/setfam.hpp"

namespace sunflower {

/// A nonempty S with |F[S]| >= b^-|S| |F|, certifying that F violates the
/// Gamma(b)-condition.
struct GammaWitness {
  ElementSet set;
  std::uint64_t count = 0;
  Real threshold;  ///< b^-|S| |F|
};

/// Returns nothing when F satisfies Gamma(b), i.e. |F[S]| < b^-|S| |F| for
/// every nonempty S. Otherwise returns the violation maximizing
/// |F[S]| b^|S|, ties broken by smaller |S| then lexicographically smaller S.
///
/// Only subsets of members are enumerated: any other S has F[S] empty and
/// cannot violate the condition.
std::optional<GammaWitness> gamma_check(const SetFamily& f, const Real& b);

/// Raised when reduction consumes every element of the members.
class ReductionExhausted : public std::runtime_error {
 public:
  ReductionExhausted(const std::string& what, ElementSet prefix, std::size_t steps,
                     std::size_t final_size)
      : std::runtime_error(what), prefix(std::move(prefix)), steps(steps), final_size(final_size) {}
  ElementSet prefix;
  std::size_t steps;
  std::size_t final_size;
};

struct GammaReduction {
  ElementSet prefix;                ///< accumulated S
  SetFamily family;                 ///< Gamma(b)-satisfying link
  std::vector<std::size_t> origin;  ///< link member -> index in the input family
  std::size_t steps = 0;
};

/// Repeatedly replaces F by its link over the witness of gamma_check until
/// Gamma(b) holds. Guarantees |F'| >= b^-|prefix| |F|.
GammaReduction gamma_reduce(const SetFamily& f, const Real& b);

struct PairBoundRow {
  std::size_t j = 0;
  std::uint64_t observed = 0;
  Real bound_mid;                   ///< C(m, j) b^-j |F|^2
  std::optional<Real> bound_outer;  ///< (bj / 3m)^-j |F|^2 when bj/3m > 1
  bool informational = false;       ///< the j = 0 row
  bool pass = true;
};

/// Observed |P_j| against the neighbor-pair bounds implied by Gamma(b).
/// Throws DomainError if F violates Gamma(b).
std::vector<PairBoundRow> pair_bound_report(const SetFamily& f, const Real& b, unsigned jobs = 1);

/// CSV with header `j,observed,bound_mid,bound_outer,verdict`.
std::string to_csv(const std::vector<PairBoundRow>& rows);

struct BinomialEstimate {
  Rational lower;  ///< (x/y)^y
  Integer exact;   ///< C(x, y)
  Real upper;      ///< (e x / y)^y
  bool holds = false;
};

BinomialEstimate binom_estimate(unsigned x, unsigned y);

}  // namespace sunflower
