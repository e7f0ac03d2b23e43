#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sunflower/params.hpp"
#include "sunflower/setfam.hpp"

namespace sunflower {

using CoreId = std::uint32_t;
/// Ordered pair (t, u) of member indices encoded as t * |F| + u.
using PairId = std::uint64_t;

enum class PairKind { non_error, error };

/// One ordered pair of F^2 with j = |T ∩ U|; an error iff j > beta.
struct PairClass {
  std::size_t t = 0;
  std::size_t u = 0;
  std::size_t j = 0;
  PairKind kind = PairKind::non_error;
};

/// Streams every ordered pair (diagonal included) in row-major order.
template <class Fn>
void for_each_pair_class(const SetFamily& f, int beta, Fn&& fn) {
  for (std::size_t t = 0; t < f.size(); ++t)
    for (std::size_t u = 0; u < f.size(); ++u) {
      const std::size_t j = f.intersection_size(t, u);
      fn(PairClass{t, u, j, static_cast<int>(j) > beta ? PairKind::error : PairKind::non_error});
    }
}

struct PairCounts {
  std::uint64_t non_errors = 0;  ///< |N|
  std::uint64_t errors = 0;      ///< |E|
};

PairCounts classify_pairs(const SetFamily& f, const Params& params, unsigned jobs = 1);

/// Shift-downs landing on one core C: the non-error pairs N[C] (whose
/// triples form N*[C]) and the number of error pairs |E[C]| = |E*[C]|.
struct CoreEntry {
  ElementSet core;
  std::vector<PairId> n_pairs;  ///< ascending
  std::uint64_t e_count = 0;
  std::uint64_t triple_offset = 0;  ///< first triple id of N*[C]
};

class SizingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultTripleBudget = 50'000'000;

struct ShiftDownTelemetry {
  std::uint64_t n_pairs = 0;
  std::uint64_t e_pairs = 0;
  std::uint64_t n_star = 0;
  std::uint64_t e_star = 0;
  std::uint64_t cores = 0;
  std::uint64_t max_per_pair = 0;
};

/// N* and E* indexed by core. Only cores that arise inside some T ∩ U are
/// materialized, in lexicographic order; the empty core is always present
/// for a nonempty family. A triple of N* is identified by
/// core.triple_offset + position in core.n_pairs.
class ShiftDownIndex {
 public:
  std::size_t family_size() const { return family_size_; }
  int beta() const { return beta_; }
  const std::vector<CoreEntry>& cores() const { return cores_; }
  const CoreEntry& core(CoreId id) const { return cores_[id]; }
  std::optional<CoreId> find(const ElementSet& c) const;

  std::uint64_t n_star_size() const { return telemetry_.n_star; }
  std::uint64_t e_star_size() const { return telemetry_.e_star; }
  const ShiftDownTelemetry& telemetry() const { return telemetry_; }

  /// Core owning a triple id.
  CoreId core_of_triple(std::uint64_t triple) const;

  std::size_t pair_first(PairId p) const { return static_cast<std::size_t>(p / family_size_); }
  std::size_t pair_second(PairId p) const { return static_cast<std::size_t>(p % family_size_); }

  /// Every error pair produced fewer than 2^j shift-downs.
  bool remark_b_per_pair() const { return remark_b_per_pair_; }

 private:
  friend ShiftDownIndex build_shiftdowns(const SetFamily&, const Params&, std::uint64_t, unsigned);
  std::size_t family_size_ = 0;
  int beta_ = 0;
  std::vector<CoreEntry> cores_;
  ShiftDownTelemetry telemetry_;
  bool remark_b_per_pair_ = true;
};

/// Builds N* and E*. Throws SizingError if the predicted number of triples
/// exceeds `triple_budget`.
ShiftDownIndex build_shiftdowns(const SetFamily& f, const Params& params,
                                std::uint64_t triple_budget = kDefaultTripleBudget,
                                unsigned jobs = 1);

/// psi1(C): |E[C]| < |N[C]| / b_dag. False when N[C] is empty.
bool psi1(const ShiftDownIndex& index, CoreId core, const Params& params);

/// Independent recount of the Step 1 identities.
struct ShiftDownCheck {
  bool partition = true;      ///< |N[C]| + |E[C]| = |F[C]|^2 per core
  bool per_core = true;       ///< |N*[C]| = |N[C]|, |E*[C]| = |E[C]| from F[C]^2 directly
  bool double_count = true;   ///< sum_C |N*[C]| = sum over N of #sub-cores
  bool remark_b_pairs = true; ///< every error pair: shift-downs < 2^j
  bool remark_b_global = true;
  bool remark_b_global_asserted = false;  ///< paper mode only
  Real remark_b_bound;                    ///< b_dag^-1 gamma |F|^2
  std::string first_failure;
  bool ok() const {
    return partition && per_core && double_count && remark_b_pairs &&
           (remark_b_global || !remark_b_global_asserted);
  }
};

ShiftDownCheck check_shiftdowns(const SetFamily& f, const ShiftDownIndex& index, const Params& params);

/// Number of shift-downs of a pair with |T ∩ U| = j: sum_{i <= min(j, beta)} C(j, i).
std::uint64_t shiftdowns_per_pair(std::size_t j, int beta);

std::string to_key_value(const ShiftDownTelemetry& t);

}  // namespace sunflower
