#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "sunflower/params.hpp"
#include "sunflower/setfam.hpp"
#include "sunflower/shiftdown.hpp"

namespace sunflower {

/// Membership over the triples of N*, indexed by triple id.
using TripleSet = boost::dynamic_bitset<>;

/// Dense cores C_j = {C : |C| = j <= beta, |F[C]| >= b_star^-j |F|}.
/// A triple (T, U, C) lies in N*_j iff its core is dense with |C| >= j.
struct DenseCoreLadder {
  std::vector<std::uint64_t> family_count;  ///< |F[C]| per core id
  std::vector<char> dense;                  ///< per core id
  std::vector<std::vector<CoreId>> levels;  ///< levels[j] = C_j, lex order

  bool in_star(const ShiftDownIndex& index, CoreId core, int j) const {
    return dense[core] && static_cast<int>(index.core(core).core.size()) >= j;
  }
};

DenseCoreLadder build_ladder(const SetFamily& f, const ShiftDownIndex& index, const Params& params);

/// psi3(D): |F[D]| >= b_star^-|D| |F|. D must be nonempty.
bool psi3(const ElementSet& d, const SetFamily& f, const Params& params);

/// Largest r in [0, beta] with |N' ∩ N*_r| >= b_star^-2r |N'|, or nothing
/// if no rank qualifies. Requires |N'| >= b_dag^-1 |N*|.
std::optional<int> rank_of(const ShiftDownIndex& index, const DenseCoreLadder& ladder,
                           const TripleSet& n_prime, const Params& params);

/// |N' ∩ N*_r| for r = 0..beta.
std::vector<std::uint64_t> star_slice_sizes(const ShiftDownIndex& index, const DenseCoreLadder& ladder,
                                            const TripleSet& n_prime);

struct ExtractionRound {
  int rank = 0;
  std::uint64_t n_prime_size = 0;  ///< |N'| when the round started
  std::uint64_t extracted = 0;     ///< |N_*|
  std::uint64_t spill = 0;         ///< triples of N_* at dense cores larger than rank
  std::vector<std::uint64_t> extracted_by_size;  ///< per core size 0..beta
  std::vector<CoreId> bucket_cores;
  TripleSet triples;  ///< N_*
};

/// N_{*,C}: the triples of one round landing on core C in C_rank.
struct Bucket {
  CoreId core = 0;
  std::size_t round = 0;
  std::vector<std::uint64_t> triples;
};

struct RankFailure {
  std::size_t round = 0;
  std::uint64_t n_prime_size = 0;
  std::vector<std::uint64_t> slice_sizes;
};

struct ExtractionResult {
  std::uint64_t n_star = 0;
  std::vector<ExtractionRound> rounds;
  std::vector<Bucket> buckets;  ///< sorted by core id
  TripleSet leftover;           ///< final N'
  TripleSet extracted;          ///< N̂* = N* - N'
  std::optional<RankFailure> failure;

  const Bucket* bucket(CoreId core) const;
  /// (T, U) of every triple in the bucket of `core`.
  std::vector<PairId> bucket_pairs(const ShiftDownIndex& index, CoreId core) const;
};

/// Runs the extraction loop: N' <- N*; while |N'| >= b_dag^-1 |N*| take the
/// rank-r slice N_* = N' ∩ N*_r, bucket it by the cores of C_r in lex order,
/// and remove it from N'. An empty N* yields zero rounds.
ExtractionResult algorithm_r(const ShiftDownIndex& index, const DenseCoreLadder& ladder, const Params& params);

struct RemarkERow {
  std::size_t round = 0;
  int j = 0;
  std::uint64_t slice = 0;  ///< |N_* ∩ N*_j|
  bool holds = true;        ///< slice < b_star^-2(j-r) |N_*|
};

struct RemarkEReport {
  bool rounds_disjoint = true;
  bool ranks_unique = true;
  bool round_count_ok = true;   ///< at most beta + 1 rounds
  bool leftover_ok = true;      ///< |N'| < b_dag^-1 |N*| at termination
  bool buckets_disjoint = true;
  bool one_bucket_per_core = true;
  bool union_accounting = true; ///< N̂* = (⊔ buckets) ⊔ spill
  bool union_literal = true;    ///< N̂* = ⊔ buckets (false when spill is nonempty)
  bool e_iii = true;
  std::vector<RemarkERow> e_iii_rows;
  bool e_i_lower = true;        ///< |N_*| >= b_star^-2beta b_dag^-1 |N*|, reported
  bool e_i_asserted = false;
  bool f_ii_sum = true;         ///< sum |N_{*,C}| > (1 - b_dag^-1) |N*|, reported
  std::uint64_t spill_total = 0;
  std::string first_failure;

  bool ok() const {
    return rounds_disjoint && ranks_unique && round_count_ok && leftover_ok && buckets_disjoint &&
           one_bucket_per_core && union_accounting && e_iii && (e_i_lower || !e_i_asserted);
  }
};

RemarkEReport check_remark_e(const ExtractionResult& result, const ShiftDownIndex& index,
                             const DenseCoreLadder& ladder, const Params& params);

/// Sum over dense (|C|+1)-extensions D of C of |N_{*,C,D}|: for every
/// triple of the bucket, the number of x in (T ∪ U) - C with C ∪ {x} dense.
std::uint64_t dense_extension_weight(const SetFamily& f, const ShiftDownIndex& index,
                                     const DenseCoreLadder& ladder, const ExtractionResult& result,
                                     CoreId core);

/// psi2(C): dense_extension_weight < (m / b_star) |N_{*,C}|. The bucket of C
/// must be nonempty.
bool psi2(const SetFamily& f, const ShiftDownIndex& index, const DenseCoreLadder& ladder,
          const ExtractionResult& result, CoreId core, const Params& params);

struct SmallnessReport {
  std::uint64_t lhs = 0;  ///< sum of |N_{*,C}| over C failing psi2
  Real rhs;               ///< (m / b_star) |N̂*|
  bool holds = true;
  bool asserted = false;  ///< paper mode only
};

SmallnessReport lemma_smallness_report(const SetFamily& f, const ShiftDownIndex& index,
                                       const DenseCoreLadder& ladder, const ExtractionResult& result,
                                       const Params& params);

struct CoreConjuncts {
  CoreId core = 0;
  std::uint64_t family_count = 0;  ///< |F[C]|
  std::uint64_t n = 0;             ///< |N[C]|
  std::uint64_t e = 0;             ///< |E[C]|
  std::uint64_t bucket = 0;        ///< |N_C|
  bool psi1 = false;
  std::optional<bool> psi2;        ///< evaluated only for nonempty buckets
  bool residual = false;           ///< |N[C] - N_C| < 2 b_dag^-1 |N[C]|
  bool qualifies = false;
};

struct CoreRemarks {
  std::uint64_t off_core = 0;      ///< |F[C]^2 - N_C|
  bool identity = true;            ///< off_core = |E[C]| + |N[C] - N_C|
  Real off_core_bound;             ///< 3 b_dag^-1 |F[C]|^2
  std::uint64_t sparse_extensions = 0;  ///< |M|
  Real sparse_bound;                    ///< 2 (m - r) b_star^-1 |F[C]|^2
  std::uint64_t dense_extensions = 0;   ///< sum over D in C_{r+1}[C] of |N_C[D]|
  std::uint64_t extended = 0;           ///< |union over D ⊋ C of N_C[D]|
  Real extended_bound;                  ///< 4 m b_star^-1 |N_C|
};

struct CoreSelection {
  std::optional<CoreId> core;
  std::vector<CoreConjuncts> table;
  std::string most_failed;  ///< set when no core qualifies
  CoreRemarks remarks;      ///< for the selected core
};

/// Picks the qualifying core with the largest |N_C| (ties: lex smallest).
CoreSelection select_core(const SetFamily& f, const ShiftDownIndex& index, const DenseCoreLadder& ladder,
                          const ExtractionResult& result, const Params& params);

std::string to_csv(const CoreSelection& selection, const ShiftDownIndex& index);
std::string to_report(const ExtractionResult& result);

}  // namespace sunflower
