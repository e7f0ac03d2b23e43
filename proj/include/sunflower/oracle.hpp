#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "sunflower/assemble.hpp"
#include "sunflower/setfam.hpp"

namespace sunflower {

struct SearchBudget {
  std::uint64_t max_cores = 1'000'000;
  std::uint64_t max_nodes = 50'000'000;
  std::chrono::milliseconds wall_clock{60'000};
};

/// Budget with `max_nodes` taken from SUNFLOWER_BUDGET when it is set to a
/// positive integer.
SearchBudget default_budget();

enum class SearchStatus { found, none, budget_exhausted };

struct SearchResult {
  SearchStatus status = SearchStatus::none;
  std::optional<SunflowerCertificate> certificate;
  std::uint64_t nodes = 0;
  std::uint64_t cores_examined = 0;
};

/// Complete search for a k-sunflower. Candidate cores are the empty set and
/// every subset of a pairwise intersection, visited in lex order; for each,
/// a backtracking set packing looks for k members over the core whose parts
/// outside it are pairwise disjoint. `none` is only returned when the whole
/// space was exhausted within budget.
SearchResult find_sunflower_exact(const SetFamily& f, int k, const SearchBudget& budget = {});

/// Classic Erdős–Rado recursion: a maximal disjoint subfamily (lex greedy)
/// of size >= k is returned directly; otherwise recurse on the link of the
/// most popular element of its union. Always succeeds when
/// |F| > m! (k-1)^m.
std::optional<SunflowerCertificate> find_sunflower_greedy_er(const SetFamily& f, int k);

}  // namespace sunflower
