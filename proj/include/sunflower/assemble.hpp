#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sunflower/real.hpp"
#include "sunflower/setfam.hpp"

namespace sunflower {

/// k members (by index) whose pairwise intersections all equal `core`.
struct SunflowerCertificate {
  ElementSet core;
  std::vector<std::size_t> petals;

  friend bool operator==(const SunflowerCertificate&, const SunflowerCertificate&) = default;
};

/// True iff the petals are distinct, there are `k` of them (when given) and
/// every two of them meet exactly in the core. Throws std::out_of_range on
/// an index outside the family.
bool verify_certificate(const SetFamily& f, const SunflowerCertificate& cert,
                        std::optional<std::size_t> k = std::nullopt);

/// `core: <ids>` followed by one petal per line in family-file element format.
std::string save_certificate(const SetFamily& f, const SunflowerCertificate& cert);
/// Maps petal lines back to member indices; throws FamilyError when a petal
/// is not a member of `f`.
SunflowerCertificate load_certificate(const std::string& text, const SetFamily& f);

/// psi4: |{U in g : T ∩ U = C}| > threshold * original_size.
bool psi4(const SetFamily& f, std::size_t t, std::span<const std::size_t> g, const ElementSet& core,
          const Real& threshold, std::size_t original_size);

struct AssemblyFailure {
  std::size_t iteration = 0;
  std::size_t g_size = 0;
};

struct AssemblyStep {
  std::size_t petal = 0;
  std::size_t g_before = 0;
  std::size_t eliminated = 0;
};

struct AssemblyResult {
  std::optional<SunflowerCertificate> certificate;
  std::optional<AssemblyFailure> failure;
  std::vector<AssemblyStep> steps;
  std::size_t family_size = 0;       ///< |F[C]|
  std::uint64_t off_core_pairs = 0;  ///< ordered pairs of F[C]^2 with T ∩ U != C
  std::size_t impure = 0;            ///< members of F[C] failing psi4
};

/// Greedy petal assembly inside F[C]: repeat k times, take the first member
/// of G (lex order) satisfying psi4 against F[C], then drop from G every U
/// with T ∩ U != C. Invariants are checked every iteration and a violation
/// throws std::logic_error.
AssemblyResult algorithm_s(const SetFamily& f, const ElementSet& core, int k, const Real& threshold);

}  // namespace sunflower
