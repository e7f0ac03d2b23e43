#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "sunflower/real.hpp"

namespace sunflower {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class ParamsMode { paper, scaled };

/// The constant bundle driving every threshold in the detection pipeline.
///
/// In paper mode the fields follow their defining formulas from (epsilon, k,
/// m); transcendental ones are carried as rigorous enclosures. In scaled mode
/// every field is an exact positive rational chosen for desk-scale runs.
struct Params {
  ParamsMode mode = ParamsMode::scaled;
  Rational epsilon;  ///< 0 in scaled mode
  int k = 3;
  int m = 3;
  Real c;
  Real b_dag;
  Real b_star;
  Real alpha;
  int beta = 0;
  Real gamma;
  Real b;
  /// Petal purity fraction used by psi4: 1 - (ck)^-1 in paper mode.
  Real threshold;
};

/// Paper-mode bundle. Requires 0 < epsilon < 1, k > 2 and m >= 16.
Params derive_params(const Rational& epsilon, int k, int m);

struct ScaledOverrides {
  std::optional<Rational> b;
  std::optional<Rational> b_dag;
  std::optional<Rational> b_star;
  std::optional<Rational> gamma;
  std::optional<Rational> threshold;
  std::optional<int> beta;
};

/// Scaled-mode bundle. Defaults: b = k^2, b_dag = 2k^2, b_star = k^2 m^2,
/// beta = ceil(m/2), gamma = b_dag^-beta, threshold = 1/2. gamma follows
/// b_dag and beta unless overridden itself.
Params scaled_params(int k, int m, const ScaledOverrides& overrides = {});

/// Parses `key=value` assignments (b, b_dag, b_star, gamma, beta,
/// threshold) into overrides. Throws DomainError on unknown keys.
ScaledOverrides parse_overrides(const std::map<std::string, std::string>& assignments);

/// Same constants, with beta clamped to the new cardinality `m_prime` and
/// `m` replaced by it. Used after a reduction shrinks member cardinality.
Params with_cardinality(const Params& p, int m_prime);

/// Flat `key=value` lines, one per field.
std::string to_key_value(const Params& p);

struct BoundValues {
  Integer classic;            ///< m! (k-1)^m
  std::optional<Real> prior;  ///< (c ln m)^m, m >= 16
  std::optional<Real> paper;  ///< (c k^2 ln m / ln ln m)^m, m >= 16
};

/// c = exp(1/epsilon) in the prior and paper forms.
BoundValues bound_values(int k, int m, const Rational& epsilon);

}  // namespace sunflower
