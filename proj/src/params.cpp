#include "sunflower/params.hpp"

namespace sunflower {

namespace {

void require_epsilon(const Rational& epsilon) {
  if (epsilon <= 0 || epsilon >= 1) throw DomainError("epsilon must lie in (0, 1)");
}

Real ln_ratio(int m) {
  Real ln_m = log(Real(m));
  return ln_m / log(ln_m);
}

}  // namespace

Params derive_params(const Rational& epsilon, int k, int m) {
  require_epsilon(epsilon);
  if (k <= 2) throw DomainError("paper mode requires k > 2");
  if (m < 16) throw DomainError("paper mode requires m >= 16 so that ln ln m > 0");
  Params p;
  p.mode = ParamsMode::paper;
  p.epsilon = epsilon;
  p.k = k;
  p.m = m;
  const Real k2(k * k);
  p.c = exp(Real(Rational(1) / epsilon));
  p.b_dag = exp(p.c) * k2;
  p.b_star = Real(Integer(k) * k * boost::multiprecision::pow(Integer(m), 4));
  p.alpha = ln_ratio(m);
  // beta is the one rounding the construction states explicitly.
  const Integer beta = ceil(Real(m) / (p.c * p.alpha));
  p.beta = beta.convert_to<int>();
  p.gamma = pow(p.b_dag, -p.beta);
  p.b = k2 * p.alpha * exp(p.c * p.c);
  p.threshold = Real(1) - Real(1) / (p.c * Real(k));
  return p;
}

Params scaled_params(int k, int m, const ScaledOverrides& o) {
  if (k < 2) throw DomainError("k must be at least 2");
  if (m < 1) throw DomainError("m must be at least 1");
  auto positive = [](const char* name, const Rational& v) {
    if (v <= 0) throw DomainError(std::string(name) + " must be positive");
    return Real(v);
  };
  Params p;
  p.mode = ParamsMode::scaled;
  p.k = k;
  p.m = m;
  const Rational k2(k * k);
  p.c = Real(1);
  p.alpha = Real(1);
  p.b = positive("b", o.b.value_or(k2));
  p.b_dag = positive("b_dag", o.b_dag.value_or(2 * k2));
  p.b_star = positive("b_star", o.b_star.value_or(k2 * m * m));
  p.beta = o.beta.value_or((m + 1) / 2);
  if (p.beta < 0 || p.beta > m) throw DomainError("beta must lie in [0, m]");
  p.gamma = o.gamma ? positive("gamma", *o.gamma) : pow(p.b_dag, -p.beta);
  if (p.gamma > Real(1)) throw DomainError("gamma must not exceed 1");
  const Rational threshold = o.threshold.value_or(Rational(1, 2));
  if (threshold <= 0 || threshold >= 1) throw DomainError("threshold must lie in (0, 1)");
  p.threshold = Real(threshold);
  return p;
}

ScaledOverrides parse_overrides(const std::map<std::string, std::string>& assignments) {
  ScaledOverrides o;
  for (const auto& [key, value] : assignments) {
    Rational v;
    try {
      v = parse_rational(value);
    } catch (const std::invalid_argument& e) {
      throw DomainError(key + ": " + e.what());
    }
    if (key == "b") o.b = v;
    else if (key == "b_dag") o.b_dag = v;
    else if (key == "b_star") o.b_star = v;
    else if (key == "gamma") o.gamma = v;
    else if (key == "threshold") o.threshold = v;
    else if (key == "beta") {
      if (boost::multiprecision::denominator(v) != 1) throw DomainError("beta must be an integer");
      if (v < 0) throw DomainError("beta must lie in [0, m]");
      if (v > 1 << 20) throw DomainError("beta must lie in [0, m]");
      o.beta = boost::multiprecision::numerator(v).convert_to<int>();
    } else {
      throw DomainError("unknown parameter '" + key + "'");
    }
  }
  return o;
}

Params with_cardinality(const Params& p, int m_prime) {
  Params out = p;
  out.m = m_prime;
  out.beta = std::min(p.beta, m_prime);
  return out;
}

std::string to_key_value(const Params& p) {
  std::string out;
  auto line = [&](const std::string& key, const std::string& value) { out += key + "=" + value + "\n"; };
  line("mode", p.mode == ParamsMode::paper ? "paper" : "scaled");
  if (p.mode == ParamsMode::paper) line("epsilon", Real(p.epsilon).to_string());
  line("k", std::to_string(p.k));
  line("m", std::to_string(p.m));
  line("c", p.c.to_string());
  line("b", p.b.to_string());
  line("b_dag", p.b_dag.to_string());
  line("b_star", p.b_star.to_string());
  line("alpha", p.alpha.to_string());
  line("beta", std::to_string(p.beta));
  line("gamma", p.gamma.to_string());
  line("threshold", p.threshold.to_string());
  return out;
}

BoundValues bound_values(int k, int m, const Rational& epsilon) {
  if (k < 2) throw DomainError("k must be at least 2");
  if (m < 1) throw DomainError("m must be at least 1");
  BoundValues out;
  out.classic = factorial(static_cast<unsigned>(m)) *
                boost::multiprecision::pow(Integer(k - 1), static_cast<unsigned>(m));
  if (m >= 16) {
    require_epsilon(epsilon);
    const Real c = exp(Real(Rational(1) / epsilon));
    const Real ln_m = log(Real(m));
    out.prior = pow(c * ln_m, m);
    out.paper = pow(c * Real(k * k) * ln_m / log(ln_m), m);
  }
  return out;
}

}  // namespace sunflower
