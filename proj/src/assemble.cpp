#include "sunflower/assemble.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sunflower {

bool verify_certificate(const SetFamily& f, const SunflowerCertificate& cert, std::optional<std::size_t> k) {
  for (std::size_t i : cert.petals)
    if (i >= f.size()) throw std::out_of_range("petal index " + std::to_string(i) + " outside the family");
  if (k && cert.petals.size() != *k) return false;
  for (std::size_t a = 0; a < cert.petals.size(); ++a)
    for (std::size_t b = a + 1; b < cert.petals.size(); ++b) {
      if (cert.petals[a] == cert.petals[b]) return false;
      if (f.intersection(cert.petals[a], cert.petals[b]) != cert.core) return false;
    }
  if (cert.petals.size() == 1) return is_subset(cert.core, f[cert.petals[0]]);
  return !cert.petals.empty();
}

std::string save_certificate(const SetFamily& f, const SunflowerCertificate& cert) {
  std::string out = "core:";
  if (!cert.core.empty()) out += " " + format_set(cert.core);
  out += "\n";
  for (std::size_t i : cert.petals) out += format_set(f[i]) + "\n";
  return out;
}

SunflowerCertificate load_certificate(const std::string& text, const SetFamily& f) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_core = false;
  SunflowerCertificate cert;
  auto parse_ids = [&](const std::string& body) {
    std::istringstream tokens(body);
    ElementSet s;
    std::string token;
    while (tokens >> token) {
      std::size_t pos = 0;
      unsigned long id = 0;
      try {
        id = std::stoul(token, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != token.size() || token[0] == '-') throw FamilyError("malformed element id '" + token + "'", line_no);
      s.push_back(static_cast<Element>(id));
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw FamilyError("repeated element id", line_no);
    return s;
  };
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!have_core) {
      auto start = line.find_first_not_of(" \t");
      if (line.compare(start, 5, "core:") != 0) throw FamilyError("expected 'core:' line", line_no);
      cert.core = parse_ids(line.substr(start + 5));
      have_core = true;
      continue;
    }
    const ElementSet petal = parse_ids(line);
    const std::size_t index = f.find(petal);
    if (index == f.size()) throw FamilyError("petal {" + format_set(petal) + "} is not a family member", line_no);
    cert.petals.push_back(index);
  }
  if (!have_core) throw FamilyError("missing 'core:' line", line_no);
  return cert;
}

bool psi4(const SetFamily& f, std::size_t t, std::span<const std::size_t> g, const ElementSet& core,
          const Real& threshold, std::size_t original_size) {
  std::size_t meeting = 0;
  for (std::size_t u : g) meeting += f.intersection(t, u) == core;
  return Real(meeting) > threshold * Real(original_size);
}

AssemblyResult algorithm_s(const SetFamily& f, const ElementSet& core, int k, const Real& threshold) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (threshold <= Real(0) || threshold >= Real(1)) throw std::invalid_argument("threshold must lie in (0, 1)");
  const std::vector<std::size_t> fc = f.members_containing(core);
  if (fc.empty()) throw std::invalid_argument("F[C] is empty");

  AssemblyResult result;
  result.family_size = fc.size();
  if (core.size() == f.cardinality()) {
    // F[C] = {C}: the only member meets itself in C and cannot serve twice.
    if (k > 1) result.failure = AssemblyFailure{0, fc.size()};
    else result.certificate = SunflowerCertificate{core, {fc.front()}};
    return result;
  }
  const Real allowance = (Real(1) - threshold) * Real(fc.size());

  std::vector<char> pure(fc.size());
  for (std::size_t i = 0; i < fc.size(); ++i) {
    for (std::size_t u : fc) result.off_core_pairs += f.intersection(fc[i], u) != core;
    pure[i] = psi4(f, fc[i], fc, core, threshold, fc.size());
    result.impure += !pure[i];
  }
  // A member failing psi4 has at least (1 - threshold)|F[C]| off-core partners.
  if (Real(result.impure) * allowance > Real(result.off_core_pairs))
    throw std::logic_error("impure member count exceeds the off-core pair bound");

  std::vector<std::size_t> g(fc.size());  // positions into fc
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = i;
  SunflowerCertificate cert{core, {}};
  for (int iteration = 0; iteration < k; ++iteration) {
    auto pick = std::find_if(g.begin(), g.end(), [&](std::size_t i) { return pure[i]; });
    if (pick == g.end()) {
      result.failure = AssemblyFailure{static_cast<std::size_t>(iteration), g.size()};
      return result;
    }
    const std::size_t petal = fc[*pick];
    AssemblyStep step{petal, g.size(), 0};
    std::vector<std::size_t> kept;
    for (std::size_t i : g) {
      if (f.intersection(petal, fc[i]) == core) kept.push_back(i);
      else ++step.eliminated;
    }
    if (Real(step.eliminated) >= allowance)
      throw std::logic_error("petal eliminated at least (1 - threshold)|F[C]| members");
    g = std::move(kept);
    cert.petals.push_back(petal);
    result.steps.push_back(step);
    // Every chosen petal meets every survivor and every other petal in C.
    for (std::size_t p : cert.petals) {
      for (std::size_t i : g)
        if (f.intersection(p, fc[i]) != core) throw std::logic_error("survivor meets a petal outside the core");
      for (std::size_t q : cert.petals)
        if (p != q && f.intersection(p, q) != core) throw std::logic_error("petals meet outside the core");
    }
    if (Real(g.size()) < Real(fc.size()) - Real(iteration + 1) * allowance)
      throw std::logic_error("|G| fell below |F[C]| - (j+1)(1 - threshold)|F[C]|");
  }
  result.certificate = std::move(cert);
  return result;
}

}  // namespace sunflower
