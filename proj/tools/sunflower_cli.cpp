// Command-line front end: generate corpora, check conditions, search for
// sunflowers, verify certificates and tabulate bounds. Reports go to stdout
// as CSV or key=value lines, diagnostics to stderr.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sunflower/assemble.hpp"
#include "sunflower/extract.hpp"
#include "sunflower/gamma.hpp"
#include "sunflower/generators.hpp"
#include "sunflower/oracle.hpp"
#include "sunflower/params.hpp"
#include "sunflower/pipeline.hpp"
#include "sunflower/setfam.hpp"

using namespace sunflower;

namespace {

enum Exit : int { ok = 0, negative = 1, usage = 2, domain = 3, budget = 4, stage_failure = 5 };

// Thrown for flag combinations CLI11 cannot express on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ElementSet parse_ids(const std::string& text) {
  ElementSet out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    std::size_t pos = 0;
    const unsigned long v = std::stoul(token, &pos);
    if (pos != token.size()) throw UsageError("bad element id '" + token + "'");
    out.push_back(static_cast<Element>(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

struct GenOptions {
  std::string kind;
  int m = 0, k = 3, core = 0, extra = 0;
  std::size_t n = 0, size = 0;
  std::string noise = "0";
  std::uint64_t seed = 0;
  std::string out, cert_out, manifest;
};

int cmd_gen(const GenOptions& o) {
  std::string cert_text;
  std::optional<SetFamily> family;
  if (o.kind == "random") {
    if (o.n == 0 || o.size == 0) throw UsageError("gen random needs -n and --size");
    family = gen_random(o.n, static_cast<std::size_t>(o.m), o.size, o.seed);
  } else if (o.kind == "planted") {
    if (o.extra == 0) throw UsageError("gen planted needs --extra");
    auto inst = gen_planted(o.m, o.k, o.core, o.extra, parse_rational(o.noise), o.seed, o.n);
    if (!verify_certificate(inst.family, inst.planted, static_cast<std::size_t>(o.k)))
      throw std::logic_error("planted certificate does not verify");
    cert_text = save_certificate(inst.family, inst.planted);
    family = std::move(inst.family);
  } else {
    family = gen_er_lower_bound(o.m, o.k);
  }
  emit(o.out, save_family(*family));
  if (!cert_text.empty()) {
    if (!o.cert_out.empty())
      write_text_file(o.cert_out, cert_text);
    else if (!o.out.empty() && o.out != "-")
      write_text_file(o.out + ".cert", cert_text);
  }
  if (!o.manifest.empty()) {
    std::ostringstream line;
    line << "kind=" << o.kind << " n=" << family->universe() << " m=" << o.m << " k=" << o.k
         << " size=" << family->size() << " core=" << o.core << " extra=" << o.extra << " noise=" << o.noise
         << " seed=" << o.seed << " file=" << (o.out.empty() ? "-" : o.out) << "\n";
    std::string existing;
    try {
      existing = read_text_file(o.manifest);
    } catch (const std::exception&) {
    }
    write_text_file(o.manifest, existing + line.str());
  }
  return ok;
}

struct ParamFlags {
  bool scaled = false;
  std::string epsilon;
  std::vector<std::string> set;
};

Params make_params(const ParamFlags& pf, int k, int m) {
  if (!pf.epsilon.empty()) {
    if (pf.scaled) throw UsageError("--scaled and --epsilon are exclusive");
    if (!pf.set.empty()) throw UsageError("--set applies to scaled parameters only");
    return derive_params(parse_rational(pf.epsilon), k, m);
  }
  std::map<std::string, std::string> assignments;
  for (const auto& kv : pf.set) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + kv + "'");
    assignments[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return scaled_params(k, m, parse_overrides(assignments));
}

struct CheckOptions {
  std::string file;
  std::string gamma, pair_bounds, psi3_ids;
  int k = 3;
  ParamFlags params;
  unsigned jobs = 1;
};

int cmd_check(const CheckOptions& o) {
  const int chosen = !o.gamma.empty() + !o.pair_bounds.empty() + !o.psi3_ids.empty();
  if (chosen != 1) throw UsageError("check needs exactly one of --gamma, --pair-bounds, --psi3");
  const SetFamily f = read_family_file(o.file);

  if (!o.gamma.empty()) {
    const auto witness = gamma_check(f, Real(parse_rational(o.gamma)));
    std::cout << "condition,holds,witness,count,threshold\n";
    if (!witness) {
      std::cout << "gamma," << "true,,,\n";
      return ok;
    }
    std::cout << "gamma,false,{" << format_set(witness->set) << "}," << witness->count << ","
              << to_decimal(witness->threshold, 12) << "\n";
    return negative;
  }
  if (!o.pair_bounds.empty()) {
    const auto rows = pair_bound_report(f, Real(parse_rational(o.pair_bounds)), o.jobs);
    std::cout << to_csv(rows);
    for (const auto& r : rows)
      if (!r.pass) return negative;
    return ok;
  }
  const ElementSet d = parse_ids(o.psi3_ids);
  if (d.empty()) throw UsageError("--psi3 needs a nonempty set");
  const Params p = make_params(o.params, o.k, static_cast<int>(f.cardinality()));
  const bool holds = psi3(d, f, p);
  std::cout << "condition,set,count,holds\n"
            << "psi3,{" << format_set(d) << "}," << f.count_containing(d) << "," << (holds ? "true" : "false")
            << "\n";
  return holds ? ok : negative;
}

struct FindOptions {
  std::string file;
  int k = 3;
  std::string method = "exact";
  ParamFlags params;
  unsigned jobs = 1;
  std::uint64_t max_nodes = 0;
  std::uint64_t triple_budget = kDefaultTripleBudget;
  bool no_fallback = false;
  std::string out, report;
};

int cmd_find(const FindOptions& o) {
  const SetFamily f = read_family_file(o.file);
  std::optional<SunflowerCertificate> cert;

  if (o.method == "exact") {
    SearchBudget b = default_budget();
    if (o.max_nodes) b.max_nodes = o.max_nodes;
    const auto result = find_sunflower_exact(f, o.k, b);
    std::cerr << "nodes=" << result.nodes << " cores_examined=" << result.cores_examined << "\n";
    if (result.status == SearchStatus::budget_exhausted) {
      std::cerr << "search budget exhausted\n";
      return budget;
    }
    cert = result.certificate;
  } else if (o.method == "greedy") {
    cert = find_sunflower_greedy_er(f, o.k);
  } else {
    const Params p = make_params(o.params, o.k, static_cast<int>(f.cardinality()));
    PipelineOptions po;
    po.jobs = o.jobs;
    po.triple_budget = o.triple_budget;
    po.fallback = !o.no_fallback;
    const PaperOutcome outcome = find_sunflower_paper(f, o.k, p, po);
    for (const auto& note : outcome.notices) std::cerr << "notice: " << note << "\n";
    std::cerr << "method=" << method_name(outcome.method) << "\n";
    if (outcome.failure) {
      const std::string report = outcome.failure->to_report();
      if (!o.report.empty())
        write_text_file(o.report, report);
      else
        std::cerr << report;
    }
    if (!outcome.certificate) return outcome.failure ? stage_failure : negative;
    cert = outcome.certificate;
  }

  if (!cert) {
    std::cerr << "no " << o.k << "-sunflower\n";
    return negative;
  }
  emit(o.out, save_certificate(f, *cert));
  return ok;
}

int cmd_verify(const std::string& family_path, const std::string& cert_path, std::optional<int> k) {
  const SetFamily f = read_family_file(family_path);
  SunflowerCertificate cert;
  try {
    cert = load_certificate(read_text_file(cert_path), f);
  } catch (const FamilyError& e) {
    std::cerr << "invalid certificate: " << e.what() << "\n";
    return negative;
  }
  std::optional<std::size_t> want;
  if (k) want = static_cast<std::size_t>(*k);
  const bool valid = verify_certificate(f, cert, want);
  std::cout << (valid ? "valid" : "invalid") << "\n";
  return valid ? ok : negative;
}

int cmd_bounds(int k, int m_min, int m_max, const std::string& epsilon) {
  if (m_min < 1 || m_max < m_min) throw UsageError("need 1 <= --m-min <= --m-max");
  const Rational eps = parse_rational(epsilon);
  std::cout << "m,classic,prior,paper\n";
  for (int m = m_min; m <= m_max; ++m) {
    const BoundValues v = bound_values(k, m, eps);
    std::cout << m << "," << v.classic.str() << "," << (v.prior ? to_decimal(*v.prior, 12) : "") << ","
              << (v.paper ? to_decimal(*v.paper, 12) : "") << "\n";
  }
  return ok;
}

void add_param_flags(CLI::App* cmd, ParamFlags& pf) {
  cmd->add_flag("--scaled", pf.scaled, "Desk-scale constants (default)");
  cmd->add_option("--epsilon", pf.epsilon, "Paper-mode constants for this epsilon");
  cmd->add_option("--set", pf.set, "Scaled override key=value (b, b_dag, b_star, gamma, beta, threshold)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sunflower detection toolkit"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a family file");
  gen_cmd->add_option("kind", gen.kind, "random | planted | er-lower")
      ->required()
      ->check(CLI::IsMember({"random", "planted", "er-lower"}));
  gen_cmd->add_option("-m", gen.m, "Member cardinality")->required();
  gen_cmd->add_option("-k", gen.k, "Sunflower size");
  gen_cmd->add_option("-n", gen.n, "Universe size");
  gen_cmd->add_option("--size", gen.size, "Number of members (random)");
  gen_cmd->add_option("--core", gen.core, "Planted core size");
  gen_cmd->add_option("--extra", gen.extra, "Planted petal count");
  gen_cmd->add_option("--noise", gen.noise, "Noise members per petal, rational in [0,1)");
  gen_cmd->add_option("--seed", gen.seed, "PRNG seed");
  gen_cmd->add_option("-o,--out", gen.out, "Family output path (stdout if absent)");
  gen_cmd->add_option("--cert-out", gen.cert_out, "Planted certificate path (default <out>.cert)");
  gen_cmd->add_option("--manifest", gen.manifest, "Append a seed record to this manifest");

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Check a condition on a family");
  check_cmd->add_option("file", check.file)->required()->check(CLI::ExistingFile);
  check_cmd->add_option("--gamma", check.gamma, "Gamma(b) check for this b");
  check_cmd->add_option("--pair-bounds", check.pair_bounds, "Neighbor-pair bound report for this b");
  check_cmd->add_option("--psi3", check.psi3_ids, "psi3 on comma-separated element ids");
  check_cmd->add_option("-k", check.k, "Sunflower size for parameter derivation");
  check_cmd->add_option("--jobs", check.jobs)->check(CLI::PositiveNumber);
  add_param_flags(check_cmd, check.params);

  FindOptions find;
  auto* find_cmd = app.add_subcommand("find", "Search for a k-sunflower");
  find_cmd->add_option("file", find.file)->required()->check(CLI::ExistingFile);
  find_cmd->add_option("-k", find.k, "Sunflower size")->required();
  find_cmd->add_option("--method", find.method)->check(CLI::IsMember({"exact", "greedy", "paper"}));
  find_cmd->add_option("--jobs", find.jobs)->check(CLI::PositiveNumber);
  find_cmd->add_option("--max-nodes", find.max_nodes, "Exact search node budget");
  find_cmd->add_option("--triple-budget", find.triple_budget, "Shift-down triple budget");
  find_cmd->add_flag("--no-fallback", find.no_fallback, "Do not fall back to the greedy recursion");
  find_cmd->add_option("-o,--out", find.out, "Certificate output path (stdout if absent)");
  find_cmd->add_option("--report", find.report, "Stage failure report path (stderr if absent)");
  add_param_flags(find_cmd, find.params);

  std::string verify_family, verify_cert;
  std::optional<int> verify_k;
  auto* verify_cmd = app.add_subcommand("verify", "Verify a certificate");
  verify_cmd->add_option("family", verify_family)->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("cert", verify_cert)->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("-k", verify_k, "Required petal count");

  int bounds_k = 3, m_min = 1, m_max = 10;
  std::string bounds_eps = "1/2";
  auto* bounds_cmd = app.add_subcommand("bounds", "Tabulate sunflower bounds");
  bounds_cmd->add_option("-k", bounds_k)->required()->check(CLI::Range(2, 1000));
  bounds_cmd->add_option("--m-min", m_min);
  bounds_cmd->add_option("--m-max", m_max);
  bounds_cmd->add_option("--epsilon", bounds_eps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*check_cmd) return cmd_check(check);
    if (*find_cmd) return cmd_find(find);
    if (*verify_cmd) return cmd_verify(verify_family, verify_cert, verify_k);
    if (*bounds_cmd) return cmd_bounds(bounds_k, m_min, m_max, bounds_eps);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return usage;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return domain;
  } catch (const FamilyError& e) {
    std::cerr << "family error: " << e.what() << "\n";
    return domain;
  } catch (const SizingError& e) {
    std::cerr << "sizing: " << e.what() << "\n";
    return budget;
  } catch (const PrecisionError& e) {
    std::cerr << "precision: " << e.what() << "\n";
    return domain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return usage;
  }
  return usage;
}
