#include "sunflower/setfam.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>
#include <thread>

namespace sunflower {

FamilyError::FamilyError(const std::string& what, std::size_t line)
    : std::invalid_argument(line ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

bool is_subset(const ElementSet& small, const ElementSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string format_set(const ElementSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(s[i]);
  }
  return out;
}

SetFamily::SetFamily(std::size_t n, std::size_t m, std::vector<ElementSet> members,
                     std::size_t max_universe)
    : n_(n), m_(m), members_(std::move(members)) {
  if (n_ < 1) throw FamilyError("universe must have at least one element");
  if (n_ > max_universe)
    throw FamilyError("universe size " + std::to_string(n_) + " exceeds cap " +
                      std::to_string(max_universe));
  if (m_ > n_) throw FamilyError("cardinality exceeds universe size");
  for (const auto& u : members_) {
    if (u.size() != m_)
      throw FamilyError("member {" + format_set(u) + "} has cardinality " +
                        std::to_string(u.size()) + ", expected " + std::to_string(m_));
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] >= n_) throw FamilyError("element id " + std::to_string(u[i]) + " >= n");
      if (i && u[i - 1] >= u[i]) throw FamilyError("member ids not strictly increasing");
    }
  }
  std::sort(members_.begin(), members_.end());
  auto dup = std::adjacent_find(members_.begin(), members_.end());
  if (dup != members_.end()) throw FamilyError("duplicate member {" + format_set(*dup) + "}");
  build_bitsets();
}

SetFamily::SetFamily(Canonical, std::size_t n, std::size_t m, std::vector<ElementSet> members)
    : n_(n), m_(m), members_(std::move(members)) {
  build_bitsets();
}

void SetFamily::build_bitsets() {
  row_words_ = (n_ + 63) / 64;
  column_words_ = (members_.size() + 63) / 64;
  rows_.assign(row_words_ * members_.size(), 0);
  columns_.assign(column_words_ * n_, 0);
  for (std::size_t i = 0; i < members_.size(); ++i) {
    for (Element e : members_[i]) {
      rows_[i * row_words_ + e / 64] |= std::uint64_t{1} << (e % 64);
      columns_[e * column_words_ + i / 64] |= std::uint64_t{1} << (i % 64);
    }
  }
}

std::size_t SetFamily::intersection_size(std::size_t i, std::size_t j) const {
  auto a = row(i), b = row(j);
  std::size_t count = 0;
  for (std::size_t w = 0; w < row_words_; ++w) count += std::popcount(a[w] & b[w]);
  return count;
}

ElementSet SetFamily::intersection(std::size_t i, std::size_t j) const {
  return set_intersection(members_[i], members_[j]);
}

std::size_t SetFamily::count_containing(const ElementSet& s) const {
  if (s.empty()) return members_.size();
  for (Element e : s)
    if (e >= n_) return 0;
  std::size_t count = 0;
  for (std::size_t w = 0; w < column_words_; ++w) {
    std::uint64_t acc = ~std::uint64_t{0};
    for (Element e : s) acc &= column(e)[w];
    count += std::popcount(acc);
  }
  return count;
}

std::vector<std::size_t> SetFamily::members_containing(const ElementSet& s) const {
  std::vector<std::size_t> out;
  if (s.empty()) {
    out.resize(members_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
  }
  for (Element e : s)
    if (e >= n_) return out;
  for (std::size_t w = 0; w < column_words_; ++w) {
    std::uint64_t acc = ~std::uint64_t{0};
    for (Element e : s) acc &= column(e)[w];
    while (acc) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(acc)));
      acc &= acc - 1;
    }
  }
  return out;
}

std::size_t SetFamily::find(const ElementSet& s) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), s);
  if (it == members_.end() || *it != s) return members_.size();
  return static_cast<std::size_t>(it - members_.begin());
}

SetFamily restrict(const SetFamily& f, const ElementSet& s) {
  if (s.empty()) return f;
  std::vector<ElementSet> kept;
  for (std::size_t i : f.members_containing(s)) kept.push_back(f[i]);
  return SetFamily(SetFamily::Canonical{}, f.universe(), f.cardinality(), std::move(kept));
}

Link link(const SetFamily& f, const ElementSet& s) {
  if (s.size() > f.cardinality()) return {SetFamily(SetFamily::Canonical{}, f.universe(), 0, {}), {}};
  std::vector<std::pair<ElementSet, std::size_t>> rest;
  for (std::size_t i : f.members_containing(s)) rest.emplace_back(set_difference(f[i], s), i);
  std::sort(rest.begin(), rest.end());
  Link out{SetFamily(SetFamily::Canonical{}, f.universe(), f.cardinality() - s.size(), {}), {}};
  std::vector<ElementSet> members;
  members.reserve(rest.size());
  for (auto& [u, i] : rest) {
    members.push_back(std::move(u));
    out.origin.push_back(i);
  }
  out.family = SetFamily(SetFamily::Canonical{}, f.universe(), f.cardinality() - s.size(),
                         std::move(members));
  return out;
}

std::vector<std::uint64_t> intersection_histogram(const SetFamily& f, unsigned jobs) {
  const std::size_t size = f.size();
  auto count_rows = [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint64_t> h(f.cardinality() + 1, 0);
    for (std::size_t t = begin; t < end; ++t)
      for (std::size_t u = 0; u < size; ++u) ++h[f.intersection_size(t, u)];
    return h;
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(size, 1))));
  if (jobs == 1) return count_rows(0, size);
  std::vector<std::vector<std::uint64_t>> parts(jobs);
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    std::size_t begin = size * w / jobs, end = size * (w + 1) / jobs;
    workers.emplace_back([&, w, begin, end] { parts[w] = count_rows(begin, end); });
  }
  for (auto& t : workers) t.join();
  std::vector<std::uint64_t> h(f.cardinality() + 1, 0);
  for (const auto& p : parts)
    for (std::size_t j = 0; j < h.size(); ++j) h[j] += p[j];
  return h;
}

namespace {

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

bool parse_size(const std::string& token, std::size_t& out) {
  if (token.empty()) return false;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && ptr == token.data() + token.size();
}

}  // namespace

SetFamily load_family(const std::string& text, std::size_t max_universe) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0, m = 0;
  std::vector<ElementSet> members;
  std::vector<std::size_t> member_lines;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = strip_comment(line);
    if (is_blank(body)) continue;
    std::istringstream tokens(body);
    std::string token;
    if (!have_header) {
      std::string n_tok, m_tok, extra;
      tokens >> n_tok >> m_tok;
      if (tokens >> extra || n_tok.rfind("n=", 0) != 0 || m_tok.rfind("m=", 0) != 0 ||
          !parse_size(n_tok.substr(2), n) || !parse_size(m_tok.substr(2), m))
        throw FamilyError("expected header 'n=<int> m=<int>'", line_no);
      if (n < 1) throw FamilyError("n must be positive", line_no);
      if (n > max_universe) throw FamilyError("n exceeds universe cap", line_no);
      if (m < 1 || m > n) throw FamilyError("m must be in [1, n]", line_no);
      have_header = true;
      continue;
    }
    ElementSet u;
    while (tokens >> token) {
      std::size_t id = 0;
      if (!parse_size(token, id)) throw FamilyError("malformed element id '" + token + "'", line_no);
      if (id >= n) throw FamilyError("element id " + token + " >= n=" + std::to_string(n), line_no);
      u.push_back(static_cast<Element>(id));
    }
    std::sort(u.begin(), u.end());
    if (std::adjacent_find(u.begin(), u.end()) != u.end())
      throw FamilyError("repeated element id in member", line_no);
    if (u.size() != m)
      throw FamilyError("member has " + std::to_string(u.size()) + " elements, expected m=" +
                            std::to_string(m),
                        line_no);
    members.push_back(std::move(u));
    member_lines.push_back(line_no);
  }
  if (!have_header) throw FamilyError("missing header 'n=<int> m=<int>'", line_no);
  std::vector<std::size_t> order(members.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return members[a] < members[b]; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (members[order[i]] == members[order[i - 1]])
      throw FamilyError("duplicate member {" + format_set(members[order[i]]) + "}",
                        member_lines[order[i]]);
  return SetFamily(n, m, std::move(members), max_universe);
}

std::string save_family(const SetFamily& f) {
  std::string out = "n=" + std::to_string(f.universe()) + " m=" + std::to_string(f.cardinality()) + "\n";
  for (const auto& u : f.members()) out += format_set(u) + "\n";
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

SetFamily read_family_file(const std::string& path, std::size_t max_universe) {
  return load_family(read_text_file(path), max_universe);
}

}  // namespace sunflower
