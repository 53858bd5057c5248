#include "fekete/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "fekete/error.hpp"

namespace fekete::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Rational rational_from_json(const Json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  throw ParseError("malformed number: " + v.dump());
}

Index index_from_text(std::string_view s, const char* what) {
  s = trim(s);
  const Rational r = Rational::parse(s);
  if (!r.is_integer()) throw ParseError(std::string("malformed ") + what + ": '" + std::string(s) + "'");
  return to_int64(r.numerator());
}

std::vector<Rational> values_from_json(const Json& array) {
  if (!array.is_array()) throw ParseError("\"values\" must be an array");
  std::vector<Rational> values;
  values.reserve(array.size());
  for (const auto& v : array) values.push_back(rational_from_json(v));
  if (values.empty()) throw ParseError("empty sequence");
  return values;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Json rationals(std::span<const Rational> xs) {
  Json arr = Json::array();
  for (const auto& x : xs) arr.push_back(x.to_string());
  return arr;
}

}  // namespace

std::string rational_string(const Rational& x) { return x.to_string(); }

SequencePrefix parse_sequence(std::string_view text) {
  const std::string_view t = trim(text);
  if (!t.empty() && t.front() == '{') return parse_sequence_json(t);
  return parse_sequence_csv(t);
}

SequencePrefix parse_sequence_json(std::string_view text) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("sequence document must be a JSON object");
  if (doc.contains("offset")) {
    const auto& off = doc["offset"];
    if (!off.is_number_integer() || off.get<std::int64_t>() != 1) throw ParseError("\"offset\" must be 1");
  }
  if (doc.contains("values")) return SequencePrefix(values_from_json(doc["values"]));
  if (doc.contains("b")) return SequencePrefix(values_from_json(doc["b"]));
  throw ParseError("sequence document has no \"values\"");
}

SequencePrefix parse_sequence_csv(std::string_view text) {
  std::map<Index, Rational> entries;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 2) throw ParseError("CSV line " + std::to_string(line_no) + ": expected 'index,value'");
    const Index n = index_from_text(fields[0], "index");
    if (n < 1) throw ParseError("CSV line " + std::to_string(line_no) + ": index must be >= 1");
    if (!entries.emplace(n, Rational::parse(trim(fields[1]))).second) {
      throw ParseError("duplicate index " + std::to_string(n));
    }
  }
  if (entries.empty()) throw ParseError("empty sequence");
  std::vector<Rational> values;
  values.reserve(entries.size());
  Index expected = 1;
  for (auto& [n, v] : entries) {
    if (n != expected) throw ParseError("missing index " + std::to_string(expected));
    values.push_back(std::move(v));
    ++expected;
  }
  return SequencePrefix(std::move(values));
}

std::string serialize_sequence_json(const SequencePrefix& a) {
  Json doc;
  doc["values"] = rationals(a.values());
  doc["offset"] = 1;
  return dump(doc);
}

std::string serialize_sequence_csv(const SequencePrefix& a) {
  std::ostringstream os;
  for (Index n = 1; n <= a.horizon(); ++n) os << n << ',' << a[n] << '\n';
  return os.str();
}

FamilySpec parse_family_spec(std::string_view text) {
  text = trim(text);
  constexpr std::string_view prefix = "family:";
  if (text.substr(0, prefix.size()) == prefix) text.remove_prefix(prefix.size());
  const auto parts = split(text, ',');
  FamilySpec spec{std::string(trim(parts.front())), {}};
  if (spec.name.empty()) throw ParseError("missing family name");
  static const char* positional[] = {"c", "delta"};
  std::size_t next_positional = 0;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::string_view part = trim(parts[i]);
    const auto eq = part.find('=');
    std::string key;
    std::string_view value;
    if (eq == std::string_view::npos) {
      if (next_positional >= std::size(positional)) throw ParseError("too many family parameters");
      key = positional[next_positional++];
      value = part;
    } else {
      key = std::string(trim(part.substr(0, eq)));
      value = trim(part.substr(eq + 1));
    }
    spec.params.insert_or_assign(key, Rational::parse(value));
  }
  return spec;
}

ErrorTerm parse_error_term_json(std::string_view text, std::optional<Index> default_horizon) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("error-term document must be a JSON object");
  if (doc.contains("family")) {
    if (!doc["family"].is_string()) throw ParseError("\"family\" must be a string");
    FamilySpec spec{doc["family"].get<std::string>(), {}};
    if (doc.contains("params")) {
      if (!doc["params"].is_object()) throw ParseError("\"params\" must be an object");
      for (const auto& [key, value] : doc["params"].items()) spec.params.emplace(key, rational_from_json(value));
    }
    Index h = 0;
    if (doc.contains("H")) {
      if (!doc["H"].is_number_integer()) throw ParseError("\"H\" must be an integer");
      h = doc["H"].get<Index>();
    } else if (default_horizon) {
      h = *default_horizon;
    } else {
      throw ParseError("family document needs \"H\"");
    }
    return builtin_error_term(spec, h);
  }
  if (doc.contains("values")) return ErrorTerm(values_from_json(doc["values"]));
  throw ParseError("error-term document needs \"family\" or \"values\"");
}

PairDomain parse_explicit_domain(std::string_view text) {
  std::vector<std::pair<Index, Index>> pairs;
  const std::string_view t = trim(text);
  if (!t.empty() && t.front() == '{') {
    const Json doc = parse_json(t);
    if (!doc.contains("pairs") || !doc["pairs"].is_array()) throw ParseError("explicit domain needs \"pairs\"");
    for (const auto& p : doc["pairs"]) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
        throw ParseError("malformed pair " + p.dump());
      }
      pairs.emplace_back(p[0].get<Index>(), p[1].get<Index>());
    }
  } else {
    for (std::string_view line : split(t, '\n')) {
      line = trim(line);
      if (line.empty()) continue;
      const auto fields = split(line, ',');
      if (fields.size() != 2) throw ParseError("expected 'n,m' in pair list");
      pairs.emplace_back(index_from_text(fields[0], "pair"), index_from_text(fields[1], "pair"));
    }
  }
  try {
    return explicit_domain(pairs);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

Json to_json(const PairDomain& domain) {
  struct V {
    Json operator()(const FullDomain&) const { return {{"kind", "full"}}; }
    Json operator()(const ThresholdDomain& d) const { return {{"kind", "threshold"}, {"N", d.N}}; }
    Json operator()(const MuBandDomain& d) const {
      return {{"kind", "muband"}, {"mu", d.mu.to_string()}, {"N", d.N}};
    }
    Json operator()(const OnePlusDomain& d) const { return {{"kind", "oneplus"}, {"N", d.N}}; }
    Json operator()(const ExplicitDomain& d) const {
      Json pairs = Json::array();
      for (auto [n, m] : d.pairs) pairs.push_back({n, m});
      return {{"kind", "explicit"}, {"pairs", pairs}};
    }
  };
  return std::visit(V{}, domain);
}

Json to_json(const ViolationReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"n", v.n}, {"m", v.m}, {"deficit", v.deficit.to_string()}});
  }
  return {{"domain", to_json(report.domain)}, {"pairs_checked", report.pairs_checked}, {"violations", violations}};
}

Json to_json(const QSequence& q) {
  return {{"n_lo", q.n_lo}, {"values", rationals(q.values)}};
}

Json to_json(const LimitBracket& bracket) {
  Json samples = Json::array();
  for (const auto& s : bracket.tail_samples) {
    samples.push_back({{"n", s.n}, {"k", s.k}, {"bound", s.bound.to_string()}});
  }
  return {{"N", bracket.N},
          {"min_slope", bracket.min_slope.to_string()},
          {"argmin_k", bracket.argmin_k},
          {"tail_samples", samples}};
}

Json to_json(const MuChainCertificate& cert) {
  return {{"mu", cert.mu.to_string()}, {"N", cert.N},   {"k", cert.k}, {"N1", cert.N1},
          {"N2", cert.N2},             {"n", cert.n},   {"u", cert.u}, {"v", cert.v},
          {"doubling_covered", cert.doubling_covered}};
}

Json to_json(const TwoGoodChain& chain) {
  Json trace = Json::array();
  for (const auto& m : chain.merge_trace) trace.push_back({m.left, m.right, m.sum});
  return {{"n", chain.n}, {"k", chain.k}, {"beta", chain.beta}, {"chain", chain.chain}, {"merge_trace", trace}};
}

Json to_json(const ConstructionOutput& out) {
  Json coverage = Json::object();
  for (auto [i, x] : out.coverage) coverage[std::to_string(i)] = x;
  return {{"enumeration", out.enumeration},
          {"b", rationals(out.b.values())},
          {"c", rationals(out.c)},
          {"a", rationals(out.a.values())},
          {"coverage", coverage},
          {"checkpoints", out.checkpoints},
          {"offset", 1}};
}

Json to_json(const LinearErrorExample& example) {
  return {{"values", rationals(example.a.values())}, {"offset", 1}, {"anchors", example.anchors}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace fekete::io
