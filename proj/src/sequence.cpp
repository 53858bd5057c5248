#include "fekete/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fekete/error.hpp"

namespace fekete {

SequencePrefix::SequencePrefix(std::vector<Rational> values) {
  if (values.empty()) throw DomainError("empty sequence");
  values_.reserve(values.size() + 1);
  values_.emplace_back(0);
  for (auto& v : values) values_.push_back(std::move(v));
}

const Rational& SequencePrefix::at(Index n) const {
  if (n < 0 || n > horizon()) {
    throw DomainError("index " + std::to_string(n) + " outside 0.." + std::to_string(horizon()));
  }
  return (*this)[n];
}

ErrorTerm::ErrorTerm(std::vector<Rational> values, std::optional<std::string> family_tag)
    : table_(std::move(values)), family_tag_(std::move(family_tag)) {
  const Index h = table_.horizon();
  for (Index n = 1; n <= h; ++n) {
    if (table_[n].sign() < 0) {
      throw DomainError("error term is negative at n=" + std::to_string(n));
    }
    if (n > 1 && table_[n] < table_[n - 1]) {
      throw DomainError("error term decreases at n=" + std::to_string(n));
    }
  }
}

ErrorTerm ErrorTerm::zero(Index horizon) {
  if (horizon < 1) throw DomainError("horizon must be positive");
  return ErrorTerm(std::vector<Rational>(static_cast<std::size_t>(horizon)), "zero");
}

bool ErrorTerm::is_zero() const {
  // Non-decreasing and non-negative, so the last entry decides.
  return table_[horizon()].sign() == 0;
}

// ---------------------------------------------------------------------------
// Builtin families

namespace {

const Rational& require_param(const FamilySpec& family, const std::string& key) {
  auto it = family.params.find(key);
  if (it == family.params.end()) {
    throw DomainError("family " + family.name + " requires parameter '" + key + "'");
  }
  return it->second;
}

void reject_extra_params(const FamilySpec& family, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : family.params) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw DomainError("family " + family.name + " has no parameter '" + key + "'");
    }
  }
}

Rational nonnegative_param(const FamilySpec& family, const std::string& key) {
  const Rational& c = require_param(family, key);
  if (c.sign() < 0) throw DomainError("parameter " + key + " must be >= 0, got " + c.to_string());
  return c;
}

// (n+1)^e <= 2^n, decided from the bit length.
bool power_fits_under_two_pow(Index n, unsigned long e) {
  mpz_class x;
  mpz_ui_pow_ui(x.get_mpz_t(), static_cast<unsigned long>(n + 1), e);
  const auto bits = static_cast<Index>(mpz_sizeinbase(x.get_mpz_t(), 2));
  if (bits <= n) return true;
  if (bits == n + 1) return static_cast<Index>(mpz_scan1(x.get_mpz_t(), 0)) == n;
  return false;
}

std::vector<Rational> linear_over_log_values(Index horizon) {
  // floor(n / log2(n+1)) is the largest k with (n+1)^k <= 2^n. A double
  // estimate is trusted when it sits well away from an integer; otherwise the
  // exact power test decides.
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(horizon));
  for (Index n = 1; n <= horizon; ++n) {
    const double estimate = static_cast<double>(n) / std::log2(static_cast<double>(n + 1));
    const double nearest = std::round(estimate);
    unsigned long k = 0;
    if (std::abs(estimate - nearest) > 1e-6) {
      k = static_cast<unsigned long>(std::floor(estimate));
    } else {
      k = static_cast<unsigned long>(nearest);
      if (!power_fits_under_two_pow(n, k)) --k;
    }
    out.emplace_back(static_cast<std::int64_t>(k));
  }
  return out;
}

std::vector<Rational> floor_power_values(const Rational& c, const Rational& delta, Index horizon) {
  // floor(c * n^((q-p)/q)) = floor((c^q * n^(q-p))^(1/q)) with delta = p/q.
  const unsigned long q = delta.denominator().get_ui();
  const unsigned long e = q - delta.numerator().get_ui();
  mpz_class cq_num;
  mpz_class cq_den;
  mpz_pow_ui(cq_num.get_mpz_t(), c.numerator().get_mpz_t(), q);
  mpz_pow_ui(cq_den.get_mpz_t(), c.denominator().get_mpz_t(), q);

  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(horizon));
  mpz_class radicand;
  mpz_class root;
  for (Index n = 1; n <= horizon; ++n) {
    mpz_ui_pow_ui(radicand.get_mpz_t(), static_cast<unsigned long>(n), e);
    radicand *= cq_num;
    mpz_fdiv_q(radicand.get_mpz_t(), radicand.get_mpz_t(), cq_den.get_mpz_t());
    mpz_root(root.get_mpz_t(), radicand.get_mpz_t(), q);
    out.emplace_back(root);
  }
  return out;
}

}  // namespace

std::string FamilySpec::describe() const {
  std::ostringstream os;
  os << name;
  if (!params.empty()) {
    os << '(';
    bool first = true;
    for (const auto& [key, value] : params) {
      if (!first) os << ',';
      os << key << '=' << value;
      first = false;
    }
    os << ')';
  }
  return os.str();
}

const std::vector<std::string>& builtin_family_names() {
  static const std::vector<std::string> names = {"zero",        "constant",        "floor_sqrt",
                                                 "floor_power", "linear_over_log", "linear"};
  return names;
}

ErrorTerm builtin_error_term(const FamilySpec& family, Index horizon) {
  if (horizon < 1) throw DomainError("horizon must be positive");
  const auto h = static_cast<std::size_t>(horizon);
  std::vector<Rational> values;

  if (family.name == "zero") {
    reject_extra_params(family, {});
    values.assign(h, Rational(0));
  } else if (family.name == "constant") {
    reject_extra_params(family, {"c"});
    values.assign(h, Rational(nonnegative_param(family, "c").floor()));
  } else if (family.name == "floor_sqrt") {
    reject_extra_params(family, {});
    values.reserve(h);
    for (Index n = 1; n <= horizon; ++n) {
      values.emplace_back(mpz_class(sqrt(mpz_class(static_cast<long>(n)))));
    }
  } else if (family.name == "floor_power") {
    reject_extra_params(family, {"c", "delta"});
    const Rational c = nonnegative_param(family, "c");
    const Rational& delta = require_param(family, "delta");
    if (delta.sign() <= 0 || delta > Rational(1)) {
      throw DomainError("floor_power needs 0 < delta <= 1, got " + delta.to_string());
    }
    if (!delta.denominator().fits_ulong_p()) throw DomainError("delta denominator too large");
    values = floor_power_values(c, delta, horizon);
  } else if (family.name == "linear_over_log") {
    reject_extra_params(family, {});
    values = linear_over_log_values(horizon);
  } else if (family.name == "linear") {
    reject_extra_params(family, {"c"});
    const Rational c = nonnegative_param(family, "c");
    values.reserve(h);
    for (Index n = 1; n <= horizon; ++n) values.emplace_back((c * Rational(n)).floor());
  } else {
    throw DomainError("unknown error-term family '" + family.name + "'");
  }
  return ErrorTerm(std::move(values), family.describe());
}

// ---------------------------------------------------------------------------
// Pair domains

namespace {

void require_threshold(Index N) {
  if (N < 1) throw DomainError("threshold N must be >= 1, got " + std::to_string(N));
}

struct AdmitVisitor {
  Index n;  // n <= m
  Index m;

  bool operator()(const FullDomain&) const { return true; }
  bool operator()(const ThresholdDomain& d) const { return n >= d.N; }
  bool operator()(const MuBandDomain& d) const {
    return n >= d.N && Rational(m) <= d.mu * Rational(n);
  }
  bool operator()(const OnePlusDomain& d) const { return n >= d.N && (m == n || m == n + 1); }
  bool operator()(const ExplicitDomain& d) const { return d.pairs.contains({n, m}); }
};

Index parse_index(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw ParseError("");
    return static_cast<Index>(v);
  } catch (const std::exception&) {
    throw ParseError("malformed " + what + ": '" + text + "'");
  }
}

}  // namespace

PairDomain full_domain() { return FullDomain{}; }

PairDomain threshold_domain(Index N) {
  require_threshold(N);
  return ThresholdDomain{N};
}

PairDomain mu_band_domain(Rational mu, Index N) {
  require_threshold(N);
  if (mu <= Rational(1)) throw DomainError("mu must be > 1, got " + mu.to_string());
  return MuBandDomain{std::move(mu), N};
}

PairDomain one_plus_domain(Index N) {
  require_threshold(N);
  return OnePlusDomain{N};
}

PairDomain explicit_domain(const std::vector<std::pair<Index, Index>>& pairs) {
  ExplicitDomain d;
  for (auto [n, m] : pairs) {
    if (n < 1 || m < 1) throw DomainError("explicit pairs need positive entries");
    d.pairs.emplace(std::min(n, m), std::max(n, m));
  }
  return d;
}

bool admits(const PairDomain& domain, Index n, Index m) {
  if (n < 1 || m < 1) return false;
  return std::visit(AdmitVisitor{std::min(n, m), std::max(n, m)}, domain);
}

std::string describe(const PairDomain& domain) {
  struct V {
    std::string operator()(const FullDomain&) const { return "full"; }
    std::string operator()(const ThresholdDomain& d) const { return "threshold:" + std::to_string(d.N); }
    std::string operator()(const MuBandDomain& d) const {
      return "muband:" + d.mu.numerator().get_str() + "/" + d.mu.denominator().get_str() + "," +
             std::to_string(d.N);
    }
    std::string operator()(const OnePlusDomain& d) const { return "oneplus:" + std::to_string(d.N); }
    std::string operator()(const ExplicitDomain& d) const { return "explicit:" + std::to_string(d.pairs.size()); }
  };
  return std::visit(V{}, domain);
}

PairDomain parse_domain(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);

  if (kind == "full" && colon == std::string::npos) return full_domain();
  if (kind == "threshold") return threshold_domain(parse_index(arg, "threshold"));
  if (kind == "oneplus") return one_plus_domain(parse_index(arg, "threshold"));
  if (kind == "muband") {
    const auto comma = arg.find(',');
    if (comma == std::string::npos) throw ParseError("muband domain needs 'muband:P/Q,N'");
    return mu_band_domain(Rational::parse(arg.substr(0, comma)), parse_index(arg.substr(comma + 1), "threshold"));
  }
  throw ParseError("unknown pair domain '" + text + "'");
}

}  // namespace fekete
