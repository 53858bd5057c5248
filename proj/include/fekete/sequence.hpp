#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fekete/rational.hpp"

namespace fekete {

/// 1-based position in a sequence. Index 0 is the implicit a(0) = 0.
using Index = std::int64_t;

/// Finite table a(1..H) of exact values.
class SequencePrefix {
 public:
  /// Throws DomainError on an empty list.
  explicit SequencePrefix(std::vector<Rational> values);

  Index horizon() const { return static_cast<Index>(values_.size()) - 1; }

  /// a(n) for 0 <= n <= H; a(0) is 0.
  const Rational& operator[](Index n) const { return values_[static_cast<std::size_t>(n)]; }
  const Rational& at(Index n) const;

  std::span<const Rational> values() const { return std::span(values_).subspan(1); }

  /// Slope a(n)/n.
  Rational slope(Index n) const { return (*this)[n] / Rational(n); }

  friend bool operator==(const SequencePrefix&, const SequencePrefix&) = default;

 private:
  std::vector<Rational> values_;  // values_[0] == 0
};

/// Error term f(1..H): non-negative and non-decreasing.
class ErrorTerm {
 public:
  /// Throws DomainError when the list is empty, has a negative entry or
  /// decreases somewhere.
  explicit ErrorTerm(std::vector<Rational> values, std::optional<std::string> family_tag = std::nullopt);

  static ErrorTerm zero(Index horizon);

  Index horizon() const { return table_.horizon(); }
  const Rational& operator[](Index n) const { return table_[n]; }
  std::span<const Rational> values() const { return table_.values(); }
  const std::optional<std::string>& family_tag() const { return family_tag_; }
  bool is_zero() const;

  const SequencePrefix& as_sequence() const { return table_; }

 private:
  SequencePrefix table_;
  std::optional<std::string> family_tag_;
};

/// A builtin error-term family with its rational parameters, e.g.
/// {"floor_power", {{"c", 1}, {"delta", 1/2}}}.
struct FamilySpec {
  std::string name;
  std::map<std::string, Rational> params;

  /// Canonical descriptor such as "floor_power(c=1,delta=1/2)".
  std::string describe() const;
};

/// Families:
///   zero                 f(n) = 0
///   constant(c)          f(n) = floor(c), c >= 0
///   floor_sqrt           f(n) = floor(sqrt(n))
///   floor_power(c,delta) f(n) = floor(c * n^(1-delta)), c >= 0, 0 < delta <= 1
///   linear_over_log      f(n) = floor(n / log2(n+1))
///   linear(c)            f(n) = floor(c * n), c >= 0
/// Every value is an exact integer. Throws DomainError on unknown names or
/// parameters out of range.
ErrorTerm builtin_error_term(const FamilySpec& family, Index horizon);

/// Names accepted by builtin_error_term.
const std::vector<std::string>& builtin_family_names();

// ---------------------------------------------------------------------------
// Pair domains

struct FullDomain {
  friend bool operator==(const FullDomain&, const FullDomain&) = default;
};
struct ThresholdDomain {
  Index N;
  friend bool operator==(const ThresholdDomain&, const ThresholdDomain&) = default;
};
/// N <= n <= m <= mu * n.
struct MuBandDomain {
  Rational mu;
  Index N;
  friend bool operator==(const MuBandDomain&, const MuBandDomain&) = default;
};
/// Pairs (n, n) and (n, n+1) for n >= N.
struct OnePlusDomain {
  Index N;
  friend bool operator==(const OnePlusDomain&, const OnePlusDomain&) = default;
};
/// Explicit finite pair set, stored normalized as n <= m.
struct ExplicitDomain {
  std::set<std::pair<Index, Index>> pairs;
  friend bool operator==(const ExplicitDomain&, const ExplicitDomain&) = default;
};

using PairDomain = std::variant<FullDomain, ThresholdDomain, MuBandDomain, OnePlusDomain, ExplicitDomain>;

PairDomain full_domain();
PairDomain threshold_domain(Index N);
PairDomain mu_band_domain(Rational mu, Index N);
PairDomain one_plus_domain(Index N);
PairDomain explicit_domain(const std::vector<std::pair<Index, Index>>& pairs);

/// True iff (min(n,m), max(n,m)) lies in the domain. n, m >= 1.
bool admits(const PairDomain& domain, Index n, Index m);

/// Short text form: "full", "threshold:N", "muband:P/Q,N", "oneplus:N",
/// "explicit:K" (K = number of pairs).
std::string describe(const PairDomain& domain);

/// Parses the non-explicit text forms accepted by describe().
PairDomain parse_domain(const std::string& text);

}  // namespace fekete
