#pragma once

#include <cstdint>
#include <vector>

#include "fekete/rational.hpp"
#include "fekete/sequence.hpp"

namespace fekete {

/// One pair (n <= m) where a(n+m) > a(n) + a(m) + f(n+m).
struct Violation {
  Index n;
  Index m;
  Rational deficit;  // a(n+m) - a(n) - a(m) - f(n+m) > 0

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Result of an exhaustive scan over the admitted pairs of a prefix.
/// Violations are sorted by (n+m, n).
struct ViolationReport {
  PairDomain domain;
  std::uint64_t pairs_checked = 0;
  std::vector<Violation> violations;

  bool clean() const { return violations.empty(); }
};

struct ScanOptions {
  /// Worker count; 0 means default_thread_count().
  unsigned threads = 0;
};

/// FEKETE_THREADS when set to a positive integer, else the hardware
/// concurrency (at least 1).
unsigned default_thread_count();

/// Checks a(n+m) <= a(n) + a(m) + f(n+m) for every admitted pair with
/// n <= m and n+m <= H. Throws DomainError if f's horizon is shorter than a's.
ViolationReport scan_violations(const SequencePrefix& a, const ErrorTerm& f, const PairDomain& domain,
                                ScanOptions options = {});

/// Same with f identically zero.
ViolationReport scan_violations(const SequencePrefix& a, const PairDomain& domain, ScanOptions options = {});

/// Number of admitted pairs with n <= m and n+m <= horizon.
std::uint64_t count_admitted_pairs(const PairDomain& domain, Index horizon);

/// q(n) = max{a(j)/j : n <= j <= 2n} for n_lo <= n <= floor(H/2).
struct QSequence {
  Index n_lo = 1;
  std::vector<Rational> values;

  Index n_hi() const { return n_lo + static_cast<Index>(values.size()) - 1; }
  const Rational& operator()(Index n) const { return values[static_cast<std::size_t>(n - n_lo)]; }
};

/// Throws DomainError unless n_lo >= 1 and 2*n_lo <= H.
QSequence q_sequence(const SequencePrefix& a, Index n_lo);

/// Indices n in [N, floor(H/2) - 1] with q(n) < q(n+1). Empty whenever the
/// prefix is (1+, N)-subadditive. Requires 2(N+1) <= H.
std::vector<Index> check_q_monotone(const SequencePrefix& a, Index N);

/// a(n-1) + a(n+1) - 2a(n), for 2 <= n <= H-1.
Rational second_difference(const SequencePrefix& a, Index n);

/// Indices 2 <= n <= H-1 where the second difference is negative. Requires H >= 3.
std::vector<Index> check_convexity(const SequencePrefix& a);

}  // namespace fekete
