#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "fekete/rational.hpp"
#include "fekete/sequence.hpp"

namespace fekete {

// ---------------------------------------------------------------------------
// 2-good decomposition

struct Merge {
  Index left;
  Index right;
  Index sum;
  friend bool operator==(const Merge&, const Merge&) = default;
};

/// Chain X_{floor(n/k)} -> ... -> X_1 = {n}. X_{floor(n/k)} holds k
/// (floor(n/k) - 1 times) and beta; each step replaces the two smallest
/// members by their sum. Multisets are kept sorted ascending.
struct TwoGoodChain {
  Index n;
  Index k;
  Index beta;
  std::vector<std::vector<Index>> chain;  // chain[0] = X_{floor(n/k)}, chain.back() = {n}
  std::vector<Merge> merge_trace;
};

/// Throws DomainError unless n >= 2k >= 2.
TwoGoodChain two_good_chain(Index n, Index k);

/// max/min <= 2 over the multiset.
bool is_two_good(const std::vector<Index>& multiset);

/// Sum of a(x) over each multiset of the chain, in chain order.
std::vector<Rational> chain_sums(const TwoGoodChain& chain, const SequencePrefix& a);

// ---------------------------------------------------------------------------
// Convex f-subadditive sequence

/// a(n) = n * sum_{i<=n} f(i)/i^2 with f(1) taken as 0. Throws DomainError if
/// horizon exceeds f's.
SequencePrefix convex_from_error(const ErrorTerm& f, Index horizon);

// ---------------------------------------------------------------------------
// Rationals

/// j-th positive rational (j >= 1) in Calkin-Wilf breadth-first order:
/// 1, 1/2, 2, 1/3, 3/2, 2/3, 3, ...
Rational calkin_wilf(Index j);

/// Successor in Calkin-Wilf order: 1 / (2 floor(x) + 1 - x). x > 0.
Rational calkin_wilf_next(const Rational& x);

/// Bijection N -> Q: r_1 = 0, r_{2j} = calkin_wilf(j), r_{2j+1} = -calkin_wilf(j).
Rational enumerate_rationals(Index i);

/// Inverse of enumerate_rationals.
Index rational_index(const Rational& r);

/// Rational in the open interval (lo, hi) outside `forbidden` with minimal
/// denominator, ties broken by minimal numerator. A forbidden candidate c
/// sends the search into (lo, c). Throws DomainError unless lo < hi.
Rational simplest_rational_in(const Rational& lo, const Rational& hi, const std::set<Rational>& forbidden = {});

/// Same rule with the forbidden set given as a predicate.
Rational simplest_rational_in(const Rational& lo, const Rational& hi,
                              const std::function<bool(const Rational&)>& forbidden);

// ---------------------------------------------------------------------------
// Every-rational slope sequence

struct ConstructionOutput {
  SequencePrefix b;          // b(x) = a(x) - c(x) x on 1..n_K
  std::vector<Rational> c;   // c(1..n_K), non-decreasing
  SequencePrefix a;          // convex_from_error(f) on 1..n_K
  std::map<Index, Index> coverage;  // i -> x with b(x)/x = r_i
  std::vector<Index> checkpoints;   // n_0, n_1, ..., n_K
  std::string enumeration = "calkin-wilf-interleaved";
};

/// Builds b with b(x)/x pairwise distinct and covering r_1..r_K. Throws
/// ConstructionFailure with "f identically zero" or "horizon exhausted".
ConstructionOutput rational_slope_sequence(const ErrorTerm& f, Index K, Index max_horizon);

// ---------------------------------------------------------------------------
// Threshold and linear-error examples

/// a(n) = 1 for n <= n_1; on [n_i, n_{i+1}) a(n) = 1 when n_{i+1} - n lies in
/// [2, N] and n/n_i otherwise; past the last anchor a(n) = n/n_last.
/// Requires N >= 2, N <= n_1 and n_{i+1} - n_i > N + 1.
SequencePrefix threshold_gap_example(Index N, const std::vector<Index>& anchors, Index horizon);

struct LinearErrorExample {
  SequencePrefix a;
  std::vector<Index> anchors;
};

/// a(n_i) = f(n_i) on greedily chosen anchors with f(n_i)/n_i > L/2 and gaps
/// >= 2, zero elsewhere. Throws ConstructionFailure with fewer than two anchors.
LinearErrorExample linear_error_example(const ErrorTerm& f, const Rational& L, Index horizon);

}  // namespace fekete
