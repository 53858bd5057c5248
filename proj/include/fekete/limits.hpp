#pragma once

#include <optional>
#include <vector>

#include "fekete/rational.hpp"
#include "fekete/sequence.hpp"

namespace fekete {

// ---------------------------------------------------------------------------
// Fekete brackets

/// a(k)/k + max{|a(k+1)|, ..., |a(2k-1)|}/n, the threshold form of the
/// standard tail bound on a(n)/n (valid for n >= 2k, k >= N and a(k) >= 0;
/// a negative a(k) can break it). The max over an empty window (k = 1) is 0.
struct TailBoundSample {
  Index n;
  Index k;
  Rational bound;
};

struct LimitBracket {
  Index N;
  Rational min_slope;  // min{a(k)/k : N <= k <= H}
  Index argmin_k;      // smallest k attaining min_slope
  std::vector<TailBoundSample> tail_samples;
};

/// Requires 2k-1 <= H and k >= 1.
Rational tail_bound(const SequencePrefix& a, Index k, Index n);

/// min_slope is an upper bound on lim a(n)/n for every (Threshold N)-
/// subadditive extension of the prefix. Samples are taken at n = H for
/// k = N and for the best k with 2k <= H. Throws DomainError if N > H.
LimitBracket fekete_bracket(const SequencePrefix& a, Index N);

// ---------------------------------------------------------------------------
// G-transform

/// G(n) = a(n) + 3n * sum_{x >= n} f(x)/x^2. The infinite tails cancel in
/// G(n+m) - G(n) - G(m), leaving
///   [a(n+m) - a(n) - a(m)] - 3n sum_{n<=x<n+m} f(x)/x^2 - 3m sum_{m<=x<n+m} f(x)/x^2.
/// Precomputes prefix sums of f(x)/x^2 for repeated queries.
class GTransform {
 public:
  /// Throws DomainError if f is shorter than a.
  GTransform(const SequencePrefix& a, const ErrorTerm& f);

  /// Requires n+m <= H; (n, m) is normalized to n <= m.
  Rational deficit(Index n, Index m) const;

 private:
  const SequencePrefix& a_;
  std::vector<Rational> prefix_;  // prefix_[x] = sum_{y < x} f(y)/y^2, x = 1..H+1
};

/// One-shot G(n+m) - G(n) - G(m). Requires n <= m and n+m <= min(H_a, H_f).
Rational g_deficit(const SequencePrefix& a, const ErrorTerm& f, Index n, Index m);

// ---------------------------------------------------------------------------
// mu-chains

/// Unique k >= 1 with (1+mu)^(k-1) <= 2^(k+1) < (1+mu)^k. Requires mu > 1.
unsigned long chain_length(const Rational& mu);

/// Doubling chain u_i = 2^i n against the growth chain
/// v_{i+1} = v_i + floor(mu v_i), both starting at n.
struct MuChainCertificate {
  Rational mu;
  Index N;
  unsigned long k;
  Index N1;  // analytic bound beyond which 2 u_k <= v_k
  Index N2;  // max{N, ceil(1/(mu-1))}
  Index n;
  std::vector<Index> u;
  std::vector<Index> v;
  bool doubling_covered;  // 2 u_k <= v_k, checked directly for this n
};

/// Throws DomainError if mu <= 1, N < 1 or n < 1.
MuChainCertificate mu_chain_certificate(const Rational& mu, Index N, Index n);

struct Split {
  Index x;
  Index y;
  friend bool operator==(const Split&, const Split&) = default;
};

/// Smallest x in [lo, hi] with x + y = z and x <= y <= mu x, if any.
std::optional<Split> find_split(Index z, Index lo, Index hi, const Rational& mu);

/// A z in [u_{i+1}, v_{i+1}] with no split from [u_i, v_i].
struct SplitGap {
  unsigned long level;  // i
  Index z;
};

/// Decides split reachability of every z on every level of the certificate
/// at once. The splits from [u_i, v_i] cover the union of the integer
/// intervals [2x, x + floor(mu x)]; left ends step by 2 and floor(mu x) - x
/// never decreases, so the union is gap-free exactly when
/// floor(mu u_i) > u_i or u_i = v_i. Returns the smallest uncovered z on the
/// lowest failing level.
std::optional<SplitGap> first_unsplittable(const MuChainCertificate& cert);

}  // namespace fekete
