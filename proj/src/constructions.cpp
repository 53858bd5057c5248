#include "fekete/constructions.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "fekete/error.hpp"

namespace fekete {

// ---------------------------------------------------------------------------
// 2-good decomposition

TwoGoodChain two_good_chain(Index n, Index k) {
  if (k < 1 || n < 2 * k) {
    throw DomainError("two_good_chain needs n >= 2k >= 2 (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  }
  const Index count = n / k;
  TwoGoodChain out{n, k, n - (count - 1) * k, {}, {}};

  std::vector<Index> current(static_cast<std::size_t>(count - 1), k);
  current.push_back(out.beta);  // k <= beta, so still sorted
  out.chain.push_back(current);
  out.chain.reserve(static_cast<std::size_t>(count));
  out.merge_trace.reserve(static_cast<std::size_t>(count - 1));

  while (current.size() > 1) {
    const Index x = current[0];
    const Index y = current[1];
    // x + y >= 2 min >= max, so the merged member goes last.
    current.erase(current.begin(), current.begin() + 2);
    current.push_back(x + y);
    out.merge_trace.push_back({x, y, x + y});
    out.chain.push_back(current);
  }
  return out;
}

bool is_two_good(const std::vector<Index>& multiset) {
  if (multiset.empty()) return true;
  const auto [lo, hi] = std::minmax_element(multiset.begin(), multiset.end());
  return *hi <= 2 * *lo;
}

std::vector<Rational> chain_sums(const TwoGoodChain& chain, const SequencePrefix& a) {
  if (chain.n > a.horizon()) throw DomainError("chain exceeds the sequence horizon");
  std::vector<Rational> sums;
  sums.reserve(chain.chain.size());
  for (const auto& x : chain.chain) {
    Rational s;
    for (Index v : x) s += a[v];
    sums.push_back(std::move(s));
  }
  return sums;
}

// ---------------------------------------------------------------------------
// Convex sequence

namespace {

/// S(x) = sum_{2 <= i <= x} f(i)/i^2 for x = 0..horizon.
std::vector<Rational> slope_table(const ErrorTerm& f, Index horizon) {
  std::vector<Rational> s(static_cast<std::size_t>(horizon + 1));
  for (Index i = 2; i <= horizon; ++i) s[i] = s[i - 1] + f[i] / Rational(i * i);
  return s;
}

}  // namespace

SequencePrefix convex_from_error(const ErrorTerm& f, Index horizon) {
  if (horizon < 1 || horizon > f.horizon()) {
    throw DomainError("convex_from_error horizon " + std::to_string(horizon) + " outside 1.." +
                      std::to_string(f.horizon()));
  }
  const std::vector<Rational> s = slope_table(f, horizon);
  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(horizon));
  for (Index n = 1; n <= horizon; ++n) values.push_back(Rational(n) * s[n]);
  return SequencePrefix(std::move(values));
}

// ---------------------------------------------------------------------------
// Rationals

Rational calkin_wilf(Index j) {
  if (j < 1) throw DomainError("Calkin-Wilf index must be >= 1");
  mpz_class num(1);
  mpz_class den(1);
  int bit = 62;
  while (((j >> bit) & 1) == 0) --bit;
  for (--bit; bit >= 0; --bit) {
    if ((j >> bit) & 1) {
      num += den;
    } else {
      den += num;
    }
  }
  return Rational(num, den);
}

Rational calkin_wilf_next(const Rational& x) {
  if (x.sign() <= 0) throw DomainError("Calkin-Wilf successor needs x > 0");
  return Rational(1) / (Rational(mpz_class(2 * x.floor() + 1)) - x);
}

Rational enumerate_rationals(Index i) {
  if (i < 1) throw DomainError("enumeration index must be >= 1");
  if (i == 1) return Rational(0);
  const Rational r = calkin_wilf(i / 2);
  return i % 2 == 0 ? r : -r;
}

Index rational_index(const Rational& r) {
  if (r.sign() == 0) return 1;
  mpz_class p = abs(r).numerator();
  mpz_class q = abs(r).denominator();
  // Walk up the Calkin-Wilf tree, batching runs of equal moves. Left
  // children (p < q) contribute 0 bits, right children 1 bits, read from the
  // least significant end.
  mpz_class index(0);
  mpz_class place(1);
  mpz_class run_scale;
  while (!(p == 1 && q == 1)) {
    if (p < q) {
      const mpz_class steps = (q - 1) / p;
      q -= steps * p;
      mpz_ui_pow_ui(run_scale.get_mpz_t(), 2, steps.get_ui());
    } else {
      const mpz_class steps = (p - 1) / q;
      p -= steps * q;
      mpz_ui_pow_ui(run_scale.get_mpz_t(), 2, steps.get_ui());
      index += (run_scale - 1) * place;
    }
    place *= run_scale;
  }
  index += place;  // leading 1 of the breadth-first index
  const Index j = to_int64(index);
  return r.sign() > 0 ? 2 * j : 2 * j + 1;
}

namespace {

Rational simplest_open(const Rational& lo, const Rational& hi) {
  const mpz_class fl = lo.floor();
  if (Rational(mpz_class(fl + 1)) < hi) return Rational(mpz_class(fl + 1));
  const Rational base(fl);
  const Rational lo_frac = lo - base;  // in [0, 1)
  const Rational hi_frac = hi - base;  // in (lo_frac, 1]
  const Rational one(1);
  Rational inv;
  if (lo_frac.sign() == 0) {
    inv = Rational(mpz_class((one / hi_frac).floor() + 1));
  } else {
    inv = simplest_open(one / hi_frac, one / lo_frac);
  }
  return base + one / inv;
}

}  // namespace

Rational simplest_rational_in(const Rational& lo, const Rational& hi,
                              const std::function<bool(const Rational&)>& forbidden) {
  if (!(lo < hi)) throw DomainError("simplest_rational_in needs lo < hi");
  Rational upper = hi;
  Rational candidate = simplest_open(lo, upper);
  while (forbidden(candidate)) {
    upper = candidate;
    candidate = simplest_open(lo, upper);
  }
  return candidate;
}

Rational simplest_rational_in(const Rational& lo, const Rational& hi, const std::set<Rational>& forbidden) {
  return simplest_rational_in(lo, hi, [&](const Rational& c) { return forbidden.contains(c); });
}

// ---------------------------------------------------------------------------
// Every-rational slope sequence

namespace {

class SlopeBuilder {
 public:
  SlopeBuilder(const ErrorTerm& f, Index max_horizon) : s_(slope_table(f, max_horizon)) {
    c_.emplace_back(0);  // c(0) placeholder
  }

  const Rational& s(Index x) const { return s_[static_cast<std::size_t>(x)]; }
  const Rational& c(Index x) const { return c_[static_cast<std::size_t>(x)]; }
  Index fixed() const { return static_cast<Index>(c_.size()) - 1; }
  Index max_horizon() const { return static_cast<Index>(s_.size()) - 1; }

  const Index* position_of(const Rational& slope) const {
    auto it = slopes_.find(slope);
    return it == slopes_.end() ? nullptr : &it->second;
  }

  /// Whether choosing c(x) = c_value would repeat an existing slope or `extra`.
  bool collides(Index x, const Rational& c_value, const Rational* extra) const {
    const Rational slope = s(x) - c_value;
    return slopes_.contains(slope) || (extra != nullptr && slope == *extra);
  }

  void fix(Rational c_value) {
    const Index x = fixed() + 1;
    Rational slope = s(x) - c_value;
    slopes_.emplace(std::move(slope), x);
    c_.push_back(std::move(c_value));
  }

  ConstructionOutput finish(const ErrorTerm& f, std::map<Index, Index> coverage, std::vector<Index> checkpoints) {
    const Index h = fixed();
    SequencePrefix a = convex_from_error(f, h);
    std::vector<Rational> b;
    b.reserve(static_cast<std::size_t>(h));
    for (Index x = 1; x <= h; ++x) b.push_back(a[x] - c(x) * Rational(x));
    std::vector<Rational> c_values(c_.begin() + 1, c_.end());
    return ConstructionOutput{SequencePrefix(std::move(b)), std::move(c_values), std::move(a), std::move(coverage),
                              std::move(checkpoints)};
  }

 private:
  std::vector<Rational> s_;  // a(x)/x
  std::vector<Rational> c_;  // c_[x], x = 1..fixed()
  std::map<Rational, Index> slopes_;
};

}  // namespace

ConstructionOutput rational_slope_sequence(const ErrorTerm& f, Index K, Index max_horizon) {
  if (K < 1) throw DomainError("K must be >= 1");
  if (max_horizon < 1 || max_horizon > f.horizon()) {
    throw DomainError("Hmax " + std::to_string(max_horizon) + " outside 1.." + std::to_string(f.horizon()));
  }

  // f(1) is taken as 0, so the first positive value sits at x >= 2.
  Index n0 = 0;
  for (Index x = 2; x <= max_horizon; ++x) {
    if (f[x].sign() > 0) {
      n0 = x;
      break;
    }
  }
  if (n0 == 0) throw ConstructionFailure("f identically zero within the horizon " + std::to_string(max_horizon));

  SlopeBuilder builder(f, max_horizon);

  // Initial segment: c strictly increasing inside (0, 1), slopes distinct.
  Rational lower(0);
  for (Index x = 1; x <= n0; ++x) {
    Rational cx = simplest_rational_in(lower, Rational(1),
                                       [&](const Rational& c) { return builder.collides(x, c, nullptr); });
    lower = cx;
    builder.fix(std::move(cx));
  }

  std::map<Index, Index> coverage;
  std::vector<Index> checkpoints{n0};
  for (Index i = 1; i <= K; ++i) {
    const Rational r = enumerate_rationals(i);
    if (const Index* at = builder.position_of(r)) {
      coverage[i] = *at;
      checkpoints.push_back(builder.fixed());
      continue;
    }

    const Index current = builder.fixed();
    const Rational& c_current = builder.c(current);
    Index next = 0;
    for (Index x = current + 1; x <= max_horizon; ++x) {
      if (builder.s(x) - c_current > r) {
        next = x;
        break;
      }
    }
    if (next == 0) {
      throw ConstructionFailure("horizon exhausted: slope r_" + std::to_string(i) + " = " + r.to_string() +
                                " is not reachable by x <= " + std::to_string(max_horizon) + " (a(x)/x - c(" +
                                std::to_string(current) + ") stays <= r; " + std::to_string(i - 1) +
                                " rationals covered)");
    }

    const Rational c_next = builder.s(next) - r;
    for (Index x = current + 1; x < next; ++x) {
      Rational cx = simplest_rational_in(builder.c(x - 1), c_next,
                                         [&](const Rational& c) { return builder.collides(x, c, &r); });
      builder.fix(std::move(cx));
    }
    builder.fix(c_next);
    coverage[i] = next;
    checkpoints.push_back(next);
  }
  return builder.finish(f, std::move(coverage), std::move(checkpoints));
}

// ---------------------------------------------------------------------------
// Threshold and linear-error examples

SequencePrefix threshold_gap_example(Index N, const std::vector<Index>& anchors, Index horizon) {
  if (N < 2) throw DomainError("threshold example needs N >= 2");
  if (anchors.empty()) throw DomainError("threshold example needs at least one anchor");
  if (anchors.front() < N) throw DomainError("threshold example needs N <= n_1");
  for (std::size_t i = 1; i < anchors.size(); ++i) {
    if (anchors[i] - anchors[i - 1] <= N + 1) {
      throw DomainError("anchors " + std::to_string(anchors[i - 1]) + ", " + std::to_string(anchors[i]) +
                        " are closer than N+2");
    }
  }
  if (horizon < 1) throw DomainError("horizon must be positive");

  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(horizon));
  std::size_t level = 0;  // anchors[level] <= n < anchors[level+1]
  for (Index n = 1; n <= horizon; ++n) {
    if (n <= anchors.front()) {
      values.emplace_back(1);
      continue;
    }
    while (level + 1 < anchors.size() && anchors[level + 1] <= n) ++level;
    if (level + 1 < anchors.size()) {
      const Index gap = anchors[level + 1] - n;
      if (gap >= 2 && gap <= N) {
        values.emplace_back(1);
        continue;
      }
    }
    values.emplace_back(n, anchors[level]);
  }
  return SequencePrefix(std::move(values));
}

LinearErrorExample linear_error_example(const ErrorTerm& f, const Rational& L, Index horizon) {
  if (L.sign() <= 0) throw DomainError("L must be > 0");
  if (horizon < 1 || horizon > f.horizon()) throw DomainError("horizon outside the error term");

  std::vector<Index> anchors;
  std::vector<Rational> values(static_cast<std::size_t>(horizon));
  const Rational half_l = L / Rational(2);
  for (Index x = 1; x <= horizon; ++x) {
    if (!anchors.empty() && x < anchors.back() + 2) continue;
    if (f[x] / Rational(x) > half_l) {
      anchors.push_back(x);
      values[static_cast<std::size_t>(x - 1)] = f[x];
    }
  }
  if (anchors.size() < 2) {
    throw ConstructionFailure("not enough qualifying anchors: found " + std::to_string(anchors.size()) +
                              " with f(n)/n > L/2 up to " + std::to_string(horizon));
  }
  return {SequencePrefix(std::move(values)), std::move(anchors)};
}

}  // namespace fekete
