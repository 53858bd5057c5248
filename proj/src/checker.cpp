#include "fekete/checker.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <string>
#include <thread>

#include "fekete/error.hpp"

namespace fekete {

namespace {

/// Inclusive range of n (with m = s - n, n <= m) admitted at sum s.
struct NRange {
  Index lo;
  Index hi;
  bool empty() const { return lo > hi; }
  std::uint64_t size() const { return empty() ? 0 : static_cast<std::uint64_t>(hi - lo + 1); }
};

NRange admitted_range(const PairDomain& domain, Index s) {
  const Index half = s / 2;
  struct V {
    Index s;
    Index half;
    NRange operator()(const FullDomain&) const { return {1, half}; }
    NRange operator()(const ThresholdDomain& d) const { return {d.N, half}; }
    NRange operator()(const MuBandDomain& d) const {
      // m <= mu n  <=>  n >= s q / (p + q)
      const mpz_class& p = d.mu.numerator();
      const mpz_class& q = d.mu.denominator();
      mpz_class lo;
      mpz_class num = q * s;
      mpz_class den = p + q;
      mpz_cdiv_q(lo.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      return {std::max(d.N, to_int64(lo)), half};
    }
    NRange operator()(const OnePlusDomain& d) const {
      if (half < d.N) return {1, 0};
      return {half, half};
    }
    NRange operator()(const ExplicitDomain&) const { return {1, 0}; }
  };
  return std::visit(V{s, half}, domain);
}

/// a and f scaled by a common denominator D, so the inequality becomes an
/// integer comparison.
struct ScaledTables {
  mpz_class denominator{1};
  std::vector<mpz_class> a;      // a[n] * D, index 0..H
  std::vector<mpz_class> bound;  // (a[s] - f[s]) * D
};

ScaledTables scale(const SequencePrefix& a, const ErrorTerm* f) {
  const Index h = a.horizon();
  ScaledTables t;
  for (Index n = 1; n <= h; ++n) {
    mpz_lcm(t.denominator.get_mpz_t(), t.denominator.get_mpz_t(), a[n].denominator().get_mpz_t());
    if (f != nullptr) {
      mpz_lcm(t.denominator.get_mpz_t(), t.denominator.get_mpz_t(), (*f)[n].denominator().get_mpz_t());
    }
  }
  auto scaled = [&](const Rational& x) {
    mpz_class factor;
    mpz_divexact(factor.get_mpz_t(), t.denominator.get_mpz_t(), x.denominator().get_mpz_t());
    return mpz_class(x.numerator() * factor);
  };
  t.a.resize(static_cast<std::size_t>(h + 1));
  t.bound.resize(static_cast<std::size_t>(h + 1));
  for (Index n = 1; n <= h; ++n) {
    t.a[n] = scaled(a[n]);
    t.bound[n] = f != nullptr ? mpz_class(t.a[n] - scaled((*f)[n])) : t.a[n];
  }
  return t;
}

struct Chunk {
  Index s_lo;  // inclusive
  Index s_hi;  // inclusive
};

std::vector<Chunk> partition_sums(const PairDomain& domain, Index horizon, unsigned workers) {
  std::vector<std::uint64_t> weight(static_cast<std::size_t>(horizon + 1), 0);
  std::uint64_t total = 0;
  for (Index s = 2; s <= horizon; ++s) {
    weight[s] = admitted_range(domain, s).size() + 1;
    total += weight[s];
  }
  std::vector<Chunk> chunks;
  const std::uint64_t target = total / std::max(1u, workers) + 1;
  Index start = 2;
  std::uint64_t acc = 0;
  for (Index s = 2; s <= horizon; ++s) {
    acc += weight[s];
    if (acc >= target && s < horizon) {
      chunks.push_back({start, s});
      start = s + 1;
      acc = 0;
    }
  }
  if (start <= horizon) chunks.push_back({start, horizon});
  return chunks;
}

Violation make_violation(Index n, Index m, const mpz_class& scaled_deficit, const mpz_class& denominator) {
  return {n, m, Rational(scaled_deficit, denominator)};
}

std::vector<Violation> scan_chunk(const PairDomain& domain, const ScaledTables& t, Chunk chunk) {
  std::vector<Violation> out;
  mpz_class rhs;
  for (Index s = chunk.s_lo; s <= chunk.s_hi; ++s) {
    const NRange r = admitted_range(domain, s);
    for (Index n = r.lo; n <= r.hi; ++n) {
      const Index m = s - n;
      mpz_add(rhs.get_mpz_t(), t.a[n].get_mpz_t(), t.a[m].get_mpz_t());
      if (mpz_cmp(t.bound[s].get_mpz_t(), rhs.get_mpz_t()) > 0) {
        out.push_back(make_violation(n, m, mpz_class(t.bound[s] - rhs), t.denominator));
      }
    }
  }
  return out;
}

ViolationReport scan_impl(const SequencePrefix& a, const ErrorTerm* f, const PairDomain& domain,
                          ScanOptions options) {
  const Index h = a.horizon();
  if (f != nullptr && f->horizon() < h) {
    throw DomainError("error term horizon " + std::to_string(f->horizon()) + " shorter than sequence horizon " +
                      std::to_string(h));
  }
  const ScaledTables t = scale(a, f);
  ViolationReport report{domain, count_admitted_pairs(domain, h), {}};

  if (const auto* ex = std::get_if<ExplicitDomain>(&domain)) {
    std::vector<std::pair<Index, Index>> by_sum;  // (s, n)
    for (auto [n, m] : ex->pairs) {
      if (n + m <= h) by_sum.emplace_back(n + m, n);
    }
    std::sort(by_sum.begin(), by_sum.end());
    mpz_class rhs;
    for (auto [s, n] : by_sum) {
      const Index m = s - n;
      mpz_add(rhs.get_mpz_t(), t.a[n].get_mpz_t(), t.a[m].get_mpz_t());
      if (mpz_cmp(t.bound[s].get_mpz_t(), rhs.get_mpz_t()) > 0) {
        report.violations.push_back(make_violation(n, m, mpz_class(t.bound[s] - rhs), t.denominator));
      }
    }
    return report;
  }

  const unsigned workers = options.threads == 0 ? default_thread_count() : options.threads;
  const std::vector<Chunk> chunks = partition_sums(domain, h, workers);
  std::vector<std::vector<Violation>> results(chunks.size());
  if (workers <= 1 || chunks.size() <= 1) {
    for (std::size_t i = 0; i < chunks.size(); ++i) results[i] = scan_chunk(domain, t, chunks[i]);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(chunks.size());
    for (std::size_t i = 0; i < chunks.size(); ++i) {
      pool.emplace_back([&, i] { results[i] = scan_chunk(domain, t, chunks[i]); });
    }
  }
  // Chunks are contiguous and ascending in s, so concatenation keeps (s, n) order.
  for (auto& part : results) {
    report.violations.insert(report.violations.end(), std::make_move_iterator(part.begin()),
                             std::make_move_iterator(part.end()));
  }
  return report;
}

}  // namespace

unsigned default_thread_count() {
  if (const char* env = std::getenv("FEKETE_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t count_admitted_pairs(const PairDomain& domain, Index horizon) {
  if (const auto* ex = std::get_if<ExplicitDomain>(&domain)) {
    return static_cast<std::uint64_t>(
        std::count_if(ex->pairs.begin(), ex->pairs.end(), [&](const auto& p) { return p.first + p.second <= horizon; }));
  }
  std::uint64_t total = 0;
  for (Index s = 2; s <= horizon; ++s) total += admitted_range(domain, s).size();
  return total;
}

ViolationReport scan_violations(const SequencePrefix& a, const ErrorTerm& f, const PairDomain& domain,
                                ScanOptions options) {
  return scan_impl(a, f.is_zero() ? nullptr : &f, domain, options);
}

ViolationReport scan_violations(const SequencePrefix& a, const PairDomain& domain, ScanOptions options) {
  return scan_impl(a, nullptr, domain, options);
}

QSequence q_sequence(const SequencePrefix& a, Index n_lo) {
  const Index h = a.horizon();
  if (n_lo < 1 || 2 * n_lo > h) {
    throw DomainError("q_sequence needs 1 <= n_lo and 2*n_lo <= H (n_lo=" + std::to_string(n_lo) +
                      ", H=" + std::to_string(h) + ")");
  }
  std::vector<Rational> slope(static_cast<std::size_t>(h + 1));
  for (Index j = n_lo; j <= h; ++j) slope[j] = a.slope(j);

  // Sliding maximum over the window [n, 2n]; the deque holds indices with
  // strictly decreasing slopes.
  QSequence q{n_lo, {}};
  std::deque<Index> window;
  auto push = [&](Index j) {
    while (!window.empty() && slope[window.back()] <= slope[j]) window.pop_back();
    window.push_back(j);
  };
  for (Index j = n_lo; j <= 2 * n_lo; ++j) push(j);
  for (Index n = n_lo; n <= h / 2; ++n) {
    if (n > n_lo) {
      push(2 * n - 1);
      push(2 * n);
      while (window.front() < n) window.pop_front();
    }
    q.values.push_back(slope[window.front()]);
  }
  return q;
}

std::vector<Index> check_q_monotone(const SequencePrefix& a, Index N) {
  if (N < 1 || 2 * (N + 1) > a.horizon()) {
    throw DomainError("check_q_monotone needs N >= 1 and 2(N+1) <= H");
  }
  const QSequence q = q_sequence(a, N);
  std::vector<Index> increases;
  for (Index n = N; n < q.n_hi(); ++n) {
    if (q(n) < q(n + 1)) increases.push_back(n);
  }
  return increases;
}

Rational second_difference(const SequencePrefix& a, Index n) {
  if (n < 2 || n + 1 > a.horizon()) throw DomainError("second difference needs 2 <= n <= H-1");
  return a[n - 1] + a[n + 1] - Rational(2) * a[n];
}

std::vector<Index> check_convexity(const SequencePrefix& a) {
  if (a.horizon() < 3) throw DomainError("convexity check needs H >= 3");
  std::vector<Index> out;
  for (Index n = 2; n < a.horizon(); ++n) {
    if (second_difference(a, n).sign() < 0) out.push_back(n);
  }
  return out;
}

}  // namespace fekete
