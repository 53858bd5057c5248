#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fekete/checker.hpp"
#include "fekete/constructions.hpp"
#include "fekete/error.hpp"

using namespace fekete;

namespace {

SequencePrefix seq(std::initializer_list<std::int64_t> xs) {
  std::vector<Rational> v;
  for (auto x : xs) v.emplace_back(x);
  return SequencePrefix(std::move(v));
}

SequencePrefix tabulate(Index h, auto fn) {
  std::vector<Rational> v;
  for (Index n = 1; n <= h; ++n) v.push_back(fn(n));
  return SequencePrefix(std::move(v));
}

Rational ceil_sqrt(Index n) {
  mpz_class r = sqrt(mpz_class(static_cast<long>(n)));
  if (r * r < n) r += 1;
  return Rational(r);
}

// Straight double loop through admits().
ViolationReport naive_scan(const SequencePrefix& a, const ErrorTerm& f, const PairDomain& d) {
  ViolationReport r{d, 0, {}};
  const Index h = a.horizon();
  for (Index s = 2; s <= h; ++s) {
    for (Index n = 1; 2 * n <= s; ++n) {
      if (!admits(d, n, s - n)) continue;
      ++r.pairs_checked;
      const Rational deficit = a[s] - a[n] - a[s - n] - f[s];
      if (deficit.sign() > 0) r.violations.push_back({n, s - n, deficit});
    }
  }
  return r;
}

SequencePrefix random_prefix(std::mt19937_64& rng, Index h) {
  std::uniform_int_distribution<std::int64_t> num(-40, 60);
  std::uniform_int_distribution<std::int64_t> den(1, 6);
  std::vector<Rational> v;
  for (Index i = 0; i < h; ++i) v.emplace_back(num(rng), den(rng));
  return SequencePrefix(std::move(v));
}

std::vector<PairDomain> sample_domains() {
  return {full_domain(),          threshold_domain(4),     mu_band_domain(Rational(3, 2), 2),
          mu_band_domain(Rational(11, 10), 1), one_plus_domain(3), explicit_domain({{1, 2}, {5, 9}, {7, 7}, {30, 40}})};
}

}  // namespace

TEST_CASE("scan examples") {
  const auto identity = tabulate(50, [](Index n) { return Rational(n); });
  CHECK(scan_violations(identity, full_domain()).clean());

  const auto r = scan_violations(seq({1, 1, 3}), full_domain());
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0] == Violation{1, 2, Rational(1)});
  CHECK(r.pairs_checked == 2);

  const ErrorTerm f = builtin_error_term({"floor_sqrt", {}}, 200);
  CHECK(scan_violations(convex_from_error(f, 200), f, full_domain()).clean());
}

TEST_CASE("scan rejects a short error term") {
  CHECK_THROWS_AS(scan_violations(seq({1, 2, 3}), ErrorTerm({Rational(1), Rational(1)}), full_domain()), DomainError);
  CHECK(scan_violations(seq({1, 2, 3}), ErrorTerm::zero(2), full_domain()).clean());
}

TEST_CASE("scan agrees with a naive double loop") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Index h = 20 + trial * 5;
    const auto a = random_prefix(rng, h);
    std::vector<Rational> fv;
    std::int64_t acc = 0;
    for (Index n = 1; n <= h; ++n) fv.emplace_back(acc += static_cast<std::int64_t>(rng() % 3));
    const ErrorTerm f(std::move(fv));
    for (const auto& d : sample_domains()) {
      CAPTURE(describe(d));
      const auto fast = scan_violations(a, f, d);
      const auto slow = naive_scan(a, f, d);
      CHECK(fast.pairs_checked == slow.pairs_checked);
      CHECK(fast.violations == slow.violations);
      CHECK(fast.pairs_checked == count_admitted_pairs(d, h));
    }
  }
}

TEST_CASE("parallel and sequential scans give identical reports") {
  std::mt19937_64 rng(5);
  const auto a = random_prefix(rng, 600);
  for (const auto& d : sample_domains()) {
    const auto one = scan_violations(a, d, ScanOptions{1});
    for (unsigned t : {2u, 3u, 8u, 17u}) {
      const auto many = scan_violations(a, d, ScanOptions{t});
      CHECK(many.pairs_checked == one.pairs_checked);
      CHECK(many.violations == one.violations);
    }
  }
}

TEST_CASE("admitted pair counts match membership filtering") {
  for (const auto& d : sample_domains()) {
    for (Index h : {1, 2, 3, 10, 57, 300}) {
      std::uint64_t count = 0;
      for (Index n = 1; 2 * n <= h; ++n) {
        for (Index m = n; n + m <= h; ++m) count += admits(d, n, m) ? 1 : 0;
      }
      CHECK(count_admitted_pairs(d, h) == count);
    }
  }
}

TEST_CASE("q sequence examples") {
  const auto identity = tabulate(40, [](Index n) { return Rational(n); });
  const auto q1 = q_sequence(identity, 1);
  CHECK(q1.n_hi() == 20);
  for (Index n = 1; n <= 20; ++n) CHECK(q1(n) == 1);

  CHECK(q_sequence(seq({2, 1}), 1)(1) == 2);
  CHECK_THROWS_AS(q_sequence(seq({2, 1}), 2), DomainError);

  const auto root = tabulate(100, ceil_sqrt);
  const auto q = q_sequence(root, 1);
  for (Index n = 1; n < q.n_hi(); ++n) CHECK(q(n) >= q(n + 1));
  CHECK(check_q_monotone(identity, 1).empty());
}

TEST_CASE("q sequence matches a direct maximum") {
  std::mt19937_64 rng(9);
  const auto a = random_prefix(rng, 301);
  const auto q = q_sequence(a, 3);
  CHECK(q.n_lo == 3);
  CHECK(q.n_hi() == 150);
  for (Index n = 3; n <= 150; ++n) {
    Rational best = a.slope(n);
    for (Index j = n; j <= 2 * n; ++j) best = max(best, a.slope(j));
    CHECK(q(n) == best);
  }
}

TEST_CASE("an increase in q is located") {
  const auto a = seq({0, 0, 10, 0, 0, 0, 0, 0});
  CHECK(check_q_monotone(a, 1) == std::vector<Index>{1});
  CHECK_FALSE(scan_violations(a, one_plus_domain(1)).clean());
  CHECK_THROWS_AS(check_q_monotone(a, 4), DomainError);
}

TEST_CASE("one-plus subadditive prefixes have non-increasing q") {
  std::mt19937_64 rng(21);
  int tested = 0;
  for (int trial = 0; trial < 4000 && tested < 200; ++trial) {
    // Random increments with a(n+1) <= a(n) + a(1) and a(2n) <= 2a(n) repaired in order.
    const Index h = 30 + static_cast<Index>(rng() % 40);
    std::vector<Rational> v{Rational(static_cast<std::int64_t>(rng() % 7) - 2)};
    for (Index n = 2; n <= h; ++n) {
      Rational x = v.back() + Rational(static_cast<std::int64_t>(rng() % 9) - 5, 3);
      const Index lo = n / 2;
      const Index hi = n - lo;
      x = min(x, v[lo - 1] + v[hi - 1]);
      v.push_back(x);
    }
    const SequencePrefix a(std::move(v));
    for (Index N : {1, 2, 5}) {
      if (!scan_violations(a, one_plus_domain(N)).clean()) continue;
      ++tested;
      CHECK(check_q_monotone(a, N).empty());
    }
  }
  CHECK(tested >= 100);
}

TEST_CASE("convexity") {
  CHECK(check_convexity(tabulate(30, [](Index n) { return Rational(n * n); })).empty());
  CHECK(check_convexity(seq({0, 1, 0})) == std::vector<Index>{2});
  CHECK(second_difference(seq({0, 1, 0}), 2) == -2);
  CHECK_THROWS_AS(check_convexity(seq({0, 1})), DomainError);
}
