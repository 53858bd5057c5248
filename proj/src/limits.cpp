#include "fekete/limits.hpp"

#include <string>

#include "fekete/error.hpp"

namespace fekete {

Rational tail_bound(const SequencePrefix& a, Index k, Index n) {
  if (k < 1 || 2 * k - 1 > a.horizon()) throw DomainError("tail bound window exceeds the horizon");
  if (n < 1) throw DomainError("tail bound needs n >= 1");
  Rational window_max(0);
  for (Index j = k + 1; j <= 2 * k - 1; ++j) window_max = max(window_max, abs(a[j]));
  return a.slope(k) + window_max / Rational(n);
}

LimitBracket fekete_bracket(const SequencePrefix& a, Index N) {
  const Index h = a.horizon();
  if (N < 1 || N > h) throw DomainError("fekete_bracket needs 1 <= N <= H");

  LimitBracket out{N, a.slope(N), N, {}};
  Index best_evaluable = 0;  // argmin over N <= k <= H/2
  Rational best_evaluable_slope;
  for (Index k = N; k <= h; ++k) {
    Rational s = a.slope(k);
    if (2 * k <= h && (best_evaluable == 0 || s < best_evaluable_slope)) {
      best_evaluable = k;
      best_evaluable_slope = s;
    }
    if (s < out.min_slope) {
      out.min_slope = std::move(s);
      out.argmin_k = k;
    }
  }
  if (2 * N <= h) out.tail_samples.push_back({h, N, tail_bound(a, N, h)});
  if (best_evaluable != 0 && best_evaluable != N) {
    out.tail_samples.push_back({h, best_evaluable, tail_bound(a, best_evaluable, h)});
  }
  return out;
}

GTransform::GTransform(const SequencePrefix& a, const ErrorTerm& f) : a_(a) {
  const Index h = a.horizon();
  if (f.horizon() < h) throw DomainError("error term shorter than the sequence");
  prefix_.resize(static_cast<std::size_t>(h + 2));
  for (Index x = 1; x <= h; ++x) prefix_[x + 1] = prefix_[x] + f[x] / Rational(x * x);
}

Rational GTransform::deficit(Index n, Index m) const {
  if (m < n) std::swap(n, m);
  const Index s = n + m;
  if (n < 1 || s > a_.horizon()) throw DomainError("g deficit pair outside the horizon");
  const Rational three(3);
  return a_[s] - a_[n] - a_[m] - three * Rational(n) * (prefix_[s] - prefix_[n]) -
         three * Rational(m) * (prefix_[s] - prefix_[m]);
}

Rational g_deficit(const SequencePrefix& a, const ErrorTerm& f, Index n, Index m) {
  if (n < 1 || n > m) throw DomainError("g_deficit needs 1 <= n <= m");
  const Index s = n + m;
  if (s > a.horizon() || s > f.horizon()) throw DomainError("g_deficit pair exceeds the horizon");
  Rational from_n;
  for (Index x = n; x < s; ++x) from_n += f[x] / Rational(x * x);
  Rational from_m;
  for (Index x = m; x < s; ++x) from_m += f[x] / Rational(x * x);
  return a[s] - a[n] - a[m] - Rational(3 * n) * from_n - Rational(3 * m) * from_m;
}

unsigned long chain_length(const Rational& mu) {
  if (mu <= Rational(1)) throw DomainError("mu must be > 1, got " + mu.to_string());
  // Smallest k with ((1+mu)/2)^k > 2. Square up to overshoot, then assemble
  // the largest t with ratio^t <= 2 from the binary powers; k = t + 1.
  const Rational ratio = (Rational(1) + mu) / Rational(2);
  const Rational two(2);
  std::vector<Rational> powers{ratio};  // ratio^(2^j)
  while (powers.back() <= two) powers.push_back(powers.back() * powers.back());
  unsigned long t = 0;
  Rational acc(1);
  for (std::size_t j = powers.size(); j-- > 0;) {
    Rational next = acc * powers[j];
    if (next <= two) {
      acc = std::move(next);
      t += 1ul << j;
    }
  }
  const unsigned long k = t + 1;
  const Rational base = Rational(1) + mu;
  if (!(pow(base, k - 1) <= pow(two, k + 1) && pow(two, k + 1) < pow(base, k))) {
    throw Error("internal: chain length bracket failed for mu=" + mu.to_string());
  }
  return k;
}

MuChainCertificate mu_chain_certificate(const Rational& mu, Index N, Index n) {
  if (N < 1) throw DomainError("threshold N must be >= 1");
  if (n < 1) throw DomainError("base n must be >= 1");
  const unsigned long k = chain_length(mu);
  const Rational one(1);
  const Rational growth = pow(one + mu, k);
  const Rational doubling = pow(Rational(2), k + 1);

  MuChainCertificate cert;
  cert.mu = mu;
  cert.N = N;
  cert.k = k;
  cert.N1 = to_int64(((growth / mu) / (growth - doubling)).ceil());
  cert.N2 = std::max(N, to_int64((one / (mu - one)).ceil()));
  cert.n = n;

  mpz_class u(static_cast<long>(n));
  mpz_class v(static_cast<long>(n));
  cert.u.push_back(n);
  cert.v.push_back(n);
  for (unsigned long i = 0; i < k; ++i) {
    u *= 2;
    mpz_class step = mu.numerator() * v;
    mpz_fdiv_q(step.get_mpz_t(), step.get_mpz_t(), mu.denominator().get_mpz_t());
    v += step;
    cert.u.push_back(to_int64(u));
    cert.v.push_back(to_int64(v));
  }
  cert.doubling_covered = 2 * u <= v;
  return cert;
}

std::optional<Split> find_split(Index z, Index lo, Index hi, const Rational& mu) {
  if (lo > hi || z < 2) return std::nullopt;
  // x <= y = z - x <= mu x  <=>  z/(1+mu) <= x <= z/2
  const mpz_class num = mu.denominator() * z;
  const mpz_class den = mu.numerator() + mu.denominator();
  mpz_class least;
  mpz_cdiv_q(least.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  const Index x = std::max(lo, to_int64(least));
  if (x > std::min(hi, z / 2)) return std::nullopt;
  return Split{x, z - x};
}

std::optional<SplitGap> first_unsplittable(const MuChainCertificate& cert) {
  for (unsigned long i = 0; i < cert.k; ++i) {
    const Index lo = cert.u[i];
    const Index hi = cert.v[i];
    if (lo == hi) continue;
    mpz_class reach = cert.mu.numerator() * lo;
    mpz_fdiv_q(reach.get_mpz_t(), reach.get_mpz_t(), cert.mu.denominator().get_mpz_t());
    const Index step = to_int64(reach);  // floor(mu * lo)
    if (step <= lo) return SplitGap{i, lo + step + 1};
  }
  return std::nullopt;
}

}  // namespace fekete
