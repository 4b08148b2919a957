#include "ttbar/spectra/coefficients.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "ttbar/error.hpp"
#include "ttbar/numkit/double_double.hpp"

namespace ttbar::spectra {

namespace {

BigInt checked_add(BigInt a, BigInt b, long long at) {
  BigInt r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit overflow", at);
  return r;
}

BigInt checked_mul(BigInt a, BigInt b, long long at) {
  BigInt r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit overflow", at);
  return r;
}

std::vector<BigInt> square_series(const std::vector<BigInt>& a) {
  const long long n = static_cast<long long>(a.size());
  std::vector<BigInt> out(n, 0);
  for (long long k = 0; k < n; ++k) {
    BigInt acc = 0;
    for (long long i = 0; i <= k; ++i) {
      if (a[i] == 0 || a[k - i] == 0) continue;
      acc = checked_add(acc, checked_mul(a[i], a[k - i], k), k);
    }
    out[k] = acc;
  }
  return out;
}

void require_nonneg(long long N) {
  if (N < 0) throw DomainError("coefficient order must be >= 0");
}

}  // namespace

std::string to_string(BigInt v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

std::vector<BigInt> partition_coeffs(long long N) {
  require_nonneg(N);
  using U = unsigned __int128;
  // The recurrence runs modulo 2^128 (intermediate sums exceed P(n)); a
  // floating shadow recurrence tells when the true value leaves the signed
  // 128-bit range.
  const double limit = std::ldexp(1.0, 127) * (1.0 - 1e-9);
  std::vector<U> p(N + 1, 0);
  std::vector<numkit::DoubleDouble> shadow(N + 1, numkit::DoubleDouble(0.0));
  p[0] = 1;
  shadow[0] = 1.0;
  for (long long n = 1; n <= N; ++n) {
    U acc = 0;
    numkit::DoubleDouble approx(0.0);
    for (long long k = 1;; ++k) {
      long long g1 = k * (3 * k - 1) / 2;
      if (g1 > n) break;
      long long g2 = k * (3 * k + 1) / 2;
      U part = p[n - g1];
      numkit::DoubleDouble dpart = shadow[n - g1];
      if (g2 <= n) {
        part += p[n - g2];
        dpart += shadow[n - g2];
      }
      if (k % 2) {
        acc += part;
        approx = approx + dpart;
      } else {
        acc -= part;
        approx = approx - dpart;
      }
    }
    if (approx.hi >= limit) throw OverflowError("128-bit overflow in partition numbers", n);
    p[n] = acc;
    shadow[n] = approx;
  }
  return std::vector<BigInt>(p.begin(), p.end());
}

std::vector<double> partition_coeffs_real(long long N) {
  require_nonneg(N);
  // The floating-point recurrence is unstable (relative error ~1e-4 at
  // n = 1000 in binary64), so the numbers are formed exactly and rounded.
  using boost::multiprecision::cpp_int;
  std::vector<cpp_int> p(N + 1);
  std::vector<double> out(N + 1);
  p[0] = 1;
  out[0] = 1.0;
  for (long long n = 1; n <= N; ++n) {
    cpp_int acc = 0;
    for (long long k = 1;; ++k) {
      long long g1 = k * (3 * k - 1) / 2;
      if (g1 > n) break;
      long long g2 = k * (3 * k + 1) / 2;
      if (k % 2) {
        acc += p[n - g1];
        if (g2 <= n) acc += p[n - g2];
      } else {
        acc -= p[n - g1];
        if (g2 <= n) acc -= p[n - g2];
      }
    }
    p[n] = std::move(acc);
    out[n] = p[n].convert_to<double>();
  }
  return out;
}

std::vector<BigInt> eta24_coeffs(long long N) {
  if (N < 1) throw DomainError("eta24 order must be >= 1");
  // prod (1 - q^n)^3 = sum_{m>=0} (-1)^m (2m+1) q^{m(m+1)/2} (Jacobi).
  const long long L = N;  // q^1 prefactor: need the product up to q^{N-1}
  std::vector<BigInt> e3(L, 0);
  for (long long m = 0;; ++m) {
    long long e = m * (m + 1) / 2;
    if (e >= L) break;
    e3[e] = (m % 2 ? -1 : 1) * static_cast<BigInt>(2 * m + 1);
  }
  std::vector<BigInt> e6 = square_series(e3);
  std::vector<BigInt> e12 = square_series(e6);
  std::vector<BigInt> e24 = square_series(e12);
  std::vector<BigInt> out(N + 1, 0);
  for (long long n = 1; n <= N; ++n) out[n] = e24[n - 1];
  return out;
}

std::vector<double> euler_product_power(int m, long long N) {
  require_nonneg(N);
  if (m < 0) throw DomainError("euler_product_power requires m >= 0");
  std::vector<double> c(N + 1, 0.0);
  c[0] = 1.0;
  for (int r = 0; r < m; ++r) {
    for (long long n = 1; n <= N; ++n) {
      // multiply in place by (1 - q^n), highest degree first
      for (long long d = N; d >= n; --d) c[d] -= c[d - n];
    }
  }
  for (long long d = 0; d <= N; ++d)
    if (std::abs(c[d]) >= 9007199254740992.0) throw OverflowError("coefficient exceeds 2^53", d);
  return c;
}

IsingCharacters ising_characters(int half_order) {
  if (half_order < 1) throw DomainError("ising character order must be >= 1");
  const int N = half_order;
  auto mul_binomial = [N](std::vector<double>& p, int e, double sign) {
    for (int d = N; d >= e; --d) p[d] += sign * p[d - e];
  };
  std::vector<double> plus(N + 1, 0.0), minus(N + 1, 0.0), integer(N + 1, 0.0);
  plus[0] = minus[0] = integer[0] = 1.0;
  for (int n = 1; 2 * n - 1 <= N; ++n) {
    mul_binomial(plus, 2 * n - 1, 1.0);
    mul_binomial(minus, 2 * n - 1, -1.0);
  }
  for (int n = 1; 2 * n <= N; ++n) mul_binomial(integer, 2 * n, 1.0);
  IsingCharacters ch;
  ch.c0.resize(N + 1);
  ch.ch.resize(N + 1);
  for (int i = 0; i <= N; ++i) {
    ch.c0[i] = 0.5 * (plus[i] + minus[i]);
    ch.ch[i] = 0.5 * (plus[i] - minus[i]);
  }
  ch.cs = integer;
  return ch;
}

}  // namespace ttbar::spectra
