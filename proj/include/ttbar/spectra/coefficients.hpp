#pragma once

#include <string>
#include <vector>


namespace ttbar::spectra {

using BigInt = __int128;

std::string to_string(BigInt v);

/// Partition numbers P(0..N) by the pentagonal-number recurrence, exact in
/// 128-bit integers. Throws OverflowError naming the first n that overflows
/// (n = 1438).
std::vector<BigInt> partition_coeffs(long long N);

/// P(0..N) rounded to binary64, formed exactly in arbitrary precision;
/// usable beyond the 128-bit range.
std::vector<double> partition_coeffs_real(long long N);

/// Coefficients c[0..N] of q prod_{n>=1} (1 - q^n)^24, so c[1] = 1, c[2] = -24.
/// Exact; obtained from the cubic product by three squarings with
/// overflow-checked 128-bit arithmetic.
std::vector<BigInt> eta24_coeffs(long long N);

/// Coefficients of prod_{n>=1} (1 - q^n)^m up to q^N, as doubles (exact while
/// below 2^53; throws OverflowError otherwise).
std::vector<double> euler_product_power(int m, long long N);

/// q-expansions (in powers of q^{1/2}) of the Ising characters with their
/// leading q^{-1/48} / q^{1/24} factors stripped:
///   chi_0      = q^{-1/48} sum_i c0[i] q^{i/2}
///   chi_{1/2}  = q^{-1/48} sum_i ch[i] q^{i/2}
///   chi_{1/16} = q^{ 1/24} sum_i cs[i] q^{i/2}
struct IsingCharacters {
  std::vector<double> c0, ch, cs;
};
IsingCharacters ising_characters(int half_order);

}  // namespace ttbar::spectra
