#include <immintrin.h>

#include <cmath>
#include <numbers>

#include "ttbar/numkit/summation.hpp"
#include "ttbar/simd/kernels.hpp"

namespace ttbar::simd::detail {

namespace {

inline __m256d vabs(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

struct VNeumaier {
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();
  void add(__m256d x) {
    __m256d t = _mm256_add_pd(sum, x);
    __m256d big = _mm256_cmp_pd(vabs(sum), vabs(x), _CMP_GE_OQ);
    __m256d c1 = _mm256_add_pd(_mm256_sub_pd(sum, t), x);
    __m256d c2 = _mm256_add_pd(_mm256_sub_pd(x, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(c2, c1, big));
    sum = t;
  }
  void drain(numkit::NeumaierSum& out) const {
    alignas(32) double s[4], c[4];
    _mm256_store_pd(s, sum);
    _mm256_store_pd(c, comp);
    for (int i = 0; i < 4; ++i) out.add(s[i]);
    for (int i = 0; i < 4; ++i) out.add(c[i]);
  }
};

// exp(x) for x in [-708, 709]; lanes below -708 return 0.
inline __m256d vexp(__m256d x) {
  const __m256d lo = _mm256_set1_pd(-708.0);
  __m256d under = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  x = _mm256_max_pd(x, lo);
  x = _mm256_min_pd(x, _mm256_set1_pd(709.0));
  __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634074)),
                              _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93147180369123816490e-01), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.90821492927058770002e-10), r);
  // Taylor polynomial of degree 13 in Horner form.
  static constexpr double c[14] = {1.0,
                                   1.0,
                                   1.0 / 2,
                                   1.0 / 6,
                                   1.0 / 24,
                                   1.0 / 120,
                                   1.0 / 720,
                                   1.0 / 5040,
                                   1.0 / 40320,
                                   1.0 / 362880,
                                   1.0 / 3628800,
                                   1.0 / 39916800,
                                   1.0 / 479001600,
                                   1.0 / 6227020800};
  __m256d p = _mm256_set1_pd(c[13]);
  for (int i = 12; i >= 0; --i) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(c[i]));
  __m128i ni = _mm256_cvtpd_epi32(n);
  __m256i e = _mm256_add_epi64(_mm256_cvtepi32_epi64(ni), _mm256_set1_epi64x(1023));
  __m256d scale = _mm256_castsi256_pd(_mm256_slli_epi64(e, 52));
  return _mm256_andnot_pd(under, _mm256_mul_pd(p, scale));
}

// log(x) for positive normal x.
inline __m256d vlog(__m256d x) {
  __m256i bits = _mm256_castpd_si256(x);
  __m256i expo = _mm256_srli_epi64(bits, 52);
  __m256i mant = _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
                                 _mm256_set1_epi64x(0x3FF0000000000000LL));
  __m256d m = _mm256_castsi256_pd(mant);
  const __m256d two52 = _mm256_set1_pd(4503599627370496.0);
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(expo, _mm256_castpd_si256(two52))), two52);
  e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));
  __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d f = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  __m256d f2 = _mm256_mul_pd(f, f);
  __m256d p = _mm256_set1_pd(1.0 / 25);
  for (int j = 11; j >= 0; --j) p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / (2 * j + 1)));
  __m256d logm = _mm256_mul_pd(_mm256_add_pd(f, f), p);
  __m256d lo = _mm256_fmadd_pd(e, _mm256_set1_pd(1.9082149292705877000e-10), logm);
  return _mm256_fmadd_pd(e, _mm256_set1_pd(6.93147180369123816490e-01), lo);
}

}  // namespace

Complex deformed_sum_avx2(const SpectrumView& t, const DeformSumArgs& a) {
  const double u = 4.0 * std::numbers::pi * a.alpha * a.delta1;
  const __m256d vu = _mm256_set1_pd(u);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const bool deformed = a.alpha > 0.0;
  const __m256d inv2a = _mm256_set1_pd(deformed ? 0.5 / a.alpha : 0.0);
  const __m256d flat = _mm256_set1_pd(2.0 * std::numbers::pi * a.delta1);
  const __m256d we = _mm256_set1_pd(a.weight_exp);
  const __m256d cl = _mm256_set1_pd(a.lambda_coeff * u);
  VNeumaier re, im;
  std::size_t j = 0;
  for (; j + 4 <= t.size; j += 4) {
    __m256d lam = _mm256_loadu_pd(t.lambda + j);
    __m128i sp = _mm_loadu_si128(reinterpret_cast<const __m128i*>(t.spin + j));
    __m256d S = one, E;
    if (deformed) {
      __m256d up = _mm256_mul_pd(vu, _mm256_cvtepi32_pd(sp));
      __m256d w = _mm256_fmadd_pd(up, up, _mm256_mul_pd(_mm256_add_pd(vu, vu), lam));
      S = _mm256_sqrt_pd(_mm256_add_pd(one, w));
      E = _mm256_div_pd(_mm256_mul_pd(w, inv2a), _mm256_add_pd(one, S));
    } else {
      E = _mm256_mul_pd(flat, lam);
    }
    __m256d mag = vexp(_mm256_sub_pd(_mm256_setzero_pd(), E));
    if (a.prefactor) {
      __m256d base = _mm256_mul_pd(half, _mm256_fmadd_pd(cl, lam, _mm256_add_pd(one, S)));
      __m256d pw = vexp(_mm256_mul_pd(we, vlog(base)));
      mag = _mm256_mul_pd(mag, _mm256_div_pd(pw, S));
    }
    __m256d ar = _mm256_loadu_pd(t.a_re + j);
    __m256d ai = t.a_im != nullptr ? _mm256_loadu_pd(t.a_im + j) : _mm256_setzero_pd();
    __m256d cr = one, ci = _mm256_setzero_pd();
    if (a.cis_re != nullptr) {
      __m128i idx = _mm_add_epi32(sp, _mm_set1_epi32(a.spin_offset));
      cr = _mm256_i32gather_pd(a.cis_re, idx, 8);
      ci = _mm256_i32gather_pd(a.cis_im, idx, 8);
    }
    __m256d vr = _mm256_sub_pd(_mm256_mul_pd(ar, cr), _mm256_mul_pd(ai, ci));
    __m256d vi = _mm256_add_pd(_mm256_mul_pd(ar, ci), _mm256_mul_pd(ai, cr));
    re.add(_mm256_mul_pd(mag, vr));
    im.add(_mm256_mul_pd(mag, vi));
  }
  numkit::NeumaierSum sre, sim;
  re.drain(sre);
  im.drain(sim);
  if (j < t.size) {
    SpectrumView rest{t.lambda + j, t.spin + j, t.a_re + j,
                      t.a_im != nullptr ? t.a_im + j : nullptr, t.size - j};
    Complex r = deformed_sum_scalar(rest, a);
    sre.add(r.real());
    sim.add(r.imag());
  }
  return {sre.value(), sim.value()};
}

double lattice_sum_avx2(int M, double d1, double d2, double s) {
  VNeumaier acc;
  const __m256d ms = _mm256_set1_pd(-s);
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  for (int m = -M; m <= M; ++m) {
    const __m256d y2 = _mm256_set1_pd((m * d1) * (m * d1));
    const __m256d shift = _mm256_set1_pd(m * d2);
    for (int n0 = -M; n0 <= M; n0 += 4) {
      __m256d n = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(n0)), lane);
      __m256d valid = _mm256_cmp_pd(n, _mm256_set1_pd(static_cast<double>(M)), _CMP_LE_OQ);
      if (m == 0)
        valid = _mm256_and_pd(valid, _mm256_cmp_pd(n, _mm256_setzero_pd(), _CMP_NEQ_OQ));
      __m256d x = _mm256_sub_pd(n, shift);
      __m256d q = _mm256_fmadd_pd(x, x, y2);
      q = _mm256_blendv_pd(_mm256_set1_pd(1.0), q, valid);
      __m256d v = vexp(_mm256_mul_pd(ms, vlog(q)));
      acc.add(_mm256_and_pd(valid, v));
    }
  }
  numkit::NeumaierSum out;
  acc.drain(out);
  return out.value();
}

double compensated_sum_avx2(std::span<const double> x) {
  VNeumaier acc;
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) acc.add(_mm256_loadu_pd(x.data() + i));
  numkit::NeumaierSum out;
  acc.drain(out);
  for (; i < x.size(); ++i) out.add(x[i]);
  return out.value();
}

void exp_avx2(std::span<const double> x, std::span<double> out) {
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) _mm256_storeu_pd(out.data() + i, vexp(_mm256_loadu_pd(x.data() + i)));
  exp_scalar(x.subspan(i), out.subspan(i));
}

void log_avx2(std::span<const double> x, std::span<double> out) {
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) _mm256_storeu_pd(out.data() + i, vlog(_mm256_loadu_pd(x.data() + i)));
  log_scalar(x.subspan(i), out.subspan(i));
}

}  // namespace ttbar::simd::detail
