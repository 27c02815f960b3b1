// AVX2/FMA variants of the entropy kernels. Compiled with -mavx2 -mfma and
// only entered after a runtime CPU check.
#include <immintrin.h>

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "eur/kernels.hpp"

namespace eur::kernels::avx2 {

namespace {

// fdlibm log/exp coefficients.
constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;
constexpr double kInvLn2 = 1.44269504088896338700e+00;
constexpr double kLg1 = 6.666666666666735130e-01;
constexpr double kLg2 = 3.999999999940941908e-01;
constexpr double kLg3 = 2.857142874366239149e-01;
constexpr double kLg4 = 2.222219843214978396e-01;
constexpr double kLg5 = 1.818357216161805012e-01;
constexpr double kLg6 = 1.531383769920937332e-01;
constexpr double kLg7 = 1.479819860511658591e-01;
constexpr double kP1 = 1.66666666666666019037e-01;
constexpr double kP2 = -2.77777777770155933842e-03;
constexpr double kP3 = 6.61375632143793436117e-05;
constexpr double kP4 = -1.65339022054652515390e-06;
constexpr double kP5 = 4.13813679705723846039e-08;

inline __m256d set1(double v) { return _mm256_set1_pd(v); }

// Small signed int64 lanes (|n| < 2^40) to double.
inline __m256d int64_to_double(__m256i n) {
  const __m256i bias = _mm256_set1_epi64x(0x4330000000000000LL + (1LL << 40));
  const __m256d shifted = _mm256_castsi256_pd(_mm256_add_epi64(n, bias));
  return _mm256_sub_pd(shifted, set1(4503599627370496.0 + 1099511627776.0));
}

// 2^n for integer-valued n in [-1022, 1023].
inline __m256d pow2(__m256d n) {
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  __m256i n64 = _mm256_cvtepi32_epi64(n32);
  n64 = _mm256_add_epi64(n64, _mm256_set1_epi64x(1023));
  return _mm256_castsi256_pd(_mm256_slli_epi64(n64, 52));
}

// Natural log for positive finite lanes.
inline __m256d vlog(__m256d x) {
  const __m256d sub = _mm256_cmp_pd(x, set1(DBL_MIN), _CMP_LT_OQ);
  x = _mm256_blendv_pd(x, _mm256_mul_pd(x, set1(18014398509481984.0)), sub);  // * 2^54
  const __m256i bits = _mm256_castpd_si256(x);
  __m256i e = _mm256_sub_epi64(_mm256_and_si256(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(0x7ff)),
                               _mm256_set1_epi64x(1023));
  const __m256i mant_bits = _mm256_or_si256(
      _mm256_and_si256(bits, _mm256_set1_epi64x(0x000fffffffffffffLL)),
      _mm256_set1_epi64x(0x3ff0000000000000LL));
  __m256d m = _mm256_castsi256_pd(mant_bits);
  const __m256d big = _mm256_cmp_pd(m, set1(1.41421356237309504880), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, set1(0.5)), big);
  e = _mm256_sub_epi64(e, _mm256_castpd_si256(big));  // mask lanes are -1
  __m256d k = int64_to_double(e);
  k = _mm256_sub_pd(k, _mm256_and_pd(sub, set1(54.0)));

  const __m256d f = _mm256_sub_pd(m, set1(1.0));
  const __m256d s = _mm256_div_pd(f, _mm256_add_pd(set1(2.0), f));
  const __m256d z = _mm256_mul_pd(s, s);
  const __m256d w = _mm256_mul_pd(z, z);
  const __m256d t1 = _mm256_mul_pd(
      w, _mm256_fmadd_pd(w, _mm256_fmadd_pd(w, set1(kLg6), set1(kLg4)), set1(kLg2)));
  const __m256d t2 = _mm256_mul_pd(
      z, _mm256_fmadd_pd(
             w, _mm256_fmadd_pd(w, _mm256_fmadd_pd(w, set1(kLg7), set1(kLg5)), set1(kLg3)),
             set1(kLg1)));
  const __m256d R = _mm256_add_pd(t2, t1);
  const __m256d hfsq = _mm256_mul_pd(set1(0.5), _mm256_mul_pd(f, f));
  // k*ln2_hi - ((hfsq - (s*(hfsq+R) + k*ln2_lo)) - f)
  const __m256d inner = _mm256_fmadd_pd(s, _mm256_add_pd(hfsq, R), _mm256_mul_pd(k, set1(kLn2Lo)));
  return _mm256_sub_pd(_mm256_mul_pd(k, set1(kLn2Hi)),
                       _mm256_sub_pd(_mm256_sub_pd(hfsq, inner), f));
}

// exp for finite lanes; underflows to 0 below -745, overflows to +inf above 709.78.
inline __m256d vexp(__m256d x) {
  const __m256d under = _mm256_cmp_pd(x, set1(-745.2), _CMP_LT_OQ);
  const __m256d over = _mm256_cmp_pd(x, set1(709.782712893384), _CMP_GT_OQ);
  x = _mm256_max_pd(_mm256_min_pd(x, set1(709.782712893384)), set1(-745.2));
  const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, set1(kInvLn2)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  const __m256d hi = _mm256_fnmadd_pd(k, set1(kLn2Hi), x);
  const __m256d lo = _mm256_mul_pd(k, set1(kLn2Lo));
  const __m256d r = _mm256_sub_pd(hi, lo);
  const __m256d t = _mm256_mul_pd(r, r);
  const __m256d poly = _mm256_fmadd_pd(
      t,
      _mm256_fmadd_pd(t, _mm256_fmadd_pd(t, _mm256_fmadd_pd(t, set1(kP5), set1(kP4)), set1(kP3)),
                      set1(kP2)),
      set1(kP1));
  const __m256d c = _mm256_fnmadd_pd(t, poly, r);
  // y = 1 - ((lo - (r*c)/(2-c)) - hi)
  const __m256d frac = _mm256_div_pd(_mm256_mul_pd(r, c), _mm256_sub_pd(set1(2.0), c));
  const __m256d y = _mm256_sub_pd(set1(1.0), _mm256_sub_pd(_mm256_sub_pd(lo, frac), hi));
  // Two-step scaling keeps both factors normal down to the subnormal range.
  const __m256d k1 = _mm256_floor_pd(_mm256_mul_pd(k, set1(0.5)));
  const __m256d k2 = _mm256_sub_pd(k, k1);
  __m256d out = _mm256_mul_pd(_mm256_mul_pd(y, pow2(k1)), pow2(k2));
  out = _mm256_andnot_pd(under, out);
  return _mm256_blendv_pd(out, set1(INFINITY), over);
}

struct VecNeumaier {
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();
  void add(__m256d v) {
    const __m256d t = _mm256_add_pd(sum, v);
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    const __m256d sum_bigger =
        _mm256_cmp_pd(_mm256_and_pd(sum, abs_mask), _mm256_and_pd(v, abs_mask), _CMP_GE_OQ);
    const __m256d a = _mm256_add_pd(_mm256_sub_pd(sum, t), v);
    const __m256d b = _mm256_add_pd(_mm256_sub_pd(v, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(b, a, sum_bigger));
    sum = t;
  }
  double reduce() const {
    alignas(32) double s[4], c[4];
    _mm256_store_pd(s, sum);
    _mm256_store_pd(c, comp);
    double total = 0.0, cc = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (double v : {s[i], c[i]}) {
        const double t = total + v;
        cc += std::abs(total) >= std::abs(v) ? (total - t) + v : (v - t) + total;
        total = t;
      }
    }
    return total + cc;
  }
};

// Applies `op` to every 4-lane block of p, padding the tail with zeros.
template <class Op>
double reduce_blocks(std::span<const double> p, Op op) {
  VecNeumaier acc;
  const std::size_t n = p.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc.add(op(_mm256_loadu_pd(p.data() + i)));
  if (i < n) {
    alignas(32) double tail[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t j = 0; i + j < n; ++j) tail[j] = p[i + j];
    acc.add(op(_mm256_load_pd(tail)));
  }
  return acc.reduce();
}

}  // namespace

double power_sum(std::span<const double> p, double a) {
  const __m256d va = set1(a);
  return reduce_blocks(p, [va](__m256d x) {
    const __m256d pos = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_GT_OQ);
    const __m256d safe = _mm256_blendv_pd(set1(1.0), x, pos);
    return _mm256_and_pd(pos, vexp(_mm256_mul_pd(va, vlog(safe))));
  });
}

double neg_plogp_sum(std::span<const double> p) {
  return reduce_blocks(p, [](__m256d x) {
    const __m256d pos = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_GT_OQ);
    const __m256d safe = _mm256_blendv_pd(set1(1.0), x, pos);
    const __m256d v = _mm256_mul_pd(_mm256_sub_pd(_mm256_setzero_pd(), safe), vlog(safe));
    return _mm256_and_pd(pos, v);
  });
}

void scaled_pow(std::span<const double> x, double e, double coeff, std::span<double> out) {
  if (out.size() < x.size()) throw std::invalid_argument("scaled_pow: output too small");
  const __m256d ve = set1(e);
  const __m256d vc = set1(coeff);
  auto block = [&](__m256d v) {
    const __m256d pos = _mm256_cmp_pd(v, _mm256_setzero_pd(), _CMP_GT_OQ);
    const __m256d safe = _mm256_blendv_pd(set1(1.0), v, pos);
    return _mm256_and_pd(pos, _mm256_mul_pd(vc, vexp(_mm256_mul_pd(ve, vlog(safe)))));
  };
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out.data() + i, block(_mm256_loadu_pd(x.data() + i)));
  if (i < n) {
    alignas(32) double in[4] = {0.0, 0.0, 0.0, 0.0};
    alignas(32) double res[4];
    for (std::size_t j = 0; i + j < n; ++j) in[j] = x[i + j];
    _mm256_store_pd(res, block(_mm256_load_pd(in)));
    for (std::size_t j = 0; i + j < n; ++j) out[i + j] = res[j];
  }
}

void log4(const double* x, double* out) { _mm256_storeu_pd(out, vlog(_mm256_loadu_pd(x))); }
void exp4(const double* x, double* out) { _mm256_storeu_pd(out, vexp(_mm256_loadu_pd(x))); }

}  // namespace eur::kernels::avx2
