#include <immintrin.h>

#include <cstdlib>

#include "ncg/arith.hpp"
#include "ncg/error.hpp"

namespace ncg {

namespace kernels {

namespace {

inline std::uint32_t eval_cubic(const std::vector<std::uint32_t>& c, std::uint64_t x, std::uint64_t p) {
  std::uint64_t v = (x + c[2]) % p;
  v = (v * x + c[1]) % p;
  return static_cast<std::uint32_t>((v * x + c[0]) % p);
}

inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) { return a >= b ? a - b : a + p - b; }

// (a + b) mod p for lanes already reduced; a wrapped t - p loses the min.
__attribute__((target("avx2"))) inline __m256i add_mod_avx2(__m256i a, __m256i b, __m256i p) {
  __m256i t = _mm256_add_epi32(a, b);
  return _mm256_min_epu32(t, _mm256_sub_epi32(t, p));
}

}  // namespace

std::vector<std::int32_t> quadratic_character_table(std::uint32_t p) {
  std::vector<std::int32_t> chi(p, -1);
  chi[0] = 0;
  for (std::uint64_t x = 1; x < p; ++x) chi[(x * x) % p] = 1;
  return chi;
}

std::int64_t character_sum_scalar(const std::vector<std::uint32_t>& cubic, std::uint32_t p,
                                  const std::vector<std::int32_t>& chi) {
  std::int64_t sum = 0;
  for (std::uint64_t x = 0; x < p; ++x) sum += chi[eval_cubic(cubic, x, p)];
  return sum;
}

bool avx2_available() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
}

__attribute__((target("avx2"))) std::int64_t character_sum_avx2(const std::vector<std::uint32_t>& cubic,
                                                                  std::uint32_t p,
                                                                  const std::vector<std::int32_t>& chi) {
  constexpr std::uint32_t lanes = 8;
  const std::uint32_t blocks = p / lanes;
  std::int64_t sum = 0;
  if (blocks > 0) {
    // Lane j walks x = j, j + 8, j + 16, ... by forward differences of step 8.
    alignas(32) std::uint32_t v0[lanes], d1[lanes], d2[lanes], d3[lanes];
    for (std::uint32_t j = 0; j < lanes; ++j) {
      std::uint32_t g0 = eval_cubic(cubic, j, p);
      std::uint32_t g1 = eval_cubic(cubic, j + lanes, p);
      std::uint32_t g2 = eval_cubic(cubic, j + 2 * lanes, p);
      std::uint32_t g3 = eval_cubic(cubic, j + 3 * lanes, p);
      std::uint32_t e1 = sub_mod(g1, g0, p), e2 = sub_mod(g2, g1, p), e3 = sub_mod(g3, g2, p);
      std::uint32_t f1 = sub_mod(e2, e1, p), f2 = sub_mod(e3, e2, p);
      v0[j] = g0;
      d1[j] = e1;
      d2[j] = f1;
      d3[j] = sub_mod(f2, f1, p);
    }
    const __m256i mp = _mm256_set1_epi32(static_cast<int>(p));
    __m256i val = _mm256_load_si256(reinterpret_cast<const __m256i*>(v0));
    __m256i s1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(d1));
    __m256i s2 = _mm256_load_si256(reinterpret_cast<const __m256i*>(d2));
    const __m256i s3 = _mm256_load_si256(reinterpret_cast<const __m256i*>(d3));
    __m256i acc = _mm256_setzero_si256();
    const int* table = chi.data();
    for (std::uint32_t k = 0; k < blocks; ++k) {
      acc = _mm256_add_epi32(acc, _mm256_i32gather_epi32(table, val, 4));
      val = add_mod_avx2(val, s1, mp);
      s1 = add_mod_avx2(s1, s2, mp);
      s2 = add_mod_avx2(s2, s3, mp);
    }
    alignas(32) std::int32_t parts[lanes];
    _mm256_store_si256(reinterpret_cast<__m256i*>(parts), acc);
    for (std::int32_t x : parts) sum += x;
  }
  for (std::uint64_t x = static_cast<std::uint64_t>(blocks) * lanes; x < p; ++x) sum += chi[eval_cubic(cubic, x, p)];
  return sum;
}

}  // namespace kernels

std::uint64_t max_brute_force_prime() {
  const char* env = std::getenv("NCG_MAX_PRIME");
  if (env == nullptr || *env == '\0') return 10000;
  BigInt v = parse_bigint(env);
  if (v < 3 || v >= (BigInt(1) << 31)) throw InputError("NCG_MAX_PRIME must lie in [3, 2^31)");
  return v.get_ui();
}

std::uint64_t count_points_bruteforce(const EllipticCurveFp& e) {
  if (e.p > max_brute_force_prime()) {
    throw PreconditionError("p = " + std::to_string(e.p) + " exceeds the brute-force bound " +
                            std::to_string(max_brute_force_prime()) + " (raise NCG_MAX_PRIME)");
  }
  auto chi = kernels::quadratic_character_table(e.p);
  auto cubic = e.cubic();
  std::int64_t s = kernels::avx2_available() ? kernels::character_sum_avx2(cubic, e.p, chi)
                                             : kernels::character_sum_scalar(cubic, e.p, chi);
  std::int64_t count = 1 + static_cast<std::int64_t>(e.p) + s;
  std::int64_t a = static_cast<std::int64_t>(e.p) + 1 - count;
  ensure(a * a <= 4 * static_cast<std::int64_t>(e.p), "Hasse bound violated for " + e.to_string());
  return static_cast<std::uint64_t>(count);
}

long trace_of_frobenius(const EllipticCurveFp& e) {
  return static_cast<long>(e.p) + 1 - static_cast<long>(count_points_bruteforce(e));
}

}  // namespace ncg
