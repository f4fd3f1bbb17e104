#include "smo/qexpansion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smo/errors.hpp"

namespace smo {

namespace detail {

namespace {

template <std::uint32_t P>
constexpr std::uint32_t mul(std::uint32_t a, std::uint32_t b) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % P);
}

template <std::uint32_t P>
constexpr std::uint32_t power(std::uint32_t b, std::uint64_t e) {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = mul<P>(r, b);
    b = mul<P>(b, b);
    e >>= 1;
  }
  return r;
}

template <std::uint32_t P, std::uint32_t G>
void transform(std::vector<std::uint32_t>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<std::uint32_t> roots(n / 2);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint32_t w = power<P>(G, (P - 1) / len);
    if (inverse) w = power<P>(w, P - 2);
    const std::size_t half = len / 2;
    roots[0] = 1;
    for (std::size_t k = 1; k < half; ++k) roots[k] = mul<P>(roots[k - 1], w);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::uint32_t u = a[i + k];
        const std::uint32_t v = mul<P>(a[i + k + half], roots[k]);
        a[i + k] = u + v >= P ? u + v - P : u + v;
        a[i + k + half] = u >= v ? u - v : u + P - v;
      }
    }
  }
  if (inverse) {
    const std::uint32_t n_inv = power<P>(static_cast<std::uint32_t>(n % P), P - 2);
    for (auto& x : a) x = mul<P>(x, n_inv);
  }
}

template <std::uint32_t P, std::uint32_t G>
std::vector<std::uint32_t> multiply(const std::vector<std::uint32_t>& a,
                                    const std::vector<std::uint32_t>& b, std::size_t length) {
  const std::size_t la = std::min(a.size(), length);
  const std::size_t lb = std::min(b.size(), length);
  if (la == 0 || lb == 0) return std::vector<std::uint32_t>(length, 0);
  std::size_t n = 1;
  while (n < la + lb - 1) n <<= 1;
  const bool square = (&a == &b);
  std::vector<std::uint32_t> fa(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(la));
  fa.resize(n, 0);
  transform<P, G>(fa, false);
  if (square) {
    for (std::size_t i = 0; i < n; ++i) fa[i] = mul<P>(fa[i], fa[i]);
  } else {
    std::vector<std::uint32_t> fb(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(lb));
    fb.resize(n, 0);
    transform<P, G>(fb, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] = mul<P>(fa[i], fb[i]);
  }
  transform<P, G>(fa, true);
  fa.resize(length, 0);
  return fa;
}

template <std::size_t I>
std::vector<std::uint32_t> multiply_at(const std::vector<std::uint32_t>& a,
                                       const std::vector<std::uint32_t>& b, std::size_t length) {
  return multiply<kNttPrimes[I].p, kNttPrimes[I].generator>(a, b, length);
}

}  // namespace

std::vector<std::uint32_t> multiply_mod(std::size_t prime_index, const std::vector<std::uint32_t>& a,
                                        const std::vector<std::uint32_t>& b, std::size_t length) {
  switch (prime_index) {
    case 0: return multiply_at<0>(a, b, length);
    case 1: return multiply_at<1>(a, b, length);
    case 2: return multiply_at<2>(a, b, length);
    case 3: return multiply_at<3>(a, b, length);
    case 4: return multiply_at<4>(a, b, length);
    case 5: return multiply_at<5>(a, b, length);
    case 6: return multiply_at<6>(a, b, length);
    case 7: return multiply_at<7>(a, b, length);
    case 8: return multiply_at<8>(a, b, length);
    case 9: return multiply_at<9>(a, b, length);
    case 10: return multiply_at<10>(a, b, length);
    case 11: return multiply_at<11>(a, b, length);
    default: throw PreconditionError("multiply_mod: prime index out of range");
  }
}

}  // namespace detail

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::uint32_t to_residue(std::int64_t v, std::uint32_t p) {
  const std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

// 1 + scale * sum_{n>=1} sigma_power(n) q^n  (mod p), length terms.
std::vector<std::uint32_t> eisenstein_mod(std::int64_t scale, int sigma_power, std::uint32_t p,
                                          std::size_t length) {
  std::vector<std::uint32_t> e(length, 0);
  for (std::size_t d = 1; d < length; ++d) {
    const std::uint32_t dk = static_cast<std::uint32_t>(pow_mod(d, sigma_power, p));
    for (std::size_t n = d; n < length; n += d) {
      const std::uint32_t s = e[n] + dk;
      e[n] = s >= p ? s - p : s;
    }
  }
  const std::uint32_t c = to_residue(scale, p);
  for (std::size_t n = 1; n < length; ++n) {
    e[n] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(e[n]) * c % p);
  }
  if (length > 0) e[0] = 1;
  return e;
}

// prod (1 - q^n)^3 = sum_k (-1)^k (2k+1) q^{k(k+1)/2}  (mod p).
std::vector<std::uint32_t> eta_cubed_mod(std::uint32_t p, std::size_t length) {
  std::vector<std::uint32_t> e(length, 0);
  for (std::int64_t k = 0;; ++k) {
    const auto idx = static_cast<std::size_t>(k * (k + 1) / 2);
    if (idx >= length) break;
    e[idx] = to_residue((k % 2 == 0 ? 1 : -1) * (2 * k + 1), p);
  }
  return e;
}

std::pair<int, int> eisenstein_exponents(int weight) {
  switch (weight) {
    case 12: return {0, 0};
    case 16: return {1, 0};
    case 18: return {0, 1};
    case 20: return {2, 0};
    case 22: return {1, 1};
    case 26: return {2, 1};
    default:
      throw PreconditionError("eigenform: unsupported weight " + std::to_string(weight) +
                              " (need dim S_k = 1: one of 12, 16, 18, 20, 22, 26)");
  }
}

}  // namespace

bool is_supported_weight(int weight) {
  return std::find(std::begin(kSupportedWeights), std::end(kSupportedWeights), weight) !=
         std::end(kSupportedWeights);
}

CuspFormExpansion::CuspFormExpansion(int weight, std::size_t n_max) : weight_(weight), n_max_(n_max) {
  const auto [e4_power, e6_power] = eisenstein_exponents(weight);
  if (n_max < 1) throw PreconditionError("CuspFormExpansion: n_max must be >= 1");
  if (n_max > kMaxExpansionLength) {
    throw PreconditionError("CuspFormExpansion: n_max exceeds " + std::to_string(kMaxExpansionLength));
  }
  // |a_n| <= d(n) n^{(k-1)/2} <= 2 n^{k/2}; keep a sign bit and a wide margin.
  const double bits_needed = 0.5 * weight * std::log2(static_cast<double>(n_max)) + 2.0 + 16.0;
  double bits = 0.0;
  std::size_t count = 0;
  while (bits < bits_needed) {
    if (count == std::size(detail::kNttPrimes)) {
      throw PreconditionError("CuspFormExpansion: not enough CRT moduli for this size");
    }
    bits += std::log2(static_cast<double>(detail::kNttPrimes[count].p));
    ++count;
  }

  // f = q * eta^24 * E4^i * E6^j, so a_n is coefficient n-1 of the tail series.
  const std::size_t length = n_max;
  residues_.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t p = detail::kNttPrimes[i].p;
    auto series = eta_cubed_mod(p, length);
    for (int r = 0; r < 3; ++r) series = detail::multiply_mod(i, series, series, length);
    if (e4_power > 0) {
      auto e4 = eisenstein_mod(240, 3, p, length);
      if (e4_power == 2) e4 = detail::multiply_mod(i, e4, e4, length);
      series = detail::multiply_mod(i, series, e4, length);
    }
    if (e6_power > 0) {
      const auto e6 = eisenstein_mod(-504, 5, p, length);
      series = detail::multiply_mod(i, series, e6, length);
    }
    residues_.push_back(std::move(series));
  }

  modulus_ = 1;
  inverse_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t p = detail::kNttPrimes[i].p;
    for (std::size_t j = 0; j < i; ++j) {
      inverse_[i].push_back(pow_mod(detail::kNttPrimes[j].p % p, p - 2, p));
    }
    modulus_ *= detail::kNttPrimes[i].p;
  }
}

BigInt CuspFormExpansion::coefficient(std::size_t n) const {
  if (n < 1 || n > n_max_) {
    throw PreconditionError("CuspFormExpansion::coefficient: n=" + std::to_string(n) +
                            " outside [1, " + std::to_string(n_max_) + "]");
  }
  // Garner mixed-radix digits.
  const std::size_t k = residues_.size();
  std::vector<std::uint64_t> digits(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t p = detail::kNttPrimes[i].p;
    std::uint64_t x = residues_[i][n - 1];
    for (std::size_t j = 0; j < i; ++j) {
      x = (x + p - digits[j] % p) % p * inverse_[i][j] % p;
    }
    digits[i] = x;
  }
  BigInt value = 0;
  for (std::size_t i = k; i-- > 0;) {
    value = value * detail::kNttPrimes[i].p + digits[i];
  }
  if (value * 2 > modulus_) value -= modulus_;
  return value;
}

}  // namespace smo
