#include "smo/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "smo/errors.hpp"
#include "smo/primes.hpp"

namespace smo {

namespace {

struct CyclicComponent {
  std::uint32_t prime_power;  // modulus of the local factor
  std::uint32_t order;
  // log[r] for r mod prime_power, -1 if r not a unit or not in this component's
  // coordinate (for the 2-adic split the table stores the coordinate directly).
  std::vector<std::int32_t> log;
};

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

std::uint32_t smallest_primitive_root(std::uint32_t p, std::uint32_t pe) {
  const std::uint64_t phi = euler_phi(pe);
  const auto factors = prime_divisors(phi);
  for (std::uint32_t g = 2; g < pe; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (std::uint32_t r : factors) {
      if (pow_mod(g, phi / r, pe) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;  // pe == 2
}

std::vector<std::int32_t> discrete_log_table(std::uint32_t g, std::uint32_t order, std::uint32_t pe) {
  std::vector<std::int32_t> log(pe, -1);
  std::uint64_t v = 1;
  for (std::uint32_t k = 0; k < order; ++k) {
    log[v] = static_cast<std::int32_t>(k);
    v = v * g % pe;
  }
  return log;
}

// Components of (Z/q)^* in the documented order.
std::vector<CyclicComponent> components_of(std::uint32_t q) {
  std::vector<CyclicComponent> out;
  for (std::uint32_t p : prime_divisors(q)) {
    std::uint32_t pe = 1;
    int e = 0;
    while (q % (pe * p) == 0) {
      pe *= p;
      ++e;
    }
    if (p == 2) {
      if (e == 1) continue;
      // -1 component: coordinate u with n = (-1)^u 5^v.
      CyclicComponent minus_one{pe, 2, std::vector<std::int32_t>(pe, -1)};
      for (std::uint32_t r = 1; r < pe; r += 2) minus_one.log[r] = (r % 4 == 3) ? 1 : 0;
      out.push_back(std::move(minus_one));
      if (e >= 3) {
        const std::uint32_t order = pe / 4;
        auto five = discrete_log_table(5, order, pe);
        CyclicComponent c{pe, order, std::vector<std::int32_t>(pe, -1)};
        for (std::uint32_t r = 1; r < pe; r += 2) {
          const std::uint32_t s = (r % 4 == 3) ? pe - r : r;
          c.log[r] = five[s];
        }
        out.push_back(std::move(c));
      }
      continue;
    }
    const std::uint32_t order = static_cast<std::uint32_t>(euler_phi(pe));
    const std::uint32_t g = smallest_primitive_root(p, pe);
    out.push_back({pe, order, discrete_log_table(g, order, pe)});
  }
  return out;
}

}  // namespace

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint32_t p : prime_divisors(n)) result = result / p * (p - 1);
  return result;
}

DirichletCharacter::DirichletCharacter(std::uint32_t modulus, std::uint32_t denominator,
                                       std::vector<std::int32_t> exponents,
                                       std::optional<std::uint64_t> index)
    : modulus_(modulus),
      denominator_(denominator),
      exponents_(std::move(exponents)),
      index_(index) {}

DirichletCharacter DirichletCharacter::from_index(std::uint32_t modulus, std::uint64_t index) {
  if (modulus == 0) throw PreconditionError("dirichlet_character: modulus must be >= 1");
  if (modulus > kMaxCharacterModulus) {
    throw PreconditionError("dirichlet_character: modulus exceeds " +
                            std::to_string(kMaxCharacterModulus));
  }
  const std::uint64_t count = euler_phi(modulus);
  if (index >= count) {
    throw PreconditionError("dirichlet_character: index " + std::to_string(index) +
                            " out of range for modulus " + std::to_string(modulus) + " (" +
                            std::to_string(count) + " characters)");
  }
  const auto comps = components_of(modulus);
  std::uint32_t denom = 1;
  for (const auto& c : comps) denom = std::lcm(denom, c.order);

  std::vector<std::uint32_t> digits;
  std::uint64_t rest = index;
  for (const auto& c : comps) {
    digits.push_back(static_cast<std::uint32_t>(rest % c.order));
    rest /= c.order;
  }

  std::vector<std::int32_t> exps(modulus, -1);
  for (std::uint32_t n = 0; n < modulus; ++n) {
    if (std::gcd(n, modulus) != 1) continue;
    std::uint64_t e = 0;
    for (std::size_t j = 0; j < comps.size(); ++j) {
      const auto& c = comps[j];
      const std::int32_t lg = c.log[n % c.prime_power];
      e += static_cast<std::uint64_t>(digits[j]) * static_cast<std::uint64_t>(lg) * (denom / c.order);
    }
    exps[n] = static_cast<std::int32_t>(e % denom);
  }
  if (modulus == 1) exps[0] = 0;
  return DirichletCharacter(modulus, denom, std::move(exps), index);
}

std::complex<double> DirichletCharacter::operator()(std::uint64_t n) const {
  const std::int32_t e = exponent(n);
  if (e < 0) return {0.0, 0.0};
  if (e == 0) return {1.0, 0.0};
  // Exact quarter turns avoid sin(pi) residue.
  if (4 * static_cast<std::uint64_t>(e) % denominator_ == 0) {
    switch (4 * static_cast<std::uint64_t>(e) / denominator_) {
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
      default: break;
    }
  }
  const double angle = 2.0 * std::numbers::pi * e / denominator_;
  return {std::cos(angle), std::sin(angle)};
}

std::complex<double> DirichletCharacter::operator()(std::int64_t n) const {
  const std::int64_t q = modulus_;
  return (*this)(static_cast<std::uint64_t>(((n % q) + q) % q));
}

bool DirichletCharacter::is_principal() const {
  for (std::int32_t e : exponents_) {
    if (e > 0) return false;
  }
  return true;
}

std::uint32_t DirichletCharacter::conductor() const {
  for (std::uint32_t d = 1; d <= modulus_; ++d) {
    if (modulus_ % d != 0) continue;
    bool trivial_on_kernel = true;
    for (std::uint32_t n = 1; n < modulus_ && trivial_on_kernel; n += d) {
      const std::int32_t e = exponents_[n];
      if (e > 0) trivial_on_kernel = false;
    }
    if (trivial_on_kernel) return d;
  }
  return modulus_;
}

DirichletCharacter DirichletCharacter::primitive() const {
  const std::uint32_t d = conductor();
  if (d == modulus_) return *this;
  std::vector<std::int32_t> exps(d, -1);
  for (std::uint32_t r = 0; r < d; ++r) {
    if (std::gcd(r, d) != 1) continue;
    for (std::uint32_t n = r; n < modulus_; n += d) {
      if (exponents_[n] >= 0) {
        exps[r] = exponents_[n];
        break;
      }
    }
  }
  if (d == 1) exps[0] = 0;
  return DirichletCharacter(d, denominator_, std::move(exps), std::nullopt);
}

DirichletCharacter DirichletCharacter::conj() const {
  std::vector<std::int32_t> exps(exponents_);
  for (auto& e : exps) {
    if (e > 0) e = static_cast<std::int32_t>(denominator_) - e;
  }
  return DirichletCharacter(modulus_, denominator_, std::move(exps), std::nullopt);
}

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& other) const {
  const std::uint64_t lcm_mod = std::lcm<std::uint64_t>(modulus_, other.modulus_);
  if (lcm_mod > kMaxCharacterModulus) throw PreconditionError("character product: modulus too large");
  const auto q = static_cast<std::uint32_t>(lcm_mod);
  const std::uint32_t denom = std::lcm(denominator_, other.denominator_);
  std::vector<std::int32_t> exps(q, -1);
  for (std::uint32_t n = 0; n < q; ++n) {
    const std::int32_t a = exponent(n);
    const std::int32_t b = other.exponent(n);
    if (a < 0 || b < 0) continue;
    const std::uint64_t e = static_cast<std::uint64_t>(a) * (denom / denominator_) +
                            static_cast<std::uint64_t>(b) * (denom / other.denominator_);
    exps[n] = static_cast<std::int32_t>(e % denom);
  }
  return DirichletCharacter(q, denom, std::move(exps), std::nullopt);
}

bool DirichletCharacter::operator==(const DirichletCharacter& other) const {
  if (modulus_ != other.modulus_) return false;
  for (std::uint32_t n = 0; n < modulus_; ++n) {
    const std::int32_t a = exponent(n);
    const std::int32_t b = other.exponent(n);
    if ((a < 0) != (b < 0)) return false;
    if (a < 0) continue;
    // Compare a/da with b/db.
    if (static_cast<std::uint64_t>(a) * other.denominator_ !=
        static_cast<std::uint64_t>(b) * denominator_) {
      return false;
    }
  }
  return true;
}

std::complex<double> DirichletCharacter::gauss_sum() const {
  std::complex<double> sum{0.0, 0.0};
  for (std::uint32_t a = 0; a < modulus_; ++a) {
    const std::int32_t e = exponent(a);
    if (e < 0) continue;
    // Phase e/denominator + a/modulus reduced mod 1 before scaling by 2 pi.
    long double turn = static_cast<long double>(e) / denominator_ +
                       static_cast<long double>(a) / modulus_;
    turn -= std::floor(turn);
    const double angle = static_cast<double>(2.0L * std::numbers::pi_v<long double> * turn);
    sum += std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return sum;
}

std::complex<double> DirichletCharacter::root_number() const {
  if (!is_primitive()) throw PreconditionError("root_number: character is not primitive");
  const std::complex<double> i_b = is_even() ? std::complex<double>(1.0, 0.0)
                                             : std::complex<double>(0.0, 1.0);
  return gauss_sum() / (i_b * std::sqrt(static_cast<double>(modulus_)));
}

std::vector<std::uint64_t> primitive_character_indices(std::uint32_t modulus) {
  std::vector<std::uint64_t> out;
  const std::uint64_t count = euler_phi(modulus);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (DirichletCharacter::from_index(modulus, i).is_primitive()) out.push_back(i);
  }
  return out;
}

}  // namespace smo
