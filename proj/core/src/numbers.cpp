#include "lca/numbers.hpp"

#include <limits>

namespace lca {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
        if (n == d) return true;
        if (n % d == 0) return false;
    }
    // deterministic trial division; operands here stay far below 2^32
    for (std::uint64_t d = 11; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

std::uint64_t next_prime(std::uint64_t n) {
    std::uint64_t c = n + 1;
    while (!is_prime(c)) ++c;
    return c;
}

PrimeSequence PrimeSequence::distinct(std::vector<std::uint64_t> seed_primes) {
    PrimeSequence s;
    s.kind = Kind::Distinct;
    for (std::size_t i = 0; i < seed_primes.size(); ++i) {
        if (!is_prime(seed_primes[i]))
            throw std::invalid_argument("PrimeSequence: seed element is not prime");
        if (i > 0 && seed_primes[i] <= seed_primes[i - 1])
            throw std::invalid_argument("PrimeSequence: seed must be strictly increasing");
    }
    s.seed = std::move(seed_primes);
    return s;
}

std::uint64_t PrimeSequence::at(std::uint64_t i) const {
    if (kind == Kind::Constant) return constant_p;
    if (i < seed.size()) return seed[i];
    std::uint64_t p = seed.empty() ? 1 : seed.back();
    for (std::uint64_t k = seed.size(); k <= i; ++k) p = next_prime(p);
    return p;
}

std::uint64_t PrimeSequence::tail_threshold() const {
    if (kind == Kind::Constant) return constant_p;  // no tail; callers check kind
    return seed.empty() ? 1 : seed.back();
}

bool PrimeSequence::contains(std::uint64_t p) const {
    if (kind == Kind::Constant) return p == constant_p;
    if (p > tail_threshold()) return is_prime(p);
    for (auto s : seed)
        if (s == p) return true;
    return false;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            throw std::overflow_error("ipow overflow");
        r *= base;
    }
    return r;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n) {
    if (n < 2) return std::nullopt;
    for (std::uint64_t p = 2; p * p <= n; p = next_prime(p)) {
        if (n % p == 0) {
            unsigned a = 0;
            std::uint64_t m = n;
            while (m % p == 0) { m /= p; ++a; }
            if (m != 1) return std::nullopt;
            return std::make_pair(p, a);
        }
    }
    return std::make_pair(n, 1u);  // n itself prime
}

}  // namespace lca
