#pragma once

// Small arithmetic vocabulary shared by every module: primes, prime
// sequences, and the two saturating counters (Cardinal for index sets,
// ExtNat for ranks).  Everything here is a plain value type.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lca {

bool is_prime(std::uint64_t n);
std::uint64_t next_prime(std::uint64_t n);  // least prime strictly above n

// A validated prime.  Construction throws on composites so downstream
// code never has to re-check.
struct Prime {
    std::uint64_t value = 2;

    Prime() = default;
    explicit Prime(std::uint64_t v) : value(v) {
        if (!is_prime(v)) throw std::invalid_argument("Prime: " + std::to_string(v) + " is not prime");
    }
    friend bool operator==(const Prime&, const Prime&) = default;
    auto operator<=>(const Prime&) const = default;
};

// Cardinality of an index set: a natural number or countably infinite.
// Arithmetic saturates at the infinite value.
struct Cardinal {
    bool infinite = false;
    std::uint64_t n = 0;

    static Cardinal finite(std::uint64_t k) { return Cardinal{false, k}; }
    static Cardinal inf() { return Cardinal{true, 0}; }

    bool is_zero() const { return !infinite && n == 0; }
    bool is_finite() const { return !infinite; }

    friend Cardinal operator+(Cardinal a, Cardinal b) {
        if (a.infinite || b.infinite) return inf();
        return finite(a.n + b.n);
    }
    Cardinal& operator+=(Cardinal o) { return *this = *this + o; }
    friend Cardinal operator*(Cardinal a, Cardinal b) {
        if (a.is_zero() || b.is_zero()) return finite(0);
        if (a.infinite || b.infinite) return inf();
        return finite(a.n * b.n);
    }
    friend bool operator==(const Cardinal&, const Cardinal&) = default;
    // total order: every finite value < infinite
    friend bool operator<(Cardinal a, Cardinal b) {
        if (a.infinite) return false;
        if (b.infinite) return true;
        return a.n < b.n;
    }
    std::string str() const { return infinite ? "inf" : std::to_string(n); }
};

// Extended natural number used for ranks and dimensions.
struct ExtNat {
    bool infinite = false;
    std::uint64_t n = 0;

    static ExtNat finite(std::uint64_t k) { return ExtNat{false, k}; }
    static ExtNat inf() { return ExtNat{true, 0}; }
    static ExtNat of(Cardinal c) { return ExtNat{c.infinite, c.n}; }

    bool is_finite() const { return !infinite; }
    friend ExtNat operator+(ExtNat a, ExtNat b) {
        if (a.infinite || b.infinite) return inf();
        return finite(a.n + b.n);
    }
    ExtNat& operator+=(ExtNat o) { return *this = *this + o; }
    friend bool operator==(const ExtNat&, const ExtNat&) = default;
    friend bool operator<(ExtNat a, ExtNat b) {
        if (a.infinite) return false;
        if (b.infinite) return true;
        return a.n < b.n;
    }
    std::string str() const { return infinite ? "inf" : std::to_string(n); }
};

// A deterministic infinite sequence of primes.  Two flavours:
//   Constant p      : p, p, p, ...
//   Distinct (seed) : the strictly increasing seed, then extended forever
//                     with the next prime above the last element.
// An empty distinct seed therefore denotes 2, 3, 5, 7, ...
// Equality is structural: distinct sequences are equal iff their seeds are.
struct PrimeSequence {
    enum class Kind { Constant, Distinct };
    Kind kind = Kind::Distinct;
    std::uint64_t constant_p = 2;       // Constant only
    std::vector<std::uint64_t> seed;    // Distinct only, strictly increasing primes

    static PrimeSequence constant(Prime p) {
        PrimeSequence s;
        s.kind = Kind::Constant;
        s.constant_p = p.value;
        return s;
    }
    static PrimeSequence distinct(std::vector<std::uint64_t> seed_primes = {});

    std::uint64_t at(std::uint64_t i) const;  // i-th element, 0-based

    // A distinct sequence, viewed as a set, is its seed together with all
    // primes above the largest seed element.  tail_threshold() is that
    // cutoff: the set equals seed ∪ { q prime : q > tail_threshold() }.
    std::uint64_t tail_threshold() const;
    bool contains(std::uint64_t p) const;

    friend bool operator==(const PrimeSequence&, const PrimeSequence&) = default;
    friend bool operator<(const PrimeSequence& a, const PrimeSequence& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.kind == Kind::Constant) return a.constant_p < b.constant_p;
        return a.seed < b.seed;
    }
};

// Integer helpers used across modules.
std::uint64_t ipow(std::uint64_t base, unsigned exp);  // throws on overflow
// n = p^a with p prime, a >= 1; nullopt otherwise.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n);

}  // namespace lca
