#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lca/fgab.hpp"

namespace lca {

struct TooLarge : std::runtime_error {
    unsigned long long value;
    unsigned long long bound;
    TooLarge(const char* what, unsigned long long value, unsigned long long bound)
        : std::runtime_error(what), value(value), bound(bound) {}
};

/**
 * A finite lattice with complete join and meet tables.  Nodes are ids
 * 0..size-1; when built from a group, subgroups[i] is the canonical basis
 * behind node i.
 */
struct Lattice {
    std::vector<Subgroup> subgroups;  // empty for abstract lattices
    std::vector<std::vector<std::uint32_t>> join;
    std::vector<std::vector<std::uint32_t>> meet;

    std::size_t size() const { return join.size(); }
    bool leq(std::uint32_t a, std::uint32_t b) const { return meet[a][b] == a; }
    std::uint32_t top() const;
    std::uint32_t bottom() const;

    // Builds the tables from a reflexive partial order given as a matrix;
    // throws std::invalid_argument when some pair lacks a unique least upper
    // or greatest lower bound.
    static Lattice from_leq(const std::vector<std::vector<bool>>& leq);
};

// Every subgroup of a finite group, tables included.  Enumerates by closing
// the cyclic subgroups under pairwise sums.  Throws TooLarge when the group
// order or the number of subgroups found exceeds the bound.
Lattice subgroup_lattice(const FgAbGroup& g, unsigned long long bound = 10000);

struct ModularViolation {
    std::uint32_t a, b, c;  // a <= c yet a v (b ^ c) != (a v b) ^ c
};

// Exhaustive scan over all triples with a <= c; first violation wins.
std::optional<ModularViolation> check_modular_law(const Lattice& l);

/**
 * Five nodes in the pentagon pattern: bottom < a < c < top on one side,
 * b on the other, with a v b = c v b = top and a ^ b = c ^ b = bottom.
 * A lattice has one exactly when the modular law fails somewhere.
 */
struct PentagonWitness {
    std::uint32_t top, c, a, b, bottom;
};

std::optional<PentagonWitness> find_pentagon(const Lattice& l);

}  // namespace lca
