#pragma once

// Shared helpers for the test binaries: exhaustive enumeration of finite
// abelian isomorphism types, a set-based reference model for subgroup
// arithmetic, and random expression text generators.  Generators emit
// grammar text rather than trees so every sampled case goes through the
// same parse path as user input.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lca/fgab.hpp"

namespace testsupport {

inline void partitions_rec(int e, int max_part, std::vector<int>& cur,
                           std::vector<std::vector<int>>& out) {
    if (e == 0) {
        out.push_back(cur);
        return;
    }
    for (int part = std::min(e, max_part); part >= 1; --part) {
        cur.push_back(part);
        partitions_rec(e - part, part, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<int>> partitions(int e) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    partitions_rec(e, e, cur, out);
    return out;
}

// Every isomorphism type of abelian group of order 1..max_order, each given
// as a list of prime-power cyclic orders.  Order 1 contributes one entry,
// the empty list.
inline std::vector<std::vector<long long>> abelian_types_up_to(long long max_order) {
    std::vector<std::vector<long long>> all;
    for (long long n = 1; n <= max_order; ++n) {
        std::vector<std::pair<long long, int>> fact;
        long long m = n;
        for (long long p = 2; p * p <= m; ++p)
            if (m % p == 0) {
                int e = 0;
                while (m % p == 0) {
                    m /= p;
                    ++e;
                }
                fact.emplace_back(p, e);
            }
        if (m > 1) fact.emplace_back(m, 1);

        std::vector<std::vector<long long>> acc = {{}};
        for (auto [p, e] : fact) {
            std::vector<std::vector<long long>> next;
            for (const auto& lam : partitions(e))
                for (const auto& pre : acc) {
                    auto row = pre;
                    for (int part : lam) {
                        long long pw = 1;
                        for (int i = 0; i < part; ++i) pw *= p;
                        row.push_back(pw);
                    }
                    next.push_back(std::move(row));
                }
            acc = std::move(next);
        }
        for (auto& row : acc) all.push_back(std::move(row));
    }
    return all;
}

// Reference model of a finite group: explicit element tuples, subgroups as
// element sets, closure by worklist.  Only small groups go through here.
struct SetModel {
    std::vector<long long> orders;
    std::vector<std::vector<long long>> elems;

    explicit SetModel(const lca::FgAbGroup& g)
        : orders(g.torsion_orders), elems(lca::all_elements(g)) {}

    std::vector<long long> reduce(std::vector<long long> v) const {
        for (std::size_t i = 0; i < orders.size(); ++i) {
            v[i] %= orders[i];
            if (v[i] < 0) v[i] += orders[i];
        }
        return v;
    }

    std::vector<long long> add(const std::vector<long long>& a,
                               const std::vector<long long>& b) const {
        std::vector<long long> s(orders.size());
        for (std::size_t i = 0; i < orders.size(); ++i) s[i] = a[i] + b[i];
        return reduce(s);
    }

    std::set<std::vector<long long>> closure(
        const std::vector<std::vector<long long>>& gens) const {
        std::set<std::vector<long long>> got;
        std::vector<std::vector<long long>> work;
        auto push = [&](std::vector<long long> v) {
            v = reduce(std::move(v));
            if (got.insert(v).second) work.push_back(std::move(v));
        };
        push(std::vector<long long>(orders.size(), 0));
        for (const auto& g : gens) push(g);
        while (!work.empty()) {
            auto x = work.back();
            work.pop_back();
            for (const auto& g : gens) push(add(x, g));
        }
        return got;
    }
};

inline std::set<std::vector<long long>> subgroup_elems(const SetModel& m,
                                                       const lca::Subgroup& s) {
    std::set<std::vector<long long>> out;
    for (const auto& v : m.elems)
        if (lca::member(v, s)) out.insert(v);
    return out;
}

// ---- random expression text -----------------------------------------------

inline long long pick(std::mt19937_64& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline std::string cyclic_text(long long p, long long a) {
    if (a == 1) return "Z(" + std::to_string(p) + ")";
    return "Z(" + std::to_string(p) + "^" + std::to_string(a) + ")";
}

// One building block over a fixed prime.  Every form emitted here passes
// validation: infinite discrete families stay over discrete atoms, infinite
// compact families over compact ones, local products keep 0 < b < a.
inline std::string random_pgroup_part(std::mt19937_64& rng, long long p) {
    std::string ps = std::to_string(p);
    switch (pick(rng, 0, 9)) {
        case 0: return cyclic_text(p, pick(rng, 1, 3));
        case 1: return "Zinf(" + ps + ")";
        case 2: return "Zp(" + ps + ")";
        case 3: return "Qp(" + ps + ")";
        case 4: {
            long long card = pick(rng, 0, 1) ? 2 : 5;
            return "dsum[" + std::to_string(card) + "](" + cyclic_text(p, pick(rng, 1, 2)) + ")";
        }
        case 5: return "dsum[inf](" + cyclic_text(p, pick(rng, 1, 2)) + ")";
        case 6: return "dsum[inf](Zinf(" + ps + "))";
        case 7: return "prod[inf](" + cyclic_text(p, pick(rng, 1, 2)) + ")";
        case 8: {
            long long a = pick(rng, 2, 3);
            long long b = pick(rng, 1, a - 1);
            return "locprod[inf](" + cyclic_text(p, a) + ", sub(" + ps + "^" +
                   std::to_string(b) + "))";
        }
        default: return "locprod[inf](Qp(" + ps + "), Zp(" + ps + "))";
    }
}

inline std::string random_pgroup_text(std::mt19937_64& rng, long long p, int max_parts) {
    int parts = static_cast<int>(pick(rng, 1, max_parts));
    std::string s;
    for (int i = 0; i < parts; ++i) {
        if (i) s += " + ";
        s += random_pgroup_part(rng, p);
    }
    return s;
}

// Mixed-prime expressions from the dualizable fragment: no infinite sums of
// Z, no infinite families of T or R.
inline std::string random_dualizable_part(std::mt19937_64& rng, bool& used_seq) {
    static const long long primes[] = {2, 3, 5, 7};
    long long p = primes[pick(rng, 0, 3)];
    std::string ps = std::to_string(p);
    switch (pick(rng, 0, 13)) {
        case 0: return "Z";
        case 1: return "T";
        case 2: return "R";
        case 3: return cyclic_text(p, pick(rng, 1, 3));
        case 4: return "Zinf(" + ps + ")";
        case 5: return "Zp(" + ps + ")";
        case 6: return "Qp(" + ps + ")";
        case 7: return "dsum[inf](" + cyclic_text(p, pick(rng, 1, 2)) + ")";
        case 8: return "dsum[inf](Zinf(" + ps + "))";
        case 9: return "prod[inf](" + cyclic_text(p, pick(rng, 1, 2)) + ")";
        case 10: return "prod[inf](Zp(" + ps + "))";
        case 11: {
            long long a = pick(rng, 2, 3);
            long long b = pick(rng, 1, a - 1);
            return "locprod[inf](" + cyclic_text(p, a) + ", sub(" + ps + "^" +
                   std::to_string(b) + "))";
        }
        case 12: return "dsum[" + std::to_string(pick(rng, 2, 6)) + "](" +
                        cyclic_text(p, pick(rng, 1, 2)) + ")";
        default:
            used_seq = true;
            switch (pick(rng, 0, 2)) {
                case 0: return "dsum[inf](Z(P))";
                case 1: return "prod[inf](Z(P))";
                default: return "locprod[inf](Qp(P), Zp(P))";
            }
    }
}

inline std::string random_dualizable_text(std::mt19937_64& rng) {
    int parts = static_cast<int>(pick(rng, 1, 3));
    bool used_seq = false;
    std::string s;
    for (int i = 0; i < parts; ++i) {
        if (i) s += " + ";
        s += random_dualizable_part(rng, used_seq);
    }
    if (used_seq) s = "let P = primes distinct in " + s;
    return s;
}

// A finite-rank one-prime expression assembled from known multiplicities,
// shuffled, so structure recovery can be checked against the construction.
struct RankedSample {
    long long qp = 0;
    long long pruefer = 0;
    long long zp = 0;
    std::vector<long long> fin;  // cyclic orders p^a, ascending
    std::string text;
};

inline RankedSample random_ranked_sample(std::mt19937_64& rng, long long p) {
    RankedSample s;
    s.qp = pick(rng, 0, 2);
    s.pruefer = pick(rng, 0, 2);
    s.zp = pick(rng, 0, 2);
    long long nfin = pick(rng, 0, 3);
    std::string ps = std::to_string(p);
    std::vector<std::string> parts;
    for (long long i = 0; i < s.qp; ++i) parts.push_back("Qp(" + ps + ")");
    for (long long i = 0; i < s.pruefer; ++i) parts.push_back("Zinf(" + ps + ")");
    for (long long i = 0; i < s.zp; ++i) parts.push_back("Zp(" + ps + ")");
    for (long long i = 0; i < nfin; ++i) {
        long long a = pick(rng, 1, 3);
        long long pw = 1;
        for (long long j = 0; j < a; ++j) pw *= p;
        s.fin.push_back(pw);
        parts.push_back(cyclic_text(p, a));
    }
    if (parts.empty()) {
        s.fin.push_back(p);
        parts.push_back(cyclic_text(p, 1));
    }
    std::shuffle(parts.begin(), parts.end(), rng);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s.text += " + ";
        s.text += parts[i];
    }
    std::sort(s.fin.begin(), s.fin.end());
    return s;
}

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

}  // namespace testsupport
