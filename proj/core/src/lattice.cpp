#include "lca/lattice.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <unordered_map>

namespace lca {
namespace {

// Element-set bitmask over the group enumeration.  Small groups fit one
// word; the code below never assumes they do.
struct Mask {
    std::vector<std::uint64_t> w;

    explicit Mask(std::size_t bits) : w((bits + 63) / 64, 0) {}
    Mask() = default;

    void set(std::size_t i) { w[i >> 6] |= 1ull << (i & 63); }
    bool get(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }

    bool operator==(const Mask&) const = default;

    bool contains(const Mask& other) const {
        for (std::size_t i = 0; i < w.size(); ++i)
            if ((w[i] & other.w[i]) != other.w[i]) return false;
        return true;
    }

    std::size_t pop() const {
        std::size_t c = 0;
        for (auto v : w) c += static_cast<std::size_t>(std::popcount(v));
        return c;
    }

    Mask and_with(const Mask& other) const {
        Mask r = *this;
        for (std::size_t i = 0; i < w.size(); ++i) r.w[i] &= other.w[i];
        return r;
    }

    bool or_into(const Mask& other) {  // returns true when bits were added
        bool grew = false;
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::uint64_t merged = w[i] | other.w[i];
            if (merged != w[i]) {
                w[i] = merged;
                grew = true;
            }
        }
        return grew;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::uint64_t v = w[i]; v; v &= v - 1)
                f(i * 64 + static_cast<std::size_t>(std::countr_zero(v)));
    }
};

struct MaskHash {
    std::size_t operator()(const Mask& m) const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto v : m.w) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

bool mask_less(const Mask& a, const Mask& b) {
    std::size_t pa = a.pop(), pb = b.pop();
    if (pa != pb) return pa < pb;
    return a.w < b.w;
}

}  // namespace

std::uint32_t Lattice::top() const {
    std::uint32_t t = 0;
    for (std::uint32_t i = 1; i < size(); ++i) t = join[t][i];
    return t;
}

std::uint32_t Lattice::bottom() const {
    std::uint32_t b = 0;
    for (std::uint32_t i = 1; i < size(); ++i) b = meet[b][i];
    return b;
}

Lattice Lattice::from_leq(const std::vector<std::vector<bool>>& leq) {
    std::size_t n = leq.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (leq[i].size() != n || !leq[i][i])
            throw std::invalid_argument("leq is not a reflexive square relation");
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && leq[i][j] && leq[j][i])
                throw std::invalid_argument("leq is not antisymmetric");
    }
    Lattice l;
    l.join.assign(n, std::vector<std::uint32_t>(n, 0));
    l.meet.assign(n, std::vector<std::uint32_t>(n, 0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            std::size_t best = n;
            for (std::size_t x = 0; x < n; ++x)
                if (leq[x][a] && leq[x][b] && (best == n || leq[best][x])) best = x;
            for (std::size_t x = 0; x < n; ++x)
                if (leq[x][a] && leq[x][b] && !leq[x][best]) best = n;
            if (best == n) throw std::invalid_argument("pair without a greatest lower bound");
            l.meet[a][b] = static_cast<std::uint32_t>(best);

            best = n;
            for (std::size_t x = 0; x < n; ++x)
                if (leq[a][x] && leq[b][x] && (best == n || leq[x][best])) best = x;
            for (std::size_t x = 0; x < n; ++x)
                if (leq[a][x] && leq[b][x] && !leq[best][x]) best = n;
            if (best == n) throw std::invalid_argument("pair without a least upper bound");
            l.join[a][b] = static_cast<std::uint32_t>(best);
        }
    return l;
}

Lattice subgroup_lattice(const FgAbGroup& g, unsigned long long bound) {
    if (!g.finite()) throw std::domain_error("subgroup lattice needs a finite group");
    unsigned long long order;
    try {
        order = g.order();
    } catch (const std::overflow_error&) {
        throw TooLarge("group order exceeds the lattice bound", ~0ull, bound);
    }
    if (order > bound) throw TooLarge("group order exceeds the lattice bound", order, bound);

    const std::size_t n = static_cast<std::size_t>(order);
    const std::size_t t = g.torsion_orders.size();

    std::vector<std::size_t> stride(t, 1);
    for (std::size_t i = 1; i < t; ++i)
        stride[i] = stride[i - 1] * static_cast<std::size_t>(g.torsion_orders[i - 1]);

    auto add = [&](std::size_t x, std::size_t y) {
        std::size_t r = 0;
        for (std::size_t i = 0; i < t; ++i) {
            std::size_t di = static_cast<std::size_t>(g.torsion_orders[i]);
            std::size_t s = (x / stride[i] + y / stride[i]) % di;
            r += s * stride[i];
        }
        return r;
    };

    // one mask per distinct cyclic subgroup, kept with a generator
    std::vector<std::pair<Mask, std::size_t>> cyclics;
    {
        std::unordered_map<Mask, bool, MaskHash> seen;
        for (std::size_t x = 0; x < n; ++x) {
            Mask m(n);
            std::size_t y = x;
            do {
                m.set(y);
                y = add(y, x);
            } while (y != x);
            m.set(0);
            if (seen.emplace(m, true).second) cyclics.emplace_back(std::move(m), x);
        }
    }

    auto translate = [&](const Mask& m, std::size_t gen) {
        Mask r(n);
        m.for_each([&](std::size_t x) { r.set(add(x, gen)); });
        return r;
    };
    // m + <gen>, by translating until closed
    auto sum_with_cyclic = [&](const Mask& m, std::size_t gen) {
        Mask total = m;
        Mask cur = m;
        for (;;) {
            cur = translate(cur, gen);
            if (!total.or_into(cur)) break;
        }
        return total;
    };

    std::unordered_map<Mask, std::uint32_t, MaskHash> found;
    std::deque<Mask> work;
    for (auto& cyc : cyclics)
        if (found.emplace(cyc.first, 0).second) work.push_back(cyc.first);
    while (!work.empty()) {
        Mask a = std::move(work.front());
        work.pop_front();
        for (auto& [cm, gen] : cyclics) {
            if (a.contains(cm)) continue;
            Mask s = sum_with_cyclic(a, gen);
            if (found.emplace(s, 0).second) {
                if (found.size() > bound)
                    throw TooLarge("subgroup count exceeds the lattice bound", found.size(), bound);
                work.push_back(s);
            }
        }
    }

    std::vector<Mask> masks;
    masks.reserve(found.size());
    for (auto& [m, id] : found) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), mask_less);
    for (std::uint32_t i = 0; i < masks.size(); ++i) found[masks[i]] = i;

    const std::size_t cnt = masks.size();
    Lattice l;
    l.subgroups.reserve(cnt);
    for (const Mask& m : masks) {
        Mat gens;
        m.for_each([&](std::size_t x) {
            std::vector<long long> coords(t);
            for (std::size_t i = 0; i < t; ++i)
                coords[i] = static_cast<long long>((x / stride[i]) %
                                                  static_cast<std::size_t>(g.torsion_orders[i]));
            gens.push_back(std::move(coords));
        });
        l.subgroups.push_back(sub_from_generators(g, gens));
    }

    // meet is set intersection; join is the least member containing both,
    // found by scanning the (order-sorted) common upper bounds
    l.meet.assign(cnt, std::vector<std::uint32_t>(cnt, 0));
    std::vector<Mask> ups(cnt, Mask(cnt));
    for (std::size_t a = 0; a < cnt; ++a)
        for (std::size_t b = 0; b < cnt; ++b)
            if (masks[b].contains(masks[a])) ups[a].set(b);
    for (std::size_t a = 0; a < cnt; ++a) {
        l.meet[a][a] = static_cast<std::uint32_t>(a);
        for (std::size_t b = a + 1; b < cnt; ++b) {
            std::uint32_t m = found.at(masks[a].and_with(masks[b]));
            l.meet[a][b] = l.meet[b][a] = m;
        }
    }
    l.join.assign(cnt, std::vector<std::uint32_t>(cnt, 0));
    for (std::size_t a = 0; a < cnt; ++a) {
        l.join[a][a] = static_cast<std::uint32_t>(a);
        for (std::size_t b = a + 1; b < cnt; ++b) {
            std::uint32_t j = 0;
            const auto& ua = ups[a].w;
            const auto& ub = ups[b].w;
            for (std::size_t wi = 0;; ++wi) {
                std::uint64_t common = ua[wi] & ub[wi];
                if (common) {
                    j = static_cast<std::uint32_t>(wi * 64 +
                                                   static_cast<std::size_t>(std::countr_zero(common)));
                    break;
                }
            }
            l.join[a][b] = l.join[b][a] = j;
        }
    }
    return l;
}

std::optional<ModularViolation> check_modular_law(const Lattice& l) {
    const std::size_t n = l.size();
    for (std::uint32_t c = 0; c < n; ++c)
        for (std::uint32_t a = 0; a < n; ++a) {
            if (l.meet[a][c] != a) continue;  // need a <= c
            const auto& meet_c = l.meet[c];
            const auto& join_a = l.join[a];
            for (std::uint32_t b = 0; b < n; ++b)
                if (join_a[l.meet[b][c]] != meet_c[join_a[b]])
                    return ModularViolation{a, b, c};
        }
    return std::nullopt;
}

std::optional<PentagonWitness> find_pentagon(const Lattice& l) {
    auto v = check_modular_law(l);
    if (!v) return std::nullopt;
    // the two sides of the failed identity bound a pentagon
    std::uint32_t a = l.join[v->a][l.meet[v->b][v->c]];
    std::uint32_t c = l.meet[l.join[v->a][v->b]][v->c];
    std::uint32_t b = v->b;
    std::uint32_t top = l.join[a][b];
    std::uint32_t bottom = l.meet[a][b];

    bool ok = a != c && l.meet[a][c] == a && l.join[c][b] == top && l.meet[c][b] == bottom &&
              top != a && top != b && top != c && bottom != a && bottom != b && bottom != c;
    if (!ok) throw std::logic_error("violating triple did not yield a pentagon");
    return PentagonWitness{top, c, a, b, bottom};
}

}  // namespace lca
