#include "lca/fgab.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace lca {
namespace {

using i128 = __int128;

long long narrow(i128 v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw std::overflow_error("matrix entry exceeds 64 bits");
    return static_cast<long long>(v);
}

// r -= q * s, exact
void row_submul(std::vector<long long>& r, long long q, const std::vector<long long>& s) {
    for (std::size_t k = 0; k < r.size(); ++k)
        r[k] = narrow(static_cast<i128>(r[k]) - static_cast<i128>(q) * s[k]);
}

void row_negate(std::vector<long long>& r) {
    for (auto& v : r) v = narrow(-static_cast<i128>(v));
}

long long floor_div(long long x, long long d) {  // d > 0
    long long q = x / d;
    if (x % d < 0) --q;
    return q;
}

// In-place row HNF; mirrors every operation onto *u when given.  Returns the
// rank (rows past it are zero).
std::size_t hnf_inplace(Mat& a, Mat* u) {
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (a[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        std::swap(a[r], a[piv]);
        if (u) std::swap((*u)[r], (*u)[piv]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            // euclid on the column entries, remainder chain in place
            while (a[i][col] != 0) {
                long long q = a[r][col] / a[i][col];
                row_submul(a[r], q, a[i]);
                if (u) row_submul((*u)[r], q, (*u)[i]);
                std::swap(a[r], a[i]);
                if (u) std::swap((*u)[r], (*u)[i]);
            }
        }
        if (a[r][col] < 0) {
            row_negate(a[r]);
            if (u) row_negate((*u)[r]);
        }
        for (std::size_t j = 0; j < r; ++j) {
            long long q = floor_div(a[j][col], a[r][col]);
            if (q != 0) {
                row_submul(a[j], q, a[r]);
                if (u) row_submul((*u)[j], q, (*u)[r]);
            }
        }
        ++r;
    }
    return r;
}

Mat relation_rows(const FgAbGroup& g) {
    Mat rows;
    std::size_t d = g.dim();
    for (std::size_t i = 0; i < g.torsion_orders.size(); ++i) {
        std::vector<long long> row(d, 0);
        row[static_cast<std::size_t>(g.rank) + i] = g.torsion_orders[i];
        rows.push_back(std::move(row));
    }
    return rows;
}

std::size_t pivot_col(const std::vector<long long>& row) {
    for (std::size_t c = 0; c < row.size(); ++c)
        if (row[c] != 0) return c;
    return row.size();
}

}  // namespace

Mat hnf(Mat a) {
    std::size_t rank = hnf_inplace(a, nullptr);
    a.resize(rank);
    return a;
}

std::pair<Mat, Mat> hnf_with_transform(Mat a) {
    Mat u = identity_mat(a.size());
    std::size_t rank = hnf_inplace(a, &u);
    a.resize(rank);
    return {std::move(a), std::move(u)};
}

Mat left_kernel(const Mat& a) {
    auto [h, u] = hnf_with_transform(a);
    Mat ker(u.begin() + static_cast<std::ptrdiff_t>(h.size()), u.end());
    return hnf(std::move(ker));
}

Mat mat_mul(const Mat& a, const Mat& b) {
    std::size_t n = a.size();
    std::size_t m = b.size();
    std::size_t cols = m ? b[0].size() : 0;
    Mat out(n, std::vector<long long>(cols, 0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != m) throw std::invalid_argument("mat_mul: shape mismatch");
        for (std::size_t k = 0; k < m; ++k) {
            if (a[i][k] == 0) continue;
            i128 f = a[i][k];
            for (std::size_t j = 0; j < cols; ++j)
                out[i][j] = narrow(static_cast<i128>(out[i][j]) + f * b[k][j]);
        }
    }
    return out;
}

Mat identity_mat(std::size_t n) {
    Mat m(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

SnfResult snf(Mat a) {
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    Mat l = identity_mat(rows);
    Mat r = identity_mat(cols);

    auto col_submul = [&](std::size_t dst, long long q, std::size_t src) {
        for (std::size_t i = 0; i < rows; ++i)
            a[i][dst] = narrow(static_cast<i128>(a[i][dst]) - static_cast<i128>(q) * a[i][src]);
        for (std::size_t i = 0; i < cols; ++i)
            r[i][dst] = narrow(static_cast<i128>(r[i][dst]) - static_cast<i128>(q) * r[i][src]);
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][x], a[i][y]);
        for (std::size_t i = 0; i < cols; ++i) std::swap(r[i][x], r[i][y]);
    };

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // pick the entry of least magnitude as the pivot candidate
        std::size_t bi = rows, bj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 &&
                    (bi == rows || std::abs(a[i][j]) < std::abs(a[bi][bj]))) {
                    bi = i;
                    bj = j;
                }
        if (bi == rows) break;
        std::swap(a[t], a[bi]);
        std::swap(l[t], l[bi]);
        if (bj != t) col_swap(t, bj);

        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i) {
            if (a[i][t] == 0) continue;
            long long q = a[i][t] / a[t][t];
            row_submul(a[i], q, a[t]);
            row_submul(l[i], q, l[t]);
            if (a[i][t] != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
            if (a[t][j] == 0) continue;
            long long q = a[t][j] / a[t][t];
            col_submul(j, q, t);
            if (a[t][j] != 0) clean = false;
        }
        if (!clean) continue;  // remainders shrank; reselect the pivot

        // the pivot must divide the trailing block
        bool fixed = false;
        for (std::size_t i = t + 1; i < rows && !fixed; ++i)
            for (std::size_t j = t + 1; j < cols && !fixed; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    for (std::size_t k = 0; k < cols; ++k)
                        a[t][k] = narrow(static_cast<i128>(a[t][k]) + a[i][k]);
                    for (std::size_t k = 0; k < rows; ++k)
                        l[t][k] = narrow(static_cast<i128>(l[t][k]) + l[i][k]);
                    fixed = true;
                }
        if (fixed) continue;

        if (a[t][t] < 0) {
            row_negate(a[t]);
            row_negate(l[t]);
        }
        ++t;
    }
    return {std::move(a), std::move(l), std::move(r)};
}

FgAbGroup FgAbGroup::free_group(long long rank) {
    if (rank < 0) throw std::invalid_argument("negative rank");
    FgAbGroup g;
    g.rank = rank;
    return g;
}

FgAbGroup FgAbGroup::from_orders(long long rank, std::vector<long long> orders) {
    if (rank < 0) throw std::invalid_argument("negative rank");
    for (long long d : orders)
        if (d < 1) throw std::invalid_argument("cyclic order must be positive");
    std::erase(orders, 1);
    Mat diag(orders.size(), std::vector<long long>(orders.size(), 0));
    for (std::size_t i = 0; i < orders.size(); ++i) diag[i][i] = orders[i];
    SnfResult s = snf(std::move(diag));
    FgAbGroup g;
    g.rank = rank;
    for (std::size_t i = 0; i < orders.size(); ++i)
        if (s.s[i][i] > 1) g.torsion_orders.push_back(s.s[i][i]);
    return g;
}

unsigned long long FgAbGroup::order() const {
    if (rank > 0) throw std::domain_error("infinite group");
    unsigned long long n = 1;
    for (long long d : torsion_orders) {
        unsigned long long ud = static_cast<unsigned long long>(d);
        if (n > std::numeric_limits<unsigned long long>::max() / ud)
            throw std::overflow_error("group order exceeds 64 bits");
        n *= ud;
    }
    return n;
}

Subgroup sub_from_generators(const FgAbGroup& g, const Mat& generators) {
    Mat rows = relation_rows(g);
    for (const auto& gen : generators) {
        if (gen.size() != g.dim())
            throw std::invalid_argument("generator length does not match ambient dimension");
        rows.push_back(gen);
    }
    return {g, hnf(std::move(rows))};
}

Subgroup sub_zero(const FgAbGroup& g) { return sub_from_generators(g, {}); }

Subgroup sub_full(const FgAbGroup& g) { return {g, identity_mat(g.dim())}; }

Subgroup sub_sum(const Subgroup& x, const Subgroup& y) {
    if (x.ambient != y.ambient) throw AmbientMismatch();
    Mat rows = x.basis;
    rows.insert(rows.end(), y.basis.begin(), y.basis.end());
    return {x.ambient, hnf(std::move(rows))};
}

Subgroup sub_meet(const Subgroup& x, const Subgroup& y) {
    if (x.ambient != y.ambient) throw AmbientMismatch();
    // solve alpha * X = beta * Y; the left kernel of [X over -Y] lists the
    // coefficient pairs, and its X-halves span the intersection
    Mat stacked = x.basis;
    for (const auto& row : y.basis) {
        auto neg = row;
        row_negate(neg);
        stacked.push_back(std::move(neg));
    }
    Mat ker = left_kernel(stacked);
    Mat alpha;
    for (const auto& row : ker)
        alpha.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(x.basis.size()));
    return {x.ambient, hnf(mat_mul(alpha, x.basis))};
}

bool member(const std::vector<long long>& elem, const Subgroup& x) {
    if (elem.size() != x.ambient.dim())
        throw std::invalid_argument("element length does not match ambient dimension");
    std::vector<long long> e = elem;
    for (const auto& row : x.basis) {
        std::size_t c = pivot_col(row);
        if (e[c] % row[c] != 0) {
            // pivot does not divide; only smaller residues to the left could
            // still cancel it, and HNF has none
            return false;
        }
        long long q = e[c] / row[c];
        if (q != 0) row_submul(e, q, row);
    }
    return std::all_of(e.begin(), e.end(), [](long long v) { return v == 0; });
}

bool sub_leq(const Subgroup& x, const Subgroup& y) {
    if (x.ambient != y.ambient) throw AmbientMismatch();
    for (const auto& row : x.basis)
        if (!member(row, y)) return false;
    return true;
}

unsigned long long subgroup_index(const Subgroup& x, const Subgroup& y) {
    if (x.ambient != y.ambient) throw AmbientMismatch();
    if (!sub_leq(x, y)) throw std::invalid_argument("subgroup_index: not a subgroup");
    if (x.basis.size() != y.basis.size()) throw std::domain_error("infinite index");
    // equal rank means equal pivot columns, so the change of basis is
    // triangular and the index is the product of pivot ratios
    unsigned long long idx = 1;
    for (std::size_t i = 0; i < x.basis.size(); ++i) {
        unsigned long long ratio = static_cast<unsigned long long>(
            x.basis[i][pivot_col(x.basis[i])] / y.basis[i][pivot_col(y.basis[i])]);
        if (idx > std::numeric_limits<unsigned long long>::max() / ratio)
            throw std::overflow_error("index exceeds 64 bits");
        idx *= ratio;
    }
    return idx;
}

FgAbGroup quotient_group(const Subgroup& x) {
    std::size_t d = x.ambient.dim();
    SnfResult s = snf(x.basis);
    FgAbGroup q;
    std::vector<long long> orders;
    std::size_t k = std::min(x.basis.size(), d);
    for (std::size_t i = 0; i < k; ++i)
        if (s.s[i][i] != 0) orders.push_back(s.s[i][i]);
    q.rank = static_cast<long long>(d - orders.size());
    for (long long v : orders)
        if (v > 1) q.torsion_orders.push_back(v);
    return q;
}

Subgroup socle(const FgAbGroup& g, long long p) {
    if (p < 2) throw std::invalid_argument("socle needs p >= 2");
    Mat gens;
    std::size_t d = g.dim();
    for (std::size_t i = 0; i < g.torsion_orders.size(); ++i) {
        long long di = g.torsion_orders[i];
        long long gc = std::gcd(di, p);
        if (gc > 1) {
            std::vector<long long> row(d, 0);
            row[static_cast<std::size_t>(g.rank) + i] = di / gc;
            gens.push_back(std::move(row));
        }
    }
    return sub_from_generators(g, gens);
}

Subgroup frattini(const FgAbGroup& g) {
    Mat gens;
    std::size_t d = g.dim();
    for (std::size_t i = 0; i < g.torsion_orders.size(); ++i) {
        long long di = g.torsion_orders[i];
        long long rad = 1;
        long long rest = di;
        for (long long p = 2; p * p <= rest; ++p)
            if (rest % p == 0) {
                rad *= p;
                while (rest % p == 0) rest /= p;
            }
        if (rest > 1) rad *= rest;
        std::vector<long long> row(d, 0);
        row[static_cast<std::size_t>(g.rank) + i] = rad;
        gens.push_back(std::move(row));
    }
    return sub_from_generators(g, gens);
}

std::vector<std::vector<long long>> all_elements(const FgAbGroup& g) {
    unsigned long long n = g.order();  // throws when infinite
    std::vector<std::vector<long long>> out;
    out.reserve(n);
    std::vector<long long> cur(g.dim(), 0);
    for (unsigned long long i = 0; i < n; ++i) {
        out.push_back(cur);
        for (std::size_t c = 0; c < g.torsion_orders.size(); ++c) {
            if (++cur[c] < g.torsion_orders[c]) break;
            cur[c] = 0;
        }
    }
    return out;
}

}  // namespace lca
