#pragma once

#include <vector>

namespace lca {

/**
 * The named verification corpus: expressions whose verdicts are pinned by
 * the classification theory, spanning every route the classifier has.
 * The CLI replays it behind --corpus; the test suite asserts it.
 *
 * The index-1..5 entries and the index-inf entry form one scale: a
 * discrete sum of Z(2) against the full compact product is well behaved
 * exactly while the discrete side stays finite.
 */
struct CorpusEntry {
    const char* name;
    const char* text;
    bool tm;
    bool stqh;
    const char* route;
};

inline const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = {
        {"compact-padic-2", "Zp(2)", true, true, "Compact"},
        {"compact-padic-7", "Zp(7)", true, true, "Compact"},
        {"discrete-sum-cyclic", "dsum[inf](Z(2))", true, true, "Discrete"},
        {"discrete-sum-divisible", "dsum[inf](Zinf(3))", true, true, "Discrete"},
        {"real-line", "R", false, false, "NoncompactComponent"},
        {"dense-sum-index-inf", "dsum[inf](Z(2)) + prod[inf](Z(2))", false, false, "PGroup"},
        {"local-product-squared", "locprod[inf](Z(2^2), sub(2^1))", false, false, "PGroup"},
        {"dense-sum-index-1", "dsum[1](Z(2)) + prod[inf](Z(2))", true, true, "Compact"},
        {"dense-sum-index-2", "dsum[2](Z(2)) + prod[inf](Z(2))", true, true, "Compact"},
        {"dense-sum-index-3", "dsum[3](Z(2)) + prod[inf](Z(2))", true, true, "Compact"},
        {"dense-sum-index-4", "dsum[4](Z(2)) + prod[inf](Z(2))", true, true, "Compact"},
        {"dense-sum-index-5", "dsum[5](Z(2)) + prod[inf](Z(2))", true, true, "Compact"},
        {"split-primes-two-sided",
         "let P = primes distinct in dsum[inf](Z(P)) + prod[inf](Z(P))", true, false, "Periodic"},
        {"padic-rationals", "Qp(3)", true, true, "PGroup"},
        {"divisible-finite-rank", "Qp(2) + Qp(2) + Zinf(2)", true, true, "PGroup"},
        {"reduced-after-divisible", "Zinf(2) + prod[inf](Z(2))", true, true, "PGroup"},
        {"circle", "T", true, true, "Compact"},
        {"integers", "Z", true, true, "Discrete"},
        {"finite-cyclic", "Z(8)", true, true, "Discrete"},
        {"circle-with-padic", "T + Zp(2)", true, true, "Compact"},
        {"circle-with-discrete", "T + dsum[inf](Z(2))", true, true, "ConnectedViaDual"},
        {"free-over-nontorsion-kernel",
         "let P = primes distinct in Z + prod[inf](Z(P))", false, false,
         "TotallyDisconnectedNonperiodic"},
        {"restricted-adeles",
         "let P = primes distinct in locprod[inf](Qp(P), Zp(P))", true, true, "Periodic"},
    };
    return entries;
}

}  // namespace lca
