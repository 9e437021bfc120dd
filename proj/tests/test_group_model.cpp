#include <doctest.h>

#include <random>

#include "lca/corpus.hpp"
#include "lca/parse.hpp"
#include "lca/validate.hpp"
#include "support.hpp"

using namespace lca;

TEST_CASE("atom spellings normalize") {
    CHECK(parse("Z(4)") == parse("Z(2^2)"));
    CHECK(parse("Z(8)") == parse("Z(2^3)"));
    CHECK(parse("Z(125)") == parse("Z(5^3)"));
    CHECK(parse(" Z ( 7 ) ") == parse("Z(7)"));
    CHECK(parse("Z") != parse("T"));
    CHECK(parse("Z(3)").as_atom().kind == AtomKind::Cyclic);
    CHECK(parse("Zinf(3)").as_atom().kind == AtomKind::Pruefer);
}

TEST_CASE("sum parts flatten and sort") {
    CHECK(parse("Z(2) + Z(3)") == parse("Z(3) + Z(2)"));
    CHECK(parse("(Z(2) + Z(3)) + Qp(5)") == parse("Qp(5) + (Z(3) + Z(2))"));
    CHECK(parse("Z(2) + Z(2)").parts().size() == 2);
}

TEST_CASE("comments and whitespace are ignored") {
    CHECK(parse("Z(2)  # tail comment\n + Z(3)") == parse("Z(2) + Z(3)"));
}

TEST_CASE("parse rejections") {
    CHECK_THROWS_AS(parse("Z(6)"), UnknownAtom);
    CHECK_THROWS_AS(parse("Zp(9)"), UnknownAtom);
    CHECK_THROWS_AS(parse("Z(2^0)"), UnknownAtom);
    CHECK_THROWS_AS(parse("Foo"), ParseError);
    CHECK_THROWS_AS(parse("Z("), SyntaxError);
    CHECK_THROWS_AS(parse("Z(2) +"), SyntaxError);
    CHECK_THROWS_AS(parse("dsum(Z(2))"), SyntaxError);
    CHECK_THROWS_AS(parse("dsum[inf](Z(P))"), UnboundPrimeSequence);
    try {
        parse("Z(2) @ Z(3)");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.pos >= 4);
    }
}

TEST_CASE("const bindings substitute at parse time") {
    CHECK(parse("let C = primes const(5) in Zp(C)") == parse("Zp(5)"));
    CHECK(parse("let C = primes const(3) in dsum[inf](Z(C)) + Qp(C)") ==
          parse("dsum[inf](Z(3)) + Qp(3)"));
}

TEST_CASE("distinct bindings survive as sequences") {
    auto e = parse("let P = primes distinct(5, 11) in dsum[inf](Z(P))");
    REQUIRE(e.kind() == ExprKind::DiscreteSum);
    REQUIRE(e.tmpl().uses_sequence());
    const auto& seq = *e.tmpl().seq;
    CHECK(seq.kind == PrimeSequence::Kind::Distinct);
    CHECK(seq.at(0) == 5);
    CHECK(seq.at(1) == 11);
    CHECK(seq.at(2) == 13);
    CHECK(seq.contains(5));
    CHECK(!seq.contains(7));
    CHECK(seq.contains(97));

    auto bare = parse("let P = primes distinct in prod[inf](Z(P))");
    CHECK(bare.tmpl().seq->at(0) == 2);
}

TEST_CASE("let body extends over the whole sum") {
    auto e = parse("let P = primes distinct in dsum[inf](Z(P)) + prod[inf](Z(P))");
    CHECK(e.kind() == ExprKind::Sum);
    CHECK(e.parts().size() == 2);
}

TEST_CASE("render round-trips the corpus") {
    for (const auto& entry : corpus()) {
        auto e = parse(entry.text);
        CHECK(parse(render(e)) == e);
    }
}

TEST_CASE("render round-trips random expressions") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 1500; ++i) {
        std::string text = i % 2 ? testsupport::random_dualizable_text(rng)
                                 : testsupport::random_pgroup_text(rng, 3, 4);
        auto e = parse(text);
        CAPTURE(text);
        CHECK(parse(render(e)) == e);
    }
}

TEST_CASE("validation accepts the corpus") {
    for (const auto& entry : corpus()) {
        auto report = validate(parse(entry.text));
        CAPTURE(entry.name);
        CHECK(report.ok());
    }
}

TEST_CASE("validation rejections") {
    CHECK(!validate(parse("prod[inf](Z)")).ok());
    CHECK(!validate(parse("prod[inf](Zinf(2))")).ok());
    CHECK(!validate(parse("dsum[inf](Zp(2))")).ok());
    CHECK(!validate(parse("dsum[inf](T)")).ok());
    CHECK(!validate(parse("prod[inf](T)")).ok());
    CHECK(!validate(parse("locprod[inf](Z(2^2), sub(2^3))")).ok());
    // the degenerate designated subgroups are allowed; they collapse to
    // plain sums and products downstream
    CHECK(validate(parse("locprod[inf](Z(2^2), sub(2^2))")).ok());

    auto report = validate(parse("Z(3) + prod[inf](Z)"));
    REQUIRE(!report.ok());
    CHECK(report.violations[0].path != "$");

    CHECK(validate(parse("dsum[3](Zp(2))")).ok());
    CHECK(validate(parse("dsum[4](T)")).ok());
    CHECK(validate(parse("locprod[inf](Z(2^2), sub(2^1))")).ok());
}

TEST_CASE("random generator output is always valid") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 500; ++i) {
        auto t1 = testsupport::random_pgroup_text(rng, 2, 4);
        auto t2 = testsupport::random_dualizable_text(rng);
        CAPTURE(t1);
        CAPTURE(t2);
        CHECK(validate(parse(t1)).ok());
        CHECK(validate(parse(t2)).ok());
    }
}
