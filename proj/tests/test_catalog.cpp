#include <catch2/catch_amalgamated.hpp>

#include "jordet/catalogs_bundled.hpp"
#include "jordet/replay.hpp"

using namespace jordet;

TEST_CASE("bundled catalogs parse and have the expected shape") {
    auto t22 = parse_catalog(bundled_t22());
    CHECK(t22.name == "t22");
    CHECK(t22.point_kind == PointKind::Diag);
    CHECK(t22.steps.size() >= 14);
    int families = 0;
    for (const auto& st : t22.steps)
        if (st.family) ++families;
    CHECK(families == 3);

    auto t23 = parse_catalog(bundled_t23());
    CHECK(t23.name == "t23");
    CHECK(t23.point_kind == PointKind::OffDiag);
    CHECK(t23.steps.size() >= 30);
}

TEST_CASE("catalog parse and schema errors") {
    CHECK_THROWS_AS(parse_catalog("catalog x\npoint diag\nstep a\nrequires i!=\nrel <e[i,j],e[k,m]>\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_catalog("catalog x\npoint diag\nstep a\nrequires i??j\nrel <e[i,i],e[i,i]>\n"),
                    SchemaError);
    CHECK_THROWS_AS(parse_catalog("catalog x\npoint nowhere\n"), SchemaError);
    CHECK_THROWS_AS(parse_catalog("catalog x\npoint diag\nfrobnicate y\n"), SchemaError);
    CHECK_THROWS_AS(parse_catalog("catalog x\npoint diag\nstep a\nrel <e[i,j],e[k,m]>\nstep a\nrel <e[i,i],e[i,i]>\n"),
                    SchemaError); // duplicate id
    // constraint symbol that never occurs in the step
    CHECK_THROWS_AS(parse_catalog("catalog x\npoint diag\nstep a\nrequires z!=s\nrel <e[i,j],e[k,m]>\n"),
                    SchemaError);
    // witness without target
    CHECK_THROWS_AS(parse_catalog("catalog x\npoint diag\nstep a\nleft e[s,s]\nright e[s,s]\n"), SchemaError);
    // family carrying a witness
    CHECK_THROWS_AS(
        parse_catalog("catalog x\npoint diag\nfamily f\nleft e[s,s]\nright e[s,s]\ntarget e[s,s]\n"),
        SchemaError);
    CHECK_THROWS_AS(parse_catalog("step a\nrel <e[i,i],e[i,i]>\n"), SchemaError); // missing headers
    CHECK_THROWS_AS(parse_catalog("catalog x\npoint diag\nstep a\nleft 1/0 e[s,s]\nright e[s,s]\ntarget e[s,s]\n"),
                    ParseError); // zero denominator
}

TEST_CASE("expression and relation grammar") {
    auto cat = parse_catalog("catalog x\npoint diag\n"
                             "step a\nrequires i!=s, j!=s, i!=j\n"
                             "left -1/2 e[s,s] + 2 e[i,j] - e[j,i]\nright e[s,s]\ntarget e[s,s]\n"
                             "rel 3 <e[i,j],e[s,s]> - 1/4 <e[j,i],e[j,i]>\n");
    const auto& st = cat.steps.at(0);
    REQUIRE(st.left.size() == 3);
    CHECK(st.left[0].coeff == mpq_class(-1, 2));
    CHECK(st.left[1].coeff == 2);
    CHECK(st.left[2].coeff == -1);
    REQUIRE(st.relations.size() == 1);
    CHECK(st.relations[0][0].coeff == 3);
    CHECK(st.relations[0][1].coeff == mpq_class(-1, 4));
    CHECK(st.vars == std::vector<std::string>{"i", "j"});
}

TEST_CASE("instantiate binds templates and filters constraints") {
    QRing q;
    auto t22 = parse_catalog(bundled_t22());
    const StepTemplate* eq2 = nullptr;
    const StepTemplate* eq5 = nullptr;
    for (const auto& st : t22.steps) {
        if (st.id == "T2.2-1.1-a") eq2 = &st;
        if (st.id == "T2.2-1.2-b") eq5 = &st;
    }
    REQUIRE(eq2 != nullptr);
    REQUIRE(eq5 != nullptr);

    Assignment fixed{{"s", 1}};
    auto cs = instantiate(q, *eq2, 3, fixed, {{"i", 2}, {"j", 3}});
    REQUIRE(cs.has_value());
    auto expect = add(q, scale(q, q.from_ratio(1, 2), unit(q, 3, 1, 1)), unit(q, 3, 2, 3));
    CHECK(equal(q, cs->left, expect));
    CHECK(equal(q, cs->right, unit(q, 3, 1, 1)));

    // violates i != s
    CHECK_FALSE(instantiate(q, *eq2, 3, fixed, {{"i", 1}, {"j", 3}}).has_value());
    // n>3-guarded template is empty at n=3
    CHECK_FALSE(instantiate(q, *eq5, 3, fixed, {{"i", 2}, {"j", 3}, {"k", 2}}).has_value());
    CHECK(instantiate(q, *eq5, 4, fixed, {{"i", 2}, {"j", 3}, {"k", 4}}).has_value());
}

TEST_CASE("instantiation counts match a direct loop") {
    auto t22 = parse_catalog(bundled_t22());
    const StepTemplate* eq3 = nullptr;
    for (const auto& st : t22.steps)
        if (st.id == "T2.2-1.1-b") eq3 = &st;
    REQUIRE(eq3 != nullptr);

    int n = 3, s = 1;
    long count = 0;
    replay_detail::for_each_assignment(*eq3, n, {{"s", s}}, [&](const Assignment&) { ++count; });

    long direct = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int m = 1; m <= n; ++m)
                    if (i != s && j != s && k != s && m != s && i != m && j != k) ++direct;
    CHECK(count == direct);
}

TEST_CASE("verify_step checks identities exactly and inserts differences") {
    QRing q;
    int n = 3;
    SpanAccumulator<QRing> state(static_cast<int>(sym_dim(n)));

    // the opening witness: (1/2 e_ss) o e_ss = e_ss
    ConcreteStep<QRing> opening;
    opening.has_witness = true;
    opening.left = scale(q, q.from_ratio(1, 2), unit(q, n, 1, 1));
    opening.right = unit(q, n, 1, 1);
    opening.target = unit(q, n, 1, 1);
    auto res = verify_step(q, opening, state);
    CHECK(res.identity_ok);
    CHECK(state.rank() == 1);

    // eq 2 instance: identity passes and its relation becomes derivable
    ConcreteStep<QRing> eq2;
    eq2.has_witness = true;
    eq2.left = add(q, scale(q, q.from_ratio(1, 2), unit(q, n, 1, 1)), unit(q, n, 2, 3));
    eq2.right = unit(q, n, 1, 1);
    eq2.target = unit(q, n, 1, 1);
    eq2.relations.push_back(sigma(q, unit(q, n, 2, 3), unit(q, n, 1, 1)));
    auto res2 = verify_step(q, eq2, state);
    CHECK(res2.identity_ok);
    REQUIRE(res2.relations_ok.size() == 1);
    CHECK(res2.relations_ok[0]);

    // tampered coefficient 1/2 -> 1: 1*e_ss o e_ss = 2 e_ss != e_ss
    ConcreteStep<QRing> bad = opening;
    bad.left = unit(q, n, 1, 1);
    auto res3 = verify_step(q, bad, state);
    CHECK_FALSE(res3.identity_ok);
}
