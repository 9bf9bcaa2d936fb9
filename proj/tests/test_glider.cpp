#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gliderca/analysis.hpp>
#include <gliderca/glider.hpp>
#include <gliderca/json_io.hpp>
#include <gliderca/sampling.hpp>

using namespace gliderca;

namespace {

std::vector<std::string> marker_words(const MarkerAutomorphism& m, const Alphabet& a) {
    std::vector<std::string> out;
    for (const Word& w : m.full_words()) out.push_back(a.str(w));
    return out;
}

} // namespace

TEST_CASE("build_GX(even, 0, 1) reproduces the printed tables") {
    GliderSystem sys = build_GX(even_shift_presentation(), Word{0}, 1);
    const Alphabet& a = sys.ambient->alphabet;
    CHECK(sys.p == 1);
    CHECK(sys.q == 2);
    CHECK(sys.K == 1);
    CHECK(sys.s == 2);
    CHECK(a.str(sys.gl) == "0011");
    CHECK(a.str(sys.gr) == "1111");
    REQUIRE(sys.N.has_value());
    CHECK(*sys.N == 18);

    CHECK(marker_words(sys.P1(), a) ==
          std::vector<std::string>{"000110", "011110"});
    CHECK(marker_words(sys.P2(), a) ==
          std::vector<std::string>{"011110", "011000"});
    auto p3w = marker_words(sys.P3(), a);
    REQUIRE(p3w.size() == 3);
    CHECK(p3w[0] == "000110111111110111111");
    CHECK(p3w[1] == "000111111111111111111");
    CHECK(p3w[2] == "000110110111111011111");
    CHECK(sys.P3().permutation() == std::vector<std::size_t>{1, 0, 2});
    auto p4w = marker_words(sys.P4(), a);
    std::vector<std::string> expect4 = {
        "0000000000000110011" "0",
        "000" "1111111111111111" "0",
        "00000" "11111111111111" "0",
        "0000000" "111111111111" "0",
        "000000000" "1111111111" "0",
        "00000000000" "11111111" "0",
        "0000000000000" "111111" "0"};
    CHECK(p4w == expect4);
    CHECK(sys.P4().permutation() == std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 0});
}

TEST_CASE("fixture_even equals the built system table for table") {
    GliderSystem built = build_GX(even_shift_presentation(), Word{0}, 1);
    GliderSystem fixed = fixture_even();
    const Alphabet& a = built.ambient->alphabet;
    REQUIRE(built.stages.size() == fixed.stages.size());
    for (std::size_t i = 0; i < built.stages.size(); ++i) {
        CHECK(marker_words(built.stages[i], a) == marker_words(fixed.stages[i], a));
        CHECK(built.stages[i].permutation() == fixed.stages[i].permutation());
        CHECK(built.stages[i].marker() == fixed.stages[i].marker());
    }
    CHECK(built.z == fixed.z);
    CHECK(built.one == fixed.one);
    CHECK(built.gl == fixed.gl);
    CHECK(built.gr == fixed.gr);
    REQUIRE(built.p4_tables.size() == 1);
    CHECK(built.p4_tables[0].elements == fixed.p4_tables[0].elements);
    CHECK(built.p4_tables[0].padded_cycle == fixed.p4_tables[0].padded_cycle);
    REQUIRE(built.p3_tables.size() == 2);
    CHECK(built.p3_tables[0].w_s == fixed.p3_tables[0].w_s);
    CHECK(built.p3_tables[0].w_prime == fixed.p3_tables[0].w_prime);
    CHECK(built.p3_tables[0].w_s_set == fixed.p3_tables[0].w_s_set);
    CHECK(built.p3_tables[1].w_s == fixed.p3_tables[1].w_s);
    CHECK(built.p3_tables[1].w_s_set.empty());
}

TEST_CASE("build_GX on the full shift") {
    GliderSystem sys = build_GX(full_shift_presentation(), Word{0}, 1);
    const Alphabet& a = sys.ambient->alphabet;
    CHECK(sys.p == 1);
    CHECK(sys.q == 1);
    CHECK(sys.s == 1);
    CHECK(a.str(sys.gl) == "01");
    CHECK(a.str(sys.gr) == "11");
    CHECK(marker_words(sys.P1(), a) == std::vector<std::string>{"0010", "0110"});
    CHECK(marker_words(sys.P2(), a) == std::vector<std::string>{"0110", "0100"});
    // the general P3 on the full shift: one class, N = 9
    REQUIRE(sys.N.has_value());
    CHECK(*sys.N == 9);
    auto p3w = marker_words(sys.P3(), a);
    REQUIRE(p3w.size() == 2);
    CHECK(p3w[0] == "00101110111");
    CHECK(p3w[1] == "00111111111");
}

TEST_CASE("finite shifts are rejected") {
    Alphabet a({"0", "1"});
    SoficPresentation cycle = make_presentation(a, {"x", "y"}, {{0, 0, 1}, {1, 1, 0}});
    CHECK_THROWS_AS(build_GX(cycle, a.word("01"), 1), error);
}

TEST_CASE("build_P4 against the brute-force gap word oracle (full shift, n = 6)") {
    auto full = std::make_shared<const SoficPresentation>(full_shift_presentation());
    const Alphabet& a = full->alphabet;
    P4Result r = build_P4(full, a.word("0"), a.word("1"), 6);
    REQUIRE(r.tables.size() == 1);
    // brute force: nonempty 1-words of length < 6 with 0 w 0 legal, minus
    // {one, one^{p+1}} = {1, 11}, ending with one^{p+1+1} = 111
    std::vector<Word> expect;
    for (int len = 5; len >= 3; --len) expect.push_back(Word(static_cast<std::size_t>(len), Sym{1}));
    // order: descending length with 111 forced last -> [11111, 1111, 111]
    CHECK(r.tables[0].elements == expect);
    CHECK(r.tables[0].u_prime == a.word("101"));
    // padding: max length 5, target 5 + (q+1) = 7
    CHECK(a.str(r.tables[0].padded_cycle[0]) == "0000101");
    CHECK(a.str(r.tables[0].padded_cycle[1]) == "0011111");
    CHECK(a.str(r.tables[0].padded_cycle.back()) == "0000111");
    // padded lengths equal within the group
    for (const auto& w : r.tables[0].padded_cycle) CHECK(w.size() == 7);
    CHECK_THROWS_AS(build_P4(full, a.word("0"), a.word("1"), 3), error); // n too small
}

TEST_CASE("build_GXn composes without P3 and with the default n") {
    GliderSystem sys = build_GXn(even_shift_presentation(), Word{0}, 1);
    CHECK_FALSE(sys.has_p3);
    CHECK(sys.stages.size() == 3);
    REQUIRE(sys.n_param.has_value());
    CHECK(*sys.n_param == 7); // q(p+1+p/K) + 1 = 2*3 + 1
    GliderSystem sys18 = build_GXn(even_shift_presentation(), Word{0}, 1, 18);
    CHECK(*sys18.n_param == 18);
    // G_{X,18}'s P4 equals the sofic system's P4
    GliderSystem gx = build_GX(even_shift_presentation(), Word{0}, 1);
    CHECK(sys18.P4().full_words() == gx.P4().full_words());
    CHECK_THROWS_AS(build_GXn(even_shift_presentation(), Word{0}, 1, 6), error);
}

TEST_CASE("fixture_intro matches the printed tables") {
    GliderSystem sys = fixture_intro();
    const Alphabet& a = sys.ambient->alphabet;
    REQUIRE(sys.stages.size() == 3);
    CHECK(marker_words(sys.stages[0], a) == std::vector<std::string>{"0010", "0110"});
    CHECK(marker_words(sys.stages[1], a) == std::vector<std::string>{"0100", "0110"});
    CHECK(marker_words(sys.stages[2], a) == std::vector<std::string>{"00101", "00111"});
    for (const auto& m : sys.stages) {
        MarkerValidation v = validate_marker(*sys.ambient, m.marker(), m.words(), m.permutation());
        CHECK(v.ok);
    }
}

TEST_CASE("all built markers validate") {
    for (GliderSystem sys : {build_GX(even_shift_presentation(), Word{0}, 1),
                             build_GX(full_shift_presentation(), Word{0}, 1),
                             build_GXn(even_shift_presentation(), Word{0}, 1)}) {
        for (const auto& m : sys.stages) {
            MarkerValidation v = validate_marker(*sys.ambient, m.marker(), m.words(), m.permutation());
            CHECK(v.ok);
        }
    }
}

TEST_CASE("gl/gr length identity") {
    for (GliderSystem sys : {build_GX(even_shift_presentation(), Word{0}, 1),
                             build_GX(full_shift_presentation(), Word{0}, 1),
                             build_GX(coded_0_111_presentation(), Word{0}, 1)}) {
        CHECK(static_cast<long long>(sys.gl.size()) == sys.q * (sys.p + 1));
        CHECK(static_cast<long long>(sys.gr.size()) == sys.q * (sys.p + 1));
        CHECK(sys.s % sys.p == 0);
    }
}

TEST_CASE("F exchanges approaching gliders") {
    GliderSystem sys = fixture_even();
    const Alphabet& a = sys.ambient->alphabet;
    CAPipeline f = build_F(sys);
    // z gr zzz gl z -> zz gr z gl zz
    Word before = sys.gr + sys.z + sys.z + sys.z + sys.gl;
    TailConfiguration x = make_configuration(sys.z, before, sys.z, 0);
    TailConfiguration y = f.apply(x);
    // in place: z gr zzz gl z at [-1, 11] becomes zz gr z gl zz there
    TailConfiguration expect = make_configuration(sys.z, sys.gr + sys.z + sys.gl, sys.z, 1);
    CHECK(y == expect);
    // far-apart gliders are fixed
    Word far = sys.gr + repeated(sys.z, 9) + sys.gl;
    TailConfiguration xf = make_configuration(sys.z, far, sys.z, 0);
    CHECK(f.apply(xf) == xf);
    // F inverse round trip
    CAPipeline finv = f.inverse();
    CHECK(finv.apply(y) == x);
    (void)a;
}

TEST_CASE("build_ryan_H validates and swaps") {
    GliderSystem sys = fixture_even();
    const Alphabet& a = sys.ambient->alphabet;
    auto ones = [&](int n) { return a.word(std::string(static_cast<std::size_t>(n), '1')); };
    MarkerAutomorphism h = build_ryan_H(sys.ambient, sys.z, ones(12), ones(14), ones(16));
    TailConfiguration x = make_configuration(
        sys.z, a.word("0") + ones(16) + a.word("0") + ones(12) + a.word("0") + ones(14) + a.word("0"),
        sys.z, 0);
    TailConfiguration y = h.apply(x);
    TailConfiguration expect = make_configuration(
        sys.z, a.word("0") + ones(16) + a.word("0") + ones(14) + a.word("0") + ones(12) + a.word("0"),
        sys.z, 0);
    CHECK(y == expect);
    CHECK(h.apply(y) == x);
    CHECK_THROWS_AS(build_ryan_H(sys.ambient, sys.z, ones(12), ones(12), ones(16)), error);
}

TEST_CASE("counterexample fixture membership sanity") {
    SoficPresentation cx = counterexample_presentation();
    const Alphabet& a = cx.alphabet;
    CHECK(cx.language_contains(a.word("1><1")));
    CHECK(cx.language_contains(a.word("1ab><1")));
    // L0 followed by L0 is forbidden (consecutive encodings of equal digits)
    CHECK(cx.language_contains(a.word("1><101<<1")));
    CHECK_FALSE(cx.language_contains(a.word("1><101><1")));
    CHECK_FALSE(cx.language_contains(a.word("1><11><1")));
    CHECK(cx.language_contains(a.word("000")));
    CHECK(configuration_in(cx, make_periodic_point(a.word("0"))));
    CHECK(configuration_in(cx, make_periodic_point(a.word("ab"))));
}

TEST_CASE("system json round trip") {
    GliderSystem sys = build_GX(even_shift_presentation(), Word{0}, 1);
    json j = system_to_json(sys);
    GliderSystem back = system_from_json(j);
    const Alphabet& a = sys.ambient->alphabet;
    REQUIRE(back.stages.size() == sys.stages.size());
    for (std::size_t i = 0; i < sys.stages.size(); ++i) {
        CHECK(marker_words(back.stages[i], a) == marker_words(sys.stages[i], a));
        CHECK(back.stages[i].permutation() == sys.stages[i].permutation());
    }
    CHECK(back.z == sys.z);
    CHECK(back.gl == sys.gl);
    CHECK(*back.N == *sys.N);
    REQUIRE(back.p4_tables.size() == 1);
    CHECK(back.p4_tables[0].elements == sys.p4_tables[0].elements);
}

TEST_CASE("deterministic builds: identical inputs give identical tables") {
    GliderSystem a1 = build_GX(even_shift_presentation(), Word{0}, 1);
    GliderSystem a2 = build_GX(even_shift_presentation(), Word{0}, 1);
    json j1 = system_to_json(a1), j2 = system_to_json(a2);
    CHECK(j1.dump() == j2.dump());
}

TEST_CASE("stages act as the identity left of all z occurrences") {
    GliderSystem sys = fixture_even();
    const Alphabet& a = sys.ambient->alphabet;
    // ^inf 1 . 0^inf has z occurrences only at positions >= 0
    TailConfiguration x = make_configuration(a.word("1"), {}, a.word("0"), 0);
    REQUIRE(configuration_in(*sys.ambient, x));
    for (const auto& m : sys.stages) {
        TailConfiguration y = m.apply(x);
        for (long long i = -30; i < 0; ++i) CHECK(y.at(i) == x.at(i));
    }
    // richer sample: a disturbance inside the right half only
    TailConfiguration x2 = make_configuration(a.word("1"), a.word("110011"), a.word("0"), 5);
    if (configuration_in(*sys.ambient, x2)) {
        for (const auto& m : sys.stages) {
            TailConfiguration y = m.apply(x2);
            for (long long i = -20; i < 5; ++i) CHECK(y.at(i) == x2.at(i));
        }
    }
}

TEST_CASE("fixture json equals the build json byte for byte") {
    json built = system_to_json(build_GX(even_shift_presentation(), Word{0}, 1));
    json fixed = system_to_json(fixture_even());
    CHECK(built.dump() == fixed.dump());
}
