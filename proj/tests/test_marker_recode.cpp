#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gliderca/glider.hpp>
#include <gliderca/marker.hpp>
#include <gliderca/recode.hpp>
#include <gliderca/sampling.hpp>

using namespace gliderca;

namespace {

std::shared_ptr<const SoficPresentation> even_p() {
    return std::make_shared<const SoficPresentation>(even_shift_presentation());
}

/// Random legal even-shift 0-finite configurations.
std::vector<TailConfiguration> even_samples(std::size_t count, std::uint64_t seed,
                                            std::size_t len = 12) {
    GliderSystem sys = fixture_even();
    Rng rng(seed);
    std::vector<TailConfiguration> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(sample_zfinite(sys, len, rng));
    return out;
}

} // namespace

TEST_CASE("overlaps") {
    Alphabet a({"0", "1", "a", "b", "c", "d"});
    auto words = [&](const std::vector<Overlap>& os) {
        std::vector<Word> ws;
        for (const auto& o : os) ws.push_back(o.word);
        return ws;
    };
    auto o1 = overlaps(a.word("0011"), a.word("1100"));
    auto w1 = words(o1);
    CHECK(std::count(w1.begin(), w1.end(), a.word("11")) == 1);
    CHECK(std::count(w1.begin(), w1.end(), Word{}) == 1);
    auto o2 = overlaps(a.word("0011"), a.word("0011"));
    bool has_trivial_full = false;
    for (const auto& o : o2)
        if (o.word == a.word("0011") && o.trivial) has_trivial_full = true;
    CHECK(has_trivial_full);
    auto o3 = overlaps(a.word("ab"), a.word("cd"));
    CHECK(o3.size() == 1);
    CHECK(o3[0].word.empty());
    // self-overlap of a periodic word is nontrivial
    auto o4 = overlaps(a.word("aa"), a.word("aa"));
    bool nontrivial_a = false;
    for (const auto& o : o4)
        if (o.word == a.word("a") && !o.trivial) nontrivial_a = true;
    CHECK(nontrivial_a);
}

TEST_CASE("validate_marker on the even-shift P1 data") {
    auto p = even_p();
    const Alphabet& a = p->alphabet;
    MarkerValidation ok = validate_marker(*p, a.word("0"), {a.word("0011"), a.word("1111")}, {1, 0});
    CHECK(ok.ok);
    // membership violation: 0 010 0 contains an odd run
    MarkerValidation bad = validate_marker(*p, a.word("0"), {a.word("010")}, {0});
    CHECK_FALSE(bad.ok);
    // length violation
    MarkerValidation lv = validate_marker(*p, a.word("0"), {a.word("11"), a.word("1111")}, {1, 0});
    CHECK_FALSE(lv.ok);
}

TEST_CASE("marker application replaces simultaneously and in place") {
    auto p = even_p();
    const Alphabet& a = p->alphabet;
    MarkerAutomorphism p1 = build_swap(p, a.word("0"), a.word("0011"), a.word("1111"), "P1");
    TailConfiguration x = parse_configuration(a, "0 . 00110 0");
    TailConfiguration y = p1.apply(x);
    CHECK(y == parse_configuration(a, "0 . 011110 0 @-1"));
    // no-occurrence fixpoint (a 6-run matches neither marker word)
    TailConfiguration calm = parse_configuration(a, "0 . 111111 0");
    CHECK(p1.apply(calm) == calm);
    // occurrence positions preserved
    auto before = p1.occurrence_positions(x, -10, 10);
    auto after = p1.occurrence_positions(y, -10, 10);
    CHECK(before == after);
    // z^Z fixed
    CHECK(p1.apply(make_periodic_point(a.word("0"))) == make_periodic_point(a.word("0")));
}

TEST_CASE("P2 example") {
    auto p = even_p();
    const Alphabet& a = p->alphabet;
    MarkerAutomorphism p2 = build_swap(p, a.word("0"), a.word("1111"), a.word("1100"), "P2");
    TailConfiguration x = parse_configuration(a, "0 . 011110 0 @-1");
    TailConfiguration y = p2.apply(x);
    CHECK(y == parse_configuration(a, "0 . 011000 0 @-1"));
}

TEST_CASE("reversibility, equivariance, closure on samples") {
    auto p = even_p();
    const Alphabet& a = p->alphabet;
    MarkerAutomorphism p1 = build_swap(p, a.word("0"), a.word("0011"), a.word("1111"), "P1");
    MarkerAutomorphism inv = p1.inverse();
    auto samples = even_samples(200, 21);
    for (const auto& x : samples) {
        TailConfiguration img = p1.apply(x); // membership-checked: closure
        CHECK(inv.apply(img) == x);
        CHECK(p1.apply(x.shifted(1)) == img.shifted(1)); // shift equivariance
    }
}

TEST_CASE("pipelines compose and invert") {
    auto p = even_p();
    const Alphabet& a = p->alphabet;
    CAPipeline empty;
    TailConfiguration x = parse_configuration(a, "0 . 0011 0");
    CHECK(empty.apply(x) == x);
    GliderSystem sys = fixture_even();
    CAPipeline g = sys.G();
    CAPipeline gg = g.inverse().inverse();
    REQUIRE(gg.stages.size() == g.stages.size());
    for (std::size_t i = 0; i < g.stages.size(); ++i) {
        CHECK(gg.stages[i].full_words() == g.stages[i].full_words());
        CHECK(gg.stages[i].permutation() == g.stages[i].permutation());
    }
    auto samples = even_samples(50, 31);
    CAPipeline ginv = g.inverse();
    for (const auto& s : samples) CHECK(ginv.apply(g.apply(s)) == s);
}

TEST_CASE("prime_future on the full shift, brute-force language check") {
    SoficPresentation full = full_shift_presentation();
    const Alphabet& a = full.alphabet;
    RecodingStep step = prime_future(full, a.word("01"));
    CHECK(is_future_deterministic(step.image, a.word("01")));
    // the image language agrees with the brute-force application of the rule
    for (std::size_t len = 1; len <= 7; ++len) {
        std::set<Word> expect;
        for (const Word& w : words_of_length(full, len + static_cast<std::size_t>(step.code.diameter()))) {
            Word img;
            for (std::size_t i = 0; i < len; ++i)
                img.push_back(step.code.eval(Word(w.begin() + static_cast<long>(i),
                                                  w.begin() + static_cast<long>(i + step.code.window()))));
            expect.insert(img);
        }
        auto got = words_of_length(step.image, len);
        CHECK(std::set<Word>(got.begin(), got.end()) == expect);
    }
}

TEST_CASE("prime_future is the identity when already deterministic") {
    SoficPresentation even = even_shift_presentation();
    const Alphabet& a = even.alphabet;
    RecodingStep step = prime_future(even, a.word("0"));
    GliderSystem sys = fixture_even();
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        TailConfiguration x = sample_zfinite(sys, 10, rng);
        CHECK(apply_code(step.code, x) == x);
    }
}

TEST_CASE("prime_past after prime_future makes a word deterministic") {
    SoficPresentation full = full_shift_presentation();
    const Alphabet& a = full.alphabet;
    RecodingStep f = prime_future(full, a.word("01"));
    Word w = a.word("01"); // symbol ids are preserved across recoding steps
    RecodingStep pa = prime_past(f.image, w);
    CHECK(is_deterministic(pa.image, w));
    // round trips
    Rng rng(17);
    GliderSystem dummy = fixture_intro();
    for (int i = 0; i < 100; ++i) {
        TailConfiguration x = sample_zfinite(dummy, 8, rng);
        TailConfiguration u = apply_code(f.code, x);
        CHECK(apply_code(f.inverse, u) == x);
        TailConfiguration v = apply_code(pa.code, u);
        CHECK(apply_code(pa.inverse, v) == u);
    }
}

TEST_CASE("make_zero trivial pipelines") {
    RecodingPipeline even_pipe = make_zero(even_shift_presentation(), Word{0}, 1);
    CHECK(even_pipe.steps.empty());
    CHECK(even_pipe.z_final == Word{0});
    CHECK(is_synchronizing(even_pipe.final_presentation, even_pipe.z_final));
    RecodingPipeline full_pipe = make_zero(full_shift_presentation(), Word{0}, 1);
    CHECK(full_pipe.steps.empty());
    RecodingPipeline gm_pipe = make_zero(golden_mean_presentation(), Word{0}, 1);
    CHECK(gm_pipe.steps.empty());
    CHECK(is_deterministic(gm_pipe.final_presentation, gm_pipe.z_final));
    CHECK_THROWS_AS(make_zero(full_shift_presentation(), Word{0, 0}, 1), error);
}

TEST_CASE("make_zero on the full shift with z = 01") {
    SoficPresentation full = full_shift_presentation();
    const Alphabet& a = full.alphabet;
    RecodingPipeline pipe = make_zero(full, a.word("01"), 1);
    CHECK(pipe.p == 2);
    CHECK(is_deterministic(pipe.final_presentation, pipe.z_final));
    CHECK(is_synchronizing(pipe.final_presentation, pipe.z_final));
    {
        std::set<Sym> syms(pipe.z_final.begin(), pipe.z_final.end());
        CHECK(syms.size() == pipe.z_final.size());
    }
    // z^Z is preserved through every step
    TailConfiguration zz = make_periodic_point(a.word("01"));
    TailConfiguration cur = zz;
    for (const auto& step : pipe.steps) {
        cur = apply_code(step.code, cur);
        CHECK(configuration_in(step.image, cur));
    }
    CHECK(cur == make_periodic_point(pipe.z_final).shifted(cur.center_start != 0 ? 0 : 0));
    CHECK(cur.is_w_finite(pipe.z_final));
    // every step round-trips on samples
    Rng rng(23);
    GliderSystem intro = fixture_intro();
    for (int i = 0; i < 200; ++i) {
        TailConfiguration x0 = sample_zfinite(intro, 9, rng);
        // re-tail onto 01-periodic background: glue into the 01 sea
        TailConfiguration x = make_configuration(a.word("01"), a.word("01") + x0.center + a.word("01"),
                                                 a.word("01"), 0);
        if (!configuration_in(full, x)) continue;
        TailConfiguration cur2 = x;
        for (const auto& step : pipe.steps) {
            TailConfiguration img = apply_code(step.code, cur2);
            CHECK(apply_code(step.inverse, img) == cur2);
            cur2 = img;
        }
    }
}

TEST_CASE("make_zero with a block step (z = 010 on the full shift)") {
    SoficPresentation full = full_shift_presentation();
    const Alphabet& a = full.alphabet;
    RecodingPipeline pipe = make_zero(full, a.word("010"), 1);
    REQUIRE(!pipe.steps.empty());
    CHECK(pipe.steps.front().tag == RecodingTag::Block);
    CHECK(pipe.z_final.size() == 3);
    std::set<Sym> syms(pipe.z_final.begin(), pipe.z_final.end());
    CHECK(syms.size() == 3);
    CHECK(is_deterministic(pipe.final_presentation, pipe.z_final));
    CHECK(is_synchronizing(pipe.final_presentation, pipe.z_final));
}

TEST_CASE("derive_one across the four reference shifts") {
    {
        RecodingPipeline pipe = make_zero(even_shift_presentation(), Word{0}, 1);
        derive_one(pipe);
        CHECK(pipe.one == Word{1, 1});
        CHECK(pipe.p == 1);
        CHECK(pipe.q == 2);
        CHECK(pipe.K == 1);
        CHECK(pipe.steps.empty());
        CHECK(verify_prop01(pipe.final_presentation, pipe.z_final, pipe.one).all());
    }
    {
        RecodingPipeline pipe = make_zero(full_shift_presentation(), Word{0}, 1);
        derive_one(pipe);
        CHECK(pipe.one == Word{1});
        CHECK(pipe.K == 1);
        CHECK(pipe.steps.empty());
        CHECK(verify_prop01(pipe.final_presentation, pipe.z_final, pipe.one).all());
    }
    {
        RecodingPipeline pipe = make_zero(coded_0_111_presentation(), Word{0}, 1);
        derive_one(pipe);
        CHECK(pipe.one == Word{1, 1, 1});
        CHECK(pipe.q == 3);
        CHECK(pipe.K == 1);
        CHECK(verify_prop01(pipe.final_presentation, pipe.z_final, pipe.one).all());
    }
    {
        RecodingPipeline pipe = make_zero(golden_mean_presentation(), Word{0}, 1);
        derive_one(pipe);
        REQUIRE(pipe.steps.size() == 1); // the context priming fired
        CHECK(pipe.steps[0].tag == RecodingTag::OneDerivation);
        CHECK(pipe.q == 2);
        CHECK(pipe.K == 1);
        CHECK(verify_prop01(pipe.final_presentation, pipe.z_final, pipe.one).all());
        // round trips through the priming step
        Rng rng(3);
        const SoficPresentation& gm = golden_mean_presentation();
        const RecodingStep& step = pipe.steps[0];
        int checked = 0;
        for (int i = 0; i < 400 && checked < 200; ++i) {
            Word w = sample_word(gm, 10, rng);
            TailConfiguration x = make_configuration(Word{0}, Word{0} + w + Word{0}, Word{0}, 0);
            if (!configuration_in(gm, x)) continue;
            ++checked;
            TailConfiguration img = apply_code(step.code, x);
            CHECK(configuration_in(step.image, img));
            CHECK(apply_code(step.inverse, img) == x);
        }
        CHECK(checked == 200);
    }
}

TEST_CASE("verify_prop01 bullet reports") {
    SoficPresentation even = even_shift_presentation();
    const Alphabet& a = even.alphabet;
    Prop01Report good = verify_prop01(even, a.word("0"), a.word("11"));
    CHECK(good.all());
    Prop01Report bad = verify_prop01(even, a.word("0"), a.word("1"));
    CHECK_FALSE(bad.z_one_star_z); // 010 is forbidden
    CHECK_FALSE(bad.all());
    SoficPresentation full = full_shift_presentation();
    CHECK(verify_prop01(full, a.word("0"), a.word("1")).all());
}

TEST_CASE("derive_one reports shifts with no gap word") {
    Alphabet a({"0", "1"});
    SoficPresentation only_zero = make_presentation(a, {"s"}, {{0, 0, 0}});
    RecodingPipeline pipe;
    pipe.final_presentation = only_zero;
    pipe.z_final = a.word("0");
    pipe.p = 1;
    CHECK_THROWS_AS(derive_one(pipe), error);
}
