#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gliderca/glider.hpp>
#include <gliderca/sampling.hpp>
#include <gliderca/syntactic.hpp>

using namespace gliderca;

namespace {

/// Independent oracle: gcd of |w| over all w in B^+ with z w z in L(X),
/// enumerated up to the given length by brute force.
std::optional<long long> brute_gap_gcd(const SoficPresentation& p, const Word& z,
                                       const std::set<Sym>& b, std::size_t max_len) {
    long long g = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<Word> all;
        Word cur;
        auto rec = [&](auto&& self) -> void {
            if (cur.size() == len) {
                all.push_back(cur);
                return;
            }
            for (Sym a : b) {
                cur.push_back(a);
                self(self);
                cur.pop_back();
            }
        };
        rec(rec);
        for (const Word& w : all)
            if (p.language_contains(z + w + z)) g = gcd_ll(g, static_cast<long long>(len));
    }
    return g == 0 ? std::nullopt : std::optional<long long>(g);
}

} // namespace

TEST_CASE("transition relations on the even shift") {
    SoficPresentation even = even_shift_presentation();
    const Alphabet& a = even.alphabet;
    SyntacticClass one = transition_relation(even, a.word("1"));
    CHECK(one.get(0, 1));
    CHECK(one.get(1, 0));
    CHECK_FALSE(one.get(0, 0));
    CHECK_FALSE(one.get(1, 1));
    SyntacticClass lambda = transition_relation(even, {});
    CHECK(lambda == SyntacticClass::identity(2));
    SyntacticClass forbidden = transition_relation(even, a.word("010"));
    CHECK(forbidden.is_zero());
}

TEST_CASE("class multiplication is the relation composition") {
    SoficPresentation even = even_shift_presentation();
    const Alphabet& a = even.alphabet;
    SyntacticClass one = transition_relation(even, a.word("1"));
    SyntacticClass two = class_multiply(one, one);
    CHECK(two == transition_relation(even, a.word("11")));
    CHECK(two.get(0, 0));
    CHECK(two.get(1, 1));
    SyntacticClass zero = SyntacticClass::zero(2);
    CHECK(class_multiply(one, zero).is_zero());
    CHECK(class_multiply(SyntacticClass::identity(2), one) == one);
}

TEST_CASE("homomorphism property on samples") {
    SoficPresentation even = even_shift_presentation();
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        Word u = sample_word(even, 1 + static_cast<std::size_t>(rng.below(5)), rng);
        Word v = sample_word(even, 1 + static_cast<std::size_t>(rng.below(5)), rng);
        SyntacticClass prod = class_multiply(transition_relation(even, u), transition_relation(even, v));
        CHECK(prod == transition_relation(even, u + v));
        CHECK(prod.is_zero() == !even.language_contains(u + v));
    }
}

TEST_CASE("relation refinement is sound for contexts") {
    SoficPresentation even = even_shift_presentation();
    Rng rng(5);
    // if rel(u) == rel(v) then u and v share contexts (sampled)
    std::vector<Word> words;
    for (std::size_t len = 1; len <= 5; ++len)
        for (const Word& w : words_of_length(even, len)) words.push_back(w);
    int matched_pairs = 0;
    for (std::size_t i = 0; i < words.size() && matched_pairs < 40; ++i)
        for (std::size_t j = i + 1; j < words.size() && matched_pairs < 40; ++j) {
            if (transition_relation(even, words[i]) != transition_relation(even, words[j])) continue;
            ++matched_pairs;
            for (int t = 0; t < 500; ++t) {
                Word l = sample_word(even, static_cast<std::size_t>(rng.below(4)), rng);
                Word r = sample_word(even, static_cast<std::size_t>(rng.below(4)), rng);
                CHECK(even.language_contains(l + words[i] + r) ==
                      even.language_contains(l + words[j] + r));
            }
        }
    CHECK(matched_pairs > 0);
}

TEST_CASE("determinism of words") {
    SoficPresentation even = even_shift_presentation();
    SoficPresentation full = full_shift_presentation();
    const Alphabet& a = even.alphabet;
    CHECK(is_deterministic(even, a.word("0")));    // vacuous, |z| = 1
    CHECK(is_deterministic(full, a.word("0")));
    CHECK_FALSE(is_future_deterministic(full, full.alphabet.word("01")));
    CHECK_THROWS_AS(is_deterministic(even, a.word("00")), error); // repeated symbols
    CHECK_THROWS_AS(is_deterministic(even, a.word("010")), error); // not in language
}

TEST_CASE("synchronizing words via focusing") {
    SoficPresentation even = even_shift_presentation();
    const Alphabet& a = even.alphabet;
    CHECK(is_synchronizing(even, a.word("0")));
    CHECK_FALSE(is_synchronizing(even, a.word("1"))); // paths into both states
    SoficPresentation c0111 = coded_0_111_presentation();
    CHECK(is_synchronizing(c0111, c0111.alphabet.word("0")));
    // monotone: any extension of a synchronizing word is synchronizing
    Rng rng(9);
    for (int i = 0; i < 50; ++i) {
        Word u = sample_word(even, static_cast<std::size_t>(rng.below(4)), rng);
        Word v = sample_word(even, static_cast<std::size_t>(rng.below(4)), rng);
        Word w = u + a.word("0") + v;
        if (!even.language_contains(w)) continue;
        CHECK(is_synchronizing(even, w));
    }
    // non-minimal covers are rejected rather than mis-decided
    Alphabet b({"0", "1"});
    SoficPresentation redundant = make_presentation(
        b, {"l", "r", "l2", "r2"},
        {{0, 0, 0}, {0, 1, 1}, {1, 1, 2}, {2, 0, 2}, {2, 1, 3}, {3, 1, 0}});
    REQUIRE(redundant.right_resolving);
    REQUIRE(redundant.irreducible);
    CHECK_THROWS_AS(is_synchronizing(redundant, b.word("0")), error);
}

TEST_CASE("synborder: synchronizing-affixed words share a class") {
    SoficPresentation even = even_shift_presentation();
    const Alphabet& a = even.alphabet;
    Rng rng(13);
    Word z = a.word("0");
    int tested = 0;
    for (int i = 0; i < 200 && tested < 50; ++i) {
        Word m1 = sample_word(even, static_cast<std::size_t>(rng.below(5)), rng);
        Word m2 = sample_word(even, static_cast<std::size_t>(rng.below(5)), rng);
        Word w1 = z + m1 + z, w2 = z + m2 + z;
        if (!even.language_contains(w1) || !even.language_contains(w2)) continue;
        ++tested;
        CHECK(transition_relation(even, w1) == transition_relation(even, w2));
    }
    CHECK(tested > 0);
}

TEST_CASE("gap length gcd, exact vs brute force") {
    SoficPresentation even = even_shift_presentation();
    SoficPresentation full = full_shift_presentation();
    SoficPresentation c0111 = coded_0_111_presentation();
    const Alphabet& a = even.alphabet;

    auto run = [&](const SoficPresentation& p, long long expect) {
        std::set<Sym> b = complement_symbols(p, p.alphabet.word("0"));
        auto g = gap_length_gcd(p, p.alphabet.word("0"), b);
        REQUIRE(g.has_value());
        CHECK(*g == expect);
        auto brute = brute_gap_gcd(p, p.alphabet.word("0"), b,
                                   static_cast<std::size_t>(4 * p.state_count()));
        REQUIRE(brute.has_value());
        CHECK(*g == *brute);
    };
    run(even, 2);  // gaps are the even numbers >= 2
    run(full, 1);  // gaps of every length
    run(c0111, 3); // cycle-gcd of the 3-state presentation
    (void)a;
}

TEST_CASE("gap gcd none when no gap word exists") {
    // single 0-loop only: the shift {0^Z}, B-subgraph empty
    Alphabet a({"0", "1"});
    SoficPresentation p = make_presentation(a, {"s"}, {{0, 0, 0}});
    CHECK_FALSE(gap_length_gcd(p, a.word("0"), complement_symbols(p, a.word("0"))).has_value());
}

TEST_CASE("enumerate gap words") {
    SoficPresentation even = even_shift_presentation();
    const Alphabet& a = even.alphabet;
    std::set<Sym> b = complement_symbols(even, a.word("0"));
    auto w18 = enumerate_gap_words(even, a.word("0"), b, 18);
    REQUIRE(w18.size() == 1);
    CHECK(w18[0] == a.word(std::string(18, '1')));
    auto w3closing = enumerate_gap_words(even, a.word("0"), b, 3, true);
    CHECK(w3closing.empty()); // 0 111 0 is forbidden
    SoficPresentation full = full_shift_presentation();
    auto w2 = enumerate_gap_words(full, full.alphabet.word("0"),
                                  complement_symbols(full, full.alphabet.word("0")), 2);
    REQUIRE(w2.size() == 1);
    CHECK(w2[0] == full.alphabet.word("11"));
}

TEST_CASE("shortest_b_word finds cycles and witnesses") {
    SoficPresentation even = even_shift_presentation();
    const Alphabet& a = even.alphabet;
    std::set<Sym> b = complement_symbols(even, a.word("0"));
    int s0 = focus_state(even, a.word("0"));
    auto cyc = shortest_b_word(even, s0, b, {s0}, 1, [](long long) { return true; }, 100);
    REQUIRE(cyc.has_value());
    CHECK(*cyc == a.word("11"));
    // no odd-length witness exists
    auto odd = shortest_b_word(even, s0, b, detail::z_readable_states(even, a.word("0")), 2,
                               [](long long r) { return r == 1; }, 100);
    CHECK_FALSE(odd.has_value());
}
