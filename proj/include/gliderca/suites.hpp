#pragma once

#include <cmath>
#include <sstream>

#include "analysis.hpp"
#include "glider.hpp"
#include "recode.hpp"
#include "sampling.hpp"
#include "sgap.hpp"

namespace gliderca {

/// One verification suite outcome; details carry human-readable evidence.
struct SuiteReport {
    std::string name;
    bool pass = true;
    std::vector<std::string> details;
    void fail(std::string msg) {
        pass = false;
        details.push_back("FAIL: " + std::move(msg));
    }
    void note(std::string msg) { details.push_back(std::move(msg)); }
};

/// Fleets move at exactly ±pq; non-fleets witness the converse.
inline SuiteReport suite_speed(const GliderSystem& sys, std::uint64_t seed, int fleet_count,
                               int steps, int nonfleet_count) {
    SuiteReport rep;
    rep.name = "speed";
    Rng rng(seed);
    std::vector<TailConfiguration> fleets;
    for (int i = 0; i < fleet_count; ++i)
        fleets.push_back(sample_fleet(sys, i % 2 == 0, 1 + static_cast<std::size_t>(rng.below(4)), rng));
    fleets.push_back(make_periodic_point(sys.z));
    SpeedReport sp = speed_check(sys, fleets, steps);
    if (!sp.ok)
        for (const auto& v : sp.violations) rep.fail(v);
    std::vector<TailConfiguration> non;
    int guard = 0;
    while (static_cast<int>(non.size()) < nonfleet_count && guard++ < nonfleet_count * 50) {
        TailConfiguration x = sample_zfinite(sys, 4 + static_cast<std::size_t>(rng.below(10)), rng);
        if (is_fleet(sys, x) == FleetSide::None) non.push_back(x);
    }
    if (static_cast<int>(non.size()) < nonfleet_count)
        rep.fail("could not sample enough non-fleet configurations");
    SpeedReport sp2 = speed_check(sys, non, 1);
    if (!sp2.ok)
        for (const auto& v : sp2.violations) rep.fail(v);
    rep.note("fleets=" + std::to_string(fleets.size()) + " nonfleets=" + std::to_string(non.size()) +
             " steps=" + std::to_string(steps));
    return rep;
}

/// Every sampled z-finite center diffuses before the ceiling, with the
/// decomposition re-checked on a freshly simulated row.
inline SuiteReport suite_diffusion(const GliderSystem& sys, std::uint64_t seed, int samples,
                                   int maxlen, long long want,
                                   std::optional<long long> b_run_bound = {}) {
    SuiteReport rep;
    rep.name = "diffusion";
    Rng rng(seed);
    long long worst_t = 0;
    for (int i = 0; i < samples; ++i) {
        std::size_t len = 4 + static_cast<std::size_t>(rng.below(std::max(1, maxlen - 3)));
        TailConfiguration x = sample_zfinite(sys, len, rng, b_run_bound);
        DiffusionResult res = detect_diffusion(sys, x, want);
        if (!res.found) {
            rep.fail("sample " + std::to_string(i) + " hit the ceiling (" +
                     std::to_string(res.ceiling) + ") without decomposing");
            continue;
        }
        worst_t = std::max(worst_t, res.t);
        Trajectory tr = simulate(sys, x, res.t, false);
        auto d = diffusion_decomposition(sys, tr.rows.back(), want);
        if (!d) rep.fail("sample " + std::to_string(i) + ": decomposition failed the re-check");
    }
    rep.note("samples=" + std::to_string(samples) + " worst_t=" + std::to_string(worst_t));
    return rep;
}

/// Left bounds never decrease and strictly increase within the horizon;
/// right bounds mirror that.
inline SuiteReport suite_bounds(const GliderSystem& sys, std::uint64_t seed, int samples,
                                long long horizon) {
    SuiteReport rep;
    rep.name = "bounds";
    Rng rng(seed);
    int done = 0, guard = 0;
    while (done < samples && guard++ < samples * 50) {
        TailConfiguration x = sample_zfinite(sys, 4 + static_cast<std::size_t>(rng.below(10)), rng);
        if (is_fleet(sys, x) != FleetSide::None) continue;
        ++done;
        MonotonicityReport m = check_bound_monotonicity(sys, x, horizon);
        if (!m.ok) rep.fail("monotonicity violated at t=" + std::to_string(m.violation_t));
        if (!m.strict_left) rep.fail("no strict left-bound increase within horizon");
        if (!m.strict_right) rep.fail("no strict right-bound decrease within horizon");
    }
    if (done < samples) rep.fail("could not sample enough non-fleet configurations");
    rep.note("samples=" + std::to_string(done) + " horizon=" + std::to_string(horizon));
    return rep;
}

/// Reversibility, shift equivariance and closure for every stage and for
/// the composed CA.
inline SuiteReport suite_reversibility(const GliderSystem& sys, std::uint64_t seed, int samples) {
    SuiteReport rep;
    rep.name = "reversibility";
    Rng rng(seed);
    std::vector<TailConfiguration> xs;
    for (int i = 0; i < samples; ++i)
        xs.push_back(sample_zfinite(sys, 3 + static_cast<std::size_t>(rng.below(12)), rng));
    auto run = [&](const std::string& nm, const CAPipeline& f) {
        CAPipeline inv = f.inverse();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            try {
                TailConfiguration img = f.apply(xs[i], true); // closure checked
                if (inv.apply(img) != xs[i]) {
                    rep.fail(nm + ": inverse round trip broke on sample " + std::to_string(i));
                    return;
                }
                if (f.apply(xs[i].shifted(1), false) != img.shifted(1)) {
                    rep.fail(nm + ": shift equivariance broke on sample " + std::to_string(i));
                    return;
                }
            } catch (const error& e) {
                rep.fail(nm + ": " + e.what());
                return;
            }
        }
    };
    for (const auto& m : sys.stages) run(m.name(), compose({m}));
    run("G", sys.G());
    rep.note("samples=" + std::to_string(xs.size()) + " stages=" + std::to_string(sys.stages.size() + 1));
    return rep;
}

namespace detail {

struct RyanPair {
    TailConfiguration config;
    Word wx, wy;  // left (right-mover) part, right (left-mover) part
    long long gap; // z-repetitions between gr and gl
};

/// x gr . z^gap gl y with fleets drawn from the rng.
inline RyanPair make_ryan_config(const GliderSystem& sys, long long gap, Rng& rng) {
    RyanPair r;
    r.gap = gap;
    Word wx;
    long long jx = 1 + rng.below(3);
    for (long long i = 0; i < jx; ++i)
        wx = wx + repeated(sys.z, 1 + static_cast<std::size_t>(rng.below(3))) + sys.gr;
    Word wy;
    long long jy = 1 + rng.below(3);
    for (long long i = 0; i < jy; ++i) {
        wy = wy + sys.gl;
        if (i + 1 < jy) wy = wy + repeated(sys.z, 1 + static_cast<std::size_t>(rng.below(3)));
    }
    r.wx = wx;
    r.wy = wy;
    Word center = wx + repeated(sys.z, static_cast<std::size_t>(gap)) + wy;
    r.config = make_configuration(sys.z, center, sys.z, -static_cast<long long>(wx.size()));
    return r;
}

} // namespace detail

/// The finitary-Ryan evidence bundle:
///   - the exchange identity of G_m = G^-(m+1) F G^m at gap N_m = 2mq+3 and
///     the drift identity beyond it, on a system with p = q = 1 (the
///     equations insert single copies of z, which matches the fleet speed
///     pq exactly when q = 1),
///   - an H that commutes with small-n glider CA but not with G itself, on
///     the richer system given by `input`.
inline SuiteReport suite_ryan(const SoficPresentation& input, const Word& z0, std::uint64_t seed,
                              int pairs) {
    SuiteReport rep;
    rep.name = "ryan";
    Rng rng(seed);

    {
        GliderSystem sys = build_GX(full_shift_presentation(), Word{0}, 1);
        CAPipeline g = sys.G();
        CAPipeline f = build_F(sys);
        long long p = sys.p, q = sys.q;
        auto g_m = [&](const TailConfiguration& x, long long m) {
            TailConfiguration y = g.apply_n(x, m, false);
            y = f.apply(y, false);
            return g.apply_n(y, -(m + 1), false);
        };
        for (int i = 0; i < pairs; ++i) {
            for (long long m = 0; m <= 3; ++m) {
                long long nm = 2 * m * q + 3;
                detail::RyanPair pr = detail::make_ryan_config(sys, nm, rng);
                // expected: x z gr . z^Nm gl z y
                Word wx2 = Word(pr.wx.begin(), pr.wx.end() - static_cast<long>(sys.gr.size()));
                wx2 = wx2 + sys.z + sys.gr;
                Word wy2 = sys.gl + sys.z +
                           Word(pr.wy.begin() + static_cast<long>(sys.gl.size()), pr.wy.end());
                Word center = wx2 + repeated(sys.z, static_cast<std::size_t>(nm)) + wy2;
                TailConfiguration expect =
                    make_configuration(sys.z, center, sys.z, -static_cast<long long>(wx2.size()));
                if (g_m(pr.config, m) != expect) {
                    rep.fail("G_m exchange identity failed (m=" + std::to_string(m) + ", pair " +
                             std::to_string(i) + ")");
                }
                // drift identity for N > N_m: x gr z . z^N z gl y
                long long n_big = nm + 1 + rng.below(3);
                detail::RyanPair pr2 = detail::make_ryan_config(sys, n_big, rng);
                Word center2 =
                    pr2.wx + repeated(sys.z, static_cast<std::size_t>(n_big + 2)) + pr2.wy;
                TailConfiguration expect2 = make_configuration(
                    sys.z, center2, sys.z, -static_cast<long long>(pr2.wx.size()) - p);
                if (g_m(pr2.config, m) != expect2) {
                    rep.fail("G_m drift identity failed (m=" + std::to_string(m) + ", pair " +
                             std::to_string(i) + ")");
                }
            }
        }
    }

    GliderSystem sys = build_GX(input, z0, 1);
    CAPipeline g = sys.G();
    long long q = sys.q;
    // H with one-run lengths safely above the small-n family and inside the
    // reach of the sofic G's P4
    GliderSystem gx7 = build_GXn(input, z0, 1);
    long long n_small = *gx7.n_param;
    GliderSystem gx9 = build_GXn(input, z0, 1, n_small + 2);
    long long m1 = (n_small + 2) / q + 2;
    MarkerAutomorphism h =
        build_ryan_H(sys.ambient, sys.z, repeated(sys.one, static_cast<std::size_t>(m1)),
                     repeated(sys.one, static_cast<std::size_t>(m1 + 1)),
                     repeated(sys.one, static_cast<std::size_t>(m1 + 2)));
    std::vector<TailConfiguration> samples;
    Word pattern = sys.z + repeated(sys.one, static_cast<std::size_t>(m1 + 2)) + sys.z +
                   repeated(sys.one, static_cast<std::size_t>(m1)) + sys.z +
                   repeated(sys.one, static_cast<std::size_t>(m1 + 1)) + sys.z;
    samples.push_back(make_configuration(sys.z, pattern, sys.z, 0));
    for (int i = 0; i < 99; ++i)
        samples.push_back(sample_zfinite(sys, 4 + static_cast<std::size_t>(rng.below(12)), rng));
    auto hf = [&](const TailConfiguration& x) { return h.apply(x, false); };
    for (const GliderSystem* gs : {&gx7, &gx9}) {
        CAPipeline gg = gs->G();
        auto gf = [&](const TailConfiguration& x) { return gg.apply(x, false); };
        CommuteReport c = commute_check(hf, gf, samples);
        if (!c.commutes)
            rep.fail("H failed to commute with G_{X," + std::to_string(*gs->n_param) +
                     "} (sample " + std::to_string(c.witness_sample) + ")");
    }
    {
        auto gf = [&](const TailConfiguration& x) { return g.apply(x, false); };
        CommuteReport c = commute_check(hf, gf, samples);
        if (c.commutes) rep.fail("H unexpectedly commutes with the sofic G itself");
        else rep.note("H/G witness at sample " + std::to_string(c.witness_sample));
    }
    rep.note("pairs=" + std::to_string(pairs) + " H runs in one^{" + std::to_string(m1) + ".." +
             std::to_string(m1 + 2) + "}");
    return rep;
}

/// Sofic S-gap agreement plus the non-sofic (perfect squares) probes.
inline SuiteReport suite_sgap(std::uint64_t seed, int samples, long long horizon) {
    SuiteReport rep;
    rep.name = "sgap";
    // S = {2,4} ∪ (6 + 3N): presentation vs generator oracle, all words <= 14
    SGapSpec s1 = SGapSpec::eventually_periodic({0, 0, 1, 0, 1, 0}, {1, 0, 0});
    SoficPresentation p1 = build_sgap(s1);
    long long mismatches = 0;
    for (std::size_t len = 1; len <= 14; ++len) {
        Word w(len, 0);
        while (true) {
            if (p1.language_contains(w) != sgap_language_contains(s1, w)) ++mismatches;
            std::size_t i = 0;
            while (i < len && w[i] == 1) w[i++] = 0;
            if (i == len) break;
            w[i] = 1;
        }
    }
    if (mismatches) rep.fail(std::to_string(mismatches) + " membership mismatches");
    else rep.note("membership agreement on all words of length <= 14");

    // perfect squares, bounded predicate
    SGapSpec s2 = SGapSpec::from_predicate(
        [](long long n) {
            long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
            for (long long d = std::max<long long>(0, r - 2); d <= r + 2; ++d)
                if (d * d == n) return true;
            return false;
        },
        400);
    Alphabet a({"0", "1"});
    auto ones = [](int n) { return Word(static_cast<std::size_t>(n), Sym{1}); };
    Word zero{0};
    MarkerAutomorphism h = build_ryan_H_oracle(
        [&](const Word& w) { return sgap_language_contains(s2, w); }, a, zero, ones(4), ones(9),
        ones(16));
    long long r = h.radius();
    Rng rng(seed);
    auto cfg = [&](const std::vector<int>& runs) {
        Word center = zero;
        for (int n : runs) center = center + ones(n) + zero;
        return make_configuration(zero, center, zero, 0);
    };
    std::vector<TailConfiguration> gsamples;
    static const int big[] = {64, 81, 100, 121, 144};
    static const int small[] = {1, 4, 9, 16, 25, 36};
    for (int i = 0; i < samples; ++i) {
        std::vector<int> runs;
        int k = 2 + static_cast<int>(rng.below(3));
        for (int j = 0; j < k; ++j)
            runs.push_back(rng.below(2) ? big[rng.below(5)] : small[rng.below(6)]);
        gsamples.push_back(cfg(runs));
    }
    GapInertReport gi = gapinert_check(s2, h, r, gsamples);
    if (!gi.ok)
        for (const auto& v : gi.violations) rep.fail("gapinert: " + v);
    else rep.note("gapinert ok on " + std::to_string(samples) + " samples (r=" + std::to_string(r) + ")");

    Word blocker = zero + ones(static_cast<int>(2 * r)) + zero;
    if (!s2.contains(2 * r)) rep.fail("2r is not a member of S; probe word illegal");
    std::vector<std::pair<TailConfiguration, TailConfiguration>> pairs;
    for (int i = 0; i < 16; ++i) {
        std::vector<int> r1 = {static_cast<int>(2 * r)}, r2 = {static_cast<int>(2 * r)};
        for (int j = 0; j < 2; ++j) {
            r1.push_back(small[rng.below(6)]);
            r2.push_back(small[rng.below(6)]);
        }
        pairs.emplace_back(cfg(r1), cfg(r2));
    }
    auto hf = [&](const TailConfiguration& x) { return h.apply(x, false); };
    ProbeReport pr = blocking_word_probe(hf, blocker, r, r + 1, 8, pairs, horizon);
    if (pr.refuted) rep.fail("0 1^{2r} 0 was refuted as blocking (it must not be)");
    else rep.note("0 1^{2r} 0 not refuted over horizon " + std::to_string(horizon));
    return rep;
}

/// Sensitivity evidence: every direction p/q within the bound refutes every
/// candidate blocking word of bounded length, column by column.
inline SuiteReport suite_sensitivity(const GliderSystem& sys, std::uint64_t seed, int maxlen,
                                     int dirbound, long long horizon) {
    SuiteReport rep;
    rep.name = "sensitivity";
    Rng rng(seed);
    std::vector<Word> candidates;
    for (int len = 1; len <= maxlen; ++len)
        for (const Word& w : words_of_length(*sys.ambient, static_cast<std::size_t>(len)))
            candidates.push_back(w);
    CAPipeline g = sys.G();
    long long words_refuted = 0, columns_checked = 0;
    for (int qd = 1; qd <= dirbound; ++qd) {
        for (int pd = -dirbound; pd <= dirbound; ++pd) {
            if (std::gcd(std::abs(pd), qd) != 1) continue;
            auto fdir = [&](const TailConfiguration& x) {
                TailConfiguration y = g.apply_n(x, qd, false);
                return y.shifted(pd);
            };
            long long vl = sys.s * qd + pd;  // leftbound glider drift per map step
            long long vr = sys.s * qd - pd; // rightbound glider drift
            for (const Word& w : candidates) {
                std::vector<char> col_done(w.size(), 0);
                std::size_t remaining = w.size();
                // pair family: distant gliders at several phases on the side
                // that moves, so every column is swept
                for (int variant = 0; variant < 16 && remaining; ++variant) {
                    TailConfiguration x = sample_cylinder(sys, w, rng);
                    TailConfiguration y;
                    if (variant % 2 == 1) {
                        // an independently completed cylinder point
                        y = sample_cylinder(sys, w, rng);
                    } else {
                        bool use_left = vl != 0 && (variant % 4 == 0 || vr == 0);
                        long long dist = 3 + variant / 2;
                        y = use_left ? insert_distant_glider(sys, x, true, true, dist)
                                     : insert_distant_glider(sys, x, false, false, dist);
                    }
                    TailConfiguration cx = x, cy = y;
                    for (long long t = 1; t <= horizon && remaining; ++t) {
                        cx = fdir(cx);
                        cy = fdir(cy);
                        for (std::size_t c = 0; c < w.size(); ++c) {
                            if (col_done[c]) continue;
                            if (cx.at(static_cast<long long>(c)) != cy.at(static_cast<long long>(c))) {
                                col_done[c] = 1;
                                --remaining;
                                ++columns_checked;
                            }
                        }
                    }
                }
                if (remaining)
                    rep.fail("direction " + std::to_string(pd) + "/" + std::to_string(qd) +
                             ": word not refuted in some column");
                else
                    ++words_refuted;
            }
        }
    }
    rep.note("refuted " + std::to_string(words_refuted) + " (direction, word) candidates, " +
             std::to_string(columns_checked) + " columns");
    return rep;
}

/// The recoding acceptance bundle: all-true bullet reports on the four
/// reference shifts, step round trips, and the brute-force gap gcd of the
/// {0,111}-coded shift.
inline SuiteReport suite_recoding(std::uint64_t seed, int roundtrip_samples) {
    SuiteReport rep;
    rep.name = "recoding";
    struct Case {
        const char* name;
        SoficPresentation p;
    };
    std::vector<Case> cases;
    cases.push_back({"even", even_shift_presentation()});
    cases.push_back({"full", full_shift_presentation()});
    cases.push_back({"golden-mean", golden_mean_presentation()});
    cases.push_back({"coded-0-111", coded_0_111_presentation()});
    Rng rng(seed);
    for (auto& c : cases) {
        RecodingPipeline pipe = make_zero(c.p, Word{0}, 1);
        derive_one(pipe);
        Prop01Report pr = verify_prop01(pipe.final_presentation, pipe.z_final, pipe.one);
        if (!pr.all()) rep.fail(std::string(c.name) + ": bullet report not all-true");
        // step round trips on legal configurations of the source shift
        if (!pipe.steps.empty()) {
            const SoficPresentation& src = c.p;
            int done = 0, guard = 0;
            while (done < roundtrip_samples && guard++ < roundtrip_samples * 60) {
                Word w = sample_word(src, 8, rng);
                TailConfiguration x =
                    make_configuration(Word{0}, Word{0} + w + Word{0}, Word{0}, 0);
                if (!configuration_in(src, x)) continue;
                ++done;
                TailConfiguration cur = x;
                for (const auto& step : pipe.steps) {
                    TailConfiguration img = apply_code(step.code, cur);
                    if (apply_code(step.inverse, img) != cur) {
                        rep.fail(std::string(c.name) + ": step round trip failed");
                        break;
                    }
                    cur = img;
                }
            }
            if (done < roundtrip_samples) rep.fail(std::string(c.name) + ": sampling starved");
        }
        if (std::string(c.name) == "coded-0-111") {
            // brute-force oracle over explicit gap words
            long long g = 0;
            for (int len = 1; len <= 12; ++len)
                if (c.p.language_contains(Word{0} + Word(static_cast<std::size_t>(len), Sym{1}) + Word{0}))
                    g = gcd_ll(g, len);
            if (g != 3) rep.fail("brute-force gap gcd of the {0,111} shift is not 3");
            else rep.note("{0,111}: brute-force gap gcd = 3");
            auto exact = gap_length_gcd(pipe.final_presentation, pipe.z_final,
                                        complement_symbols(pipe.final_presentation, pipe.z_final));
            if (!exact || *exact != 3) rep.fail("exact gap gcd disagrees with the oracle");
        }
    }
    rep.note("shifts=4 roundtrip_samples=" + std::to_string(roundtrip_samples));
    return rep;
}

} // namespace gliderca
