#pragma once

#include <random>

#include "configuration.hpp"
#include "core.hpp"
#include "glider.hpp"
#include "presentation.hpp"
#include "syntactic.hpp"

namespace gliderca {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    long long below(long long n) {
        if (n <= 0) throw error("rng: empty range");
        return static_cast<long long>(eng() % static_cast<std::uint64_t>(n));
    }
};

/// Random word of L(X) of the given length via path sampling.
inline Word sample_word(const SoficPresentation& p, std::size_t len, Rng& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        int s = static_cast<int>(rng.below(p.state_count()));
        Word w;
        bool ok = true;
        for (std::size_t i = 0; i < len; ++i) {
            const auto& edges = p.out[static_cast<std::size_t>(s)];
            if (edges.empty()) {
                ok = false;
                break;
            }
            const auto& e = edges[static_cast<std::size_t>(rng.below(static_cast<long long>(edges.size())))];
            w.push_back(e.label);
            s = e.to;
        }
        if (ok) return w;
    }
    throw error("sample_word: no path of requested length");
}

namespace detail {

/// Shortest label path from `from` to `to` (BFS; edges in label order).
inline std::optional<Word> shortest_path_word(const SoficPresentation& p, int from, int to) {
    if (from == to) return Word{};
    std::vector<int> prev_state(static_cast<std::size_t>(p.state_count()), -2);
    std::vector<Sym> prev_label(static_cast<std::size_t>(p.state_count()), -1);
    std::deque<int> q{from};
    prev_state[static_cast<std::size_t>(from)] = -1;
    while (!q.empty()) {
        int s = q.front();
        q.pop_front();
        for (const auto& e : p.out[static_cast<std::size_t>(s)])
            if (prev_state[static_cast<std::size_t>(e.to)] == -2) {
                prev_state[static_cast<std::size_t>(e.to)] = s;
                prev_label[static_cast<std::size_t>(e.to)] = e.label;
                q.push_back(e.to);
            }
    }
    if (prev_state[static_cast<std::size_t>(to)] == -2) return std::nullopt;
    Word w;
    int cur = to;
    while (cur != from) {
        w.push_back(prev_label[static_cast<std::size_t>(cur)]);
        cur = prev_state[static_cast<std::size_t>(cur)];
    }
    std::reverse(w.begin(), w.end());
    return w;
}

} // namespace detail

/// Random z-finite configuration: a random walk from the focus of z,
/// completed back to the focus so the z tails glue on legally.
inline TailConfiguration sample_zfinite(const GliderSystem& sys, std::size_t len, Rng& rng,
                                        std::optional<long long> max_b_run = {}) {
    const SoficPresentation& p = *sys.ambient;
    int s0 = focus_state(p, sys.z);
    std::set<Sym> zsyms(sys.z.begin(), sys.z.end());
    for (int attempt = 0; attempt < 2000; ++attempt) {
        int s = s0;
        Word w;
        for (std::size_t i = 0; i < len; ++i) {
            const auto& edges = p.out[static_cast<std::size_t>(s)];
            const auto& e = edges[static_cast<std::size_t>(rng.below(static_cast<long long>(edges.size())))];
            w.push_back(e.label);
            s = e.to;
        }
        auto completion = detail::shortest_path_word(p, s, s0);
        if (!completion) continue;
        w = w + *completion;
        if (max_b_run) {
            long long run = 0;
            bool bad = false;
            for (Sym a : w) {
                run = zsyms.count(a) ? 0 : run + 1;
                if (run >= *max_b_run) {
                    bad = true;
                    break;
                }
            }
            if (bad) continue;
        }
        TailConfiguration c = make_configuration(sys.z, w, sys.z, 0);
        return c;
    }
    throw error("sample_zfinite: sampling failed");
}

/// Fleet with `count` gliders and gaps (in z-repetitions) of 1..max_gap.
inline TailConfiguration sample_fleet(const GliderSystem& sys, bool leftbound, std::size_t count,
                                      Rng& rng, long long max_gap = 4) {
    Word center;
    const Word& glider = leftbound ? sys.gl : sys.gr;
    for (std::size_t i = 0; i < count; ++i) {
        if (i) center = center + repeated(sys.z, static_cast<std::size_t>(1 + rng.below(max_gap)));
        center = center + glider;
    }
    return make_configuration(sys.z, center, sys.z, -static_cast<long long>(center.size()) / 2);
}

/// Random configuration with w occurring at position 0 and z tails. The
/// completions are random walks (so repeated calls explore the cylinder),
/// closed off by shortest paths back to the focus of z.
inline TailConfiguration sample_cylinder(const GliderSystem& sys, const Word& w, Rng& rng) {
    const SoficPresentation& p = *sys.ambient;
    int s0 = focus_state(p, sys.z);
    std::vector<int> starts;
    for (int s = 0; s < p.state_count(); ++s)
        if (p.step_word(s, w) >= 0) starts.push_back(s);
    if (starts.empty()) throw error("sample_cylinder: word not readable");
    for (int attempt = 0; attempt < 500; ++attempt) {
        // random-walk prefix from the focus; keep it if w is readable after
        Word pre;
        int s = s0;
        long long steps = rng.below(9);
        bool ok = true;
        for (long long i = 0; i < steps; ++i) {
            const auto& edges = p.out[static_cast<std::size_t>(s)];
            const auto& e = edges[static_cast<std::size_t>(rng.below(static_cast<long long>(edges.size())))];
            pre.push_back(e.label);
            s = e.to;
        }
        if (p.step_word(s, w) < 0) continue;
        int end = p.step_word(s, w);
        Word post;
        long long steps2 = rng.below(9);
        for (long long i = 0; i < steps2; ++i) {
            const auto& edges = p.out[static_cast<std::size_t>(end)];
            const auto& e = edges[static_cast<std::size_t>(rng.below(static_cast<long long>(edges.size())))];
            post.push_back(e.label);
            end = e.to;
        }
        auto home = detail::shortest_path_word(p, end, s0);
        if (!home) {
            ok = false;
            continue;
        }
        (void)ok;
        Word center = pre + w + post + *home;
        return make_configuration(sys.z, center, sys.z, -static_cast<long long>(pre.size()));
    }
    throw error("sample_cylinder: completion failed");
}

/// Inserts a glider into the z-sea `dist` z-blocks beyond the current
/// center on the chosen side; the result stays in the shift.
inline TailConfiguration insert_distant_glider(const GliderSystem& sys,
                                               const TailConfiguration& x0, bool leftbound,
                                               bool on_right, long long dist) {
    TailConfiguration x = x0.canonical();
    const Word& glider = leftbound ? sys.gl : sys.gr;
    Word pad = repeated(sys.z, static_cast<std::size_t>(dist));
    if (on_right) {
        Word center = x.center + pad + glider;
        return make_configuration(x.left, center, x.right, x.center_start);
    }
    Word center = glider + pad + x.center;
    return make_configuration(x.left, center, x.right,
                              x.center_start - static_cast<long long>(pad.size() + glider.size()));
}

} // namespace gliderca
