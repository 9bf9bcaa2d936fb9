#pragma once

#include <map>
#include <memory>
#include <optional>

#include "core.hpp"
#include "marker.hpp"
#include "matcher.hpp"
#include "recode.hpp"

namespace gliderca {

/// Per-class P3 bookkeeping: the class is identified by the state the
/// presentation reaches from the focus of z along the class's gap words.
struct P3ClassTable {
    int class_state = -1;
    Word w_prime;              // representative gap word w'_S
    Word w_s;                  // the anchor word of length N
    std::vector<Word> w_s_set; // W'_S: gap words of length N in this class
};

struct P4JTable {
    long long j = 0;
    Word u_prime;                   // one z^q one^j
    std::vector<Word> elements;     // U'_{j,n} in cycle order (last = one^{p+1+j})
    std::vector<Word> padded_cycle; // u_j, u_{j,1}, ..., padded, cycle order
};

/// Recognizers for the glider-fleet languages and the bound sweeps.
struct FleetMatcher {
    Word z, gl, gr;
    long long p = 0, q = 0;
    std::shared_ptr<const Nfa> left_full;   // z^* (gl z z^*)^* z^*
    std::shared_ptr<const Nfa> right_full;  // z^* (z^* z gr)^* z^*
    std::shared_ptr<const Nfa> left_prefix; // z^* (gl z z^*)^*
    std::shared_ptr<const Nfa> right_rev;   // reversed sweep: z^* (gr^R z z^*)^*

    static FleetMatcher make(const Word& z, const Word& gl, const Word& gr, long long p, long long q) {
        FleetMatcher f;
        f.z = z;
        f.gl = gl;
        f.gr = gr;
        f.p = p;
        f.q = q;
        auto zs = Nfa::star(Nfa::lit(z));
        auto lell = Nfa::star(Nfa::cat(Nfa::lit(gl), Nfa::cat(Nfa::lit(z), Nfa::star(Nfa::lit(z)))));
        auto larr = Nfa::star(Nfa::cat(Nfa::star(Nfa::lit(z)), Nfa::cat(Nfa::lit(z), Nfa::lit(gr))));
        f.left_full = std::make_shared<Nfa>(Nfa::cat(zs, Nfa::cat(lell, zs)));
        f.right_full = std::make_shared<Nfa>(Nfa::cat(zs, Nfa::cat(larr, zs)));
        f.left_prefix = std::make_shared<Nfa>(Nfa::cat(zs, lell));
        Word zr(z.rbegin(), z.rend()), grr(gr.rbegin(), gr.rend());
        auto zsr = Nfa::star(Nfa::lit(zr));
        auto larr_rev =
            Nfa::star(Nfa::cat(Nfa::lit(grr), Nfa::cat(Nfa::lit(zr), Nfa::star(Nfa::lit(zr)))));
        f.right_rev = std::make_shared<Nfa>(Nfa::cat(zsr, larr_rev));
        return f;
    }
};

/// The full glider bundle: ambient recoded shift, the special words, the
/// component automorphisms and the composed CA.
struct GliderSystem {
    std::shared_ptr<const SoficPresentation> ambient;
    RecodingPipeline recode; // conjugacies applied to the input shift
    Word z, one;
    long long p = 0, q = 0, K = 0, s = 0;
    Word gl, gr;
    std::set<Sym> B;
    std::vector<MarkerAutomorphism> stages; // application order P1, P2, [P3], P4
    bool has_p3 = false;
    std::optional<long long> n_param; // P_{4,n} parameter
    std::optional<long long> N, N1;   // sofic path only
    std::vector<P3ClassTable> p3_tables;
    std::vector<P4JTable> p4_tables;
    FleetMatcher fleets;
    std::string variant; // "sofic" | "sync" | "intro"

    CAPipeline G() const { return compose(stages); }
    const MarkerAutomorphism& P1() const { return stages.at(0); }
    const MarkerAutomorphism& P2() const { return stages.at(1); }
    const MarkerAutomorphism& P3() const {
        if (!has_p3) throw error("system has no P3 stage");
        return stages.at(2);
    }
    const MarkerAutomorphism& P4() const { return stages.at(has_p3 ? 3 : 2); }
};

inline MarkerAutomorphism build_P1(std::shared_ptr<const SoficPresentation> ambient, const Word& z,
                                   const Word& one) {
    long long p = static_cast<long long>(z.size()), q = static_cast<long long>(one.size());
    Word a = repeated(z, static_cast<std::size_t>(q)) + one;
    Word b = repeated(one, static_cast<std::size_t>(p + 1));
    return build_swap(std::move(ambient), z, a, b, "P1");
}

inline MarkerAutomorphism build_P2(std::shared_ptr<const SoficPresentation> ambient, const Word& z,
                                   const Word& one) {
    long long p = static_cast<long long>(z.size()), q = static_cast<long long>(one.size());
    Word a = repeated(one, static_cast<std::size_t>(p + 1));
    Word b = one + repeated(z, static_cast<std::size_t>(q));
    return build_swap(std::move(ambient), z, a, b, "P2");
}

namespace detail {

/// All words in B^len readable from `from`, bucketed by end state.
inline std::map<int, std::vector<Word>> b_words_by_end(const SoficPresentation& p, int from,
                                                       const std::set<Sym>& b, std::size_t len,
                                                       std::size_t cap) {
    BGraph g = b_subgraph(p, b);
    std::map<int, std::vector<Word>> out;
    Word cur;
    std::size_t count = 0;
    auto rec = [&](auto&& self, int s) -> void {
        if (cur.size() == len) {
            if (++count > cap) throw error("gap-word enumeration exceeded cap (presumed non-sofic input)");
            out[s].push_back(cur);
            return;
        }
        for (const auto& e : g.out[static_cast<std::size_t>(s)]) {
            cur.push_back(e.label);
            self(self, e.to);
            cur.pop_back();
        }
    };
    rec(rec, from);
    return out;
}

/// States reachable from the z-focus by B-words of length ≡ 0 (mod K) and
/// length > threshold. Exact: the level sequence is eventually periodic.
inline std::set<int> saturate_classes(const SoficPresentation& p, int s0, const std::set<Sym>& b,
                                      long long k, long long threshold, long long ceiling) {
    BGraph g = b_subgraph(p, b);
    std::set<int> classes;
    std::set<int> frontier{s0};
    std::map<std::pair<std::set<int>, long long>, bool> seen;
    for (long long len = 1;; ++len) {
        std::set<int> next;
        for (int s : frontier)
            for (const auto& e : g.out[static_cast<std::size_t>(s)]) next.insert(e.to);
        frontier = std::move(next);
        if (frontier.empty()) break;
        if (len > threshold && len % k == 0) {
            classes.insert(frontier.begin(), frontier.end());
            auto key = std::make_pair(frontier, len % k);
            if (seen.count(key)) break;
            seen[key] = true;
            if (static_cast<long long>(seen.size()) > ceiling)
                throw error("class saturation exceeded ceiling (presumed non-sofic input)");
        }
        if (len > threshold + static_cast<long long>(1) + ceiling) break;
    }
    return classes;
}

/// Shortest then lex-least B-word from s0 to `target` with length ≡ 0
/// (mod K) and length > threshold.
inline std::optional<Word> shortest_class_witness(const SoficPresentation& p, int s0,
                                                  const std::set<Sym>& b, int target, long long k,
                                                  long long threshold) {
    BGraph g = b_subgraph(p, b);
    std::map<int, Word> frontier{{s0, {}}};
    long long maxlen = threshold + k * (static_cast<long long>(p.state_count()) * k + 2) + 2;
    for (long long len = 1; len <= maxlen; ++len) {
        std::map<int, Word> next;
        for (const auto& [s, w] : frontier)
            for (const auto& e : g.out[static_cast<std::size_t>(s)]) {
                Word nw = w;
                nw.push_back(e.label);
                auto it = next.find(e.to);
                if (it == next.end() || nw < it->second) next[e.to] = std::move(nw);
            }
        frontier = std::move(next);
        if (frontier.empty()) break;
        if (len > threshold && len % k == 0) {
            auto it = frontier.find(target);
            if (it != frontier.end()) return it->second;
        }
    }
    return std::nullopt;
}

} // namespace detail

struct P3Result {
    MarkerAutomorphism marker;
    std::vector<P3ClassTable> tables;
    long long N = 0, N1 = 0;
};

/// The class-cycling eroder P3 (sofic shifts only).
inline P3Result build_P3(std::shared_ptr<const SoficPresentation> ambient, const Word& z,
                         const Word& one, long long ceiling = 1000000, std::size_t word_cap = 100000) {
    const SoficPresentation& pr = *ambient;
    long long p = static_cast<long long>(z.size()), q = static_cast<long long>(one.size());
    long long K = gcd_ll(p, q);
    std::set<Sym> b = complement_symbols(pr, z);
    int s0 = focus_state(pr, z);
    long long thr = q * (p + 1);

    std::set<int> classes = detail::saturate_classes(pr, s0, b, K, thr, ceiling);
    if (classes.empty()) throw error("build_P3: no gap classes (shift finite around z?)");

    std::vector<P3ClassTable> tables;
    long long n1 = 0;
    for (int t : classes) {
        auto w = detail::shortest_class_witness(pr, s0, b, t, K, thr);
        if (!w) throw error("build_P3: class lost its witness (internal)");
        P3ClassTable tab;
        tab.class_state = t;
        tab.w_prime = *w;
        n1 = std::max(n1, static_cast<long long>(w->size()));
        tables.push_back(std::move(tab));
    }

    // N: least multiple of K above q(p+1+p/K) such that every class has a
    // word (one z)^a one^b (one^{p+1} z) w'_S of that exact length
    long long base = q * (p + 1) + p; // |one^{p+1} z|
    long long lower = q * (p + 1 + p / K);
    long long max_wp = 0;
    for (const auto& t : tables) max_wp = std::max(max_wp, static_cast<long long>(t.w_prime.size()));
    long long hi_bound = lower + base + max_wp + (q + p) * (q + p + 4) + 2 * K + 4;
    std::optional<long long> chosen;
    for (long long N = (lower / K + 1) * K; N <= hi_bound; N += K) {
        bool ok = true;
        for (const auto& t : tables) {
            long long rem = N - base - static_cast<long long>(t.w_prime.size());
            bool found = false;
            for (long long a = 1; a * (q + p) + q <= rem && !found; ++a) {
                long long rest = rem - a * (q + p);
                if (rest >= q && rest % q == 0) found = true;
            }
            if (!found) {
                ok = false;
                break;
            }
        }
        if (ok) {
            chosen = N;
            break;
        }
    }
    if (!chosen) throw error("build_P3: no admissible N found");
    long long N = *chosen;

    // anchors w_S: lexicographically least instantiation of length N
    for (auto& t : tables) {
        long long rem = N - base - static_cast<long long>(t.w_prime.size());
        std::optional<Word> best;
        for (long long a = 1; a * (q + p) + q <= rem; ++a) {
            long long rest = rem - a * (q + p);
            if (rest < q || rest % q) continue;
            long long bb = rest / q;
            Word w;
            for (long long i = 0; i < a; ++i) w = w + one + z;
            w = w + repeated(one, static_cast<std::size_t>(bb));
            w = w + repeated(one, static_cast<std::size_t>(p + 1)) + z;
            w = w + t.w_prime;
            if (!best || w < *best) best = std::move(w);
        }
        t.w_s = *best;
    }

    // W'_S: all B^N gap words, bucketed by class state
    std::map<int, std::vector<Word>> buckets =
        detail::b_words_by_end(pr, s0, b, static_cast<std::size_t>(N), word_cap);
    for (auto& t : tables) {
        auto it = buckets.find(t.class_state);
        if (it != buckets.end()) {
            t.w_s_set = it->second;
            std::sort(t.w_s_set.begin(), t.w_s_set.end());
        }
    }

    // marker with u = λ cycling each z^{q+1} W_S
    Word zq1 = repeated(z, static_cast<std::size_t>(q + 1));
    std::vector<Word> w_list;
    std::vector<std::size_t> perm;
    for (const auto& t : tables) {
        std::size_t basei = w_list.size();
        w_list.push_back(zq1 + t.w_s);
        for (const Word& w : t.w_s_set) w_list.push_back(zq1 + w);
        std::size_t count = 1 + t.w_s_set.size();
        for (std::size_t i = 0; i < count; ++i)
            perm.push_back(basei + (i + 1 < count ? i + 1 : 0));
    }
    MarkerAutomorphism m = build_marker(ambient, {}, w_list, perm, "P3");
    return {std::move(m), std::move(tables), N, n1};
}

struct P4Result {
    MarkerAutomorphism marker;
    std::vector<P4JTable> tables;
};

/// The short-word permuting eroder P_{4,n}.
inline P4Result build_P4(std::shared_ptr<const SoficPresentation> ambient, const Word& z,
                         const Word& one, long long n, std::size_t word_cap = 100000) {
    const SoficPresentation& pr = *ambient;
    long long p = static_cast<long long>(z.size()), q = static_cast<long long>(one.size());
    long long K = gcd_ll(p, q);
    if (n <= q * (p + 1 + p / K)) throw error("build_P4: n must exceed |one^(p+1+p/K)|");
    std::set<Sym> b = complement_symbols(pr, z);
    int s0 = focus_state(pr, z);
    std::set<int> targets = detail::z_readable_states(pr, z);

    std::vector<P4JTable> tables;
    std::vector<Word> w_list;
    std::vector<std::size_t> perm;
    Word one_p1 = repeated(one, static_cast<std::size_t>(p + 1));

    for (long long j = 1; j <= p / K; ++j) {
        P4JTable tab;
        tab.j = j;
        tab.u_prime = one + repeated(z, static_cast<std::size_t>(q)) + repeated(one, static_cast<std::size_t>(j));
        Word last = repeated(one, static_cast<std::size_t>(p + 1 + j));
        std::vector<Word> everyone;
        for (long long len = 1; len < n; ++len) {
            if (((len - (j + 1) * K) % p + p) % p != 0) continue;
            auto buckets = detail::b_words_by_end(pr, s0, b, static_cast<std::size_t>(len), word_cap);
            for (const auto& [t, ws] : buckets) {
                if (!targets.count(t)) continue;
                for (const Word& w : ws) everyone.push_back(w);
            }
        }
        if (j == p / K) {
            Word ex1 = one, ex2 = one_p1;
            everyone.erase(std::remove_if(everyone.begin(), everyone.end(),
                                          [&](const Word& w) { return w == ex1 || w == ex2; }),
                           everyone.end());
        }
        bool has_last = false;
        for (const auto& w : everyone) has_last |= (w == last);
        if (!has_last) throw error("build_P4: one^{p+1+j} missing from U'_{j,n}");
        everyone.erase(std::remove(everyone.begin(), everyone.end(), last), everyone.end());
        std::sort(everyone.begin(), everyone.end(), [](const Word& a, const Word& b2) {
            if (a.size() != b2.size()) return a.size() > b2.size();
            return a < b2;
        });
        everyone.push_back(last);
        tab.elements = everyone;

        long long max_len = static_cast<long long>(tab.u_prime.size());
        for (const auto& w : everyone) max_len = std::max(max_len, static_cast<long long>(w.size()));
        long long target_len = max_len + (q + 1) * p;
        auto pad = [&](const Word& w) {
            long long c = (target_len - static_cast<long long>(w.size())) / p;
            return repeated(z, static_cast<std::size_t>(c)) + w;
        };
        tab.padded_cycle.push_back(pad(tab.u_prime));
        for (const auto& w : everyone) tab.padded_cycle.push_back(pad(w));

        std::size_t basei = w_list.size();
        for (const auto& u : tab.padded_cycle) {
            // uWu with u = z: core strips one leading z, and z is appended on
            // the right by the marker itself
            Word core(u.begin() + static_cast<long>(p), u.end());
            w_list.push_back(core);
        }
        std::size_t count = tab.padded_cycle.size();
        for (std::size_t i = 0; i < count; ++i)
            perm.push_back(basei + (i + 1 < count ? i + 1 : 0));
        tables.push_back(std::move(tab));
    }
    MarkerAutomorphism m = build_marker(ambient, z, w_list, perm, "P4");
    return {std::move(m), std::move(tables)};
}

namespace detail {

inline GliderSystem finish_system(std::shared_ptr<const SoficPresentation> ambient,
                                  RecodingPipeline pipe) {
    GliderSystem sys;
    sys.ambient = std::move(ambient);
    sys.z = pipe.z_final;
    sys.one = pipe.one;
    sys.p = pipe.p;
    sys.q = pipe.q;
    sys.K = pipe.K;
    sys.s = sys.p * sys.q;
    sys.gl = repeated(sys.z, static_cast<std::size_t>(sys.q)) + sys.one;
    sys.gr = repeated(sys.one, static_cast<std::size_t>(sys.p + 1));
    sys.B = complement_symbols(*sys.ambient, sys.z);
    sys.recode = std::move(pipe);
    sys.fleets = FleetMatcher::make(sys.z, sys.gl, sys.gr, sys.p, sys.q);
    return sys;
}

inline void check_build_preconditions(const SoficPresentation& p, const Word& z) {
    if (!p.irreducible) throw error("build: presentation is not irreducible");
    if (!presents_infinite_shift(p)) throw error("build: shift is finite");
    if (z.empty()) throw error("build: empty z");
}

} // namespace detail

/// Sofic path: recode, derive one, then G = P4 ∘ P3 ∘ P2 ∘ P1.
inline GliderSystem build_GX(const SoficPresentation& input, const Word& z0, long long k,
                             long long ceiling = 1000000) {
    SoficPresentation fc = is_fischer_cover(input) ? input : fischer_cover(input);
    detail::check_build_preconditions(fc, z0);
    RecodingPipeline pipe = make_zero(fc, z0, k);
    derive_one(pipe);
    auto ambient = std::make_shared<const SoficPresentation>(pipe.final_presentation);
    GliderSystem sys = detail::finish_system(ambient, std::move(pipe));
    sys.variant = "sofic";
    sys.has_p3 = true;
    P3Result p3 = build_P3(ambient, sys.z, sys.one, ceiling);
    P4Result p4 = build_P4(ambient, sys.z, sys.one, p3.N);
    sys.N = p3.N;
    sys.N1 = p3.N1;
    sys.n_param = p3.N;
    sys.p3_tables = std::move(p3.tables);
    sys.p4_tables = std::move(p4.tables);
    sys.stages = {build_P1(ambient, sys.z, sys.one), build_P2(ambient, sys.z, sys.one),
                  std::move(p3.marker), std::move(p4.marker)};
    return sys;
}

/// Synchronizing path: G_{X,n} = P_{4,n} ∘ P2 ∘ P1 (no P3; soficness not
/// needed beyond the presentation itself).
inline GliderSystem build_GXn(const SoficPresentation& input, const Word& z0, long long k,
                              std::optional<long long> n = std::nullopt) {
    SoficPresentation fc = is_fischer_cover(input) ? input : fischer_cover(input);
    detail::check_build_preconditions(fc, z0);
    RecodingPipeline pipe = make_zero(fc, z0, k);
    derive_one(pipe);
    auto ambient = std::make_shared<const SoficPresentation>(pipe.final_presentation);
    GliderSystem sys = detail::finish_system(ambient, std::move(pipe));
    sys.variant = "sync";
    sys.has_p3 = false;
    long long n_min = sys.q * (sys.p + 1 + sys.p / sys.K);
    long long nn = n ? *n : n_min + 1;
    if (nn <= n_min) throw error("build_GXn: n too small");
    sys.n_param = nn;
    P4Result p4 = build_P4(ambient, sys.z, sys.one, nn);
    sys.p4_tables = std::move(p4.tables);
    sys.stages = {build_P1(ambient, sys.z, sys.one), build_P2(ambient, sys.z, sys.one),
                  std::move(p4.marker)};
    return sys;
}

/// The fleet-exchange automorphism F = F2 ∘ F1 of the Ryan suite.
inline CAPipeline build_F(const GliderSystem& sys) {
    const Word& z = sys.z;
    Word f1a = sys.gr + z + z + z + sys.gl;
    Word f1b = sys.gr + z + z + sys.gl + z;
    Word f2a = sys.gr + z + z + sys.gl;
    Word f2b = z + sys.gr + z + sys.gl;
    MarkerAutomorphism f1 = build_swap(sys.ambient, z, f1a, f1b, "F1");
    MarkerAutomorphism f2 = build_swap(sys.ambient, z, f2a, f2b, "F2");
    return compose({std::move(f1), std::move(f2)});
}

/// The pattern-exchange automorphism H: u w3 u w1 u w2 u <-> u w3 u w2 u w1 u.
inline MarkerAutomorphism build_ryan_H(std::shared_ptr<const SoficPresentation> ambient,
                                       const Word& u, const Word& w1, const Word& w2,
                                       const Word& w3) {
    if (w1 == w2) throw error("build_ryan_H: w1 and w2 must be distinct");
    Word a = w3 + u + w1 + u + w2;
    Word b = w3 + u + w2 + u + w1;
    return build_swap(std::move(ambient), u, a, b, "H");
}

/// Oracle-validated variant for shifts given only by a membership oracle.
inline MarkerAutomorphism build_ryan_H_oracle(const MembershipFn& member, const Alphabet& alpha,
                                              const Word& u, const Word& w1, const Word& w2,
                                              const Word& w3,
                                              const std::vector<std::pair<Word, Word>>& contexts = {}) {
    if (w1 == w2) throw error("build_ryan_H: w1 and w2 must be distinct");
    Word a = w3 + u + w1 + u + w2;
    Word b = w3 + u + w2 + u + w1;
    MarkerValidation v = validate_marker_oracle(member, alpha, u, {a, b}, {1, 0}, contexts);
    if (!v.ok) {
        std::string msg = "marker validation failed:";
        for (const auto& s : v.violations) msg += "\n  " + s;
        throw error(msg);
    }
    return MarkerAutomorphism(nullptr, u, {a, b}, {1, 0}, "H");
}

/// ---- fixtures ---------------------------------------------------------

inline SoficPresentation even_shift_presentation() {
    Alphabet a({"0", "1"});
    return make_presentation(a, {"l", "r"},
                             {{0, a.sym("0"), 0}, {0, a.sym("1"), 1}, {1, a.sym("1"), 0}});
}

inline SoficPresentation full_shift_presentation(std::vector<std::string> symbols = {"0", "1"}) {
    Alphabet a(symbols);
    std::vector<std::tuple<int, Sym, int>> edges;
    for (Sym s = 0; static_cast<std::size_t>(s) < a.size(); ++s) edges.emplace_back(0, s, 0);
    return make_presentation(a, {"q"}, edges);
}

inline SoficPresentation golden_mean_presentation() {
    Alphabet a({"0", "1"});
    return make_presentation(a, {"g", "h"},
                             {{0, a.sym("0"), 0}, {0, a.sym("1"), 1}, {1, a.sym("0"), 0}});
}

/// The shift coded by {0, 111}: a 0-loop plus a 1-cycle of length 3.
inline SoficPresentation coded_0_111_presentation() {
    Alphabet a({"0", "1"});
    return make_presentation(a, {"b", "x1", "x2"},
                             {{0, a.sym("0"), 0},
                              {0, a.sym("1"), 1},
                              {1, a.sym("1"), 2},
                              {2, a.sym("1"), 0}});
}

/// The hardcoded introductory full-shift glider CA G = P3 ∘ P2 ∘ P1.
inline GliderSystem fixture_intro() {
    auto ambient = std::make_shared<const SoficPresentation>(full_shift_presentation());
    const Alphabet& a = ambient->alphabet;
    GliderSystem sys;
    sys.ambient = ambient;
    sys.z = a.word("0");
    sys.one = a.word("1");
    sys.p = sys.q = sys.K = sys.s = 1;
    sys.gl = a.word("01");
    sys.gr = a.word("11");
    sys.B = complement_symbols(*ambient, sys.z);
    sys.variant = "intro";
    sys.has_p3 = false;
    sys.fleets = FleetMatcher::make(sys.z, sys.gl, sys.gr, sys.p, sys.q);
    MarkerAutomorphism p1 = build_swap(ambient, sys.z, a.word("01"), a.word("11"), "P1");
    MarkerAutomorphism p2 = build_swap(ambient, sys.z, a.word("10"), a.word("11"), "P2");
    MarkerAutomorphism p3 = build_swap(ambient, {}, a.word("00101"), a.word("00111"), "P3");
    sys.stages = {std::move(p1), std::move(p2), std::move(p3)};
    sys.recode.final_presentation = *ambient;
    sys.recode.z_final = sys.z;
    sys.recode.one = sys.one;
    sys.recode.p = sys.recode.q = sys.recode.K = 1;
    return sys;
}

/// The hardcoded even-shift system; must coincide with
/// build_GX(even_shift, "0", 1) table for table.
inline GliderSystem fixture_even() {
    auto ambient = std::make_shared<const SoficPresentation>(even_shift_presentation());
    const Alphabet& a = ambient->alphabet;
    GliderSystem sys;
    sys.ambient = ambient;
    sys.z = a.word("0");
    sys.one = a.word("11");
    sys.p = 1;
    sys.q = 2;
    sys.K = 1;
    sys.s = 2;
    sys.gl = a.word("0011");
    sys.gr = a.word("1111");
    sys.B = complement_symbols(*ambient, sys.z);
    sys.variant = "sofic";
    sys.has_p3 = true;
    sys.N = 18;
    sys.N1 = 6;
    sys.n_param = 18;
    sys.fleets = FleetMatcher::make(sys.z, sys.gl, sys.gr, sys.p, sys.q);

    MarkerAutomorphism p1 = build_swap(ambient, sys.z, a.word("0011"), a.word("1111"), "P1");
    MarkerAutomorphism p2 = build_swap(ambient, sys.z, a.word("1111"), a.word("1100"), "P2");

    Word w_s0 = a.word("110111111110111111");
    Word w_s1 = a.word("110110111111011111");
    Word zq1 = a.word("000");
    std::vector<Word> p3_words = {zq1 + w_s0, zq1 + a.word(std::string(18, '1')), zq1 + w_s1};
    MarkerAutomorphism p3(ambient, {}, p3_words, {1, 0, 2}, "P3");

    auto zeros = [&](int n) { return a.word(std::string(static_cast<std::size_t>(n), '0')); };
    auto ones = [&](int n) { return a.word(std::string(static_cast<std::size_t>(n), '1')); };
    std::vector<Word> p4_words = {
        zeros(12) + a.word("110011"), zeros(2) + ones(16), zeros(4) + ones(14),
        zeros(6) + ones(12),          zeros(8) + ones(10), zeros(10) + ones(8),
        zeros(12) + ones(6)};
    MarkerAutomorphism p4(ambient, sys.z, p4_words, {1, 2, 3, 4, 5, 6, 0}, "P4");

    P3ClassTable t0;
    t0.class_state = 0; // state l: classes are identified with cover states
    t0.w_prime = a.word("111111");
    t0.w_s = w_s0;
    t0.w_s_set = {a.word(std::string(18, '1'))};
    P3ClassTable t1;
    t1.class_state = 1; // state r
    t1.w_prime = a.word("11111");
    t1.w_s = w_s1;
    sys.p3_tables = {t0, t1};

    P4JTable j1;
    j1.j = 1;
    j1.u_prime = a.word("110011");
    j1.elements = {ones(16), ones(14), ones(12), ones(10), ones(8), ones(6)};
    j1.padded_cycle = {zeros(13) + a.word("110011"), zeros(3) + ones(16), zeros(5) + ones(14),
                       zeros(7) + ones(12),          zeros(9) + ones(10), zeros(11) + ones(8),
                       zeros(13) + ones(6)};
    sys.p4_tables = {j1};

    sys.stages = {std::move(p1), std::move(p2), std::move(p3), std::move(p4)};
    sys.recode.final_presentation = *ambient;
    sys.recode.z_final = sys.z;
    sys.recode.one = sys.one;
    sys.recode.p = 1;
    sys.recode.q = 2;
    sys.recode.K = 1;
    return sys;
}

/// The six-symbol arrow shift: digits 0 and 1 encoded by arrow pairs,
/// consecutive encodings of equal digits forbidden. Ships as a fixture;
/// only membership queries run on it.
inline SoficPresentation counterexample_presentation() {
    Alphabet a({"0", "1", "a", "b", "<", ">"});
    std::vector<std::string> names;
    std::vector<std::tuple<int, Sym, int>> edges;
    auto add_state = [&](const std::string& n) {
        names.push_back(n);
        return static_cast<int>(names.size()) - 1;
    };
    Sym s0 = a.sym("0"), s1 = a.sym("1"), sa = a.sym("a"), sb = a.sym("b");
    Sym lt = a.sym("<"), gt = a.sym(">");
    // (ab)^* loop attached at state v
    auto ab_loop = [&](int v, const std::string& tag) {
        int mid = add_state(tag + "_ab");
        edges.emplace_back(v, sa, mid);
        edges.emplace_back(mid, sb, v);
    };
    // chain reading 1 (ab)^* x (ab)^* y (ab)^* 1 from `from` to `to`
    auto encoding = [&](int from, int to, Sym x, Sym y, const std::string& tag) {
        int p1 = add_state(tag + "_1");
        int p2 = add_state(tag + "_2");
        int p3 = add_state(tag + "_3");
        edges.emplace_back(from, s1, p1);
        ab_loop(p1, tag + "a");
        edges.emplace_back(p1, x, p2);
        ab_loop(p2, tag + "b");
        edges.emplace_back(p2, y, p3);
        ab_loop(p3, tag + "c");
        edges.emplace_back(p3, s1, to);
    };
    int pre0 = add_state("pre0");  // about to read an L0 word; 0-loop
    int pre1 = add_state("pre1");  // about to read an L1 word; 0-loop
    edges.emplace_back(pre0, s0, pre0);
    edges.emplace_back(pre1, s0, pre1);
    encoding(pre0, pre1, gt, lt, "L0v1");
    encoding(pre0, pre1, lt, gt, "L0v2");
    encoding(pre1, pre0, lt, lt, "L1v1");
    encoding(pre1, pre0, gt, gt, "L1v2");
    return make_presentation(a, names, edges);
}

} // namespace gliderca
