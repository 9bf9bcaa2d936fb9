#pragma once

#include <deque>
#include <functional>
#include <optional>

#include "core.hpp"
#include "presentation.hpp"

namespace gliderca {

/// Transition relation of a word over a fixed right-resolving presentation:
/// {(s,t) | some w-labeled path runs s -> t}. Stands in for the syntactic
/// class of the word (equal relations imply equal contexts; a refinement).
struct SyntacticClass {
    int n = 0;
    std::vector<std::uint64_t> bits; // n*n bits, row-major (s,t)

    static SyntacticClass zero(int n) {
        SyntacticClass r;
        r.n = n;
        r.bits.assign((static_cast<std::size_t>(n) * static_cast<std::size_t>(n) + 63) / 64, 0);
        return r;
    }
    static SyntacticClass identity(int n) {
        SyntacticClass r = zero(n);
        for (int i = 0; i < n; ++i) r.set(i, i);
        return r;
    }
    void set(int s, int t) {
        std::size_t k = static_cast<std::size_t>(s) * static_cast<std::size_t>(n) + static_cast<std::size_t>(t);
        bits[k / 64] |= (1ull << (k % 64));
    }
    bool get(int s, int t) const {
        std::size_t k = static_cast<std::size_t>(s) * static_cast<std::size_t>(n) + static_cast<std::size_t>(t);
        return (bits[k / 64] >> (k % 64)) & 1;
    }
    bool is_zero() const {
        for (auto b : bits)
            if (b) return false;
        return true;
    }
    bool operator==(const SyntacticClass& o) const { return n == o.n && bits == o.bits; }
    bool operator!=(const SyntacticClass& o) const { return !(*this == o); }
    bool operator<(const SyntacticClass& o) const { return bits < o.bits; }
};

/// Relational composition; an empty result is the absorbing zero class.
inline SyntacticClass class_multiply(const SyntacticClass& a, const SyntacticClass& b) {
    if (a.n != b.n) throw error("class_multiply: mismatched presentations");
    SyntacticClass r = SyntacticClass::zero(a.n);
    for (int s = 0; s < a.n; ++s)
        for (int m = 0; m < a.n; ++m)
            if (a.get(s, m))
                for (int t = 0; t < a.n; ++t)
                    if (b.get(m, t)) r.set(s, t);
    return r;
}

inline SyntacticClass transition_relation(const SoficPresentation& p, const Word& w) {
    if (!p.right_resolving) throw error("transition_relation: presentation not right-resolving");
    SyntacticClass r = SyntacticClass::identity(p.state_count());
    for (Sym a : w) {
        SyntacticClass step = SyntacticClass::zero(p.state_count());
        bool any = false;
        for (int s = 0; s < p.state_count(); ++s)
            for (const auto& e : p.out[static_cast<std::size_t>(s)])
                if (e.label == a) {
                    step.set(s, e.to);
                    any = true;
                }
        if (!any) return SyntacticClass::zero(p.state_count());
        r = class_multiply(r, step);
        if (r.is_zero()) return r;
    }
    return r;
}

inline std::set<Sym> symbol_successors(const SoficPresentation& p, Sym s) {
    std::set<int> ends;
    for (int v = 0; v < p.state_count(); ++v)
        for (const auto& e : p.out[static_cast<std::size_t>(v)])
            if (e.label == s) ends.insert(e.to);
    std::set<Sym> succ;
    for (int v : ends)
        for (const auto& e : p.out[static_cast<std::size_t>(v)]) succ.insert(e.label);
    return succ;
}

inline std::set<Sym> symbol_predecessors(const SoficPresentation& p, Sym s) {
    std::set<int> starts;
    for (int v = 0; v < p.state_count(); ++v)
        for (const auto& e : p.out[static_cast<std::size_t>(v)])
            if (e.label == s) starts.insert(v);
    std::set<Sym> pred;
    for (int v = 0; v < p.state_count(); ++v)
        for (const auto& e : p.out[static_cast<std::size_t>(v)])
            if (starts.count(e.to)) pred.insert(e.label);
    return pred;
}

namespace detail {

inline void require_distinct_in_language(const SoficPresentation& p, const Word& w,
                                         const char* who) {
    std::set<Sym> seen(w.begin(), w.end());
    if (seen.size() != w.size()) throw error(std::string(who) + ": repeated symbols in word");
    if (!p.language_contains(w)) throw error(std::string(who) + ": word not in the language");
}

} // namespace detail

/// Every non-final symbol of w has a unique successor symbol in L(X).
inline bool is_future_deterministic(const SoficPresentation& p, const Word& w) {
    detail::require_distinct_in_language(p, w, "is_future_deterministic");
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (symbol_successors(p, w[i]).size() != 1) return false;
    return true;
}

inline bool is_past_deterministic(const SoficPresentation& p, const Word& w) {
    detail::require_distinct_in_language(p, w, "is_past_deterministic");
    for (std::size_t j = 1; j < w.size(); ++j)
        if (symbol_predecessors(p, w[j]).size() != 1) return false;
    return true;
}

inline bool is_deterministic(const SoficPresentation& p, const Word& w) {
    return is_future_deterministic(p, w) && is_past_deterministic(p, w);
}

/// Focusing test on the minimal right-resolving cover: all w-paths end at a
/// single state. Sound and complete for Fischer covers of transitive sofic
/// shifts; inputs that are not minimal covers are rejected.
inline bool is_synchronizing(const SoficPresentation& p, const Word& w) {
    if (!p.right_resolving || !p.irreducible)
        throw error("is_synchronizing: need the irreducible right-resolving minimal cover");
    if (minimize_right_resolving(p).state_count() != p.state_count())
        throw error("is_synchronizing: presentation is not minimal");
    if (!p.language_contains(w)) throw error("is_synchronizing: word not in the language");
    return p.word_image(w).size() == 1;
}

/// The unique terminal state of all w-paths (requires w synchronizing).
inline int focus_state(const SoficPresentation& p, const Word& w) {
    std::set<int> img = p.word_image(w);
    if (img.size() != 1) throw error("focus_state: word is not focusing");
    return *img.begin();
}

/// ---- gap analysis over the B-subgraph -------------------------------

namespace detail {

/// States from which z is readable.
inline std::set<int> z_readable_states(const SoficPresentation& p, const Word& z) {
    std::set<int> t;
    for (int s = 0; s < p.state_count(); ++s) {
        std::set<int> cur{s};
        for (Sym a : z) {
            cur = p.post(cur, a);
            if (cur.empty()) break;
        }
        if (!cur.empty()) t.insert(s);
    }
    return t;
}

struct BGraph {
    // adjacency over presentation states using only B-labeled edges,
    // edges sorted by label so BFS words come out lexicographically least
    std::vector<std::vector<SoficPresentation::Edge>> out;
};

inline BGraph b_subgraph(const SoficPresentation& p, const std::set<Sym>& b) {
    BGraph g;
    g.out.resize(static_cast<std::size_t>(p.state_count()));
    for (int s = 0; s < p.state_count(); ++s)
        for (const auto& e : p.out[static_cast<std::size_t>(s)])
            if (b.count(e.label)) g.out[static_cast<std::size_t>(s)].push_back(e);
    return g;
}

} // namespace detail

/// Symbols of the alphabet not occurring in z.
inline std::set<Sym> complement_symbols(const SoficPresentation& p, const Word& z) {
    std::set<Sym> zs(z.begin(), z.end());
    std::set<Sym> b;
    for (Sym a = 0; static_cast<std::size_t>(a) < p.alphabet.size(); ++a)
        if (!zs.count(a)) b.insert(a);
    return b;
}

/// gcd of {|w| : w in B^+, z w z in L(X)}, computed exactly as the gcd of
/// closed-walk lengths in the B-subgraph augmented with zero-length edges
/// from z-readable states back to the focus of z. none when no gap word
/// exists.
inline std::optional<long long> gap_length_gcd(const SoficPresentation& p, const Word& z,
                                               const std::set<Sym>& b) {
    if (!is_synchronizing(p, z)) throw error("gap_length_gcd: z is not synchronizing");
    int s0 = focus_state(p, z);
    std::set<int> targets = detail::z_readable_states(p, z);
    detail::BGraph g = detail::b_subgraph(p, b);
    int n = p.state_count();
    // augmented edges: (u -> v, weight 1) for B-edges, (t -> s0, weight 0)
    auto for_edges = [&](int u, auto&& fn) {
        for (const auto& e : g.out[static_cast<std::size_t>(u)]) fn(e.to, 1);
        if (targets.count(u)) fn(s0, 0);
    };
    // reachable from s0
    std::vector<char> reach(static_cast<std::size_t>(n), 0);
    {
        std::deque<int> q{s0};
        reach[static_cast<std::size_t>(s0)] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for_edges(u, [&](int v, int) {
                if (!reach[static_cast<std::size_t>(v)]) {
                    reach[static_cast<std::size_t>(v)] = 1;
                    q.push_back(v);
                }
            });
        }
    }
    // co-reachable to s0 (reverse reachability)
    std::vector<char> coreach(static_cast<std::size_t>(n), 0);
    {
        std::vector<std::vector<int>> rev(static_cast<std::size_t>(n));
        for (int u = 0; u < n; ++u)
            for_edges(u, [&](int v, int) { rev[static_cast<std::size_t>(v)].push_back(u); });
        std::deque<int> q{s0};
        coreach[static_cast<std::size_t>(s0)] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int v : rev[static_cast<std::size_t>(u)])
                if (!coreach[static_cast<std::size_t>(v)]) {
                    coreach[static_cast<std::size_t>(v)] = 1;
                    q.push_back(v);
                }
        }
    }
    // does any gap word exist? some target reachable via >= 1 B-edge
    bool any_gap = false;
    {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::deque<int> q;
        for (const auto& e : g.out[static_cast<std::size_t>(s0)]) {
            if (targets.count(e.to)) any_gap = true;
            if (!seen[static_cast<std::size_t>(e.to)]) {
                seen[static_cast<std::size_t>(e.to)] = 1;
                q.push_back(e.to);
            }
        }
        while (!q.empty() && !any_gap) {
            int u = q.front();
            q.pop_front();
            for (const auto& e : g.out[static_cast<std::size_t>(u)]) {
                if (targets.count(e.to)) {
                    any_gap = true;
                    break;
                }
                if (!seen[static_cast<std::size_t>(e.to)]) {
                    seen[static_cast<std::size_t>(e.to)] = 1;
                    q.push_back(e.to);
                }
            }
        }
    }
    if (!any_gap) return std::nullopt;
    // potentials on the augmented s0-component, gcd over all its edges
    std::vector<long long> pot(static_cast<std::size_t>(n), 0);
    std::vector<char> inpot(static_cast<std::size_t>(n), 0);
    std::deque<int> q{s0};
    inpot[static_cast<std::size_t>(s0)] = 1;
    long long g_acc = 0;
    auto in_comp = [&](int v) { return reach[static_cast<std::size_t>(v)] && coreach[static_cast<std::size_t>(v)]; };
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for_edges(u, [&](int v, int w) {
            if (!in_comp(v)) return;
            if (!inpot[static_cast<std::size_t>(v)]) {
                inpot[static_cast<std::size_t>(v)] = 1;
                pot[static_cast<std::size_t>(v)] = pot[static_cast<std::size_t>(u)] + w;
                q.push_back(v);
            } else {
                long long d = pot[static_cast<std::size_t>(u)] + w - pot[static_cast<std::size_t>(v)];
                if (d) g_acc = gcd_ll(g_acc, d < 0 ? -d : d);
            }
        });
    }
    // a gap word plus its back-edge is a closed walk of positive weight
    if (g_acc <= 0) throw error("gap_length_gcd: internal cycle-gcd failure");
    return g_acc;
}

/// Shortest (then lexicographically least) B-word from s0 satisfying a
/// residue predicate on its length, ending in a state set. Uses BFS over
/// (state, length mod modulus); edges are expanded in symbol order, so the
/// first word reaching a node is the lex-least of its length.
inline std::optional<Word> shortest_b_word(const SoficPresentation& p, int s0,
                                           const std::set<Sym>& b, const std::set<int>& targets,
                                           long long modulus,
                                           const std::function<bool(long long)>& residue_ok,
                                           long long max_len) {
    detail::BGraph g = detail::b_subgraph(p, b);
    int n = p.state_count();
    long long m = std::max<long long>(1, modulus);
    std::vector<char> seen(static_cast<std::size_t>(n) * static_cast<std::size_t>(m), 0);
    struct Node {
        int state;
        long long len;
        Word word;
    };
    std::deque<Node> q;
    q.push_back({s0, 0, {}});
    // do not mark (s0, 0) so that genuine cycles can return at len ≡ 0
    while (!q.empty()) {
        Node cur = q.front();
        q.pop_front();
        if (cur.len > max_len) return std::nullopt;
        if (cur.len >= 1 && targets.count(cur.state) && residue_ok(cur.len % m)) return cur.word;
        for (const auto& e : g.out[static_cast<std::size_t>(cur.state)]) {
            long long nl = cur.len + 1;
            std::size_t key = static_cast<std::size_t>(e.to) * static_cast<std::size_t>(m) +
                              static_cast<std::size_t>(nl % m);
            if (seen[key]) continue;
            seen[key] = 1;
            Word w = cur.word;
            w.push_back(e.label);
            q.push_back({e.to, nl, std::move(w)});
        }
    }
    return std::nullopt;
}

/// All w in B^n with z w in L(X) (readable from the focus of z), in
/// lexicographic order; with closing=true additionally z w z in L(X).
inline std::vector<Word> enumerate_gap_words(const SoficPresentation& p, const Word& z,
                                             const std::set<Sym>& b, std::size_t n,
                                             bool closing = false) {
    if (!is_synchronizing(p, z)) throw error("enumerate_gap_words: z is not synchronizing");
    int s0 = focus_state(p, z);
    std::set<int> targets = closing ? detail::z_readable_states(p, z) : p.all_states();
    detail::BGraph g = detail::b_subgraph(p, b);
    std::vector<Word> out;
    Word cur;
    auto rec = [&](auto&& self, int s) -> void {
        if (cur.size() == n) {
            if (targets.count(s)) out.push_back(cur);
            return;
        }
        for (const auto& e : g.out[static_cast<std::size_t>(s)]) {
            cur.push_back(e.label);
            self(self, e.to);
            cur.pop_back();
        }
    };
    rec(rec, s0);
    return out;
}

} // namespace gliderca
