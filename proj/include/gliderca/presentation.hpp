#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core.hpp"

namespace gliderca {

/// A labeled directed graph presenting a sofic shift: the shift is the set
/// of label sequences of bi-infinite paths. Kept essential (every state on
/// a bi-infinite path) at construction.
struct SoficPresentation {
    struct Edge {
        Sym label;
        int to;
        bool operator<(const Edge& o) const {
            return label != o.label ? label < o.label : to < o.to;
        }
        bool operator==(const Edge& o) const { return label == o.label && to == o.to; }
    };

    Alphabet alphabet;
    std::vector<std::string> state_names;
    std::vector<std::vector<Edge>> out; // sorted per state
    bool right_resolving = false;
    bool irreducible = false;
    std::vector<std::string> warnings;

    int state_count() const { return static_cast<int>(state_names.size()); }

    int state(const std::string& name) const {
        for (int i = 0; i < state_count(); ++i)
            if (state_names[static_cast<std::size_t>(i)] == name) return i;
        throw error("presentation: unknown state '" + name + "'");
    }

    /// Unique successor of `s` under `a`, or -1. Requires right_resolving.
    int step(int s, Sym a) const {
        for (const Edge& e : out[static_cast<std::size_t>(s)])
            if (e.label == a) return e.to;
        return -1;
    }

    int step_word(int s, const Word& w) const {
        for (Sym a : w) {
            s = step(s, a);
            if (s < 0) return -1;
        }
        return s;
    }

    std::set<int> post(const std::set<int>& from, Sym a) const {
        std::set<int> r;
        for (int s : from)
            for (const Edge& e : out[static_cast<std::size_t>(s)])
                if (e.label == a) r.insert(e.to);
        return r;
    }

    std::set<int> all_states() const {
        std::set<int> r;
        for (int i = 0; i < state_count(); ++i) r.insert(i);
        return r;
    }

    /// w in L(X)? Foreign symbols simply yield false.
    bool language_contains(const Word& w) const {
        std::set<int> s = all_states();
        for (Sym a : w) {
            if (a < 0 || static_cast<std::size_t>(a) >= alphabet.size()) return false;
            s = post(s, a);
            if (s.empty()) return false;
        }
        return true;
    }

    /// End states of w-labeled paths (from anywhere).
    std::set<int> word_image(const Word& w) const {
        std::set<int> s = all_states();
        for (Sym a : w) s = post(s, a);
        return s;
    }
};

namespace detail {

inline bool strongly_connected(const std::vector<std::vector<SoficPresentation::Edge>>& out) {
    int n = static_cast<int>(out.size());
    if (n == 0) return false;
    std::vector<std::vector<int>> rev(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s)
        for (const auto& e : out[static_cast<std::size_t>(s)])
            rev[static_cast<std::size_t>(e.to)].push_back(s);
    auto bfs = [&](bool forward) {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::deque<int> q{0};
        seen[0] = 1;
        int cnt = 1;
        while (!q.empty()) {
            int s = q.front();
            q.pop_front();
            if (forward) {
                for (const auto& e : out[static_cast<std::size_t>(s)])
                    if (!seen[static_cast<std::size_t>(e.to)]) {
                        seen[static_cast<std::size_t>(e.to)] = 1;
                        ++cnt;
                        q.push_back(e.to);
                    }
            } else {
                for (int t : rev[static_cast<std::size_t>(s)])
                    if (!seen[static_cast<std::size_t>(t)]) {
                        seen[static_cast<std::size_t>(t)] = 1;
                        ++cnt;
                        q.push_back(t);
                    }
            }
        }
        return cnt == n;
    };
    return bfs(true) && bfs(false);
}

} // namespace detail

/// Builds a presentation from raw edges. Non-essential states are trimmed
/// (with a warning) unless trim is false, in which case they are an error.
inline SoficPresentation make_presentation(Alphabet alphabet,
                                           std::vector<std::string> states,
                                           std::vector<std::tuple<int, Sym, int>> edges,
                                           bool trim = true) {
    if (states.empty()) throw error("presentation: no states");
    {
        std::set<std::string> seen;
        for (const auto& s : states)
            if (!seen.insert(s).second) throw error("presentation: duplicate state name '" + s + "'");
    }
    int n = static_cast<int>(states.size());
    std::vector<std::set<SoficPresentation::Edge>> adj(static_cast<std::size_t>(n));
    for (auto [src, lab, dst] : edges) {
        if (src < 0 || src >= n || dst < 0 || dst >= n) throw error("presentation: edge endpoint out of range");
        if (lab < 0 || static_cast<std::size_t>(lab) >= alphabet.size())
            throw error("presentation: edge label out of range");
        adj[static_cast<std::size_t>(src)].insert({lab, dst});
    }

    // Iteratively remove states with no outgoing or no incoming edge.
    std::vector<char> alive(static_cast<std::size_t>(n), 1);
    bool changed = true, trimmed = false;
    while (changed) {
        changed = false;
        std::vector<int> indeg(static_cast<std::size_t>(n), 0), outdeg(static_cast<std::size_t>(n), 0);
        for (int s = 0; s < n; ++s) {
            if (!alive[static_cast<std::size_t>(s)]) continue;
            for (const auto& e : adj[static_cast<std::size_t>(s)]) {
                if (!alive[static_cast<std::size_t>(e.to)]) continue;
                ++outdeg[static_cast<std::size_t>(s)];
                ++indeg[static_cast<std::size_t>(e.to)];
            }
        }
        for (int s = 0; s < n; ++s) {
            if (alive[static_cast<std::size_t>(s)] && (indeg[static_cast<std::size_t>(s)] == 0 || outdeg[static_cast<std::size_t>(s)] == 0)) {
                alive[static_cast<std::size_t>(s)] = 0;
                changed = trimmed = true;
            }
        }
    }
    if (trimmed && !trim) throw error("presentation: graph is not essential");

    SoficPresentation p;
    p.alphabet = std::move(alphabet);
    std::vector<int> remap(static_cast<std::size_t>(n), -1);
    for (int s = 0; s < n; ++s) {
        if (!alive[static_cast<std::size_t>(s)]) continue;
        remap[static_cast<std::size_t>(s)] = static_cast<int>(p.state_names.size());
        p.state_names.push_back(states[static_cast<std::size_t>(s)]);
    }
    if (p.state_names.empty()) throw error("presentation: empty graph after trimming");
    if (trimmed)
        p.warnings.push_back("trimmed non-essential states");
    p.out.resize(p.state_names.size());
    for (int s = 0; s < n; ++s) {
        if (!alive[static_cast<std::size_t>(s)]) continue;
        for (const auto& e : adj[static_cast<std::size_t>(s)])
            if (alive[static_cast<std::size_t>(e.to)])
                p.out[static_cast<std::size_t>(remap[static_cast<std::size_t>(s)])].push_back({e.label, remap[static_cast<std::size_t>(e.to)]});
    }
    for (auto& v : p.out) std::sort(v.begin(), v.end());

    p.right_resolving = true;
    for (const auto& v : p.out)
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i].label == v[i - 1].label) p.right_resolving = false;
    p.irreducible = detail::strongly_connected(p.out);
    return p;
}

/// Transitivity decided at presentation level: strong connectivity of an
/// essential presentation.
inline bool is_transitive(const SoficPresentation& p) { return p.irreducible; }

/// Subset construction from the full vertex set; presents the same shift,
/// right-resolving. Result is trimmed to essential.
inline SoficPresentation subset_presentation(const SoficPresentation& p) {
    std::map<std::set<int>, int> id;
    std::vector<std::set<int>> subsets;
    std::vector<std::tuple<int, Sym, int>> edges;
    std::deque<std::set<int>> queue;
    auto intern = [&](const std::set<int>& s) {
        auto it = id.find(s);
        if (it != id.end()) return it->second;
        int k = static_cast<int>(subsets.size());
        id.emplace(s, k);
        subsets.push_back(s);
        queue.push_back(s);
        return k;
    };
    intern(p.all_states());
    while (!queue.empty()) {
        std::set<int> s = queue.front();
        queue.pop_front();
        int sid = id[s];
        for (Sym a = 0; static_cast<std::size_t>(a) < p.alphabet.size(); ++a) {
            std::set<int> t = p.post(s, a);
            if (t.empty()) continue;
            edges.emplace_back(sid, a, intern(t));
        }
    }
    std::vector<std::string> names;
    for (const auto& s : subsets) {
        std::string n = "{";
        for (int v : s) {
            if (n.size() > 1) n += ' ';
            n += p.state_names[static_cast<std::size_t>(v)];
        }
        names.push_back(n + "}");
    }
    return make_presentation(p.alphabet, names, edges, true);
}

/// Merges states of a right-resolving presentation with equal follower
/// languages (Moore-style partition refinement).
inline SoficPresentation minimize_right_resolving(const SoficPresentation& p) {
    if (!p.right_resolving) throw error("minimize: presentation not right-resolving");
    int n = p.state_count();
    std::vector<int> cls(static_cast<std::size_t>(n), 0);
    // initial partition by out-label sets
    {
        std::map<std::vector<Sym>, int> sig;
        for (int s = 0; s < n; ++s) {
            std::vector<Sym> labels;
            for (const auto& e : p.out[static_cast<std::size_t>(s)]) labels.push_back(e.label);
            auto [it, fresh] = sig.emplace(labels, static_cast<int>(sig.size()));
            (void)fresh;
            cls[static_cast<std::size_t>(s)] = it->second;
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::pair<int, std::vector<std::pair<Sym, int>>>, int> sig;
        std::vector<int> next(static_cast<std::size_t>(n));
        for (int s = 0; s < n; ++s) {
            std::vector<std::pair<Sym, int>> tr;
            for (const auto& e : p.out[static_cast<std::size_t>(s)])
                tr.emplace_back(e.label, cls[static_cast<std::size_t>(e.to)]);
            auto key = std::make_pair(cls[static_cast<std::size_t>(s)], tr);
            auto [it, fresh] = sig.emplace(key, static_cast<int>(sig.size()));
            (void)fresh;
            next[static_cast<std::size_t>(s)] = it->second;
        }
        if (next != cls) {
            cls = next;
            changed = true;
        }
        if (static_cast<int>(std::set<int>(cls.begin(), cls.end()).size()) == n) break;
    }
    int m = 0;
    for (int c : cls) m = std::max(m, c + 1);
    std::vector<std::string> names(static_cast<std::size_t>(m));
    for (int s = 0; s < n; ++s) {
        auto& nm = names[static_cast<std::size_t>(cls[static_cast<std::size_t>(s)])];
        if (nm.empty()) nm = p.state_names[static_cast<std::size_t>(s)];
    }
    std::set<std::tuple<int, Sym, int>> edges;
    for (int s = 0; s < n; ++s)
        for (const auto& e : p.out[static_cast<std::size_t>(s)])
            edges.emplace(cls[static_cast<std::size_t>(s)], e.label, cls[static_cast<std::size_t>(e.to)]);
    return make_presentation(p.alphabet, names,
                             std::vector<std::tuple<int, Sym, int>>(edges.begin(), edges.end()), true);
}

/// L(a) == L(b), decided by a lockstep subset walk; a mismatch is a word
/// readable in exactly one of the graphs.
inline bool language_equal(const SoficPresentation& a, const SoficPresentation& b) {
    if (!(a.alphabet == b.alphabet)) {
        // compare by names; a shared symbol universe is built on the fly
        std::set<std::string> u(a.alphabet.names.begin(), a.alphabet.names.end());
        for (const auto& n : b.alphabet.names) u.insert(n);
        std::map<std::pair<std::set<int>, std::set<int>>, bool> seen;
        std::deque<std::pair<std::set<int>, std::set<int>>> q;
        q.emplace_back(a.all_states(), b.all_states());
        seen[q.back()] = true;
        while (!q.empty()) {
            auto [sa, sb] = q.front();
            q.pop_front();
            for (const auto& name : u) {
                Sym xa = a.alphabet.try_sym(name), xb = b.alphabet.try_sym(name);
                std::set<int> ta = xa >= 0 ? a.post(sa, xa) : std::set<int>{};
                std::set<int> tb = xb >= 0 ? b.post(sb, xb) : std::set<int>{};
                if (ta.empty() != tb.empty()) return false;
                if (ta.empty()) continue;
                auto key = std::make_pair(ta, tb);
                if (!seen.count(key)) {
                    seen[key] = true;
                    q.push_back(key);
                }
            }
        }
        return true;
    }
    std::map<std::pair<std::set<int>, std::set<int>>, bool> seen;
    std::deque<std::pair<std::set<int>, std::set<int>>> q;
    q.emplace_back(a.all_states(), b.all_states());
    seen[q.back()] = true;
    while (!q.empty()) {
        auto [sa, sb] = q.front();
        q.pop_front();
        for (Sym x = 0; static_cast<std::size_t>(x) < a.alphabet.size(); ++x) {
            std::set<int> ta = a.post(sa, x), tb = b.post(sb, x);
            if (ta.empty() != tb.empty()) return false;
            if (ta.empty()) continue;
            auto key = std::make_pair(ta, tb);
            if (!seen.count(key)) {
                seen[key] = true;
                q.push_back(key);
            }
        }
    }
    return true;
}

namespace detail {

inline std::vector<std::vector<int>> scc_components(const std::vector<std::vector<SoficPresentation::Edge>>& out) {
    int n = static_cast<int>(out.size());
    std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<char> onstack(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    std::vector<std::vector<int>> comps;
    int counter = 0;
    // iterative Tarjan
    struct Frame {
        int v;
        std::size_t ei;
    };
    for (int root = 0; root < n; ++root) {
        if (index[static_cast<std::size_t>(root)] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
        stack.push_back(root);
        onstack[static_cast<std::size_t>(root)] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.ei < out[static_cast<std::size_t>(f.v)].size()) {
                int w = out[static_cast<std::size_t>(f.v)][f.ei++].to;
                if (index[static_cast<std::size_t>(w)] == -1) {
                    index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = counter++;
                    stack.push_back(w);
                    onstack[static_cast<std::size_t>(w)] = 1;
                    frames.push_back({w, 0});
                } else if (onstack[static_cast<std::size_t>(w)]) {
                    low[static_cast<std::size_t>(f.v)] = std::min(low[static_cast<std::size_t>(f.v)], index[static_cast<std::size_t>(w)]);
                }
            } else {
                if (low[static_cast<std::size_t>(f.v)] == index[static_cast<std::size_t>(f.v)]) {
                    std::vector<int> comp;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        onstack[static_cast<std::size_t>(w)] = 0;
                        comp.push_back(w);
                    } while (w != f.v);
                    comps.push_back(comp);
                }
                int v = f.v;
                frames.pop_back();
                if (!frames.empty())
                    low[static_cast<std::size_t>(frames.back().v)] = std::min(low[static_cast<std::size_t>(frames.back().v)], low[static_cast<std::size_t>(v)]);
            }
        }
    }
    return comps;
}

} // namespace detail

/// The minimal irreducible right-resolving presentation of an irreducible
/// sofic shift: subset construction, merge, then the unique strongly
/// connected component presenting the full language.
inline SoficPresentation fischer_cover(const SoficPresentation& input) {
    if (!input.irreducible) throw error("fischer_cover: presentation not irreducible");
    SoficPresentation rr = input.right_resolving ? input : subset_presentation(input);
    SoficPresentation min = minimize_right_resolving(rr);
    auto comps = detail::scc_components(min.out);
    std::optional<SoficPresentation> best;
    for (const auto& comp : comps) {
        std::set<int> inside(comp.begin(), comp.end());
        // induced subgraph; skip trivial (no internal edge) components
        std::vector<std::tuple<int, Sym, int>> edges;
        std::vector<std::string> names;
        std::map<int, int> remap;
        for (int s : comp) {
            remap[s] = static_cast<int>(names.size());
            names.push_back(min.state_names[static_cast<std::size_t>(s)]);
        }
        for (int s : comp)
            for (const auto& e : min.out[static_cast<std::size_t>(s)])
                if (inside.count(e.to)) edges.emplace_back(remap[s], e.label, remap[e.to]);
        if (edges.empty()) continue;
        SoficPresentation cand;
        try {
            cand = make_presentation(min.alphabet, names, edges, true);
        } catch (const error&) {
            continue;
        }
        if (!cand.irreducible) continue;
        if (!language_equal(cand, input)) continue;
        if (!best || cand.state_count() < best->state_count()) best = std::move(cand);
    }
    if (!best) throw error("fischer_cover: no irreducible component presents the full shift");
    return *best;
}

/// Spec alias: right-resolving presentation of the same subshift, minimal
/// (Fischer cover) for irreducible inputs.
inline SoficPresentation determinize(const SoficPresentation& p) {
    return fischer_cover(p);
}

/// True when the presentation is already its own Fischer cover.
inline bool is_fischer_cover(const SoficPresentation& p) {
    if (!p.right_resolving || !p.irreducible) return false;
    return fischer_cover(p).state_count() == p.state_count();
}

/// X infinite (not a finite union of periodic orbits)? For an essential
/// irreducible graph: some state has two out-edges.
inline bool presents_infinite_shift(const SoficPresentation& p) {
    for (const auto& v : p.out)
        if (v.size() >= 2) return true;
    return false;
}

/// Enumerates L(X) ∩ A^n in lexicographic order of the declared symbol order.
inline std::vector<Word> words_of_length(const SoficPresentation& p, std::size_t n) {
    std::vector<Word> result;
    Word cur;
    std::set<int> states = p.all_states();
    auto rec = [&](auto&& self, const std::set<int>& st) -> void {
        if (cur.size() == n) {
            result.push_back(cur);
            return;
        }
        for (Sym a = 0; static_cast<std::size_t>(a) < p.alphabet.size(); ++a) {
            std::set<int> t = p.post(st, a);
            if (t.empty()) continue;
            cur.push_back(a);
            self(self, t);
            cur.pop_back();
        }
    };
    rec(rec, states);
    return result;
}

} // namespace gliderca
