#pragma once

#include <deque>
#include <map>
#include <memory>
#include <vector>

#include "core.hpp"

namespace gliderca {

/// Thompson NFA over symbol ids, built from word literals with concat,
/// alternation, star and plus. Small and only used for the glider-fleet
/// regular languages and their prefix sweeps.
class Nfa {
public:
    struct Regex;
    using Re = std::shared_ptr<const Regex>;
    struct Regex {
        enum Kind { LIT, CAT, ALT, STAR } kind;
        Word lit;
        Re a, b;
    };

    static Re lit(Word w) {
        auto r = std::make_shared<Regex>();
        r->kind = Regex::LIT;
        r->lit = std::move(w);
        return r;
    }
    static Re cat(Re a, Re b) {
        auto r = std::make_shared<Regex>();
        r->kind = Regex::CAT;
        r->a = std::move(a);
        r->b = std::move(b);
        return r;
    }
    static Re alt(Re a, Re b) {
        auto r = std::make_shared<Regex>();
        r->kind = Regex::ALT;
        r->a = std::move(a);
        r->b = std::move(b);
        return r;
    }
    static Re star(Re a) {
        auto r = std::make_shared<Regex>();
        r->kind = Regex::STAR;
        r->a = std::move(a);
        return r;
    }
    static Re plus(Re a) { return cat(a, star(a)); }

    explicit Nfa(const Re& re) {
        auto [s, t] = build(re);
        start_ = s;
        accept_ = t;
        closures_.resize(eps_.size());
        for (std::size_t i = 0; i < eps_.size(); ++i) {
            std::vector<char> seen(eps_.size(), 0);
            std::deque<int> q{static_cast<int>(i)};
            seen[i] = 1;
            while (!q.empty()) {
                int v = q.front();
                q.pop_front();
                closures_[i].push_back(v);
                for (int w : eps_[static_cast<std::size_t>(v)])
                    if (!seen[static_cast<std::size_t>(w)]) {
                        seen[static_cast<std::size_t>(w)] = 1;
                        q.push_back(w);
                    }
            }
        }
    }

    /// For each prefix length k of w (0..|w|), whether w[0..k) is accepted.
    std::vector<char> prefix_sweep(const Word& w) const {
        std::vector<char> cur(eps_.size(), 0);
        for (int v : closures_[static_cast<std::size_t>(start_)]) cur[static_cast<std::size_t>(v)] = 1;
        std::vector<char> out;
        out.push_back(cur[static_cast<std::size_t>(accept_)]);
        for (Sym a : w) {
            std::vector<char> next(eps_.size(), 0);
            for (std::size_t v = 0; v < cur.size(); ++v) {
                if (!cur[v]) continue;
                for (const auto& [lab, to] : trans_[v])
                    if (lab == a)
                        for (int c : closures_[static_cast<std::size_t>(to)])
                            next[static_cast<std::size_t>(c)] = 1;
            }
            cur = std::move(next);
            out.push_back(cur[static_cast<std::size_t>(accept_)]);
        }
        return out;
    }

    bool accepts(const Word& w) const { return prefix_sweep(w).back() != 0; }

private:
    std::vector<std::vector<std::pair<Sym, int>>> trans_;
    std::vector<std::vector<int>> eps_;
    std::vector<std::vector<int>> closures_;
    int start_ = 0, accept_ = 0;

    int node() {
        trans_.emplace_back();
        eps_.emplace_back();
        return static_cast<int>(trans_.size()) - 1;
    }

    std::pair<int, int> build(const Re& re) {
        switch (re->kind) {
        case Regex::LIT: {
            int s = node(), cur = s;
            for (Sym a : re->lit) {
                int nx = node();
                trans_[static_cast<std::size_t>(cur)].emplace_back(a, nx);
                cur = nx;
            }
            return {s, cur};
        }
        case Regex::CAT: {
            auto [s1, t1] = build(re->a);
            auto [s2, t2] = build(re->b);
            eps_[static_cast<std::size_t>(t1)].push_back(s2);
            return {s1, t2};
        }
        case Regex::ALT: {
            auto [s1, t1] = build(re->a);
            auto [s2, t2] = build(re->b);
            int s = node(), t = node();
            eps_[static_cast<std::size_t>(s)].push_back(s1);
            eps_[static_cast<std::size_t>(s)].push_back(s2);
            eps_[static_cast<std::size_t>(t1)].push_back(t);
            eps_[static_cast<std::size_t>(t2)].push_back(t);
            return {s, t};
        }
        case Regex::STAR: {
            auto [s1, t1] = build(re->a);
            int s = node();
            eps_[static_cast<std::size_t>(s)].push_back(s1);
            eps_[static_cast<std::size_t>(t1)].push_back(s);
            return {s, s};
        }
        }
        throw error("nfa: bad regex node");
    }
};

/// Aho-Corasick multi-pattern matcher over symbol ids.
class AhoCorasick {
public:
    explicit AhoCorasick(const std::vector<Word>& patterns) : patterns_(patterns) {
        nodes_.push_back({});
        for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
            int cur = 0;
            for (Sym a : patterns[pi]) {
                auto it = nodes_[static_cast<std::size_t>(cur)].next.find(a);
                if (it == nodes_[static_cast<std::size_t>(cur)].next.end()) {
                    nodes_.push_back({});
                    it = nodes_[static_cast<std::size_t>(cur)].next.emplace(a, static_cast<int>(nodes_.size()) - 1).first;
                }
                cur = it->second;
            }
            nodes_[static_cast<std::size_t>(cur)].outputs.push_back(static_cast<int>(pi));
        }
        // fail links, BFS
        std::deque<int> q;
        for (auto& [a, v] : nodes_[0].next) {
            nodes_[static_cast<std::size_t>(v)].fail = 0;
            q.push_back(v);
        }
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (auto& [a, v] : nodes_[static_cast<std::size_t>(u)].next) {
                int f = nodes_[static_cast<std::size_t>(u)].fail;
                while (f && !nodes_[static_cast<std::size_t>(f)].next.count(a)) f = nodes_[static_cast<std::size_t>(f)].fail;
                auto it = nodes_[static_cast<std::size_t>(f)].next.find(a);
                int link = (it != nodes_[static_cast<std::size_t>(f)].next.end() && it->second != v) ? it->second : 0;
                nodes_[static_cast<std::size_t>(v)].fail = link;
                const auto& fo = nodes_[static_cast<std::size_t>(link)].outputs;
                auto& vo = nodes_[static_cast<std::size_t>(v)].outputs;
                vo.insert(vo.end(), fo.begin(), fo.end());
                q.push_back(v);
            }
        }
    }

    struct Hit {
        long long pos; // start offset within the scanned word
        int pattern;
    };

    /// All occurrences (start offset, pattern index) in w, ascending by pos.
    std::vector<Hit> find_all(const Word& w) const {
        std::vector<Hit> hits;
        int cur = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            Sym a = w[i];
            while (cur && !nodes_[static_cast<std::size_t>(cur)].next.count(a)) cur = nodes_[static_cast<std::size_t>(cur)].fail;
            auto it = nodes_[static_cast<std::size_t>(cur)].next.find(a);
            cur = it == nodes_[static_cast<std::size_t>(cur)].next.end() ? 0 : it->second;
            for (int pi : nodes_[static_cast<std::size_t>(cur)].outputs)
                hits.push_back({static_cast<long long>(i + 1) - static_cast<long long>(patterns_[static_cast<std::size_t>(pi)].size()), pi});
        }
        std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
            return a.pos != b.pos ? a.pos < b.pos : a.pattern < b.pattern;
        });
        return hits;
    }

private:
    struct Node {
        std::map<Sym, int> next;
        int fail = 0;
        std::vector<int> outputs;
    };
    std::vector<Node> nodes_;
    std::vector<Word> patterns_;
};

} // namespace gliderca
