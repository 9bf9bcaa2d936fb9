#pragma once

#include <functional>
#include <unordered_map>

#include "configuration.hpp"
#include "core.hpp"
#include "presentation.hpp"

namespace gliderca {

/// A morphism given by a local rule: F(x)[i] = f(x[i+m], ..., x[i+a]).
/// The rule is total on the (a-m+1)-words of the domain shift's language.
struct SlidingBlockCode {
    Alphabet domain;
    Alphabet image;
    long long memory = 0;       // m
    long long anticipation = 0; // a, with m <= a
    std::unordered_map<Word, Sym, WordHash> rule;

    long long diameter() const { return anticipation - memory; }
    long long window() const { return diameter() + 1; }

    Sym eval(const Word& w) const {
        auto it = rule.find(w);
        if (it == rule.end())
            throw error("sliding-block code: window '" + domain.str(w) + "' outside rule domain");
        return it->second;
    }
};

/// Identity code on an alphabet (m = a = 0).
inline SlidingBlockCode identity_code(const Alphabet& a) {
    SlidingBlockCode c;
    c.domain = c.image = a;
    c.memory = c.anticipation = 0;
    for (Sym s = 0; static_cast<std::size_t>(s) < a.size(); ++s) c.rule[{s}] = s;
    return c;
}

/// The shift map realized inside the code abstraction: m = a = 1, identity
/// local rule read at offset +1.
inline SlidingBlockCode shift_code(const Alphabet& a) {
    SlidingBlockCode c = identity_code(a);
    c.memory = c.anticipation = 1;
    return c;
}

/// Builds a code from a callback over the domain language's d+1-windows.
inline SlidingBlockCode make_code(const SoficPresentation& domain_p, Alphabet image,
                                  long long memory, long long anticipation,
                                  const std::function<Sym(const Word&)>& f) {
    if (memory > anticipation) throw error("sliding-block code: m > a");
    SlidingBlockCode c;
    c.domain = domain_p.alphabet;
    c.image = std::move(image);
    c.memory = memory;
    c.anticipation = anticipation;
    for (const Word& w : words_of_length(domain_p, static_cast<std::size_t>(anticipation - memory + 1)))
        c.rule[w] = f(w);
    return c;
}

/// Image configuration of x under c. Tails map to periodic tails of the
/// same word length; the center is recomputed over center ± diameter.
inline TailConfiguration apply_code(const SlidingBlockCode& c, const TailConfiguration& x0) {
    TailConfiguration x = x0.canonical();
    long long m = c.memory, a = c.anticipation;
    long long cs = x.center_start - a;
    long long ce = x.right_start() - m; // ce >= cs always
    auto image_at = [&](long long i) { return c.eval(x.sub(i + m, i + a)); };
    TailConfiguration y;
    y.center_start = cs;
    long long pl = static_cast<long long>(x.left.size());
    long long pr = static_cast<long long>(x.right.size());
    for (long long k = cs - pl; k < cs; ++k) y.left.push_back(image_at(k));
    for (long long k = cs; k < ce; ++k) y.center.push_back(image_at(k));
    for (long long k = ce; k < ce + pr; ++k) y.right.push_back(image_at(k));
    y.canonicalize();
    return y;
}

/// Image presentation: pass to the (d+1)-block graph and relabel each edge
/// by the local rule output, then reduce to the Fischer cover.
inline SoficPresentation apply_code_to_presentation(const SlidingBlockCode& c,
                                                    const SoficPresentation& p) {
    long long d = c.diameter();
    // vertices: d-edge paths (words with explicit state path); for d = 0 the
    // original states
    struct PathNode {
        std::vector<int> states; // d+1 states
        Word labels;             // d labels
    };
    std::vector<PathNode> nodes;
    std::map<std::pair<std::vector<int>, Word>, int> id;
    auto intern = [&](PathNode n) {
        auto key = std::make_pair(n.states, n.labels);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        int k = static_cast<int>(nodes.size());
        id.emplace(key, k);
        nodes.push_back(std::move(n));
        return k;
    };
    // enumerate all d-paths
    {
        std::vector<PathNode> frontier;
        for (int s = 0; s < p.state_count(); ++s) frontier.push_back({{s}, {}});
        for (long long step = 0; step < d; ++step) {
            std::vector<PathNode> next;
            for (const auto& n : frontier)
                for (const auto& e : p.out[static_cast<std::size_t>(n.states.back())]) {
                    PathNode m2 = n;
                    m2.states.push_back(e.to);
                    m2.labels.push_back(e.label);
                    next.push_back(std::move(m2));
                }
            frontier = std::move(next);
        }
        for (auto& n : frontier) intern(std::move(n));
    }
    std::vector<std::tuple<int, Sym, int>> edges;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const PathNode& n = nodes[i];
        for (const auto& e : p.out[static_cast<std::size_t>(n.states.back())]) {
            PathNode nx;
            nx.states.assign(n.states.begin() + 1, n.states.end());
            nx.states.push_back(e.to);
            nx.labels.assign(n.labels.begin() + (d > 0 ? 1 : 0), n.labels.end());
            if (d > 0) nx.labels.push_back(e.label);
            Word window = n.labels;
            window.push_back(e.label);
            edges.emplace_back(static_cast<int>(i), c.eval(window), intern(std::move(nx)));
        }
    }
    // image alphabet ids are kept identical to c.image so that words and
    // configurations stay valid across a recoding step
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nodes.size(); ++i) names.push_back("b" + std::to_string(i));
    SoficPresentation block = make_presentation(c.image, names, edges, true);
    return fischer_cover(block);
}

/// Result of a higher power recoding: block presentation plus the conjugacy
/// pair (β_n, β_n⁻¹).
struct HigherPowerResult {
    SoficPresentation presentation;
    SlidingBlockCode beta;
    SlidingBlockCode beta_inverse;
};

/// β_n(x)[i] = x[i-k, i-k+n-1] with k = ⌊n/2⌋, over the block alphabet.
inline HigherPowerResult higher_power(const SoficPresentation& p, long long n) {
    if (n < 1) throw error("higher_power: n must be >= 1");
    long long k = n / 2;
    std::vector<Word> blocks = words_of_length(p, static_cast<std::size_t>(n));
    Alphabet ba;
    bool compact = p.alphabet.single_char();
    std::unordered_map<Word, Sym, WordHash> block_id;
    for (const Word& w : blocks) {
        std::string name;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i && !compact) name += '.';
            name += p.alphabet.name(w[i]);
        }
        block_id[w] = ba.add(name);
    }
    HigherPowerResult r;
    r.beta = make_code(p, ba, -k, -k + n - 1, [&](const Word& w) { return block_id.at(w); });
    // inverse: 1-block map picking component k of the block symbol
    r.beta_inverse.domain = ba;
    r.beta_inverse.image = p.alphabet;
    r.beta_inverse.memory = r.beta_inverse.anticipation = 0;
    for (const Word& w : blocks) r.beta_inverse.rule[{block_id.at(w)}] = w[static_cast<std::size_t>(k)];
    r.presentation = apply_code_to_presentation(r.beta, p);
    return r;
}

} // namespace gliderca
