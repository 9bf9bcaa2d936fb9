#pragma once

#include <sstream>
#include <string>

#include "core.hpp"
#include "presentation.hpp"

namespace gliderca {

/// Finite description of an eventually periodic bi-infinite configuration
/// ^∞(left) center (right)^∞. A full repetition of the left tail word ends
/// exactly at center_start; the right tail starts a fresh repetition at
/// center_start + |center|.
struct TailConfiguration {
    Word left;   // nonempty
    Word center; // possibly empty
    Word right;  // nonempty
    long long center_start = 0;

    long long right_start() const { return center_start + static_cast<long long>(center.size()); }

    Sym at(long long i) const {
        if (i >= center_start && i < right_start())
            return center[static_cast<std::size_t>(i - center_start)];
        if (i < center_start) {
            long long p = static_cast<long long>(left.size());
            long long off = ((i - center_start) % p + p) % p;
            return left[static_cast<std::size_t>(off)];
        }
        long long p = static_cast<long long>(right.size());
        long long off = (i - right_start()) % p;
        return right[static_cast<std::size_t>(off)];
    }

    /// x[i..j]; empty when j < i (the paper's own convention).
    Word sub(long long i, long long j) const {
        Word w;
        for (long long k = i; k <= j; ++k) w.push_back(at(k));
        return w;
    }

    bool matches_at(const Word& w, long long i) const {
        for (std::size_t k = 0; k < w.size(); ++k)
            if (at(i + static_cast<long long>(k)) != w[k]) return false;
        return true;
    }

    /// Canonical form: primitive tail words, full periods absorbed out of
    /// the center, and a fixed anchor for globally periodic points.
    void canonicalize() {
        if (left.empty() || right.empty()) throw error("configuration: empty tail word");
        // primitive roots; left keeps the phase that ends at center_start
        {
            std::size_t d = primitive_root_length(left);
            if (d != left.size()) {
                // ^∞w with |w| = kd ending at center_start equals ^∞(last d syms)
                left = Word(left.end() - static_cast<long>(d), left.end());
            }
            d = primitive_root_length(right);
            if (d != right.size()) right.resize(d);
        }
        bool more = true;
        while (more) {
            more = false;
            if (center.size() >= left.size() && std::equal(left.begin(), left.end(), center.begin())) {
                center.erase(center.begin(), center.begin() + static_cast<long>(left.size()));
                center_start += static_cast<long long>(left.size());
                more = true;
            }
            if (center.size() >= right.size() &&
                std::equal(right.rbegin(), right.rend(), center.rbegin())) {
                center.resize(center.size() - right.size());
                more = true;
            }
        }
        if (center.empty()) {
            // globally periodic iff the right pattern extends the left one
            long long pl = static_cast<long long>(left.size());
            long long pr = static_cast<long long>(right.size());
            long long l = std::lcm(pl, pr);
            bool periodic = true;
            for (long long k = 0; k < l && periodic; ++k) {
                Sym from_right = right[static_cast<std::size_t>(k % pr)];
                long long off = ((k % pl) + pl) % pl;
                periodic = (from_right == left[static_cast<std::size_t>(off)]);
            }
            if (periodic && pl == pr) {
                // globally periodic: normalize to the rotation anchored at 0
                Word root;
                for (long long i = 0; i < pl; ++i) {
                    long long off = (((i - center_start) % pl) + pl) % pl;
                    root.push_back(left[static_cast<std::size_t>(off)]);
                }
                left = root;
                right = root;
                center_start = 0;
            }
        }
    }

    TailConfiguration canonical() const {
        TailConfiguration c = *this;
        c.canonicalize();
        return c;
    }

    /// Exact equality of the represented bi-infinite sequences: pointwise on
    /// a window long enough (sum of tail periods on each side) that equality
    /// there forces equality of the periodic tails.
    bool operator==(const TailConfiguration& o) const {
        TailConfiguration a = canonical(), b = o.canonical();
        long long la = static_cast<long long>(a.left.size());
        long long lb = static_cast<long long>(b.left.size());
        long long ra = static_cast<long long>(a.right.size());
        long long rb = static_cast<long long>(b.right.size());
        long long lo = std::min(a.center_start, b.center_start) - (la + lb);
        long long hi = std::max(a.right_start(), b.right_start()) + (ra + rb);
        for (long long i = lo; i < hi; ++i)
            if (a.at(i) != b.at(i)) return false;
        return true;
    }
    bool operator!=(const TailConfiguration& o) const { return !(*this == o); }

    /// σ^k(x)[i] = x[i+k]: the whole description translates by -k.
    TailConfiguration shifted(long long k) const {
        TailConfiguration c = *this;
        c.center_start -= k;
        c.canonicalize();
        return c;
    }

    /// x[-∞,i] = ^∞w for *some* i, and symmetrically on the right: tail
    /// primitive roots must be rotations of w's.
    bool is_w_finite(const Word& w) const {
        Word root = w;
        root.resize(primitive_root_length(root));
        TailConfiguration c = canonical();
        auto rotation_of = [&](const Word& u) {
            if (u.size() != root.size()) return false;
            Word dd = root + root;
            return std::search(dd.begin(), dd.end(), u.begin(), u.end()) != dd.end();
        };
        return rotation_of(c.left) && rotation_of(c.right);
    }
};

inline TailConfiguration make_periodic_point(const Word& w, long long anchor = 0) {
    if (w.empty()) throw error("periodic point of empty word");
    TailConfiguration c;
    c.left = w;
    c.right = w;
    c.center = {};
    c.center_start = anchor;
    c.canonicalize();
    return c;
}

inline TailConfiguration make_configuration(const Word& left, const Word& center,
                                            const Word& right, long long center_start = 0) {
    TailConfiguration c;
    c.left = left;
    c.center = center;
    c.right = right;
    c.center_start = center_start;
    c.canonicalize();
    return c;
}

/// Gluing: result equals x on (-∞, i-1] and y on [i, ∞).
inline TailConfiguration glue(const TailConfiguration& x, const TailConfiguration& y, long long i) {
    TailConfiguration r;
    r.left = x.left;
    r.right = y.right;
    long long pl = static_cast<long long>(x.left.size());
    long long cs = std::min(i, x.center_start);
    // align down so a full left repetition ends at cs
    while (((x.center_start - cs) % pl + pl) % pl != 0) --cs;
    long long pr = static_cast<long long>(y.right.size());
    long long re = std::max(i, y.right_start());
    while ((re - y.right_start()) % pr != 0) ++re;
    r.center_start = cs;
    for (long long k = cs; k < re; ++k) r.center.push_back(k < i ? x.at(k) : y.at(k));
    r.canonicalize();
    return r;
}

/// All left occurrences of w in x within [lo, hi].
inline std::vector<long long> occurrences_left(const TailConfiguration& x, const Word& w,
                                               long long lo, long long hi) {
    if (w.empty()) throw error("occurrences of the empty word");
    std::vector<long long> r;
    for (long long i = lo; i <= hi; ++i)
        if (x.matches_at(w, i)) r.push_back(i);
    return r;
}

inline std::vector<long long> occurrences_right(const TailConfiguration& x, const Word& w,
                                                long long lo, long long hi) {
    std::vector<long long> r = occurrences_left(x, w, lo - static_cast<long long>(w.size()) + 1,
                                                hi - static_cast<long long>(w.size()) + 1);
    for (auto& v : r) v += static_cast<long long>(w.size()) - 1;
    return r;
}

/// Exact membership of the represented configuration in the shift presented
/// by p: a greatest-fixpoint left-tail state set threaded through the center
/// into a right-tail fixpoint.
inline bool configuration_in(const SoficPresentation& p, const TailConfiguration& x) {
    TailConfiguration c = x.canonical();
    for (Sym a : c.left)
        if (a < 0 || static_cast<std::size_t>(a) >= p.alphabet.size()) return false;
    for (Sym a : c.center)
        if (a < 0 || static_cast<std::size_t>(a) >= p.alphabet.size()) return false;
    for (Sym a : c.right)
        if (a < 0 || static_cast<std::size_t>(a) >= p.alphabet.size()) return false;
    // states with a left-infinite ^∞(left) path ending in them
    std::set<int> q = p.all_states();
    while (true) {
        std::set<int> next = q;
        for (Sym a : c.left) next = p.post(next, a);
        if (next == q) break;
        if (next.empty()) return false;
        q = next;
    }
    for (Sym a : c.center) {
        q = p.post(q, a);
        if (q.empty()) return false;
    }
    // states from which (right)^∞ is readable
    std::set<int> r = p.all_states();
    while (true) {
        std::set<int> keep;
        for (int s : r) {
            int cur = -1;
            std::set<int> reach{s};
            for (Sym a : c.right) {
                reach = p.post(reach, a);
                if (reach.empty()) break;
            }
            (void)cur;
            std::set<int> inter;
            for (int t : reach)
                if (r.count(t)) inter.insert(t);
            if (!inter.empty()) keep.insert(s);
        }
        if (keep == r) break;
        if (keep.empty()) return false;
        r = keep;
    }
    for (int s : q)
        if (r.count(s)) return true;
    return false;
}

/// Configuration literal: `<left> . <center> <right>` with optional `@<k>`
/// center anchor; `<left> . <right>` for an empty center.
inline TailConfiguration parse_configuration(const Alphabet& a, const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> tok;
    std::string t;
    while (in >> t) tok.push_back(t);
    long long anchor = 0;
    if (!tok.empty() && tok.back().size() > 1 && tok.back()[0] == '@') {
        anchor = std::stoll(tok.back().substr(1));
        tok.pop_back();
    }
    if (tok.size() < 3 || tok.size() > 4 || tok[1] != ".")
        throw error("configuration literal: expected '<left> . [<center>] <right>'");
    Word left = a.word(tok[0]);
    Word center = tok.size() == 4 ? a.word(tok[2]) : Word{};
    Word right = a.word(tok.back());
    if (left.empty() || right.empty()) throw error("configuration literal: empty tail");
    return make_configuration(left, center, right, anchor);
}

inline std::string configuration_str(const Alphabet& a, const TailConfiguration& x) {
    TailConfiguration c = x.canonical();
    std::string s = a.str(c.left) + " . ";
    if (!c.center.empty()) s += a.str(c.center) + " ";
    s += a.str(c.right);
    if (c.center_start != 0) s += " @" + std::to_string(c.center_start);
    return s;
}

} // namespace gliderca
