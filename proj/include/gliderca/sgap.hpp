#pragma once

#include <functional>
#include <optional>

#include "configuration.hpp"
#include "core.hpp"
#include "marker.hpp"
#include "presentation.hpp"

namespace gliderca {

/// S ⊆ N given either explicitly up to an eventually periodic tail (then
/// X_S is sofic and gets a presentation) or by a bounded membership
/// predicate (bounded-window semantics only).
struct SGapSpec {
    enum class Kind { EventuallyPeriodic, Predicate } kind = Kind::EventuallyPeriodic;
    // eventually periodic: n in S iff n < pre.size() ? pre[n] : period[(n - pre.size()) % period.size()]
    std::vector<char> pre;
    std::vector<char> period; // empty => finite S
    // predicate kind
    std::function<bool(long long)> predicate;
    long long bound = 0;

    static SGapSpec explicit_finite(const std::vector<long long>& members) {
        SGapSpec s;
        long long mx = -1;
        for (long long m : members) mx = std::max(mx, m);
        s.pre.assign(static_cast<std::size_t>(mx + 1), 0);
        for (long long m : members) s.pre[static_cast<std::size_t>(m)] = 1;
        return s;
    }

    static SGapSpec eventually_periodic(std::vector<char> pre, std::vector<char> period) {
        SGapSpec s;
        s.pre = std::move(pre);
        s.period = std::move(period);
        return s;
    }

    static SGapSpec from_predicate(std::function<bool(long long)> pred, long long bound) {
        SGapSpec s;
        s.kind = Kind::Predicate;
        s.predicate = std::move(pred);
        s.bound = bound;
        return s;
    }

    bool contains(long long n) const {
        if (n < 0) return false;
        if (kind == Kind::Predicate) {
            if (n > bound) throw error("S-gap predicate queried beyond its bound");
            return predicate(n);
        }
        if (n < static_cast<long long>(pre.size())) return pre[static_cast<std::size_t>(n)] != 0;
        if (period.empty()) return false;
        return period[static_cast<std::size_t>((n - static_cast<long long>(pre.size())) %
                                               static_cast<long long>(period.size()))] != 0;
    }

    bool empty() const {
        for (char c : pre)
            if (c) return false;
        for (char c : period)
            if (c) return false;
        return kind == Kind::Predicate ? false : true;
    }

    /// Some member >= n, searched within the representation (or bound). For
    /// the eventually periodic kind one period past max(n, preperiod) covers
    /// every possibility.
    std::optional<long long> member_at_least(long long n) const {
        long long limit = kind == Kind::Predicate
                              ? bound
                              : std::max(n, static_cast<long long>(pre.size())) +
                                    static_cast<long long>(period.size());
        for (long long m = std::max<long long>(n, 0); m <= limit; ++m)
            if (contains(m)) return m;
        return std::nullopt;
    }
};

/// Loop-and-chain presentation of the coded subshift generated by
/// {0 1^n : n in S}; only for the eventually periodic kind.
inline SoficPresentation build_sgap(const SGapSpec& spec) {
    if (spec.kind == SGapSpec::Kind::Predicate)
        throw error("build_sgap: predicate-kind S has no finite presentation");
    if (spec.empty()) throw error("build_sgap: S is empty");
    Alphabet a({"0", "1"});
    long long pre_n = static_cast<long long>(spec.pre.size());
    long long per_n = static_cast<long long>(spec.period.size());
    long long states = per_n ? pre_n + per_n : pre_n;
    // state k = "k ones read since the last 0"
    std::vector<std::string> names;
    for (long long k = 0; k < states; ++k) names.push_back("g" + std::to_string(k));
    std::vector<std::tuple<int, Sym, int>> edges;
    Sym s0 = a.sym("0"), s1 = a.sym("1");
    for (long long k = 0; k < states; ++k) {
        long long next = k + 1;
        if (per_n && next >= states) next = pre_n; // wrap into the period
        if (next < states) edges.emplace_back(static_cast<int>(k), s1, static_cast<int>(next));
        if (spec.contains(k)) edges.emplace_back(static_cast<int>(k), s0, 0);
    }
    return make_presentation(a, names, edges, true);
}

/// Generator-based membership oracle: w is a subword of some concatenation
/// of generators 0 1^{n_i} (interior gaps must lie in S; boundary runs only
/// need some member above them).
inline bool sgap_language_contains(const SGapSpec& spec, const Word& w) {
    // symbols: 0 -> 0, 1 -> 1 by id over the canonical {0,1} alphabet
    for (Sym s : w)
        if (s != 0 && s != 1) return false;
    if (w.empty()) return true;
    std::vector<long long> runs; // 1-runs split by 0s, including boundary runs
    std::vector<bool> interior;
    long long cur = 0;
    bool seen_zero = false;
    bool pending_interior = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 1) {
            ++cur;
        } else {
            runs.push_back(cur);
            interior.push_back(pending_interior);
            pending_interior = true;
            seen_zero = true;
            cur = 0;
        }
    }
    runs.push_back(cur);
    interior.push_back(false); // final run is a right boundary
    if (!seen_zero) {
        // pure 1-run: needs arbitrarily long or long-enough gaps
        return spec.member_at_least(runs[0]).has_value();
    }
    for (std::size_t i = 0; i < runs.size(); ++i) {
        bool left_boundary = (i == 0);
        bool right_boundary = (i + 1 == runs.size());
        if (left_boundary || right_boundary) {
            if (runs[i] > 0 && !spec.member_at_least(runs[i])) return false;
        } else {
            if (!spec.contains(runs[i])) return false;
        }
    }
    return true;
}

/// Bounded-window membership for configurations over a predicate-kind S:
/// every window of the given length must be in the language.
inline bool sgap_configuration_ok(const SGapSpec& spec, const TailConfiguration& x,
                                  long long margin = 4) {
    TailConfiguration c = x.canonical();
    long long lo = c.center_start - static_cast<long long>(c.left.size()) - margin;
    long long hi = c.right_start() + static_cast<long long>(c.right.size()) + margin;
    return sgap_language_contains(spec, c.sub(lo, hi));
}

struct GapInertReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Occurrence-preservation of 0 1^n 0 (n >= 2r) under a shiftless marker
/// automorphism F of radius <= r; checked on each sample for every n >= 2r
/// present in its window.
inline GapInertReport gapinert_check(const SGapSpec& spec, const MarkerAutomorphism& f,
                                     long long r, const std::vector<TailConfiguration>& samples) {
    GapInertReport rep;
    if (f.marker() != Word{0})
        rep.violations.push_back("F is not structurally shiftless (marker != \"0\")");
    if (f.radius() > r)
        rep.violations.push_back("claimed radius below the automorphism's actual radius");
    if (!rep.violations.empty()) {
        rep.ok = false;
        return rep;
    }
    for (std::size_t si = 0; si < samples.size(); ++si) {
        TailConfiguration x = samples[si].canonical();
        if (!sgap_configuration_ok(spec, x)) {
            rep.ok = false;
            rep.violations.push_back("sample " + std::to_string(si) + " not in X_S");
            continue;
        }
        TailConfiguration y = f.apply(x, false);
        long long lo = x.center_start - 2 * (f.radius() + 2);
        long long hi = x.right_start() + 2 * (f.radius() + 2);
        // collect run lengths present in the window
        std::set<long long> ns;
        {
            long long run = 0;
            for (long long i = lo; i <= hi; ++i) {
                if (x.at(i) == 1)
                    ++run;
                else {
                    if (run >= 2 * r) ns.insert(run);
                    run = 0;
                }
            }
        }
        for (long long n : ns) {
            Word pat;
            pat.push_back(0);
            for (long long i = 0; i < n; ++i) pat.push_back(1);
            pat.push_back(0);
            auto ox = occurrences_left(x, pat, lo, hi);
            auto oy = occurrences_left(y, pat, lo, hi);
            if (ox != oy) {
                rep.ok = false;
                rep.violations.push_back("sample " + std::to_string(si) + ": occurrences of 01^" +
                                         std::to_string(n) + "0 moved");
            }
        }
    }
    return rep;
}

} // namespace gliderca
