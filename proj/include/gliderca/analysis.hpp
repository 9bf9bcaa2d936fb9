#pragma once

#include <functional>
#include <optional>
#include <string>

#include "configuration.hpp"
#include "core.hpp"
#include "glider.hpp"
#include "marker.hpp"

namespace gliderca {

using ConfigMap = std::function<TailConfiguration(const TailConfiguration&)>;

/// Rewrites a z-finite configuration so both tail words are exactly z
/// (tails that are rotations of z get re-phased into the center).
inline std::optional<TailConfiguration> normalize_z_tails(const Word& z,
                                                          const TailConfiguration& x0) {
    TailConfiguration x = x0.canonical();
    long long p = static_cast<long long>(z.size());
    if (!x.is_w_finite(z)) return std::nullopt;
    if (x.left == z && x.right == z) return x;
    // find an aligned fresh-z end at or left of center_start
    long long cs = x.center_start;
    long long lo = cs;
    bool found = false;
    for (long long k = 0; k < p; ++k) {
        bool ok = true;
        for (long long i = 0; i < p && ok; ++i)
            ok = x.at(cs - k - p + i) == z[static_cast<std::size_t>(i)];
        if (ok) {
            lo = cs - k;
            found = true;
            break;
        }
    }
    if (!found) return std::nullopt;
    long long rs = x.right_start();
    long long hi = rs;
    found = false;
    for (long long k = 0; k < p; ++k) {
        bool ok = true;
        for (long long i = 0; i < p && ok; ++i)
            ok = x.at(rs + k + i) == z[static_cast<std::size_t>(i)];
        if (ok) {
            hi = rs + k;
            found = true;
            break;
        }
    }
    if (!found) return std::nullopt;
    return make_configuration(z, x.sub(lo, hi - 1), z, lo);
}

enum class FleetSide { None, Left, Right, Both };

inline const char* fleet_side_name(FleetSide s) {
    switch (s) {
    case FleetSide::None: return "none";
    case FleetSide::Left: return "left";
    case FleetSide::Right: return "right";
    case FleetSide::Both: return "both";
    }
    return "?";
}

namespace detail {

struct ZWindow {
    TailConfiguration x; // normalized, tails = z
    long long lo, hi;    // aligned anchors: x[-inf,lo) and [hi,inf) pure z
};

inline ZWindow z_window(const GliderSystem& sys, const TailConfiguration& x0) {
    auto norm = normalize_z_tails(sys.z, x0);
    if (!norm) throw error("configuration is not z-finite for this system");
    ZWindow w;
    w.x = *norm;
    long long p = sys.p;
    w.lo = w.x.center_start - (sys.q + 2) * p;
    w.hi = w.x.right_start() + (sys.q + 2) * p;
    return w;
}

} // namespace detail

/// Fleet membership by matching against (gl z z^*)^* / (z^* z gr)^*.
/// `both` exactly on the orbit of z^Z.
inline FleetSide is_fleet(const GliderSystem& sys, const TailConfiguration& x) {
    detail::ZWindow w = detail::z_window(sys, x);
    Word word = w.x.sub(w.lo, w.hi - 1);
    bool l = sys.fleets.left_full->accepts(word);
    bool r = sys.fleets.right_full->accepts(word);
    if (l && r) return FleetSide::Both;
    if (l) return FleetSide::Left;
    if (r) return FleetSide::Right;
    return FleetSide::None;
}

namespace detail {

/// validL(i) over i in [lo, hi]: x[-inf, i-1] in ^inf z L_ell.
inline std::vector<char> sweep_left(const GliderSystem& sys, const ZWindow& w, long long top) {
    Word word = w.x.sub(w.lo, top - 1);
    return sys.fleets.left_prefix->prefix_sweep(word); // index i-w.lo
}

/// validR(k) over k: x[k+1, inf) in L_arr z^inf, computed by a reversed sweep
/// anchored at w.hi. Returned vector v: v[w.hi - 1 - k] answers k.
inline std::vector<char> sweep_right(const GliderSystem& sys, const ZWindow& w, long long bottom) {
    Word word = w.x.sub(bottom, w.hi - 1);
    Word rev(word.rbegin(), word.rend());
    return sys.fleets.right_rev->prefix_sweep(rev);
}

} // namespace detail

enum class BoundWordKind { OneZ, OnePlusZ, UjZ, WS };

struct BoundReport {
    bool left = true;
    long long i = 0; // maximal split per the definition (left case)
    long long k = 0; // the bound
    Word type_word;  // left case only
    BoundWordKind kind = BoundWordKind::OneZ;
};

/// Left bound and type word per the structural definition; `n_variant`
/// selects the U'_{j,n} candidate family of G_{X,n} (no W'_S branch).
inline BoundReport left_bound(const GliderSystem& sys, const TailConfiguration& x0) {
    detail::ZWindow w = detail::z_window(sys, x0);
    if (w.x.center.empty()) throw error("left_bound: configuration is in orb(z^Z)");
    long long top = w.hi + sys.p;
    std::vector<char> sweep = detail::sweep_left(sys, w, top);
    long long best = w.lo - 1;
    for (long long i = top; i >= w.lo; --i)
        if (sweep[static_cast<std::size_t>(i - w.lo)]) {
            best = i;
            break;
        }
    if (best < w.lo) throw error("left_bound: no valid split (internal)");
    if (best >= w.x.right_start()) throw error("left_bound: configuration is a left glider fleet");

    std::vector<std::pair<Word, BoundWordKind>> candidates;
    candidates.emplace_back(sys.one + sys.z, BoundWordKind::OneZ);
    candidates.emplace_back(sys.gr + sys.z, BoundWordKind::OnePlusZ);
    for (const auto& tab : sys.p4_tables)
        for (const Word& u : tab.elements) candidates.emplace_back(u + sys.z, BoundWordKind::UjZ);
    if (sys.has_p3)
        for (const auto& tab : sys.p3_tables)
            for (const Word& ws : tab.w_s_set) candidates.emplace_back(ws, BoundWordKind::WS);

    std::optional<std::pair<Word, BoundWordKind>> match;
    for (const auto& c : candidates)
        if (w.x.matches_at(c.first, best)) {
            if (match && match->first != c.first)
                throw error("left_bound: ambiguous type word");
            if (!match) match = c;
        }
    if (!match) throw error("left_bound: no type word matches (not in normal form?)");
    BoundReport r;
    r.left = true;
    r.i = best;
    r.type_word = match->first;
    r.kind = match->second;
    if (match->second == BoundWordKind::WS)
        r.k = best + static_cast<long long>((sys.one + sys.z).size()) - 1;
    else
        r.k = best + static_cast<long long>(match->first.size()) - 1;
    return r;
}

/// Right bound: minimal k with x[k+1, inf) in L_arr z^inf.
inline BoundReport right_bound(const GliderSystem& sys, const TailConfiguration& x0) {
    detail::ZWindow w = detail::z_window(sys, x0);
    if (w.x.center.empty()) throw error("right_bound: configuration is in orb(z^Z)");
    long long bottom = w.lo - sys.p;
    std::vector<char> sweep = detail::sweep_right(sys, w, bottom);
    // sweep index: (w.hi - 1 - k) prefix length answers k
    std::optional<long long> best;
    for (long long k = bottom - 1; k <= w.hi - 1; ++k) {
        std::size_t idx = static_cast<std::size_t>(w.hi - 1 - k);
        if (sweep[idx]) {
            best = k;
            break;
        }
    }
    if (!best) throw error("right_bound: no valid split (is x a right glider fleet?)");
    if (*best < w.x.center_start - sys.p)
        throw error("right_bound: configuration is a right glider fleet");
    BoundReport r;
    r.left = false;
    r.i = *best;
    r.k = *best;
    return r;
}

struct Trajectory {
    const GliderSystem* system = nullptr;
    std::vector<TailConfiguration> rows; // rows[t] = G^t(x)
};

inline Trajectory simulate(const GliderSystem& sys, const TailConfiguration& x, long long t,
                           bool check_membership = true) {
    if (check_membership && !configuration_in(*sys.ambient, x))
        throw error("simulate: configuration not in the ambient shift");
    Trajectory tr;
    tr.system = &sys;
    tr.rows.push_back(x.canonical());
    CAPipeline g = sys.G();
    for (long long i = 0; i < t; ++i)
        tr.rows.push_back(g.apply(tr.rows.back(), check_membership));
    return tr;
}

struct MonotonicityReport {
    bool ok = true;
    bool strict_left = false, strict_right = false;
    long long strict_left_t = -1, strict_right_t = -1;
    long long violation_t = -1;
    long long fleet_t = -1; // configuration became a fleet / z^Z (bounds undefined)
};

/// Left bound never decreases (strictly increases within the horizon);
/// right bound never increases (strictly decreases within the horizon).
inline MonotonicityReport check_bound_monotonicity(const GliderSystem& sys,
                                                   const TailConfiguration& x0, long long horizon) {
    MonotonicityReport rep;
    TailConfiguration x = x0.canonical();
    if (is_fleet(sys, x) != FleetSide::None) throw error("bound monotonicity: fleet input");
    long long prev_l = left_bound(sys, x).k;
    long long prev_r = right_bound(sys, x).k;
    CAPipeline g = sys.G();
    for (long long t = 1; t <= horizon; ++t) {
        x = g.apply(x, false);
        if (is_fleet(sys, x) != FleetSide::None) {
            // fleeted: both frontiers have fully resolved
            rep.fleet_t = t;
            if (!rep.strict_left) {
                rep.strict_left = true;
                rep.strict_left_t = t;
            }
            if (!rep.strict_right) {
                rep.strict_right = true;
                rep.strict_right_t = t;
            }
            return rep;
        }
        long long l = left_bound(sys, x).k;
        long long r = right_bound(sys, x).k;
        if (l < prev_l || r > prev_r) {
            rep.ok = false;
            rep.violation_t = t;
            return rep;
        }
        if (l > prev_l && !rep.strict_left) {
            rep.strict_left = true;
            rep.strict_left_t = t;
        }
        if (r < prev_r && !rep.strict_right) {
            rep.strict_right = true;
            rep.strict_right_t = t;
        }
        prev_l = l;
        prev_r = r;
    }
    return rep;
}

struct Decomposition {
    long long n_left = 0, n_right = 0, m = 0;
};

/// The diffusion predicate: y[-N_l, N_r] = z^M with N_l, N_r >= N, the left
/// part a left fleet tail and the right part a right fleet head. Evaluated
/// directly on the row, independent of any search that produced it.
inline std::optional<Decomposition> diffusion_decomposition(const GliderSystem& sys,
                                                            const TailConfiguration& y0,
                                                            long long want) {
    detail::ZWindow w;
    try {
        w = detail::z_window(sys, y0);
    } catch (const error&) {
        return std::nullopt;
    }
    long long p = sys.p;
    // the anchors hug the center, which may have drifted far from the
    // origin; the decomposition is asked about [-want, want]
    while (w.lo > -want - (sys.q + 2) * p) w.lo -= p;
    while (w.hi < want + (sys.q + 2) * p) w.hi += p;
    for (long long phase = 0; phase < p; ++phase) {
        // maximal aligned z-run containing [-want, want] with fresh z at
        // positions ≡ -want + phase (mod p)
        long long start = -want + phase;
        auto is_z_at = [&](long long pos) {
            for (long long i = 0; i < p; ++i)
                if (w.x.at(pos + i) != sys.z[static_cast<std::size_t>(i)]) return false;
            return true;
        };
        // cover [-want, want]
        long long a = start;
        while (a > w.lo - p && is_z_at(a - p)) a -= p;
        long long b = start;
        while (b + p <= w.hi + p && is_z_at(b)) b += p;
        // the run is [a, b): need it to cover [-want, want]
        if (a > -want || b <= want) continue;
        std::vector<char> sl = detail::sweep_left(sys, w, w.hi + p);
        std::vector<char> sr = detail::sweep_right(sys, w, w.lo - p);
        std::optional<long long> lo_pick, hi_pick;
        for (long long lo = a; lo <= -want; lo += p) {
            if (lo < w.lo) continue;
            if (sl[static_cast<std::size_t>(lo - w.lo)]) {
                lo_pick = lo;
                break;
            }
        }
        if (!lo_pick) continue;
        for (long long hi = b - 1; hi >= want; hi -= p) {
            if (hi > w.hi - 1) continue;
            if ((hi + 1 - *lo_pick) % p) continue;
            std::size_t idx = static_cast<std::size_t>(w.hi - 1 - hi);
            if (sr[idx]) {
                hi_pick = hi;
                break;
            }
        }
        if (!hi_pick) continue;
        Decomposition d;
        d.n_left = -*lo_pick;
        d.n_right = *hi_pick;
        d.m = (*hi_pick + 1 - *lo_pick) / p;
        return d;
    }
    return std::nullopt;
}

struct DiffusionResult {
    bool found = false;
    long long t = 0;
    Decomposition d;
    TailConfiguration row;
    long long ceiling = 0;
};

/// Searches t upward until the decomposition holds; a ceiling stop is
/// reported as inconclusive, never as refutation.
inline DiffusionResult detect_diffusion(const GliderSystem& sys, const TailConfiguration& x0,
                                        long long want, std::optional<long long> ceiling_opt = {}) {
    TailConfiguration x = x0.canonical();
    long long len = static_cast<long long>(x.center.size());
    long long ceiling = ceiling_opt ? *ceiling_opt : 10 * len * len + 1000;
    DiffusionResult res;
    res.ceiling = ceiling;
    CAPipeline g = sys.G();
    for (long long t = 0; t <= ceiling; ++t) {
        if (auto d = diffusion_decomposition(sys, x, want)) {
            res.found = true;
            res.t = t;
            res.d = *d;
            res.row = x;
            return res;
        }
        x = g.apply(x, false);
    }
    res.row = x;
    return res;
}

struct SpeedReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Fleets travel at exactly ±pq per step; z-finite non-fleets are witnesses
/// of G(x) != σ^{±pq}(x).
inline SpeedReport speed_check(const GliderSystem& sys,
                               const std::vector<TailConfiguration>& samples, long long steps) {
    SpeedReport rep;
    CAPipeline g = sys.G();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        FleetSide side = is_fleet(sys, samples[i]);
        TailConfiguration cur = samples[i].canonical();
        if (side == FleetSide::None) {
            TailConfiguration img = g.apply(cur, false);
            if (img == cur.shifted(sys.s) || img == cur.shifted(-sys.s)) {
                rep.ok = false;
                rep.violations.push_back("non-fleet sample " + std::to_string(i) +
                                         " moved like a fleet");
            }
            continue;
        }
        long long dir = side == FleetSide::Right ? -sys.s : sys.s;
        for (long long t = 1; t <= steps; ++t) {
            cur = g.apply(cur, false);
            if (cur != samples[i].shifted(dir * t)) {
                rep.ok = false;
                rep.violations.push_back("fleet sample " + std::to_string(i) +
                                         " broke speed at t=" + std::to_string(t));
                break;
            }
        }
    }
    return rep;
}

struct CommuteReport {
    bool commutes = true;
    std::size_t witness_sample = 0;
    TailConfiguration fg, gf;
};

inline CommuteReport commute_check(const ConfigMap& f, const ConfigMap& g,
                                   const std::vector<TailConfiguration>& samples) {
    CommuteReport rep;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        TailConfiguration a = f(g(samples[i]));
        TailConfiguration b = g(f(samples[i]));
        if (a != b) {
            rep.commutes = false;
            rep.witness_sample = i;
            rep.fg = a;
            rep.gf = b;
            return rep;
        }
    }
    return rep;
}

struct ProbeReport {
    bool refuted = false;
    std::size_t witness_pair = 0;
    long long witness_t = -1;
};

/// Semi-decision blocking probe: iterates F on pairs from cyl(w, 0) and
/// compares the column [p_off, p_off + e). The claimed radius r only gates
/// the parameter contract |w| >= e >= r + 1.
inline ProbeReport blocking_word_probe(const ConfigMap& f, const Word& w, long long r, long long e,
                                       long long p_off,
                                       const std::vector<std::pair<TailConfiguration, TailConfiguration>>& pairs,
                                       long long horizon) {
    if (e < r + 1 || static_cast<long long>(w.size()) < e || p_off < 0 ||
        p_off > static_cast<long long>(w.size()) - e)
        throw error("blocking_word_probe: parameter contract violated");
    ProbeReport rep;
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        TailConfiguration x = pairs[pi].first, y = pairs[pi].second;
        if (!x.matches_at(w, 0) || !y.matches_at(w, 0))
            throw error("blocking_word_probe: pair does not lie in cyl(w, 0)");
        for (long long t = 1; t <= horizon; ++t) {
            x = f(x);
            y = f(y);
            if (x.sub(p_off, p_off + e - 1) != y.sub(p_off, p_off + e - 1)) {
                rep.refuted = true;
                rep.witness_pair = pi;
                rep.witness_t = t;
                return rep;
            }
        }
    }
    return rep;
}

/// ---- space-time rendering ---------------------------------------------

inline std::string render_text(const Alphabet& a, const std::vector<TailConfiguration>& rows,
                               long long lo, long long hi) {
    if (hi < lo) throw error("render: empty window");
    std::string out;
    bool compact = a.single_char();
    for (const auto& row : rows) {
        for (long long i = lo; i <= hi; ++i) {
            const std::string& n = a.name(row.at(i));
            if (compact)
                out += n;
            else {
                out += n;
                out += ' ';
            }
        }
        out += '\n';
    }
    return out;
}

/// Plain PBM (P1): symbol named "0" maps to white, everything else black.
inline std::string render_pbm(const Alphabet& a, const std::vector<TailConfiguration>& rows,
                              long long lo, long long hi) {
    if (hi < lo) throw error("render: empty window");
    long long wdt = hi - lo + 1;
    std::string out = "P1\n" + std::to_string(wdt) + " " + std::to_string(rows.size()) + "\n";
    Sym white = a.try_sym("0");
    for (const auto& row : rows) {
        for (long long i = lo; i <= hi; ++i) {
            out += (row.at(i) == white) ? '0' : '1';
            out += (i == hi) ? '\n' : ' ';
        }
    }
    return out;
}

/// Plain PPM (P3) with a fixed small palette indexed by symbol id.
inline std::string render_ppm(const Alphabet& a, const std::vector<TailConfiguration>& rows,
                              long long lo, long long hi) {
    if (hi < lo) throw error("render: empty window");
    static const int palette[][3] = {{255, 255, 255}, {0, 0, 0},     {220, 50, 47},
                                     {38, 139, 210},  {133, 153, 0}, {181, 137, 0},
                                     {211, 54, 130},  {42, 161, 152}};
    long long wdt = hi - lo + 1;
    std::string out =
        "P3\n" + std::to_string(wdt) + " " + std::to_string(rows.size()) + "\n255\n";
    for (const auto& row : rows) {
        for (long long i = lo; i <= hi; ++i) {
            int idx = static_cast<int>(row.at(i)) % 8;
            out += std::to_string(palette[idx][0]) + " " + std::to_string(palette[idx][1]) + " " +
                   std::to_string(palette[idx][2]);
            out += (i == hi) ? '\n' : ' ';
        }
    }
    (void)a;
    return out;
}

} // namespace gliderca
