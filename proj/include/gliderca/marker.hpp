#pragma once

#include <memory>
#include <numeric>

#include "configuration.hpp"
#include "core.hpp"
#include "matcher.hpp"
#include "presentation.hpp"
#include "syntactic.hpp"

namespace gliderca {

/// All overlaps of u and v: words that are a suffix of u and a prefix of v,
/// plus containments. Trivial overlaps are the empty word and w = u = v.
struct Overlap {
    Word word;
    bool trivial;
};

inline std::vector<Overlap> overlaps(const Word& u, const Word& v) {
    std::vector<Overlap> out;
    out.push_back({{}, true});
    for (std::size_t len = 1; len <= std::min(u.size(), v.size()); ++len) {
        Word suff(u.end() - static_cast<long>(len), u.end());
        if (std::equal(suff.begin(), suff.end(), v.begin()))
            out.push_back({suff, suff.size() == u.size() && u == v});
    }
    auto contains = [](const Word& hay, const Word& needle) {
        return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
    };
    if (u.size() <= v.size() && contains(v, u)) {
        bool already = false;
        for (const auto& o : out)
            if (o.word == u) already = true;
        if (!already) out.push_back({u, u == v});
    }
    if (v.size() < u.size() && contains(u, v)) {
        bool already = false;
        for (const auto& o : out)
            if (o.word == v) already = true;
        if (!already) out.push_back({v, false});
    }
    return out;
}

struct MarkerValidation {
    bool ok = true;
    std::vector<std::string> violations;
    void fail(std::string msg) {
        ok = false;
        violations.push_back(std::move(msg));
    }
};

/// Oracle membership interface so the same validation runs on presentations
/// and on bounded language oracles (non-sofic S-gap shifts).
using MembershipFn = std::function<bool(const Word&)>;

namespace detail {

inline MarkerValidation validate_marker_impl(const MembershipFn& member,
                                             const SoficPresentation* rel_p, const Alphabet& a,
                                             const Word& u, const std::vector<Word>& w_list,
                                             const std::vector<std::size_t>& perm) {
    MarkerValidation rep;
    if (perm.size() != w_list.size()) {
        rep.fail("permutation size mismatch");
        return rep;
    }
    {
        std::vector<char> seen(perm.size(), 0);
        for (std::size_t i : perm) {
            if (i >= perm.size() || seen[i]) {
                rep.fail("permutation is not a bijection");
                return rep;
            }
            seen[i] = 1;
        }
    }
    std::vector<Word> full;
    for (const Word& w : w_list) full.push_back(u + w + u);
    for (std::size_t i = 0; i < full.size(); ++i)
        for (std::size_t j = i + 1; j < full.size(); ++j)
            if (full[i] == full[j]) rep.fail("duplicate word in uWu: " + a.str(full[i]));
    for (const Word& w : full)
        if (!member(w)) rep.fail("membership violation: " + a.str(w) + " not in L(X)");
    for (std::size_t i = 0; i < full.size(); ++i)
        for (std::size_t j = 0; j < full.size(); ++j) {
            for (const Overlap& o : overlaps(full[i], full[j])) {
                if (o.trivial || o.word == u) continue;
                rep.fail("overlap violation: '" + a.str(o.word) + "' between " + a.str(full[i]) +
                         " and " + a.str(full[j]));
            }
        }
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (full[i].size() != full[perm[i]].size())
            rep.fail("length violation: " + a.str(full[i]) + " -> " + a.str(full[perm[i]]));
        if (rel_p) {
            if (transition_relation(*rel_p, full[i]) != transition_relation(*rel_p, full[perm[i]]))
                rep.fail("class violation: " + a.str(full[i]) + " -> " + a.str(full[perm[i]]));
        }
    }
    return rep;
}

} // namespace detail

inline MarkerValidation validate_marker(const SoficPresentation& p, const Word& u,
                                        const std::vector<Word>& w_list,
                                        const std::vector<std::size_t>& perm) {
    return detail::validate_marker_impl([&](const Word& w) { return p.language_contains(w); }, &p,
                                        p.alphabet, u, w_list, perm);
}

/// Validation against a membership oracle only: syntactic-class preservation
/// is spot-checked on sampled contexts rather than via transition relations.
inline MarkerValidation validate_marker_oracle(const MembershipFn& member, const Alphabet& a,
                                               const Word& u, const std::vector<Word>& w_list,
                                               const std::vector<std::size_t>& perm,
                                               const std::vector<std::pair<Word, Word>>& contexts = {}) {
    MarkerValidation rep = detail::validate_marker_impl(member, nullptr, a, u, w_list, perm);
    for (std::size_t i = 0; i < perm.size() && i < w_list.size(); ++i) {
        Word wa = u + w_list[i] + u, wb = u + w_list[perm[i]] + u;
        for (const auto& [l, r] : contexts)
            if (member(l + wa + r) != member(l + wb + r))
                rep.fail("context violation: " + a.str(l) + "|" + a.str(r));
    }
    return rep;
}

/// A reversible CA that replaces every occurrence of an element of uWu by
/// its image under a length- and class-preserving permutation.
class MarkerAutomorphism {
public:
    MarkerAutomorphism(std::shared_ptr<const SoficPresentation> ambient, Word u,
                       std::vector<Word> w_list, std::vector<std::size_t> perm,
                       std::string name = "")
        : ambient_(std::move(ambient)), u_(std::move(u)), w_list_(std::move(w_list)),
          perm_(std::move(perm)), name_(std::move(name)) {
        for (const Word& w : w_list_) full_.push_back(u_ + w + u_);
        images_.resize(full_.size());
        for (std::size_t i = 0; i < full_.size(); ++i) images_[i] = full_[perm_[i]];
        radius_ = 0;
        for (const Word& w : full_) radius_ = std::max<long long>(radius_, static_cast<long long>(w.size()) - 1);
        ac_ = std::make_shared<AhoCorasick>(full_);
    }

    const Word& marker() const { return u_; }
    const std::vector<Word>& words() const { return w_list_; }
    const std::vector<Word>& full_words() const { return full_; }
    const std::vector<std::size_t>& permutation() const { return perm_; }
    long long radius() const { return radius_; }
    const std::string& name() const { return name_; }
    std::shared_ptr<const SoficPresentation> ambient() const { return ambient_; }

    MarkerAutomorphism inverse() const {
        std::vector<std::size_t> inv(perm_.size());
        for (std::size_t i = 0; i < perm_.size(); ++i) inv[perm_[i]] = i;
        return MarkerAutomorphism(ambient_, u_, w_list_, inv,
                                  name_.empty() ? "" : name_ + "^-1");
    }

    bool is_identity_permutation() const {
        for (std::size_t i = 0; i < perm_.size(); ++i)
            if (perm_[i] != i) return false;
        return true;
    }

    /// Simultaneous in-place replacement of all uWu occurrences. Exact on
    /// tail configurations: the scan window extends far enough into both
    /// tails that the occurrence pattern there is provably periodic.
    TailConfiguration apply(const TailConfiguration& x0, bool check_membership = true) const {
        TailConfiguration x = x0.canonical();
        long long R = radius_ + 1; // max word length
        long long pl = static_cast<long long>(x.left.size());
        long long pr = static_cast<long long>(x.right.size());
        long long cs = x.center_start - 2 * R;  // image left-periodic for i <= cs
        long long ce = x.right_start() + 2 * R; // image right-periodic beyond
        while ((ce - x.right_start()) % pr != 0) ++ce;
        long long lo = cs - pl - R, hi = ce + pr + R; // scan window [lo, hi)
        Word win = x.sub(lo, hi - 1);
        std::vector<AhoCorasick::Hit> hits = ac_->find_all(win);
        // occurrences fully inside the scan margin are reliable; those
        // overhanging the window edge are re-found via x directly
        std::vector<std::pair<long long, int>> occ;
        for (const auto& h : hits) occ.emplace_back(lo + h.pos, h.pattern);
        // occurrences may only share the marker u at a boundary
        for (std::size_t i = 0; i < occ.size(); ++i) {
            long long end_i = occ[i].first +
                              static_cast<long long>(full_[static_cast<std::size_t>(occ[i].second)].size());
            for (std::size_t j = i + 1; j < occ.size() && occ[j].first < end_i; ++j)
                if (end_i - occ[j].first != static_cast<long long>(u_.size()))
                    throw error("marker apply: conflicting occurrences (overlap condition broken)");
        }
        Word out = win;
        for (auto [pos, wi] : occ) {
            const Word& img = images_[static_cast<std::size_t>(wi)];
            for (std::size_t k = 0; k < img.size(); ++k) {
                long long idx = pos - lo + static_cast<long long>(k);
                if (idx >= 0 && idx < static_cast<long long>(out.size()))
                    out[static_cast<std::size_t>(idx)] = img[k];
            }
        }
        TailConfiguration y;
        y.center_start = cs;
        auto outval = [&](long long i) { return out[static_cast<std::size_t>(i - lo)]; };
        for (long long k = cs - pl; k < cs; ++k) y.left.push_back(outval(k));
        for (long long k = cs; k < ce; ++k) y.center.push_back(outval(k));
        for (long long k = ce; k < ce + pr; ++k) y.right.push_back(outval(k));
        y.canonicalize();
        if (check_membership && ambient_ && !configuration_in(*ambient_, y))
            throw error("marker apply: image leaves the ambient shift");
        return y;
    }

    /// Start positions of uWu occurrences inside [lo, hi].
    std::vector<long long> occurrence_positions(const TailConfiguration& x, long long lo,
                                                long long hi) const {
        Word win = x.sub(lo - radius_, hi + radius_);
        std::vector<long long> out;
        for (const auto& h : ac_->find_all(win)) {
            long long pos = lo - radius_ + h.pos;
            if (pos >= lo && pos <= hi) out.push_back(pos);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    std::shared_ptr<const SoficPresentation> ambient_;
    Word u_;
    std::vector<Word> w_list_;
    std::vector<std::size_t> perm_;
    std::string name_;
    std::vector<Word> full_;
    std::vector<Word> images_;
    long long radius_ = 0;
    std::shared_ptr<AhoCorasick> ac_;
};

/// Validates and builds in one step; throws with the report on failure.
inline MarkerAutomorphism build_marker(std::shared_ptr<const SoficPresentation> ambient,
                                       const Word& u, const std::vector<Word>& w_list,
                                       const std::vector<std::size_t>& perm,
                                       std::string name = "") {
    MarkerValidation v = validate_marker(*ambient, u, w_list, perm);
    if (!v.ok) {
        std::string msg = "marker validation failed:";
        for (const auto& s : v.violations) msg += "\n  " + s;
        throw error(msg);
    }
    return MarkerAutomorphism(std::move(ambient), u, w_list, perm, std::move(name));
}

/// A two-element swap marker automorphism.
inline MarkerAutomorphism build_swap(std::shared_ptr<const SoficPresentation> ambient,
                                     const Word& u, const Word& w1, const Word& w2,
                                     std::string name = "") {
    if (w1 == w2) throw error("build_swap: words must be distinct");
    return build_marker(std::move(ambient), u, {w1, w2}, {1, 0}, std::move(name));
}

/// An ordered composition of marker automorphisms (applied left to right).
struct CAPipeline {
    std::vector<MarkerAutomorphism> stages;

    TailConfiguration apply(const TailConfiguration& x, bool check_membership = true) const {
        TailConfiguration y = x;
        for (const auto& m : stages) y = m.apply(y, check_membership);
        return y;
    }

    TailConfiguration apply_n(const TailConfiguration& x, long long n,
                              bool check_membership = true) const {
        TailConfiguration y = x;
        if (n >= 0) {
            for (long long i = 0; i < n; ++i) y = apply(y, check_membership);
        } else {
            CAPipeline inv = inverse();
            for (long long i = 0; i < -n; ++i) y = inv.apply(y, check_membership);
        }
        return y;
    }

    CAPipeline inverse() const {
        CAPipeline r;
        for (auto it = stages.rbegin(); it != stages.rend(); ++it) r.stages.push_back(it->inverse());
        return r;
    }

    long long radius() const {
        long long r = 0;
        for (const auto& m : stages) r += m.radius();
        return r;
    }
};

inline CAPipeline compose(std::vector<MarkerAutomorphism> stages) {
    for (std::size_t i = 1; i < stages.size(); ++i)
        if (stages[i].ambient() && stages[0].ambient() &&
            !(stages[i].ambient()->alphabet == stages[0].ambient()->alphabet))
            throw error("compose: stages have mismatched ambient shifts");
    CAPipeline p;
    p.stages = std::move(stages);
    return p;
}

} // namespace gliderca
