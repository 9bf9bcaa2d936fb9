#pragma once

#include <optional>

#include "code.hpp"
#include "configuration.hpp"
#include "core.hpp"
#include "presentation.hpp"
#include "syntactic.hpp"

namespace gliderca {

enum class RecodingTag { Block, FuturePriming, PastPriming, ZeroPriming, OneDerivation };

inline const char* tag_name(RecodingTag t) {
    switch (t) {
    case RecodingTag::Block: return "block";
    case RecodingTag::FuturePriming: return "future-priming";
    case RecodingTag::PastPriming: return "past-priming";
    case RecodingTag::ZeroPriming: return "zero-priming";
    case RecodingTag::OneDerivation: return "one-derivation";
    }
    return "?";
}

/// One conjugacy of the recoding pipeline: ψ with its inverse and the image
/// presentation (reduced to the Fischer cover, alphabet ids preserved).
struct RecodingStep {
    SlidingBlockCode code;
    SlidingBlockCode inverse;
    SoficPresentation image;
    RecodingTag tag = RecodingTag::Block;
};

namespace detail {

/// Image alphabet A ∪ {a' : a gets primed}, preserving the ids of A.
/// `needs_prime(window)` decides, for windows whose center symbol may be
/// primed, whether ψ primes it.
inline RecodingStep make_priming_step(const SoficPresentation& p, long long memory,
                                      long long anticipation, RecodingTag tag,
                                      const std::function<bool(const Word&)>& primes,
                                      const std::function<Sym(const Word&)>& center) {
    std::vector<Word> windows =
        words_of_length(p, static_cast<std::size_t>(anticipation - memory + 1));
    std::set<Sym> primed_bases;
    for (const Word& w : windows)
        if (primes(w)) primed_bases.insert(center(w));
    Alphabet ia = p.alphabet;
    std::map<Sym, Sym> prime_of;
    for (Sym b : primed_bases) {
        std::string nm = p.alphabet.name(b) + "'";
        while (ia.index.count(nm)) nm += "'"; // earlier steps may have minted this name
        prime_of[b] = ia.add(nm);
    }
    RecodingStep step;
    step.tag = tag;
    step.code.domain = p.alphabet;
    step.code.image = ia;
    step.code.memory = memory;
    step.code.anticipation = anticipation;
    for (const Word& w : windows)
        step.code.rule[w] = primes(w) ? prime_of.at(center(w)) : center(w);
    // inverse: strip exactly the primes this step added
    step.inverse.domain = ia;
    step.inverse.image = p.alphabet;
    step.inverse.memory = step.inverse.anticipation = 0;
    for (Sym s = 0; static_cast<std::size_t>(s) < p.alphabet.size(); ++s)
        step.inverse.rule[{s}] = s;
    for (auto [base, primed] : prime_of) step.inverse.rule[{primed}] = base;
    step.image = apply_code_to_presentation(step.code, p);
    return step;
}

} // namespace detail

/// Conjugacy making w future deterministic: primes x[i] = w_j (j < n) unless
/// w_j ... w_n follows.
inline RecodingStep prime_future(const SoficPresentation& p, const Word& w) {
    detail::require_distinct_in_language(p, w, "prime_future");
    long long n = static_cast<long long>(w.size());
    std::map<Sym, long long> pos;
    for (long long j = 0; j < n; ++j) pos[w[static_cast<std::size_t>(j)]] = j; // 0-based
    return detail::make_priming_step(
        p, 0, n - 1, RecodingTag::FuturePriming,
        [&, pos](const Word& win) {
            auto it = pos.find(win[0]);
            if (it == pos.end() || it->second == n - 1) return false;
            long long j = it->second;
            for (long long k = 0; k < n - j; ++k)
                if (win[static_cast<std::size_t>(k)] != w[static_cast<std::size_t>(j + k)]) return true;
            return false;
        },
        [](const Word& win) { return win[0]; });
}

/// Conjugacy making w past deterministic: primes x[i] = w_j (j > 1) unless
/// w_1 ... w_j precedes.
inline RecodingStep prime_past(const SoficPresentation& p, const Word& w) {
    detail::require_distinct_in_language(p, w, "prime_past");
    long long n = static_cast<long long>(w.size());
    std::map<Sym, long long> pos;
    for (long long j = 0; j < n; ++j) pos[w[static_cast<std::size_t>(j)]] = j;
    return detail::make_priming_step(
        p, -(n - 1), 0, RecodingTag::PastPriming,
        [&, pos](const Word& win) {
            Sym last = win.back();
            auto it = pos.find(last);
            if (it == pos.end() || it->second == 0) return false;
            long long j = it->second; // needs w[0..j] right-aligned at the end
            for (long long k = 0; k <= j; ++k)
                if (win[win.size() - 1 - static_cast<std::size_t>(k)] !=
                    w[static_cast<std::size_t>(j - k)])
                    return true;
            return false;
        },
        [](const Word& win) { return win.back(); });
}

/// The synchronization priming: primes x[i] = z_j unless z_j ... z_p z^{k-1}
/// follows (then z becomes synchronizing given z^k was).
inline RecodingStep prime_zero_sync(const SoficPresentation& p, const Word& z, long long k) {
    long long pz = static_cast<long long>(z.size());
    std::map<Sym, long long> pos;
    for (long long j = 0; j < pz; ++j) pos[z[static_cast<std::size_t>(j)]] = j;
    return detail::make_priming_step(
        p, 0, k * pz - 1, RecodingTag::ZeroPriming,
        [&, pos](const Word& win) {
            auto it = pos.find(win[0]);
            if (it == pos.end()) return false;
            long long j = it->second;
            long long len = (pz - j) + (k - 1) * pz; // compared span
            for (long long t = 0; t < len; ++t)
                if (win[static_cast<std::size_t>(t)] != z[static_cast<std::size_t>((j + t) % pz)])
                    return true;
            return false;
        },
        [](const Word& win) { return win[0]; });
}

/// The Prop-01 style priming: primes x[i] = z_j exactly when the context
/// word c immediately precedes the ambient z-prefix z_1 ... z_j.
inline RecodingStep prime_after_context(const SoficPresentation& p, const Word& z, const Word& c) {
    long long pz = static_cast<long long>(z.size());
    long long cl = static_cast<long long>(c.size());
    std::map<Sym, long long> pos;
    for (long long j = 0; j < pz; ++j) pos[z[static_cast<std::size_t>(j)]] = j;
    return detail::make_priming_step(
        p, -(pz + cl - 1), 0, RecodingTag::OneDerivation,
        [&, pos](const Word& win) {
            auto it = pos.find(win.back());
            if (it == pos.end()) return false;
            long long j = it->second; // 0-based: pattern c z_1..z_{j+1} right-aligned
            long long need = cl + j + 1;
            Word pat = c;
            for (long long t = 0; t <= j; ++t) pat.push_back(z[static_cast<std::size_t>(t)]);
            for (long long t = 0; t < need; ++t)
                if (win[win.size() - static_cast<std::size_t>(need) + static_cast<std::size_t>(t)] !=
                    pat[static_cast<std::size_t>(t)])
                    return false;
            return true;
        },
        [](const Word& win) { return win.back(); });
}

/// The full §-style pipeline state: conjugacies applied so far, the current
/// presentation (always a Fischer cover) and the evolving special words.
struct RecodingPipeline {
    std::vector<RecodingStep> steps;
    SoficPresentation final_presentation;
    Word z_final;
    Word one;
    long long p = 0, q = 0, K = 0;

    TailConfiguration apply(const TailConfiguration& x) const {
        TailConfiguration y = x;
        for (const auto& s : steps) y = apply_code(s.code, y);
        return y;
    }
    TailConfiguration apply_inverse(const TailConfiguration& x) const {
        TailConfiguration y = x;
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) y = apply_code(it->inverse, y);
        return y;
    }
};

/// Five-bullet report for the (z, one) contract.
struct Prop01Report {
    bool z_periodic_point = false;
    bool z_deterministic = false;
    bool z_synchronizing = false;
    bool z_distinct_symbols = false;
    bool alphabet_disjoint = false;
    bool z_one_star_z = false;
    bool length_congruence = false;
    bool gcd_divides_gaps = false;
    bool all() const {
        return z_periodic_point && z_deterministic && z_synchronizing && z_distinct_symbols &&
               alphabet_disjoint && z_one_star_z && length_congruence && gcd_divides_gaps;
    }
};

inline Prop01Report verify_prop01(const SoficPresentation& p, const Word& z, const Word& one) {
    Prop01Report r;
    long long pz = static_cast<long long>(z.size());
    long long q = static_cast<long long>(one.size());
    long long K = gcd_ll(pz, q);
    try {
        r.z_periodic_point = configuration_in(p, make_periodic_point(z));
    } catch (const error&) {
    }
    {
        std::set<Sym> s(z.begin(), z.end());
        r.z_distinct_symbols = s.size() == z.size();
    }
    try {
        r.z_deterministic = is_deterministic(p, z);
    } catch (const error&) {
    }
    try {
        r.z_synchronizing = is_synchronizing(p, z);
    } catch (const error&) {
    }
    {
        std::set<Sym> zs(z.begin(), z.end());
        r.alphabet_disjoint = !one.empty();
        for (Sym a : one)
            if (zs.count(a)) r.alphabet_disjoint = false;
    }
    // z one^i z in L for every i, certified by the eventually periodic focus
    // orbit: t_i = focus after reading one^i, each must read z
    if (r.z_synchronizing) {
        int t = focus_state(p, z);
        std::set<int> visited;
        bool ok = true;
        while (!visited.count(t)) {
            visited.insert(t);
            if (p.step_word(t, z) < 0) {
                ok = false;
                break;
            }
            t = p.step_word(t, one);
            if (t < 0) {
                ok = false;
                break;
            }
        }
        r.z_one_star_z = ok;
    }
    r.length_congruence = ((q - K) % pz + pz) % pz == 0;
    if (r.z_synchronizing) {
        std::set<Sym> b = complement_symbols(p, z);
        auto violator = shortest_b_word(
            p, focus_state(p, z), b, detail::z_readable_states(p, z), K,
            [](long long rr) { return rr != 0; },
            (static_cast<long long>(p.state_count()) + 2) * std::max<long long>(1, K) + 8);
        r.gcd_divides_gaps = !violator.has_value();
    }
    return r;
}

/// Proposition-style recode: after it, z is deterministic and synchronizing
/// and has distinct symbols. No-op steps are skipped, so shifts that already
/// satisfy a property keep their original alphabet.
inline RecodingPipeline make_zero(const SoficPresentation& input, const Word& z0, long long k) {
    if (k < 1) throw error("make_zero: k must be positive");
    if (!is_primitive(z0)) throw error("make_zero: least period of z^Z must be |z|");
    SoficPresentation cur = is_fischer_cover(input) ? input : fischer_cover(input);
    if (!configuration_in(cur, make_periodic_point(z0))) throw error("make_zero: z^Z not in the shift");
    if (!is_synchronizing(cur, repeated(z0, static_cast<std::size_t>(k))))
        throw error("make_zero: z^k is not synchronizing for the given k");

    RecodingPipeline pipe;
    Word z = z0;

    auto push = [&](RecodingStep step) {
        cur = step.image;
        pipe.steps.push_back(std::move(step));
    };

    if (z.size() > 1) {
        std::set<Sym> distinct(z.begin(), z.end());
        if (distinct.size() != z.size()) {
            HigherPowerResult hp = higher_power(cur, static_cast<long long>(z.size()));
            TailConfiguration zz = apply_code(hp.beta, make_periodic_point(z));
            RecodingStep step;
            step.code = hp.beta;
            step.inverse = hp.beta_inverse;
            step.image = hp.presentation;
            step.tag = RecodingTag::Block;
            push(std::move(step));
            z = zz.sub(0, static_cast<long long>(z0.size()) - 1);
        }
    }
    if (!is_future_deterministic(cur, z)) push(prime_future(cur, z));
    if (!is_past_deterministic(cur, z)) push(prime_past(cur, z));
    if (!is_synchronizing(cur, z)) {
        push(prime_zero_sync(cur, z, k));
        if (!is_synchronizing(cur, z)) throw error("make_zero: zero priming failed to synchronize z");
    }
    if (!is_deterministic(cur, z)) throw error("make_zero: z not deterministic after recode");
    pipe.final_presentation = cur;
    pipe.z_final = z;
    pipe.p = static_cast<long long>(z.size());
    return pipe;
}

/// Derives the companion word `one`. Prefers a gap word realizable in the
/// current shift (a B-cycle at the focus of z with the right length
/// arithmetic); otherwise applies the context priming and, while a
/// residue-violating gap length remains, a further priming that strictly
/// decreases K through the divisor chain of p.
inline void derive_one(RecodingPipeline& pipe) {
    SoficPresentation cur = pipe.final_presentation;
    Word z = pipe.z_final;
    long long p = pipe.p;
    long long prev_k0 = 0;

    for (int guard = 0; guard < 64; ++guard) {
        std::set<Sym> b = complement_symbols(cur, z);
        std::optional<long long> g = gap_length_gcd(cur, z, b);
        if (!g) throw error("derive_one: no gap word exists (shift is finite around z)");
        long long k_target = gcd_ll(p, *g);
        int s0 = focus_state(cur, z);
        long long cutoff = (static_cast<long long>(cur.state_count()) + 2) * p + k_target + 8;
        std::optional<Word> direct = shortest_b_word(
            cur, s0, b, {s0}, p, [&](long long r) { return r == k_target % p; }, cutoff);
        if (direct) {
            pipe.final_presentation = cur;
            pipe.z_final = z;
            pipe.one = *direct;
            pipe.q = static_cast<long long>(pipe.one.size());
            pipe.K = gcd_ll(p, pipe.q);
            Prop01Report rep = verify_prop01(cur, z, pipe.one);
            if (!rep.all()) throw error("derive_one: direct candidate failed the bullet checks");
            return;
        }
        // witness word of minimal gcd(p, |w|)
        std::set<int> targets = detail::z_readable_states(cur, z);
        long long k0 = p;
        for (long long r = 0; r < p; ++r) {
            auto hit = shortest_b_word(
                cur, s0, b, targets, p, [&](long long rr) { return rr == r; }, cutoff);
            if (hit) k0 = std::min(k0, gcd_ll(p, r == 0 ? p : r));
        }
        auto witness = shortest_b_word(
            cur, s0, b, targets, p,
            [&](long long r) { return gcd_ll(p, r == 0 ? p : r) == k0; }, cutoff);
        if (!witness) throw error("derive_one: no gap witness found");
        if (prev_k0 && k0 >= prev_k0)
            throw error("derive_one: K failed to decrease (internal error)");
        prev_k0 = k0;

        RecodingStep step = prime_after_context(cur, z, *witness);
        Word zprime;
        for (Sym a : z) {
            Sym found = -1;
            for (const auto& [img_word, base] : step.inverse.rule)
                if (base == a && img_word[0] != a) found = img_word[0];
            if (found < 0) throw error("derive_one: z symbol was never primed (internal)");
            zprime.push_back(found);
        }
        cur = step.image;
        pipe.steps.push_back(std::move(step));

        Word one0 = *witness + zprime;
        long long q0 = static_cast<long long>(one0.size());
        long long kk = 1;
        while (((kk * q0 - k0) % p + p) % p != 0) {
            ++kk;
            if (kk > p + 1) throw error("derive_one: no k with k|one'| = K (mod p)");
        }
        Word one = repeated(one0, static_cast<std::size_t>(kk));
        // exact residue check of the remaining gap spectrum
        std::set<Sym> b2 = complement_symbols(cur, z);
        auto violator = shortest_b_word(
            cur, focus_state(cur, z), b2, detail::z_readable_states(cur, z), k0,
            [](long long r) { return r != 0; },
            (static_cast<long long>(cur.state_count()) + 2) * std::max<long long>(1, k0) + 8);
        if (!violator) {
            pipe.final_presentation = cur;
            pipe.z_final = z;
            pipe.one = one;
            pipe.q = static_cast<long long>(one.size());
            pipe.K = gcd_ll(p, pipe.q);
            Prop01Report rep = verify_prop01(cur, z, one);
            if (!rep.all()) throw error("derive_one: primed candidate failed the bullet checks");
            return;
        }
        RecodingStep step2 = prime_after_context(cur, z, z + *violator);
        cur = step2.image;
        pipe.steps.push_back(std::move(step2));
    }
    throw error("derive_one: did not converge");
}

} // namespace gliderca
