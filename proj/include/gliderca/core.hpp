#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace gliderca {

/// Error type for all contract violations in this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

using Sym = std::int32_t;
using Word = std::vector<Sym>;

/// A finite ordered set of named symbols. Recodings mint primed symbols
/// ("0'") and block symbols, so names are arbitrary strings.
struct Alphabet {
    std::vector<std::string> names;
    std::unordered_map<std::string, Sym> index;

    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> syms) {
        for (auto& s : syms) add(s);
    }

    Sym add(const std::string& name) {
        if (name.empty()) throw error("alphabet: empty symbol name");
        auto [it, fresh] = index.emplace(name, static_cast<Sym>(names.size()));
        if (!fresh) throw error("alphabet: duplicate symbol '" + name + "'");
        names.push_back(name);
        return it->second;
    }

    std::size_t size() const { return names.size(); }

    Sym sym(const std::string& name) const {
        auto it = index.find(name);
        if (it == index.end()) throw error("alphabet: unknown symbol '" + name + "'");
        return it->second;
    }

    /// -1 when the name is not a symbol of this alphabet.
    Sym try_sym(const std::string& name) const {
        auto it = index.find(name);
        return it == index.end() ? Sym{-1} : it->second;
    }

    const std::string& name(Sym s) const {
        if (s < 0 || static_cast<std::size_t>(s) >= names.size())
            throw error("alphabet: symbol id out of range");
        return names[static_cast<std::size_t>(s)];
    }

    bool single_char() const {
        return std::all_of(names.begin(), names.end(),
                           [](const std::string& n) { return n.size() == 1; });
    }

    /// Parses a word literal. Single-char alphabets concatenate symbols
    /// ("0011"); otherwise symbols are comma-separated ("1,0',1").
    Word word(const std::string& text) const {
        Word w;
        if (text.empty()) return w;
        if (single_char()) {
            for (char c : text) w.push_back(sym(std::string(1, c)));
        } else {
            std::size_t pos = 0;
            while (pos <= text.size()) {
                std::size_t comma = text.find(',', pos);
                if (comma == std::string::npos) comma = text.size();
                w.push_back(sym(text.substr(pos, comma - pos)));
                pos = comma + 1;
                if (pos == text.size() + 1) break;
            }
        }
        return w;
    }

    std::string str(const Word& w) const {
        std::string out;
        bool compact = single_char();
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i && !compact) out += ',';
            out += name(w[i]);
        }
        return out;
    }

    bool operator==(const Alphabet& o) const { return names == o.names; }
};

inline Word operator+(const Word& a, const Word& b) {
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

inline Word repeated(const Word& w, std::size_t times) {
    Word r;
    r.reserve(w.size() * times);
    for (std::size_t i = 0; i < times; ++i) r.insert(r.end(), w.begin(), w.end());
    return r;
}

inline bool is_prefix(const Word& p, const Word& w) {
    return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

inline bool is_suffix(const Word& s, const Word& w) {
    return s.size() <= w.size() && std::equal(s.rbegin(), s.rend(), w.rbegin());
}

/// Length of the primitive root of w (smallest period dividing |w|).
inline std::size_t primitive_root_length(const Word& w) {
    for (std::size_t d = 1; d <= w.size(); ++d) {
        if (w.size() % d) continue;
        bool ok = true;
        for (std::size_t i = d; i < w.size() && ok; ++i) ok = (w[i] == w[i - d]);
        if (ok) return d;
    }
    return w.size();
}

inline bool is_primitive(const Word& w) {
    return !w.empty() && primitive_root_length(w) == w.size();
}

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = 1469598103934665603ull;
        for (Sym s : w) {
            h ^= static_cast<std::size_t>(s) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

inline long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

} // namespace gliderca
