#pragma once

#include <fstream>

#include <json.hpp>

#include "code.hpp"
#include "configuration.hpp"
#include "core.hpp"
#include "glider.hpp"
#include "presentation.hpp"
#include "recode.hpp"

namespace gliderca {

using json = nlohmann::json;

inline json presentation_to_json(const SoficPresentation& p) {
    json j;
    j["alphabet"] = p.alphabet.names;
    j["states"] = p.state_names;
    json edges = json::array();
    for (int s = 0; s < p.state_count(); ++s)
        for (const auto& e : p.out[static_cast<std::size_t>(s)])
            edges.push_back({p.state_names[static_cast<std::size_t>(s)], p.alphabet.name(e.label),
                             p.state_names[static_cast<std::size_t>(e.to)]});
    j["edges"] = edges;
    return j;
}

/// Presentation file format: {alphabet: [..], states: [..],
/// edges: [[src, label, dst], ..]}, order-insensitive.
inline SoficPresentation presentation_from_json(const json& j, bool trim = true) {
    if (!j.contains("alphabet") || !j.contains("states") || !j.contains("edges"))
        throw error("presentation file: need alphabet, states, edges");
    Alphabet a(j.at("alphabet").get<std::vector<std::string>>());
    std::vector<std::string> states = j.at("states").get<std::vector<std::string>>();
    std::map<std::string, int> sid;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (sid.count(states[i])) throw error("presentation file: duplicate state name '" + states[i] + "'");
        sid[states[i]] = static_cast<int>(i);
    }
    std::vector<std::tuple<int, Sym, int>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3) throw error("presentation file: edge must be [src, label, dst]");
        auto src = e.at(0).get<std::string>();
        auto lab = e.at(1).get<std::string>();
        auto dst = e.at(2).get<std::string>();
        if (!sid.count(src) || !sid.count(dst)) throw error("presentation file: edge endpoint unknown");
        edges.emplace_back(sid[src], a.sym(lab), sid[dst]);
    }
    return make_presentation(a, states, edges, trim);
}

inline SoficPresentation load_presentation(const std::string& path, bool trim = true) {
    std::ifstream in(path);
    if (!in) throw error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw error("malformed presentation file: " + std::string(e.what()));
    }
    return presentation_from_json(j, trim);
}

inline json code_to_json(const SlidingBlockCode& c) {
    json j;
    j["domain_alphabet"] = c.domain.names;
    j["image_alphabet"] = c.image.names;
    j["memory"] = c.memory;
    j["anticipation"] = c.anticipation;
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& [w, out] : c.rule) rows.emplace_back(c.domain.str(w), c.image.name(out));
    std::sort(rows.begin(), rows.end());
    json rule = json::array();
    for (auto& [w, out] : rows) rule.push_back({w, out});
    j["rule"] = rule;
    return j;
}

inline SlidingBlockCode code_from_json(const json& j) {
    SlidingBlockCode c;
    c.domain = Alphabet(j.at("domain_alphabet").get<std::vector<std::string>>());
    c.image = Alphabet(j.at("image_alphabet").get<std::vector<std::string>>());
    c.memory = j.at("memory").get<long long>();
    c.anticipation = j.at("anticipation").get<long long>();
    for (const auto& row : j.at("rule"))
        c.rule[c.domain.word(row.at(0).get<std::string>())] = c.image.sym(row.at(1).get<std::string>());
    return c;
}

/// Marker serialization: {u, cycles: [[w1, w2, ...], ...]} with the
/// permutation given by disjoint cycles on the core words.
inline json marker_to_json(const MarkerAutomorphism& m, const Alphabet& a) {
    json j;
    j["u"] = a.str(m.marker());
    std::vector<char> seen(m.words().size(), 0);
    json cycles = json::array();
    for (std::size_t i = 0; i < m.words().size(); ++i) {
        if (seen[i]) continue;
        json cyc = json::array();
        std::size_t cur = i;
        while (!seen[cur]) {
            seen[cur] = 1;
            cyc.push_back(a.str(m.words()[cur]));
            cur = m.permutation()[cur];
        }
        cycles.push_back(cyc);
    }
    j["cycles"] = cycles;
    if (!m.name().empty()) j["name"] = m.name();
    return j;
}

inline MarkerAutomorphism marker_from_json(const json& j,
                                           std::shared_ptr<const SoficPresentation> ambient) {
    const Alphabet& a = ambient->alphabet;
    Word u = a.word(j.at("u").get<std::string>());
    std::vector<Word> words;
    std::vector<std::size_t> perm;
    for (const auto& cyc : j.at("cycles")) {
        std::size_t base = words.size();
        std::size_t count = cyc.size();
        for (const auto& w : cyc) words.push_back(a.word(w.get<std::string>()));
        for (std::size_t i = 0; i < count; ++i) perm.push_back(base + (i + 1 < count ? i + 1 : 0));
    }
    std::string name = j.value("name", std::string{});
    return MarkerAutomorphism(std::move(ambient), u, words, perm, name);
}

inline json pipeline_to_json(const RecodingPipeline& pipe) {
    json j;
    json steps = json::array();
    for (const auto& s : pipe.steps) {
        json st;
        st["tag"] = tag_name(s.tag);
        st["code"] = code_to_json(s.code);
        st["inverse"] = code_to_json(s.inverse);
        st["image"] = presentation_to_json(s.image);
        steps.push_back(st);
    }
    j["steps"] = steps;
    j["final"] = presentation_to_json(pipe.final_presentation);
    const Alphabet& a = pipe.final_presentation.alphabet;
    j["z"] = a.str(pipe.z_final);
    if (!pipe.one.empty()) j["one"] = a.str(pipe.one);
    j["p"] = pipe.p;
    j["q"] = pipe.q;
    j["K"] = pipe.K;
    return j;
}

inline json system_to_json(const GliderSystem& sys) {
    json j;
    const Alphabet& a = sys.ambient->alphabet;
    j["presentation"] = presentation_to_json(*sys.ambient);
    j["variant"] = sys.variant;
    j["z"] = a.str(sys.z);
    j["one"] = a.str(sys.one);
    j["p"] = sys.p;
    j["q"] = sys.q;
    j["K"] = sys.K;
    j["s"] = sys.s;
    j["gl"] = a.str(sys.gl);
    j["gr"] = a.str(sys.gr);
    if (sys.n_param) j["n"] = *sys.n_param;
    if (sys.N) j["N"] = *sys.N;
    if (sys.N1) j["N1"] = *sys.N1;
    json stages = json::array();
    for (const auto& m : sys.stages) stages.push_back(marker_to_json(m, a));
    j["stages"] = stages;
    if (!sys.p3_tables.empty()) {
        json ts = json::array();
        for (const auto& t : sys.p3_tables) {
            json tt;
            tt["class_state"] = t.class_state;
            tt["w_prime"] = a.str(t.w_prime);
            tt["w_s"] = a.str(t.w_s);
            std::vector<std::string> ws;
            for (const auto& w : t.w_s_set) ws.push_back(a.str(w));
            tt["w_s_set"] = ws;
            ts.push_back(tt);
        }
        j["p3_tables"] = ts;
    }
    if (!sys.p4_tables.empty()) {
        json ts = json::array();
        for (const auto& t : sys.p4_tables) {
            json tt;
            tt["j"] = t.j;
            tt["u_prime"] = a.str(t.u_prime);
            std::vector<std::string> els, pads;
            for (const auto& w : t.elements) els.push_back(a.str(w));
            for (const auto& w : t.padded_cycle) pads.push_back(a.str(w));
            tt["elements"] = els;
            tt["padded_cycle"] = pads;
            ts.push_back(tt);
        }
        j["p4_tables"] = ts;
    }
    if (!sys.recode.steps.empty()) j["recode"] = pipeline_to_json(sys.recode);
    return j;
}

inline GliderSystem system_from_json(const json& j) {
    GliderSystem sys;
    auto ambient = std::make_shared<const SoficPresentation>(presentation_from_json(j.at("presentation")));
    const Alphabet& a = ambient->alphabet;
    sys.ambient = ambient;
    sys.variant = j.value("variant", std::string("sofic"));
    sys.z = a.word(j.at("z").get<std::string>());
    sys.one = a.word(j.at("one").get<std::string>());
    sys.p = j.at("p").get<long long>();
    sys.q = j.at("q").get<long long>();
    sys.K = j.at("K").get<long long>();
    sys.s = j.at("s").get<long long>();
    sys.gl = a.word(j.at("gl").get<std::string>());
    sys.gr = a.word(j.at("gr").get<std::string>());
    if (j.contains("n")) sys.n_param = j.at("n").get<long long>();
    if (j.contains("N")) sys.N = j.at("N").get<long long>();
    if (j.contains("N1")) sys.N1 = j.at("N1").get<long long>();
    for (const auto& st : j.at("stages")) sys.stages.push_back(marker_from_json(st, ambient));
    sys.has_p3 = sys.variant == "sofic";
    if (j.contains("p3_tables"))
        for (const auto& tt : j.at("p3_tables")) {
            P3ClassTable t;
            t.class_state = tt.value("class_state", -1);
            t.w_prime = a.word(tt.at("w_prime").get<std::string>());
            t.w_s = a.word(tt.at("w_s").get<std::string>());
            for (const auto& w : tt.at("w_s_set")) t.w_s_set.push_back(a.word(w.get<std::string>()));
            sys.p3_tables.push_back(std::move(t));
        }
    if (j.contains("p4_tables"))
        for (const auto& tt : j.at("p4_tables")) {
            P4JTable t;
            t.j = tt.at("j").get<long long>();
            t.u_prime = a.word(tt.at("u_prime").get<std::string>());
            for (const auto& w : tt.at("elements")) t.elements.push_back(a.word(w.get<std::string>()));
            for (const auto& w : tt.at("padded_cycle"))
                t.padded_cycle.push_back(a.word(w.get<std::string>()));
            sys.p4_tables.push_back(std::move(t));
        }
    sys.B = complement_symbols(*ambient, sys.z);
    sys.fleets = FleetMatcher::make(sys.z, sys.gl, sys.gr, sys.p, sys.q);
    sys.recode.final_presentation = *ambient;
    sys.recode.z_final = sys.z;
    sys.recode.one = sys.one;
    sys.recode.p = sys.p;
    sys.recode.q = sys.q;
    sys.recode.K = sys.K;
    return sys;
}

inline void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write " + path);
    out << bytes;
}

inline std::string hash_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace gliderca
