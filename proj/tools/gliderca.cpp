// gliderca: construct, simulate and verify diffusive glider cellular
// automata on transitive sofic shifts given as labeled graph presentations.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <gliderca/gliderca.hpp>
#include <gliderca/json_io.hpp>
#include <gliderca/suites.hpp>

using namespace gliderca;

namespace {

struct Manifest {
    std::string command;
    std::vector<std::string> inputs;
    json parameters = json::object();
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> artifacts; // path, fnv hash
    double seconds = 0;

    json to_json() const {
        json j;
        j["command"] = command;
        j["inputs"] = inputs;
        j["parameters"] = parameters;
        j["seed"] = seed;
        json arts = json::array();
        for (const auto& [path, hash] : artifacts) arts.push_back({{"path", path}, {"hash", hash}});
        j["artifacts"] = arts;
        j["seconds"] = seconds;
        return j;
    }
};

void emit(const std::string& path, const std::string& bytes, Manifest& mf) {
    write_file(path, bytes);
    mf.artifacts.emplace_back(path, hash_hex(bytes));
}

GliderSystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open " + path);
    json j;
    in >> j;
    return system_from_json(j);
}

GliderSystem system_by_name(const std::string& fixture, const std::string& system_path) {
    if (!system_path.empty()) return load_system(system_path);
    if (fixture == "even") return fixture_even();
    if (fixture == "intro") return fixture_intro();
    if (fixture == "even-built") return build_GX(even_shift_presentation(), Word{0}, 1);
    if (fixture == "full-built") return build_GX(full_shift_presentation(), Word{0}, 1);
    throw error("unknown fixture '" + fixture + "' (even | intro | even-built | full-built)");
}

std::string render_rows(const GliderSystem& sys, const std::vector<TailConfiguration>& rows,
                        long long lo, long long hi, const std::string& format) {
    const Alphabet& a = sys.ambient->alphabet;
    if (format == "pbm") return render_pbm(a, rows, lo, hi);
    if (format == "ppm") return render_ppm(a, rows, lo, hi);
    if (format == "txt") return render_text(a, rows, lo, hi);
    throw error("unknown render format '" + format + "'");
}

std::pair<long long, long long> parse_window(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw error("window must be '<lo>:<hi>'");
    return {std::stoll(spec.substr(0, colon)), std::stoll(spec.substr(colon + 1))};
}

int run(int argc, char** argv) {
    CLI::App app{"glider cellular automata on sofic shifts"};
    app.require_subcommand(1);
    app.fallthrough(); // parent options (e.g. --manifest) after the subcommand

    std::string shift_path, z_text, out_path, system_path, fixture = "even";
    std::string config_text, window_text = "-40:40", format = "txt", suite, manifest_path;
    std::string json_out;
    long long k = 1, n = 0, steps = 20;
    std::uint64_t seed = 0;
    bool sync_mode = false, sofic_mode = false;
    bool fx_even = false, fx_intro = false, fx_counter = false;

    auto* analyze = app.add_subcommand("analyze", "determinism/synchronization/gap analysis of a word");
    analyze->add_option("--shift", shift_path, "presentation file (json)")->required();
    analyze->add_option("--z", z_text, "word to analyze")->required();
    analyze->add_option("--json", json_out, "write a machine-readable report");

    auto* recode = app.add_subcommand("recode", "run the conjugacy pipeline for a background word z");
    recode->add_option("--shift", shift_path)->required();
    recode->add_option("--z", z_text)->required();
    recode->add_option("--k", k, "z^k is synchronizing");
    recode->add_option("-o,--out", out_path, "pipeline artifact (json)");

    auto* build = app.add_subcommand("build", "build the glider system for a shift");
    build->add_option("--shift", shift_path)->required();
    build->add_option("--z", z_text)->required();
    build->add_option("--k", k);
    build->add_flag("--sofic", sofic_mode, "sofic path: G = P4 P3 P2 P1 (default)");
    build->add_flag("--sync", sync_mode, "synchronizing path: G_{X,n} = P4n P2 P1");
    build->add_option("--n", n, "P_{4,n} parameter for --sync");
    build->add_option("-o,--out", out_path, "system artifact (json)");

    auto* simulate_cmd = app.add_subcommand("simulate", "iterate the glider CA on a configuration");
    simulate_cmd->add_option("--system", system_path, "system artifact (json)");
    simulate_cmd->add_option("--fixture", fixture, "even | intro | even-built | full-built");
    simulate_cmd->add_option("--config", config_text, "configuration literal '<left> . <center> <right>'")
        ->required();
    simulate_cmd->add_option("--steps", steps)->required();
    simulate_cmd->add_option("--render", out_path, "write a space-time diagram");
    simulate_cmd->add_option("--window", window_text, "columns '<lo>:<hi>'");
    simulate_cmd->add_option("--format", format, "txt | pbm | ppm");

    auto* render_cmd = app.add_subcommand("render", "space-time diagram of a trajectory");
    render_cmd->add_option("--system", system_path);
    render_cmd->add_option("--fixture", fixture);
    render_cmd->add_option("--config", config_text)->required();
    render_cmd->add_option("--steps", steps)->required();
    render_cmd->add_option("--window", window_text);
    render_cmd->add_option("--format", format);
    render_cmd->add_option("-o,--out", out_path)->required();

    auto* verify = app.add_subcommand("verify", "run a verification suite (exit 1 on violation)");
    verify->add_option("--suite", suite, "speed | diffusion | bounds | ryan | sgap | sensitivity")
        ->required();
    verify->add_option("--system", system_path);
    verify->add_option("--fixture", fixture);
    verify->add_option("--seed", seed);
    verify->add_option("--json", json_out, "write the report as json");

    auto* fixtures = app.add_subcommand("fixtures", "materialize the shipped fixtures");
    fixtures->add_flag("--even", fx_even, "even-shift glider system (equals the build output)");
    fixtures->add_flag("--intro", fx_intro, "introductory full-shift glider CA");
    fixtures->add_flag("--counterexample", fx_counter, "six-symbol arrow shift presentation");
    fixtures->add_option("-o,--out", out_path);

    app.add_option("--manifest", manifest_path, "write a run manifest (json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // usage errors
    }

    Manifest mf;
    mf.seed = seed;
    for (int i = 0; i < argc; ++i) mf.command += std::string(i ? " " : "") + argv[i];
    auto t0 = std::chrono::steady_clock::now();
    int code = 0;

    if (*analyze) {
        mf.inputs.push_back(shift_path);
        SoficPresentation input = load_presentation(shift_path);
        for (const auto& w : input.warnings) std::cerr << "warning: " << w << "\n";
        SoficPresentation p = fischer_cover(input);
        Word z = p.alphabet.word(z_text);
        json rep;
        rep["states"] = p.state_count();
        rep["right_resolving"] = p.right_resolving;
        rep["transitive"] = is_transitive(p);
        rep["word"] = z_text;
        bool dist = std::set<Sym>(z.begin(), z.end()).size() == z.size();
        rep["distinct_symbols"] = dist;
        if (dist) {
            rep["future_deterministic"] = is_future_deterministic(p, z);
            rep["past_deterministic"] = is_past_deterministic(p, z);
        }
        bool is_sync = is_synchronizing(p, z);
        rep["synchronizing"] = is_sync;
        if (is_sync) {
            std::set<Sym> b = complement_symbols(p, z);
            auto g = gap_length_gcd(p, z, b);
            if (g) {
                rep["gap_length_gcd"] = *g;
                rep["K"] = gcd_ll(static_cast<long long>(z.size()), *g);
            } else {
                rep["gap_length_gcd"] = nullptr;
            }
            long long thr = 0;
            std::set<int> classes =
                detail::saturate_classes(p, focus_state(p, z), b, 1, thr, 1000000);
            rep["gap_class_count"] = classes.size();
        }
        std::cout << rep.dump(2) << "\n";
        if (!json_out.empty()) emit(json_out, rep.dump(2) + "\n", mf);
    } else if (*recode) {
        mf.inputs.push_back(shift_path);
        mf.parameters = {{"z", z_text}, {"k", k}};
        SoficPresentation p = load_presentation(shift_path);
        RecodingPipeline pipe = make_zero(p, p.alphabet.word(z_text), k);
        derive_one(pipe);
        json j = pipeline_to_json(pipe);
        const Alphabet& fa = pipe.final_presentation.alphabet;
        std::cout << "steps: " << pipe.steps.size() << "\n"
                  << "z: " << fa.str(pipe.z_final) << "  one: " << fa.str(pipe.one)
                  << "  p=" << pipe.p << " q=" << pipe.q << " K=" << pipe.K << "\n";
        if (!out_path.empty()) emit(out_path, j.dump(2) + "\n", mf);
    } else if (*build) {
        mf.inputs.push_back(shift_path);
        mf.parameters = {{"z", z_text}, {"k", k}, {"sync", sync_mode}, {"n", n}};
        SoficPresentation p = load_presentation(shift_path);
        GliderSystem sys =
            sync_mode ? build_GXn(p, p.alphabet.word(z_text), k,
                                  n > 0 ? std::optional<long long>(n) : std::nullopt)
                      : build_GX(p, p.alphabet.word(z_text), k);
        const Alphabet& a = sys.ambient->alphabet;
        std::cout << "variant: " << sys.variant << "\n"
                  << "z=" << a.str(sys.z) << " one=" << a.str(sys.one) << " p=" << sys.p
                  << " q=" << sys.q << " K=" << sys.K << " s=" << sys.s << "\n"
                  << "gl=" << a.str(sys.gl) << " gr=" << a.str(sys.gr) << "\n"
                  << "stages: " << sys.stages.size();
        if (sys.N) std::cout << "  N=" << *sys.N;
        if (sys.N1) std::cout << " N1=" << *sys.N1;
        if (sys.n_param) std::cout << " n=" << *sys.n_param;
        std::cout << "\n";
        if (!out_path.empty()) emit(out_path, system_to_json(sys).dump(2) + "\n", mf);
    } else if (*simulate_cmd || *render_cmd) {
        if (!system_path.empty()) mf.inputs.push_back(system_path);
        mf.parameters = {{"config", config_text}, {"steps", steps}, {"window", window_text}};
        GliderSystem sys = system_by_name(fixture, system_path);
        TailConfiguration x = parse_configuration(sys.ambient->alphabet, config_text);
        Trajectory tr = simulate(sys, x, steps);
        auto [lo, hi] = parse_window(window_text);
        std::string bytes = render_rows(sys, tr.rows, lo, hi, format);
        if (!out_path.empty()) {
            emit(out_path, bytes, mf);
            std::cout << "wrote " << out_path << " (" << bytes.size() << " bytes)\n";
        } else {
            std::cout << bytes;
        }
    } else if (*verify) {
        if (!system_path.empty()) mf.inputs.push_back(system_path);
        mf.parameters = {{"suite", suite}};
        SuiteReport rep;
        if (suite == "speed")
            rep = suite_speed(system_by_name(fixture, system_path), seed, 100, 20, 100);
        else if (suite == "diffusion") {
            GliderSystem sys = system_by_name(fixture, system_path);
            std::optional<long long> bound;
            if (sys.variant == "sync") bound = sys.n_param;
            rep = suite_diffusion(sys, seed, 200, 40, 5, bound);
        } else if (suite == "bounds")
            rep = suite_bounds(system_by_name(fixture.empty() || fixture == "even" ? "even-built" : fixture,
                                              system_path),
                               seed, 50, 500);
        else if (suite == "ryan")
            rep = suite_ryan(even_shift_presentation(), Word{0}, seed, 50);
        else if (suite == "sgap")
            rep = suite_sgap(seed, 100, 1000);
        else if (suite == "sensitivity")
            rep = suite_sensitivity(build_GX(even_shift_presentation(), Word{0}, 1), seed, 6, 3, 60);
        else
            throw error("unknown suite '" + suite + "'");
        for (const auto& d : rep.details) std::cout << d << "\n";
        std::cout << "suite " << rep.name << ": " << (rep.pass ? "PASS" : "FAIL") << "\n";
        if (!json_out.empty()) {
            json j = {{"suite", rep.name}, {"pass", rep.pass}, {"seed", seed}, {"details", rep.details}};
            emit(json_out, j.dump(2) + "\n", mf);
        }
        if (!rep.pass) code = 1;
    } else if (*fixtures) {
        json j;
        if (fx_counter) {
            j = presentation_to_json(counterexample_presentation());
        } else if (fx_intro) {
            j = system_to_json(fixture_intro());
        } else {
            j = system_to_json(fixture_even());
            (void)fx_even;
        }
        if (!out_path.empty()) {
            emit(out_path, j.dump(2) + "\n", mf);
            std::cout << "wrote " << out_path << "\n";
        } else {
            std::cout << j.dump(2) << "\n";
        }
    }

    mf.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!manifest_path.empty()) write_file(manifest_path, mf.to_json().dump(2) + "\n");
    return code;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError&) {
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
