// Command-line front end: parses morphism description files, runs the
// deciders and the finite-prefix instruments, and emits text or JSON reports.
//
// Exit codes for `decide`: 0 almost periodic, 1 not, 2 unusable input.
// `crosscheck` exits 0 when every suite passes, 1 otherwise.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "morphic/crosscheck.hpp"
#include "morphic/graph.hpp"
#include "morphic/measures.hpp"
#include "morphic/prefix.hpp"
#include "morphic/report.hpp"
#include "morphic/spec_format.hpp"
#include "morphic/tail_graph.hpp"

namespace {

using morphic::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw morphic::InputError("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

morphic::MorphicInput load_input(const std::string& path) {
    return morphic::build_input(morphic::parse_spec(read_file(path)));
}

std::size_t prefix_cap_from_env() {
    if (const char* cap = std::getenv("MORPHIC_PREFIX_CAP")) {
        const long long parsed = std::atoll(cap);
        if (parsed > 0)
            return static_cast<std::size_t>(parsed);
    }
    return morphic::kDefaultPrefixCap;
}

morphic::Word parse_factor(const morphic::Alphabet& a, const std::string& text) {
    const std::vector<std::string> tokens = morphic::detail::split_tokens(text);
    if (tokens.size() > 1 || !a.single_char_symbols())
        return a.word(tokens);
    return a.word_from_chars(tokens.empty() ? std::string() : tokens.front());
}

void print_decide_text(const morphic::RunReport& report) {
    const json& body = report.body;
    if (body.contains("error")) {
        std::cout << "error: " << body["error"].get<std::string>() << "\n";
        return;
    }
    const json& decision = body["decision"];
    const bool ap = decision["verdict"] == "almost_periodic";
    std::cout << "verdict: " << (ap ? "almost periodic" : "not almost periodic")
              << "  (route: " << body["route"].get<std::string>() << ")\n";
    for (const auto& clause : decision["clauses"]) {
        std::cout << "  [" << (clause["satisfied"].get<bool>() ? "ok" : "violated") << "] "
                  << clause["name"].get<std::string>();
        if (clause.contains("detail"))
            std::cout << " -- " << clause["detail"].get<std::string>();
        std::cout << "\n";
    }
    if (decision.contains("witness")) {
        const json& w = decision["witness"];
        std::cout << "  witness: " << w["kind"].get<std::string>();
        if (w["kind"] == "unreachable_pair")
            std::cout << " " << w["from"].get<std::string>() << " -/-> "
                      << w["to"].get<std::string>();
        if (w["kind"] == "tail_cycle")
            std::cout << " (" << w["side"].get<std::string>() << " side, edge from "
                      << w["edge_from"].get<std::string>() << ", label \""
                      << w["label"].get<std::string>() << "\")";
        if (w["kind"] == "uncovered_letters") {
            std::cout << " letters:";
            for (const auto& l : w["letters"])
                std::cout << " " << l.get<std::string>();
        }
        std::cout << "\n";
    }
    if (decision.contains("notes"))
        for (const auto& note : decision["notes"])
            std::cout << "  note: " << note.get<std::string>() << "\n";
    if (body.contains("evidence")) {
        const json& e = body["evidence"];
        std::cout << "evidence: " << (e["consistent"].get<bool>() ? "CONSISTENT" : "GREW")
                  << " over prefixes " << e["prefix_small"] << " -> " << e["prefix_large"]
                  << " (" << e["factors_checked"] << " factors, finite-scale only)\n";
        for (const auto& f : e["grew"])
            std::cout << "  grew: \"" << f["factor"].get<std::string>() << "\" gap "
                      << f["gap_small"].dump() << " -> " << f["gap_large"].dump() << "\n";
    }
}

void dump_graphs(const morphic::MorphicInput& input, const std::string& path) {
    const morphic::Morphism m = morphic::trim_reachable(input.morphism, input.start);
    std::string out = morphic::to_dot(morphic::occurrence_graph(m), m.alphabet(), "occurrence");
    if (m.is_non_erasing()) {
        const morphic::GrowthClassification cls = morphic::classify_letters(m);
        for (const morphic::TailGraph& t : {morphic::left_tail_graph(m, cls),
                                            morphic::right_tail_graph(m, cls)}) {
            out += "digraph \"";
            out += (t.side == morphic::TailSide::Left ? "left_tails" : "right_tails");
            out += "\" {\n";
            for (std::size_t i = 0; i < t.vertices.size(); ++i) {
                out += "  \"" + m.alphabet().name(t.vertices[i]) + "\" -> \"" +
                       m.alphabet().name(t.target[i]) + "\" [label=\"" +
                       m.alphabet().format(t.label[i]) + "\"];\n";
            }
            out += "}\n";
        }
    }
    if (path == "-") {
        std::cout << out;
    } else {
        std::ofstream f(path);
        f << out;
    }
}

int run_crosscheck_cli(const std::string& corpus_dir, const std::string& suite,
                       std::uint64_t seed, int count, int binary_len, bool as_json) {
    std::vector<morphic::SuiteResult> results;
    const bool all = suite == "all";
    if (all || suite == "corpus")
        results.push_back(morphic::crosscheck_corpus(corpus_dir));
    if (all || suite == "binary")
        results.push_back(morphic::crosscheck_binary(binary_len));
    if (all || suite == "uniform")
        results.push_back(morphic::crosscheck_uniform_exhaustive(3, 2));
    if (all || suite == "uniform-sampled")
        results.push_back(morphic::crosscheck_uniform_sampled(seed, count, 3, 3));
    if (all || suite == "oracle") {
        morphic::OracleCheckOptions opt;
        opt.consistent_small = 10'000;
        opt.consistent_large = 100'000;
        opt.growth_small = 10'000;
        opt.growth_large = 1'000'000;
        results.push_back(morphic::crosscheck_oracle(seed, count, opt));
    }

    bool ok = true;
    if (as_json) {
        json out = json::array();
        for (const auto& r : results) {
            json jr;
            jr["suite"] = r.name;
            jr["checked"] = r.checked;
            jr["passed"] = r.passed;
            jr["failures"] = r.failures;
            jr["seed"] = seed;
            out.push_back(jr);
            ok = ok && r.ok();
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            std::cout << (r.ok() ? "PASS" : "FAIL") << " " << r.name << ": " << r.passed << "/"
                      << r.checked << " (seed " << seed << ")\n";
            for (const auto& f : r.failures)
                std::cout << "  " << f << "\n";
            ok = ok && r.ok();
        }
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"decide almost periodicity (uniform recurrence) of morphic sequences"};
    app.require_subcommand(1);

    std::string file;
    std::string dot_path;
    std::string factor_text;
    std::string corpus_dir = "corpus";
    std::string suite = "all";
    std::string expected;
    bool as_json = false;
    bool verify = false;
    bool timings = false;
    bool csv = false;
    std::size_t length = 64;
    std::size_t small = 10'000;
    std::size_t large = 100'000;
    std::size_t aligned = 0;
    std::size_t nmax = 3;
    int factor_len = 3;
    int count = 50;
    int binary_len = 3;
    std::uint64_t seed = 1;

    CLI::App* decide = app.add_subcommand("decide", "decide one description file");
    decide->add_option("file", file)->required();
    decide->add_flag("--json", as_json, "emit the JSON report");
    decide->add_flag("--verify", verify, "attach finite-prefix evidence");
    decide->add_option("--small", small, "evidence small prefix length");
    decide->add_option("--large", large, "evidence large prefix length");
    decide->add_option("--factor-len", factor_len, "evidence max factor length");
    decide->add_flag("--timings", timings, "include timings in the JSON report");
    decide->add_option("--dot", dot_path, "write occurrence and tail graphs as DOT ('-' = stdout)");

    CLI::App* classify = app.add_subcommand("classify", "growth partition of the alphabet");
    classify->add_option("file", file)->required();
    classify->add_flag("--json", as_json);
    classify->add_option("--dot", dot_path);

    CLI::App* generate = app.add_subcommand("generate", "print a prefix of the sequence");
    generate->add_option("file", file)->required();
    generate->add_option("--length", length, "prefix length")->required();

    CLI::App* gaps = app.add_subcommand("gaps", "occurrence gaps of a factor in a prefix");
    gaps->add_option("file", file)->required();
    gaps->add_option("--factor", factor_text, "factor over the output alphabet")->required();
    gaps->add_option("--length", length, "prefix length");
    gaps->add_option("--aligned", aligned, "also report k-aligned occurrences");
    gaps->add_flag("--json", as_json);
    gaps->add_flag("--csv", csv, "factor,max_gap,prefix_length row");

    CLI::App* regulator = app.add_subcommand("regulator", "empirical recurrence windows");
    regulator->add_option("file", file)->required();
    regulator->add_option("--nmax", nmax, "max factor length");
    regulator->add_option("--length", length, "prefix length");
    regulator->add_flag("--json", as_json);

    CLI::App* crosscheck = app.add_subcommand("crosscheck", "agreement suites");
    crosscheck->add_option("--corpus", corpus_dir, "corpus directory");
    crosscheck->add_option("--suite", suite,
                           "all|corpus|binary|uniform|uniform-sampled|oracle");
    crosscheck->add_option("--seed", seed);
    crosscheck->add_option("--count", count);
    crosscheck->add_option("--binary-len", binary_len);
    crosscheck->add_flag("--json", as_json);

    CLI::App* corpus = app.add_subcommand("corpus", "bundled corpus");
    CLI::App* corpus_list = corpus->add_subcommand("list", "list entries and expected verdicts");
    corpus_list->add_option("--dir", corpus_dir);
    corpus_list->add_flag("--json", as_json);

    CLI11_PARSE(app, argc, argv);
    const std::size_t cap = prefix_cap_from_env();

    try {
        if (decide->parsed()) {
            const morphic::MorphicInput input = load_input(file);
            morphic::RunOptions options;
            options.verify = verify;
            options.verify_small = small;
            options.verify_large = large;
            options.verify_factor_len = factor_len;
            options.include_timings = timings;
            options.prefix_cap = cap;
            const morphic::RunReport report = morphic::run_decide(input, options);
            if (!dot_path.empty())
                dump_graphs(input, dot_path);
            if (as_json)
                std::cout << report.body.dump(2) << "\n";
            else
                print_decide_text(report);
            return report.exit_code;
        }
        if (classify->parsed()) {
            const morphic::MorphicInput input = load_input(file);
            const morphic::RunReport report = morphic::run_classify(input);
            if (!dot_path.empty())
                dump_graphs(input, dot_path);
            if (as_json) {
                std::cout << report.body.dump(2) << "\n";
            } else if (report.exit_code == 0) {
                const json& cls = report.body["classification"];
                for (const char* key : {"growing", "bounded", "unit_image", "unit_cycles"}) {
                    std::cout << key << ":";
                    for (const auto& l : cls[key])
                        std::cout << " " << l.get<std::string>();
                    std::cout << "\n";
                }
            } else {
                std::cout << "error: " << report.body["error"].get<std::string>() << "\n";
            }
            return report.exit_code;
        }
        if (generate->parsed()) {
            const morphic::MorphicInput input = load_input(file);
            const morphic::Word prefix = morphic::generate_prefix(
                input.morphism, input.start, length, input.coding, cap);
            const morphic::Alphabet& out_alpha =
                input.coding ? input.coding->target() : input.morphism.alphabet();
            std::cout << out_alpha.format(prefix) << "\n";
            return 0;
        }
        if (gaps->parsed()) {
            const morphic::MorphicInput input = load_input(file);
            const morphic::Alphabet& out_alpha =
                input.coding ? input.coding->target() : input.morphism.alphabet();
            const morphic::Word prefix = morphic::generate_prefix(
                input.morphism, input.start, length, input.coding, cap);
            const morphic::Word factor = parse_factor(out_alpha, factor_text);
            const morphic::GapReport report = morphic::factor_gaps(prefix, factor);
            if (csv) {
                std::cout << "factor,max_gap,prefix_length\n"
                          << out_alpha.format(factor) << ","
                          << (report.max_gap ? std::to_string(*report.max_gap) : "inf") << ","
                          << report.prefix_length << "\n";
            } else if (as_json) {
                json out;
                out["factor"] = out_alpha.format(factor);
                out["prefix_length"] = report.prefix_length;
                out["occurrences"] = report.positions.size();
                out["max_gap"] = report.max_gap ? json(*report.max_gap) : json(nullptr);
                if (aligned > 0) {
                    out["aligned_k"] = aligned;
                    out["aligned_occurrences"] =
                        morphic::aligned_occurrences(prefix, factor, aligned).size();
                }
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << "occurrences: " << report.positions.size() << ", max gap: "
                          << (report.max_gap ? std::to_string(*report.max_gap) : "inf") << "\n";
                if (aligned > 0)
                    std::cout << aligned << "-aligned occurrences: "
                              << morphic::aligned_occurrences(prefix, factor, aligned).size()
                              << "\n";
            }
            return 0;
        }
        if (regulator->parsed()) {
            const morphic::MorphicInput input = load_input(file);
            const morphic::Word prefix = morphic::generate_prefix(
                input.morphism, input.start, length, input.coding, cap);
            const morphic::RegulatorEstimate est = morphic::regulator_estimate(prefix, nmax);
            if (as_json) {
                json windows = json::array();
                for (const auto& w : est.window)
                    windows.push_back(w ? json(*w) : json(nullptr));
                json out;
                out["prefix_length"] = prefix.size();
                out["window"] = windows;
                std::cout << out.dump(2) << "\n";
            } else {
                for (std::size_t n = 1; n <= est.window.size(); ++n)
                    std::cout << "f(" << n << ") = "
                              << (est.window[n - 1] ? std::to_string(*est.window[n - 1])
                                                    : std::string("undefined"))
                              << "\n";
            }
            return 0;
        }
        if (crosscheck->parsed())
            return run_crosscheck_cli(corpus_dir, suite, seed, count, binary_len, as_json);
        if (corpus_list->parsed()) {
            json out = json::array();
            std::vector<std::filesystem::path> files;
            for (const auto& entry : std::filesystem::directory_iterator(corpus_dir))
                if (entry.path().extension() == ".morph")
                    files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files) {
                const morphic::MorphicInput input = load_input(f.string());
                if (as_json) {
                    json e;
                    e["file"] = f.filename().string();
                    e["name"] = input.name;
                    e["expect"] = input.expect;
                    out.push_back(e);
                } else {
                    std::cout << f.filename().string() << "  "
                              << (input.name.empty() ? "-" : input.name) << "  "
                              << (input.expect.empty() ? "-" : input.expect) << "\n";
                }
            }
            if (as_json)
                std::cout << out.dump(2) << "\n";
            return 0;
        }
    } catch (const morphic::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
