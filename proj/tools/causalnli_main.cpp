#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "causalnli/checks.hpp"
#include "causalnli/cpdag.hpp"
#include "causalnli/dataset.hpp"
#include "causalnli/enumerate.hpp"
#include "causalnli/evaluation.hpp"
#include "causalnli/pc.hpp"
#include "causalnli/rng.hpp"
#include "causalnli/sha256.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kRngName = "splitmix64-v1";

namespace fs = std::filesystem;
using namespace causalnli;

std::string default_out_dir() {
    if (const char* env = std::getenv("CAUSALNLI_OUT")) return env;
    return "out";
}

struct GenerateConfig {
    int n_min = 2;
    int n_max = 6;
    std::uint64_t seed = 0;
    std::string out_dir = default_out_dir();
    std::vector<std::string> formats = {"jsonl"};
    std::vector<std::string> perturbations;
    std::string template_style = "default";
    std::string template_file;
    int jobs = 1;
};

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        const auto comma = value.find(',', start);
        const std::string item = comma == std::string::npos
                                     ? value.substr(start)
                                     : value.substr(start, comma - start);
        if (!item.empty()) out.push_back(item);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

// Key=value config file; values from the command line win. Keys use the
// config-field names (n_min, n_max, seed, out_dir, formats, perturbations,
// template_style, templates, jobs); '#' starts a comment line.
void apply_config_file(const std::string& path, const CLI::App& cmd,
                       GenerateConfig& config) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    const auto overridden = [&cmd](const std::string& flag) {
        return cmd.get_option(flag)->count() > 0;
    };
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(line_number) +
                                     " has no '='");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "n_min") {
            if (!overridden("--n-min")) config.n_min = std::stoi(value);
        } else if (key == "n_max") {
            if (!overridden("--n-max")) config.n_max = std::stoi(value);
        } else if (key == "seed") {
            if (!overridden("--seed")) config.seed = std::stoull(value);
        } else if (key == "out_dir") {
            if (!overridden("--out")) config.out_dir = value;
        } else if (key == "formats") {
            if (!overridden("--format")) config.formats = split_list(value);
        } else if (key == "perturbations") {
            if (!overridden("--perturb")) config.perturbations = split_list(value);
        } else if (key == "template_style") {
            if (!overridden("--template-style")) config.template_style = value;
        } else if (key == "templates") {
            if (!overridden("--templates")) config.template_file = value;
        } else if (key == "jobs") {
            if (!overridden("--jobs")) config.jobs = std::stoi(value);
        } else {
            throw std::runtime_error("unknown config key: " + key);
        }
    }
}

std::vector<SampleRecord> read_corpus(const std::string& path) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
        return read_csv(path);
    return read_jsonl(path);
}

std::vector<SampleRecord> apply_perturbation(
    const std::vector<SampleRecord>& records, const std::string& kind) {
    std::vector<SampleRecord> out;
    out.reserve(records.size());
    for (const SampleRecord& rec : records)
        out.push_back(kind == "paraphrase" ? paraphrase(rec)
                                           : refactor_variables(rec));
    return out;
}

int cmd_generate(const GenerateConfig& config) {
    TemplateSet defaults = TemplateSet::default_set();
    TemplateSet paraphrases = TemplateSet::paraphrase_set();
    if (!config.template_file.empty())
        load_template_overrides(config.template_file, defaults, paraphrases);

    BuildOptions options;
    options.n_min = config.n_min;
    options.n_max = config.n_max;
    options.templates =
        config.template_style == "paraphrase" ? paraphrases : defaults;
    options.jobs = config.jobs;

    fs::create_directories(config.out_dir);
    std::cerr << "building corpus for n=" << config.n_min << ".." << config.n_max
              << " (seed " << config.seed << ")\n";
    const std::vector<SampleRecord> records = build(options, config.seed);
    std::cerr << "built " << records.size() << " records\n";

    nlohmann::ordered_json files = nlohmann::ordered_json::object();
    const auto emit = [&files](const std::string& path) {
        files[fs::path(path).filename().string()] = {
            {"sha256", sha256_file_hex(path)},
            {"bytes", fs::file_size(path)},
        };
        std::cerr << "wrote " << path << "\n";
    };

    for (const std::string& format : config.formats) {
        const std::string path =
            (fs::path(config.out_dir) / ("corpus." + format)).string();
        if (format == "jsonl")
            write_jsonl(records, path);
        else
            write_csv(records, path);
        emit(path);
    }
    for (const std::string& kind : config.perturbations) {
        const std::vector<SampleRecord> perturbed =
            apply_perturbation(records, kind);
        const std::string path =
            (fs::path(config.out_dir) / ("corpus_" + kind + ".jsonl")).string();
        write_jsonl(perturbed, path);
        emit(path);
    }
    {
        const std::string path = (fs::path(config.out_dir) / "stats.json").string();
        std::ofstream out(path, std::ios::binary);
        out << stats_to_json(stats(records));
        out.close();
        emit(path);
    }

    nlohmann::ordered_json manifest{
        {"tool", "causalnli"},
        {"version", kVersion},
        {"rng", kRngName},
        {"config",
         {{"n_min", config.n_min},
          {"n_max", config.n_max},
          {"seed", config.seed},
          {"formats", config.formats},
          {"perturbations", config.perturbations},
          {"template_style", config.template_style}}},
        {"files", files},
    };
    std::ofstream manifest_out(fs::path(config.out_dir) / "manifest.json",
                               std::ios::binary);
    manifest_out << manifest.dump(2) << "\n";
    std::cerr << "wrote " << (fs::path(config.out_dir) / "manifest.json").string()
              << "\n";
    return 0;
}

int cmd_perturb(const std::string& in_path, const std::string& kind,
                std::string out_path) {
    const std::vector<SampleRecord> records = read_corpus(in_path);
    const std::vector<SampleRecord> perturbed = apply_perturbation(records, kind);
    if (out_path.empty()) {
        fs::path p(in_path);
        out_path = (p.parent_path() / (p.stem().string() + "_" + kind + ".jsonl"))
                       .string();
    }
    write_jsonl(perturbed, out_path);
    std::cerr << "wrote " << out_path << " (" << perturbed.size() << " records)\n";
    return 0;
}

int cmd_stats(const std::string& in_path, const std::string& out_path) {
    const std::string json = stats_to_json(stats(read_corpus(in_path)));
    if (out_path.empty()) {
        std::cout << json;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << json;
        std::cerr << "wrote " << out_path << "\n";
    }
    return 0;
}

int cmd_pmi(const std::string& in_path, const std::string& out_path, int max_len,
            int top) {
    std::vector<PmiRow> rows = pmi_table(read_corpus(in_path), max_len);
    if (top > 0 && static_cast<int>(rows.size()) > top) rows.resize(top);
    if (out_path.empty()) {
        std::cout << "ngram\tpmi_neg\tpmi_pos\tabs_diff\n";
        for (const PmiRow& row : rows)
            std::cout << row.ngram << '\t' << row.pmi_neg << '\t' << row.pmi_pos
                      << '\t' << row.abs_diff << '\n';
    } else {
        write_pmi_tsv(rows, out_path);
        std::cerr << "wrote " << out_path << " (" << rows.size() << " rows)\n";
    }
    return 0;
}

int cmd_score(const std::string& pred_path, const std::string& gold_path,
              const std::string& out_path) {
    const Metrics m =
        score(read_predictions_jsonl(pred_path), read_corpus(gold_path));
    const std::string json = metrics_to_json(m);
    if (out_path.empty()) {
        std::cout << json;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << json;
        std::cerr << "wrote " << out_path << "\n";
    }
    return 0;
}

int cmd_pc_check(int n_min, int n_max, int samples, std::uint64_t seed) {
    bool all_ok = true;
    for (int n = n_min; n <= n_max; ++n) {
        std::int64_t checked = 0, mismatches = 0;
        if (n <= 5) {
            for (const Dag& g : enumerate_dags(n)) {
                ++checked;
                if (!(pc(SignatureOracle(ci_signature(g))) == cpdag_of(g)))
                    ++mismatches;
            }
        } else {
            SplitMix64 rng = SplitMix64::substream(seed, 0x9c6);
            for (int s = 0; s < samples; ++s) {
                std::uint64_t bits = 0;
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j)
                        if (rng.bounded(2)) bits |= std::uint64_t{1} << (i * 8 + j);
                const Dag g = Dag::from_bits(n, bits);
                ++checked;
                if (!(pc(SignatureOracle(ci_signature(g))) == cpdag_of(g)))
                    ++mismatches;
            }
        }
        std::cout << "n=" << n << ": " << checked << " graphs, " << mismatches
                  << " mismatches" << (n <= 5 ? " (exhaustive)" : " (sampled)")
                  << "\n";
        if (mismatches > 0) all_ok = false;
    }
    std::cout << (all_ok ? "pc-check: OK\n" : "pc-check: FAILED\n");
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic causal-graph corpus generator and evaluator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    GenerateConfig gen;
    std::string config_path;
    CLI::App* generate = app.add_subcommand(
        "generate", "Build the corpus, splits, stats, and manifest");
    generate->add_option("--config", config_path,
                         "Config file of key=value lines (flags win)");
    generate->add_option("--n-min", gen.n_min, "Smallest node count")
        ->check(CLI::Range(2, 8));
    generate->add_option("--n-max", gen.n_max, "Largest node count")
        ->check(CLI::Range(2, 8));
    generate->add_option("--seed", gen.seed, "Split/sampling seed (default 0)");
    generate->add_option("--out", gen.out_dir,
                         "Output directory (default $CAUSALNLI_OUT or ./out)");
    generate->add_option("--format", gen.formats, "Corpus formats: jsonl, csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    generate
        ->add_option("--perturb", gen.perturbations,
                     "Also write perturbed copies: paraphrase, refactor")
        ->check(CLI::IsMember({"paraphrase", "refactor"}));
    generate
        ->add_option("--template-style", gen.template_style,
                     "Hypothesis template style")
        ->check(CLI::IsMember({"default", "paraphrase"}));
    generate->add_option("--templates", gen.template_file,
                         "Template override file (key=value per line)");
    generate->add_option("--jobs", gen.jobs, "Worker threads")
        ->check(CLI::Range(1, 64));

    std::string in_path, out_path, kind, pred_path, gold_path;
    int max_len = 4, top = 0, samples = 500;
    CLI::App* perturb =
        app.add_subcommand("perturb", "Apply a perturbation to a corpus file");
    perturb->add_option("--in", in_path, "Input corpus (.jsonl or .csv)")
        ->required();
    perturb->add_option("--perturb", kind, "Perturbation kind")
        ->required()
        ->check(CLI::IsMember({"paraphrase", "refactor"}));
    perturb->add_option("--out", out_path, "Output path (default derived)");

    CLI::App* stats_cmd =
        app.add_subcommand("stats", "Corpus statistics as JSON");
    stats_cmd->add_option("--in", in_path, "Input corpus")->required();
    stats_cmd->add_option("--out", out_path, "Output path (default stdout)");

    CLI::App* pmi = app.add_subcommand(
        "pmi", "n-gram/label pointwise mutual information table");
    pmi->add_option("--in", in_path, "Input corpus")->required();
    pmi->add_option("--out", out_path, "Output TSV (default stdout)");
    pmi->add_option("--max-len", max_len, "Longest n-gram")->check(CLI::Range(1, 8));
    pmi->add_option("--top", top, "Keep only the top rows (0 = all)");

    CLI::App* score_cmd =
        app.add_subcommand("score", "Score a prediction file against a corpus");
    score_cmd->add_option("--pred", pred_path, "Predictions JSONL of {id, label}")
        ->required();
    score_cmd->add_option("--gold", gold_path, "Gold corpus")->required();
    score_cmd->add_option("--out", out_path, "Metrics JSON (default stdout)");

    int pc_n_min = 2, pc_n_max = 6;
    std::uint64_t pc_seed = 0;
    CLI::App* pc_check = app.add_subcommand(
        "pc-check", "Verify PC output equals the CPDAG of every source DAG");
    pc_check->add_option("--n-min", pc_n_min)->check(CLI::Range(2, 6));
    pc_check->add_option("--n-max", pc_n_max)->check(CLI::Range(2, 6));
    pc_check->add_option("--samples", samples, "Random graphs for n=6");
    pc_check->add_option("--seed", pc_seed);

    CheckOptions check_options;
    CLI::App* check = app.add_subcommand(
        "check", "Run the full reproduction suite and print pass/fail lines");
    check->add_option("--n-max", check_options.n_max, "Depth (default 6)")
        ->check(CLI::Range(2, 6));
    check->add_option("--seed", check_options.seed);
    check->add_option("--jobs", check_options.jobs)->check(CLI::Range(1, 64));

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) {
            if (!config_path.empty()) apply_config_file(config_path, *generate, gen);
            if (gen.n_min > gen.n_max)
                throw std::runtime_error("--n-min must not exceed --n-max");
            return cmd_generate(gen);
        }
        if (perturb->parsed()) return cmd_perturb(in_path, kind, out_path);
        if (stats_cmd->parsed()) return cmd_stats(in_path, out_path);
        if (pmi->parsed()) return cmd_pmi(in_path, out_path, max_len, top);
        if (score_cmd->parsed()) return cmd_score(pred_path, gold_path, out_path);
        if (pc_check->parsed())
            return cmd_pc_check(pc_n_min, pc_n_max, samples, pc_seed);
        if (check->parsed())
            return print_check_report(run_acceptance_checks(check_options),
                                      std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
