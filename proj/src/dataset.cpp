#include "causalnli/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "causalnli/enumerate.hpp"
#include "causalnli/errors.hpp"
#include "causalnli/mec.hpp"
#include "causalnli/rng.hpp"

namespace causalnli {

namespace {

std::vector<SampleRecord> records_for_mec(const Mec& mec, int n,
                                          const std::vector<std::string>& names,
                                          const TemplateSet& templates) {
    const std::string premise = verbalize_premise(mec.signature, names);
    const std::string key_hex = mec.key.hex();
    std::vector<SampleRecord> out;
    out.reserve(kRelationCount * n * (n - 1));
    for (const Hypothesis& h : all_hypotheses(n)) {
        SampleRecord rec;
        rec.n_nodes = n;
        rec.mec_key = key_hex;
        rec.pair_i = h.i;
        rec.pair_j = h.j;
        rec.relation = h.relation;
        rec.premise = premise;
        rec.hypothesis = verbalize_hypothesis(h, names, templates);
        rec.label = label(mec, h);
        rec.split = Split::kTest;
        rec.perturbation = Perturbation::kNone;
        rec.id = record_id(n, key_hex, h.i, h.j, h.relation, rec.perturbation);
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace

std::vector<SampleRecord> build_for_n(int node_count,
                                      const TemplateSet& templates, int jobs) {
    if (node_count < 2 || node_count > kMaxEnumerationNodes)
        throw std::invalid_argument("build: node count must be in [2, 8]");
    const int n = node_count;
    const std::vector<std::string> names = Dag::default_names(n);
    const std::vector<Mec> mecs = group_mecs(enumerate_dags(n));

    std::vector<std::vector<SampleRecord>> per_mec(mecs.size());
    if (jobs <= 1 || mecs.size() < 2) {
        for (std::size_t m = 0; m < mecs.size(); ++m)
            per_mec[m] = records_for_mec(mecs[m], n, names, templates);
    } else {
        std::atomic<std::size_t> cursor{0};
        auto worker = [&] {
            for (;;) {
                const std::size_t m = cursor.fetch_add(1);
                if (m >= mecs.size()) return;
                per_mec[m] = records_for_mec(mecs[m], n, names, templates);
            }
        };
        std::vector<std::thread> pool;
        const int thread_count =
            std::min<int>(jobs, static_cast<int>(mecs.size()));
        pool.reserve(thread_count);
        for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::vector<SampleRecord> out;
    std::size_t total = 0;
    for (const auto& block : per_mec) total += block.size();
    out.reserve(total);
    for (auto& block : per_mec)
        for (auto& rec : block) out.push_back(std::move(rec));
    std::sort(out.begin(), out.end(),
              [](const SampleRecord& a, const SampleRecord& b) { return a.id < b.id; });
    return out;
}

std::vector<SampleRecord> build(const BuildOptions& options, std::uint64_t seed) {
    if (options.n_min < 2 || options.n_min > options.n_max ||
        options.n_max > kMaxEnumerationNodes)
        throw std::invalid_argument("build: need 2 <= n_min <= n_max <= 8");
    std::vector<SampleRecord> out;
    for (int n = options.n_min; n <= options.n_max; ++n) {
        std::vector<SampleRecord> block =
            build_for_n(n, options.templates, options.jobs);
        out.insert(out.end(), std::make_move_iterator(block.begin()),
                   std::make_move_iterator(block.end()));
    }
    assign_splits(out, seed);
    return out;
}

void assign_splits(std::span<SampleRecord> records, std::uint64_t seed) {
    std::map<int, std::vector<std::size_t>> by_n;
    for (std::size_t k = 0; k < records.size(); ++k)
        by_n[records[k].n_nodes].push_back(k);

    for (auto& [n, indices] : by_n) {
        SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(n));
        deterministic_shuffle(indices, rng);
        const std::size_t count = indices.size();
        std::size_t test_count, dev_count;
        if (count < 1000) {
            test_count = count / 2;
            dev_count = count - test_count;
        } else {
            test_count = dev_count = std::min<std::size_t>(1000, count / 10);
        }
        for (std::size_t k = 0; k < count; ++k) {
            Split s = Split::kTrain;
            if (k < test_count)
                s = Split::kTest;
            else if (k < test_count + dev_count)
                s = Split::kDev;
            records[indices[k]].split = s;
        }
    }
}

CorpusStats stats(std::span<const SampleRecord> records) {
    struct SliceAccum {
        std::int64_t samples = 0, test = 0, dev = 0, train = 0, valid = 0;
        std::int64_t premise_tokens = 0, hypothesis_tokens = 0;
        std::unordered_set<std::string> vocab;
    };
    // Premise and hypothesis texts repeat heavily across records; token
    // counts and vocabulary contributions are cached by text.
    struct TextInfo {
        std::int64_t tokens;
        std::vector<std::string> distinct;
    };
    std::unordered_map<std::string, TextInfo> text_cache;
    const auto info_for = [&text_cache](const std::string& text) -> const TextInfo& {
        auto it = text_cache.find(text);
        if (it != text_cache.end()) return it->second;
        std::vector<std::string> tokens = tokenize(text);
        TextInfo info{static_cast<std::int64_t>(tokens.size()), {}};
        std::sort(tokens.begin(), tokens.end());
        tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
        info.distinct = std::move(tokens);
        return text_cache.emplace(text, std::move(info)).first->second;
    };

    std::map<int, SliceAccum> slices;
    SliceAccum overall;
    const auto add = [&](SliceAccum& acc, const SampleRecord& rec,
                         const TextInfo& premise, const TextInfo& hypothesis) {
        ++acc.samples;
        switch (rec.split) {
            case Split::kTest: ++acc.test; break;
            case Split::kDev: ++acc.dev; break;
            case Split::kTrain: ++acc.train; break;
        }
        acc.valid += rec.label;
        acc.premise_tokens += premise.tokens;
        acc.hypothesis_tokens += hypothesis.tokens;
        for (const std::string& t : premise.distinct) acc.vocab.insert(t);
        for (const std::string& t : hypothesis.distinct) acc.vocab.insert(t);
    };
    for (const SampleRecord& rec : records) {
        const TextInfo& premise = info_for(rec.premise);
        const TextInfo& hypothesis = info_for(rec.hypothesis);
        add(slices[rec.n_nodes], rec, premise, hypothesis);
        add(overall, rec, premise, hypothesis);
    }

    const auto finish = [](const SliceAccum& acc) {
        SliceStats s;
        s.samples = acc.samples;
        s.test = acc.test;
        s.dev = acc.dev;
        s.train = acc.train;
        if (acc.samples > 0) {
            s.premise_tokens_mean =
                static_cast<double>(acc.premise_tokens) / acc.samples;
            s.hypothesis_tokens_mean =
                static_cast<double>(acc.hypothesis_tokens) / acc.samples;
            s.valid_label_pct = 100.0 * acc.valid / acc.samples;
        }
        s.vocab_size = static_cast<std::int64_t>(acc.vocab.size());
        return s;
    };

    CorpusStats out;
    out.overall = finish(overall);
    for (const auto& [n, acc] : slices) out.by_n[n] = finish(acc);
    return out;
}

namespace {

nlohmann::ordered_json slice_to_json(const SliceStats& s) {
    return nlohmann::ordered_json{
        {"samples", s.samples},
        {"test", s.test},
        {"dev", s.dev},
        {"train", s.train},
        {"premise_tokens_mean", s.premise_tokens_mean},
        {"hypothesis_tokens_mean", s.hypothesis_tokens_mean},
        {"valid_label_pct", s.valid_label_pct},
        {"vocab_size", s.vocab_size},
    };
}

nlohmann::ordered_json record_to_json(const SampleRecord& rec) {
    return nlohmann::ordered_json{
        {"id", rec.id},
        {"n_nodes", rec.n_nodes},
        {"mec_key", rec.mec_key},
        {"pair", {rec.pair_i, rec.pair_j}},
        {"relation", relation_name(rec.relation)},
        {"premise", rec.premise},
        {"hypothesis", rec.hypothesis},
        {"label", rec.label},
        {"split", split_name(rec.split)},
        {"perturbation", perturbation_name(rec.perturbation)},
    };
}

SampleRecord record_from_json(const nlohmann::json& j) {
    const auto require = [&j](const char* field) -> const nlohmann::json& {
        const auto it = j.find(field);
        if (it == j.end()) throw SchemaError(field, "missing");
        return *it;
    };
    const auto require_string = [&require](const char* field) {
        const auto& v = require(field);
        if (!v.is_string()) throw SchemaError(field, "expected a string");
        return v.get<std::string>();
    };
    const auto require_int = [&require](const char* field) {
        const auto& v = require(field);
        if (!v.is_number_integer()) throw SchemaError(field, "expected an integer");
        return v.get<int>();
    };

    SampleRecord rec;
    rec.id = require_string("id");
    rec.n_nodes = require_int("n_nodes");
    rec.mec_key = require_string("mec_key");
    const auto& pair = require("pair");
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
        !pair[1].is_number_integer())
        throw SchemaError("pair", "expected [i, j]");
    rec.pair_i = pair[0].get<int>();
    rec.pair_j = pair[1].get<int>();
    try {
        rec.relation = relation_from_name(require_string("relation"));
        rec.premise = require_string("premise");
        rec.hypothesis = require_string("hypothesis");
        rec.label = require_int("label");
        rec.split = split_from_name(require_string("split"));
        rec.perturbation = perturbation_from_name(require_string("perturbation"));
    } catch (const std::invalid_argument& e) {
        throw SchemaError("record", e.what());
    }
    if (rec.label != 0 && rec.label != 1)
        throw SchemaError("label", "must be 0 or 1");
    return rec;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// One CSV row; handles quoted fields with doubled quotes.
std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const char c = line[k];
        if (quoted) {
            if (c == '"') {
                if (k + 1 < line.size() && line[k + 1] == '"') {
                    current += '"';
                    ++k;
                } else {
                    quoted = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

constexpr const char* kCsvHeader =
    "id,n_nodes,mec_key,pair,relation,premise,hypothesis,label,split,perturbation";

}  // namespace

std::string stats_to_json(const CorpusStats& stats) {
    nlohmann::ordered_json by_n = nlohmann::ordered_json::object();
    for (const auto& [n, s] : stats.by_n) by_n[std::to_string(n)] = slice_to_json(s);
    nlohmann::ordered_json j{{"overall", slice_to_json(stats.overall)},
                             {"by_n", by_n}};
    return j.dump(2) + "\n";
}

void write_jsonl(std::span<const SampleRecord> records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (const SampleRecord& rec : records) {
        out << record_to_json(rec).dump() << '\n';
        if (!out) throw std::runtime_error("write failed: " + path);
    }
}

std::vector<SampleRecord> read_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::vector<SampleRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw SchemaError("line " + std::to_string(out.size() + 1), e.what());
        }
        out.push_back(record_from_json(j));
    }
    return out;
}

void write_csv(std::span<const SampleRecord> records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << kCsvHeader << '\n';
    for (const SampleRecord& rec : records) {
        out << csv_escape(rec.id) << ',' << rec.n_nodes << ','
            << rec.mec_key << ',' << rec.pair_i << '-' << rec.pair_j << ','
            << relation_name(rec.relation) << ',' << csv_escape(rec.premise)
            << ',' << csv_escape(rec.hypothesis) << ',' << rec.label << ','
            << split_name(rec.split) << ',' << perturbation_name(rec.perturbation)
            << '\n';
        if (!out) throw std::runtime_error("write failed: " + path);
    }
}

std::vector<SampleRecord> read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw SchemaError("header", "unexpected CSV header");
    std::vector<SampleRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> fields = csv_split(line);
        if (fields.size() != 10)
            throw SchemaError("row " + std::to_string(out.size() + 1),
                              "expected 10 fields");
        SampleRecord rec;
        rec.id = fields[0];
        rec.n_nodes = std::stoi(fields[1]);
        rec.mec_key = fields[2];
        const auto dash = fields[3].find('-');
        if (dash == std::string::npos) throw SchemaError("pair", "expected i-j");
        rec.pair_i = std::stoi(fields[3].substr(0, dash));
        rec.pair_j = std::stoi(fields[3].substr(dash + 1));
        rec.relation = relation_from_name(fields[4]);
        rec.premise = fields[5];
        rec.hypothesis = fields[6];
        rec.label = std::stoi(fields[7]);
        if (rec.label != 0 && rec.label != 1)
            throw SchemaError("label", "must be 0 or 1");
        rec.split = split_from_name(fields[8]);
        rec.perturbation = perturbation_from_name(fields[9]);
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace causalnli
