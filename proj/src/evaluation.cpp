#include "causalnli/evaluation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "causalnli/errors.hpp"
#include "causalnli/rng.hpp"
#include "causalnli/verbalize.hpp"

namespace causalnli {

Metrics score(std::span<const Prediction> predictions,
              std::span<const SampleRecord> gold) {
    std::unordered_map<std::string, int> gold_label;
    gold_label.reserve(gold.size());
    for (const SampleRecord& rec : gold) gold_label.emplace(rec.id, rec.label);

    std::unordered_set<std::string> seen;
    seen.reserve(predictions.size());
    std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (const Prediction& p : predictions) {
        if (p.label != 0 && p.label != 1)
            throw std::invalid_argument("prediction label must be 0 or 1: " + p.id);
        if (!seen.insert(p.id).second)
            throw std::invalid_argument("duplicate prediction id: " + p.id);
        const auto it = gold_label.find(p.id);
        if (it == gold_label.end())
            throw std::invalid_argument("unknown prediction id: " + p.id);
        if (p.label == 1)
            (it->second == 1 ? tp : fp) += 1;
        else
            (it->second == 0 ? tn : fn) += 1;
    }

    Metrics m;
    const std::int64_t total = tp + fp + tn + fn;
    if (tp + fp > 0) m.precision = 100.0 * tp / (tp + fp);
    if (tp + fn > 0) m.recall = 100.0 * tp / (tp + fn);
    if (m.precision + m.recall > 0)
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    if (total > 0) m.accuracy = 100.0 * (tp + tn) / total;
    return m;
}

std::vector<Prediction> baseline(BaselineKind kind,
                                 std::span<const SampleRecord> gold,
                                 std::uint64_t seed, double positive_rate) {
    if (gold.empty()) throw std::invalid_argument("baseline needs a gold set");
    int majority = 0;
    if (kind == BaselineKind::kMajority) {
        std::int64_t positives = 0;
        for (const SampleRecord& rec : gold) positives += rec.label;
        majority = 2 * positives > static_cast<std::int64_t>(gold.size()) ? 1 : 0;
    }

    SplitMix64 rng(seed);
    std::vector<Prediction> out;
    out.reserve(gold.size());
    for (const SampleRecord& rec : gold) {
        int label = majority;
        if (kind == BaselineKind::kUniform)
            label = static_cast<int>(rng.bounded(2));
        else if (kind == BaselineKind::kProportional)
            label = rng.unit() < positive_rate ? 1 : 0;
        out.push_back({rec.id, label});
    }
    return out;
}

namespace {

// Distinct n-gram ids (interned) of up to max_len tokens in one text.
std::vector<std::int32_t> ngram_set(
    const std::string& text, int max_len,
    std::unordered_map<std::string, std::int32_t>& intern,
    std::vector<std::string>& ngram_names) {
    std::vector<std::string> tokens;
    for (std::string& t : tokenize(text)) {
        if (t.size() == 1 && std::string_view(".,;:()").find(t[0]) !=
                                 std::string_view::npos)
            continue;
        tokens.push_back(std::move(t));
    }
    std::vector<std::int32_t> ids;
    for (std::size_t start = 0; start < tokens.size(); ++start) {
        std::string gram;
        for (int len = 1; len <= max_len; ++len) {
            if (start + len > tokens.size()) break;
            if (len > 1) gram += ' ';
            gram += tokens[start + len - 1];
            auto [it, inserted] =
                intern.emplace(gram, static_cast<std::int32_t>(ngram_names.size()));
            if (inserted) ngram_names.push_back(gram);
            ids.push_back(it->second);
        }
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

}  // namespace

std::vector<PmiRow> pmi_table(std::span<const SampleRecord> records,
                              int max_len) {
    if (max_len < 1) throw std::invalid_argument("max_len must be positive");

    // Premises repeat across the hypotheses of a class and hypotheses repeat
    // across classes, so presence counts decompose per record into
    // |P| + |H| - |P ∩ H| over cached per-text n-gram sets.
    std::unordered_map<std::string, std::int32_t> intern;
    std::vector<std::string> ngram_names;
    std::unordered_map<std::string, std::size_t> set_of_text;
    std::vector<std::vector<std::int32_t>> sets;
    const auto set_for = [&](const std::string& text) -> std::size_t {
        const auto it = set_of_text.find(text);
        if (it != set_of_text.end()) return it->second;
        sets.push_back(ngram_set(text, max_len, intern, ngram_names));
        return set_of_text.emplace(text, sets.size() - 1).first->second;
    };

    std::vector<std::array<std::int64_t, 2>> counts;
    std::int64_t label_totals[2] = {0, 0};
    const auto bump = [&counts](std::int32_t id, int label, std::int64_t amount) {
        if (static_cast<std::size_t>(id) >= counts.size())
            counts.resize(id + 1, {0, 0});
        counts[id][label] += amount;
    };

    // Per distinct text, accumulated record counts per label.
    std::unordered_map<std::size_t, std::array<std::int64_t, 2>> text_uses;
    for (const SampleRecord& rec : records) {
        const std::size_t p = set_for(rec.premise);
        const std::size_t h = set_for(rec.hypothesis);
        ++label_totals[rec.label];
        ++text_uses[p][rec.label];
        ++text_uses[h][rec.label];
        // Overlap between this premise and hypothesis would be counted
        // twice; both sets are sorted, so walk the smaller against the larger.
        const auto& small = sets[p].size() < sets[h].size() ? sets[p] : sets[h];
        const auto& large = sets[p].size() < sets[h].size() ? sets[h] : sets[p];
        for (std::int32_t id : small)
            if (std::binary_search(large.begin(), large.end(), id))
                bump(id, rec.label, -1);
    }
    for (const auto& [text_id, uses] : text_uses)
        for (int label = 0; label < 2; ++label)
            if (uses[label] > 0)
                for (std::int32_t id : sets[text_id]) bump(id, label, uses[label]);

    const double total = static_cast<double>(label_totals[0] + label_totals[1]);
    std::vector<PmiRow> rows;
    rows.reserve(counts.size());
    for (std::size_t id = 0; id < counts.size(); ++id) {
        const double with_neg = static_cast<double>(counts[id][0]);
        const double with_pos = static_cast<double>(counts[id][1]);
        const double present = with_neg + with_pos;
        PmiRow row;
        row.ngram = ngram_names[id];
        row.pmi_neg = std::log((with_neg + 1.0) * (total + 2.0) /
                               ((present + 2.0) * (label_totals[0] + 1.0)));
        row.pmi_pos = std::log((with_pos + 1.0) * (total + 2.0) /
                               ((present + 2.0) * (label_totals[1] + 1.0)));
        row.abs_diff = std::abs(row.pmi_neg - row.pmi_pos);
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const PmiRow& a, const PmiRow& b) {
        if (a.abs_diff != b.abs_diff) return a.abs_diff > b.abs_diff;
        return a.ngram < b.ngram;
    });
    return rows;
}

std::string metrics_to_json(const Metrics& m) {
    nlohmann::ordered_json j{{"f1", m.f1},
                             {"precision", m.precision},
                             {"recall", m.recall},
                             {"accuracy", m.accuracy}};
    return j.dump(2) + "\n";
}

void write_predictions_jsonl(std::span<const Prediction> predictions,
                             const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (const Prediction& p : predictions)
        out << nlohmann::ordered_json{{"id", p.id}, {"label", p.label}}.dump()
            << '\n';
}

std::vector<Prediction> read_predictions_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::vector<Prediction> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const nlohmann::json j = nlohmann::json::parse(line);
        if (!j.contains("id") || !j["id"].is_string())
            throw SchemaError("id", "missing or not a string");
        if (!j.contains("label") || !j["label"].is_number_integer())
            throw SchemaError("label", "missing or not an integer");
        out.push_back({j["id"].get<std::string>(), j["label"].get<int>()});
    }
    return out;
}

void write_pmi_tsv(std::span<const PmiRow> rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "ngram\tpmi_neg\tpmi_pos\tabs_diff\n";
    for (const PmiRow& row : rows) {
        out << row.ngram << '\t' << row.pmi_neg << '\t' << row.pmi_pos << '\t'
            << row.abs_diff << '\n';
    }
}

}  // namespace causalnli
