#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "causalnli/record.hpp"

namespace causalnli {

/// Positive-class (valid-label) metrics, as percentages.
struct Metrics {
    double f1 = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double accuracy = 0.0;
};

struct Prediction {
    std::string id;
    int label = 0;

    friend bool operator==(const Prediction&, const Prediction&) = default;
};

/// Precision/recall/F1 of the valid class plus accuracy over the scored
/// records. Prediction ids must be distinct, known, and carry binary labels.
Metrics score(std::span<const Prediction> predictions,
              std::span<const SampleRecord> gold);

enum class BaselineKind { kMajority, kUniform, kProportional };

/// The random baselines: always-majority, a fair coin, or positive with
/// probability `positive_rate` (the dev-set valid rate, only used by the
/// proportional baseline). Seeded and reproducible.
std::vector<Prediction> baseline(BaselineKind kind,
                                 std::span<const SampleRecord> gold,
                                 std::uint64_t seed,
                                 double positive_rate = 0.0);

/// Association of an n-gram with each label: pointwise mutual information
/// with add-one smoothing under presence-per-sample counting.
struct PmiRow {
    std::string ngram;
    double pmi_neg = 0.0;  // with the invalid label (0)
    double pmi_pos = 0.0;  // with the valid label (1)
    double abs_diff = 0.0;
};

/// PMI of every n-gram of up to max_len tokens against the labels, sorted
/// by descending |pmi_neg - pmi_pos| (ties by n-gram). Tokens come from the
/// corpus tokenizer minus punctuation marks; n-grams never span the
/// premise/hypothesis boundary; each sample counts a distinct n-gram once.
std::vector<PmiRow> pmi_table(std::span<const SampleRecord> records,
                              int max_len = 4);

std::string metrics_to_json(const Metrics& m);
void write_predictions_jsonl(std::span<const Prediction> predictions,
                             const std::string& path);
std::vector<Prediction> read_predictions_jsonl(const std::string& path);
void write_pmi_tsv(std::span<const PmiRow> rows, const std::string& path);

}  // namespace causalnli
