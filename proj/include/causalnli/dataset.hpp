#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "causalnli/record.hpp"
#include "causalnli/verbalize.hpp"

namespace causalnli {

struct BuildOptions {
    int n_min = 2;
    int n_max = 6;
    TemplateSet templates = TemplateSet::default_set();
    int jobs = 1;
};

/// All records for one node count, in id order, split fields not yet
/// assigned (everything starts in test). Enumerates the DAGs, groups them
/// into equivalence classes, and emits one record per (class, hypothesis).
std::vector<SampleRecord> build_for_n(int node_count,
                                      const TemplateSet& templates,
                                      int jobs = 1);

/// Full corpus for node counts n_min..n_max, in id order, splits assigned
/// per assign_splits with the given seed.
std::vector<SampleRecord> build(const BuildOptions& options,
                                std::uint64_t seed = 0);

/// Seeded dev/test/train assignment, independently per node count: subsets
/// smaller than 1000 records go entirely to test and dev (half each);
/// larger ones give min(1000, 10%) to test, the same amount to dev (disjoint,
/// drawn from one shuffle), and the rest to train. Record order is
/// unchanged; membership depends only on (seed, node count, record rank).
void assign_splits(std::span<SampleRecord> records, std::uint64_t seed);

struct SliceStats {
    std::int64_t samples = 0;
    std::int64_t test = 0;
    std::int64_t dev = 0;
    std::int64_t train = 0;
    double premise_tokens_mean = 0.0;
    double hypothesis_tokens_mean = 0.0;
    double valid_label_pct = 0.0;
    std::int64_t vocab_size = 0;
};

struct CorpusStats {
    SliceStats overall;
    std::map<int, SliceStats> by_n;
};

CorpusStats stats(std::span<const SampleRecord> records);
std::string stats_to_json(const CorpusStats& stats);

/// JSONL: one record per line, UTF-8, LF, fields in declared order.
void write_jsonl(std::span<const SampleRecord> records, const std::string& path);
std::vector<SampleRecord> read_jsonl(const std::string& path);

/// CSV with the same header names; the pair is rendered "i-j".
void write_csv(std::span<const SampleRecord> records, const std::string& path);
std::vector<SampleRecord> read_csv(const std::string& path);

}  // namespace causalnli
