#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "causalnli/dataset.hpp"
#include "causalnli/evaluation.hpp"
#include "causalnli/rng.hpp"
#include "causalnli/sha256.hpp"
#include "causalnli/verbalize.hpp"

using namespace causalnli;

namespace {

// Minimal gold set: `positives` valid labels out of `total`.
std::vector<SampleRecord> synthetic_gold(int total, int positives) {
    std::vector<SampleRecord> out;
    out.reserve(total);
    for (int k = 0; k < total; ++k) {
        SampleRecord rec;
        rec.id = "g" + std::to_string(k);
        rec.label = k < positives ? 1 : 0;
        rec.premise = "p";
        rec.hypothesis = "h";
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<Prediction> constant_predictions(
    const std::vector<SampleRecord>& gold, int label) {
    std::vector<Prediction> out;
    for (const SampleRecord& rec : gold) out.push_back({rec.id, label});
    return out;
}

// Direct per-record recount of the PMI table, as an independent oracle for
// the decomposed counting in pmi_table.
std::vector<PmiRow> pmi_brute(const std::vector<SampleRecord>& records,
                              int max_len) {
    const auto grams_of = [max_len](const std::string& text) {
        std::vector<std::string> tokens;
        for (std::string& t : tokenize(text))
            if (!(t.size() == 1 &&
                  std::string(".,;:()").find(t[0]) != std::string::npos))
                tokens.push_back(std::move(t));
        std::vector<std::string> grams;
        for (std::size_t start = 0; start < tokens.size(); ++start) {
            std::string gram;
            for (int len = 1; len <= max_len; ++len) {
                if (start + len > tokens.size()) break;
                if (len > 1) gram += ' ';
                gram += tokens[start + len - 1];
                grams.push_back(gram);
            }
        }
        std::sort(grams.begin(), grams.end());
        grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
        return grams;
    };

    std::map<std::string, std::array<std::int64_t, 2>> counts;
    std::int64_t totals[2] = {0, 0};
    for (const SampleRecord& rec : records) {
        ++totals[rec.label];
        std::vector<std::string> grams = grams_of(rec.premise);
        std::vector<std::string> hyp = grams_of(rec.hypothesis);
        grams.insert(grams.end(), hyp.begin(), hyp.end());
        std::sort(grams.begin(), grams.end());
        grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
        for (const std::string& g : grams) ++counts[g][rec.label];
    }
    const double total = double(totals[0] + totals[1]);
    std::vector<PmiRow> rows;
    for (const auto& [gram, c] : counts) {
        PmiRow row;
        row.ngram = gram;
        row.pmi_neg = std::log((c[0] + 1.0) * (total + 2.0) /
                               ((c[0] + c[1] + 2.0) * (totals[0] + 1.0)));
        row.pmi_pos = std::log((c[1] + 1.0) * (total + 2.0) /
                               ((c[0] + c[1] + 2.0) * (totals[1] + 1.0)));
        row.abs_diff = std::abs(row.pmi_neg - row.pmi_pos);
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const PmiRow& a, const PmiRow& b) {
        if (a.abs_diff != b.abs_diff) return a.abs_diff > b.abs_diff;
        return a.ngram < b.ngram;
    });
    return rows;
}

}  // namespace

TEST_SUITE("evaluation") {

TEST_CASE("perfect predictions") {
    const std::vector<SampleRecord> gold = synthetic_gold(100, 20);
    std::vector<Prediction> preds;
    for (const SampleRecord& rec : gold) preds.push_back({rec.id, rec.label});
    const Metrics m = score(preds, gold);
    CHECK(m.f1 == 100.0);
    CHECK(m.precision == 100.0);
    CHECK(m.recall == 100.0);
    CHECK(m.accuracy == 100.0);
}

TEST_CASE("degenerate prediction patterns") {
    // 15.23% positive rate, like the published test split.
    const std::vector<SampleRecord> gold = synthetic_gold(10000, 1523);
    const Metrics all_negative = score(constant_predictions(gold, 0), gold);
    CHECK(all_negative.f1 == 0.0);
    CHECK(all_negative.precision == 0.0);
    CHECK(all_negative.recall == 0.0);
    CHECK(all_negative.accuracy == doctest::Approx(84.77));

    const Metrics all_positive = score(constant_predictions(gold, 1), gold);
    CHECK(all_positive.recall == 100.0);
    CHECK(all_positive.precision == doctest::Approx(15.23));
    CHECK(all_positive.accuracy == doctest::Approx(15.23));
}

TEST_CASE("score rejects malformed prediction lists") {
    const std::vector<SampleRecord> gold = synthetic_gold(10, 3);
    CHECK_THROWS_AS(score({{{"missing", 1}}}, gold), std::invalid_argument);
    CHECK_THROWS_AS(score({{{"g0", 1}, {"g0", 0}}}, gold), std::invalid_argument);
    CHECK_THROWS_AS(score({{{"g0", 2}}}, gold), std::invalid_argument);
}

TEST_CASE("score is order-invariant and matches the confusion matrix") {
    const std::vector<SampleRecord> gold = synthetic_gold(500, 120);
    SplitMix64 rng(3);
    std::vector<Prediction> preds;
    for (const SampleRecord& rec : gold)
        preds.push_back({rec.id, int(rng.bounded(2))});

    std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (std::size_t k = 0; k < gold.size(); ++k) {
        if (preds[k].label == 1)
            (gold[k].label == 1 ? tp : fp) += 1;
        else
            (gold[k].label == 0 ? tn : fn) += 1;
    }
    const Metrics m = score(preds, gold);
    CHECK(m.accuracy == doctest::Approx(100.0 * (tp + tn) / gold.size()));
    CHECK(m.precision == doctest::Approx(100.0 * tp / (tp + fp)));
    CHECK(m.recall == doctest::Approx(100.0 * tp / (tp + fn)));
    CHECK(m.f1 ==
          doctest::Approx(2.0 * m.precision * m.recall / (m.precision + m.recall)));

    std::reverse(preds.begin(), preds.end());
    const Metrics reversed = score(preds, gold);
    CHECK(reversed.f1 == m.f1);
    CHECK(reversed.accuracy == m.accuracy);
}

TEST_CASE("baselines") {
    const std::vector<SampleRecord> gold = synthetic_gold(5000, 1000);

    const std::vector<Prediction> majority =
        baseline(BaselineKind::kMajority, gold, 0);
    for (const Prediction& p : majority) CHECK(p.label == 0);

    double recall_sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
        recall_sum +=
            score(baseline(BaselineKind::kUniform, gold, seed), gold).recall;
    CHECK(std::abs(recall_sum / 10.0 - 50.0) <= 2.0);

    double precision_sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
        precision_sum +=
            score(baseline(BaselineKind::kProportional, gold, seed, 0.2), gold)
                .precision;
    CHECK(std::abs(precision_sum / 10.0 - 20.0) <= 2.0);

    const std::vector<Prediction> again =
        baseline(BaselineKind::kUniform, gold, 42);
    CHECK(again == baseline(BaselineKind::kUniform, gold, 42));
}

TEST_CASE("pmi matches the per-record oracle") {
    const std::vector<SampleRecord> records = build({2, 3}, 0);
    const std::vector<PmiRow> fast = pmi_table(records, 4);
    const std::vector<PmiRow> brute = pmi_brute(records, 4);
    REQUIRE(fast.size() == brute.size());
    for (std::size_t k = 0; k < fast.size(); ++k) {
        CHECK(fast[k].ngram == brute[k].ngram);
        CHECK(fast[k].pmi_neg == doctest::Approx(brute[k].pmi_neg).epsilon(1e-12));
        CHECK(fast[k].pmi_pos == doctest::Approx(brute[k].pmi_pos).epsilon(1e-12));
    }
}

TEST_CASE("an everywhere-present n-gram has zero pmi") {
    const std::vector<SampleRecord> records = build({2, 3}, 0);
    const std::vector<PmiRow> rows = pmi_table(records, 1);
    bool found = false;
    for (const PmiRow& row : rows)
        if (row.ngram == "Suppose") {
            found = true;
            CHECK(row.pmi_neg == doctest::Approx(0.0));
            CHECK(row.pmi_pos == doctest::Approx(0.0));
        }
    CHECK(found);
}

TEST_CASE("prediction and pmi files") {
    const std::vector<Prediction> preds = {{"a", 1}, {"b", 0}};
    write_predictions_jsonl(preds, "eval_test_preds.jsonl");
    CHECK(read_predictions_jsonl("eval_test_preds.jsonl") == preds);
    std::remove("eval_test_preds.jsonl");

    const std::vector<PmiRow> rows = {{"a cause", 1.5, -1.0, 2.5}};
    write_pmi_tsv(rows, "eval_test_pmi.tsv");
    std::ifstream in("eval_test_pmi.tsv");
    std::string header, line;
    std::getline(in, header);
    std::getline(in, line);
    CHECK(header == "ngram\tpmi_neg\tpmi_pos\tabs_diff");
    CHECK(line.substr(0, 8) == "a cause\t");
    in.close();
    std::remove("eval_test_pmi.tsv");
}

TEST_CASE("sha256 reference vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    const std::string million(1000000, 'a');
    CHECK(sha256_hex(million) ==
          "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

}  // TEST_SUITE
