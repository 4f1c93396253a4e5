#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <vector>

#include "causalnli/enumerate.hpp"
#include "causalnli/mec.hpp"
#include "causalnli/rng.hpp"
#include "causalnli/verbalize.hpp"

using namespace causalnli;

namespace {

Dag make_dag(int n, std::vector<std::pair<int, int>> edges) {
    return Dag(n, edges);
}

std::string hypothesis_text(RelationType r, const TemplateSet& t) {
    const std::vector<std::string> names = Dag::default_names(2);
    return verbalize_hypothesis({r, 0, 1}, names, t);
}

SampleRecord sample_for(const Dag& g, RelationType r, int i, int j) {
    const CiSignature sig = ci_signature(g);
    SampleRecord rec;
    rec.n_nodes = g.node_count();
    rec.mec_key = canonical_key(cpdag_of(g)).hex();
    rec.pair_i = i;
    rec.pair_j = j;
    rec.relation = r;
    rec.premise = verbalize_premise(sig, g.node_names());
    rec.hypothesis =
        verbalize_hypothesis({r, i, j}, g.node_names(), TemplateSet::default_set());
    rec.label = 0;
    rec.split = Split::kTest;
    rec.perturbation = Perturbation::kNone;
    rec.id = record_id(rec.n_nodes, rec.mec_key, i, j, r, rec.perturbation);
    return rec;
}

}  // namespace

TEST_SUITE("verbalize") {

TEST_CASE("default templates") {
    const TemplateSet& t = TemplateSet::default_set();
    CHECK(hypothesis_text(RelationType::kIsParent, t) == "A directly causes B.");
    CHECK(hypothesis_text(RelationType::kIsAncestor, t) ==
          "A causes something else which causes B.");
    CHECK(hypothesis_text(RelationType::kIsChild, t) == "B directly causes A.");
    CHECK(hypothesis_text(RelationType::kIsDescendant, t) ==
          "B is a cause for A, but not a direct one.");
    CHECK(hypothesis_text(RelationType::kHasCollider, t) ==
          "There exists at least one collider (i.e., common effect) of A and B.");
    CHECK(hypothesis_text(RelationType::kHasConfounder, t) ==
          "There exists at least one confounder (i.e., common cause) of A and B.");
}

TEST_CASE("paraphrase templates") {
    const TemplateSet& t = TemplateSet::paraphrase_set();
    CHECK(hypothesis_text(RelationType::kIsParent, t) == "A directly affects B.");
    CHECK(hypothesis_text(RelationType::kIsAncestor, t) ==
          "A influences B through some mediator(s).");
    CHECK(hypothesis_text(RelationType::kIsChild, t) == "B directly affects A.");
    CHECK(hypothesis_text(RelationType::kIsDescendant, t) ==
          "B influences A through some mediator(s).");
    CHECK(hypothesis_text(RelationType::kHasCollider, t) ==
          "A and B together cause some other variable(s).");
    CHECK(hypothesis_text(RelationType::kHasConfounder, t) ==
          "Some variable(s) cause(s) both A and B.");
}

TEST_CASE("two-node premises") {
    const std::vector<std::string> names = Dag::default_names(2);
    CHECK(verbalize_premise(ci_signature(make_dag(2, {})), names) ==
          "Suppose there is a closed system of 2 variables, A and B. All the "
          "statistical relations among these 2 variables are as follows: A is "
          "independent of B.");
    CHECK(verbalize_premise(ci_signature(make_dag(2, {{0, 1}})), names) ==
          "Suppose there is a closed system of 2 variables, A and B. All the "
          "statistical relations among these 2 variables are as follows: A "
          "correlates with B.");
    CHECK_THROWS_AS(
        verbalize_premise(ci_signature(make_dag(2, {})), Dag::default_names(3)),
        std::invalid_argument);
}

TEST_CASE("collider premise lists the marginal independence only") {
    const std::string premise = verbalize_premise(
        ci_signature(make_dag(3, {{0, 2}, {1, 2}})), Dag::default_names(3));
    CHECK(premise.find("A is independent of B.") != std::string::npos);
    CHECK(premise.find("A correlates with C.") != std::string::npos);
    CHECK(premise.find("B correlates with C.") != std::string::npos);
    CHECK(premise.find("given") == std::string::npos);
}

TEST_CASE("conditioning sets render with and/comma conventions") {
    // Empty 4-node graph: pair (A,B) is separated by every subset of {C,D}.
    const std::string premise = verbalize_premise(
        ci_signature(make_dag(4, {})), Dag::default_names(4));
    CHECK(premise.find("A is independent of B.") != std::string::npos);
    CHECK(premise.find("A is independent of B given C.") != std::string::npos);
    CHECK(premise.find("A is independent of B given D.") != std::string::npos);
    CHECK(premise.find("A is independent of B given C and D.") != std::string::npos);

    const std::string premise5 = verbalize_premise(
        ci_signature(make_dag(5, {})), Dag::default_names(5));
    CHECK(premise5.find("A is independent of B given C, D, E.") !=
          std::string::npos);
}

TEST_CASE("tokenizer counts") {
    CHECK(tokenize("A directly causes B.").size() == 5);
    CHECK(tokenize("A causes something else which causes B.").size() == 8);
    CHECK(tokenize("B is a cause for A, but not a direct one.").size() == 13);
    CHECK(tokenize("There exists at least one collider (i.e., common effect) "
                   "of A and B.")
              .size() == 17);
    const std::vector<std::string> t = tokenize("(i.e., effect)");
    CHECK(t == std::vector<std::string>{"(", "i.e.", ",", "effect", ")"});
    CHECK(tokenize("follows:") == std::vector<std::string>{"follows", ":"});
    CHECK(tokenize("").empty());

    const std::vector<std::string> names = Dag::default_names(2);
    CHECK(tokenize(verbalize_premise(ci_signature(make_dag(2, {})), names)).size() ==
          32);
    CHECK(tokenize(verbalize_premise(ci_signature(make_dag(2, {{0, 1}})), names))
              .size() == 31);
}

TEST_CASE("premise parsing inverts verbalization") {
    for (int n = 2; n <= 4; ++n) {
        const std::vector<std::string> names = Dag::default_names(n);
        for (const Mec& mec : group_mecs(enumerate_dags(n))) {
            const std::string premise = verbalize_premise(mec.signature, names);
            const ParsedPremise parsed = parse_premise(premise);
            CHECK(parsed.names == names);
            CHECK(parsed.signature == mec.signature);
        }
    }
    CHECK_THROWS_AS(parse_premise("Nothing to see"), std::invalid_argument);
}

TEST_CASE("premise round trip on random larger graphs") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 5 + int(rng.bounded(2));
        std::uint64_t bits = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.bounded(2)) bits |= std::uint64_t{1} << (i * 8 + j);
        const Dag g = Dag::from_bits(n, bits);
        const CiSignature sig = ci_signature(g);
        const ParsedPremise parsed =
            parse_premise(verbalize_premise(sig, g.node_names()));
        CHECK(parsed.names == g.node_names());
        CHECK(parsed.signature == sig);
    }
}

TEST_CASE("variable refactorization flips the alphabet") {
    const SampleRecord rec =
        sample_for(make_dag(2, {{0, 1}}), RelationType::kIsParent, 0, 1);
    const SampleRecord flipped = refactor_variables(rec);
    CHECK(flipped.premise ==
          "Suppose there is a closed system of 2 variables, Z and Y. All the "
          "statistical relations among these 2 variables are as follows: Z "
          "correlates with Y.");
    CHECK(flipped.hypothesis == "Z directly causes Y.");
    CHECK(flipped.label == rec.label);
    CHECK(flipped.perturbation == Perturbation::kRefactor);
    CHECK(flipped.id != rec.id);

    // The rename is an involution on the text.
    const SampleRecord back = refactor_variables(flipped);
    CHECK(back.premise == rec.premise);
    CHECK(back.hypothesis == rec.hypothesis);
}

TEST_CASE("refactorization leaves words and digits alone") {
    SampleRecord rec;
    rec.n_nodes = 2;
    rec.premise = "All 2 variables. A correlates with B.";
    rec.hypothesis = "A directly causes B.";
    const SampleRecord flipped = refactor_variables(rec);
    CHECK(flipped.premise == "All 2 variables. Z correlates with Y.");
    CHECK(flipped.hypothesis == "Z directly causes Y.");
}

TEST_CASE("paraphrase swaps only the hypothesis") {
    const SampleRecord rec =
        sample_for(make_dag(3, {{0, 2}, {1, 2}}), RelationType::kHasCollider, 0, 1);
    const SampleRecord re = paraphrase(rec);
    CHECK(re.hypothesis == "A and B together cause some other variable(s).");
    CHECK(re.premise == rec.premise);
    CHECK(re.label == rec.label);
    CHECK(re.perturbation == Perturbation::kParaphrase);
    CHECK_THROWS_AS(paraphrase(re), std::invalid_argument);
}

TEST_CASE("template overrides") {
    const std::string path = "template_override_test.txt";
    {
        std::ofstream out(path);
        out << "# comment\n";
        out << "Is-Parent={Var i} pushes {Var j}.\n";
        out << "paraphrase.Is-Child={Var j} nudges {Var i}.\n";
    }
    TemplateSet defaults = TemplateSet::default_set();
    TemplateSet paraphrases = TemplateSet::paraphrase_set();
    load_template_overrides(path, defaults, paraphrases);
    CHECK(hypothesis_text(RelationType::kIsParent, defaults) == "A pushes B.");
    CHECK(hypothesis_text(RelationType::kIsChild, paraphrases) == "B nudges A.");
    CHECK(hypothesis_text(RelationType::kIsAncestor, defaults) ==
          "A causes something else which causes B.");
    {
        std::ofstream out(path);
        out << "Is-Uncle=nope\n";
    }
    CHECK_THROWS(load_template_overrides(path, defaults, paraphrases));
    std::remove(path.c_str());
}

}  // TEST_SUITE
