#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "causalnli/independence.hpp"
#include "causalnli/labeling.hpp"
#include "causalnli/record.hpp"

namespace causalnli {

enum class TemplateStyle { kDefault, kParaphrase };

/// Hypothesis text templates, one per relation, each with a {Var i} and a
/// {Var j} placeholder.
struct TemplateSet {
    TemplateStyle style = TemplateStyle::kDefault;
    std::array<std::string, kRelationCount> templates;

    static const TemplateSet& default_set();
    static const TemplateSet& paraphrase_set();
};

/// Loads template overrides from a file of `key=value` lines, where the key
/// is a relation name ("Is-Parent", ...), optionally prefixed with
/// "paraphrase." to target the paraphrase set. Lines starting with '#' and
/// blank lines are ignored. Unknown keys are an error.
void load_template_overrides(const std::string& path, TemplateSet& default_set,
                             TemplateSet& paraphrase_set);

/// Renders the full correlation statement of an independence model: the
/// closed-system preamble, then one sentence per (pair, statistical
/// relation) in pair-lexicographic order. Pairs with no separating set get
/// "X correlates with Y."; every separating set yields one independence
/// sentence, the empty set as "X is independent of Y."
std::string verbalize_premise(const CiSignature& sig,
                              std::span<const std::string> names);

std::string verbalize_hypothesis(const Hypothesis& h,
                                 std::span<const std::string> names,
                                 const TemplateSet& templates);

/// Inverse of verbalize_premise: recovers the independence model (and the
/// variable names, in order) from a premise produced by it.
struct ParsedPremise {
    std::vector<std::string> names;
    CiSignature signature;
};
ParsedPremise parse_premise(const std::string& premise);

/// Tokenizer used for corpus statistics: whitespace split, then at most one
/// leading and one trailing punctuation mark of . , ; : ( ) per chunk split
/// off as its own token (so "follows:" is two tokens but "i.e." stays one).
std::vector<std::string> tokenize(std::string_view text);

/// Renames every variable to its reverse-alphabet image (A<->Z, B<->Y, ...)
/// in the premise and hypothesis; the label is untouched. Variable names
/// must be single letters.
SampleRecord refactor_variables(const SampleRecord& sample);

/// Re-renders the hypothesis with the paraphrase template set; premise and
/// label are untouched.
SampleRecord paraphrase(const SampleRecord& sample);

}  // namespace causalnli
