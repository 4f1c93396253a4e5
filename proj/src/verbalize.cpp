#include "causalnli/verbalize.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <stdexcept>

namespace causalnli {

namespace {

constexpr std::string_view kPunctuation = ".,;:()";

bool is_punct_mark(char c) {
    return kPunctuation.find(c) != std::string_view::npos;
}

std::string fill_template(const std::string& tpl, const std::string& var_i,
                          const std::string& var_j) {
    std::string out = tpl;
    const auto replace_once = [&out](std::string_view placeholder,
                                     const std::string& value) {
        const auto pos = out.find(placeholder);
        if (pos == std::string::npos)
            throw std::invalid_argument("template is missing " +
                                        std::string(placeholder));
        out.replace(pos, placeholder.size(), value);
    };
    replace_once("{Var i}", var_i);
    replace_once("{Var j}", var_j);
    return out;
}

// "A" / "A and B" / "A, B and C" for the preamble; conditioning sets of
// three or more render as a plain comma list instead.
std::string join_names(const std::vector<std::string>& names, bool final_and) {
    std::string out;
    for (std::size_t k = 0; k < names.size(); ++k) {
        if (k > 0) {
            if (final_and && k + 1 == names.size())
                out += " and ";
            else
                out += ", ";
        }
        out += names[k];
    }
    return out;
}

std::string render_conditioning_set(NodeMask z,
                                    std::span<const std::string> names) {
    std::vector<std::string> members;
    for (int v = 0; v < static_cast<int>(names.size()); ++v)
        if (z & (NodeMask(1) << v)) members.push_back(names[v]);
    return join_names(members, members.size() == 2);
}

}  // namespace

const TemplateSet& TemplateSet::default_set() {
    static const TemplateSet set{
        TemplateStyle::kDefault,
        {
            "{Var i} directly causes {Var j}.",
            "{Var i} causes something else which causes {Var j}.",
            "{Var j} directly causes {Var i}.",
            "{Var j} is a cause for {Var i}, but not a direct one.",
            "There exists at least one collider (i.e., common effect) of "
            "{Var i} and {Var j}.",
            "There exists at least one confounder (i.e., common cause) of "
            "{Var i} and {Var j}.",
        }};
    return set;
}

const TemplateSet& TemplateSet::paraphrase_set() {
    static const TemplateSet set{
        TemplateStyle::kParaphrase,
        {
            "{Var i} directly affects {Var j}.",
            "{Var i} influences {Var j} through some mediator(s).",
            "{Var j} directly affects {Var i}.",
            "{Var j} influences {Var i} through some mediator(s).",
            "{Var i} and {Var j} together cause some other variable(s).",
            "Some variable(s) cause(s) both {Var i} and {Var j}.",
        }};
    return set;
}

void load_template_overrides(const std::string& path, TemplateSet& default_set,
                             TemplateSet& paraphrase_set) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open template file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("template line without '=': " + line);
        std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        TemplateSet* target = &default_set;
        if (key.rfind("paraphrase.", 0) == 0) {
            target = &paraphrase_set;
            key = key.substr(11);
        }
        target->templates[static_cast<int>(relation_from_name(key))] = value;
    }
}

std::string verbalize_premise(const CiSignature& sig,
                              std::span<const std::string> names) {
    const int n = sig.node_count();
    if (static_cast<int>(names.size()) != n)
        throw std::invalid_argument("name count does not match signature");
    const std::string count = std::to_string(n);

    std::string out = "Suppose there is a closed system of " + count +
                      " variables, " +
                      join_names({names.begin(), names.end()}, true) +
                      ". All the statistical relations among these " + count +
                      " variables are as follows:";
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto& sets = sig.separating_sets(i, j);
            if (sets.empty()) {
                out += " " + names[i] + " correlates with " + names[j] + ".";
                continue;
            }
            for (NodeMask z : sets) {
                out += " " + names[i] + " is independent of " + names[j];
                if (z) out += " given " + render_conditioning_set(z, names);
                out += ".";
            }
        }
    }
    return out;
}

std::string verbalize_hypothesis(const Hypothesis& h,
                                 std::span<const std::string> names,
                                 const TemplateSet& templates) {
    if (h.i < 0 || h.j < 0 || h.i >= static_cast<int>(names.size()) ||
        h.j >= static_cast<int>(names.size()) || h.i == h.j)
        throw std::invalid_argument("hypothesis pair out of range");
    return fill_template(templates.templates[static_cast<int>(h.relation)],
                         names[h.i], names[h.j]);
}

ParsedPremise parse_premise(const std::string& premise) {
    const auto expect = [&premise](std::size_t pos, std::string_view text) {
        if (premise.compare(pos, text.size(), text) != 0)
            throw std::invalid_argument("malformed premise near position " +
                                        std::to_string(pos));
        return pos + text.size();
    };

    std::size_t pos = expect(0, "Suppose there is a closed system of ");
    std::size_t digits = 0;
    const int n = std::stoi(premise.substr(pos), &digits);
    pos = expect(pos + digits, " variables, ");

    const std::size_t preamble_end = premise.find(". All the statistical relations");
    if (preamble_end == std::string::npos)
        throw std::invalid_argument("premise preamble not found");
    std::vector<std::string> names;
    {
        std::string list = premise.substr(pos, preamble_end - pos);
        const auto and_pos = list.rfind(" and ");
        std::string head = list, tail;
        if (and_pos != std::string::npos) {
            head = list.substr(0, and_pos);
            tail = list.substr(and_pos + 5);
        }
        std::size_t start = 0;
        while (start <= head.size()) {
            const auto comma = head.find(", ", start);
            if (comma == std::string::npos) {
                names.push_back(head.substr(start));
                break;
            }
            names.push_back(head.substr(start, comma - start));
            start = comma + 2;
        }
        if (!tail.empty()) names.push_back(tail);
    }
    if (static_cast<int>(names.size()) != n)
        throw std::invalid_argument("premise names do not match the stated count");

    pos = expect(preamble_end,
                 ". All the statistical relations among these " +
                     std::to_string(n) + " variables are as follows:");

    const auto node_index = [&](const std::string& name) {
        for (int v = 0; v < n; ++v)
            if (names[v] == name) return v;
        throw std::invalid_argument("unknown variable in premise: " + name);
    };

    std::vector<std::vector<NodeMask>> sepsets(CiSignature::pair_count(n));
    std::vector<bool> seen(CiSignature::pair_count(n), false);
    while (pos < premise.size()) {
        pos = expect(pos, " ");
        std::size_t end = premise.find(". ", pos);
        if (end == std::string::npos) end = premise.size() - 1;
        const std::string sentence = premise.substr(pos, end - pos);
        pos = end + 1;

        const auto corr = sentence.find(" correlates with ");
        if (corr != std::string::npos) {
            const int a = node_index(sentence.substr(0, corr));
            const int b = node_index(sentence.substr(corr + 17));
            seen[CiSignature::pair_index(n, a, b)] = true;
            continue;
        }
        const auto indep = sentence.find(" is independent of ");
        if (indep == std::string::npos)
            throw std::invalid_argument("unrecognized premise sentence: " + sentence);
        const int a = node_index(sentence.substr(0, indep));
        std::string rest = sentence.substr(indep + 19);
        NodeMask z = 0;
        std::string b_name = rest;
        const auto given = rest.find(" given ");
        if (given != std::string::npos) {
            b_name = rest.substr(0, given);
            std::string list = rest.substr(given + 7);
            // "C" | "C and D" | "C, D, E"
            const auto and_pos = list.find(" and ");
            if (and_pos != std::string::npos) {
                z |= NodeMask(1) << node_index(list.substr(0, and_pos));
                z |= NodeMask(1) << node_index(list.substr(and_pos + 5));
            } else {
                std::size_t start = 0;
                while (start <= list.size()) {
                    const auto comma = list.find(", ", start);
                    const std::string item =
                        comma == std::string::npos
                            ? list.substr(start)
                            : list.substr(start, comma - start);
                    z |= NodeMask(1) << node_index(item);
                    if (comma == std::string::npos) break;
                    start = comma + 2;
                }
            }
        }
        const int b = node_index(b_name);
        const int pair = CiSignature::pair_index(n, a, b);
        seen[pair] = true;
        sepsets[pair].push_back(z);
    }
    for (bool s : seen)
        if (!s) throw std::invalid_argument("premise does not classify every pair");
    for (auto& sets : sepsets)
        std::sort(sets.begin(), sets.end(), [](NodeMask a, NodeMask b) {
            const int pa = std::popcount(a), pb = std::popcount(b);
            return pa != pb ? pa < pb : a < b;
        });
    return ParsedPremise{std::move(names), CiSignature(n, std::move(sepsets))};
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos >= text.size()) break;
        std::size_t end = pos;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])))
            ++end;
        std::string_view chunk = text.substr(pos, end - pos);
        pos = end;

        std::string_view trailing;
        if (chunk.size() >= 2 && is_punct_mark(chunk.front())) {
            tokens.emplace_back(1, chunk.front());
            chunk.remove_prefix(1);
        }
        if (chunk.size() >= 2 && is_punct_mark(chunk.back())) {
            trailing = chunk.substr(chunk.size() - 1);
            chunk.remove_suffix(1);
        }
        tokens.emplace_back(chunk);
        if (!trailing.empty()) tokens.emplace_back(trailing);
    }
    return tokens;
}

SampleRecord refactor_variables(const SampleRecord& sample) {
    const auto rename = [](const std::string& text) {
        std::string out;
        out.reserve(text.size());
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t end = pos;
            while (end < text.size() &&
                   std::isalnum(static_cast<unsigned char>(text[end])))
                ++end;
            if (end == pos) {
                out += text[pos++];
                continue;
            }
            if (end - pos == 1 && text[pos] >= 'A' && text[pos] <= 'Z')
                out += static_cast<char>('A' + ('Z' - text[pos]));
            else
                out.append(text, pos, end - pos);
            pos = end;
        }
        return out;
    };

    SampleRecord out = sample;
    out.premise = rename(sample.premise);
    out.hypothesis = rename(sample.hypothesis);
    out.perturbation = Perturbation::kRefactor;
    out.id = record_id(out.n_nodes, out.mec_key, out.pair_i, out.pair_j,
                       out.relation, out.perturbation);
    return out;
}

SampleRecord paraphrase(const SampleRecord& sample) {
    if (sample.perturbation != Perturbation::kNone)
        throw std::invalid_argument(
            "paraphrase expects a sample rendered from the default templates");
    const std::vector<std::string> names = Dag::default_names(sample.n_nodes);
    SampleRecord out = sample;
    out.hypothesis = verbalize_hypothesis(
        {sample.relation, sample.pair_i, sample.pair_j}, names,
        TemplateSet::paraphrase_set());
    out.perturbation = Perturbation::kParaphrase;
    out.id = record_id(out.n_nodes, out.mec_key, out.pair_i, out.pair_j,
                       out.relation, out.perturbation);
    return out;
}

}  // namespace causalnli
