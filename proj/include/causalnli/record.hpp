#pragma once

#include <string>

#include "causalnli/labeling.hpp"

namespace causalnli {

enum class Split { kTrain, kDev, kTest };
enum class Perturbation { kNone, kParaphrase, kRefactor };

const std::string& split_name(Split s);
Split split_from_name(const std::string& name);
const std::string& perturbation_name(Perturbation p);
Perturbation perturbation_from_name(const std::string& name);

/// One premise/hypothesis/label datum with its provenance.
struct SampleRecord {
    std::string id;
    int n_nodes = 0;
    std::string mec_key;  // canonical CPDAG key, hex
    int pair_i = 0;
    int pair_j = 0;
    RelationType relation = RelationType::kIsParent;
    std::string premise;
    std::string hypothesis;
    int label = 0;
    Split split = Split::kTest;
    Perturbation perturbation = Perturbation::kNone;

    friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

/// Stable record id; a pure function of the identifying fields. Sorting ids
/// lexicographically reproduces generation order (node count, class key,
/// pair, relation).
std::string record_id(int n_nodes, const std::string& mec_key_hex, int pair_i,
                      int pair_j, RelationType relation,
                      Perturbation perturbation);

}  // namespace causalnli
