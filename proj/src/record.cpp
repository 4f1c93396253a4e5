#include "causalnli/record.hpp"

#include <array>
#include <stdexcept>

namespace causalnli {

namespace {

const std::array<std::string, 3> kSplitNames = {"train", "dev", "test"};
const std::array<std::string, 3> kPerturbationNames = {"none", "paraphrase",
                                                       "refactor"};

}  // namespace

const std::string& split_name(Split s) {
    return kSplitNames[static_cast<int>(s)];
}

Split split_from_name(const std::string& name) {
    for (int k = 0; k < 3; ++k)
        if (kSplitNames[k] == name) return static_cast<Split>(k);
    throw std::invalid_argument("unknown split name: " + name);
}

const std::string& perturbation_name(Perturbation p) {
    return kPerturbationNames[static_cast<int>(p)];
}

Perturbation perturbation_from_name(const std::string& name) {
    for (int k = 0; k < 3; ++k)
        if (kPerturbationNames[k] == name) return static_cast<Perturbation>(k);
    throw std::invalid_argument("unknown perturbation name: " + name);
}

std::string record_id(int n_nodes, const std::string& mec_key_hex, int pair_i,
                      int pair_j, RelationType relation,
                      Perturbation perturbation) {
    std::string id = "n";
    id += static_cast<char>('0' + n_nodes / 10);
    id += static_cast<char>('0' + n_nodes % 10);
    id += '-';
    id += mec_key_hex;
    id += "-p";
    id += static_cast<char>('0' + pair_i);
    id += static_cast<char>('0' + pair_j);
    id += "-r";
    id += static_cast<char>('0' + static_cast<int>(relation));
    if (perturbation != Perturbation::kNone) {
        id += '-';
        id += perturbation_name(perturbation);
    }
    return id;
}

}  // namespace causalnli
