#include "causalnli/enumerate.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "causalnli/canonical.hpp"

namespace causalnli {

std::vector<Dag> enumerate_dags(int node_count) {
    if (node_count < 1 || node_count > kMaxEnumerationNodes)
        throw std::invalid_argument("enumerate_dags: node count must be in [1, 8]");
    const int n = node_count;

    // Cell k of a mask is the k-th pair (i, j), i < j, in lexicographic order.
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) cells.emplace_back(i, j);

    std::map<CanonicalKey, std::uint64_t> smallest_mask_by_key;
    const std::uint64_t mask_count = std::uint64_t{1} << cells.size();
    for (std::uint64_t mask = 0; mask < mask_count; ++mask) {
        std::uint64_t adjacency = 0;
        for (std::size_t k = 0; k < cells.size(); ++k)
            if (mask & (std::uint64_t{1} << k))
                adjacency |= std::uint64_t{1} << (cells[k].first * 8 + cells[k].second);
        const CanonicalKey key = canonical_key_mixed(n, adjacency, 0);
        smallest_mask_by_key.emplace(key, adjacency);  // first hit wins
    }

    std::vector<Dag> out;
    out.reserve(smallest_mask_by_key.size());
    for (const auto& [key, adjacency] : smallest_mask_by_key)
        out.push_back(Dag::from_bits(n, adjacency));
    return out;
}

}  // namespace causalnli
