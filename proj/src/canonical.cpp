#include "causalnli/canonical.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <vector>

namespace causalnli {

namespace {

constexpr std::uint64_t bit_of(int i, int j) {
    return std::uint64_t{1} << (i * 8 + j);
}

// Stable node coloring: start from degree triples, then refine each color by
// the multiset of (edge kind, neighbor color) until stable. Color ids are
// renumbered from sorted signatures each round, so they depend only on
// structure, never on the input labeling.
std::vector<int> refine_colors(int n, std::uint64_t dir, std::uint64_t und) {
    using Signature = std::vector<int>;
    std::vector<int> color(n, 0);
    {
        std::vector<Signature> sig(n);
        for (int v = 0; v < n; ++v) {
            int out = 0, in = 0, u = 0;
            for (int w = 0; w < n; ++w) {
                if (dir & bit_of(v, w)) ++out;
                if (dir & bit_of(w, v)) ++in;
                if (und & bit_of(v, w)) ++u;
            }
            sig[v] = {out, in, u};
        }
        std::map<Signature, int> ranks;
        for (const auto& s : sig) ranks.emplace(s, 0);
        int next = 0;
        for (auto& [s, r] : ranks) r = next++;
        for (int v = 0; v < n; ++v) color[v] = ranks[sig[v]];
    }

    for (int round = 0; round < n; ++round) {
        std::vector<Signature> sig(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> out, in, u;
            for (int w = 0; w < n; ++w) {
                if (dir & bit_of(v, w)) out.push_back(color[w]);
                if (dir & bit_of(w, v)) in.push_back(color[w]);
                if (und & bit_of(v, w)) u.push_back(color[w]);
            }
            std::sort(out.begin(), out.end());
            std::sort(in.begin(), in.end());
            std::sort(u.begin(), u.end());
            Signature s;
            s.push_back(color[v]);
            s.push_back(-1);
            s.insert(s.end(), out.begin(), out.end());
            s.push_back(-1);
            s.insert(s.end(), in.begin(), in.end());
            s.push_back(-1);
            s.insert(s.end(), u.begin(), u.end());
            sig[v] = std::move(s);
        }
        std::map<Signature, int> ranks;
        for (const auto& s : sig) ranks.emplace(s, 0);
        int next = 0;
        for (auto& [s, r] : ranks) r = next++;
        std::vector<int> refined(n);
        for (int v = 0; v < n; ++v) refined[v] = ranks[sig[v]];
        if (refined == color) break;
        color = std::move(refined);
    }
    return color;
}

std::array<std::uint8_t, 17> encode(int n, std::uint64_t dir, std::uint64_t und) {
    std::array<std::uint8_t, 17> bytes{};
    bytes[0] = static_cast<std::uint8_t>(n);
    for (int i = 0; i < 8; ++i) {
        bytes[1 + i] = static_cast<std::uint8_t>((dir >> (i * 8)) & 0xff);
        bytes[9 + i] = static_cast<std::uint8_t>((und >> (i * 8)) & 0xff);
    }
    return bytes;
}

}  // namespace

CanonicalKey canonical_key_mixed(int node_count, std::uint64_t directed,
                                 std::uint64_t undirected) {
    if (node_count < 1 || node_count > Dag::kMaxNodes)
        throw std::invalid_argument("node count must be in [1, 8]");
    const int n = node_count;

    const std::vector<int> color = refine_colors(n, directed, undirected);

    // Nodes grouped by color; canonical labelings place class 0 first, then
    // class 1, etc., and search every within-class order.
    int class_count = 0;
    for (int v = 0; v < n; ++v) class_count = std::max(class_count, color[v] + 1);
    std::vector<std::vector<int>> classes(class_count);
    for (int v = 0; v < n; ++v) classes[color[v]].push_back(v);

    std::vector<int> base(class_count, 0);
    for (int c = 1; c < class_count; ++c)
        base[c] = base[c - 1] + static_cast<int>(classes[c - 1].size());

    std::array<std::uint8_t, 17> best{};
    bool have_best = false;
    std::vector<int> perm(n);
    while (true) {
        for (int c = 0; c < class_count; ++c)
            for (std::size_t k = 0; k < classes[c].size(); ++k)
                perm[classes[c][k]] = base[c] + static_cast<int>(k);
        const std::uint64_t d = permute_adjacency(n, directed, perm);
        const std::uint64_t u = permute_adjacency(n, undirected, perm);
        const auto candidate = encode(n, d, u);
        if (!have_best || candidate < best) {
            best = candidate;
            have_best = true;
        }

        int c = 0;
        while (c < class_count &&
               !std::next_permutation(classes[c].begin(), classes[c].end()))
            ++c;  // wrapped back to sorted order; carry into the next class
        if (c == class_count) break;
    }
    return CanonicalKey{best};
}

CanonicalKey canonical_key(const Dag& g) {
    return canonical_key_mixed(g.node_count(), g.bits(), 0);
}

std::string CanonicalKey::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out += digits[b >> 4];
        out += digits[b & 0xf];
    }
    return out;
}

CanonicalKey CanonicalKey::from_hex(const std::string& hex) {
    CanonicalKey key;
    if (hex.size() != key.bytes.size() * 2)
        throw std::invalid_argument("canonical key hex must be 34 characters");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        throw std::invalid_argument("invalid hex digit in canonical key");
    };
    for (std::size_t i = 0; i < key.bytes.size(); ++i)
        key.bytes[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 |
                                                 nibble(hex[2 * i + 1]));
    return key;
}

std::size_t CanonicalKeyHash::operator()(const CanonicalKey& k) const {
    std::size_t h = 1469598103934665603ull;
    for (std::uint8_t b : k.bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace causalnli
