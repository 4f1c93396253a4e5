#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace causalnli {

/// Streaming SHA-256 for the output manifest digests.
class Sha256 {
public:
    Sha256();
    void update(const void* data, std::size_t size);
    void update(std::string_view data) { update(data.data(), data.size()); }
    std::string hex_digest();  // finalizes; no further updates

private:
    void process_block(const std::uint8_t* block);

    std::uint32_t state_[8];
    std::uint64_t total_ = 0;
    std::uint8_t buffer_[64];
    std::size_t buffered_ = 0;
};

std::string sha256_hex(std::string_view data);
std::string sha256_file_hex(const std::string& path);

}  // namespace causalnli
