#pragma once

#include <cstdint>
#include <string>

namespace bcheck {

// Incremental SHA-256 (FIPS 180-4), used for the report's config digest.
class Sha256 {
public:
    Sha256();
    void update(const void* data, size_t len);
    void update(const std::string& s) { update(s.data(), s.size()); }
    // finishes and returns lowercase hex; the object must not be reused
    std::string hex_digest();

private:
    void process_block(const uint8_t* block);

    uint32_t state_[8];
    uint64_t total_ = 0;
    uint8_t buffer_[64];
    size_t buffered_ = 0;
};

std::string sha256_hex(const std::string& data);

}  // namespace bcheck
