#ifndef SDR_SHA256_HPP
#define SDR_SHA256_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

namespace sdr {

/// Incremental SHA-256 (FIPS 180-4).
class Sha256 {
public:
    Sha256();
    void update(const void* data, std::size_t len);
    /// Finalizes and returns the digest as lowercase hex. The object must
    /// not be updated afterwards.
    std::string hex_digest();

private:
    void process_block(const std::uint8_t* block);

    std::uint32_t state_[8];
    std::uint64_t bit_count_ = 0;
    std::uint8_t buffer_[64];
    std::size_t buffer_len_ = 0;
};

std::string sha256_hex(const std::string& bytes);
std::string sha256_file_hex(const std::filesystem::path& path);

}  // namespace sdr

#endif
