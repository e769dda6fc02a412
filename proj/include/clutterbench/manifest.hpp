#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <tuple>
#include <vector>

#include "clutterbench/errors.hpp"
#include "clutterbench/json_io.hpp"

namespace clutterbench {

// SHA-256 (FIPS 180-4), single-shot over a byte string.
class Sha256 {
public:
    Sha256() { reset(); }

    void reset() {
        state_ = {0x6a09e667u, 0xbb67ae85u, 0x3c6ef372u, 0xa54ff53au,
                  0x510e527fu, 0x9b05688cu, 0x1f83d9abu, 0x5be0cd19u};
        buffer_len_ = 0;
        total_len_ = 0;
    }

    void update(const void* data, std::size_t len) {
        const auto* p = static_cast<const std::uint8_t*>(data);
        total_len_ += len;
        while (len > 0) {
            const std::size_t take = std::min(len, std::size_t{64} - buffer_len_);
            std::memcpy(buffer_.data() + buffer_len_, p, take);
            buffer_len_ += take;
            p += take;
            len -= take;
            if (buffer_len_ == 64) {
                process_block(buffer_.data());
                buffer_len_ = 0;
            }
        }
    }

    std::string hex_digest() {
        const std::uint64_t bit_len = total_len_ * 8;
        std::uint8_t pad[72] = {0x80};
        const std::size_t pad_len = (buffer_len_ < 56) ? 56 - buffer_len_ : 120 - buffer_len_;
        update(pad, pad_len);
        std::uint8_t len_be[8];
        for (int i = 0; i < 8; ++i) len_be[i] = static_cast<std::uint8_t>(bit_len >> (56 - 8 * i));
        update(len_be, 8);
        std::string out;
        out.reserve(64);
        static const char* digits = "0123456789abcdef";
        for (std::uint32_t w : state_) {
            for (int i = 28; i >= 0; i -= 4) out.push_back(digits[(w >> i) & 0xF]);
        }
        return out;
    }

private:
    static std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

    void process_block(const std::uint8_t* block) {
        static constexpr std::uint32_t k[64] = {
            0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
            0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
            0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
            0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
            0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
            0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
            0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
            0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
            0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
            0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
            0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};
        std::uint32_t w[64];
        for (int i = 0; i < 16; ++i)
            w[i] = (std::uint32_t(block[4 * i]) << 24) | (std::uint32_t(block[4 * i + 1]) << 16) |
                   (std::uint32_t(block[4 * i + 2]) << 8) | std::uint32_t(block[4 * i + 3]);
        for (int i = 16; i < 64; ++i) {
            const std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            const std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        auto [a, b, c, d, e, f, g, h] =
            std::tuple{state_[0], state_[1], state_[2], state_[3],
                       state_[4], state_[5], state_[6], state_[7]};
        for (int i = 0; i < 64; ++i) {
            const std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            const std::uint32_t ch = (e & f) ^ (~e & g);
            const std::uint32_t t1 = h + s1 + ch + k[i] + w[i];
            const std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
            const std::uint32_t t2 = s0 + maj;
            h = g; g = f; f = e; e = d + t1;
            d = c; c = b; b = a; a = t1 + t2;
        }
        state_[0] += a; state_[1] += b; state_[2] += c; state_[3] += d;
        state_[4] += e; state_[5] += f; state_[6] += g; state_[7] += h;
    }

    std::array<std::uint32_t, 8> state_;
    std::array<std::uint8_t, 64> buffer_;
    std::size_t buffer_len_ = 0;
    std::uint64_t total_len_ = 0;
};

inline std::string sha256_hex(const std::string& data) {
    Sha256 h;
    h.update(data.data(), data.size());
    return h.hex_digest();
}

inline std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("sha256_file: cannot open " + path);
    Sha256 h;
    char buf[65536];
    while (in.read(buf, sizeof buf) || in.gcount() > 0)
        h.update(buf, static_cast<std::size_t>(in.gcount()));
    return h.hex_digest();
}

inline constexpr const char* kToolVersion = "1.0.0";

// One manifest per batch output directory: tool version, full configuration
// snapshot, seed and the digests of every input and output. No clock values,
// so identical runs produce identical manifests.
struct RunManifest {
    std::string command;
    std::uint64_t seed = 0;
    Json config = Json::object();
    std::vector<std::pair<std::string, std::string>> inputs;   // path, sha256
    std::vector<std::pair<std::string, std::string>> outputs;  // path, sha256

    Json to_json() const {
        Json j;
        j["tool"] = "clutterbench";
        j["version"] = kToolVersion;
        j["command"] = command;
        j["seed"] = seed;
        j["config"] = config;
        auto files = [](const std::vector<std::pair<std::string, std::string>>& v) {
            Json arr = Json::array();
            for (const auto& [path, digest] : v)
                arr.push_back(Json{{"path", path}, {"sha256", digest}});
            return arr;
        };
        j["inputs"] = files(inputs);
        j["outputs"] = files(outputs);
        return j;
    }

    void add_input(const std::string& path) { inputs.emplace_back(path, sha256_file(path)); }

    // Outputs are recorded under their name relative to the manifest's
    // directory, so a rerun into another directory stays byte-identical.
    void add_output(const std::string& path, const std::string& name) {
        outputs.emplace_back(name, sha256_file(path));
    }

    void save(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw io_error("manifest: cannot open " + path);
        out << to_json().dump(2) << "\n";
    }
};

}  // namespace clutterbench
