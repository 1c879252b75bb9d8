#pragma once

#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>

namespace spandup {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Big-endian field readers. `p` must have at least 2/4 readable bytes.
inline uint16_t read_be16(const uint8_t* p) {
    return static_cast<uint16_t>((p[0] << 8) | p[1]);
}

inline uint32_t read_be32(const uint8_t* p) {
    return (static_cast<uint32_t>(p[0]) << 24) | (static_cast<uint32_t>(p[1]) << 16) |
           (static_cast<uint32_t>(p[2]) << 8) | static_cast<uint32_t>(p[3]);
}

inline void write_be16(uint8_t* p, uint16_t v) {
    p[0] = static_cast<uint8_t>(v >> 8);
    p[1] = static_cast<uint8_t>(v & 0xff);
}

inline void write_be32(uint8_t* p, uint32_t v) {
    p[0] = static_cast<uint8_t>(v >> 24);
    p[1] = static_cast<uint8_t>((v >> 16) & 0xff);
    p[2] = static_cast<uint8_t>((v >> 8) & 0xff);
    p[3] = static_cast<uint8_t>(v & 0xff);
}

// All timestamps are nanoseconds since the capture epoch.
using Nanoseconds = int64_t;

constexpr Nanoseconds kNsPerSec = 1'000'000'000;
constexpr Nanoseconds kNsPerMs = 1'000'000;
constexpr Nanoseconds kNsPerUs = 1'000;

inline double ns_to_seconds(Nanoseconds ns) { return static_cast<double>(ns) / 1e9; }

inline Nanoseconds seconds_to_ns(double s) {
    return static_cast<Nanoseconds>(s * 1e9 + (s >= 0 ? 0.5 : -0.5));
}

}  // namespace spandup
