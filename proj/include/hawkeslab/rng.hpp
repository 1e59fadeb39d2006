#ifndef HAWKESLAB_RNG_HPP
#define HAWKESLAB_RNG_HPP

#include <cstdint>
#include <cstring>
#include <array>
#include <string_view>

namespace hawkeslab {

// Counter-based generator (Philox4x32-10). A stream is identified by a
// 64-bit key plus a 64-bit stream id placed in the upper counter words, so
// derived streams never overlap. Draws consume the low counter words only.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream() : RngStream(0, 0) {}
    RngStream(std::uint64_t key, std::uint64_t stream_id)
        : key_(key), stream_(stream_id), ctr_(0), buf_pos_(2) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type(0); }

    result_type operator()() {
        if (buf_pos_ >= 2) {
            fill_block();
            buf_pos_ = 0;
        }
        return buf_[buf_pos_++];
    }

    /// Uniform double in the open interval (0,1).
    double uniform() {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1p-53;
    }

    /// Child stream; independent of the parent and of siblings with other tags.
    RngStream child(std::uint64_t a, std::uint64_t b = 0) const {
        std::uint64_t k = mix(key_ ^ mix(a + 0x717ea3d5u));
        std::uint64_t s = mix(stream_ ^ mix(b ^ (a << 1)) ^ k);
        return RngStream(k, s);
    }
    RngStream child(std::string_view name, std::uint64_t b = 0) const {
        return child(hash_name(name), b);
    }

    static std::uint64_t hash_name(std::string_view s) {
        std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    std::uint64_t key() const { return key_; }
    std::uint64_t stream_id() const { return stream_; }

private:
    static std::uint64_t mix(std::uint64_t z) {  // splitmix64 finalizer
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    void fill_block() {
        std::uint32_t c0 = static_cast<std::uint32_t>(ctr_);
        std::uint32_t c1 = static_cast<std::uint32_t>(ctr_ >> 32);
        std::uint32_t c2 = static_cast<std::uint32_t>(stream_);
        std::uint32_t c3 = static_cast<std::uint32_t>(stream_ >> 32);
        std::uint32_t k0 = static_cast<std::uint32_t>(key_);
        std::uint32_t k1 = static_cast<std::uint32_t>(key_ >> 32);
        for (int round = 0; round < 10; ++round) {
            std::uint64_t p0 = 0xD2511F53ull * c0;
            std::uint64_t p1 = 0xCD9E8D57ull * c2;
            std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            std::uint32_t n0 = hi1 ^ c1 ^ k0;
            std::uint32_t n1 = lo1;
            std::uint32_t n2 = hi0 ^ c3 ^ k1;
            std::uint32_t n3 = lo0;
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        buf_[0] = (static_cast<std::uint64_t>(c1) << 32) | c0;
        buf_[1] = (static_cast<std::uint64_t>(c3) << 32) | c2;
        ++ctr_;
    }

    std::uint64_t key_;
    std::uint64_t stream_;
    std::uint64_t ctr_;
    std::array<std::uint64_t, 2> buf_;
    int buf_pos_;
};

/// Root stream for a master seed; modules derive named substreams from it.
inline RngStream master_stream(std::uint64_t seed) {
    return RngStream(seed, 0x6c617768u).child("hawkeslab/master");
}

}  // namespace hawkeslab

#endif
