#pragma once

#include <cstdint>

namespace threebox {

// splitmix64 (Steele/Lea/Flood mixing constants): tiny, fast and identical
// on every platform, unlike the std:: distributions. Game rounds draw from
// substreams keyed by (seed, round counter) so a transcript does not depend
// on evaluation order.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1) with 53 significant bits
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    static SplitMix64 substream(std::uint64_t seed, std::uint64_t counter) {
        SplitMix64 keyer(counter * 0x9e3779b97f4a7c15ull ^ seed);
        SplitMix64 stream(seed ^ keyer.next());
        stream.next();
        return stream;
    }

private:
    std::uint64_t state_;
};

}  // namespace threebox
