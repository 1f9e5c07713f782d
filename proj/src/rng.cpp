#include "agentx/rng.hpp"

namespace agentx {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, Stream stream) {
    return splitmix64(splitmix64(master) ^ splitmix64(static_cast<std::uint64_t>(stream) << 32));
}

}  // namespace agentx
