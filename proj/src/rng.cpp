// SPDX-License-Identifier: Apache-2.0
#include "isac/rng.hpp"

namespace isac {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(mix64(seed + kGolden) ^ mix64(stream * kGolden + 0x632be59bd9b4e019ULL))) {}

Rng::result_type Rng::operator()() {
    state_ += kGolden;
    return mix64(state_);
}

double Rng::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

}  // namespace isac
