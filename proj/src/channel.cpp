/*
   Copyright 2026 the rsmaharq authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "channel.hpp"

#include <cmath>
#include <stdexcept>

namespace rsmaharq {

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

double linear_to_db(double x) { return 10.0 * std::log10(x); }

double UserProfile::avg_gain_linear() const { return db_to_linear(avg_gain_db); }

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mul_hilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(p);
    hi = static_cast<std::uint32_t>(p >> 32);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t lo0, hi0, lo1, hi1;
        mul_hilo(kPhiloxM0, counter[0], lo0, hi0);
        mul_hilo(kPhiloxM1, counter[2], lo1, hi1);
        const std::array<std::uint32_t, 4> next = {
            hi1 ^ counter[1] ^ key[0], lo1,
            hi0 ^ counter[3] ^ key[1], lo0};
        counter = next;
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return counter;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t domain)
    : stream_id_(stream_id) {
    const std::uint64_t k = splitmix64(seed) ^ splitmix64(domain + 0x6A09E667F3BCC909ull);
    key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    // The id occupies one counter word exactly, so streams never collide.
    if (stream_id > 0xFFFFFFFFull) {
        throw std::invalid_argument("RngStream: stream_id must fit in 32 bits");
    }
}

double RngStream::uniform01(std::uint64_t round, std::uint32_t slot) const {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(round), static_cast<std::uint32_t>(round >> 32),
        slot, static_cast<std::uint32_t>(stream_id_)};
    const auto w = philox4x32(ctr, key_);
    const std::uint64_t bits = (static_cast<std::uint64_t>(w[1]) << 32) | w[0];
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::exponential(double mean, std::uint64_t round, std::uint32_t slot) const {
    if (mean < 0.0) throw std::invalid_argument("exponential: mean must be >= 0");
    if (mean == 0.0) return 0.0;
    return -mean * std::log(uniform01(round, slot));
}

RngStream::UniformPair RngStream::pair_uniform01(std::uint64_t round) const {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(round), static_cast<std::uint32_t>(round >> 32),
        0u, static_cast<std::uint32_t>(stream_id_)};
    const auto w = philox4x32(ctr, key_);
    const std::uint64_t bits1 = (static_cast<std::uint64_t>(w[1]) << 32) | w[0];
    const std::uint64_t bits2 = (static_cast<std::uint64_t>(w[3]) << 32) | w[2];
    return {(static_cast<double>(bits1 >> 11) + 0.5) * 0x1.0p-53,
            (static_cast<double>(bits2 >> 11) + 0.5) * 0x1.0p-53};
}

ChannelDraw RngStream::draw_round(const UserProfile& p1, const UserProfile& p2,
                                  std::uint64_t round) const {
    const UniformPair u = pair_uniform01(round);
    ChannelDraw draw;
    draw.g1 = -p1.avg_gain_linear() * std::log(u.u1);
    draw.g2 = -p2.avg_gain_linear() * std::log(u.u2);
    return draw;
}

double sample_gain(const UserProfile& profile, const RngStream& rng,
                   std::uint64_t round, std::uint32_t slot) {
    return rng.exponential(profile.avg_gain_linear(), round, slot);
}

}  // namespace rsmaharq
