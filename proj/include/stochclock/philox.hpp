// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace stochclock
{

/*!
 * Philox4x64-10 counter-based generator (Salmon et al., SC'11).
 *
 * A pure function of (counter, key): any block of output can be produced in
 * isolation, which makes replica streams independent of evaluation order.
 */
class Philox4x64
{
  public:
    using Counter = std::array<std::uint64_t, 4>;
    using Key = std::array<std::uint64_t, 2>;

    static Counter block(Counter ctr, Key key) noexcept
    {
        for (int round = 0; round < 10; ++round)
        {
            if (round > 0)
            {
                key[0] += 0x9E3779B97F4A7C15ULL;
                key[1] += 0xBB67AE8584CAA73BULL;
            }
            ctr = single_round(ctr, key);
        }
        return ctr;
    }

  private:
    __extension__ using uint128 = unsigned __int128;

    static Counter single_round(const Counter& c, const Key& k) noexcept
    {
        uint128 const p0
            = static_cast<uint128>(0xD2E7470EE14C6C93ULL) * c[0];
        uint128 const p1
            = static_cast<uint128>(0xCA5A826395121157ULL) * c[2];
        auto const hi0 = static_cast<std::uint64_t>(p0 >> 64);
        auto const lo0 = static_cast<std::uint64_t>(p0);
        auto const hi1 = static_cast<std::uint64_t>(p1 >> 64);
        auto const lo1 = static_cast<std::uint64_t>(p1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
};

//! Independent stream identifiers folded into the counter.
enum class StreamTag : std::uint64_t
{
    ensemble_lifetimes = 1,
    poisson_gaps = 2,
};

/*!
 * Sequential view of the Philox output for one (seed, replica, tag).
 *
 * Draw i comes from lane i % 4 of block i / 4, so draw i is the same value no
 * matter how the stream is consumed or on which thread.
 */
class ReplicaStream
{
  public:
    ReplicaStream(std::uint64_t seed, std::uint64_t replica, StreamTag tag,
                  std::uint64_t first_draw = 0) noexcept
        : key_{seed, 0x5851F42D4C957F2DULL}
        , replica_(replica)
        , tag_(static_cast<std::uint64_t>(tag))
        , block_index_(first_draw / 4)
        , lane_(static_cast<int>(first_draw % 4))
    {
        refill();
    }

    std::uint64_t next_u64() noexcept
    {
        if (lane_ == 4)
        {
            ++block_index_;
            lane_ = 0;
            refill();
        }
        return buffer_[lane_++];
    }

    //! Uniform in [0, 1) with 53 random bits.
    double next_uniform() noexcept
    {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    //! Exponential with the given rate by inversion, -ln(1 - u) / rate.
    double next_exponential(double rate) noexcept
    {
        return -std::log1p(-next_uniform()) / rate;
    }

  private:
    void refill() noexcept
    {
        buffer_ = Philox4x64::block({block_index_, replica_, tag_, 0}, key_);
    }

    Philox4x64::Key key_;
    std::uint64_t replica_;
    std::uint64_t tag_;
    std::uint64_t block_index_;
    int lane_;
    Philox4x64::Counter buffer_{};
};

}  // namespace stochclock
