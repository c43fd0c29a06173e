// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace stochclock::detail
{

//! Run fn(i) for i in [0, count) over contiguous blocks, one per worker.
//! Callers write results by index, so output never depends on scheduling.
template<class F>
void parallel_for(std::int64_t count, unsigned threads, F&& fn)
{
    if (threads == 0)
    {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    auto const workers = static_cast<std::int64_t>(
        std::min<std::int64_t>(threads, std::max<std::int64_t>(count, 1)));
    if (workers <= 1)
    {
        for (std::int64_t i = 0; i < count; ++i)
        {
            fn(i);
        }
        return;
    }

    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (std::int64_t w = 0; w < workers; ++w)
        {
            pool.emplace_back([&, w] {
                std::int64_t const begin = count * w / workers;
                std::int64_t const end = count * (w + 1) / workers;
                try
                {
                    for (std::int64_t i = begin; i < end; ++i)
                    {
                        fn(i);
                    }
                }
                catch (...)
                {
                    errors[static_cast<std::size_t>(w)]
                        = std::current_exception();
                }
            });
        }
    }
    for (auto const& e : errors)
    {
        if (e)
        {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace stochclock::detail
