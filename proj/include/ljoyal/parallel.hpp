#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace ljoyal {

void set_thread_count(unsigned n);
unsigned thread_count();

namespace detail {
bool& inside_worker();
}

/// Evaluates f(0..n-1), possibly on several threads, and returns the results
/// in index order. Nested calls run inline. If several calls throw, the
/// exception of the smallest index is rethrown.
template <class F>
auto parallel_map(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
    using R = std::invoke_result_t<F&, std::size_t>;
    std::vector<std::optional<R>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    unsigned workers = std::min<std::size_t>(thread_count(), n);
    if (workers <= 1 || detail::inside_worker()) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                slots[i].emplace(f(i));
            } catch (...) {
                errors[i] = std::current_exception();
                break;
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto run = [&] {
            detail::inside_worker() = true;
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    slots[i].emplace(f(i));
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
            detail::inside_worker() = false;
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(run);
        for (auto& t : pool)
            t.join();
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    std::vector<R> out;
    out.reserve(n);
    for (auto& s : slots)
        out.push_back(std::move(*s));
    return out;
}

} // namespace ljoyal
