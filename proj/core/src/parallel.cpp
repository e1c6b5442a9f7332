#include "z4ap/parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace z4ap {

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& f) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::size_t workers = std::min<std::size_t>(threads, count);
    std::size_t chunk = (count + workers - 1) / workers;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk, hi = std::min(count, lo + chunk);
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) f(i);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace z4ap
