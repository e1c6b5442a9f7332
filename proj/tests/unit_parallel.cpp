#include <doctest.h>

#include <atomic>
#include <cstddef>
#include <vector>

#include "z4ap/error.hpp"
#include "z4ap/parallel.hpp"

using namespace z4ap;

TEST_CASE("each index runs exactly once") {
    for (int threads : {1, 2, 3, 8, 64}) {
        for (std::size_t count : {std::size_t(0), std::size_t(1),
                                  std::size_t(7), std::size_t(1000)}) {
            std::vector<std::atomic<int>> hits(count);
            parallel_for(count, threads,
                         [&](std::size_t i) { hits[i].fetch_add(1); });
            for (std::size_t i = 0; i < count; ++i) CHECK(hits[i].load() == 1);
        }
    }
}

TEST_CASE("worker exceptions reach the caller") {
    CHECK_THROWS_AS(parallel_for(100, 4,
                                 [](std::size_t i) {
                                     if (i == 37)
                                         throw DomainError("from the pool");
                                 }),
                    DomainError);
    try {
        parallel_for(10, 2, [](std::size_t i) {
            if (i == 3) throw CapacityError("boom");
        });
        FAIL("expected propagation");
    } catch (const CapacityError& e) {
        CHECK(std::string(e.what()).find("boom") != std::string::npos);
    }
}

TEST_CASE("nonpositive thread counts fall back to serial") {
    for (int threads : {0, -2}) {
        std::vector<int> order;
        parallel_for(4, threads, [&](std::size_t i) {
            order.push_back(int(i));  // single-threaded: safe and ordered
        });
        CHECK(order == std::vector<int>{0, 1, 2, 3});
    }
}
