#include "specklab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace specklab {

std::size_t worker_count()
{
    if (const char* env = std::getenv("SPECKLAB_THREADS")) {
        try {
            long v = std::stol(env);
            if (v > 0)
                return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    auto hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body)
{
    const std::size_t workers = std::min(worker_count(), count);
    std::vector<std::exception_ptr> errors(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        for (auto& t : pool)
            t.join();
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

}  // namespace specklab
