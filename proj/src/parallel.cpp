#include "fractel/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fractel {

int thread_count(int requested)
{
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    n = std::max(n, 1);
    if (const char* env = std::getenv("FRACTEL_THREADS")) {
        try {
            int cap = std::stoi(env);
            if (cap > 0)
                n = std::min(n, cap);
        } catch (const std::exception&) {
        }
    }
    return n;
}

void parallel_for(int n, int threads, const std::function<void(int)>& body)
{
    if (n <= 0)
        return;
    threads = std::clamp(threads, 1, n);
    std::exception_ptr first;
    int first_index = n;
    std::mutex m;
    auto guarded = [&](int i) {
        try {
            body(i);
        } catch (...) {
            std::lock_guard lock(m);
            if (i < first_index) {
                first_index = i;
                first = std::current_exception();
            }
        }
    };
    if (threads == 1) {
        for (int i = 0; i < n; ++i)
            guarded(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (int i = next++; i < n; i = next++)
                    guarded(i);
            });
        for (auto& th : pool)
            th.join();
    }
    if (first)
        std::rethrow_exception(first);
}

} // namespace fractel
