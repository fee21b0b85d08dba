#include "mcf/util.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>

namespace mcf {

int thread_count() {
    static const int n = [] {
        if (const char* env = std::getenv("MCFLOW_THREADS")) {
            const int v = std::atoi(env);
            if (v >= 1) return std::min(v, 256);
        }
        return 1;
    }();
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    const int nt = thread_count();
    if (nt <= 1 || n < 512) {
        fn(0, n);
        return;
    }
    const std::size_t chunk = (n + nt - 1) / nt;
    std::vector<std::thread> workers;
    std::exception_ptr err;
    std::mutex err_mtx;
    for (int t = 0; t < nt; ++t) {
        const std::size_t b = std::min(n, t * chunk);
        const std::size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        workers.emplace_back([&, b, e] {
            try {
                fn(b, e);
            } catch (...) {
                std::scoped_lock lk(err_mtx);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    if (err) std::rethrow_exception(err);
}

} // namespace mcf
