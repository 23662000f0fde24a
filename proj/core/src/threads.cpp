#include "tensvd/threads.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include <Eigen/Core>

namespace tensvd {

int configure_threads_from_env() {
    int threads = 1;
    if (const char* env = std::getenv("TENSVD_THREADS")) {
        try {
            threads = std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            threads = 1;
        }
    }
    Eigen::setNbThreads(threads);
    return threads;
}

} // namespace tensvd
