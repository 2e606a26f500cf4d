#include "parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include <omp.h>

#include "zfskit/threads.hpp"

namespace zfs {

namespace {
int g_threads = 0;  // 0: OpenMP default
}

void set_thread_count(int n) {
  g_threads = std::max(n, 1);
  omp_set_num_threads(g_threads);
}

int thread_count() { return g_threads > 0 ? g_threads : omp_get_max_threads(); }

void configure_threads_from_env() {
  if (const char* v = std::getenv(thread_env_var)) {
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && n > 0) set_thread_count(static_cast<int>(n));
  }
}

namespace detail {

Eigen::Matrix3d chunked_reduce(std::size_t n, std::size_t chunk,
                               const std::function<Eigen::Matrix3d(std::size_t, std::size_t)>& body) {
  chunk = std::max<std::size_t>(chunk, 1);
  const std::size_t chunks = (n + chunk - 1) / chunk;
  std::vector<Eigen::Matrix3d> partial(chunks, Eigen::Matrix3d::Zero());
  std::exception_ptr error;

#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count())
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    try {
      const std::size_t begin = static_cast<std::size_t>(c) * chunk;
      partial[c] = body(begin, std::min(n, begin + chunk));
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  CompensatedMatrix total;
  for (const auto& m : partial) total.add(m);
  return total.value();
}

}  // namespace detail
}  // namespace zfs
