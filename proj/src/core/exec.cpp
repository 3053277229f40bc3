#include "archrec/core/exec.hpp"

#include <omp.h>

namespace archrec {

namespace {
int g_threads = 0;
}

void set_kernel_threads(int threads) {
  g_threads = threads;
  if (threads > 0) omp_set_num_threads(threads);
}

int kernel_threads() { return g_threads > 0 ? g_threads : omp_get_max_threads(); }

}  // namespace archrec
