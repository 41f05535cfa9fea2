#include "fdist/parallel.hpp"

#include <omp.h>

namespace fdist {

void set_thread_count(int jobs) {
  if (jobs > 0) omp_set_num_threads(jobs);
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace fdist
