#pragma once

#include <cstdint>
#include <exception>
#include <vector>

namespace fdist {

/// Every data-parallel kernel has a serial reference path. Both paths compute
/// per-item results into index-addressed slots and merge them serially, so
/// they produce bit-identical output for any thread count.
enum class Execution { Serial, Parallel };

/// SplitMix64 finalizer over (seed, stream): independent per-item seeds.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Runs body(i) for i in [0, count). Under `Parallel` iterations are spread
/// over OpenMP threads with dynamic scheduling; body must only write to
/// slot i of its outputs. An exception from any item is rethrown after the
/// loop (lowest index wins).
template <class Body>
void for_each_index(long count, Execution exec, Body&& body) {
  if (exec == Execution::Parallel) {
    std::vector<std::exception_ptr> errors(count > 0 ? count : 0);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    for (long i = 0; i < count; ++i) body(i);
  }
}

/// Sets the OpenMP thread count (ignored when jobs <= 0).
void set_thread_count(int jobs);
int thread_count();

}  // namespace fdist
