#pragma once

// Index-parallel loop with a serial reference path. Results are always stored
// by index, so output does not depend on scheduling.

#include <exception>
#include <vector>

namespace torofree {

enum class Exec { Serial, Parallel };

/// Runs body(k) for k in [0, count). The first exception (lowest index) is
/// rethrown after the loop.
template <class Body>
void for_each_index(Exec exec, long count, Body&& body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < count; ++k) {
      try {
        body(k);
      } catch (...) {
        errors[static_cast<std::size_t>(k)] = std::current_exception();
      }
    }
  } else {
    for (long k = 0; k < count; ++k) {
      try {
        body(k);
      } catch (...) {
        errors[static_cast<std::size_t>(k)] = std::current_exception();
      }
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

template <class T, class Body>
std::vector<T> map_index(Exec exec, long count, Body&& body) {
  std::vector<T> out(static_cast<std::size_t>(count));
  for_each_index(exec, count, [&](long k) { out[static_cast<std::size_t>(k)] = body(k); });
  return out;
}

}  // namespace torofree
