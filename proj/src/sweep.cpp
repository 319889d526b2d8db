#include "flasque/sweep.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <string>

namespace flasque {

int sweep_threads() {
  if (const char* env = std::getenv("FLASQUE_KIT_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return omp_get_max_threads();
}

std::vector<FiniteAbelianGroup> map_subgroups(const std::vector<Subgroup>& subs,
                                              const std::function<FiniteAbelianGroup(const Subgroup&)>& fn,
                                              Execution mode) {
  std::vector<FiniteAbelianGroup> out(subs.size());
  if (mode == Execution::serial) {
    for (std::size_t i = 0; i < subs.size(); ++i) out[i] = fn(subs[i]);
    return out;
  }
  std::vector<std::exception_ptr> errors(subs.size());
  const long n = static_cast<long>(subs.size());
#pragma omp parallel for schedule(dynamic) num_threads(sweep_threads())
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = fn(subs[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace flasque
