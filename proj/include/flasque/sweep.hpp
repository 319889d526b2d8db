#pragma once

#include <functional>
#include <vector>

#include "flasque/exactlin.hpp"
#include "flasque/gmod.hpp"

namespace flasque {

enum class Execution { serial, parallel };

// Thread count for parallel sweeps: FLASQUE_KIT_THREADS when set to a positive
// integer, otherwise the OpenMP default.
int sweep_threads();

// Evaluates fn on every subgroup. Results keep the input order regardless of
// the execution mode; the first exception (by subgroup position) is rethrown.
std::vector<FiniteAbelianGroup> map_subgroups(const std::vector<Subgroup>& subs,
                                              const std::function<FiniteAbelianGroup(const Subgroup&)>& fn,
                                              Execution mode);

}  // namespace flasque
