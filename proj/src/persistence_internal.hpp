#pragma once

#include "rcf/persistence.hpp"

namespace rcf {

void check_persistence_args(const FlagFiltration& ff, std::uint32_t k_max, std::uint32_t characteristic);

// Classification of a class that no simplex in the filtration kills.
DeathKind unpaired_kind(const FlagFiltration& ff, std::uint32_t dim, SimplexIndex index);

}  // namespace rcf
