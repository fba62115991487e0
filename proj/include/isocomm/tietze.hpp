#pragma once

#include <vector>

#include "isocomm/presentation.hpp"

namespace isocomm {

// Presentations reachable from p by one elementary Tietze transformation,
// within a bounded fragment controlled by the single budget parameter:
//
//   - remove a relator derivable from the others by bounded consequence
//     search (products of at most `budget` conjugated relators, conjugator
//     length <= min(budget, 2));
//   - add such a consequence as a new relator (freely reduced, nonempty,
//     length <= budget, not already present);
//   - add a fresh generator g with a defining relator g v^-1 for each word
//     v over the existing generators with length <= min(budget, 2);
//   - remove a generator that some relator pins to a word in the others
//     (single occurrence, exponent +-1), substituting it away.
//
// The result is a deterministic, duplicate-free list (canonical
// serialization order of discovery); the input presentation itself is
// never included. No completeness beyond this fragment is claimed.
std::vector<FinitePresentation> tietze_neighbors(const FinitePresentation& p, Budget budget);

}  // namespace isocomm
