#pragma once

#include "crochet/recursion.hpp"

// Offline corpus generators. Quadratic polynomial recursions are produced
// from external-angle data by the angle-doubling construction: the orbit of
// the characteristic angle fixes the marked set and the cyclic order, the
// itinerary relative to the two preimage angles places the restrictions,
// and the handful of remaining convention choices is resolved by full
// validation. Synthetic non-polynomial models come from a constrained
// search over small wreath data, certified the same way.

namespace crochet {

// theta = num/den in [0,1); requires an eventually periodic doubling orbit
// (every rational qualifies).
WreathRecursion quadratic_from_angle(long long num, long long den);

// Named corpus entries: z2, basilica, rabbit, z2i, chebyshev,
// cantor_bicycle, carpet_model.
WreathRecursion corpus_map(const std::string& name);
std::vector<std::string> corpus_names();

// Degree-3 map with an invariant curve that has two essential self-lifts
// (an annulus replicating over itself); both sides carry fixed Fatou
// centers. Built by constrained search, certified by validate().
WreathRecursion cantor_bicycle_map();

// Small model whose marked Fatou centers provably never cluster within the
// search budget: every arc closure terminates without recurrence.
WreathRecursion carpet_model_map();

}  // namespace crochet
