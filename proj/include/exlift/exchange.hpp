#pragma once

#include <optional>

#include "exlift/ring.hpp"

namespace exlift {

/// Idempotent e together with the two auxiliary solutions of the invoking
/// search. Searches return the lexicographically least (e, r, s).
struct ExchangeWitness {
  Elem e = 0;
  Elem r = 0;
  Elem s = 0;

  friend bool operator==(const ExchangeWitness&, const ExchangeWitness&) = default;
};

/// e idempotent with e = a*r and 1 - e = (1 - a)*s.
std::optional<ExchangeWitness> exchange_witness_unital(const FiniteRing& ring, Elem a);

/// e, r, s in I with e idempotent, e = x*r and e = x + s - x*s.
/// Throws NotInIdeal when x is not in I.
std::optional<ExchangeWitness> exchange_witness_ideal(const Ideal& ideal, Elem x);

/// The form relative to the ambient ring: e idempotent with e = x*r for some
/// r in I, and 1 - e = (1 - x)*s for some s in R.
std::optional<ExchangeWitness> exchange_witness_embedded(const Ideal& ideal, Elem x);

bool is_exchange_ring(const FiniteRing& ring);
bool is_exchange_ideal(const Ideal& ideal);
/// Same question answered through exchange_witness_embedded.
bool is_exchange_ideal_embedded(const Ideal& ideal);

/// Least idempotent e of R with pi(e) == ebar, where `quotient` is R/I.
/// Throws NotIdempotent when ebar is not idempotent in R/I.
std::optional<Elem> lift_idempotent(const FiniteRing& quotient, Elem ebar);

/// The ideal eIe of the corner ring eRe.
Ideal corner_ideal(const RingPtr& corner, const Ideal& ideal);

/// M_k(I) as an ideal of the matrix ring M_k(R).
Ideal matrix_ideal(const RingPtr& matrix_ring, const Ideal& ideal);

}  // namespace exlift
