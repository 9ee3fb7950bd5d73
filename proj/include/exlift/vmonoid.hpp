#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "exlift/matrix.hpp"
#include "exlift/ring.hpp"

namespace exlift {

using MElem = std::uint32_t;

/// Finite commutative monoid given by its operation table. An optional
/// overflow element marks "outside the truncation ball": it is absorbing and
/// the checkers skip it.
struct FinMonoid {
  std::size_t size = 1;
  std::vector<MElem> table{0};
  MElem zero = 0;
  std::optional<MElem> overflow;
  std::vector<std::string> labels;

  MElem op(MElem a, MElem b) const { return table[a * size + b]; }
  bool in_ball(MElem a) const { return !overflow || a != *overflow; }
  std::string label(MElem a) const;
  /// Algebraic order: a <= b iff a + z == b for some z.
  bool leq(MElem a, MElem b) const;
  /// n*a, with 0*a == zero.
  MElem times(std::uint64_t n, MElem a) const;

  /// First violated law, or nullopt.
  std::optional<std::string> check_axioms() const;
};

struct OrderIdeal {
  std::vector<bool> mask;

  bool contains(MElem a) const { return a < mask.size() && mask[a]; }
  std::vector<MElem> members() const;
  static OrderIdeal whole(const FinMonoid& m);
  static OrderIdeal trivial(const FinMonoid& m);
  static OrderIdeal of(const FinMonoid& m, const std::vector<MElem>& members);
};

/// Nullopt when S is a submonoid closed downward in the algebraic order
/// (both checked on the ball); otherwise a description of the failure.
std::optional<std::string> order_ideal_violation(const FinMonoid& m, const OrderIdeal& s);

/// Smallest order-ideal containing the seeds.
OrderIdeal order_ideal_closure(const FinMonoid& m, const std::vector<MElem>& seeds);

/// (x1, x2, y1, y2)
using Quad = std::array<MElem, 4>;

/// Whether x1 + x2 = y1 + y2 admits z_ij with z_i1 + z_i2 = x_i and
/// z_1j + z_2j = y_j.
bool refines(const FinMonoid& m, const Quad& q);

/// First x1 + x2 = y1 + y2 in the ball with some term in S that does not
/// refine, in lexicographic order of (x1, x2, y1, y2).
std::optional<Quad> refinement_counterexample(const FinMonoid& m, const OrderIdeal& s);
inline bool has_refinement_wrt(const FinMonoid& m, const OrderIdeal& s) {
  return !refinement_counterexample(m, s);
}

/// First a != b (a < b) with a + a = a + b = b + b, restricted to S when given.
std::optional<std::pair<MElem, MElem>> separativity_counterexample(const FinMonoid& m,
                                                                   const OrderIdeal* s = nullptr);
inline bool is_separative(const FinMonoid& m) { return !separativity_counterexample(m); }

struct CancellationCounterexample {
  MElem a = 0, b = 0, e = 0;
  std::uint64_t n = 0;
};

/// Exhaustive check that a + e = b + e with e in S and e <= n*a, e <= n*b
/// (1 <= n <= size) forces a = b. Throws HypothesisFailed unless S is a
/// separative order-ideal and M has refinement with respect to S.
std::optional<CancellationCounterexample> cancellation_counterexample(const FinMonoid& m, const OrderIdeal& s);
inline bool lemma13_check(const FinMonoid& m, const OrderIdeal& s) { return !cancellation_counterexample(m, s); }

json monoid_to_json(const FinMonoid& m, const OrderIdeal* s = nullptr);
/// Reads {"type":"monoid","size","zero","table",["overflow"],["labels"],["order_ideal"]}.
/// The order ideal defaults to the whole monoid.
std::pair<FinMonoid, OrderIdeal> monoid_from_json(const json& j);

/// Random product of small cyclic groups, semilattices and truncated chains,
/// with a random order-ideal. No hypotheses are enforced.
std::pair<FinMonoid, OrderIdeal> random_monoid(std::mt19937_64& rng, std::size_t max_size = 24);

// ---------------------------------------------------------------------------
// V(R)

struct VClass {
  RMatrix representative;
  MElem monoid_index = 0;
  /// Multiplicity of each primitive type.
  std::vector<int> counts;
};

/// Equivalence type of a primitive idempotent of R.
struct PrimitiveType {
  Elem idempotent = 0;      // first primitive of this type in the decomposition of 1
  std::vector<Elem> copies; // all primitives of this type in the decomposition of 1
  std::size_t residue = 0;  // |pRp / pJp|
};

struct VMonoid {
  RingPtr ring;
  int truncation = 1;
  FinMonoid monoid;
  std::vector<VClass> classes;  // indexed by monoid element; overflow excluded
  std::vector<PrimitiveType> types;
  std::vector<bool> radical;    // Jacobson radical membership over the carrier

  /// Monoid index of counts, or the overflow element.
  MElem index_of(const std::vector<int>& counts) const;
};

/// Orthogonal primitive idempotents summing to e, found by recursive
/// splitting inside corners.
std::vector<Elem> primitive_decomposition(const FiniteRing& ring, Elem e);

/// Idempotents e, f of R with x in eRf, y in fRe, xy = e, yx = f.
bool equivalent_idempotents(const FiniteRing& ring, Elem e, Elem f);

/// Jacobson radical {x : 1 - r x is a unit for every r}.
std::vector<bool> jacobson_radical(const FiniteRing& ring);

/// Classes of idempotents of M_k(R), k <= K. Throws GuardExceeded.
VMonoid build_v_monoid(const RingPtr& ring, int truncation);

/// Multiplicity of each primitive type in the idempotent matrix E, read from
/// |E (R p)^k| / |E (J p)^k| = |pRp/pJp|^count. Throws NotIdempotent.
std::vector<int> class_counts(const VMonoid& v, const RMatrix& e);

/// V(I) as an order-ideal of V(R). Throws NotDownwardClosed.
OrderIdeal v_order_ideal(const VMonoid& v, const Ideal& ideal);

/// Idempotent matrices e, f (padded to a common size) with x in eMf, y in fMe,
/// xy = e, yx = f, by exhaustive search. Throws GuardExceeded.
bool equivalent_idempotent_matrices(const RMatrix& e, const RMatrix& f);

/// All idempotents of M_k(R). Throws GuardExceeded.
std::vector<RMatrix> idempotent_matrices(const RingPtr& ring, int k);

}  // namespace exlift
