#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "exlift/matrix.hpp"
#include "exlift/vmonoid.hpp"

namespace exlift {

/// A ring with a fixed ideal, its quotient and the primitive-type data used
/// to read off idempotent classes.
struct KContext {
  RingPtr ring;
  Ideal ideal;
  RingPtr quotient;
  std::shared_ptr<const VMonoid> v;
};

KContext make_context(const Ideal& ideal);

bool is_fredholm(const KContext& ctx, Elem x);

/// Right-op word for (1 u; 0 1)(1 0; -u^-1 1)(1 u; 0 1) sigma^-1, which
/// evaluates to diag(u, u^-1). Throws NotAUnit.
ElemWord whitehead_factor(const FiniteRing& ring, Elem u);

/// Formal difference [pos_1 (+) ... ] - [neg_1 (+) ...] of idempotent
/// matrices, each side kept as a list of blocks.
struct K0Element {
  std::vector<RMatrix> pos;
  std::vector<RMatrix> neg;

  K0Element operator+(const K0Element& other) const;
  K0Element operator-(const K0Element& other) const;
  /// Drops blocks that occur verbatim on both sides.
  K0Element cancelled() const;
};

/// Chooses a preimage in R for the parameter of op `index` of the Whitehead
/// word over R/I.
using LiftChooser = std::function<Elem(std::size_t index, Elem rbar)>;

struct DeltaResult {
  ElemWord word;          // over R/I
  ElemWord lifted;        // over R
  RMatrix v;              // evaluate(lifted)
  RMatrix p;              // v (1 (+) 0) v^-1
  K0Element value;        // [p] - [1 (+) 0]
};

/// Throws NotAUnit. Without a chooser every parameter lifts to its least
/// preimage.
DeltaResult connecting_delta(const KContext& ctx, Elem ubar, const LiftChooser& lift = {});

/// connecting_delta of pi(x). Throws NotFredholm.
DeltaResult index(const KContext& ctx, Elem x);

struct ZeroTest {
  bool relaxed = false;
  /// Absent when every search that could settle it exceeded the guard.
  std::optional<bool> strict;
  int padding = 0;
  std::optional<RMatrix> x, y;  // strict witnesses
  std::string note;

  bool disagree() const { return strict && *strict != relaxed; }
};

/// Relaxed: equal primitive-type counts in R. Strict: x, y with
/// x y = pos (+) 1_m, y x = neg (+) 1_m and x, y congruent to pos (+) 1_m
/// modulo I, for some m <= stab.
ZeroTest k0_zero_test(const KContext& ctx, const K0Element& k, int stab = 2);

/// Sum of class counts over blocks, pos minus neg.
std::vector<int> k0_class_vector(const KContext& ctx, const K0Element& k);

/// Human-readable "[labels] - [labels]".
std::string describe(const KContext& ctx, const K0Element& k);

/// Inverse of an invertible matrix through its powers; nullopt when some power
/// repeats before reaching 1 or after `cap` steps.
std::optional<RMatrix> inverse_by_powers(const RMatrix& z, std::size_t cap = 1u << 16);

}  // namespace exlift
